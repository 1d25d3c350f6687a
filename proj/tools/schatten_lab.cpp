// schatten_lab: verify, sweep, search, probe, fit and selftest front end.
//
// Exit codes: 0 success (no violation), 1 input error, 2 violation.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "schatten/generators.hpp"
#include "schatten/harness.hpp"
#include "schatten/inequalities.hpp"
#include "schatten/io.hpp"
#include "schatten/parallelogram.hpp"
#include "schatten/rng.hpp"
#include "schatten/selftest.hpp"

namespace {

using namespace schatten;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitViolation = 2;

double parse_p(const std::string& text) {
    std::size_t used = 0;
    double p = 0;
    try {
        p = std::stod(text, &used);
    } catch (const std::exception&) {
        throw ValidationError("--p: '" + text + "' is not a decimal number");
    }
    if (used != text.size()) throw ValidationError("--p: '" + text + "' is not a decimal number");
    return p;
}

std::pair<long, long> parse_dim(const std::string& text) {
    const auto x = text.find('x');
    try {
        if (x == std::string::npos) {
            const long d = std::stol(text);
            return {d, d};
        }
        return {std::stol(text.substr(0, x)), std::stol(text.substr(x + 1))};
    } catch (const std::exception&) {
        throw ValidationError("--dim: expected <n> or <rows>x<cols>, got '" + text + "'");
    }
}

void emit(const nlohmann::json& j, const std::string& out_dir, const std::string& file) {
    std::cout << j.dump(2) << '\n';
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        write_json_file((std::filesystem::path(out_dir) / file).string(), j);
    }
}

struct Options {
    std::string out_dir;
    std::string format = "json";
    std::optional<std::uint64_t> seed;
    int verbosity = 0;

    std::string claim;
    std::string p = "2";
    std::vector<std::string> families;
    int n = 2;
    std::string variant = "consistent_n2";
    std::string dim = "2";
    std::string plan_path;
    std::optional<int> trials;
    int budget = 10000;
    int k = 2;
    int instances = 32;
    std::string kind = "ginibre";
};

int cmd_verify(const Options& o) {
    const ClaimId claim = parse_claim(o.claim);
    const SchattenOrder p(parse_p(o.p));
    std::vector<Family> fams;
    for (const auto& path : o.families) {
        try {
            fams.push_back(family_from_json(read_json_file(path)));
        } catch (const ValidationError& e) {
            const std::string msg = e.what();
            throw ValidationError(msg.rfind(path, 0) == 0 ? msg : path + ": " + msg);
        }
    }
    CellSpec cell;
    cell.claim = claim;
    cell.p = p.value();
    cell.n = claim == ClaimId::remark_i || fams.empty() ? o.n : static_cast<int>(fams.front().size());
    cell.variant = claim == ClaimId::remark_i ? o.variant : "";
    const auto result = evaluate_cell(cell, fams);
    emit(to_json(result), o.out_dir, "check.json");
    return result.verdict == Verdict::violated && cell.asserted() ? kExitViolation : kExitOk;
}

int cmd_sweep(const Options& o) {
    SweepPlan plan = o.plan_path.empty() ? default_plan() : sweep_plan_from_json(read_json_file(o.plan_path));
    if (o.seed) plan.base_seed = *o.seed;
    if (o.trials) plan.trials_per_cell = *o.trials;
    if (!o.out_dir.empty()) plan.output_dir = o.out_dir;
    plan.validate();

    const auto report = run_sweep(plan);
    const bool csv = o.format == "csv";
    const std::string body = csv ? to_csv(report) : to_json(report).dump(2) + "\n";
    if (!o.out_dir.empty()) {
        std::filesystem::create_directories(o.out_dir);
        std::ofstream(std::filesystem::path(o.out_dir) / (csv ? "report.csv" : "report.json")) << body;
    } else {
        std::cout << body;
    }
    std::cerr << "sweep: " << report.cells.size() + report.unasserted.size() << " cells, " << report.total_trials
              << " trials, " << report.violations << " violations, " << report.errors.size() << " errors\n";
    if (o.verbosity > 0) {
        for (const auto& e : report.errors) std::cerr << "  error " << e << '\n';
    }
    return report.violations > 0 ? kExitViolation : kExitOk;
}

int cmd_search(const Options& o) {
    const auto result = tightness_search(parse_claim(o.claim), SchattenOrder(parse_p(o.p)), o.n, parse_dim(o.dim),
                                         o.budget, o.seed.value_or(1));
    emit(to_json(result), o.out_dir, "search.json");
    return result.violation_confirmed ? kExitViolation : kExitOk;
}

int cmd_probe(const Options& o) {
    std::vector<Family> fams;
    if (!o.families.empty()) {
        for (const auto& path : o.families) fams.push_back(family_from_json(read_json_file(path)));
        if (fams.size() != 2) throw ValidationError("probe takes 2 families");
    } else {
        GeneratorSpec s;
        s.n = o.n;
        std::tie(s.rows, s.cols) = parse_dim(o.dim);
        for (std::uint64_t m = 0; m < 2; ++m) {
            s.seed = derive_seed(o.seed.value_or(1), m);
            fams.push_back(generate(s));
        }
    }
    emit(to_json(probe_spectral_norm_identity(fams[0], fams[1])), o.out_dir, "probe.json");
    return kExitOk;
}

int cmd_fit(const Options& o) {
    GeneratorSpec s;
    s.kind = parse_generator_kind(o.kind);
    s.n = o.n;
    std::tie(s.rows, s.cols) = parse_dim(o.dim);
    s.seed = o.seed.value_or(1);
    emit(to_json(fit_kset_ansatz(o.k, s, o.instances)), o.out_dir, "fit.json");
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Schatten p-norm parallelogram-law verification lab"};
    app.require_subcommand(1);
    Options o;

    app.add_option("--out", o.out_dir, "Output directory for reports and witnesses");
    app.add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--seed", o.seed, "Seed override (u64)");
    app.add_flag("-v,--verbose", o.verbosity, "Verbosity");

    auto* verify = app.add_subcommand("verify", "Evaluate one claim on families read from JSON files");
    verify->add_option("--claim", o.claim, "Claim id (eq13, thm21, prop22, ...)")->required();
    verify->add_option("--p", o.p, "Schatten exponent as a decimal string");
    verify->add_option("--families", o.families, "Family JSON files");
    verify->add_option("--n", o.n, "n for remark_i");
    verify->add_option("--variant", o.variant, "remark_i variant")->check(CLI::IsMember({"paper_2n2", "consistent_n2"}));

    auto* sweep = app.add_subcommand("sweep", "Run a sweep plan and write a report");
    sweep->add_option("--plan", o.plan_path, "SweepPlan JSON (default: built-in plan)");
    sweep->add_option("--trials", o.trials, "Override trials_per_cell");

    auto* search = app.add_subcommand("search", "Derivative-free search for the tightest instance of a claim");
    search->add_option("--claim", o.claim, "Claim id")->required();
    search->add_option("--p", o.p, "Schatten exponent");
    search->add_option("--n", o.n, "Family size");
    search->add_option("--dim", o.dim, "<n> or <rows>x<cols>");
    search->add_option("--budget", o.budget, "Objective evaluations");

    auto* probe = app.add_subcommand("probe", "Measure the spectral-norm parallelogram discrepancy");
    probe->add_option("--families", o.families, "Two family JSON files (default: random)");
    probe->add_option("--n", o.n, "Family size for random families");
    probe->add_option("--dim", o.dim, "Dims for random families");

    auto* fit = app.add_subcommand("fit", "Least-squares probe of a k-family parallelogram identity");
    fit->add_option("--k", o.k, "Number of families");
    fit->add_option("--n", o.n, "Family size");
    fit->add_option("--dim", o.dim, "<n> or <rows>x<cols>");
    fit->add_option("--instances", o.instances, "Random instances");
    fit->add_option("--kind", o.kind, "Generator kind");

    auto* selftest = app.add_subcommand("selftest", "Run the embedded closed-form example corpus");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitInput;
    }

    try {
        if (verify->parsed()) return cmd_verify(o);
        if (sweep->parsed()) return cmd_sweep(o);
        if (search->parsed()) return cmd_search(o);
        if (probe->parsed()) return cmd_probe(o);
        if (fit->parsed()) return cmd_fit(o);
        if (selftest->parsed()) return run_selftest(std::cout) == 0 ? kExitOk : kExitViolation;
    } catch (const schatten::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitInput;
}

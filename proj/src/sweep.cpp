#include "schatten/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <iomanip>
#include <sstream>
#include <thread>

#include "schatten/io.hpp"
#include "schatten/parallelogram.hpp"
#include "schatten/rng.hpp"

namespace schatten {

namespace {

constexpr std::uint64_t kKindSalt = 0xA5A5A5A5A5A5A5A5ull;
constexpr std::uint64_t kZerosSalt = 0x5A5A5A5A5A5A5A5Aull;

bool needs_square(ClaimId c) { return c == ClaimId::lemmaA || c == ClaimId::lemmaA_refined; }

int family_count(ClaimId c) {
    switch (c) {
    case ClaimId::thm21: return 3;
    case ClaimId::cor24:
    case ClaimId::lemmaA:
    case ClaimId::lemmaA_refined:
    case ClaimId::power_id: return 1;
    case ClaimId::remark_i: return 0;
    default: return 2;
    }
}

std::vector<GeneratorKind> mixed_kinds(long rows, long cols) {
    std::vector<GeneratorKind> kinds{GeneratorKind::ginibre, GeneratorKind::real, GeneratorKind::diagonal,
                                     GeneratorKind::scalar, GeneratorKind::rank_deficient, GeneratorKind::with_zeros};
    if (rows == cols) {
        kinds.push_back(GeneratorKind::hermitian);
        kinds.push_back(GeneratorKind::psd);
    }
    return kinds;
}

std::string shortest(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string g17(double x) {
    if (!std::isfinite(x)) return "";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

nlohmann::json number(double x) {
    if (!std::isfinite(x)) return nullptr;
    return x;
}

unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("SCHATTEN_LAB_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::string utc_now() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

} // namespace

int claim_arity(ClaimId claim) {
    switch (claim) {
    case ClaimId::thm21: return 3;
    case ClaimId::cor24:
    case ClaimId::lemmaA:
    case ClaimId::lemmaA_refined:
    case ClaimId::power_id: return 1;
    case ClaimId::remark_i: return 0;
    default: return 2;
    }
}

CheckResult evaluate_cell(const CellSpec& cell, const std::vector<Family>& fams, const EvalOptions& opts) {
    const int arity = claim_arity(cell.claim);
    if (static_cast<int>(fams.size()) != arity) {
        throw ValidationError("claim '" + std::string(to_string(cell.claim)) + "' takes " + std::to_string(arity) +
                              (arity == 1 ? " family" : " families") + ", got " + std::to_string(fams.size()));
    }
    const SchattenOrder p(cell.p);
    switch (cell.claim) {
    case ClaimId::eq13: return eval_equality_13(fams[0], fams[1], opts);
    case ClaimId::thm21: return eval_theorem21(ThreeFamilyInstance(fams[0], fams[1], fams[2]), p, opts);
    case ClaimId::prop22: return eval_prop22(fams[0], fams[1], p, opts);
    case ClaimId::cor23: return eval_cor23(fams[0], fams[1], p, opts);
    case ClaimId::cor24: return eval_cor24(fams[0], p, opts);
    case ClaimId::prop25: return eval_prop25(fams[0], fams[1], p, opts);
    case ClaimId::remark_i: return remark_constants(cell.n, p, parse_remark_variant(cell.variant), opts);
    case ClaimId::lemmaA: return lemma_a_bounds(fams[0], p, opts);
    case ClaimId::lemmaA_refined: return refined_lemma_bounds(fams[0], p, opts);
    case ClaimId::power_id: return verify_power_identity(fams[0][0], p, opts);
    case ClaimId::identity14: return check_identity14(fams[0], fams[1], opts);
    case ClaimId::probe12: return probe_spectral_norm_identity(fams[0], fams[1], opts);
    }
    throw ValidationError("unhandled claim");
}

namespace {

struct CompactTrial {
    bool has_result = false;
    double slack = 0;
    Verdict verdict = Verdict::holds;
    bool rechecked = false;
    std::string error;
    GeneratorKind kind = GeneratorKind::ginibre;
    std::optional<nlohmann::json> witness;
};

nlohmann::json witness_document(const CellSpec& cell, const TrialOutcome& t) {
    nlohmann::json fams = nlohmann::json::array();
    for (const auto& f : t.families) fams.push_back(family_to_json(f));
    nlohmann::json doc{{"schema", kSchemaVersion},
                       {"claim_id", std::string(to_string(cell.claim))},
                       {"p", cell.p},
                       {"n", cell.n},
                       {"dim", {cell.rows, cell.cols}},
                       {"seed", t.seed},
                       {"generator_kind", std::string(to_string(t.kind))},
                       {"families", std::move(fams)}};
    if (!cell.variant.empty()) doc["variant"] = cell.variant;
    if (t.result) doc["result"] = to_json(*t.result);
    if (t.recheck) doc["recheck"] = to_json(*t.recheck);
    return doc;
}

} // namespace

void SweepPlan::validate() const {
    if (claims.empty()) throw ValidationError("plan: claims must be non-empty");
    if (p_grid.empty() || n_grid.empty() || dim_grid.empty()) throw ValidationError("plan: grids must be non-empty");
    for (const double p : p_grid) {
        if (!std::isfinite(p) || !(p > 0)) throw ValidationError("plan: every p must be finite and > 0");
    }
    for (const int n : n_grid) {
        if (n < 1) throw ValidationError("plan: every n must be >= 1");
    }
    for (const auto& [r, c] : dim_grid) {
        if (r < 1 || c < 1) throw ValidationError("plan: dims must be positive");
    }
    if (trials_per_cell < 1) throw ValidationError("plan: trials_per_cell must be >= 1");
    if (!(generator.scale > 0) || !std::isfinite(generator.scale)) {
        throw ValidationError("plan: generator scale must be finite and > 0");
    }
    tolerance.validate();
}

SweepPlan default_plan() {
    SweepPlan plan;
    plan.claims = {ClaimId::eq13,   ClaimId::thm21,    ClaimId::prop22, ClaimId::cor23,
                   ClaimId::cor24,  ClaimId::prop25,   ClaimId::lemmaA, ClaimId::lemmaA_refined,
                   ClaimId::power_id, ClaimId::identity14, ClaimId::remark_i};
    plan.p_grid = {0.25, 0.5, 1, 1.5, 2, 3, 4};
    plan.n_grid = {1, 2, 3};
    plan.dim_grid = {{1, 1}, {2, 2}, {4, 4}};
    plan.trials_per_cell = 500;
    return plan;
}

nlohmann::json to_json(const SweepPlan& plan) {
    nlohmann::json claims = nlohmann::json::array();
    for (const auto c : plan.claims) claims.push_back(std::string(to_string(c)));
    nlohmann::json dims = nlohmann::json::array();
    for (const auto& [r, c] : plan.dim_grid) dims.push_back({r, c});
    return {{"schema", kSchemaVersion},
            {"claims", std::move(claims)},
            {"p_grid", plan.p_grid},
            {"n_grid", plan.n_grid},
            {"dim_grid", std::move(dims)},
            {"trials_per_cell", plan.trials_per_cell},
            {"generator",
             {{"kind", plan.generator.kind ? std::string(to_string(*plan.generator.kind)) : std::string("mixed")},
              {"scale", plan.generator.scale}}},
            {"base_seed", plan.base_seed},
            {"tolerance",
             {{"rel", plan.tolerance.rel},
              {"abs", plan.tolerance.abs},
              {"scale_mode", plan.tolerance.scale_mode == ScaleMode::max_side ? "max_side" : "one"}}},
            {"recheck", plan.recheck}};
}

SweepPlan sweep_plan_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ValidationError("plan: expected a JSON object");
    if (j.contains("schema") && j.at("schema") != kSchemaVersion) {
        throw ValidationError("plan: unsupported schema version");
    }
    SweepPlan plan = default_plan();
    try {
        if (j.contains("claims")) {
            plan.claims.clear();
            for (const auto& c : j.at("claims")) plan.claims.push_back(parse_claim(c.get<std::string>()));
        }
        if (j.contains("p_grid")) {
            plan.p_grid.clear();
            // p may be given as a decimal string and is parsed exactly once
            for (const auto& p : j.at("p_grid")) {
                if (!p.is_string()) {
                    plan.p_grid.push_back(p.get<double>());
                    continue;
                }
                const auto text = p.get<std::string>();
                std::size_t used = 0;
                plan.p_grid.push_back(std::stod(text, &used));
                if (used != text.size()) throw std::invalid_argument(text);
            }
        }
        if (j.contains("n_grid")) plan.n_grid = j.at("n_grid").get<std::vector<int>>();
        if (j.contains("dim_grid")) {
            plan.dim_grid.clear();
            for (const auto& d : j.at("dim_grid")) {
                if (d.is_number_integer()) {
                    plan.dim_grid.emplace_back(d.get<long>(), d.get<long>());
                } else if (d.is_array() && d.size() == 2) {
                    plan.dim_grid.emplace_back(d[0].get<long>(), d[1].get<long>());
                } else {
                    throw ValidationError("plan: dim_grid entries are n or [rows, cols]");
                }
            }
        }
        if (j.contains("trials_per_cell")) plan.trials_per_cell = j.at("trials_per_cell").get<int>();
        if (j.contains("base_seed")) plan.base_seed = j.at("base_seed").get<std::uint64_t>();
        if (j.contains("recheck")) plan.recheck = j.at("recheck").get<bool>();
        if (j.contains("output_dir")) plan.output_dir = j.at("output_dir").get<std::string>();
        if (j.contains("generator")) {
            const auto& g = j.at("generator");
            if (g.contains("kind")) {
                const auto kind = g.at("kind").get<std::string>();
                plan.generator.kind = kind == "mixed" ? std::nullopt : std::optional(parse_generator_kind(kind));
            }
            if (g.contains("scale")) plan.generator.scale = g.at("scale").get<double>();
        }
        if (j.contains("tolerance")) {
            const auto& t = j.at("tolerance");
            if (t.contains("rel")) plan.tolerance.rel = t.at("rel").get<double>();
            if (t.contains("abs")) plan.tolerance.abs = t.at("abs").get<double>();
            if (t.contains("scale_mode")) {
                const auto mode = t.at("scale_mode").get<std::string>();
                if (mode == "max_side") plan.tolerance.scale_mode = ScaleMode::max_side;
                else if (mode == "one") plan.tolerance.scale_mode = ScaleMode::one;
                else throw ValidationError("plan: scale_mode must be max_side or one");
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("plan: ") + e.what());
    } catch (const std::invalid_argument&) {
        throw ValidationError("plan: p_grid entry is not a decimal number");
    }
    plan.validate();
    return plan;
}

std::vector<CellSpec> expand_cells(const SweepPlan& plan) {
    std::vector<CellSpec> cells;
    for (const auto claim : plan.claims) {
        if (claim == ClaimId::remark_i) {
            for (const auto variant : {RemarkVariant::paper_2n2, RemarkVariant::consistent_n2}) {
                for (const double p : plan.p_grid) {
                    if (p > 2) continue;
                    for (const int n : plan.n_grid) {
                        cells.push_back({claim, std::string(to_string(variant)), p, n, 0, 0});
                    }
                }
            }
            continue;
        }
        std::vector<double> ps = plan.p_grid;
        if (claim == ClaimId::eq13 || claim == ClaimId::identity14 || claim == ClaimId::probe12) ps = {2.0};
        std::vector<int> ns = plan.n_grid;
        if (claim == ClaimId::power_id) ns = {1};
        for (const double p : ps) {
            for (const int n : ns) {
                for (const auto& [r, c] : plan.dim_grid) {
                    if (needs_square(claim) && r != c) continue;
                    cells.push_back({claim, {}, p, n, r, c});
                }
            }
        }
    }
    return cells;
}

std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t cell, std::size_t trial) {
    return derive_seed(derive_seed(base_seed, cell), trial);
}

TrialOutcome run_trial(const CellSpec& cell, const GeneratorTemplate& generator, std::uint64_t seed,
                       const TolerancePolicy& tolerance, bool recheck) {
    TrialOutcome out;
    out.seed = seed;
    EvalOptions opts;
    opts.tolerance = tolerance;
    try {
        GeneratorSpec spec;
        spec.n = cell.n;
        spec.rows = cell.rows;
        spec.cols = cell.cols;
        spec.scale = generator.scale;
        spec.seed = seed;
        if (generator.kind) {
            spec.kind = *generator.kind;
        } else if (cell.rows > 0) {
            const auto kinds = mixed_kinds(cell.rows, cell.cols);
            spec.kind = kinds[splitmix64(seed ^ kKindSalt) % kinds.size()];
        }
        const int random_zeros = static_cast<int>(splitmix64(seed ^ kZerosSalt) % static_cast<std::uint64_t>(cell.n + 1));
        switch (cell.claim) {
        case ClaimId::cor23: spec.kind = GeneratorKind::pair_equal_sums; break;
        case ClaimId::cor24: spec.kind = GeneratorKind::mean_centered; break;
        case ClaimId::lemmaA:
        case ClaimId::lemmaA_refined:
            spec.kind = GeneratorKind::psd;
            spec.zeros = random_zeros;
            break;
        default:
            if (spec.kind == GeneratorKind::with_zeros) spec.zeros = random_zeros;
            break;
        }
        out.kind = spec.kind;

        if (cell.claim == ClaimId::cor23) {
            auto [a, b] = generate_pair_equal_sums(spec);
            out.families = {std::move(a), std::move(b)};
        } else {
            for (int m = 0; m < family_count(cell.claim); ++m) {
                GeneratorSpec member = spec;
                member.seed = derive_seed(seed, static_cast<std::uint64_t>(m) + 1);
                out.families.push_back(generate(member));
            }
        }

        out.result = evaluate_cell(cell, out.families, opts);
        if (recheck && out.result->verdict == Verdict::violated) {
            EvalOptions tight = opts;
            tight.spectral = opts.spectral.tightened(100);
            out.recheck = evaluate_cell(cell, out.families, tight);
        }
    } catch (const std::exception& e) {
        out.error = e.what();
    }
    return out;
}

std::string witness_file_name(const CellSpec& cell, std::uint64_t seed) {
    std::string claim(to_string(cell.claim));
    if (!cell.variant.empty()) claim += "-" + cell.variant;
    return claim + "_" + shortest(cell.p) + "_" + std::to_string(cell.n) + "_" + std::to_string(cell.rows) + "x" +
           std::to_string(cell.cols) + "_" + std::to_string(seed) + ".json";
}

SweepReport run_sweep(const SweepPlan& plan, unsigned threads) {
    plan.validate();
    const auto cells = expand_cells(plan);
    const auto per_cell = static_cast<std::size_t>(plan.trials_per_cell);
    const std::size_t total = cells.size() * per_cell;
    std::vector<CompactTrial> trials(total);

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t job = next.fetch_add(1); job < total; job = next.fetch_add(1)) {
            const std::size_t ci = job / per_cell;
            const std::size_t ti = job % per_cell;
            const auto& cell = cells[ci];
            const auto outcome = run_trial(cell, plan.generator, trial_seed(plan.base_seed, ci, ti), plan.tolerance,
                                           plan.recheck);
            auto& slot = trials[job];
            slot.kind = outcome.kind;
            slot.error = outcome.error;
            if (const auto* r = outcome.final_result()) {
                slot.has_result = true;
                slot.slack = r->slack;
                slot.verdict = r->verdict;
                slot.rechecked = outcome.recheck.has_value();
            }
            if (outcome.persisted_violation() && cell.asserted()) slot.witness = witness_document(cell, outcome);
        }
    };
    const unsigned nthreads = std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(total, 1));
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    SweepReport report;
    report.plan = plan;
    report.generated_at = utc_now();
    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
        CellRecord rec;
        rec.cell = cells[ci];
        rec.trials = plan.trials_per_cell;
        for (const char* key : {"holds", "equality", "violated", "degenerate", "error"}) rec.verdict_counts[key] = 0;
        double sum = 0;
        int counted = 0;
        rec.min_slack = std::numeric_limits<double>::quiet_NaN();
        std::vector<bool> seen(10, false);
        for (std::size_t ti = 0; ti < per_cell; ++ti) {
            const auto& t = trials[ci * per_cell + ti];
            const auto seed = trial_seed(plan.base_seed, ci, ti);
            if (cells[ci].rows > 0) seen[static_cast<std::size_t>(t.kind)] = true;
            if (!t.has_result) {
                ++rec.verdict_counts["error"];
                report.errors.push_back(std::to_string(ci) + "/" + std::to_string(ti) + ": " + t.error);
                continue;
            }
            ++rec.verdict_counts[std::string(to_string(t.verdict))];
            if (t.verdict == Verdict::equality) ++rec.equality_count;
            if (t.rechecked) ++rec.rechecks;
            sum += t.slack;
            ++counted;
            if (counted == 1 || t.slack < rec.min_slack) {
                rec.min_slack = t.slack;
                rec.min_slack_seed = seed;
            }
            if (t.witness) {
                report.witnesses.push_back({witness_file_name(cells[ci], seed), *t.witness});
            }
        }
        rec.mean_slack = counted > 0 ? sum / counted : std::numeric_limits<double>::quiet_NaN();
        for (std::size_t k = 0; k < seen.size(); ++k) {
            if (seen[k]) rec.kinds_seen.emplace_back(to_string(static_cast<GeneratorKind>(k)));
        }
        report.total_trials += rec.trials;
        if (rec.cell.asserted()) {
            report.violations += rec.verdict_counts["violated"];
            report.cells.push_back(std::move(rec));
        } else {
            report.unasserted.push_back(std::move(rec));
        }
    }

    if (!plan.output_dir.empty() && !report.witnesses.empty()) {
        std::filesystem::create_directories(plan.output_dir);
        for (const auto& w : report.witnesses) {
            write_json_file((std::filesystem::path(plan.output_dir) / w.file_name).string(), w.document);
        }
    }
    return report;
}

namespace {

nlohmann::json cell_json(const CellRecord& rec) {
    nlohmann::json j{{"claim_id", std::string(to_string(rec.cell.claim))},
                     {"p", rec.cell.p},
                     {"n", rec.cell.n},
                     {"dim", {rec.cell.rows, rec.cell.cols}},
                     {"trials", rec.trials},
                     {"verdict_counts", rec.verdict_counts},
                     {"min_slack", number(rec.min_slack)},
                     {"min_slack_seed", rec.min_slack_seed},
                     {"mean_slack", number(rec.mean_slack)},
                     {"equality_count", rec.equality_count},
                     {"rechecks", rec.rechecks},
                     {"generator_kinds", rec.kinds_seen}};
    if (!rec.cell.variant.empty()) j["variant"] = rec.cell.variant;
    return j;
}

} // namespace

nlohmann::json to_json(const SweepReport& report, bool include_timestamp) {
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& c : report.cells) cells.push_back(cell_json(c));
    nlohmann::json unasserted = nlohmann::json::array();
    for (const auto& c : report.unasserted) unasserted.push_back(cell_json(c));
    nlohmann::json witnesses = nlohmann::json::array();
    for (const auto& w : report.witnesses) witnesses.push_back({{"file", w.file_name}, {"document", w.document}});

    int errors = 0;
    for (const auto& c : report.cells) errors += c.verdict_counts.at("error");
    for (const auto& c : report.unasserted) errors += c.verdict_counts.at("error");

    nlohmann::json j{{"schema", kSchemaVersion},
                     {"tool_version", kToolVersion},
                     {"plan", to_json(report.plan)},
                     {"cells", std::move(cells)},
                     {"unasserted", std::move(unasserted)},
                     {"witnesses", std::move(witnesses)},
                     {"summary",
                      {{"cells", report.cells.size() + report.unasserted.size()},
                       {"asserted_cells", report.cells.size()},
                       {"trials", report.total_trials},
                       {"violations", report.violations},
                       {"errors", errors}}}};
    if (include_timestamp) j["generated_at"] = report.generated_at;
    return j;
}

std::string to_csv(const SweepReport& report) {
    std::ostringstream os;
    os << "section,claim_id,variant,p,n,rows,cols,trials,holds,equality,violated,degenerate,error,"
          "min_slack,min_slack_seed,mean_slack,equality_count\n";
    auto rows = [&](const std::vector<CellRecord>& recs, const char* section) {
        for (const auto& r : recs) {
            const auto& vc = r.verdict_counts;
            os << section << ',' << to_string(r.cell.claim) << ',' << r.cell.variant << ',' << g17(r.cell.p) << ','
               << r.cell.n << ',' << r.cell.rows << ',' << r.cell.cols << ',' << r.trials << ',' << vc.at("holds")
               << ',' << vc.at("equality") << ',' << vc.at("violated") << ',' << vc.at("degenerate") << ','
               << vc.at("error") << ',' << g17(r.min_slack) << ',' << r.min_slack_seed << ',' << g17(r.mean_slack)
               << ',' << r.equality_count << '\n';
        }
    };
    rows(report.cells, "asserted");
    rows(report.unasserted, "unasserted");
    return os.str();
}

} // namespace schatten

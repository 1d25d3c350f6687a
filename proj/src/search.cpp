#include "schatten/harness.hpp"

#include <cmath>
#include <limits>

#include "schatten/io.hpp"
#include "schatten/nelder_mead.hpp"
#include "schatten/rng.hpp"

namespace schatten {

namespace {

int searched_families(ClaimId c) {
    switch (c) {
    case ClaimId::cor24: return 1;
    case ClaimId::thm21: return 3;
    default: return 2;
    }
}

// Entries are (re, im) interleaved, member-major, family-major.
std::vector<Family> unpack(const Eigen::VectorXd& x, int families, int n, long rows, long cols) {
    std::vector<Family> out;
    Eigen::Index k = 0;
    for (int f = 0; f < families; ++f) {
        std::vector<Matrix> members;
        for (int i = 0; i < n; ++i) {
            Matrix m(rows, cols);
            for (Eigen::Index e = 0; e < m.size(); ++e, k += 2) m.data()[e] = Complex(x[k], x[k + 1]);
            members.push_back(std::move(m));
        }
        out.emplace_back(std::move(members));
    }
    return out;
}

// Maps a point onto the constraint set of the claim.
std::vector<Family> project(ClaimId claim, std::vector<Family> fams) {
    if (claim == ClaimId::cor24) {
        const Matrix mean = family_sum(fams[0]) / static_cast<double>(fams[0].size());
        std::vector<Matrix> members;
        for (const auto& m : fams[0]) members.push_back(m - mean);
        fams[0] = Family(std::move(members));
    } else if (claim == ClaimId::cor23) {
        const Matrix shift = (family_sum(fams[0]) - family_sum(fams[1])) / static_cast<double>(fams[0].size());
        std::vector<Matrix> members;
        for (const auto& m : fams[1]) members.push_back(m + shift);
        fams[1] = Family(std::move(members));
    }
    return fams;
}

} // namespace

bool searchable(ClaimId claim) {
    switch (claim) {
    case ClaimId::eq13:
    case ClaimId::thm21:
    case ClaimId::prop22:
    case ClaimId::cor23:
    case ClaimId::cor24:
    case ClaimId::prop25: return true;
    default: return false;
    }
}

TightnessResult tightness_search(ClaimId claim, const SchattenOrder& p, int n, std::pair<long, long> dim, int budget,
                                 std::uint64_t seed, const EvalOptions& opts) {
    if (!searchable(claim)) throw ValidationError("tightness_search: claim '" + std::string(to_string(claim)) + "' is not searchable");
    if (budget < 1) throw ValidationError("tightness_search: budget must be >= 1");
    if (n < 1 || dim.first < 1 || dim.second < 1) throw ValidationError("tightness_search: n and dims must be positive");

    const int families = searched_families(claim);
    const CellSpec cell{claim, {}, p.value(), n, dim.first, dim.second};
    const auto length = static_cast<Eigen::Index>(families) * n * dim.first * dim.second * 2;

    auto instance = [&](const Eigen::VectorXd& x) { return project(claim, unpack(x, families, n, dim.first, dim.second)); };
    auto objective = [&](const Eigen::VectorXd& x) {
        try {
            const auto r = evaluate_cell(cell, instance(x), opts);
            const double denom = std::max(std::abs(r.lhs), std::abs(r.rhs));
            return denom > 0 ? r.slack / denom : 1.0;
        } catch (const Error&) {
            return std::numeric_limits<double>::infinity();
        }
    };

    Xoshiro256 rng(seed);
    auto random_point = [&] {
        Eigen::VectorXd x(length);
        for (Eigen::Index i = 0; i < length; ++i) x[i] = rng.normal();
        return x;
    };

    TightnessResult out;
    Eigen::VectorXd best = random_point();
    double best_value = std::numeric_limits<double>::infinity();
    int used = 0;
    int attempt = 0;
    while (used < budget) {
        Eigen::VectorXd start;
        if (attempt == 0 || attempt % 2 == 0) {
            start = attempt == 0 ? best : random_point();
        } else {
            start = best;
            for (Eigen::Index i = 0; i < length; ++i) start[i] += 0.1 * rng.normal();
        }
        NelderMeadOptions nm;
        nm.max_evaluations = budget - used;
        const auto run = nelder_mead(objective, start, nm);
        used += run.evaluations;
        if (run.value < best_value) {
            best_value = run.value;
            best = run.x;
        }
        ++attempt;
    }
    out.restarts = attempt - 1;
    out.evaluations = used;
    out.witness = instance(best);
    out.result = evaluate_cell(cell, out.witness, opts);
    if (out.result.slack < 0) {
        EvalOptions tight = opts;
        tight.spectral = opts.spectral.tightened(100);
        out.result = evaluate_cell(cell, out.witness, tight);
        out.rechecked = true;
        out.violation_confirmed = out.result.verdict == Verdict::violated;
    }
    out.best_slack = out.result.slack;
    out.scale = out.result.scale;
    const double denom = std::max(std::abs(out.result.lhs), std::abs(out.result.rhs));
    out.best_relative_slack = denom > 0 ? out.result.slack / denom : 0.0;
    return out;
}

nlohmann::json to_json(const TightnessResult& r) {
    nlohmann::json fams = nlohmann::json::array();
    for (const auto& f : r.witness) fams.push_back(family_to_json(f));
    return {{"schema", kSchemaVersion},
            {"best_slack", r.best_slack},
            {"best_relative_slack", r.best_relative_slack},
            {"scale", r.scale},
            {"evaluations", r.evaluations},
            {"restarts", r.restarts},
            {"rechecked", r.rechecked},
            {"violation_confirmed", r.violation_confirmed},
            {"result", to_json(r.result)},
            {"witness", std::move(fams)}};
}

} // namespace schatten

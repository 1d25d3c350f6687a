#pragma once

// Batch verification: sweeps over (claim, p, n, dim) grids with derived
// seeds, slack statistics, violation recheck and witness persistence; plus
// the spectral-norm probe, the k-family least-squares probe and the
// derivative-free tightness search.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "schatten/check_result.hpp"
#include "schatten/evaluation.hpp"
#include "schatten/generators.hpp"
#include "schatten/inequalities.hpp"

namespace schatten {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

/// Kind used for generated families; `mixed` draws the kind from the trial seed.
struct GeneratorTemplate {
    std::optional<GeneratorKind> kind; // nullopt = mixed
    double scale = 1.0;
};

struct SweepPlan {
    std::vector<ClaimId> claims;
    std::vector<double> p_grid;
    std::vector<int> n_grid;
    std::vector<std::pair<long, long>> dim_grid;
    int trials_per_cell = 500;
    GeneratorTemplate generator;
    std::uint64_t base_seed = 20100101;
    TolerancePolicy tolerance;
    bool recheck = true;
    std::string output_dir; // witnesses are also written here when non-empty

    void validate() const;
};

/// Every claim except the quarantined probe, p in {0.25, 0.5, 1, 1.5, 2, 3, 4},
/// n in {1, 2, 3}, square dims {1, 2, 4}, 500 trials per cell.
SweepPlan default_plan();

nlohmann::json to_json(const SweepPlan& plan);
SweepPlan sweep_plan_from_json(const nlohmann::json& j);

/// One grid point. remark_i cells carry a variant and no dims.
struct CellSpec {
    ClaimId claim = ClaimId::eq13;
    std::string variant;
    double p = 2;
    int n = 1;
    long rows = 1;
    long cols = 1;

    /// Whether violations in this cell count against the sweep. The spectral
    /// probe and the remark chains are measured, never asserted.
    bool asserted() const { return claim != ClaimId::probe12 && claim != ClaimId::remark_i; }
};

/// Number of families a claim takes (0 for remark_i, 3 for thm21).
int claim_arity(ClaimId claim);

/// Evaluates the cell's claim on `families` (arity 0 to 3 depending on the claim).
CheckResult evaluate_cell(const CellSpec& cell, const std::vector<Family>& families, const EvalOptions& opts = {});

/// Cells of a plan, in report order. p-free claims (eq13, identity14) use
/// p = 2 only, power_id uses n = 1 only, positive-family claims skip
/// non-square dims, remark_i expands over both variants with p <= 2.
std::vector<CellSpec> expand_cells(const SweepPlan& plan);

/// Seed of trial `trial` in cell `cell`.
std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t cell, std::size_t trial);

struct TrialOutcome {
    std::optional<CheckResult> result;
    std::optional<CheckResult> recheck; // present when the first verdict was violated
    std::string error;
    std::vector<Family> families;
    std::uint64_t seed = 0;
    GeneratorKind kind = GeneratorKind::ginibre;

    bool persisted_violation() const {
        const auto& final = recheck ? recheck : result;
        return final && final->verdict == Verdict::violated;
    }
    /// Result after recheck, if any.
    const CheckResult* final_result() const { return recheck ? &*recheck : result ? &*result : nullptr; }
};

/// Runs a single trial. The outcome depends only on (cell, template, seed, tolerance).
TrialOutcome run_trial(const CellSpec& cell, const GeneratorTemplate& generator, std::uint64_t seed,
                       const TolerancePolicy& tolerance, bool recheck = true);

struct CellRecord {
    CellSpec cell;
    int trials = 0;
    std::map<std::string, int> verdict_counts; // holds, equality, violated, degenerate, error
    double min_slack = 0;
    std::uint64_t min_slack_seed = 0;
    double mean_slack = 0;
    int equality_count = 0;
    int rechecks = 0;
    std::vector<std::string> kinds_seen;
};

struct Witness {
    std::string file_name;
    nlohmann::json document;
};

struct SweepReport {
    SweepPlan plan;
    std::vector<CellRecord> cells;       // asserted claims
    std::vector<CellRecord> unasserted;  // probe12 and remark_i
    std::vector<Witness> witnesses;
    std::vector<std::string> errors;     // per-trial evaluator errors, "cell/trial: message"
    int total_trials = 0;
    int violations = 0;
    std::string generated_at;
};

/// Executes every (cell, trial). Trials run on `threads` workers (0: the
/// SCHATTEN_LAB_THREADS environment variable, else hardware concurrency)
/// and are merged in (cell, trial) order, so the report is thread-count independent.
SweepReport run_sweep(const SweepPlan& plan, unsigned threads = 0);

/// Report JSON (schema 1). With include_timestamp = false the output is a
/// pure function of the plan.
nlohmann::json to_json(const SweepReport& report, bool include_timestamp = true);

/// One row per cell; numbers with 17 significant digits.
std::string to_csv(const SweepReport& report);

/// Witness file name: <claim>_<p>_<n>_<rows>x<cols>_<seed>.json
std::string witness_file_name(const CellSpec& cell, std::uint64_t seed);

/// Measures the unsubscripted parallelogram equality under the spectral
/// norm. Nothing is asserted; slack is the observed discrepancy.
CheckResult probe_spectral_norm_identity(const Family& a, const Family& b, const EvalOptions& opts = {});

struct AnsatzFit {
    int k = 0;
    std::vector<double> coefficients; // alpha (cross mass), beta (summed-difference mass)
    double residual_rms = 0;
    double scale = 1; // max(1, rms of the target)
    int instance_count = 0;
    bool exact_candidate = false; // residual_rms <= 1e-8 * scale
};

/// Least-squares fit of the within-family Hilbert-Schmidt mass of k families
/// against their cross mass and summed-difference mass.
AnsatzFit fit_kset_ansatz(int k, const GeneratorSpec& spec, int instances);

nlohmann::json to_json(const AnsatzFit& fit);

struct TightnessResult {
    double best_slack = 0;
    double best_relative_slack = 0;
    double scale = 1;
    int evaluations = 0;
    int restarts = 0;
    bool rechecked = false;
    bool violation_confirmed = false;
    CheckResult result;
    std::vector<Family> witness;
};

/// Claims the search can parameterize.
bool searchable(ClaimId claim);

/// Minimizes slack / max(|lhs|, |rhs|) over family entries with restarted
/// Nelder-Mead. Equal-sum claims are searched on the constraint subspace.
TightnessResult tightness_search(ClaimId claim, const SchattenOrder& p, int n, std::pair<long, long> dim, int budget,
                                 std::uint64_t seed, const EvalOptions& opts = {});

nlohmann::json to_json(const TightnessResult& r);

} // namespace schatten

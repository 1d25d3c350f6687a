#include "schatten/harness.hpp"

#include <cmath>

#include "schatten/rng.hpp"

namespace schatten {

CheckResult probe_spectral_norm_identity(const Family& a, const Family& b, const EvalOptions& opts) {
    require_same_layout(a, b, "probe_spectral_norm_identity");
    auto sq = [&](const Matrix& m) {
        const double s = spectral_norm(m, opts.spectral);
        return s * s;
    };
    double within = 0;
    for (const auto* f : {&a, &b}) {
        for (const auto& x : *f) {
            for (const auto& y : *f) within += sq(Matrix(x - y));
        }
    }
    double cross = 0;
    for (const auto& x : a) {
        for (const auto& y : b) cross += sq(Matrix(x - y));
    }
    CheckResult r;
    r.claim_id = ClaimId::probe12;
    r.p = std::numeric_limits<double>::infinity();
    r.n = static_cast<int>(a.size());
    r.rows = a.rows();
    r.cols = a.cols();
    r.lhs = within;
    r.rhs = 2 * cross - 2 * sq(Matrix(family_sum(a) - family_sum(b)));
    r.direction = Direction::eq;
    adjudicate(r, opts.tolerance, is_zero_family(a) && is_zero_family(b));
    return r;
}

AnsatzFit fit_kset_ansatz(int k, const GeneratorSpec& spec, int instances) {
    constexpr int kCoefficients = 2;
    if (k < 2) throw ValidationError("fit_kset_ansatz: k must be >= 2");
    if (instances < kCoefficients + 1) {
        throw ValidationError("fit_kset_ansatz: need at least " + std::to_string(kCoefficients + 1) + " instances");
    }
    spec.validate();

    const auto count = static_cast<Eigen::Index>(instances);
    Eigen::MatrixXd features(count, kCoefficients);
    Eigen::VectorXd target(count);
    for (Eigen::Index t = 0; t < count; ++t) {
        std::vector<Family> fams;
        for (int m = 0; m < k; ++m) {
            GeneratorSpec s = spec;
            s.seed = derive_seed(derive_seed(spec.seed, static_cast<std::uint64_t>(t)), static_cast<std::uint64_t>(m));
            fams.push_back(generate(s));
        }
        double within = 0;
        for (const auto& f : fams) {
            for (const auto& x : f) {
                for (const auto& y : f) within += (x - y).squaredNorm();
            }
        }
        double cross = 0;
        double summed = 0;
        for (int m = 0; m < k; ++m) {
            for (int l = m + 1; l < k; ++l) {
                for (const auto& x : fams[m]) {
                    for (const auto& y : fams[l]) cross += (x - y).squaredNorm();
                }
                summed += (family_sum(fams[m]) - family_sum(fams[l])).squaredNorm();
            }
        }
        target[t] = within;
        features(t, 0) = cross;
        features(t, 1) = summed;
    }

    // unit-RMS feature normalization before forming the normal equations
    Eigen::Vector2d rms;
    for (Eigen::Index c = 0; c < kCoefficients; ++c) {
        rms[c] = std::sqrt(features.col(c).squaredNorm() / static_cast<double>(count));
        if (rms[c] == 0) throw RankDeficiencyError("fit_kset_ansatz: feature " + std::to_string(c) + " is identically zero");
    }
    const Eigen::MatrixXd scaled = features * rms.cwiseInverse().asDiagonal();
    const Eigen::Matrix2d normal = scaled.transpose() * scaled;
    const Eigen::Vector2d moment = scaled.transpose() * target;

    const double trace = normal.trace();
    const double det = normal.determinant();
    const double disc = std::sqrt(std::max(0.0, trace * trace / 4 - det));
    const double lmax = trace / 2 + disc;
    const double lmin = det / lmax;
    if (!(lmin > 0) || lmax / lmin > 1e12) {
        throw RankDeficiencyError("fit_kset_ansatz: normal equations are singular or ill-conditioned (cond " +
                                  std::to_string(lmin > 0 ? lmax / lmin : INFINITY) + ")");
    }
    const Eigen::Vector2d solution = normal.ldlt().solve(moment);

    AnsatzFit fit;
    fit.k = k;
    fit.instance_count = instances;
    fit.coefficients = {solution[0] / rms[0], solution[1] / rms[1]};
    const Eigen::VectorXd residual = target - features * Eigen::Vector2d(fit.coefficients[0], fit.coefficients[1]);
    fit.residual_rms = std::sqrt(residual.squaredNorm() / static_cast<double>(count));
    fit.scale = std::max(1.0, std::sqrt(target.squaredNorm() / static_cast<double>(count)));
    fit.exact_candidate = fit.residual_rms <= 1e-8 * fit.scale;
    return fit;
}

nlohmann::json to_json(const AnsatzFit& fit) {
    return {{"schema", kSchemaVersion},
            {"k", fit.k},
            {"coefficients", {{"alpha", fit.coefficients.at(0)}, {"beta", fit.coefficients.at(1)}}},
            {"residual_rms", fit.residual_rms},
            {"scale", fit.scale},
            {"instance_count", fit.instance_count},
            {"exact_candidate", fit.exact_candidate}};
}

} // namespace schatten

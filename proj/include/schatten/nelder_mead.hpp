#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace schatten {

struct NelderMeadOptions {
    double initial_step = 0.5;
    double x_tolerance = 1e-10; // simplex diameter, relative to max(1, |best|)
    double f_tolerance = 1e-15; // spread of vertex values
    int max_evaluations = 1000;
};

struct NelderMeadResult {
    Eigen::VectorXd x;
    double value = std::numeric_limits<double>::infinity();
    int evaluations = 0;
    bool converged = false;
};

/// Downhill simplex with the standard coefficients (reflect 1, expand 2,
/// contract 1/2, shrink 1/2). Stops on budget or when the simplex collapses.
template <typename Objective>
NelderMeadResult nelder_mead(Objective&& f, const Eigen::VectorXd& start, const NelderMeadOptions& opts) {
    const auto dim = start.size();
    NelderMeadResult out;
    std::vector<Eigen::VectorXd> simplex;
    std::vector<double> values;
    simplex.reserve(static_cast<std::size_t>(dim + 1));

    auto eval = [&](const Eigen::VectorXd& x) {
        ++out.evaluations;
        const double v = f(x);
        return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
    };

    simplex.push_back(start);
    for (Eigen::Index i = 0; i < dim; ++i) {
        Eigen::VectorXd v = start;
        v[i] += opts.initial_step * std::max(1.0, std::abs(start[i]));
        simplex.push_back(std::move(v));
    }
    for (const auto& v : simplex) {
        values.push_back(eval(v));
        if (out.evaluations >= opts.max_evaluations) break;
    }
    while (values.size() < simplex.size()) values.push_back(std::numeric_limits<double>::infinity());

    std::vector<std::size_t> order(simplex.size());
    while (out.evaluations < opts.max_evaluations) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second = order[order.size() - 2];

        double diameter = 0;
        for (const auto& v : simplex) diameter = std::max(diameter, (v - simplex[best]).lpNorm<Eigen::Infinity>());
        const double spread = values[worst] - values[best];
        if (diameter <= opts.x_tolerance * std::max(1.0, simplex[best].lpNorm<Eigen::Infinity>()) ||
            (std::isfinite(spread) && spread <= opts.f_tolerance)) {
            out.converged = true;
            break;
        }

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(dim);
        for (std::size_t k = 0; k + 1 < order.size(); ++k) centroid += simplex[order[k]];
        centroid /= static_cast<double>(dim);

        const Eigen::VectorXd reflected = centroid + (centroid - simplex[worst]);
        const double fr = eval(reflected);
        if (fr < values[best]) {
            const Eigen::VectorXd expanded = centroid + 2.0 * (centroid - simplex[worst]);
            const double fe = eval(expanded);
            if (fe < fr) {
                simplex[worst] = expanded;
                values[worst] = fe;
            } else {
                simplex[worst] = reflected;
                values[worst] = fr;
            }
            continue;
        }
        if (fr < values[second]) {
            simplex[worst] = reflected;
            values[worst] = fr;
            continue;
        }
        const bool outside = fr < values[worst];
        const Eigen::VectorXd contracted = outside ? Eigen::VectorXd(centroid + 0.5 * (reflected - centroid))
                                                   : Eigen::VectorXd(centroid + 0.5 * (simplex[worst] - centroid));
        const double fc = eval(contracted);
        if (fc < (outside ? fr : values[worst])) {
            simplex[worst] = contracted;
            values[worst] = fc;
            continue;
        }
        for (std::size_t k = 0; k < simplex.size(); ++k) {
            if (k == best) continue;
            simplex[k] = simplex[best] + 0.5 * (simplex[k] - simplex[best]);
            values[k] = eval(simplex[k]);
            if (out.evaluations >= opts.max_evaluations) break;
        }
    }

    const auto it = std::min_element(values.begin(), values.end());
    out.x = simplex[static_cast<std::size_t>(it - values.begin())];
    out.value = *it;
    return out;
}

} // namespace schatten

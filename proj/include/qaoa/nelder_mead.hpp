#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace qaoa {

using Objective = std::function<double(const std::vector<double>&)>;

struct NelderMeadOptions {
    int max_evals = 2000;
    double f_tol = 1e-12;   // simplex value spread
    double x_tol = 1e-10;   // simplex size
    double init_step = 0.25;
};

struct OptimizeResult {
    std::vector<double> x;
    double value = 0.0;
    int evals = 0;
};

namespace detail {

inline void clamp_to_box(std::vector<double>& x,
                         const std::vector<std::pair<double, double>>& box) {
    for (std::size_t i = 0; i < x.size(); ++i)
        x[i] = std::clamp(x[i], box[i].first, box[i].second);
}

}  // namespace detail

// Box-constrained Nelder-Mead ascent (internally minimizes -f). Candidate
// points are projected onto the box. The best vertex never regresses, so the
// result value is >= f(start).
inline OptimizeResult nelder_mead_maximize(const Objective& f, std::vector<double> start,
                                           const std::vector<std::pair<double, double>>& box,
                                           const NelderMeadOptions& opt = {}) {
    const std::size_t dim = start.size();
    if (box.size() != dim) throw std::invalid_argument("nelder_mead: box size mismatch");
    detail::clamp_to_box(start, box);

    int evals = 0;
    auto eval = [&](const std::vector<double>& x) {
        ++evals;
        return -f(x);
    };

    if (dim == 0) return OptimizeResult{start, f(start), 1};

    std::vector<std::vector<double>> simplex{start};
    for (std::size_t i = 0; i < dim; ++i) {
        auto p = start;
        const double span = box[i].second - box[i].first;
        double step = opt.init_step * std::min(1.0, span);
        if (p[i] + step > box[i].second) step = -step;
        p[i] += step;
        detail::clamp_to_box(p, box);
        simplex.push_back(p);
    }
    std::vector<double> value(simplex.size());
    for (std::size_t i = 0; i < simplex.size(); ++i) value[i] = eval(simplex[i]);

    constexpr double kAlpha = 1.0, kGamma = 2.0, kRho = 0.5, kSigma = 0.5;
    while (evals < opt.max_evals) {
        std::vector<std::size_t> order(simplex.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return value[a] < value[b]; });
        {
            std::vector<std::vector<double>> s2;
            std::vector<double> v2;
            for (auto idx : order) {
                s2.push_back(simplex[idx]);
                v2.push_back(value[idx]);
            }
            simplex = std::move(s2);
            value = std::move(v2);
        }

        double size = 0.0;
        for (std::size_t i = 1; i < simplex.size(); ++i)
            for (std::size_t d = 0; d < dim; ++d)
                size = std::max(size, std::abs(simplex[i][d] - simplex[0][d]));
        if (value.back() - value.front() < opt.f_tol && size < opt.x_tol) break;

        std::vector<double> centroid(dim, 0.0);
        for (std::size_t i = 0; i + 1 < simplex.size(); ++i)
            for (std::size_t d = 0; d < dim; ++d) centroid[d] += simplex[i][d];
        for (double& c : centroid) c /= static_cast<double>(dim);

        auto blend = [&](double coeff) {
            std::vector<double> p(dim);
            for (std::size_t d = 0; d < dim; ++d)
                p[d] = centroid[d] + coeff * (centroid[d] - simplex.back()[d]);
            detail::clamp_to_box(p, box);
            return p;
        };

        const auto reflected = blend(kAlpha);
        const double fr = eval(reflected);
        if (fr < value.front()) {
            const auto expanded = blend(kGamma);
            const double fe = eval(expanded);
            if (fe < fr) {
                simplex.back() = expanded;
                value.back() = fe;
            } else {
                simplex.back() = reflected;
                value.back() = fr;
            }
        } else if (fr < value[value.size() - 2]) {
            simplex.back() = reflected;
            value.back() = fr;
        } else {
            const auto contracted = blend(fr < value.back() ? kRho : -kRho);
            const double fc = eval(contracted);
            if (fc < std::min(fr, value.back())) {
                simplex.back() = contracted;
                value.back() = fc;
            } else {
                for (std::size_t i = 1; i < simplex.size(); ++i) {
                    for (std::size_t d = 0; d < dim; ++d)
                        simplex[i][d] = simplex[0][d] + kSigma * (simplex[i][d] - simplex[0][d]);
                    value[i] = eval(simplex[i]);
                }
            }
        }
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < value.size(); ++i)
        if (value[i] < value[best]) best = i;
    return OptimizeResult{simplex[best], -value[best], evals};
}

// Coordinate-wise pattern refinement with halving steps; cheap way to push a
// near-optimum to tight tolerance.
inline OptimizeResult compass_polish(const Objective& f, std::vector<double> x,
                                     const std::vector<std::pair<double, double>>& box,
                                     double step = 2e-3, double min_step = 1e-11,
                                     int max_evals = 20000) {
    detail::clamp_to_box(x, box);
    double fx = f(x);
    int evals = 1;
    while (step > min_step && evals < max_evals) {
        bool improved = false;
        for (std::size_t d = 0; d < x.size(); ++d) {
            for (double sign : {+1.0, -1.0}) {
                auto trial = x;
                trial[d] = std::clamp(trial[d] + sign * step, box[d].first, box[d].second);
                if (trial[d] == x[d]) continue;
                const double ft = f(trial);
                ++evals;
                if (ft > fx) {
                    x = std::move(trial);
                    fx = ft;
                    improved = true;
                    break;
                }
            }
        }
        if (!improved) step *= 0.5;
    }
    return OptimizeResult{x, fx, evals};
}

}  // namespace qaoa

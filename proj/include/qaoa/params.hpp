#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qaoa/graph.hpp"

namespace qaoa {

// Depth-p angle schedule: p cost angles (gamma) and p mixer angles (beta).
struct QaoaParams {
    std::vector<double> gammas;
    std::vector<double> betas;

    QaoaParams() = default;
    QaoaParams(std::vector<double> g, std::vector<double> b)
        : gammas(std::move(g)), betas(std::move(b)) {}

    int depth() const { return static_cast<int>(gammas.size()); }

    void validate() const {
        if (gammas.size() != betas.size())
            throw std::invalid_argument("params: gamma/beta length mismatch");
        for (double x : gammas)
            if (!std::isfinite(x)) throw std::invalid_argument("params: non-finite gamma");
        for (double x : betas)
            if (!std::isfinite(x)) throw std::invalid_argument("params: non-finite beta");
    }
};

// Universal result record for a single expectation evaluation.
struct ExpectationReport {
    double total_expectation = 0.0;
    std::vector<std::pair<Edge, double>> per_edge;  // per-edge cut probability
    double cut_fraction = 0.0;
    std::optional<double> approx_ratio;           // requires known MaxCut
    std::optional<double> best_cut_probability;   // dense engine only
};

}  // namespace qaoa

#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qaoa/graph.hpp"
#include "qaoa/rng.hpp"
#include "qaoa/statevector.hpp"

namespace qaoa {

// Low-rank factorized solution of the MaxCut SDP relaxation: one unit vector
// per vertex, maximizing C_REL = (1/2) sum over edges of (1 - v_i . v_j).
struct SdpSolution {
    int rank = 0;
    std::vector<std::vector<double>> vectors;  // n rows, each of length rank
    double relaxed_value = 0.0;
    bool converged = false;
    double gradient_norm = 0.0;
};

namespace gw_detail {

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline void normalize(std::vector<double>& v) {
    const double norm = std::sqrt(dot(v, v));
    if (norm > 0)
        for (double& x : v) x /= norm;
}

inline double relaxed_objective(const Graph& g, const std::vector<std::vector<double>>& rows) {
    double value = 0.0;
    for (const auto& [u, v] : g.edges()) value += 0.5 * (1.0 - dot(rows[u], rows[v]));
    return value;
}

// Riemannian gradient of C_REL on the product of unit spheres: the Euclidean
// gradient w.r.t. v_i is -(1/2) sum of neighbours, projected onto the
// tangent space at v_i.
inline std::vector<std::vector<double>> riemannian_gradient(
    const Graph& g, const std::vector<std::vector<double>>& rows, double* norm_out) {
    const int n = g.vertex_count();
    const int k = static_cast<int>(rows[0].size());
    std::vector<std::vector<double>> grad(n, std::vector<double>(k, 0.0));
    for (int i = 0; i < n; ++i) {
        std::vector<double> sum(k, 0.0);
        for (int j : g.neighbors(i))
            for (int d = 0; d < k; ++d) sum[d] += rows[j][d];
        const double radial = dot(sum, rows[i]);
        for (int d = 0; d < k; ++d) grad[i][d] = -0.5 * (sum[d] - radial * rows[i][d]);
    }
    double sq = 0.0;
    for (const auto& gi : grad) sq += dot(gi, gi);
    if (norm_out) *norm_out = std::sqrt(sq);
    return grad;
}

}  // namespace gw_detail

// Burer-Monteiro style solver: rank ceil(sqrt(2n)) + 1 by default, projected
// gradient ascent with backtracking. Converged means the Riemannian gradient
// norm reached tol; otherwise the achieved norm is reported and the caller
// decides.
inline SdpSolution solve_sdp(const Graph& g, int rank_hint = 0, double tol = 1e-7,
                             int max_iters = 200000, std::uint64_t seed = 1) {
    const int n = g.vertex_count();
    if (n < 2) throw std::invalid_argument("solve_sdp: need at least 2 vertices");
    const int k = rank_hint > 0
                      ? rank_hint
                      : static_cast<int>(std::ceil(std::sqrt(2.0 * n))) + 1;

    Rng rng(seed);
    std::vector<std::vector<double>> rows(n, std::vector<double>(k));
    for (auto& row : rows) {
        for (double& x : row) x = rng.normal();
        gw_detail::normalize(row);
    }

    double value = gw_detail::relaxed_objective(g, rows);
    double step = 0.5;
    double grad_norm = 0.0;
    int iter = 0;

    // Phase 1: Riemannian gradient ascent with Armijo backtracking. Near the
    // optimum the Armijo test drowns in rounding noise, so this phase is
    // bounded and only expected to get close.
    const int gradient_budget = std::min(max_iters, 5000);
    while (iter < gradient_budget) {
        ++iter;
        const auto grad = gw_detail::riemannian_gradient(g, rows, &grad_norm);
        if (grad_norm <= tol) break;
        bool accepted = false;
        for (int backtrack = 0; backtrack < 40; ++backtrack) {
            std::vector<std::vector<double>> trial = rows;
            for (int i = 0; i < n; ++i) {
                for (int d = 0; d < k; ++d) trial[i][d] += step * grad[i][d];
                gw_detail::normalize(trial[i]);
            }
            const double trial_value = gw_detail::relaxed_objective(g, trial);
            if (trial_value >= value + 1e-4 * step * grad_norm * grad_norm) {
                rows = std::move(trial);
                value = trial_value;
                step = std::min(step * 1.3, 64.0);
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;
    }

    // Phase 2: exact per-vertex maximization sweeps (v_i opposite its
    // neighbour sum). No objective comparison, linear convergence; give up
    // only after a long flat stretch of the gradient norm.
    double window_ref = grad_norm;
    int flat_windows = 0;
    while (iter < max_iters && grad_norm > tol) {
        for (int sweep = 0; sweep < 1000 && iter < max_iters; ++sweep, ++iter) {
            for (int i = 0; i < n; ++i) {
                std::vector<double> sum(k, 0.0);
                for (int j : g.neighbors(i))
                    for (int d = 0; d < k; ++d) sum[d] += rows[j][d];
                const double norm = std::sqrt(gw_detail::dot(sum, sum));
                if (norm < 1e-14) continue;
                for (int d = 0; d < k; ++d) rows[i][d] = -sum[d] / norm;
            }
        }
        gw_detail::riemannian_gradient(g, rows, &grad_norm);
        flat_windows = grad_norm > 0.99 * window_ref ? flat_windows + 1 : 0;
        window_ref = grad_norm;
        if (flat_windows >= 50) break;
    }
    value = gw_detail::relaxed_objective(g, rows);
    const bool converged = grad_norm <= tol;

    SdpSolution sol;
    sol.rank = k;
    sol.vectors = std::move(rows);
    sol.relaxed_value = gw_detail::relaxed_objective(g, sol.vectors);
    sol.converged = converged;
    sol.gradient_norm = grad_norm;
    return sol;
}

// Closed-form expected cut of hyperplane rounding:
// sum over edges of arccos(v_i . v_j) / pi.
inline double expected_gw_cut(const SdpSolution& sol, const Graph& g) {
    double total = 0.0;
    for (const auto& [u, v] : g.edges()) {
        const double d = std::clamp(gw_detail::dot(sol.vectors[u], sol.vectors[v]), -1.0, 1.0);
        total += std::acos(d) / M_PI;
    }
    return total;
}

// One explicit rounding: sign of v_i . r for a standard-normal direction r,
// zeros broken toward +1.
inline Cut round_hyperplane(const SdpSolution& sol, const Graph& g, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> direction(sol.rank);
    for (double& x : direction) x = rng.normal();
    Cut cut;
    cut.assignment.resize(sol.vectors.size());
    for (std::size_t i = 0; i < sol.vectors.size(); ++i)
        cut.assignment[i] = gw_detail::dot(sol.vectors[i], direction) >= 0.0 ? 1 : -1;
    cut.value = cut_value(g, cut.assignment);
    return cut;
}

struct GwReport {
    double expected_cut = 0.0;  // closed-form, over all hyperplanes
    double relaxed_value = 0.0;
    std::optional<Cut> sampled_cut;
};

inline GwReport gw_report(const SdpSolution& sol, const Graph& g,
                          std::optional<std::uint64_t> round_seed = std::nullopt) {
    GwReport report;
    report.expected_cut = expected_gw_cut(sol, g);
    report.relaxed_value = sol.relaxed_value;
    if (round_seed) report.sampled_cut = round_hyperplane(sol, g, *round_seed);
    return report;
}

// Bloch-circle warm start: per-vertex angles from a random-plane projection
// of the SDP vectors, plus a global axis rotation alpha. The effective angle
// of qubit i is theta_i + alpha.
struct WarmStart {
    std::vector<double> thetas;   // in [0, 2pi)
    double alpha = 0.0;
    std::uint64_t plane_seed = 0;
    std::optional<SdpSolution> source_solution;

    std::vector<double> effective_thetas() const {
        std::vector<double> eff(thetas);
        for (double& t : eff) {
            t = std::fmod(t + alpha, 2.0 * M_PI);
            if (t < 0) t += 2.0 * M_PI;
        }
        return eff;
    }
};

// Project the solution vectors onto a seeded random 2-plane with orthonormal
// basis (z-direction, x-direction); theta_i = atan2(x, z). Vectors with a
// projection shorter than 1e-9 get a seeded-uniform angle so one plane still
// yields one deterministic warm start.
inline WarmStart project_to_plane(const SdpSolution& sol, std::uint64_t seed) {
    if (sol.rank < 2) throw std::invalid_argument("project_to_plane: rank >= 2 required");
    Rng rng(seed);
    std::vector<double> z_dir(sol.rank), x_dir(sol.rank);
    for (double& x : z_dir) x = rng.normal();
    gw_detail::normalize(z_dir);
    while (true) {
        for (double& x : x_dir) x = rng.normal();
        const double overlap = gw_detail::dot(x_dir, z_dir);
        for (int d = 0; d < sol.rank; ++d) x_dir[d] -= overlap * z_dir[d];
        if (std::sqrt(gw_detail::dot(x_dir, x_dir)) > 1e-12) break;
    }
    gw_detail::normalize(x_dir);

    WarmStart ws;
    ws.plane_seed = seed;
    ws.alpha = 0.0;
    ws.thetas.resize(sol.vectors.size());
    for (std::size_t i = 0; i < sol.vectors.size(); ++i) {
        const double z = gw_detail::dot(sol.vectors[i], z_dir);
        const double x = gw_detail::dot(sol.vectors[i], x_dir);
        double theta;
        if (std::sqrt(x * x + z * z) < 1e-9) {
            theta = rng.uniform(0.0, 2.0 * M_PI);
        } else {
            theta = std::atan2(x, z);
            if (theta < 0) theta += 2.0 * M_PI;
        }
        ws.thetas[i] = theta;
    }
    ws.source_solution = sol;
    return ws;
}

// p=0 expectation of the warm-start product state:
// sum over edges of (1 - cos(theta_i + alpha) cos(theta_j + alpha)) / 2.
inline double p0_expectation(const std::vector<double>& thetas, double alpha, const Graph& g) {
    double total = 0.0;
    for (const auto& [u, v] : g.edges())
        total += 0.5 * (1.0 - std::cos(thetas[u] + alpha) * std::cos(thetas[v] + alpha));
    return total;
}

struct AlphaResult {
    double alpha = 0.0;
    double value = 0.0;
    bool degenerate = false;  // flat landscape (P = Q = 0)
};

// Closed-form global maximizer of p0_expectation over alpha:
//   sum cos(t_i+a)cos(t_j+a) = (1/2) sum cos(t_i-t_j)
//                            + (1/2)(P cos 2a - Q sin 2a),
// with P = sum cos(t_i+t_j), Q = sum sin(t_i+t_j); the best 2a turns the
// second term into -sqrt(P^2+Q^2).
inline AlphaResult optimize_alpha(const std::vector<double>& thetas, const Graph& g) {
    double p_sum = 0.0, q_sum = 0.0;
    for (const auto& [u, v] : g.edges()) {
        p_sum += std::cos(thetas[u] + thetas[v]);
        q_sum += std::sin(thetas[u] + thetas[v]);
    }
    AlphaResult result;
    const double amplitude = std::hypot(p_sum, q_sum);
    if (amplitude < 1e-15) {
        result.degenerate = true;
        result.alpha = 0.0;
    } else {
        double two_alpha = std::atan2(q_sum, -p_sum);
        if (two_alpha < 0) two_alpha += 2.0 * M_PI;
        result.alpha = two_alpha / 2.0;
    }
    result.value = p0_expectation(thetas, result.alpha, g);
    return result;
}

struct WarmStartInputs {
    MixerSpec mixer;
    std::vector<double> effective_thetas;
};

// Mixer and initial-state angles for the warm-start QAOA; the initial state
// built from these is the +1 eigenstate of every B_i.
inline WarmStartInputs build_warmstart_qaoa_inputs(const WarmStart& ws) {
    WarmStartInputs inputs;
    inputs.effective_thetas = ws.effective_thetas();
    inputs.mixer = MixerSpec::rotated(inputs.effective_thetas);
    return inputs;
}

// Rounding-line variant: instead of a random hyperplane, sweep the rounding
// line inside the projection plane over a grid and keep the best cut.
// Assignment for line angle phi is sign(cos(theta_i - phi)).
struct PlaneRounding {
    Cut cut;
    double line_angle = 0.0;
};

inline PlaneRounding best_line_rounding(const WarmStart& ws, const Graph& g,
                                        int grid_size = 360) {
    if (grid_size < 1) throw std::invalid_argument("best_line_rounding: empty grid");
    const auto thetas = ws.effective_thetas();
    PlaneRounding best;
    best.cut.value = -1;
    for (int k = 0; k < grid_size; ++k) {
        const double phi = M_PI * k / grid_size;
        std::vector<int> assignment(thetas.size());
        for (std::size_t i = 0; i < thetas.size(); ++i)
            assignment[i] = std::cos(thetas[i] - phi) >= 0.0 ? 1 : -1;
        const int value = cut_value(g, assignment);
        if (value > best.cut.value) {
            best.cut = Cut{std::move(assignment), value};
            best.line_angle = phi;
        }
    }
    return best;
}

// --- warm-start file ---------------------------------------------------------
// Lines: n, plane_seed, alpha, then n thetas in radians; '#' comments allowed.

inline void write_warmstart(std::ostream& out, const WarmStart& ws) {
    char buf[32];
    out << ws.thetas.size() << '\n' << ws.plane_seed << '\n';
    std::snprintf(buf, sizeof(buf), "%.17g", ws.alpha);
    out << buf << '\n';
    for (double t : ws.thetas) {
        std::snprintf(buf, sizeof(buf), "%.17g", t);
        out << buf << '\n';
    }
}

inline void write_warmstart_file(const std::string& path, const WarmStart& ws) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    write_warmstart(out, ws);
}

inline WarmStart read_warmstart(std::istream& in) {
    std::string line;
    std::vector<std::string> fields;
    while (std::getline(in, line)) {
        const auto pos = line.find('#');
        if (pos != std::string::npos) line.erase(pos);
        const auto start = line.find_first_not_of(" \t\r\n");
        if (start == std::string::npos) continue;
        fields.push_back(line.substr(start));
    }
    if (fields.size() < 3) throw std::runtime_error("warm-start file: truncated");
    WarmStart ws;
    std::size_t n = 0;
    try {
        n = std::stoul(fields[0]);
        ws.plane_seed = std::stoull(fields[1]);
        ws.alpha = std::stod(fields[2]);
    } catch (const std::exception&) {
        throw std::runtime_error("warm-start file: malformed header");
    }
    if (fields.size() != 3 + n)
        throw std::runtime_error("warm-start file: expected " + std::to_string(n) +
                                 " angles, found " + std::to_string(fields.size() - 3));
    ws.thetas.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        try {
            ws.thetas[i] = std::stod(fields[3 + i]);
        } catch (const std::exception&) {
            throw std::runtime_error("warm-start file: malformed angle on entry " +
                                     std::to_string(i));
        }
    }
    return ws;
}

inline WarmStart read_warmstart_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    return read_warmstart(in);
}

}  // namespace qaoa

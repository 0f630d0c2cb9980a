#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qaoa/graph.hpp"
#include "qaoa/params.hpp"
#include "qaoa/rng.hpp"

namespace qaoa {

using Complex = std::complex<double>;

// Dense-simulation qubit cap. A state on n qubits stores 2^n complex doubles
// (16 bytes each): n = 28 is 4 GiB, which is the documented ceiling.
inline constexpr int kMaxDenseQubits = 28;

// Mixer description. Standard is B_i = X_i on every qubit; Rotated uses
// B_i = sin(theta_i) X_i + cos(theta_i) Z_i with per-vertex angles, so
// Standard is Rotated with all theta_i = pi/2.
struct MixerSpec {
    enum class Kind { Standard, Rotated };

    Kind kind = Kind::Standard;
    std::vector<double> angles;  // per-vertex, radians in [0, 2pi); Rotated only

    static MixerSpec standard() { return MixerSpec{}; }

    static MixerSpec rotated(std::vector<double> thetas) {
        MixerSpec spec;
        spec.kind = Kind::Rotated;
        for (double& t : thetas) {
            t = std::fmod(t, 2.0 * M_PI);
            if (t < 0) t += 2.0 * M_PI;
        }
        spec.angles = std::move(thetas);
        return spec;
    }

    double theta(int qubit) const {
        return kind == Kind::Standard ? M_PI / 2.0 : angles.at(qubit);
    }
};

// Dense statevector over qubit_count qubits; amplitude index bit i is the
// computational-basis value of vertex i (bit 0 -> Z_i = +1, bit 1 -> -1).
struct StateVector {
    int qubit_count = 0;
    std::vector<Complex> amplitudes;

    std::size_t dimension() const { return amplitudes.size(); }

    double norm_squared() const {
        double s = 0.0;
        for (const Complex& a : amplitudes) s += std::norm(a);
        return s;
    }
};

namespace detail {

inline void check_mixer(const MixerSpec& mixer, int n) {
    if (mixer.kind == MixerSpec::Kind::Rotated &&
        static_cast<int>(mixer.angles.size()) != n)
        throw std::invalid_argument("mixer: angle count does not match qubit count");
}

inline void check_dimensions(const StateVector& state, const Graph& g) {
    if (state.qubit_count != g.vertex_count() ||
        state.dimension() != (std::size_t{1} << state.qubit_count))
        throw std::invalid_argument("statevector/graph dimension mismatch");
}

// Cut size of every basis string; reused across the p cost layers.
inline std::vector<std::uint16_t> cut_table(const Graph& g) {
    const int n = g.vertex_count();
    const std::size_t dim = std::size_t{1} << n;
    std::vector<std::uint16_t> table(dim, 0);
    for (const auto& [u, v] : g.edges()) {
        const std::size_t bu = std::size_t{1} << u;
        const std::size_t bv = std::size_t{1} << v;
        for (std::size_t z = 0; z < dim; ++z)
            table[z] += ((z & bu) != 0) != ((z & bv) != 0);
    }
    return table;
}

inline void apply_phase_table(StateVector& state, const std::vector<std::uint16_t>& table,
                              int max_cut, double gamma) {
    std::vector<Complex> phases(max_cut + 1);
    for (int c = 0; c <= max_cut; ++c)
        phases[c] = std::polar(1.0, -gamma * c);
    for (std::size_t z = 0; z < state.dimension(); ++z)
        state.amplitudes[z] *= phases[table[z]];
}

// exp(-i beta B) for B = sin(theta) X + cos(theta) Z, as a 2x2 matrix.
struct OneQubitGate {
    Complex m00, m01, m10, m11;
};

inline OneQubitGate mixer_gate(double theta, double beta) {
    const double c = std::cos(beta);
    const double s = std::sin(beta);
    return OneQubitGate{
        Complex(c, -s * std::cos(theta)), Complex(0, -s * std::sin(theta)),
        Complex(0, -s * std::sin(theta)), Complex(c, s * std::cos(theta))};
}

inline void apply_one_qubit(StateVector& state, int qubit, const OneQubitGate& gate) {
    const std::size_t stride = std::size_t{1} << qubit;
    const std::size_t dim = state.dimension();
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t offset = 0; offset < stride; ++offset) {
            Complex& a0 = state.amplitudes[base + offset];
            Complex& a1 = state.amplitudes[base + offset + stride];
            const Complex t0 = gate.m00 * a0 + gate.m01 * a1;
            const Complex t1 = gate.m10 * a0 + gate.m11 * a1;
            a0 = t0;
            a1 = t1;
        }
    }
}

}  // namespace detail

// Product state |theta_1> x ... x |theta_n> with
// |theta> = cos(theta/2)|0> + sin(theta/2)|1>; Standard gives |+>^n. Each
// qubit is the +1 eigenvector of its mixer term B_i.
inline StateVector initial_state(const Graph& g, const MixerSpec& mixer) {
    const int n = g.vertex_count();
    if (n > kMaxDenseQubits)
        throw std::invalid_argument("initial_state: qubit count beyond dense cap (28)");
    detail::check_mixer(mixer, n);

    StateVector state;
    state.qubit_count = n;
    state.amplitudes.assign(std::size_t{1} << n, Complex(1.0, 0.0));
    for (int q = 0; q < n; ++q) {
        const double theta = mixer.theta(q);
        const double a0 = std::cos(theta / 2.0);
        const double a1 = std::sin(theta / 2.0);
        const std::size_t bq = std::size_t{1} << q;
        for (std::size_t z = 0; z < state.dimension(); ++z)
            state.amplitudes[z] *= (z & bq) ? a1 : a0;
    }
    return state;
}

// Diagonal phase e^{-i gamma C_MC}: amplitude of string z picks up
// exp(-i gamma cut(z)).
inline StateVector apply_cost_unitary(StateVector state, const Graph& g, double gamma) {
    detail::check_dimensions(state, g);
    const auto table = detail::cut_table(g);
    detail::apply_phase_table(state, table, g.edge_count(), gamma);
    return state;
}

// Product of per-qubit rotations exp(-i beta B_i).
inline StateVector apply_mixer_unitary(StateVector state, const MixerSpec& mixer, double beta) {
    detail::check_mixer(mixer, state.qubit_count);
    for (int q = 0; q < state.qubit_count; ++q)
        detail::apply_one_qubit(state, q, detail::mixer_gate(mixer.theta(q), beta));
    return state;
}

// Alternating cost/mixer circuit applied to the initial product state.
// The cut table is built once and shared by all p cost layers.
inline StateVector run_qaoa(const Graph& g, const MixerSpec& mixer, const QaoaParams& params) {
    params.validate();
    StateVector state = initial_state(g, mixer);
    if (params.depth() == 0) return state;
    const auto table = detail::cut_table(g);
    for (int layer = 0; layer < params.depth(); ++layer) {
        detail::apply_phase_table(state, table, g.edge_count(), params.gammas[layer]);
        state = apply_mixer_unitary(std::move(state), mixer, params.betas[layer]);
    }
    return state;
}

// Probability that edge (u, v) is cut, i.e. the two bits differ.
inline double edge_cut_probability(const StateVector& state, int u, int v) {
    const std::size_t bu = std::size_t{1} << u;
    const std::size_t bv = std::size_t{1} << v;
    double p = 0.0;
    for (std::size_t z = 0; z < state.dimension(); ++z)
        if (((z & bu) != 0) != ((z & bv) != 0)) p += std::norm(state.amplitudes[z]);
    return p;
}

// <C_MC> = sum over edges of the cut probability.
inline double expected_cut(const StateVector& state, const Graph& g) {
    detail::check_dimensions(state, g);
    double total = 0.0;
    for (const auto& [u, v] : g.edges()) total += edge_cut_probability(state, u, v);
    return total;
}

// Total probability of basis strings whose cut value equals best_value.
inline double best_cut_probability(const StateVector& state, int best_value, const Graph& g) {
    detail::check_dimensions(state, g);
    const auto table = detail::cut_table(g);
    double p = 0.0;
    for (std::size_t z = 0; z < state.dimension(); ++z)
        if (table[z] == best_value) p += std::norm(state.amplitudes[z]);
    return p;
}

// i.i.d. samples from |amp(z)|^2, deterministic per seed. Uses block prefix
// sums so memory stays O(dim / block).
inline std::vector<std::uint64_t> sample_strings(const StateVector& state, int shots,
                                                 std::uint64_t seed) {
    if (shots < 1) throw std::invalid_argument("sample_strings: shots >= 1 required");
    const std::size_t dim = state.dimension();
    const std::size_t block = std::min<std::size_t>(dim, 4096);
    const std::size_t num_blocks = (dim + block - 1) / block;

    std::vector<double> block_cum(num_blocks, 0.0);
    double total = 0.0;
    for (std::size_t b = 0; b < num_blocks; ++b) {
        double s = 0.0;
        for (std::size_t z = b * block; z < std::min(dim, (b + 1) * block); ++z)
            s += std::norm(state.amplitudes[z]);
        total += s;
        block_cum[b] = total;
    }

    Rng rng(seed);
    std::vector<std::uint64_t> samples;
    samples.reserve(shots);
    for (int shot = 0; shot < shots; ++shot) {
        const double target = rng.uniform() * total;
        std::size_t b = std::lower_bound(block_cum.begin(), block_cum.end(), target) -
                        block_cum.begin();
        if (b >= num_blocks) b = num_blocks - 1;
        double acc = (b == 0) ? 0.0 : block_cum[b - 1];
        std::size_t z = b * block;
        const std::size_t end = std::min(dim, (b + 1) * block);
        for (; z + 1 < end; ++z) {
            acc += std::norm(state.amplitudes[z]);
            if (acc >= target) break;
        }
        samples.push_back(z);
    }
    return samples;
}

}  // namespace qaoa

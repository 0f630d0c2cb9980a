#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qaoa/rng.hpp"

namespace qaoa {

using Complex = std::complex<double>;

// Dense tensor with labelled indices, row-major with indices[0] slowest.
struct Tensor {
    std::vector<int> indices;
    std::vector<Complex> data;
};

// A closed tensor network: every index id appears in exactly two tensors, so
// a pairwise contraction over all shared indices always eliminates them and
// the full contraction yields a scalar.
struct TensorNetwork {
    std::vector<Tensor> tensors;
    std::vector<std::int64_t> index_dim;

    int fresh_index(std::int64_t dim) {
        index_dim.push_back(dim);
        return static_cast<int>(index_dim.size()) - 1;
    }

    std::int64_t size_of(const std::vector<int>& indices) const {
        std::int64_t s = 1;
        for (int i : indices) s *= index_dim[i];
        return s;
    }
};

// Pairwise elimination order plus planner-side cost accounting. Costs are
// estimated as the product of the dimensions of the union of indices per
// step (dense contraction flops, up to a constant).
struct ContractionPlan {
    std::vector<std::pair<int, int>> steps;  // node ids; result ids count up from n
    double cost_estimate = 0.0;
    std::int64_t max_intermediate_size = 0;
    int max_rank = 0;
    int tensor_count = 0;
};

struct BudgetExceeded : std::runtime_error {
    double estimated_cost;
    explicit BudgetExceeded(double cost)
        : std::runtime_error("contraction budget exceeded, estimated cost " +
                             std::to_string(cost)),
          estimated_cost(cost) {}
};

namespace tn_detail {

struct PlanNode {
    std::vector<int> indices;  // sorted
    bool alive = false;
};

struct Candidate {
    int a = 0, b = 0;
    std::int64_t result_size = 0;
    double flops = 0.0;

    bool better_than(const Candidate& other) const {
        if (result_size != other.result_size) return result_size < other.result_size;
        if (flops != other.flops) return flops < other.flops;
        if (a != other.a) return a < other.a;
        return b < other.b;
    }
};

inline Candidate score_pair(const TensorNetwork& net, const std::vector<PlanNode>& nodes,
                            int a, int b) {
    Candidate c;
    c.a = std::min(a, b);
    c.b = std::max(a, b);
    std::vector<int> uni;
    std::set_union(nodes[a].indices.begin(), nodes[a].indices.end(),
                   nodes[b].indices.begin(), nodes[b].indices.end(),
                   std::back_inserter(uni));
    double flops = 1.0;
    for (int i : uni) flops *= static_cast<double>(net.index_dim[i]);
    c.flops = flops;
    std::vector<int> sym;
    std::set_symmetric_difference(nodes[a].indices.begin(), nodes[a].indices.end(),
                                  nodes[b].indices.begin(), nodes[b].indices.end(),
                                  std::back_inserter(sym));
    c.result_size = 1;
    for (int i : sym) c.result_size *= net.index_dim[i];
    return c;
}

inline ContractionPlan greedy_plan(const TensorNetwork& net, std::uint64_t seed, int top_k) {
    const int n = static_cast<int>(net.tensors.size());
    std::vector<PlanNode> nodes(n);
    // owner[i]: the at-most-two alive nodes carrying index i
    std::vector<std::vector<int>> owner(net.index_dim.size());
    for (int t = 0; t < n; ++t) {
        nodes[t].indices = net.tensors[t].indices;
        std::sort(nodes[t].indices.begin(), nodes[t].indices.end());
        nodes[t].alive = true;
        for (int i : nodes[t].indices) owner[i].push_back(t);
    }

    Rng rng(seed);
    ContractionPlan plan;
    plan.tensor_count = n;
    int alive = n;
    while (alive > 1) {
        std::vector<Candidate> candidates;
        for (std::size_t i = 0; i < owner.size(); ++i) {
            if (owner[i].size() == 2 && owner[i][0] != owner[i][1]) {
                Candidate c = score_pair(net, nodes, owner[i][0], owner[i][1]);
                bool seen = false;
                for (const auto& prev : candidates)
                    if (prev.a == c.a && prev.b == c.b) { seen = true; break; }
                if (!seen) candidates.push_back(c);
            }
        }
        Candidate chosen;
        if (candidates.empty()) {
            // disconnected components: outer product of the two smallest nodes
            std::vector<int> alive_ids;
            for (int t = 0; t < static_cast<int>(nodes.size()); ++t)
                if (nodes[t].alive) alive_ids.push_back(t);
            std::sort(alive_ids.begin(), alive_ids.end(), [&](int x, int y) {
                return net.size_of(nodes[x].indices) < net.size_of(nodes[y].indices);
            });
            chosen = score_pair(net, nodes, alive_ids[0], alive_ids[1]);
        } else {
            std::sort(candidates.begin(), candidates.end(),
                      [](const Candidate& x, const Candidate& y) { return x.better_than(y); });
            const int pick = (top_k <= 1)
                                 ? 0
                                 : static_cast<int>(rng.uniform_int(std::min<std::uint64_t>(
                                       top_k, candidates.size())));
            chosen = candidates[pick];
        }

        const int id = static_cast<int>(nodes.size());
        PlanNode merged;
        std::set_symmetric_difference(nodes[chosen.a].indices.begin(), nodes[chosen.a].indices.end(),
                                      nodes[chosen.b].indices.begin(), nodes[chosen.b].indices.end(),
                                      std::back_inserter(merged.indices));
        merged.alive = true;
        for (int i : merged.indices) {
            auto& own = owner[i];
            own.erase(std::remove_if(own.begin(), own.end(),
                                     [&](int t) { return t == chosen.a || t == chosen.b; }),
                      own.end());
            own.push_back(id);
        }
        for (int i : nodes[chosen.a].indices) {
            auto& own = owner[i];
            own.erase(std::remove(own.begin(), own.end(), chosen.a), own.end());
        }
        for (int i : nodes[chosen.b].indices) {
            auto& own = owner[i];
            own.erase(std::remove(own.begin(), own.end(), chosen.b), own.end());
        }
        nodes[chosen.a].alive = false;
        nodes[chosen.b].alive = false;
        nodes.push_back(merged);
        --alive;

        plan.steps.emplace_back(chosen.a, chosen.b);
        plan.cost_estimate += chosen.flops;
        plan.max_intermediate_size = std::max(plan.max_intermediate_size, chosen.result_size);
        plan.max_rank = std::max(plan.max_rank, static_cast<int>(merged.indices.size()));
    }
    return plan;
}

inline Tensor permute(const Tensor& t, const std::vector<int>& new_order,
                      const TensorNetwork& net) {
    const int rank = static_cast<int>(t.indices.size());
    std::vector<int> pos(rank);  // pos[k]: where new index k lives in the old order
    for (int k = 0; k < rank; ++k) {
        auto it = std::find(t.indices.begin(), t.indices.end(), new_order[k]);
        pos[k] = static_cast<int>(it - t.indices.begin());
    }
    std::vector<std::int64_t> old_stride(rank, 1);
    for (int k = rank - 2; k >= 0; --k)
        old_stride[k] = old_stride[k + 1] * net.index_dim[t.indices[k + 1]];

    Tensor out;
    out.indices = new_order;
    out.data.resize(t.data.size());
    std::vector<std::int64_t> dims(rank);
    for (int k = 0; k < rank; ++k) dims[k] = net.index_dim[new_order[k]];

    std::vector<std::int64_t> counter(rank, 0);
    std::int64_t src = 0;
    for (std::size_t dst = 0; dst < out.data.size(); ++dst) {
        out.data[dst] = t.data[src];
        for (int k = rank - 1; k >= 0; --k) {
            src += old_stride[pos[k]];
            if (++counter[k] < dims[k]) break;
            counter[k] = 0;
            src -= old_stride[pos[k]] * dims[k];
        }
    }
    return out;
}

inline Tensor contract_pair(const Tensor& a, const Tensor& b, const TensorNetwork& net) {
    std::vector<int> sa = a.indices, sb = b.indices;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    std::vector<int> common;
    std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(),
                          std::back_inserter(common));

    std::vector<int> a_only, b_only;
    for (int i : a.indices)
        if (!std::binary_search(common.begin(), common.end(), i)) a_only.push_back(i);
    for (int i : b.indices)
        if (!std::binary_search(common.begin(), common.end(), i)) b_only.push_back(i);

    std::vector<int> a_order = a_only;
    a_order.insert(a_order.end(), common.begin(), common.end());
    std::vector<int> b_order = common;
    b_order.insert(b_order.end(), b_only.begin(), b_only.end());
    const Tensor pa = permute(a, a_order, net);
    const Tensor pb = permute(b, b_order, net);

    const std::int64_t m = net.size_of(a_only);
    const std::int64_t k = net.size_of(common);
    const std::int64_t n = net.size_of(b_only);

    Tensor out;
    out.indices = a_only;
    out.indices.insert(out.indices.end(), b_only.begin(), b_only.end());
    out.data.assign(static_cast<std::size_t>(m * n), Complex(0, 0));
    for (std::int64_t i = 0; i < m; ++i)
        for (std::int64_t kk = 0; kk < k; ++kk) {
            const Complex c = pa.data[i * k + kk];
            if (c == Complex(0, 0)) continue;
            const Complex* brow = pb.data.data() + kk * n;
            Complex* orow = out.data.data() + i * n;
            for (std::int64_t j = 0; j < n; ++j) orow[j] += c * brow[j];
        }
    return out;
}

}  // namespace tn_detail

// Deterministic greedy planner with a few randomized restarts; restart 0 is
// pure greedy and ties break toward the lowest node ids, so repeated calls
// agree.
inline ContractionPlan plan_network(const TensorNetwork& net, int restarts = 4) {
    if (net.tensors.empty()) throw std::invalid_argument("plan_network: empty network");
    ContractionPlan best;
    for (int r = 0; r < std::max(1, restarts); ++r) {
        ContractionPlan p =
            tn_detail::greedy_plan(net, 0x9e3779b97f4a7c15ull + r, r == 0 ? 1 : 3);
        if (r == 0 || p.cost_estimate < best.cost_estimate) best = p;
    }
    return best;
}

inline Complex execute_plan(const TensorNetwork& net, const ContractionPlan& plan) {
    std::vector<Tensor> slots = net.tensors;
    slots.reserve(net.tensors.size() + plan.steps.size());
    for (const auto& [a, b] : plan.steps)
        slots.push_back(tn_detail::contract_pair(slots[a], slots[b], net));
    const Tensor& last = slots.back();
    if (!last.indices.empty())
        throw std::logic_error("execute_plan: network did not contract to a scalar");
    return last.data.at(0);
}

}  // namespace qaoa

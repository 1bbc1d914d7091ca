#include "qwnet/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace qwnet {

namespace {

constexpr double kMinPairTrace = 1e-12;

void check_node(const WalkState& state, Node v, const char* what) {
    if (v >= state.node_count()) {
        throw GraphError(std::string(what) + ": node " + std::to_string(v) + " out of range for " +
                         std::to_string(state.node_count()) + " nodes");
    }
}

void require_4x4(const ComplexMatrix& m, const char* what) {
    if (m.rows() != 4 || m.cols() != 4) throw NumericsError(std::string(what) + ": expected a 4x4 matrix");
}

}  // namespace

PositionDistribution position_distribution(const WalkState& state, std::size_t step) {
    PositionDistribution dist;
    dist.step = step;
    dist.probs.resize(state.node_count());
    for (Node v = 0; v < state.node_count(); ++v) {
        dist.probs[v] = std::norm(state.amp(Coin::Up, v)) + std::norm(state.amp(Coin::Down, v));
    }
    return dist;
}

double loss_probability(const PositionDistribution& dist, std::span<const Node> marked) {
    std::vector<bool> in_marked(dist.probs.size(), false);
    for (Node w : marked) {
        if (w >= dist.probs.size()) throw GraphError("loss_probability: node " + std::to_string(w) + " out of range");
        in_marked[w] = true;
    }
    double loss = 0.0;
    for (std::size_t v = 0; v < dist.probs.size(); ++v)
        if (!in_marked[v]) loss += dist.probs[v];
    return std::clamp(loss, 0.0, 1.0);
}

ComplexMatrix rdm_block(const WalkState& state, Node m, Node n) {
    check_node(state, m, "rdm_block");
    check_node(state, n, "rdm_block");
    ComplexMatrix block(2, 2);
    for (std::size_t c = 0; c < 2; ++c)
        for (std::size_t cp = 0; cp < 2; ++cp)
            block(c, cp) = state.amp(Coin{c}, m) * std::conj(state.amp(Coin{cp}, n));
    return block;
}

ComplexMatrix two_qubit_rdm(const WalkState& state, Node i, Node j, bool normalize) {
    if (i == j) throw GraphError("two_qubit_rdm: nodes must differ");
    check_node(state, i, "two_qubit_rdm");
    check_node(state, j, "two_qubit_rdm");

    const Node pair[2] = {i, j};
    ComplexMatrix rho(4, 4);
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
            const auto block = rdm_block(state, pair[a], pair[b]);
            for (std::size_t c = 0; c < 2; ++c)
                for (std::size_t cp = 0; cp < 2; ++cp) rho(2 * a + c, 2 * b + cp) = block(c, cp);
        }
    }
    if (normalize) {
        const double tr = rho.trace().real();
        if (tr < kMinPairTrace) {
            throw NumericsError("two_qubit_rdm: walker has no weight on nodes " + std::to_string(i) + " and " +
                                std::to_string(j));
        }
        rho *= 1.0 / tr;
    }
    return rho;
}

ComplexMatrix reduce_qubit(const ComplexMatrix& rho4, Qubit traced) {
    require_4x4(rho4, "reduce_qubit");
    ComplexMatrix out(2, 2);
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
            for (std::size_t k = 0; k < 2; ++k) {
                out(a, b) += traced == Qubit::Second ? rho4(2 * a + k, 2 * b + k) : rho4(2 * k + a, 2 * k + b);
            }
        }
    }
    return out;
}

double pair_entanglement(const ComplexMatrix& rho4, double base) {
    return von_neumann_entropy(reduce_qubit(rho4, Qubit::Second), base);
}

double log_negativity(const ComplexMatrix& rho4) {
    require_4x4(rho4, "log_negativity");
    // Partial transpose on the second qubit.
    ComplexMatrix pt(4, 4);
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b)
            for (std::size_t c = 0; c < 2; ++c)
                for (std::size_t d = 0; d < 2; ++d) pt(2 * a + c, 2 * b + d) = rho4(2 * a + d, 2 * b + c);
    double trace_norm = 0.0;
    for (double lambda : hermitian_eig(pt).eigenvalues) trace_norm += std::abs(lambda);
    return std::max(0.0, std::log2(trace_norm));
}

std::optional<double> pair_entropy(const WalkState& state, Node i, Node j, double base) {
    const auto rho = two_qubit_rdm(state, i, j, false);
    const double tr = rho.trace().real();
    if (tr < kMinPairTrace) return std::nullopt;
    return pair_entanglement(rho * (1.0 / tr), base);
}

std::vector<std::optional<double>> entropy_series(std::span<const WalkState> trajectory, Node i, Node j,
                                                  double base) {
    std::vector<std::optional<double>> out;
    out.reserve(trajectory.size());
    for (const auto& state : trajectory) out.push_back(pair_entropy(state, i, j, base));
    return out;
}

}  // namespace qwnet

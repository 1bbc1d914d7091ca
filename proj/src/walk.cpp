#include "qwnet/walk.hpp"

#include <cmath>

namespace qwnet {

namespace {

constexpr double kUnitaryTol = 1e-10;

}  // namespace

WalkState::WalkState(std::size_t n, std::vector<Complex> amps) : n_(n), amps_(std::move(amps)) {
    if (amps_.size() != 2 * n_) {
        throw std::invalid_argument("WalkState: expected " + std::to_string(2 * n_) + " amplitudes, got " +
                                    std::to_string(amps_.size()));
    }
}

void ProtocolConfig::validate() const {
    if (source == target) throw std::invalid_argument("protocol: source and target must differ");
    if (!(kappa >= 1.0) || !std::isfinite(kappa)) throw std::invalid_argument("protocol: kappa must be >= 1");
    if (!std::isfinite(gamma)) throw std::invalid_argument("protocol: gamma must be finite");
    if (!(entropy_base > 0.0) || entropy_base == 1.0) throw std::invalid_argument("protocol: invalid entropy base");
    if (!std::isfinite(coin_theta)) throw std::invalid_argument("protocol: coin_theta must be finite");
}

ComplexMatrix coin_su2(double theta) {
    const double c = std::cos(theta);
    const Complex is{0.0, std::sin(theta)};
    return ComplexMatrix(2, 2, {c, is, is, c});
}

ComplexMatrix ratchet_coin(std::size_t n, std::span<const Node> marked, double theta) {
    std::vector<bool> is_marked(n, false);
    for (Node w : marked) {
        if (w >= n) {
            throw GraphError("ratchet_coin: marked node " + std::to_string(w) + " out of range for " +
                             std::to_string(n) + " nodes");
        }
        is_marked[w] = true;
    }

    const auto unmarked = coin_su2(theta);
    ComplexMatrix coin(2 * n, 2 * n);
    for (Node v = 0; v < n; ++v) {
        for (std::size_t a = 0; a < 2; ++a) {
            for (std::size_t b = 0; b < 2; ++b) {
                coin(a * n + v, b * n + v) = is_marked[v] ? Complex(a == b ? 1.0 : 0.0) : unmarked(a, b);
            }
        }
    }
    return coin;
}

ComplexMatrix directed_shift(const ComplexMatrix& u) {
    if (!u.is_square()) throw NumericsError("directed_shift: position unitary must be square");
    if (const double defect = unitarity_defect(u); defect > kUnitaryTol) {
        throw NumericsError("directed_shift: position operator is not unitary (defect " + std::to_string(defect) + ")");
    }
    const std::size_t n = u.rows();
    ComplexMatrix s(2 * n, 2 * n);
    for (std::size_t v = 0; v < n; ++v) s(v, v) = 1.0;
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) s(n + r, n + c) = u(r, c);
    return s;
}

WalkState initial_state(std::size_t n, Node source) {
    if (source >= n) {
        throw GraphError("initial_state: source " + std::to_string(source) + " out of range for " +
                         std::to_string(n) + " nodes");
    }
    std::vector<Complex> amps(2 * n);
    amps[source] = amps[n + source] = 1.0 / std::sqrt(2.0);
    return WalkState(n, std::move(amps));
}

WalkOperators build_operators(const Graph& g, const ProtocolConfig& cfg) {
    cfg.validate();
    const auto boosted = boost_edge(g, cfg.source, cfg.target, cfg.kappa);

    WalkOperators ops;
    ops.graph_unitary = unitary_exp_i(laplacian(boosted, cfg.gamma));
    ops.shift = directed_shift(ops.graph_unitary);
    const Node marked[] = {cfg.source, cfg.target};
    ops.coin = ratchet_coin(g.node_count(), marked, cfg.coin_theta);
    ops.step = ops.shift * ops.coin;
    return ops;
}

WalkState step_once(const WalkState& state, const ComplexMatrix& step) {
    if (step.rows() != 2 * state.node_count() || !step.is_square()) {
        throw NumericsError("step operator is " + std::to_string(step.rows()) + "x" + std::to_string(step.cols()) +
                            " but the state has " + std::to_string(2 * state.node_count()) + " amplitudes");
    }
    return WalkState(state.node_count(), apply(step, state.amplitudes()));
}

std::vector<WalkState> evolve(const WalkState& state, const WalkOperators& ops, std::size_t steps) {
    std::vector<WalkState> trajectory;
    trajectory.reserve(steps + 1);
    evolve_visit(state, ops, steps, [&](std::size_t, const WalkState& s) { trajectory.push_back(s); });
    return trajectory;
}

WalkState evolve_visit(const WalkState& state, const WalkOperators& ops, std::size_t steps,
                       const std::function<void(std::size_t, const WalkState&)>& visit) {
    if (ops.step.rows() != 2 * state.node_count()) {
        throw NumericsError("evolve: operator dimension does not match state");
    }
    WalkState current = state;
    visit(0, current);
    for (std::size_t m = 1; m <= steps; ++m) {
        current = step_once(current, ops.step);
        visit(m, current);
    }
    return current;
}

}  // namespace qwnet

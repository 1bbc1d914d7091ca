#pragma once

#include "qwnet/netgraph.hpp"
#include "qwnet/numerics.hpp"

#include <functional>
#include <numbers>
#include <span>
#include <vector>

namespace qwnet {

/// Coin basis index: up stays in place under the shift, down moves.
enum class Coin : std::size_t { Up = 0, Down = 1 };

/// Amplitudes on coin (x) position, laid out as index(c, v) = c*n + v.
class WalkState {
public:
    WalkState() = default;
    WalkState(std::size_t n, std::vector<Complex> amps);

    std::size_t node_count() const noexcept { return n_; }
    std::span<const Complex> amplitudes() const noexcept { return amps_; }
    const Complex& amp(Coin c, Node v) const { return amps_[static_cast<std::size_t>(c) * n_ + v]; }
    double norm() const { return norm2(amps_); }

    friend bool operator==(const WalkState&, const WalkState&) = default;

private:
    std::size_t n_ = 0;
    std::vector<Complex> amps_;
};

struct ProtocolConfig {
    Node source = 0;
    Node target = 1;
    double kappa = 100.0;
    double gamma = 0.01;
    std::size_t tau = 100;
    double entropy_base = 2.0;
    /// Coin angle used at unmarked nodes.
    double coin_theta = std::numbers::pi / 2;

    void validate() const;
};

struct WalkOperators {
    ComplexMatrix graph_unitary;  // exp(iL), n x n
    ComplexMatrix coin;           // 2n x 2n
    ComplexMatrix shift;          // 2n x 2n
    ComplexMatrix step;           // shift * coin
};

/// [[cos t, i sin t], [i sin t, cos t]]
ComplexMatrix coin_su2(double theta);

/// Position-dependent coin: identity at every node in `marked`, C(theta)
/// everywhere else.
ComplexMatrix ratchet_coin(std::size_t n, std::span<const Node> marked, double theta = std::numbers::pi / 2);

/// Identity on the up sector, `u` on the down sector. Rejects non-unitary u.
ComplexMatrix directed_shift(const ComplexMatrix& u);

/// (|up> + |down>)/sqrt(2) at the source node.
WalkState initial_state(std::size_t n, Node source);

/// Boosts the source-target edge, forms exp(i gamma (D - A)) and the ratchet
/// coin with W = {source, target}. Throws NoDirectEdge if they are not adjacent.
WalkOperators build_operators(const Graph& g, const ProtocolConfig& cfg);

WalkState step_once(const WalkState& state, const ComplexMatrix& step);

/// Full trajectory; element 0 is the input state.
std::vector<WalkState> evolve(const WalkState& state, const WalkOperators& ops, std::size_t steps);

/// Streaming variant: calls `visit(step_index, state)` for indices 0..steps
/// without retaining the trajectory. Returns the final state.
WalkState evolve_visit(const WalkState& state, const WalkOperators& ops, std::size_t steps,
                       const std::function<void(std::size_t, const WalkState&)>& visit);

}  // namespace qwnet

#pragma once

#include "qwnet/numerics.hpp"
#include "qwnet/walk.hpp"

#include <optional>
#include <span>
#include <vector>

namespace qwnet {

struct PositionDistribution {
    std::vector<double> probs;
    std::size_t step = 0;
};

/// probs[v] = |amp(up, v)|^2 + |amp(down, v)|^2
PositionDistribution position_distribution(const WalkState& state, std::size_t step = 0);

/// Probability mass outside `marked`.
double loss_probability(const PositionDistribution& dist, std::span<const Node> marked);

/// 2x2 coin block of |psi><psi| for position bra/ket |m><n|:
/// entry (c, c') = amp(c, m) * conj(amp(c', n)).
ComplexMatrix rdm_block(const WalkState& state, Node m, Node n);

/// [[rho^ii, rho^ij], [rho^ji, rho^jj]] as a 4x4 matrix indexed
/// (position-in-pair, coin). With `normalize`, divided by its trace, which
/// amounts to post-selecting on the walker sitting at i or j.
ComplexMatrix two_qubit_rdm(const WalkState& state, Node i, Node j, bool normalize);

enum class Qubit { First, Second };

/// Single-qubit state left after tracing out `traced` from a 4x4 density matrix.
ComplexMatrix reduce_qubit(const ComplexMatrix& rho4, Qubit traced);

/// Entropy of the first-qubit reduction (the second is traced out).
double pair_entanglement(const ComplexMatrix& rho4, double base = 2.0);

/// log2 of the trace norm of the partial transpose.
double log_negativity(const ComplexMatrix& rho4);

/// pair_entanglement of the normalized pair RDM at each step. Steps where
/// the walker has (numerically) no weight on {i, j} are std::nullopt.
std::vector<std::optional<double>> entropy_series(std::span<const WalkState> trajectory, Node i, Node j,
                                                  double base = 2.0);

/// Single-step building block of entropy_series.
std::optional<double> pair_entropy(const WalkState& state, Node i, Node j, double base = 2.0);

}  // namespace qwnet

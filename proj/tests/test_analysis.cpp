#include "doctest.h"

#include "oracles.hpp"
#include "qwnet/analysis.hpp"

#include <cmath>

using namespace qwnet;

namespace {

WalkState random_state(Rng& rng, std::size_t n) { return WalkState(n, oracle::random_unit_vector(rng, 2 * n)); }

ComplexMatrix pure_density(std::initializer_list<Complex> amps) {
    const std::vector<Complex> v(amps);
    ComplexMatrix rho(v.size(), v.size());
    for (std::size_t r = 0; r < v.size(); ++r)
        for (std::size_t c = 0; c < v.size(); ++c) rho(r, c) = v[r] * std::conj(v[c]);
    return rho;
}

double min_eigenvalue(const ComplexMatrix& m) { return hermitian_eig(m).eigenvalues.front(); }

}  // namespace

TEST_CASE("position_distribution") {
    const auto d = position_distribution(initial_state(6, 2));
    for (std::size_t v = 0; v < 6; ++v) CHECK(d.probs[v] == doctest::Approx(v == 2 ? 1.0 : 0.0));

    const std::size_t n = 5;
    const WalkState uniform(n, std::vector<Complex>(2 * n, Complex(1.0 / std::sqrt(2.0 * n))));
    for (double p : position_distribution(uniform).probs) CHECK(p == doctest::Approx(1.0 / n));
}

TEST_CASE("loss_probability") {
    const Node pair[] = {2, 4};
    CHECK(loss_probability(position_distribution(initial_state(6, 2)), pair) == 0.0);

    const std::size_t n = 8;
    const WalkState uniform(n, std::vector<Complex>(2 * n, Complex(1.0 / std::sqrt(2.0 * n))));
    CHECK(loss_probability(position_distribution(uniform), pair) == doctest::Approx((n - 2.0) / n));

    const Node bad[] = {9};
    CHECK_THROWS_AS(loss_probability(position_distribution(uniform), bad), GraphError);
}

TEST_CASE("rdm_block on the initial state") {
    const auto psi = initial_state(5, 1);
    CHECK(max_abs_diff(rdm_block(psi, 1, 1), ComplexMatrix(2, 2, {0.5, 0.5, 0.5, 0.5})) < 1e-15);
    CHECK(max_abs_diff(rdm_block(psi, 3, 3), ComplexMatrix(2, 2)) == 0.0);
    CHECK(max_abs_diff(rdm_block(psi, 1, 3), ComplexMatrix(2, 2)) == 0.0);
    CHECK_THROWS_AS(rdm_block(psi, 1, 5), GraphError);
}

TEST_CASE("rdm_block invariants on random states") {
    Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + rng.below(10);
        const auto psi = random_state(rng, n);
        const auto dist = position_distribution(psi);
        double total = 0.0;
        for (Node v = 0; v < n; ++v) {
            const auto block = rdm_block(psi, v, v);
            total += block.trace().real();
            CHECK(std::abs(block.trace().real() - dist.probs[v]) < 1e-12);
            CHECK(hermiticity_defect(block) < 1e-15);
            CHECK(min_eigenvalue(block) >= -1e-10);
        }
        CHECK(std::abs(total - 1.0) < 1e-9);
        const Node m = rng.below(n), k = rng.below(n);
        CHECK(max_abs_diff(rdm_block(psi, m, k).adjoint(), rdm_block(psi, k, m)) == 0.0);
    }
}

TEST_CASE("two_qubit_rdm on the initial state") {
    const auto psi = initial_state(4, 0);
    const auto rho = two_qubit_rdm(psi, 0, 2, false);
    ComplexMatrix expected(4, 4);
    expected(0, 0) = expected(0, 1) = expected(1, 0) = expected(1, 1) = 0.5;
    CHECK(max_abs_diff(rho, expected) < 1e-15);

    const auto normalized = two_qubit_rdm(psi, 0, 2, true);
    CHECK(normalized.trace().real() == doctest::Approx(1.0));
    CHECK(pair_entanglement(normalized) == doctest::Approx(0.0));
    CHECK(von_neumann_entropy(reduce_qubit(normalized, Qubit::First)) == doctest::Approx(0.0));
}

TEST_CASE("two_qubit_rdm errors") {
    const auto psi = initial_state(4, 0);
    CHECK_THROWS_AS(two_qubit_rdm(psi, 1, 1, false), GraphError);
    CHECK_THROWS_AS(two_qubit_rdm(psi, 1, 2, true), NumericsError);
    CHECK_NOTHROW(two_qubit_rdm(psi, 1, 2, false));
}

TEST_CASE("two_qubit_rdm is Hermitian PSD on random states") {
    Rng rng(31);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 3 + rng.below(8);
        const auto psi = random_state(rng, n);
        const Node i = rng.below(n);
        const Node j = (i + 1 + rng.below(n - 1)) % n;
        const auto rho = two_qubit_rdm(psi, i, j, true);
        CHECK(hermiticity_defect(rho) < 1e-12);
        CHECK(min_eigenvalue(rho) >= -1e-10);
        CHECK(rho.trace().real() == doctest::Approx(1.0).epsilon(1e-12));
        // The pair state is pure, so both single-qubit entropies agree.
        CHECK(std::abs(von_neumann_entropy(reduce_qubit(rho, Qubit::Second)) -
                       von_neumann_entropy(reduce_qubit(rho, Qubit::First))) < 1e-8);
    }
}

TEST_CASE("pair_entanglement reference states") {
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(pair_entanglement(pure_density({r, 0.0, 0.0, r})) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pair_entanglement(pure_density({1.0, 0.0, 0.0, 0.0})) == doctest::Approx(0.0));
    CHECK(pair_entanglement(ComplexMatrix::identity(4) * Complex(0.25)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("pair_entanglement is symmetric for exchange-symmetric states") {
    const double a = 0.6, b = 0.8 / std::sqrt(2.0);
    // a|00> + b(|01> + |10>)
    const auto rho = pure_density({a, b, b, 0.0});
    CHECK(std::abs(von_neumann_entropy(reduce_qubit(rho, Qubit::Second)) -
                   von_neumann_entropy(reduce_qubit(rho, Qubit::First))) < 1e-12);
}

TEST_CASE("log_negativity") {
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(log_negativity(pure_density({r, 0.0, 0.0, r})) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(log_negativity(pure_density({1.0, 0.0, 0.0, 0.0})) == doctest::Approx(0.0));
    CHECK(log_negativity(ComplexMatrix::identity(4) * Complex(0.25)) == doctest::Approx(0.0));
}

TEST_CASE("entropy_series") {
    Graph p2(2);
    p2.set_weight(0, 1, 1.0);
    ProtocolConfig cfg;
    cfg.source = 0;
    cfg.target = 1;
    const auto traj = evolve(initial_state(2, 0), build_operators(p2, cfg), 40);
    const auto series = entropy_series(traj, 0, 1);
    REQUIRE(series.size() == 41);
    CHECK(series[0].has_value());
    CHECK(*series[0] == doctest::Approx(0.0));
    for (const auto& e : series) {
        REQUIRE(e.has_value());
        CHECK(*e >= 0.0);
        CHECK(*e <= 1.0 + 1e-12);
    }

    // No weight on {1, 2} at step 0 of a walk started at 0.
    const auto on_other = entropy_series(std::span(traj).first(1), 1, 0);
    CHECK(on_other[0].has_value());
    const auto idle = entropy_series(std::vector<WalkState>{initial_state(3, 0)}, 1, 2);
    CHECK_FALSE(idle[0].has_value());
}

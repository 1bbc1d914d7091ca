// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "oracles.hpp"
#include "qwnet/analysis.hpp"
#include "qwnet/config.hpp"
#include "qwnet/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

using namespace qwnet;

namespace {

int failures = 0;

void report(const std::string& id, bool ok, const std::string& detail) {
    std::printf("[%s] %s: %s\n", ok ? "PASS" : "FAIL", id.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ProtocolConfig protocol_for(Node s, Node t) {
    ProtocolConfig p;
    p.source = s;
    p.target = t;
    return p;
}

GraphModel random_model(Rng& rng, std::size_t i) {
    const std::size_t n = 5 + rng.below(46);
    switch (i % 3) {
    case 0: return ErdosRenyi{n, 0.1 + 0.5 * rng.uniform()};
    case 1: return NewmanWattsStrogatz{n, 1 + rng.below(2), rng.uniform()};
    default: return BarabasiAlbert{n, 1 + rng.below(3), 4};
    }
}

/// Random model instance with an edge; returns graph plus its first edge.
std::pair<Graph, Edge> random_graph(Rng& rng, std::size_t i) {
    for (;;) {
        auto g = generate({random_model(rng, i), rng.next()});
        const auto edges = g.edges();
        if (!edges.empty()) return {std::move(g), edges[rng.below(edges.size())]};
    }
}

ExperimentConfig er_config(std::size_t n, double p, std::size_t repeats) {
    ExperimentConfig cfg;
    cfg.name = "acceptance";
    cfg.graph.model = ErdosRenyi{n, p};
    cfg.repeats = repeats;
    cfg.master_seed = 2024;
    return cfg;
}

void criterion_unitarity() {
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(101);
    double worst_unitarity = 0.0, worst_norm = 0.0;
    for (std::size_t i = 0; i < 50; ++i) {
        const auto [g, e] = random_graph(rng, i);
        const auto ops = build_operators(g, protocol_for(e.u, e.v));
        worst_unitarity = std::max(worst_unitarity, unitarity_defect(ops.step));
        evolve_visit(initial_state(g.node_count(), e.u), ops, 200, [&](std::size_t, const WalkState& s) {
            worst_norm = std::max(worst_norm, std::abs(s.norm() - 1.0));
        });
    }
    report("1 unitarity/norm", worst_unitarity < 1e-10 && worst_norm < 1e-9,
           fmt("50 graphs, max |W'W-I| = %.3g, max |norm-1| = %.3g (%.1fs)", worst_unitarity, worst_norm,
               seconds_since(t0)));
}

void criterion_exponential() {
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(202);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + rng.below(8);
        const auto h = oracle::random_hermitian(rng, n, 2.5);
        worst = std::max(worst, max_abs_diff(unitary_exp_i(h), oracle::exp_i_series(h)));
    }
    report("2 exp oracle", worst < 1e-10,
           fmt("100 Hermitian matrices, max entry error %.3g (%.2fs)", worst, seconds_since(t0)));
}

/// Max over steps of the instance-averaged loss.
double max_mean_loss(const SweepResult& r) {
    const std::size_t steps = r.config.protocol.tau + 1;
    double worst = 0.0;
    for (std::size_t m = 0; m < steps; ++m) {
        std::vector<Cell> losses;
        for (const auto& s : r.instances)
            if (s.ok) losses.push_back(s.rows[m].loss);
        worst = std::max(worst, moments(losses).mean);
    }
    return worst;
}

ExperimentConfig localization_config() {
    auto cfg = er_config(12, 0.1, 20);
    cfg.graph.require_connected = true;
    cfg.graph.max_attempts = 100000;
    return cfg;
}

ExperimentConfig entropy_config() {
    auto cfg = er_config(10, 0.5, 50);
    cfg.graph.p_uniform = true;
    cfg.sweep = SweepAxis{SweepAxisKind::NodeCount, {6, 10, 15, 20}};
    return cfg;
}

struct EntropyStats {
    std::size_t used = 0;
    double st = 0.0, rand = 0.0, rand_all = 0.0;
    Moments late;
};

EntropyStats entropy_stats(const SweepResult& r) {
    // Instance-averaged series, pooled over node counts.
    const std::size_t steps = r.config.protocol.tau + 1;
    std::vector<Cell> e_st(steps), e_rand(steps);
    EntropyStats out;
    for (std::size_t m = 0; m < steps; ++m) {
        std::vector<Cell> a, b;
        for (const auto& s : r.instances) {
            if (!s.ok) continue;
            a.push_back(s.rows[m].e_st);
            b.push_back(s.rows[m].e_t_rand);
        }
        e_st[m] = moments(a).mean;
        e_rand[m] = moments(b).mean;
        out.used = moments(a).count;
    }
    auto window = [](const std::vector<Cell>& v, std::size_t from, std::size_t to) {
        return moments({v.begin() + static_cast<std::ptrdiff_t>(from), v.begin() + static_cast<std::ptrdiff_t>(to + 1)});
    };
    out.st = window(e_st, 20, 100).mean;
    out.rand = window(e_rand, 20, 100).mean;
    out.late = window(e_st, 50, 100);
    out.rand_all = window(e_rand, 0, 100).mean;
    return out;
}

void criterion_localization() {
    const auto t0 = std::chrono::steady_clock::now();
    std::printf("  calibration grid: max mean loss on 20 connected ER(12,0.1); late sd/mean of E_st on the\n"
                "  entropy sweep (criterion 5 needs < 0.5)\n");
    for (double kappa : {100.0, 1000.0}) {
        for (double gamma : {0.01, 0.1, 1.0}) {
            auto cfg = localization_config();
            cfg.protocol.kappa = kappa;
            cfg.protocol.gamma = gamma;
            auto ent = entropy_config();
            ent.protocol = cfg.protocol;
            const auto stats = entropy_stats(run_sweep(ent));
            std::printf("    kappa=%-6g gamma=%-5g loss=%-10.4g late sd/mean=%.3f\n", kappa, gamma,
                        max_mean_loss(run_sweep(cfg)), stats.late.sd / stats.late.mean);
        }
    }
    const auto cfg = localization_config();
    const auto r = run_sweep(cfg);
    std::size_t ok = 0;
    for (const auto& s : r.instances) ok += s.ok;
    const double loss = max_mean_loss(r);
    report("3 localization", ok == 20 && loss < 0.02,
           fmt("defaults kappa=%g gamma=%g, %zu/20 instances, max mean loss %.4g < 0.02 (%.1fs)", cfg.protocol.kappa,
               cfg.protocol.gamma, ok, loss, seconds_since(t0)));
}

void criterion_sweeps() {
    const auto t0 = std::chrono::steady_clock::now();
    auto by_n = er_config(25, 0.3, 20);
    by_n.sweep = SweepAxis{SweepAxisKind::NodeCount, {10, 25, 50}};
    auto by_p = er_config(25, 0.3, 20);
    by_p.sweep = SweepAxis{SweepAxisKind::EdgeProbability, {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}};

    bool ok = true;
    double lowest = 1.0;
    std::string where;
    for (const auto* cfg : {&by_n, &by_p}) {
        const auto r = run_sweep(*cfg);
        const std::string axis = r.summary.columns.front();
        for (std::size_t row = 0; row < r.summary.rows.size(); ++row) {
            const auto mean = r.summary.number(row, "mean_P_pair");
            const auto failed = *r.summary.number(row, "failures");
            const bool good = mean && *mean > 0.95 && failed == 0.0;
            std::printf("    %s=%-5g instances=%-3g P_pair=%.5f\n", axis.c_str(), *r.summary.number(row, std::size_t{0}),
                        *r.summary.number(row, "instances"), mean.value_or(NAN));
            if (!mean || *mean < lowest) {
                lowest = mean.value_or(0.0);
                where = fmt("%s=%g", axis.c_str(), *r.summary.number(row, std::size_t{0}));
            }
            ok = ok && good;
        }
    }
    report("4 sweeps", ok,
           fmt("min mean P_pair %.5f at %s, threshold 0.95 (%.1fs)", lowest, where.c_str(), seconds_since(t0)));
}

void criterion_entropy() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto e = entropy_stats(run_sweep(entropy_config()));
    report("5a entropy contrast", e.rand > 0.0 ? e.st / e.rand >= 5.0 : e.st > 0.0,
           fmt("%zu instances, <E_st>=%.4f <E_t_rand>=%.4f over steps 20-100, ratio %.1f >= 5", e.used, e.st, e.rand,
               e.st / e.rand));
    report("5b entropy stability", e.late.sd < 0.5 * e.late.mean,
           fmt("late window (steps 50-100) of mean E_st: sd %.4f vs half mean %.4f", e.late.sd, 0.5 * e.late.mean));
    report("5c reference unentangled", e.rand_all < 0.2,
           fmt("<E_t_rand> over all steps %.4f < 0.2 bits (%.1fs)", e.rand_all, seconds_since(t0)));
}

void criterion_rdm() {
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(303);
    double trace_err = 0.0, herm = 0.0, min_eig = 0.0, diag_err = 0.0;
    std::size_t states = 0;
    auto check_pair = [&](const WalkState& s, Node i, Node j) {
        for (bool normalize : {false, true}) {
            const auto raw = two_qubit_rdm(s, i, j, false);
            if (normalize && raw.trace().real() < 1e-12) continue;
            const auto rho = normalize ? two_qubit_rdm(s, i, j, true) : raw;
            herm = std::max(herm, hermiticity_defect(rho));
            min_eig = std::min(min_eig, hermitian_eig(rho).eigenvalues.front());
        }
    };
    for (std::size_t i = 0; i < 30; ++i) {
        const auto [g, e] = random_graph(rng, i);
        const std::size_t n = g.node_count();
        Node ref = rng.below(n);
        while (ref == e.u || ref == e.v) ref = rng.below(n);
        evolve_visit(initial_state(n, e.u), build_operators(g, protocol_for(e.u, e.v)), 100,
                     [&](std::size_t, const WalkState& s) {
                         ++states;
                         const auto dist = position_distribution(s);
                         double total = 0.0;
                         for (Node v = 0; v < n; ++v) {
                             const double tr = rdm_block(s, v, v).trace().real();
                             total += tr;
                             diag_err = std::max(diag_err, std::abs(tr - dist.probs[v]));
                         }
                         trace_err = std::max(trace_err, std::abs(total - 1.0));
                         check_pair(s, e.u, e.v);
                         check_pair(s, e.v, ref);
                     });
    }
    report("6 RDM properties", trace_err < 1e-9 && herm < 1e-12 && min_eig >= -1e-10 && diag_err < 1e-12,
           fmt("%zu states: |sum tr - 1| %.3g, Hermiticity %.3g, min eigenvalue %.3g, |P - tr| %.3g (%.1fs)", states,
               trace_err, herm, min_eig, diag_err, seconds_since(t0)));
}

void criterion_generators() {
    const auto t0 = std::chrono::steady_clock::now();
    bool er_ok = true;
    for (auto [n, p] : {std::pair<std::size_t, double>{20, 0.3}, {12, 0.1}, {50, 0.05}}) {
        const double pairs = static_cast<double>(n * (n - 1)) / 2.0;
        const double mean = p * pairs, sd = std::sqrt(pairs * p * (1 - p));
        for (std::uint64_t seed = 0; seed < 200; ++seed)
            er_ok = er_ok && std::abs(static_cast<double>(gen_erdos_renyi(n, p, seed).edge_count()) - mean) <= 4 * sd;
    }
    bool ba_ok = true;
    for (std::uint64_t seed = 0; seed < 200; ++seed)
        for (std::size_t m = 1; m <= 4; ++m)
            for (std::size_t n : {5, 25, 60})
                ba_ok = ba_ok && gen_barabasi_albert(n, m, seed).edge_count() == 3 + m * (n - 4);
    bool nws_ok = true;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        for (auto [n, k] : {std::pair<std::size_t, std::size_t>{34, 3}, {10, 1}, {25, 2}}) {
            const auto g = gen_nws(n, k, 0.3, seed);
            for (Node w = 0; w < n; ++w)
                for (std::size_t j = 1; j <= k; ++j) nws_ok = nws_ok && g.has_edge(w, (w + j) % n);
        }
    }
    report("7 generators", er_ok && ba_ok && nws_ok,
           fmt("ER within 4 sigma: %s, BA edge count exact: %s, NWS ring intact: %s (%.1fs)", er_ok ? "yes" : "no",
               ba_ok ? "yes" : "no", nws_ok ? "yes" : "no", seconds_since(t0)));
}

std::string preset_csv(const std::string& name) {
    const auto cfg = preset(name);
    if (!cfg.sweep) return write_csv(run_table(run_single(cfg)));
    const auto r = run_sweep(cfg);
    return write_csv(r.summary) + write_csv(r.series) + write_csv(r.instances_table);
}

void criterion_determinism() {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    for (const auto& name : preset_names()) {
        const bool same = preset_csv(name) == preset_csv(name);
        ok = ok && same;
        detail += name + (same ? " ok " : " DIFFERS ");
    }
    report("8 determinism", ok, fmt("%s(%.1fs)", detail.c_str(), seconds_since(t0)));
}

}  // namespace

int main() {
    criterion_unitarity();
    criterion_exponential();
    criterion_localization();
    criterion_sweeps();
    criterion_entropy();
    criterion_rdm();
    criterion_generators();
    criterion_determinism();
    std::printf("%s: %d failing line(s)\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
    return failures == 0 ? 0 : 1;
}

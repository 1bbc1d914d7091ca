#include "qwnet/netgraph.hpp"

#include "qwnet/rng.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>
#include <queue>
#include <set>

namespace qwnet {

NoDirectEdge::NoDirectEdge(Node s, Node t)
    : GraphError("no direct edge between source " + std::to_string(s) + " and target " + std::to_string(t)) {}

EdgeListParseError::EdgeListParseError(std::size_t line, const std::string& message)
    : GraphError("edge list line " + std::to_string(line) + ": " + message), line_(line) {}

Graph::Graph(std::size_t n) : n_(n), weights_(n * n, 0.0) {}

void Graph::check_node(Node v) const {
    if (v >= n_) {
        throw GraphError("node " + std::to_string(v) + " out of range for graph with " + std::to_string(n_) +
                         " nodes");
    }
}

double Graph::weight(Node u, Node v) const {
    check_node(u);
    check_node(v);
    return weights_[u * n_ + v];
}

void Graph::set_weight(Node u, Node v, double w) {
    check_node(u);
    check_node(v);
    if (u == v) throw GraphError("self-loop at node " + std::to_string(u));
    if (!(w >= 0.0) || !std::isfinite(w)) throw GraphError("edge weight must be finite and non-negative");
    weights_[u * n_ + v] = w;
    weights_[v * n_ + u] = w;
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    for (Node u = 0; u < n_; ++u)
        for (Node v = u + 1; v < n_; ++v)
            if (const double w = weights_[u * n_ + v]; w > 0.0) out.push_back({u, v, w});
    return out;
}

std::size_t Graph::edge_count() const {
    std::size_t count = 0;
    for (Node u = 0; u < n_; ++u)
        for (Node v = u + 1; v < n_; ++v)
            if (weights_[u * n_ + v] > 0.0) ++count;
    return count;
}

std::size_t Graph::degree(Node v) const {
    check_node(v);
    return static_cast<std::size_t>(
        std::count_if(weights_.begin() + v * n_, weights_.begin() + (v + 1) * n_, [](double w) { return w > 0.0; }));
}

double Graph::weighted_degree(Node v) const {
    check_node(v);
    double sum = 0.0;
    for (Node u = 0; u < n_; ++u) sum += weights_[v * n_ + u];
    return sum;
}

std::vector<Node> Graph::neighbours(Node v) const {
    check_node(v);
    std::vector<Node> out;
    for (Node u = 0; u < n_; ++u)
        if (weights_[v * n_ + u] > 0.0) out.push_back(u);
    return out;
}

bool Graph::is_connected() const {
    if (n_ <= 1) return true;
    std::vector<bool> seen(n_, false);
    std::queue<Node> frontier;
    frontier.push(0);
    seen[0] = true;
    std::size_t reached = 1;
    while (!frontier.empty()) {
        const Node u = frontier.front();
        frontier.pop();
        for (Node v = 0; v < n_; ++v) {
            if (!seen[v] && weights_[u * n_ + v] > 0.0) {
                seen[v] = true;
                ++reached;
                frontier.push(v);
            }
        }
    }
    return reached == n_;
}

// ---------------------------------------------------------------------------
// generators

namespace {

void check_probability(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw GraphError("edge probability must lie in [0, 1]");
}

}  // namespace

Graph gen_erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
    if (n < 2) throw GraphError("G(n,p) needs n >= 2");
    check_probability(p);
    Rng rng(seed);
    Graph g(n);
    for (Node u = 0; u < n; ++u)
        for (Node v = u + 1; v < n; ++v)
            if (rng.uniform() < p) g.set_weight(u, v, 1.0);
    return g;
}

Graph gen_nws(std::size_t n, std::size_t ring_k, double p, std::uint64_t seed) {
    if (ring_k < 1) throw GraphError("NWS ring_k must be >= 1");
    if (n <= 2 * ring_k) {
        throw GraphError("NWS needs n > 2*ring_k (n=" + std::to_string(n) + ", ring_k=" + std::to_string(ring_k) + ")");
    }
    check_probability(p);

    Graph g(n);
    for (Node w = 0; w < n; ++w)
        for (std::size_t j = 1; j <= ring_k; ++j) g.set_weight(w, (w + j) % n, 1.0);

    Rng rng(seed);
    for (Node w = 0; w < n; ++w) {
        if (!(rng.uniform() < p)) continue;
        std::vector<Node> candidates;
        for (Node m = 0; m < n; ++m)
            if (m != w && !g.has_edge(w, m)) candidates.push_back(m);
        if (candidates.empty()) continue;
        g.set_weight(w, candidates[rng.below(candidates.size())], 1.0);
    }
    return g;
}

Graph gen_barabasi_albert(std::size_t n, std::size_t m, std::uint64_t seed, std::size_t init) {
    if (init < 2) throw GraphError("BA seed star needs at least 2 nodes");
    if (m < 1) throw GraphError("BA m must be >= 1");
    if (n <= init) {
        throw GraphError("BA needs n > init (n=" + std::to_string(n) + ", init=" + std::to_string(init) + ")");
    }
    if (m > init) {
        throw GraphError("BA m=" + std::to_string(m) + " exceeds the " + std::to_string(init) +
                         " nodes present when growth starts");
    }

    Graph g(n);
    for (Node leaf = 1; leaf < init; ++leaf) g.set_weight(0, leaf, 1.0);

    // Each endpoint appears once per incident edge, so a uniform pick from this
    // list is a degree-proportional pick.
    std::vector<Node> endpoints;
    for (Node leaf = 1; leaf < init; ++leaf) {
        endpoints.push_back(0);
        endpoints.push_back(leaf);
    }

    Rng rng(seed);
    for (Node arrival = init; arrival < n; ++arrival) {
        std::set<Node> targets;
        while (targets.size() < m) targets.insert(endpoints[rng.below(endpoints.size())]);
        for (Node t : targets) {
            g.set_weight(arrival, t, 1.0);
            endpoints.push_back(arrival);
            endpoints.push_back(t);
        }
    }
    return g;
}

Graph generate(const GenSpec& spec) {
    return std::visit(
        [&](const auto& model) -> Graph {
            using T = std::decay_t<decltype(model)>;
            if constexpr (std::is_same_v<T, ErdosRenyi>) {
                return gen_erdos_renyi(model.n, model.p, spec.seed);
            } else if constexpr (std::is_same_v<T, NewmanWattsStrogatz>) {
                return gen_nws(model.n, model.ring_k, model.p, spec.seed);
            } else {
                return gen_barabasi_albert(model.n, model.m, spec.seed, model.init);
            }
        },
        spec.model);
}

// ---------------------------------------------------------------------------

Graph boost_edge(const Graph& g, Node s, Node t, double kappa) {
    if (!(kappa >= 1.0) || !std::isfinite(kappa)) throw GraphError("boost factor must be finite and >= 1");
    if (s == t || !g.has_edge(s, t)) throw NoDirectEdge(s, t);
    Graph boosted = g;
    boosted.set_weight(s, t, g.weight(s, t) * kappa);
    return boosted;
}

ComplexMatrix laplacian(const Graph& g, double gamma) {
    const std::size_t n = g.node_count();
    ComplexMatrix l(n, n);
    for (Node u = 0; u < n; ++u) {
        double row_sum = 0.0;
        for (Node v = 0; v < n; ++v) {
            if (u == v) continue;
            const double w = g.weight(u, v);
            row_sum += w;
            l(u, v) = -gamma * w;
        }
        l(u, u) = gamma * row_sum;
    }
    return l;
}

// ---------------------------------------------------------------------------
// edge-list text

namespace {

std::string format_weight(double w) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, w);
    std::string s(buf, res.ptr);
    if (s.find_first_of(".eE") == std::string::npos) s += ".0";
    return s;
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <typename T>
bool parse_number(std::string_view token, T& out) {
    const auto res = std::from_chars(token.data(), token.data() + token.size(), out);
    return res.ec == std::errc{} && res.ptr == token.data() + token.size();
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        const std::size_t start = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
        if (i > start) out.push_back(s.substr(start, i - start));
    }
    return out;
}

}  // namespace

std::string save_edges(const Graph& g) {
    std::string out = "n=" + std::to_string(g.node_count()) + "\n";
    for (const auto& e : g.edges()) {
        out += std::to_string(e.u) + " " + std::to_string(e.v) + " " + format_weight(e.weight) + "\n";
    }
    return out;
}

Graph load_edges(std::string_view text) {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    std::optional<Graph> g;
    std::set<std::pair<Node, Node>> seen;

    while (pos <= text.size()) {
        auto eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        const auto line = trim(text.substr(pos, eol - pos));
        pos = eol + 1;
        ++line_no;
        if (line.empty()) continue;

        if (!g) {
            std::size_t n = 0;
            if (!line.starts_with("n=") || !parse_number(line.substr(2), n)) {
                throw EdgeListParseError(line_no, "expected header \"n=<count>\"");
            }
            g.emplace(n);
            continue;
        }

        const auto tokens = split_ws(line);
        if (tokens.size() != 3) throw EdgeListParseError(line_no, "expected \"u v w\"");
        Node u = 0, v = 0;
        double w = 0.0;
        if (!parse_number(tokens[0], u) || !parse_number(tokens[1], v)) {
            throw EdgeListParseError(line_no, "node labels must be non-negative integers");
        }
        if (!parse_number(tokens[2], w) || !std::isfinite(w)) {
            throw EdgeListParseError(line_no, "weight is not a finite number");
        }
        if (u >= g->node_count() || v >= g->node_count()) throw EdgeListParseError(line_no, "node out of range");
        if (u == v) throw EdgeListParseError(line_no, "self-loop");
        if (w < 0.0) throw EdgeListParseError(line_no, "negative weight");
        if (w == 0.0) throw EdgeListParseError(line_no, "zero weight");
        const auto key = std::minmax(u, v);
        if (!seen.insert(key).second) {
            if (g->weight(u, v) != w) throw EdgeListParseError(line_no, "asymmetric weight for repeated pair");
            throw EdgeListParseError(line_no, "duplicate edge");
        }
        g->set_weight(u, v, w);
    }
    if (!g) throw EdgeListParseError(line_no == 0 ? 1 : line_no, "missing header \"n=<count>\"");
    return *g;
}

}  // namespace qwnet

#pragma once

#include "qwnet/numerics.hpp"

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace qwnet {

using Node = std::size_t;

class GraphError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The protocol needs the source and target to share an edge.
class NoDirectEdge : public GraphError {
public:
    NoDirectEdge(Node s, Node t);
};

class EdgeListParseError : public GraphError {
public:
    EdgeListParseError(std::size_t line, const std::string& message);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

struct Edge {
    Node u;
    Node v;
    double weight;
    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Undirected simple graph with non-negative real edge weights.
///
/// Weights live in a dense symmetric matrix with zero diagonal; a pair is an
/// edge iff its weight is positive.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t n);

    std::size_t node_count() const noexcept { return n_; }
    double weight(Node u, Node v) const;
    bool has_edge(Node u, Node v) const { return weight(u, v) > 0.0; }

    /// Sets A_uv = A_vu = w. Zero removes the edge.
    void set_weight(Node u, Node v, double w);

    /// Edges with u < v, in lexicographic order.
    std::vector<Edge> edges() const;
    std::size_t edge_count() const;

    /// Number of neighbours.
    std::size_t degree(Node v) const;
    /// Row sum of the weight matrix.
    double weighted_degree(Node v) const;
    std::vector<Node> neighbours(Node v) const;

    bool is_connected() const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    void check_node(Node v) const;

    std::size_t n_ = 0;
    std::vector<double> weights_;
};

struct ErdosRenyi {
    std::size_t n = 0;
    double p = 0.0;
    friend bool operator==(const ErdosRenyi&, const ErdosRenyi&) = default;
};

struct NewmanWattsStrogatz {
    std::size_t n = 0;
    std::size_t ring_k = 1;  // neighbours joined on each side of the ring
    double p = 0.0;
    friend bool operator==(const NewmanWattsStrogatz&, const NewmanWattsStrogatz&) = default;
};

struct BarabasiAlbert {
    std::size_t n = 0;
    std::size_t m = 2;
    std::size_t init = 4;  // node count of the seed star
    friend bool operator==(const BarabasiAlbert&, const BarabasiAlbert&) = default;
};

using GraphModel = std::variant<ErdosRenyi, NewmanWattsStrogatz, BarabasiAlbert>;

struct GenSpec {
    GraphModel model;
    std::uint64_t seed = 0;
};

/// G(n, p): every unordered pair is an edge with probability p.
Graph gen_erdos_renyi(std::size_t n, double p, std::uint64_t seed);

/// Ring lattice joining each node to its ring_k nearest neighbours on either
/// side, plus one shortcut per node with probability p to a uniformly chosen
/// non-neighbour. Ring edges are never removed.
Graph gen_nws(std::size_t n, std::size_t ring_k, double p, std::uint64_t seed);

/// Preferential attachment grown from a star on `init` nodes; each arrival
/// links to m distinct existing nodes drawn with probability proportional to
/// degree.
Graph gen_barabasi_albert(std::size_t n, std::size_t m, std::uint64_t seed, std::size_t init = 4);

Graph generate(const GenSpec& spec);

/// Copy of g with the (s, t) weight scaled by kappa.
Graph boost_edge(const Graph& g, Node s, Node t, double kappa);

/// gamma (D - A) with D the diagonal of weighted degrees.
ComplexMatrix laplacian(const Graph& g, double gamma);

/// Edge-list text: a "n=<count>" header then one "u v w" line per edge, u < v.
std::string save_edges(const Graph& g);
Graph load_edges(std::string_view text);

}  // namespace qwnet

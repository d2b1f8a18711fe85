#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pursuit {

/// Undirected simple graph on vertices 0..n-1 with precomputed all-pairs
/// shortest-path hop distances.  Immutable after construction and safe to
/// share across threads.
///
/// Agents in the pursuit game may always stay put; that reflexivity is a
/// rule of the game engine, not a stored loop edge, so the edge relation
/// and the distance matrix stay standard.
class Graph {
public:
    static constexpr int kUnreachable = std::numeric_limits<int>::max();

    Graph() = default;

    int vertex_count() const { return n_; }
    int edge_count() const { return edge_count_; }

    bool adjacent(int u, int v) const { return adj_[u * n_ + v]; }

    /// Hop distance, kUnreachable for disconnected pairs.
    int distance(int u, int v) const { return dist_[u * n_ + v]; }

    bool connected() const { return connected_; }

    /// Open neighborhood, sorted ascending.
    const std::vector<int>& neighbors(int v) const { return nbrs_[v]; }

    /// Closed neighborhood (includes v), sorted ascending.
    const std::vector<int>& closed_neighborhood(int v) const { return closed_[v]; }

    int degree(int v) const { return static_cast<int>(nbrs_[v].size()); }

    /// All edges as (u,v) with u < v, lexicographically sorted.
    std::vector<std::pair<int, int>> edges() const;

    /// FNV-1a over the canonical edge list; stable across runs and platforms.
    std::uint64_t hash() const { return hash_; }

    bool operator==(const Graph& other) const {
        return n_ == other.n_ && adj_ == other.adj_;
    }

    friend Graph build_graph(int n, const std::vector<std::pair<int, int>>& edges);

private:
    int n_ = 0;
    int edge_count_ = 0;
    bool connected_ = false;
    std::uint64_t hash_ = 0;
    std::vector<char> adj_;          // n*n adjacency matrix
    std::vector<int> dist_;          // n*n distances
    std::vector<std::vector<int>> nbrs_;
    std::vector<std::vector<int>> closed_;
};

/// Builds a graph from an edge list.  Endpoints must lie in 0..n-1 and
/// self-loops are rejected; duplicate edges are merged.
Graph build_graph(int n, const std::vector<std::pair<int, int>>& edges);

/// Builds a named family from a spec string:
///   path:N       P_N (vertices numbered along the path)
///   cycle:N      C_N, N >= 3 (numbered around the cycle)
///   clique:N     K_N
///   spider:BxL   star of B legs with L edges each; 0 is the root and legs
///                are numbered leg-major (leg j holds 1+j*L .. (j+1)*L)
///   tree:p0,p1,...  parent array, root has parent -1
///   grid:MxN     Cartesian product of paths P_M and P_N (row-major ids)
///   king:MxN     strong product of paths P_M and P_N (row-major ids)
Graph generate(std::string_view spec);

/// Strong product: (u,u') ~ (v,v') when each coordinate is equal or
/// adjacent and the pairs differ.  Vertex (u,u') gets row-major id
/// u*|V(h)| + u'.  Throws if the product would exceed maxVertices.
Graph strong_product(const Graph& g, const Graph& h, int maxVertices = 100000);

/// Cartesian product: one coordinate equal, the other adjacent.
/// Same vertex numbering and size guard as strong_product.
Graph cartesian_product(const Graph& g, const Graph& h, int maxVertices = 100000);

struct EccentricityProfile {
    int radius = 0;
    int diameter = 0;
    std::vector<int> center;  // vertices of minimum eccentricity, sorted
};

/// Requires a connected graph.
EccentricityProfile eccentricity_profile(const Graph& g);

/// A total map from the vertices of `source` into the subset `target`,
/// intended to be a retraction: it should fix every target vertex and be a
/// homomorphism under reflexive semantics (edges map to edges or collapse).
struct VertexMap {
    Graph source;
    std::vector<int> target;  // sorted subset of source vertices
    std::vector<int> map;     // size n, map[v] must lie in target
};

struct RetractionCheck {
    bool ok = false;
    std::string detail;  // first violating vertex or edge when !ok
    explicit operator bool() const { return ok; }
};

/// Checks both retraction invariants; never throws, reports the first
/// violation found.
RetractionCheck verify_retraction(const VertexMap& m);

VertexMap identity_map(const Graph& g);

/// Retraction of the grid P_m x P_n (Cartesian) onto its subgrid P_a x P_b,
/// built by peeling one row at a time and then one column at a time.  Each
/// peel sends the last row to the previous one shifted by one, with the
/// final corner folded diagonally.  Requires 2 < a <= m and 2 < b <= n,
/// where a = m (or b = n) degenerates to skipping that phase.
VertexMap subgrid_retraction(int m, int n, int a, int b);

/// Pointwise composition v -> second.map[first.map[v]].  Both maps must
/// share the same source graph; the caller is responsible for the maps
/// being compatible retractions (second must fix the image of first).
VertexMap compose(const VertexMap& first, const VertexMap& second);

struct InducedSubgraph {
    Graph graph;
    std::vector<int> to_original;    // subgraph vertex -> original id
    std::vector<int> from_original;  // original id -> subgraph vertex or -1
};

InducedSubgraph induced_subgraph(const Graph& g, const std::vector<int>& vertices);

/// Edge-list text format: line "n m", then m lines "u v" (0-based);
/// lines starting with '#' are ignored.
Graph parse_edge_list(std::istream& in);
void write_edge_list(const Graph& g, std::ostream& out);

}  // namespace pursuit

#include "pursuit/graph.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace pursuit {

namespace {

std::uint64_t fnv1a(std::uint64_t h, std::uint64_t value) {
    for (int byte = 0; byte < 8; ++byte) {
        h ^= (value >> (8 * byte)) & 0xff;
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(edge_count_);
    for (int u = 0; u < n_; ++u)
        for (int v : nbrs_[u])
            if (u < v) out.emplace_back(u, v);
    return out;
}

Graph build_graph(int n, const std::vector<std::pair<int, int>>& edges) {
    if (n < 1) throw std::invalid_argument("build_graph: vertex count must be at least 1");
    Graph g;
    g.n_ = n;
    g.adj_.assign(static_cast<std::size_t>(n) * n, 0);
    for (auto [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw std::invalid_argument("build_graph: edge endpoint out of range");
        if (u == v)
            throw std::invalid_argument("build_graph: self-loop supplied");
        g.adj_[u * n + v] = 1;
        g.adj_[v * n + u] = 1;
    }

    g.nbrs_.resize(n);
    g.closed_.resize(n);
    int m = 0;
    for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v)
            if (g.adj_[u * n + v]) g.nbrs_[u].push_back(v);
        m += static_cast<int>(g.nbrs_[u].size());
        g.closed_[u] = g.nbrs_[u];
        g.closed_[u].insert(
            std::lower_bound(g.closed_[u].begin(), g.closed_[u].end(), u), u);
    }
    g.edge_count_ = m / 2;

    // All-pairs distances by BFS from every vertex.
    g.dist_.assign(static_cast<std::size_t>(n) * n, Graph::kUnreachable);
    std::deque<int> queue;
    for (int s = 0; s < n; ++s) {
        int* row = g.dist_.data() + static_cast<std::size_t>(s) * n;
        row[s] = 0;
        queue.clear();
        queue.push_back(s);
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            for (int v : g.nbrs_[u]) {
                if (row[v] == Graph::kUnreachable) {
                    row[v] = row[u] + 1;
                    queue.push_back(v);
                }
            }
        }
    }
    g.connected_ = true;
    for (int v = 0; v < n; ++v)
        if (g.dist_[v] == Graph::kUnreachable) g.connected_ = false;

    std::uint64_t h = 0xcbf29ce484222325ull;
    h = fnv1a(h, static_cast<std::uint64_t>(n));
    for (auto [u, v] : g.edges())
        h = fnv1a(h, (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint64_t>(v));
    g.hash_ = h;
    return g;
}

namespace {

int parse_int(std::string_view text, std::string_view what) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw std::invalid_argument("generate: malformed " + std::string(what) + " in '" +
                                    std::string(text) + "'");
    return value;
}

std::pair<int, int> parse_dims(std::string_view params) {
    auto x = params.find('x');
    if (x == std::string_view::npos)
        throw std::invalid_argument("generate: expected AxB parameters, got '" +
                                    std::string(params) + "'");
    return {parse_int(params.substr(0, x), "dimension"),
            parse_int(params.substr(x + 1), "dimension")};
}

Graph make_path(int n) {
    if (n < 1) throw std::invalid_argument("generate: path needs at least 1 vertex");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return build_graph(n, edges);
}

}  // namespace

Graph generate(std::string_view spec) {
    auto colon = spec.find(':');
    if (colon == std::string_view::npos)
        throw std::invalid_argument("generate: expected family:params, got '" +
                                    std::string(spec) + "'");
    std::string_view family = spec.substr(0, colon);
    std::string_view params = spec.substr(colon + 1);

    if (family == "path") {
        return make_path(parse_int(params, "path length"));
    }
    if (family == "cycle") {
        int n = parse_int(params, "cycle length");
        if (n < 3) throw std::invalid_argument("generate: cycle needs at least 3 vertices");
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
        edges.emplace_back(n - 1, 0);
        return build_graph(n, edges);
    }
    if (family == "clique") {
        int n = parse_int(params, "clique size");
        if (n < 1) throw std::invalid_argument("generate: clique needs at least 1 vertex");
        std::vector<std::pair<int, int>> edges;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
        return build_graph(n, edges);
    }
    if (family == "spider") {
        auto [b, len] = parse_dims(params);
        if (b < 1 || len < 1)
            throw std::invalid_argument("generate: spider needs at least 1 leg of length 1");
        std::vector<std::pair<int, int>> edges;
        for (int leg = 0; leg < b; ++leg) {
            int first = 1 + leg * len;
            edges.emplace_back(0, first);
            for (int d = 1; d < len; ++d) edges.emplace_back(first + d - 1, first + d);
        }
        return build_graph(1 + b * len, edges);
    }
    if (family == "tree") {
        std::vector<int> parents;
        std::string token;
        std::stringstream stream{std::string(params)};
        while (std::getline(stream, token, ','))
            parents.push_back(parse_int(token, "parent entry"));
        int n = static_cast<int>(parents.size());
        if (n < 1) throw std::invalid_argument("generate: empty parent array");
        std::vector<std::pair<int, int>> edges;
        int roots = 0;
        for (int v = 0; v < n; ++v) {
            if (parents[v] == -1) {
                ++roots;
            } else if (parents[v] < 0 || parents[v] >= n || parents[v] == v) {
                throw std::invalid_argument("generate: invalid parent for vertex " +
                                            std::to_string(v));
            } else {
                edges.emplace_back(v, parents[v]);
            }
        }
        if (roots != 1) throw std::invalid_argument("generate: tree needs exactly one root");
        Graph g = build_graph(n, edges);
        if (!g.connected() || g.edge_count() != n - 1)
            throw std::invalid_argument("generate: parent array does not describe a tree");
        return g;
    }
    if (family == "grid" || family == "king") {
        auto [m, n] = parse_dims(params);
        Graph a = make_path(m);
        Graph b = make_path(n);
        return family == "grid" ? cartesian_product(a, b) : strong_product(a, b);
    }
    throw std::invalid_argument("generate: unknown family '" + std::string(family) + "'");
}

namespace {

Graph product(const Graph& g, const Graph& h, bool strong, int maxVertices) {
    if (g.vertex_count() < 1 || h.vertex_count() < 1)
        throw std::invalid_argument("product: factors must be nonempty");
    long long size = static_cast<long long>(g.vertex_count()) * h.vertex_count();
    if (size > maxVertices)
        throw std::invalid_argument("product: result would have " + std::to_string(size) +
                                    " vertices, over the limit of " + std::to_string(maxVertices));
    int hn = h.vertex_count();
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < g.vertex_count(); ++u)
        for (int up = 0; up < hn; ++up)
            for (int v = u; v < g.vertex_count(); ++v)
                for (int vp = 0; vp < hn; ++vp) {
                    int a = u * hn + up;
                    int b = v * hn + vp;
                    if (a >= b) continue;
                    bool cart = (u == v && h.adjacent(up, vp)) ||
                                (up == vp && g.adjacent(u, v));
                    bool diag = strong && g.adjacent(u, v) && h.adjacent(up, vp);
                    if (cart || diag) edges.emplace_back(a, b);
                }
    return build_graph(static_cast<int>(size), edges);
}

}  // namespace

Graph strong_product(const Graph& g, const Graph& h, int maxVertices) {
    return product(g, h, true, maxVertices);
}

Graph cartesian_product(const Graph& g, const Graph& h, int maxVertices) {
    return product(g, h, false, maxVertices);
}

EccentricityProfile eccentricity_profile(const Graph& g) {
    if (!g.connected())
        throw std::invalid_argument("eccentricity_profile: graph is disconnected");
    EccentricityProfile out;
    int n = g.vertex_count();
    out.radius = Graph::kUnreachable;
    out.diameter = 0;
    std::vector<int> ecc(n, 0);
    for (int v = 0; v < n; ++v) {
        for (int u = 0; u < n; ++u) ecc[v] = std::max(ecc[v], g.distance(v, u));
        out.radius = std::min(out.radius, ecc[v]);
        out.diameter = std::max(out.diameter, ecc[v]);
    }
    for (int v = 0; v < n; ++v)
        if (ecc[v] == out.radius) out.center.push_back(v);
    return out;
}

RetractionCheck verify_retraction(const VertexMap& m) {
    const Graph& g = m.source;
    int n = g.vertex_count();
    if (static_cast<int>(m.map.size()) != n)
        return {false, "map is not total on the source vertices"};
    std::vector<char> in_target(n, 0);
    for (int v : m.target) {
        if (v < 0 || v >= n) return {false, "target vertex " + std::to_string(v) + " out of range"};
        in_target[v] = 1;
    }
    for (int v = 0; v < n; ++v) {
        int img = m.map[v];
        if (img < 0 || img >= n || !in_target[img])
            return {false, "vertex " + std::to_string(v) + " maps outside the target"};
    }
    for (int v : m.target)
        if (m.map[v] != v)
            return {false, "target vertex " + std::to_string(v) + " is not fixed"};
    for (int u = 0; u < n; ++u)
        for (int v : g.neighbors(u)) {
            if (v < u) continue;
            int a = m.map[u], b = m.map[v];
            if (a != b && !g.adjacent(a, b))
                return {false, "edge (" + std::to_string(u) + "," + std::to_string(v) +
                                   ") maps to non-adjacent (" + std::to_string(a) + "," +
                                   std::to_string(b) + ")"};
        }
    return {true, ""};
}

VertexMap identity_map(const Graph& g) {
    VertexMap m;
    m.source = g;
    m.target.resize(g.vertex_count());
    m.map.resize(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) m.target[v] = m.map[v] = v;
    return m;
}

VertexMap subgrid_retraction(int m, int n, int a, int b) {
    if (!(2 < a && a <= m && 2 < b && b <= n))
        throw std::invalid_argument("subgrid_retraction: need 2 < a <= m and 2 < b <= n");

    // Work in (x, y) coordinates, 0-based; the source grid id is x*n + y.
    // Peeling the last row of the current a' x b' subgrid maps (a'-1, y) to
    // (a'-2, y+1) for y < b'-1 and the far corner (a'-1, b'-1) to (a'-2, b'-2).
    std::vector<std::pair<int, int>> coord(static_cast<std::size_t>(m) * n);
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < n; ++y) coord[x * n + y] = {x, y};

    auto peel_rows = [&](int rows, int cols) {
        for (auto& [x, y] : coord) {
            if (x == rows - 1) {
                x = rows - 2;
                y = (y == cols - 1) ? cols - 2 : y + 1;
            }
        }
    };
    for (int rows = m; rows > a; --rows) peel_rows(rows, n);
    // Column peels are the symmetric construction with coordinates swapped.
    for (auto& [x, y] : coord) std::swap(x, y);
    for (int cols = n; cols > b; --cols) peel_rows(cols, a);
    for (auto& [x, y] : coord) std::swap(x, y);

    VertexMap out;
    out.source = generate("grid:" + std::to_string(m) + "x" + std::to_string(n));
    out.map.resize(coord.size());
    for (std::size_t v = 0; v < coord.size(); ++v)
        out.map[v] = coord[v].first * n + coord[v].second;
    for (int x = 0; x < a; ++x)
        for (int y = 0; y < b; ++y) out.target.push_back(x * n + y);
    return out;
}

VertexMap compose(const VertexMap& first, const VertexMap& second) {
    if (!(first.source == second.source))
        throw std::invalid_argument("compose: maps must share the same source graph");
    VertexMap out;
    out.source = first.source;
    out.target = second.target;
    out.map.resize(first.map.size());
    for (std::size_t v = 0; v < first.map.size(); ++v)
        out.map[v] = second.map[first.map[v]];
    return out;
}

InducedSubgraph induced_subgraph(const Graph& g, const std::vector<int>& vertices) {
    InducedSubgraph out;
    out.from_original.assign(g.vertex_count(), -1);
    out.to_original = vertices;
    std::sort(out.to_original.begin(), out.to_original.end());
    out.to_original.erase(std::unique(out.to_original.begin(), out.to_original.end()),
                          out.to_original.end());
    for (std::size_t i = 0; i < out.to_original.size(); ++i) {
        int v = out.to_original[i];
        if (v < 0 || v >= g.vertex_count())
            throw std::invalid_argument("induced_subgraph: vertex out of range");
        out.from_original[v] = static_cast<int>(i);
    }
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < out.to_original.size(); ++i)
        for (std::size_t j = i + 1; j < out.to_original.size(); ++j)
            if (g.adjacent(out.to_original[i], out.to_original[j]))
                edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
    out.graph = build_graph(static_cast<int>(out.to_original.size()), edges);
    return out;
}

Graph parse_edge_list(std::istream& in) {
    std::string line;
    int n = -1, m = -1;
    std::vector<std::pair<int, int>> edges;
    while (std::getline(in, line)) {
        auto start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        std::istringstream fields(line);
        if (n < 0) {
            if (!(fields >> n >> m)) throw std::invalid_argument("edge list: bad header line");
            continue;
        }
        int u, v;
        if (!(fields >> u >> v)) throw std::invalid_argument("edge list: bad edge line '" + line + "'");
        edges.emplace_back(u, v);
    }
    if (n < 0) throw std::invalid_argument("edge list: missing header line");
    if (static_cast<int>(edges.size()) != m)
        throw std::invalid_argument("edge list: header announced " + std::to_string(m) +
                                    " edges, found " + std::to_string(edges.size()));
    return build_graph(n, edges);
}

void write_edge_list(const Graph& g, std::ostream& out) {
    auto edges = g.edges();
    out << g.vertex_count() << ' ' << edges.size() << '\n';
    for (auto [u, v] : edges) out << u << ' ' << v << '\n';
}

}  // namespace pursuit

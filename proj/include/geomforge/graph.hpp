#pragma once

// Dense undirected simple graphs with adjacency rows stored as fixed-width
// bit arrays, plus the structural metrics used throughout: SRG parameters,
// intersection arrays, mu-graphs, local structure and cover checks.
// All metrics are exact integer computations.

#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"

namespace geomforge {

struct Graph {
    int n = 0;
    int words = 0;
    std::vector<std::uint64_t> adj; // n rows of `words` 64-bit words
    std::vector<int> labels;        // optional, e.g. point indices into a Geometry

    Graph() = default;
    explicit Graph(int nv) : n(nv), words((nv + 63) / 64), adj((size_t)nv * ((nv + 63) / 64), 0) {}

    static Graph complete(int nv) {
        Graph g(nv);
        for (int u = 0; u < nv; ++u)
            for (int v = u + 1; v < nv; ++v) g.add_edge(u, v);
        return g;
    }
    static Graph empty_graph(int nv) { return Graph(nv); }
    static Graph cycle(int nv) {
        Graph g(nv);
        for (int u = 0; u < nv; ++u) g.add_edge(u, (u + 1) % nv);
        return g;
    }
    // Complete multipartite graph with `parts` parts of size `part_size`
    // (K_{part_size x parts} in the usual notation).
    static Graph complete_multipartite(int part_size, int parts) {
        Graph g(part_size * parts);
        for (int u = 0; u < g.n; ++u)
            for (int v = u + 1; v < g.n; ++v)
                if (u / part_size != v / part_size) g.add_edge(u, v);
        return g;
    }

    const std::uint64_t* row(int v) const { return adj.data() + (size_t)v * words; }
    std::uint64_t* row(int v) { return adj.data() + (size_t)v * words; }

    bool has_edge(int u, int v) const { return (row(u)[v >> 6] >> (v & 63)) & 1; }

    void add_edge(int u, int v) {
        if (u == v) throw InvalidParameter("add_edge: loop");
        row(u)[v >> 6] |= 1ull << (v & 63);
        row(v)[u >> 6] |= 1ull << (u & 63);
    }

    int degree(int v) const {
        int d = 0;
        const std::uint64_t* r = row(v);
        for (int w = 0; w < words; ++w) d += __builtin_popcountll(r[w]);
        return d;
    }

    long long edge_count() const {
        long long s = 0;
        for (int v = 0; v < n; ++v) s += degree(v);
        return s / 2;
    }

    std::vector<int> neighbors(int v) const {
        std::vector<int> r;
        const std::uint64_t* rv = row(v);
        for (int w = 0; w < words; ++w) {
            std::uint64_t x = rv[w];
            while (x) {
                int b = __builtin_ctzll(x);
                r.push_back(w * 64 + b);
                x &= x - 1;
            }
        }
        return r;
    }

    int common_neighbor_count(int u, int v) const {
        const std::uint64_t* ru = row(u);
        const std::uint64_t* rv = row(v);
        int d = 0;
        for (int w = 0; w < words; ++w) d += __builtin_popcountll(ru[w] & rv[w]);
        return d;
    }

    bool operator==(const Graph& o) const { return n == o.n && adj == o.adj; }
};

// Bitset helpers over the same word layout as Graph rows.
struct VertexSet {
    int n = 0, words = 0;
    std::vector<std::uint64_t> bits;
    VertexSet() = default;
    explicit VertexSet(int nv) : n(nv), words((nv + 63) / 64), bits(words, 0) {}
    void insert(int v) { bits[v >> 6] |= 1ull << (v & 63); }
    void erase(int v) { bits[v >> 6] &= ~(1ull << (v & 63)); }
    bool contains(int v) const { return (bits[v >> 6] >> (v & 63)) & 1; }
    int count() const {
        int c = 0;
        for (auto w : bits) c += __builtin_popcountll(w);
        return c;
    }
    std::vector<int> to_vector() const {
        std::vector<int> r;
        for (int w = 0; w < words; ++w) {
            std::uint64_t x = bits[w];
            while (x) { r.push_back(w * 64 + __builtin_ctzll(x)); x &= x - 1; }
        }
        return r;
    }
    static VertexSet of(int nv, const std::vector<int>& vs) {
        VertexSet s(nv);
        for (int v : vs) s.insert(v);
        return s;
    }
};

// Induced subgraph; vertex order = ascending order of s.
inline Graph induced(const Graph& g, const std::vector<int>& s_in) {
    std::vector<int> s = s_in;
    std::sort(s.begin(), s.end());
    Graph h((int)s.size());
    h.labels = s;
    for (size_t i = 0; i < s.size(); ++i)
        for (size_t j = i + 1; j < s.size(); ++j)
            if (g.has_edge(s[i], s[j])) h.add_edge((int)i, (int)j);
    return h;
}

inline std::vector<int> bfs_distances(const Graph& g, int src) {
    std::vector<int> dist(g.n, -1);
    std::vector<int> q{src};
    dist[src] = 0;
    for (size_t head = 0; head < q.size(); ++head) {
        int u = q[head];
        for (int v : g.neighbors(u))
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                q.push_back(v);
            }
    }
    return dist;
}

inline bool is_connected(const Graph& g) {
    if (g.n == 0) return true;
    auto d = bfs_distances(g, 0);
    for (int v = 0; v < g.n; ++v) if (d[v] < 0) return false;
    return true;
}

inline int diameter(const Graph& g) {
    int dm = 0;
    for (int v = 0; v < g.n; ++v) {
        auto d = bfs_distances(g, v);
        for (int u = 0; u < g.n; ++u) {
            if (d[u] < 0) return -1; // disconnected
            dm = std::max(dm, d[u]);
        }
    }
    return dm;
}

struct SRGParams {
    long long v = 0, k = 0, lambda = 0, mu = 0;
    bool operator==(const SRGParams& o) const {
        return v == o.v && k == o.k && lambda == o.lambda && mu == o.mu;
    }
    // standard feasibility identity
    bool feasible() const { return k * (k - lambda - 1) == (v - k - 1) * mu; }
};

// Returns (v,k,lambda,mu) iff g is connected, regular, every edge has exactly
// lambda common neighbors and every non-edge exactly mu > 0.
inline std::optional<SRGParams> srg_params(const Graph& g) {
    if (g.n < 2 || !is_connected(g)) return std::nullopt;
    SRGParams p;
    p.v = g.n;
    p.k = g.degree(0);
    for (int v = 1; v < g.n; ++v)
        if (g.degree(v) != p.k) return std::nullopt;
    long long lambda = -1, mu = -1;
    for (int u = 0; u < g.n; ++u)
        for (int v = u + 1; v < g.n; ++v) {
            long long c = g.common_neighbor_count(u, v);
            if (g.has_edge(u, v)) {
                if (lambda < 0) lambda = c;
                else if (lambda != c) return std::nullopt;
            } else {
                if (mu < 0) mu = c;
                else if (mu != c) return std::nullopt;
            }
        }
    if (mu <= 0) return std::nullopt;
    p.lambda = lambda < 0 ? 0 : lambda;
    p.mu = mu;
    return p;
}

struct IntersectionArray {
    std::vector<long long> b, c; // b_0..b_{d-1}, c_1..c_d
    bool operator==(const IntersectionArray& o) const { return b == o.b && c == o.c; }
    std::string to_string() const {
        std::string s = "{";
        for (size_t i = 0; i < b.size(); ++i) s += (i ? "," : "") + std::to_string(b[i]);
        s += ";";
        for (size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
        return s + "}";
    }
};

// Intersection array iff g is connected and distance regular.
inline std::optional<IntersectionArray> intersection_array(const Graph& g) {
    if (g.n == 0) return std::nullopt;
    int d = diameter(g);
    if (d < 0) return std::nullopt;
    IntersectionArray ia;
    ia.b.assign(d, -1);
    ia.c.assign(d, -1);
    for (int u = 0; u < g.n; ++u) {
        auto dist = bfs_distances(g, u);
        for (int w = 0; w < g.n; ++w) {
            int i = dist[w];
            long long bi = 0, ci = 0;
            for (int x : g.neighbors(w)) {
                if (dist[x] == i + 1) ++bi;
                else if (dist[x] == i - 1) ++ci;
            }
            if (i < d) {
                if (ia.b[i] < 0) ia.b[i] = bi;
                else if (ia.b[i] != bi) return std::nullopt;
            } else if (bi != 0) {
                return std::nullopt;
            }
            if (i >= 1) {
                if (ia.c[i - 1] < 0) ia.c[i - 1] = ci;
                else if (ia.c[i - 1] != ci) return std::nullopt;
            }
        }
    }
    return ia;
}

// Common neighborhood of two vertices at distance 2.
inline std::vector<int> mu_graph(const Graph& g, int u, int w) {
    if (u == w || g.has_edge(u, w) || g.common_neighbor_count(u, w) == 0)
        throw DistanceNotTwo("mu_graph: vertices not at distance 2");
    std::vector<int> r;
    const std::uint64_t* ru = g.row(u);
    const std::uint64_t* rw = g.row(w);
    for (int k = 0; k < g.words; ++k) {
        std::uint64_t x = ru[k] & rw[k];
        while (x) { r.push_back(k * 64 + __builtin_ctzll(x)); x &= x - 1; }
    }
    return r;
}

// True iff every open neighborhood of g is isomorphic to delta.  The
// isomorphism test is delegated to `iso`; `orbit_reps`, when provided, lets
// the caller restrict the check to one vertex per automorphism orbit.
inline bool is_locally(const Graph& g, const Graph& delta,
                       const std::function<bool(const Graph&, const Graph&)>& iso,
                       const std::vector<int>* orbit_reps = nullptr) {
    std::vector<int> vs;
    if (orbit_reps) vs = *orbit_reps;
    else { vs.resize(g.n); std::iota(vs.begin(), vs.end(), 0); }
    for (int v : vs) {
        if (g.degree(v) != delta.n) return false;
        if (!iso(induced(g, g.neighbors(v)), delta)) return false;
    }
    return true;
}

struct TripleGraphResult {
    bool holds = false;
    // for each non-edge (u,v) with u<v, the list of witnesses w with
    // G(u,v) = G(u,w) = G(v,w)
    std::vector<std::pair<std::pair<int, int>, std::vector<int>>> witnesses;
};

// Checks the triple-graph condition: g has diameter 2 and for every non-edge
// (u,v) there are exactly `multiplicity` other vertices w with
// G(u,v)=G(u,w)=G(v,w).  multiplicity 1 is the triple graph of the text;
// multiplicity 2 the quadruple variant.
inline TripleGraphResult is_triple_graph(const Graph& g, int multiplicity = 1,
                                         bool collect_witnesses = false) {
    if (diameter(g) != 2) throw DiameterExceedsTwo("is_triple_graph: diameter != 2");
    TripleGraphResult res;
    res.holds = true;
    std::vector<std::uint64_t> muv(g.words);
    for (int u = 0; u < g.n; ++u) {
        const std::uint64_t* ru = g.row(u);
        for (int v = u + 1; v < g.n; ++v) {
            if (g.has_edge(u, v)) continue;
            const std::uint64_t* rv = g.row(v);
            for (int k = 0; k < g.words; ++k) muv[k] = ru[k] & rv[k];
            std::vector<int> wit;
            for (int w = 0; w < g.n; ++w) {
                if (w == u || w == v) continue;
                const std::uint64_t* rw = g.row(w);
                bool ok = true;
                for (int k = 0; k < g.words && ok; ++k) {
                    std::uint64_t m = muv[k];
                    ok = ((ru[k] & rw[k]) == m) && ((rv[k] & rw[k]) == m);
                }
                if (ok) wit.push_back(w);
            }
            if ((int)wit.size() != multiplicity) res.holds = false;
            if (collect_witnesses) res.witnesses.push_back({{u, v}, wit});
            if (!res.holds && !collect_witnesses) return res;
        }
    }
    return res;
}

// True iff the fiber map sends edges to edges and restricts, at every vertex
// v, to a bijection from N(v) onto the neighborhood of the image vertex (the
// strong cover notion; the bare edge-map notion drops the local bijection).
inline bool check_cover(const Graph& g, const Graph& h,
                        const std::vector<std::vector<int>>& fibers) {
    if ((int)fibers.size() != h.n) throw BadPartition("check_cover: |fibers| != |V(h)|");
    std::vector<int> phi(g.n, -1);
    for (int i = 0; i < (int)fibers.size(); ++i)
        for (int v : fibers[i]) {
            if (v < 0 || v >= g.n || phi[v] >= 0)
                throw BadPartition("check_cover: fibers do not partition V(g)");
            phi[v] = i;
        }
    for (int v = 0; v < g.n; ++v)
        if (phi[v] < 0) throw BadPartition("check_cover: fibers do not cover V(g)");
    // edges map to edges
    for (int u = 0; u < g.n; ++u)
        for (int v : g.neighbors(u)) {
            if (u >= v) continue;
            if (phi[u] == phi[v] || !h.has_edge(phi[u], phi[v])) return false;
        }
    // neighborhood restriction is a bijection onto the image neighborhood
    for (int v = 0; v < g.n; ++v) {
        auto nb = g.neighbors(v);
        if ((int)nb.size() != h.degree(phi[v])) return false;
        std::vector<int> img;
        for (int x : nb) img.push_back(phi[x]);
        std::sort(img.begin(), img.end());
        if (std::adjacent_find(img.begin(), img.end()) != img.end()) return false;
        // injective + edges preserved (already known) + degree match => iso
    }
    return true;
}

} // namespace geomforge

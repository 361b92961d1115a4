#pragma once

// Bounded classification of connected locally-Delta graphs by vertex
// completion.  A partial graph keeps a three-state pair matrix
// (edge / nonedge / undecided); completing the first open vertex u
// enumerates all embeddings of Delta onto its neighborhood (existing
// vertices or fresh ones), commits the induced decisions, and recurses.
// Distinct embeddings realizing the same decision set are explored once.
// Every output graph is re-verified to be locally Delta and the list is
// deduplicated by certificate, so the result is isomorph-free; the
// completeness flag reports whether any branch hit the vertex bound.

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "canon.hpp"
#include "errors.hpp"
#include "graph.hpp"

namespace geomforge {

struct LocallyDeltaResult {
    std::vector<Graph> graphs;             // connected, locally Delta, pairwise non-iso
    std::vector<std::string> certificates; // matching canonical certificates
    int bound = 0;
    bool complete = true; // false iff some branch wanted a vertex beyond the bound
    std::uint64_t nodes = 0;
};

namespace detail {

class LocallyDeltaSearch {
public:
    LocallyDeltaSearch(const Graph& delta, int max_vertices)
        : delta_(delta), d_(delta.n), bound_(max_vertices) {}

    LocallyDeltaResult run() {
        if (d_ + 1 > bound_)
            throw BoundExceeded("locally_delta_search: bound below |Delta|+1");
        State st;
        st.n = 1 + d_;
        st.pair.assign((size_t)st.n * st.n, U);
        st.completed.assign(st.n, 0);
        // vertex 0 with neighborhood Delta on vertices 1..d
        for (int i = 0; i < d_; ++i) {
            st.set(0, 1 + i, E);
            for (int j = i + 1; j < d_; ++j)
                st.set(1 + i, 1 + j, delta_.has_edge(i, j) ? E : N);
        }
        st.completed[0] = 1;
        search(st);
        LocallyDeltaResult out;
        out.bound = bound_;
        out.complete = complete_;
        out.nodes = nodes_;
        for (auto& [cert, g] : found_) {
            out.certificates.push_back(cert);
            out.graphs.push_back(g);
        }
        return out;
    }

private:
    enum PairState : char { U = 0, E = 1, N = 2 };
    struct State {
        int n = 0;
        std::vector<char> pair;
        std::vector<char> completed;
        char get(int a, int b) const { return pair[(size_t)a * n + b]; }
        void set(int a, int b, char v) {
            pair[(size_t)a * n + b] = v;
            pair[(size_t)b * n + a] = v;
        }
        std::vector<int> e_neighbors(int v) const {
            std::vector<int> r;
            for (int w = 0; w < n; ++w)
                if (w != v && get(v, w) == E) r.push_back(w);
            return r;
        }
    };

    // Is there an injective map of v's current neighborhood into Delta
    // respecting decided pairs?  (undecided pairs are wildcards; when the
    // neighborhood is full the map must be a bijection)
    bool embeddable(const State& st, int v) const {
        auto nb = st.e_neighbors(v);
        if ((int)nb.size() > d_) return false;
        std::vector<int> img(nb.size(), -1);
        std::vector<char> used(d_, 0);
        std::function<bool(size_t)> rec = [&](size_t i) {
            if (i == nb.size()) return true;
            for (int t = 0; t < d_; ++t) {
                if (used[t]) continue;
                bool ok = true;
                for (size_t j = 0; j < i && ok; ++j) {
                    char pv = st.get(nb[i], nb[j]);
                    bool de = delta_.has_edge(t, img[j]);
                    if (pv == E && !de) ok = false;
                    if (pv == N && de) ok = false;
                }
                if (!ok) continue;
                used[t] = 1;
                img[i] = t;
                if (rec(i + 1)) { used[t] = 0; return true; }
                used[t] = 0;
            }
            return false;
        };
        return rec(0);
    }

    void emit(const State& st) {
        Graph g(st.n);
        for (int a = 0; a < st.n; ++a)
            for (int b = a + 1; b < st.n; ++b)
                if (st.get(a, b) == E) g.add_edge(a, b);
        if (!is_connected(g)) return;
        for (int v = 0; v < g.n; ++v) {
            if (g.degree(v) != d_) return;
            if (!are_isomorphic(induced(g, g.neighbors(v)), delta_)) return;
        }
        auto cert = canonical_form(g);
        found_.emplace(cert.bytes, g);
    }

    void search(const State& st) {
        ++nodes_;
        int u = -1;
        for (int v = 0; v < st.n; ++v)
            if (!st.completed[v]) { u = v; break; }
        if (u < 0) {
            emit(st);
            return;
        }
        // enumerate embeddings of Delta onto N(u)
        auto enb = st.e_neighbors(u);
        std::vector<int> cand; // existing candidates: U-pairs with u
        for (int w = 0; w < st.n; ++w)
            if (w != u && st.get(u, w) == U) cand.push_back(w);
        // assignment: delta vertex i -> existing vertex (>=0) or new (-1-k)
        std::vector<int> img(d_, -2);
        std::vector<char> used(st.n, 0);
        std::set<std::vector<char>> commits_seen;
        int new_count = 0;
        std::function<void(int)> assign = [&](int i) {
            if (i == d_) {
                // all E-neighbors of u must be covered
                for (int w : enb)
                    if (!used[w]) return;
                apply_commit(st, u, img, commits_seen);
                return;
            }
            // existing candidates
            auto try_existing = [&](int w) {
                if (used[w]) return;
                char uv = st.get(u, w);
                if (uv == N) return;
                if (st.completed[w] && uv != E) return; // completed gain no edges
                for (int j = 0; j < i; ++j) {
                    int t = img[j];
                    bool de = delta_.has_edge(i, j);
                    if (t >= 0) {
                        char pv = st.get(w, t);
                        if (pv == E && !de) return;
                        if (pv == N && de) return;
                        if (pv == U && (st.completed[w] || st.completed[t]) && de) return;
                    } else {
                        // t is a new vertex: completed w cannot be adjacent
                        if (de && st.completed[w]) return;
                    }
                }
                used[w] = 1;
                img[i] = w;
                assign(i + 1);
                used[w] = 0;
                img[i] = -2;
            };
            for (int w : enb) try_existing(w);
            for (int w : cand) try_existing(w);
            // a fresh vertex
            if (st.n + new_count + 1 <= bound_) {
                img[i] = -1 - new_count;
                ++new_count;
                assign(i + 1);
                --new_count;
                img[i] = -2;
            } else {
                complete_ = false;
            }
        };
        assign(0);
    }

    void apply_commit(const State& st, int u, const std::vector<int>& img,
                      std::set<std::vector<char>>& commits_seen) {
        int extra = 0;
        for (int t : img)
            if (t < 0) extra = std::max(extra, -t);
        State ns = st;
        ns.n = st.n + extra;
        if (extra) {
            ns.pair.assign((size_t)ns.n * ns.n, U);
            for (int a = 0; a < st.n; ++a)
                for (int b = 0; b < st.n; ++b)
                    ns.pair[(size_t)a * ns.n + b] = st.pair[(size_t)a * st.n + b];
            ns.completed.resize(ns.n, 0);
            // new vertices vs completed vertices: nonedges
            for (int z = st.n; z < ns.n; ++z)
                for (int v = 0; v < st.n; ++v)
                    if (st.completed[v]) ns.set(z, v, N);
        }
        auto real_index = [&](int t) { return t >= 0 ? t : st.n + (-t - 1); };
        // u's neighborhood = image exactly
        std::vector<char> in_img(ns.n, 0);
        for (int i = 0; i < d_; ++i) in_img[real_index(img[i])] = 1;
        bool bad = false;
        for (int w = 0; w < ns.n && !bad; ++w) {
            if (w == u) continue;
            char want = in_img[w] ? E : N;
            char have = ns.get(u, w);
            if (have != U && have != want) bad = true;
            ns.set(u, w, want);
        }
        // internal pairs per Delta
        for (int i = 0; i < d_ && !bad; ++i)
            for (int j = i + 1; j < d_ && !bad; ++j) {
                int a = real_index(img[i]), b = real_index(img[j]);
                char want = delta_.has_edge(i, j) ? E : N;
                char have = ns.get(a, b);
                if (have != U && have != want) bad = true;
                ns.set(a, b, want);
            }
        if (bad) return;
        ns.completed[u] = 1;
        // canonical decision record for duplicate-subtree rejection
        std::vector<char> key = ns.pair;
        key.push_back((char)ns.n);
        if (!commits_seen.insert(key).second) return;
        // prune: every open vertex must still embed, the completed one exactly
        {
            auto nb = ns.e_neighbors(u);
            if ((int)nb.size() != d_) return;
        }
        for (int v = 0; v < ns.n; ++v)
            if (!embeddable(ns, v)) return;
        search(ns);
    }

    const Graph& delta_;
    int d_;
    int bound_;
    bool complete_ = true;
    std::uint64_t nodes_ = 0;
    std::map<std::string, Graph> found_;
};

} // namespace detail

inline LocallyDeltaResult locally_delta_search(const Graph& delta, int max_vertices) {
    detail::LocallyDeltaSearch s(delta, max_vertices);
    return s.run();
}

} // namespace geomforge

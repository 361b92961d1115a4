#pragma once

// Canonical labeling of vertex-colored graphs by individualization and
// refinement, with automorphism discovery.  This is the isomorph-rejection
// engine behind every census: certificates are equal iff a color-preserving
// isomorphism exists.
//
// Refinement: iterated color-degree refinement to an equitable partition.
// Target cell for individualization: first largest non-singleton cell.
// Node invariant: refinement trace plus the quotient-degree matrix on
// coarse partitions.  Pruning compares node invariants against the first
// search path (kept for automorphism discovery) and the current best path
// (kept for canonicity), and skips target-cell candidates lying in one orbit
// of the automorphisms found so far that fix the branch prefix.

#include <algorithm>
#include <cstring>
#include <string>
#include <vector>

#include "errors.hpp"
#include "graph.hpp"

namespace geomforge {

struct Coloring {
    std::vector<int> color; // color[v]; cells ordered by color value

    static Coloring trivial(int n) {
        Coloring c;
        c.color.assign(n, 0);
        return c;
    }
    static Coloring mark_subset(int n, const std::vector<int>& subset) {
        Coloring c;
        c.color.assign(n, 0);
        for (int v : subset) c.color[v] = 1;
        return c;
    }
};

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

struct CanonicalCertificate {
    std::string bytes;                        // versioned canonical form
    std::vector<int> canonical_labeling;      // canlab[v] = canonical position
    std::vector<std::vector<int>> generators; // automorphism generators
    std::vector<int> orbit_of;                // min vertex of each vertex's orbit

    bool operator==(const CanonicalCertificate& o) const { return bytes == o.bytes; }

    std::string digest_hex() const {
        // FNV-1a, doubled to 128 bits with two offsets; stable across platforms.
        auto fnv = [&](std::uint64_t h) {
            for (unsigned char c : bytes) {
                h ^= c;
                h *= 0x100000001b3ull;
            }
            return h;
        };
        std::uint64_t a = fnv(0xcbf29ce484222325ull);
        std::uint64_t b = fnv(0x9ae16a3b2f90404full);
        char buf[33];
        std::snprintf(buf, sizeof buf, "%016llx%016llx",
                      (unsigned long long)a, (unsigned long long)b);
        return std::string(buf);
    }
};

namespace detail {

struct CanonStats {
    std::uint64_t nodes = 0, leaves = 0, autos = 0;
};
inline CanonStats canon_last_stats; // introspection only

class Canonizer {
public:
    Canonizer(const Graph& g, const Coloring& c) : g_(g), n_(g.n), words_(g.words) {
        if ((int)c.color.size() != n_)
            throw InvalidParameter("canonical_form: coloring size mismatch");
        order_.resize(n_);
        posv_.resize(n_);
        cstart_.resize(n_);
        clen_.assign(n_, 0);
        // initial ordered partition: cells by color value
        std::vector<int> vs(n_);
        for (int i = 0; i < n_; ++i) vs[i] = i;
        std::stable_sort(vs.begin(), vs.end(), [&](int a, int b) {
            return c.color[a] < c.color[b];
        });
        int start = 0;
        for (int i = 0; i < n_; ++i) {
            order_[i] = vs[i];
            posv_[vs[i]] = i;
            if (i + 1 == n_ || c.color[vs[i + 1]] != c.color[vs[i]]) {
                for (int j = start; j <= i; ++j) cstart_[j] = start;
                clen_[start] = i - start + 1;
                root_cells_.push_back(i - start + 1);
                start = i + 1;
            }
        }
    }

    CanonicalCertificate run() {
        cnt_buf_.resize(n_);
        queued_buf_.assign(n_, 0);
        header_ = "GFC1";
        auto put32 = [&](std::uint32_t x) {
            for (int i = 3; i >= 0; --i) header_.push_back(char((x >> (8 * i)) & 0xff));
        };
        put32((std::uint32_t)n_);
        put32((std::uint32_t)root_cells_.size());
        for (int sz : root_cells_) put32((std::uint32_t)sz);
        std::vector<int> all_cells;
        for (int s = 0; s < n_; s += clen_[s]) all_cells.push_back(s);
        refine(all_cells);
        cur_inv_.clear();
        search(0, true, false);
        canon_last_stats.nodes = nodes_;
        canon_last_stats.leaves = leaves_;
        canon_last_stats.autos = (std::uint64_t)gens_.size();
        CanonicalCertificate out;
        out.bytes = best_bytes_;
        out.canonical_labeling = canlab_from(best_posv_);
        UnionFind uf(n_);
        for (auto& gamma : gens_) {
            out.generators.push_back(gamma);
            for (int v = 0; v < n_; ++v) uf.unite(v, gamma[v]);
        }
        out.orbit_of.resize(n_);
        for (int v = 0; v < n_; ++v) out.orbit_of[v] = uf.find(v);
        return out;
    }

private:
    struct State {
        std::vector<int> order, posv, cstart, clen;
    };
    State snapshot() const { return {order_, posv_, cstart_, clen_}; }
    void restore(const State& s) {
        order_ = s.order;
        posv_ = s.posv;
        cstart_ = s.cstart;
        clen_ = s.clen;
    }

    static void mix(std::uint64_t& h, std::uint64_t x) {
        h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }

    bool discrete() const {
        for (int s = 0; s < n_; s += clen_[s])
            if (clen_[s] > 1) return false;
        return true;
    }

    // Worklist equitable refinement; `alpha` holds start positions of the
    // cells to be used as splitters.  Returns an invariant hash of the
    // refinement trace and resulting cell structure.
    std::uint64_t refine(std::vector<int> alpha) {
        std::uint64_t inv = 0;
        std::vector<std::uint64_t> mask(words_);
        std::vector<int>& cnt = cnt_buf_;
        std::vector<char>& queued = queued_buf_;
        std::fill(queued.begin(), queued.end(), 0);
        for (int s : alpha) queued[s] = 1;
        size_t head = 0;
        while (head < alpha.size()) {
            int cs = alpha[head++];
            if (!queued[cs]) continue;
            queued[cs] = 0;
            // splitter cell C at [cs, cs+clen) (may have shrunk since queued)
            std::fill(mask.begin(), mask.end(), 0);
            for (int i = cs; i < cs + clen_[cs]; ++i) {
                int v = order_[i];
                mask[v >> 6] |= 1ull << (v & 63);
            }
            for (int v = 0; v < n_; ++v) {
                const std::uint64_t* r = g_.row(v);
                int d = 0;
                for (int w = 0; w < words_; ++w) d += __builtin_popcountll(r[w] & mask[w]);
                cnt[v] = d;
            }
            for (int ds = 0; ds < n_; ds += clen_[ds]) {
                int dl = clen_[ds];
                if (dl <= 1) continue;
                int c0 = cnt[order_[ds]];
                bool uniform = true;
                for (int i = ds + 1; i < ds + dl; ++i)
                    if (cnt[order_[i]] != c0) { uniform = false; break; }
                if (uniform) continue;
                std::stable_sort(order_.begin() + ds, order_.begin() + ds + dl,
                                 [&](int a, int b) { return cnt[a] < cnt[b]; });
                mix(inv, 0x51ull);
                mix(inv, (std::uint64_t)cs);
                mix(inv, (std::uint64_t)ds);
                bool d_was_queued = queued[ds];
                int gs = ds, biggest = -1, biggest_len = -1;
                std::vector<int> frags;
                for (int i = ds; i < ds + dl; ++i) {
                    posv_[order_[i]] = i;
                    if (i + 1 == ds + dl || cnt[order_[i + 1]] != cnt[order_[i]]) {
                        for (int j = gs; j <= i; ++j) cstart_[j] = gs;
                        clen_[gs] = i - gs + 1;
                        frags.push_back(gs);
                        if (i - gs + 1 > biggest_len) { biggest_len = i - gs + 1; biggest = gs; }
                        mix(inv, (std::uint64_t)cnt[order_[i]]);
                        mix(inv, (std::uint64_t)(i - gs + 1));
                        gs = i + 1;
                    }
                }
                // queue fragments: all of them if D was pending, else all but
                // the largest
                for (int fs : frags) {
                    if (!d_was_queued && fs == biggest) { queued[fs] = 0; continue; }
                    if (!queued[fs]) { queued[fs] = 1; alpha.push_back(fs); }
                }
                if (d_was_queued) queued[ds] = 1; // first fragment inherits slot
            }
        }
        // cell structure + quotient-degree matrix on coarse partitions
        int ncells = 0;
        for (int s = 0; s < n_; s += clen_[s]) ++ncells;
        mix(inv, 0x77ull);
        mix(inv, (std::uint64_t)ncells);
        for (int s = 0; s < n_; s += clen_[s]) mix(inv, (std::uint64_t)clen_[s]);
        if (ncells <= 64) {
            for (int s = 0; s < n_; s += clen_[s]) {
                std::fill(mask.begin(), mask.end(), 0);
                for (int i = s; i < s + clen_[s]; ++i) {
                    int v = order_[i];
                    mask[v >> 6] |= 1ull << (v & 63);
                }
                for (int t = 0; t < n_; t += clen_[t]) {
                    const std::uint64_t* r = g_.row(order_[t]);
                    int d = 0;
                    for (int w = 0; w < words_; ++w)
                        d += __builtin_popcountll(r[w] & mask[w]);
                    mix(inv, (std::uint64_t)d);
                }
            }
        }
        return inv;
    }

    void individualize(int cell_start, int v) {
        int p = posv_[v];
        int s = cell_start;
        std::swap(order_[p], order_[s]);
        posv_[order_[p]] = p;
        posv_[order_[s]] = s;
        int old_len = clen_[s];
        clen_[s] = 1;
        cstart_[s] = s;
        clen_[s + 1] = old_len - 1;
        for (int j = s + 1; j < s + old_len; ++j) cstart_[j] = s + 1;
    }

    int target_cell() const {
        int best = -1, best_len = 0;
        for (int s = 0; s < n_; s += clen_[s])
            if (clen_[s] > 1 && clen_[s] > best_len) {
                if (best < 0) { best = s; best_len = clen_[s]; }
                else if (clen_[s] > best_len) { best = s; best_len = clen_[s]; }
            }
        return best;
    }

    std::vector<int> canlab_from(const std::vector<int>& posv) const {
        return posv; // canlab[v] = canonical position of v
    }

    const std::string& leaf_bytes() {
        leafbuf_.clear();
        leafbuf_.reserve(header_.size() + (size_t)n_ * n_ / 8 + 8);
        leafbuf_ += header_;
        int cur = 0, bits = 0;
        for (int i = 0; i < n_; ++i) {
            const std::uint64_t* r = g_.row(order_[i]);
            for (int j = i + 1; j < n_; ++j) {
                int v = order_[j];
                cur = (cur << 1) | (int)((r[v >> 6] >> (v & 63)) & 1);
                if (++bits == 8) {
                    leafbuf_.push_back(char(cur));
                    bits = 0;
                    cur = 0;
                }
            }
        }
        if (bits) leafbuf_.push_back(char(cur << (8 - bits)));
        return leafbuf_;
    }

    bool is_automorphism(const std::vector<int>& gamma) const {
        for (int u = 0; u < n_; ++u) {
            const std::uint64_t* r = g_.row(u);
            for (int w = 0; w < words_; ++w) {
                std::uint64_t x = r[w];
                while (x) {
                    int v = w * 64 + __builtin_ctzll(x);
                    x &= x - 1;
                    if (!g_.has_edge(gamma[u], gamma[v])) return false;
                }
            }
            if (g_.degree(u) != g_.degree(gamma[u])) return false;
        }
        return true;
    }

    void record_automorphism(const std::vector<int>& leaf_posv,
                             const std::vector<int>& ref_posv) {
        // gamma maps the reference leaf labeling onto the current one:
        // gamma(u) = order_cur(pos_ref(u))
        std::vector<int> inv_cur(n_);
        for (int v = 0; v < n_; ++v) inv_cur[leaf_posv[v]] = v;
        std::vector<int> gamma(n_);
        bool ident = true;
        for (int u = 0; u < n_; ++u) {
            gamma[u] = inv_cur[ref_posv[u]];
            if (gamma[u] != u) ident = false;
        }
        if (ident || !is_automorphism(gamma)) return;
        gens_.push_back(gamma);
    }

    static int common_prefix(const std::vector<int>& a, const std::vector<int>& b) {
        int k = 0;
        while (k < (int)a.size() && k < (int)b.size() && a[k] == b[k]) ++k;
        return k;
    }

    // Returns the backjump target: the level of the shallowest node that
    // should keep iterating candidates.  A return value >= `level` means
    // normal completion.
    int search(int level, bool eq_first, bool gt_best) {
        if (++nodes_ > node_cap_)
            throw CapExceeded("canonical_form: node cap exceeded");
        if (discrete()) {
            ++leaves_;
            const std::string& bytes = leaf_bytes();
            if (first_posv_.empty()) {
                first_posv_ = posv_;
                first_bytes_ = bytes;
                first_inv_ = cur_inv_;
                first_fixed_ = fixed_;
                best_posv_ = posv_;
                best_bytes_ = bytes;
                best_inv_ = cur_inv_;
                best_fixed_ = fixed_;
                return level;
            }
            bool autom = false;
            if (bytes == first_bytes_) {
                record_automorphism(posv_, first_posv_);
                autom = true;
            } else if (bytes == best_bytes_) {
                record_automorphism(posv_, best_posv_);
                autom = true;
            }
            if (gt_best || bytes > best_bytes_) {
                best_posv_ = posv_;
                best_bytes_ = bytes;
                best_inv_ = cur_inv_;
                best_fixed_ = fixed_;
                return level;
            }
            if (autom) {
                // backjump to the deepest node shared with the first or the
                // best path; siblings below contribute no new information
                return std::max(common_prefix(fixed_, first_fixed_),
                                common_prefix(fixed_, best_fixed_));
            }
            return level;
        }
        int t = target_cell();
        // candidates iterated in partition order: keeps sibling subtrees
        // structurally aligned with the first path so that automorphism
        // discovery and backjumping fire early
        std::vector<int> cands(order_.begin() + t, order_.begin() + t + clen_[t]);
        State saved = snapshot();
        std::vector<int> processed;
        UnionFind uf(n_);
        size_t gens_synced = 0;
        auto sync_orbits = [&]() {
            for (; gens_synced < gens_.size(); ++gens_synced) {
                const auto& gamma = gens_[gens_synced];
                bool fixes = true;
                for (int f : fixed_)
                    if (gamma[f] != f) { fixes = false; break; }
                if (!fixes) continue;
                for (int u = 0; u < n_; ++u) uf.unite(u, gamma[u]);
            }
        };
        for (int v : cands) {
            // orbit pruning: skip v if it lies in the orbit of an already
            // processed candidate under automorphisms fixing the prefix
            if (!processed.empty()) {
                sync_orbits();
                bool skip = false;
                for (int p : processed)
                    if (uf.find(p) == uf.find(v)) { skip = true; break; }
                if (skip) continue;
            }
            processed.push_back(v);
            individualize(t, v);
            std::uint64_t h = refine({t});
            bool child_eq_first = eq_first && (int)first_inv_.size() > level &&
                                  first_inv_[level] == h;
            bool child_gt_best = gt_best;
            bool prune = false;
            if (!gt_best) {
                if ((int)best_inv_.size() > level) {
                    if (h > best_inv_[level]) child_gt_best = true;
                    else if (h < best_inv_[level]) prune = !child_eq_first;
                } else {
                    child_gt_best = true; // deeper than best path: treat as greater
                }
            }
            int bj = level + 1;
            if (!prune) {
                cur_inv_.push_back(h);
                fixed_.push_back(v);
                bj = search(level + 1, child_eq_first, child_gt_best);
                fixed_.pop_back();
                cur_inv_.pop_back();
            }
            restore(saved);
            if (bj < level) return bj;
        }
        return level;
    }

    const Graph& g_;
    int n_, words_;
    std::vector<int> order_, posv_, cstart_, clen_;
    std::vector<int> root_cells_;
    std::vector<int> cnt_buf_;
    std::vector<char> queued_buf_;
    std::string header_, leafbuf_;

    std::vector<std::vector<int>> gens_;
    std::vector<int> fixed_, first_fixed_, best_fixed_;
    std::vector<std::uint64_t> cur_inv_, first_inv_, best_inv_;
    std::vector<int> first_posv_, best_posv_;
    std::string first_bytes_, best_bytes_;
    std::uint64_t nodes_ = 0, leaves_ = 0;
    std::uint64_t node_cap_ = 400000000ull;
};

} // namespace detail

inline CanonicalCertificate canonical_form(const Graph& g, const Coloring& c) {
    detail::Canonizer cz(g, c);
    return cz.run();
}

inline CanonicalCertificate canonical_form(const Graph& g) {
    return canonical_form(g, Coloring::trivial(g.n));
}

inline bool are_isomorphic(const Graph& g, const Graph& h) {
    if (g.n != h.n) return false;
    if (g.edge_count() != h.edge_count()) return false;
    return canonical_form(g).bytes == canonical_form(h).bytes;
}

// Explicit isomorphism g -> h when one exists (trivially colored).
inline std::optional<std::vector<int>> find_isomorphism(const Graph& g, const Graph& h) {
    if (g.n != h.n) return std::nullopt;
    auto cg = canonical_form(g);
    auto ch = canonical_form(h);
    if (cg.bytes != ch.bytes) return std::nullopt;
    std::vector<int> inv_h(h.n);
    for (int v = 0; v < h.n; ++v) inv_h[ch.canonical_labeling[v]] = v;
    std::vector<int> map(g.n);
    for (int v = 0; v < g.n; ++v) map[v] = inv_h[cg.canonical_labeling[v]];
    for (int u = 0; u < g.n; ++u)
        for (int v : g.neighbors(u))
            if (!h.has_edge(map[u], map[v]))
                throw Error("find_isomorphism: internal certificate mismatch");
    return map;
}

} // namespace geomforge

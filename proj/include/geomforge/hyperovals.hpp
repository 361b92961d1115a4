#pragma once

// The hyperoval census engine: depth-first point-at-a-time extension with
// per-line occupancy counters and obligation-driven pruning.  A line with
// two chosen points excludes its remaining points; a line with one chosen
// point is half-open and must be closable, and branching always services the
// lowest half-open line first.  Free extension steps (starting a new
// line-connected component) are only taken at component minima and in
// ascending order, so every hyperoval is generated along exactly one path.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "canon.hpp"
#include "errors.hpp"
#include "fields.hpp"
#include "geometry.hpp"
#include "graph.hpp"

namespace geomforge {

struct Hyperoval {
    std::vector<int> pts; // sorted point indices into the host geometry
    bool operator<(const Hyperoval& o) const { return pts < o.pts; }
    bool operator==(const Hyperoval& o) const { return pts == o.pts; }
};

inline bool is_hyperoval(const Geometry& geo, const std::vector<int>& set) {
    std::vector<char> in(geo.num_points(), 0);
    for (int p : set) in[p] = 1;
    for (const auto& l : geo.lines) {
        int c = 0;
        for (int p : l) c += in[p];
        if (c != 0 && c != 2) return false;
    }
    return !set.empty();
}

struct SearchLimits {
    std::uint64_t node_cap = 0;   // 0 = unlimited
    double time_cap_secs = 0;     // 0 = unlimited
    int workers = 1;
    int max_size = 0;             // 0 = unlimited
};

namespace detail {

class OvalSearch {
public:
    OvalSearch(const Geometry& geo, const SearchLimits& lim)
        : geo_(geo), lim_(lim), P_(geo.num_points()), L_((int)geo.lines.size()) {
        status_.assign(P_, FREE);
        occ_.assign(L_, 0);
        avail_.assign(L_, 0);
        for (int l = 0; l < L_; ++l) avail_[l] = (int)geo_.lines[l].size();
        t0_ = std::chrono::steady_clock::now();
    }

    // Enumerates hyperovals S with include ⊆ S and S ∩ forbidden = ∅.
    // New components may only start at points > free_floor.
    void run(const std::vector<int>& include, const std::vector<int>& forbidden,
             int free_floor, const std::function<void(const std::vector<int>&)>& emit) {
        emit_ = &emit;
        trail_.clear();
        failed_ = false;
        size_t mark = trail_.size();
        for (int p : forbidden)
            if (status_[p] == FREE) forbid(p);
        for (int p : include)
            if (!failed_) choose(p);
        if (!failed_) extend(free_floor, (int)include.size() ? 1 : 0);
        undo_to(mark);
    }

    std::uint64_t nodes() const { return nodes_; }

private:
    enum Status : char { FREE = 0, CHOSEN = 1, FORBIDDEN = 2 };
    enum class Op : char { STATUS, OCC, AVAIL, OBLIG_ADD, OBLIG_DEL };
    struct TrailEntry {
        Op op;
        int idx;
    };

    void bump_nodes() {
        ++nodes_;
        if (lim_.node_cap && nodes_ > lim_.node_cap)
            throw Infeasible("hyperoval search: node cap exceeded (" +
                             std::to_string(nodes_) + " nodes)");
        if (lim_.time_cap_secs > 0 && (nodes_ & 0xfff) == 0) {
            double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
            if (el > lim_.time_cap_secs)
                throw Infeasible("hyperoval search: time cap exceeded");
        }
    }

    void set_status(int p, Status s) {
        trail_.push_back({Op::STATUS, p * 4 + (int)status_[p]});
        status_[p] = s;
    }
    void dec_avail(int l) {
        trail_.push_back({Op::AVAIL, l});
        if (--avail_[l] == 0 && occ_[l] == 1) failed_ = true;
    }
    void inc_occ(int l) {
        trail_.push_back({Op::OCC, l});
        ++occ_[l];
        if (occ_[l] == 1) {
            obligated_.insert(l);
            trail_.push_back({Op::OBLIG_ADD, l});
            if (avail_[l] == 0) failed_ = true;
        } else if (occ_[l] == 2) {
            obligated_.erase(l);
            trail_.push_back({Op::OBLIG_DEL, l});
        }
    }

    void forbid(int p) {
        set_status(p, FORBIDDEN);
        for (int l : geo_.lines_through[p]) dec_avail(l);
    }

    void choose(int p) {
        bump_nodes();
        if (status_[p] != FREE) { failed_ = true; return; }
        set_status(p, CHOSEN);
        chosen_.push_back(p);
        for (int l : geo_.lines_through[p]) {
            inc_occ(l);
            dec_avail(l);
            if (failed_) return;
        }
        // saturate lines that just reached occupancy 2
        for (int l : geo_.lines_through[p]) {
            if (occ_[l] != 2) continue;
            for (int q : geo_.lines[l]) {
                if (status_[q] == FREE) {
                    forbid(q);
                    if (failed_) return;
                }
            }
        }
    }

    void undo_to(size_t mark) {
        while (trail_.size() > mark) {
            auto [op, idx] = trail_.back();
            trail_.pop_back();
            switch (op) {
            case Op::STATUS: {
                int p = idx / 4;
                Status old = (Status)(idx % 4);
                if (status_[p] == CHOSEN) chosen_.pop_back();
                status_[p] = old;
                break;
            }
            case Op::OCC: --occ_[idx]; break;
            case Op::AVAIL: ++avail_[idx]; break;
            case Op::OBLIG_ADD: obligated_.erase(idx); break;
            case Op::OBLIG_DEL: obligated_.insert(idx); break;
            }
        }
        failed_ = false;
    }

    void extend(int free_floor, int depth) {
        if (lim_.max_size && (int)chosen_.size() > lim_.max_size) return;
        if (!obligated_.empty()) {
            int l = *obligated_.begin(); // lowest half-open line
            // candidates: free points of l, ascending
            for (int q : geo_.lines[l]) {
                if (status_[q] != FREE) continue;
                // component-minimum rule: forced points below the entry point
                // of the current component belong to a smaller generation path
                if (q < comp_entry_) continue;
                size_t mark = trail_.size();
                choose(q);
                if (!failed_) extend(free_floor, depth + 1);
                undo_to(mark);
            }
            return;
        }
        // no half-open lines: the chosen set is a hyperoval
        if (!chosen_.empty()) {
            std::vector<int> out = chosen_;
            std::sort(out.begin(), out.end());
            if (!lim_.max_size || (int)out.size() <= lim_.max_size) (*emit_)(out);
        }
        // free extension: start a new component at p > max(free_floor, last entry)
        int floor = std::max(free_floor, comp_entry_);
        for (int p = floor + 1; p < P_; ++p) {
            if (status_[p] != FREE) continue;
            size_t mark = trail_.size();
            int saved_entry = comp_entry_;
            comp_entry_ = p;
            choose(p);
            if (!failed_) extend(free_floor, depth + 1);
            comp_entry_ = saved_entry;
            undo_to(mark);
        }
    }

    const Geometry& geo_;
    SearchLimits lim_;
    int P_, L_;
    std::vector<Status> status_;
    std::vector<int> occ_, avail_;
    std::set<int> obligated_;
    std::vector<int> chosen_;
    std::vector<TrailEntry> trail_;
    bool failed_ = false;
    int comp_entry_ = -1;
    std::uint64_t nodes_ = 0;
    const std::function<void(const std::vector<int>&)>* emit_ = nullptr;
    std::chrono::steady_clock::time_point t0_;
};

} // namespace detail

// Enumerates hyperovals containing `include` exactly matching include on the
// forbidden region; every emitted set is a hyperoval of `geo`.
inline std::vector<Hyperoval> search_hyperovals(const Geometry& geo,
                                                const std::vector<int>& include,
                                                const std::vector<int>& forbidden,
                                                const SearchLimits& lim,
                                                std::uint64_t* nodes_out = nullptr) {
    detail::OvalSearch s(geo, lim);
    std::vector<Hyperoval> out;
    s.run(include, forbidden, -1, [&](const std::vector<int>& pts) {
        out.push_back({pts});
    });
    if (nodes_out) *nodes_out = s.nodes();
    std::sort(out.begin(), out.end());
    return out;
}

// The complete census.  Seeds are the (t+1)-claws at each point x (one
// chosen neighbor per line through x, all beyond x), with all smaller points
// forbidden, so each hyperoval is generated from the claw at its minimal
// point only.
inline std::vector<Hyperoval> enumerate_hyperovals(const Geometry& geo,
                                                   const SearchLimits& lim = {}) {
    int P = geo.num_points();
    // feasibility gate: claw branching factor
    double log_claws = 0;
    for (int li : geo.lines_through.empty() ? std::vector<int>{} : geo.lines_through[0])
        log_claws += std::log((double)geo.lines[li].size() - 1);
    if (!geo.lines_through.empty() && log_claws > 20 * std::log(2.0))
        throw Infeasible("enumerate_hyperovals: claw seeding infeasible for this geometry; "
                         "use the hierarchical rank-3 search");
    std::vector<Hyperoval> all;
    detail::OvalSearch s(geo, lim);
    for (int x = 0; x < P; ++x) {
        const auto& lt = geo.lines_through[x];
        // partners per line through x, all > x
        std::vector<std::vector<int>> choices(lt.size());
        bool dead = false;
        for (size_t i = 0; i < lt.size(); ++i) {
            for (int q : geo.lines[lt[i]])
                if (q > x) choices[i].push_back(q);
            if (choices[i].empty()) { dead = true; break; }
        }
        if (dead) continue;
        std::vector<int> forbidden;
        for (int p = 0; p < x; ++p) forbidden.push_back(p);
        std::vector<int> claw(lt.size() + 1);
        claw[0] = x;
        std::function<void(size_t)> rec = [&](size_t i) {
            if (i == lt.size()) {
                s.run(claw, forbidden, x,
                      [&](const std::vector<int>& pts) { all.push_back({pts}); });
                return;
            }
            for (int q : choices[i]) {
                claw[i + 1] = q;
                rec(i + 1);
            }
        };
        rec(0);
    }
    std::sort(all.begin(), all.end());
    // the min-claw seeding generates each hyperoval once; dedupe defensively
    all.erase(std::unique(all.begin(), all.end()), all.end());
    for (const auto& h : all)
        if (!is_hyperoval(geo, h.pts))
            throw Error("enumerate_hyperovals: post-hoc 0-or-2 verification failed");
    return all;
}

// ---------------------------------------------------------------------------
// Type classification

struct TypeReport {
    Hyperoval representative;
    int size = 0;
    long long count = 0;                       // census members of this type
    std::string certificate_digest;            // of (point graph, marked set)
    std::map<int, long long> outside_profile;  // |Γ(x) ∩ Φ| over x outside Φ
    std::map<int, long long> intersection_profile; // |Φ ∩ Φ'| over other census members
};

inline std::map<int, long long> outside_profile(const Graph& g, const std::vector<int>& set) {
    std::vector<char> in(g.n, 0);
    for (int p : set) in[p] = 1;
    VertexSet vs = VertexSet::of(g.n, set);
    std::map<int, long long> prof;
    for (int x = 0; x < g.n; ++x) {
        if (in[x]) continue;
        const std::uint64_t* r = g.row(x);
        int c = 0;
        for (int w = 0; w < g.words; ++w) c += __builtin_popcountll(r[w] & vs.bits[w]);
        prof[c] += 1;
    }
    return prof;
}

// One TypeReport per colored-certificate class of the census.
inline std::vector<TypeReport> classify_types(const Geometry& geo,
                                              const std::vector<Hyperoval>& census) {
    Graph g = collinearity_graph(geo);
    std::map<std::string, TypeReport> by_cert;
    for (const auto& h : census) {
        auto cert = canonical_form(g, Coloring::mark_subset(g.n, h.pts));
        auto it = by_cert.find(cert.bytes);
        if (it == by_cert.end()) {
            TypeReport t;
            t.representative = h;
            t.size = (int)h.pts.size();
            t.count = 1;
            t.certificate_digest = cert.digest_hex();
            by_cert.emplace(cert.bytes, std::move(t));
        } else {
            it->second.count += 1;
            if (h.pts < it->second.representative.pts) it->second.representative = h;
        }
    }
    std::vector<TypeReport> out;
    for (auto& [k, v] : by_cert) out.push_back(std::move(v));
    std::sort(out.begin(), out.end(), [](const TypeReport& a, const TypeReport& b) {
        if (a.size != b.size) return a.size < b.size;
        return a.certificate_digest < b.certificate_digest;
    });
    for (auto& t : out) {
        t.outside_profile = outside_profile(g, t.representative.pts);
        for (const auto& h : census) {
            if (h.pts == t.representative.pts) continue;
            std::vector<int> inter;
            std::set_intersection(t.representative.pts.begin(), t.representative.pts.end(),
                                  h.pts.begin(), h.pts.end(), std::back_inserter(inter));
            t.intersection_profile[(int)inter.size()] += 1;
        }
    }
    return out;
}

// Census members intersecting `base` in a set whose induced subgraph matches
// `pattern` (e.g. 3 disjoint edges), together with their sizes.
inline std::vector<const Hyperoval*> intersecting_in_pattern(const Graph& g,
                                                             const std::vector<Hyperoval>& census,
                                                             const Hyperoval& base,
                                                             const Graph& pattern) {
    auto pat_cert = canonical_form(pattern).bytes;
    std::vector<const Hyperoval*> out;
    for (const auto& h : census) {
        if (h.pts == base.pts) continue;
        std::vector<int> inter;
        std::set_intersection(base.pts.begin(), base.pts.end(), h.pts.begin(), h.pts.end(),
                              std::back_inserter(inter));
        if ((int)inter.size() != pattern.n) continue;
        if (canonical_form(induced(g, inter)).bytes == pat_cert) out.push_back(&h);
    }
    return out;
}

} // namespace geomforge

#pragma once

// Explicit geometric automorphisms of the classical spaces (transvections
// and reflections), verified directly as line-preserving permutations.
// They provide cheap, certified transitivity statements (points, edges) that
// the searches use for symmetry breaking: using a possibly smaller verified
// subgroup only weakens the breaking, never completeness.

#include <functional>
#include <map>
#include <vector>

#include "errors.hpp"
#include "fields.hpp"
#include "geometry.hpp"
#include "graph.hpp"
#include "permgroup.hpp"

namespace geomforge {

// Builds the permutation a linear map induces on a sorted point list;
// returns empty if the map does not preserve the point set.
inline Perm linear_map_permutation(const FieldTable& F, const std::vector<Vec>& points,
                                   const std::function<Vec(const Vec&)>& apply) {
    Perm perm(points.size());
    for (size_t i = 0; i < points.size(); ++i) {
        Vec img = apply(points[i]);
        if (F.is_zero_vec(img)) return {};
        img = normalize_point(F, img);
        auto it = std::lower_bound(points.begin(), points.end(), img);
        if (it == points.end() || *it != img) return {};
        perm[i] = (int)(it - points.begin());
    }
    std::vector<char> hit(points.size(), 0);
    for (int x : perm) {
        if (hit[x]) return {};
        hit[x] = 1;
    }
    return perm;
}

inline bool preserves_lines(const Geometry& geo, const Perm& p) {
    if ((int)p.size() != geo.num_points()) return false;
    std::vector<int> img;
    for (const auto& l : geo.lines) {
        img.clear();
        for (int q : l) img.push_back(p[q]);
        std::sort(img.begin(), img.end());
        if (!std::binary_search(geo.lines.begin(), geo.lines.end(), img)) return false;
    }
    return true;
}

namespace detail {

// Tracks vertex orbits and (optionally) edge orbits under an accumulating
// generator list; a candidate is kept only while it merges something.
class TransitivityGoal {
public:
    TransitivityGoal(int n, const Graph* g_for_edges)
        : n_(n), vuf_(n), g_(g_for_edges), euf_(0) {
        if (g_) {
            eidx_.assign((size_t)n * n, -1);
            for (int u = 0; u < g_->n; ++u)
                for (int v : g_->neighbors(u))
                    if (u < v) {
                        eidx_[(size_t)u * n_ + v] = (int)edges_.size();
                        edges_.push_back({u, v});
                    }
            euf_ = UnionFind((int)edges_.size());
        }
    }

    bool done() {
        for (int v = 1; v < n_; ++v)
            if (vuf_.find(v) != vuf_.find(0)) return false;
        if (g_)
            for (int e = 1; e < (int)edges_.size(); ++e)
                if (euf_.find(e) != euf_.find(0)) return false;
        return true;
    }

    // would the candidate merge anything?  (no mutation)
    bool useful(const Perm& p) {
        for (int v = 0; v < n_; ++v)
            if (vuf_.find(v) != vuf_.find(p[v])) return true;
        if (g_)
            for (int e = 0; e < (int)edges_.size(); ++e) {
                auto [u, v] = edges_[e];
                int a = p[u], b = p[v];
                if (a > b) std::swap(a, b);
                if (euf_.find(e) != euf_.find(eidx_[(size_t)a * n_ + b])) return true;
            }
        return false;
    }

    void absorb(const Perm& p) {
        for (int v = 0; v < n_; ++v) vuf_.unite(v, p[v]);
        if (g_)
            for (int e = 0; e < (int)edges_.size(); ++e) {
                auto [u, v] = edges_[e];
                int a = p[u], b = p[v];
                if (a > b) std::swap(a, b);
                euf_.unite(e, eidx_[(size_t)a * n_ + b]);
            }
    }

private:
    int n_;
    UnionFind vuf_;
    const Graph* g_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<int> eidx_;
    UnionFind euf_;
};

} // namespace detail

// Greedily accumulates verified line-preserving automorphisms from a stream
// of linear-map candidates until the generated group is provably point-
// (and, when `edge_graph` is given, edge-) transitive.
inline std::vector<Perm> accumulate_geometry_gens(
    const Geometry& geo, const Graph* edge_graph,
    const std::function<bool(size_t, std::function<Vec(const Vec&)>&)>& candidate) {
    const FieldTable& F = FieldTable::get(geo.field_q);
    detail::TransitivityGoal goal(geo.num_points(), edge_graph);
    std::vector<Perm> gens;
    size_t i = 0;
    std::function<Vec(const Vec&)> apply;
    while (!goal.done()) {
        if (!candidate(i++, apply))
            throw Infeasible("accumulate_geometry_gens: candidates exhausted before "
                             "transitivity was reached");
        Perm p = linear_map_permutation(F, geo.points, apply);
        if (p.empty() || perm_is_identity(p)) continue;
        if (!goal.useful(p)) continue;       // cheap test before the line check
        if (!preserves_lines(geo, p)) continue;
        goal.absorb(p);
        gens.push_back(p);
    }
    return gens;
}

// Symplectic transvections v -> v + c f(v,w) w (any point w, any c != 0).
inline std::vector<Perm> symplectic_transvection_gens(const Geometry& geo, const Form& f,
                                                      const Graph* edge_graph = nullptr) {
    const FieldTable& F = *f.F;
    auto pts = projective_points(F, f.n);
    int q = F.order();
    auto candidate = [&, pts](size_t i, std::function<Vec(const Vec&)>& apply) {
        size_t wi = i / (q - 1);
        int c = 1 + (int)(i % (q - 1));
        if (wi >= pts.size()) return false;
        Vec w = pts[wi];
        apply = [&F, &f, w, c](const Vec& v) {
            FElem s = F.mul(FElem(c), f.eval(v, w));
            return F.add_vec(v, F.scale_vec(s, w));
        };
        return true;
    };
    return accumulate_geometry_gens(geo, edge_graph, candidate);
}

// Unitary transvections v -> v + f(v,w) w for isotropic w.
inline std::vector<Perm> unitary_transvection_gens(const Geometry& geo, const Form& f,
                                                   const Graph* edge_graph = nullptr) {
    const FieldTable& F = *f.F;
    auto candidate = [&](size_t i, std::function<Vec(const Vec&)>& apply) {
        if (i >= geo.points.size()) return false;
        Vec w = geo.points[i];
        apply = [&F, &f, w](const Vec& v) {
            FElem s = f.eval(v, w);
            return F.add_vec(v, F.scale_vec(s, w));
        };
        return true;
    };
    return accumulate_geometry_gens(geo, edge_graph, candidate);
}

// Orthogonal reflections in characteristic 2: v -> v + (B(v,w)/Q(w)) w for
// nonsingular w, with B the polarization of Q.
inline std::vector<Perm> char2_reflection_gens(const Geometry& geo, const QuadraticForm& Q,
                                               const Graph* edge_graph = nullptr) {
    const FieldTable& F = *Q.F;
    auto pts = projective_points(F, Q.n);
    Form B = Q.polarization();
    auto candidate = [&, pts](size_t i, std::function<Vec(const Vec&)>& apply) {
        if (i >= pts.size()) return false;
        Vec w = pts[i];
        FElem qw = Q.eval(w);
        if (qw == 0) {
            apply = [](const Vec& v) { return v; }; // skipped as identity
            return true;
        }
        FElem iq = F.inv(qw);
        apply = [&F, B, w, iq](const Vec& v) {
            FElem c = F.mul(B.eval(v, w), iq);
            return F.add_vec(v, F.scale_vec(c, w));
        };
        return true;
    };
    return accumulate_geometry_gens(geo, edge_graph, candidate);
}

// Reflections of a GF(3) orthogonal space acting on a graph's point list:
// v -> v + (v,w)(w,w)^{-1} w for nonisotropic w (equals the classical
// v - 2(v,w)/(w,w) w since -2 = 1 mod 3).
inline std::vector<Perm> gf3_reflection_gens(const Graph& g, const std::vector<Vec>& pts,
                                             const Form& f) {
    const FieldTable& F = *f.F;
    std::vector<Perm> gens;
    UnionFind uf(g.n);
    auto transitive = [&]() {
        for (int v = 1; v < g.n; ++v)
            if (uf.find(v) != uf.find(0)) return false;
        return true;
    };
    for (const auto& w : projective_points(F, f.n)) {
        if (transitive()) break;
        FElem ww = f.eval(w, w);
        if (ww == 0) continue;
        FElem iw = F.inv(ww);
        auto apply = [&](const Vec& v) {
            FElem c = F.mul(f.eval(v, w), iw);
            return F.add_vec(v, F.scale_vec(c, w));
        };
        Perm p = linear_map_permutation(F, pts, apply);
        if (p.empty() || perm_is_identity(p)) continue;
        if (!perm_acts_as_automorphism(p, g)) continue;
        bool useful = false;
        for (int v = 0; v < g.n; ++v)
            if (uf.find(v) != uf.find(p[v])) {
                uf.unite(v, p[v]);
                useful = true;
            }
        if (useful) gens.push_back(p);
    }
    if (!transitive())
        throw Infeasible("gf3_reflection_gens: reflections not transitive");
    return gens;
}

// Unitary maps acting on the nonisotropic-point graphs U_n: transvections
// for isotropic w extended by coordinate permutations.
inline std::vector<Perm> unitary_graph_gens(const Graph& g, const std::vector<Vec>& pts,
                                            const Form& f) {
    const FieldTable& F = *f.F;
    std::vector<Perm> gens;
    UnionFind uf(g.n);
    auto transitive = [&]() {
        for (int v = 1; v < g.n; ++v)
            if (uf.find(v) != uf.find(0)) return false;
        return true;
    };
    auto try_add = [&](const std::function<Vec(const Vec&)>& apply) {
        Perm p = linear_map_permutation(F, pts, apply);
        if (p.empty() || perm_is_identity(p)) return;
        if (!perm_acts_as_automorphism(p, g)) return;
        bool useful = false;
        for (int v = 0; v < g.n; ++v)
            if (uf.find(v) != uf.find(p[v])) {
                uf.unite(v, p[v]);
                useful = true;
            }
        if (useful) gens.push_back(p);
    };
    for (const auto& w : projective_points(F, f.n)) {
        if (transitive()) break;
        if (f.eval(w, w) != 0) continue;
        try_add([&](const Vec& v) {
            FElem s = f.eval(v, w);
            return F.add_vec(v, F.scale_vec(s, w));
        });
    }
    if (!transitive())
        throw Infeasible("unitary_graph_gens: transvections not transitive");
    return gens;
}

// Orbit of a seed under generator permutations, with witness permutations
// mapping the seed to each orbit member.
struct OrbitWithWitness {
    std::vector<int> orbit;         // sorted
    std::vector<int> witness_index; // per vertex, -1 if not in orbit
    std::vector<Perm> perms;        // storage; witness_for(v) maps seed -> v
    const Perm* witness_for(int v) const {
        return witness_index[v] < 0 ? nullptr : &perms[witness_index[v]];
    }
};

inline OrbitWithWitness orbit_with_witness(int n, int seed, const std::vector<Perm>& gens) {
    OrbitWithWitness out;
    out.witness_index.assign(n, -1);
    out.perms.push_back(perm_identity(n));
    out.witness_index[seed] = 0;
    std::vector<int> queue{seed};
    for (size_t head = 0; head < queue.size(); ++head) {
        int v = queue[head];
        const Perm base = out.perms[out.witness_index[v]];
        for (const Perm& g : gens) {
            int w = g[v];
            if (out.witness_index[w] >= 0) continue;
            out.perms.push_back(perm_compose(g, base)); // maps seed -> w
            out.witness_index[w] = (int)out.perms.size() - 1;
            queue.push_back(w);
        }
    }
    out.orbit = queue;
    std::sort(out.orbit.begin(), out.orbit.end());
    return out;
}

// True iff the group generated by gens is transitive on 0..n-1.
inline bool gens_transitive(int n, const std::vector<Perm>& gens) {
    if (n == 0) return true;
    UnionFind uf(n);
    for (const auto& g : gens)
        for (int v = 0; v < n; ++v) uf.unite(v, g[v]);
    for (int v = 1; v < n; ++v)
        if (uf.find(v) != uf.find(0)) return false;
    return true;
}

// True iff the group generated by gens is transitive on the edges of g
// (as unordered pairs).
inline bool gens_edge_transitive(const Graph& g, const std::vector<Perm>& gens) {
    std::vector<std::pair<int, int>> edges;
    std::map<std::pair<int, int>, int> eidx;
    for (int u = 0; u < g.n; ++u)
        for (int v : g.neighbors(u))
            if (u < v) {
                eidx[{u, v}] = (int)edges.size();
                edges.push_back({u, v});
            }
    if (edges.empty()) return true;
    UnionFind uf((int)edges.size());
    for (const auto& p : gens)
        for (int e = 0; e < (int)edges.size(); ++e) {
            auto [u, v] = edges[e];
            int a = p[u], b = p[v];
            if (a > b) std::swap(a, b);
            uf.unite(e, eidx.at({a, b}));
        }
    for (int e = 1; e < (int)edges.size(); ++e)
        if (uf.find(e) != uf.find(0)) return false;
    return true;
}

} // namespace geomforge

#pragma once

// Derived named constructions: the two routes to the 162-point EGQ(4,2)
// hyperoval of H5(4), the 162-point extended hexagon with its 81-point
// mu-graph, sub-generalized-octagon classes of W(s)^F, and the Suzuki
// extension step.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "canon.hpp"
#include "errors.hpp"
#include "fields.hpp"
#include "geometry.hpp"
#include "graph.hpp"
#include "hyperovals.hpp"
#include "permgroup.hpp"
#include "spaces.hpp"

namespace geomforge {

// ---------------------------------------------------------------------------
// 162-point hyperoval of H5(4), coordinate construction: isotropic points
// whose coordinate product lies in GF(4) \ GF(2).  The product is scale
// invariant because scaling multiplies it by lambda^6 = 1.

inline Hyperoval brouwer_hyperoval_162(const Geometry& h54) {
    const FieldTable& F = FieldTable::get(4);
    Hyperoval h;
    for (int i = 0; i < h54.num_points(); ++i) {
        FElem prod = 1;
        for (FElem c : h54.points[i]) prod = F.mul(prod, c);
        if (prod == 2 || prod == 3) h.pts.push_back(i);
    }
    if (!is_hyperoval(h54, h.pts))
        throw Error("brouwer_hyperoval_162: coordinate set fails the 0-or-2 condition");
    return h;
}

// Symmetric difference of two 126-point hyperovals meeting in 45 points.
inline Hyperoval symmetric_difference_hyperoval(const Geometry& h54, const Hyperoval& a,
                                                const Hyperoval& b) {
    if (a.pts.size() != 126 || b.pts.size() != 126)
        throw PreconditionViolated("symmetric_difference_hyperoval: need two 126-point hyperovals");
    std::vector<int> inter;
    std::set_intersection(a.pts.begin(), a.pts.end(), b.pts.begin(), b.pts.end(),
                          std::back_inserter(inter));
    if (inter.size() != 45)
        throw PreconditionViolated("symmetric_difference_hyperoval: intersection is " +
                                   std::to_string(inter.size()) + ", need 45");
    Hyperoval out;
    std::set_symmetric_difference(a.pts.begin(), a.pts.end(), b.pts.begin(), b.pts.end(),
                                  std::back_inserter(out.pts));
    if (!is_hyperoval(h54, out.pts))
        throw Error("symmetric_difference_hyperoval: result fails the 0-or-2 condition");
    return out;
}

// Locates a pair of 126-point hyperovals meeting in a 45-point subspace.
// The 45-point candidates inside a given 126-point hyperoval are the
// isotropic-perp sections of its GF(3) orthogonal model, transported along
// an explicit isomorphism of the model graph onto the induced subgraph.
struct Pair126 {
    Hyperoval first, second;
    std::vector<int> shared; // the 45 common points
};

inline Pair126 find_126_pair_sharing_45(const Geometry& h54, const Hyperoval& xi,
                                        const SearchLimits& lim = {}) {
    if (xi.pts.size() != 126)
        throw PreconditionViolated("find_126_pair_sharing_45: need a 126-point hyperoval");
    Graph g = collinearity_graph(h54);
    Graph ind = induced(g, xi.pts);
    // orthogonal GF(3) model of the 126-point hyperoval
    std::vector<Vec> model_pts;
    Form model_form;
    Graph model = gf3_plus_graph(6, 1, &model_pts, &model_form);
    auto iso = find_isomorphism(model, ind);
    if (!iso)
        throw PreconditionViolated("find_126_pair_sharing_45: hyperoval not of orthogonal type");
    // a 45-point subspace: the (+)-points perpendicular to an isotropic point
    const FieldTable& F3 = FieldTable::get(3);
    Vec p_iso;
    for (const auto& p : projective_points(F3, 6))
        if (model_form.eval(p, p) == 0) { p_iso = p; break; }
    std::vector<int> shared;
    for (int v = 0; v < model.n; ++v)
        if (model_form.eval(model_pts[v], p_iso) == 0)
            shared.push_back(ind.labels[(*iso)[v]]); // global H5(4) index
    std::sort(shared.begin(), shared.end());
    if (shared.size() != 45)
        throw Error("find_126_pair_sharing_45: perp section has wrong size");
    // hyperovals containing the 45-point set and avoiding the rest of xi
    std::vector<int> forb;
    std::set_difference(xi.pts.begin(), xi.pts.end(), shared.begin(), shared.end(),
                        std::back_inserter(forb));
    for (const auto& h : search_hyperovals(h54, shared, forb, lim)) {
        if (h.pts.size() != 126) continue;
        std::vector<int> inter;
        std::set_intersection(h.pts.begin(), h.pts.end(), xi.pts.begin(), xi.pts.end(),
                              std::back_inserter(inter));
        if (inter == shared) {
            Pair126 out;
            out.first = xi;
            out.second = h;
            out.shared = shared;
            return out;
        }
    }
    throw NotFound("find_126_pair_sharing_45: no partner hyperoval found");
}

// ---------------------------------------------------------------------------
// The 162-point extended hexagon (vertex q, the 105 flags of PG(2,4), one
// PSL3(4)-orbit of 56 hyperovals).

struct ExtendedHexagon {
    Graph graph;                   // 162 vertices: 0 = q, 1..105 flags, 106.. hyperovals
    std::vector<int> mu81;         // the 81-point subgraph from a hyperoval outside the orbit
    Graph flag_d13;                // distance-1-or-3 graph of GH(4,1) on the flags
};

inline ExtendedHexagon extended_hexagon_162(const PG24& pg) {
    const auto& plane = pg.plane;
    auto flags = flags_of(plane);
    int NF = (int)flags.size();
    if (NF != 105) throw ConstantsMismatch("extended_hexagon_162: expected 105 flags");
    // distance 1-or-3 graph of the flag hexagon
    Graph hexcoll = collinearity_graph(pg.flag_hexagon);
    Graph d13(NF);
    for (int v = 0; v < NF; ++v) {
        auto dist = bfs_distances(hexcoll, v);
        for (int u = v + 1; u < NF; ++u)
            if (dist[u] == 1 || dist[u] == 3) d13.add_edge(v, u);
    }
    const auto& orb = pg.orbits[0];
    int NO = (int)orb.size();
    ExtendedHexagon out;
    out.flag_d13 = d13;
    Graph g(1 + NF + NO);
    for (int f = 0; f < NF; ++f) g.add_edge(0, 1 + f);
    for (int a = 0; a < NF; ++a)
        for (int b = a + 1; b < NF; ++b)
            if (d13.has_edge(a, b)) g.add_edge(1 + a, 1 + b);
    // flag ~ hyperoval iff the flag's point is in the hyperoval or the
    // flag's line is in the dual hyperoval (the six external lines)
    std::vector<std::vector<int>> ext(NO);
    for (int i = 0; i < NO; ++i) ext[i] = external_lines(plane, pg.hyperovals[orb[i]]);
    for (int f = 0; f < NF; ++f) {
        auto [p, l] = flags[f];
        for (int i = 0; i < NO; ++i) {
            const auto& oval = pg.hyperovals[orb[i]];
            bool adj = std::binary_search(oval.begin(), oval.end(), p) ||
                       std::binary_search(ext[i].begin(), ext[i].end(), l);
            if (adj) g.add_edge(1 + f, 1 + NF + i);
        }
    }
    // two hyperovals of the orbit adjacent iff they meet in 2 points
    for (int i = 0; i < NO; ++i)
        for (int j = i + 1; j < NO; ++j) {
            std::vector<int> inter;
            const auto& a = pg.hyperovals[orb[i]];
            const auto& b = pg.hyperovals[orb[j]];
            std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                                  std::back_inserter(inter));
            if (inter.size() == 2) g.add_edge(1 + NF + i, 1 + NF + j);
        }
    out.graph = g;
    // mu-graph: q, the 60 flags meeting a fixed hyperoval O outside the
    // orbit or its dual, and the 20 orbit members meeting O in 3 points
    int o_out = pg.orbits[1][0];
    const auto& O = pg.hyperovals[o_out];
    auto Oext = external_lines(plane, O);
    out.mu81.push_back(0);
    for (int f = 0; f < NF; ++f) {
        auto [p, l] = flags[f];
        if (std::binary_search(O.begin(), O.end(), p) ||
            std::binary_search(Oext.begin(), Oext.end(), l))
            out.mu81.push_back(1 + f);
    }
    for (int i = 0; i < NO; ++i) {
        std::vector<int> inter;
        const auto& b = pg.hyperovals[orb[i]];
        std::set_intersection(O.begin(), O.end(), b.begin(), b.end(),
                              std::back_inserter(inter));
        if (inter.size() == 3) out.mu81.push_back(1 + NF + i);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Sub-generalized-octagon classes of W(s)^F.

struct SubGOClasses {
    // each sub-GO as a sorted set of flag indices of W(s)^F
    std::vector<std::vector<int>> class_o;      // from subGQ(1,s) of W(s)
    std::vector<std::vector<int>> class_o_star; // from subGQ(s,1) of W(s)
    std::map<int, long long> within_o_profile;  // |O /\ Xi| over Xi in class_o, fixed O
    std::map<int, long long> cross_profile;     // |O /\ Xi| over Xi in class_o_star
    bool cross_intersections_octagonal = true;  // nonempty ones induce C8
};

inline SubGOClasses subgo_classes(int s) {
    Geometry th = w_s(s);
    Graph g = collinearity_graph(th);
    int P = th.num_points();
    auto flags = flags_of(th);
    auto flag_index = [&](int p, int li) {
        auto it = std::lower_bound(flags.begin(), flags.end(), std::make_pair(p, li));
        if (it == flags.end() || *it != std::make_pair(p, li))
            throw Error("subgo_classes: flag not found");
        return (int)(it - flags.begin());
    };
    SubGOClasses out;
    // subGQ(1,s): spans {M,Q}^perp u {M,Q}^perp-perp of noncollinear pairs
    std::set<std::vector<int>> seen;
    auto common_perp = [&](const std::vector<int>& pts) {
        std::vector<int> r;
        for (int v = 0; v < P; ++v) {
            bool all = true;
            for (int x : pts)
                if (v == x || !g.has_edge(v, x)) { all = false; break; }
            if (all) r.push_back(v);
        }
        return r;
    };
    for (int m = 0; m < P; ++m)
        for (int q = m + 1; q < P; ++q) {
            if (g.has_edge(m, q)) continue;
            auto half1 = common_perp({m, q});
            auto half2 = common_perp(half1);
            if ((int)half1.size() != s + 1 || (int)half2.size() != s + 1)
                throw ConstantsMismatch("subgo_classes: span halves have wrong size");
            std::vector<int> key = half1;
            key.insert(key.end(), half2.begin(), half2.end());
            std::sort(key.begin(), key.end());
            if (!seen.insert(key).second) continue;
            // lift: flags (p, l) with p in the span and |l /\ span| = 2
            std::vector<char> in_span(P, 0);
            for (int v : key) in_span[v] = 1;
            std::vector<int> lifted;
            for (int v : key)
                for (int li : th.lines_through[v]) {
                    int c = 0;
                    for (int w : th.lines[li]) c += in_span[w];
                    if (c == 2) lifted.push_back(flag_index(v, li));
                }
            std::sort(lifted.begin(), lifted.end());
            out.class_o.push_back(lifted);
        }
    // subGQ(s,1): grids, dually (pairs of disjoint lines)
    std::set<std::vector<int>> seen_lines;
    int L = (int)th.lines.size();
    auto lines_meeting_both = [&](int a, int b) {
        std::vector<int> r;
        for (int li = 0; li < L; ++li) {
            bool ma = false, mb = false;
            for (int p : th.lines[li]) {
                if (std::binary_search(th.lines[a].begin(), th.lines[a].end(), p)) ma = true;
                if (std::binary_search(th.lines[b].begin(), th.lines[b].end(), p)) mb = true;
            }
            if (ma && mb && li != a && li != b) r.push_back(li);
        }
        return r;
    };
    for (int a = 0; a < L; ++a)
        for (int b = a + 1; b < L; ++b) {
            std::vector<int> inter;
            std::set_intersection(th.lines[a].begin(), th.lines[a].end(),
                                  th.lines[b].begin(), th.lines[b].end(),
                                  std::back_inserter(inter));
            if (!inter.empty()) continue;
            auto mids = lines_meeting_both(a, b);
            if ((int)mids.size() != s + 1) continue; // not a regular pair of lines
            // the grid's other family: lines meeting all of mids
            std::vector<int> fam;
            for (int li = 0; li < L; ++li) {
                bool all = true;
                for (int mj : mids) {
                    std::vector<int> iv;
                    std::set_intersection(th.lines[li].begin(), th.lines[li].end(),
                                          th.lines[mj].begin(), th.lines[mj].end(),
                                          std::back_inserter(iv));
                    if (iv.empty()) { all = false; break; }
                }
                if (all && std::find(mids.begin(), mids.end(), li) == mids.end())
                    fam.push_back(li);
            }
            if ((int)fam.size() != s + 1)
                throw ConstantsMismatch("subgo_classes: grid family has wrong size");
            std::vector<int> key = mids;
            key.insert(key.end(), fam.begin(), fam.end());
            std::sort(key.begin(), key.end());
            if (!seen_lines.insert(key).second) continue;
            // grid points: covered by two lines of the grid
            std::map<int, int> cover;
            for (int li : key)
                for (int p : th.lines[li]) cover[p] += 1;
            std::vector<int> lifted;
            for (int li : key)
                for (int p : th.lines[li])
                    if (cover[p] == 2) lifted.push_back(flag_index(p, li));
            std::sort(lifted.begin(), lifted.end());
            out.class_o_star.push_back(lifted);
        }
    std::sort(out.class_o.begin(), out.class_o.end());
    std::sort(out.class_o_star.begin(), out.class_o_star.end());
    // intersection statistics from the first member of class_o
    if (!out.class_o.empty()) {
        const auto& base = out.class_o.front();
        for (const auto& xi : out.class_o) {
            if (xi == base) continue;
            std::vector<int> iv;
            std::set_intersection(base.begin(), base.end(), xi.begin(), xi.end(),
                                  std::back_inserter(iv));
            out.within_o_profile[(int)iv.size()] += 1;
        }
        Geometry thF = flag_geometry(th);
        Graph fcoll = collinearity_graph(thF);
        Graph c8 = Graph::cycle(8);
        auto c8cert = canonical_form(c8).bytes;
        for (const auto& xi : out.class_o_star) {
            std::vector<int> iv;
            std::set_intersection(base.begin(), base.end(), xi.begin(), xi.end(),
                                  std::back_inserter(iv));
            out.cross_profile[(int)iv.size()] += 1;
            if (!iv.empty()) {
                if (iv.size() != 8 ||
                    canonical_form(induced(fcoll, iv)).bytes != c8cert)
                    out.cross_intersections_octagonal = false;
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Suzuki extension step.

// The incidence graph of the 2-(7,4,2) design complementary to the Fano
// plane: vertices are the 7 points and 7 lines of PG(2,2), a point adjacent
// to a line iff it does not lie on it.
inline Graph sigma2_graph() {
    Geometry fano = pg2(2);
    Graph g(14);
    for (int p = 0; p < 7; ++p)
        for (int li = 0; li < 7; ++li)
            if (!std::binary_search(fano.lines[li].begin(), fano.lines[li].end(), p))
                g.add_edge(p, 7 + li);
    return g;
}

// Vertex set {inf} u V(delta) u class; x in class is adjacent to v in
// V(delta) iff x fixes v, and to y in class iff x and y do not commute but
// some member of the class commutes with both.
inline Graph suzuki_step(const Graph& delta, const InvolutionClass& cls) {
    int n = delta.n;
    int m = (int)cls.members.size();
    Graph g(1 + n + m);
    for (int v = 0; v < n; ++v) g.add_edge(0, 1 + v);
    for (int u = 0; u < n; ++u)
        for (int v : delta.neighbors(u))
            if (u < v) g.add_edge(1 + u, 1 + v);
    for (int i = 0; i < m; ++i)
        for (int v = 0; v < n; ++v)
            if (cls.members[i][v] == v) g.add_edge(1 + n + i, 1 + v);
    std::vector<char> commute((size_t)m * m, 0);
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
            bool c = perm_compose(cls.members[i], cls.members[j]) ==
                     perm_compose(cls.members[j], cls.members[i]);
            commute[(size_t)i * m + j] = commute[(size_t)j * m + i] = (char)c;
        }
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            if (commute[(size_t)i * m + j]) continue;
            bool witness = false;
            for (int k = 0; k < m && !witness; ++k)
                if (k != i && k != j && commute[(size_t)i * m + k] &&
                    commute[(size_t)j * m + k])
                    witness = true;
            if (witness) g.add_edge(1 + n + i, 1 + n + j);
        }
    if (!is_connected(g)) throw DisconnectedResult("suzuki_step: output disconnected");
    return g;
}

} // namespace geomforge

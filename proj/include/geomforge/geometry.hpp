#pragma once

// Point-line incidence structures: indexed point lists (projective
// representatives), lines as sorted point-index sets, and the generic
// queries used by the constructions (collinearity graphs, residues,
// flag geometries, generalized-polygon checks).

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "errors.hpp"
#include "fields.hpp"
#include "graph.hpp"

namespace geomforge {

struct Geometry {
    std::string kind;
    int field_q = 0;              // 0 for abstract geometries
    std::vector<Vec> points;      // projective representatives (may be empty)
    int abstract_points = 0;      // used when points is empty
    std::vector<std::vector<int>> lines;
    std::vector<std::vector<int>> lines_through; // per point, sorted

    int num_points() const { return points.empty() ? abstract_points : (int)points.size(); }

    void finalize() {
        for (auto& l : lines) std::sort(l.begin(), l.end());
        std::sort(lines.begin(), lines.end());
        lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
        lines_through.assign(num_points(), {});
        for (int li = 0; li < (int)lines.size(); ++li)
            for (int p : lines[li]) lines_through[p].push_back(li);
    }

    // index of a normalized point, -1 if absent
    int point_index(const Vec& v) const {
        auto it = std::lower_bound(points.begin(), points.end(), v);
        if (it == points.end() || *it != v) return -1;
        return (int)(it - points.begin());
    }
};

inline Graph collinearity_graph(const Geometry& geo) {
    Graph g(geo.num_points());
    for (const auto& l : geo.lines)
        for (size_t i = 0; i < l.size(); ++i)
            for (size_t j = i + 1; j < l.size(); ++j)
                if (!g.has_edge(l[i], l[j])) g.add_edge(l[i], l[j]);
    return g;
}

// Bipartite incidence graph: vertices 0..P-1 points, P..P+L-1 lines.
inline Graph incidence_graph(const Geometry& geo) {
    int P = geo.num_points();
    Graph g(P + (int)geo.lines.size());
    for (int li = 0; li < (int)geo.lines.size(); ++li)
        for (int p : geo.lines[li]) g.add_edge(p, P + li);
    return g;
}

// (s,t) such that every line has s+1 points and every point is on t+1 lines.
inline std::optional<std::pair<int, int>> geometry_order(const Geometry& geo) {
    if (geo.lines.empty()) return std::nullopt;
    size_t ls = geo.lines[0].size();
    for (const auto& l : geo.lines)
        if (l.size() != ls) return std::nullopt;
    size_t pt = geo.lines_through.empty() ? 0 : geo.lines_through[0].size();
    for (const auto& lt : geo.lines_through)
        if (lt.size() != pt) return std::nullopt;
    return std::make_pair((int)ls - 1, (int)pt - 1);
}

// GQ axiom: for every non-incident (point p, line L) there is exactly one
// point of L collinear with p.
inline bool gq_axiom_holds(const Geometry& geo) {
    Graph g = collinearity_graph(geo);
    for (int p = 0; p < geo.num_points(); ++p) {
        for (int li = 0; li < (int)geo.lines.size(); ++li) {
            const auto& l = geo.lines[li];
            if (std::binary_search(l.begin(), l.end(), p)) continue;
            int c = 0;
            for (int x : l)
                if (g.has_edge(p, x)) ++c;
            if (c != 1) return false;
        }
    }
    return true;
}

// One-or-all axiom of polar spaces.
inline bool one_or_all_axiom_holds(const Geometry& geo) {
    Graph g = collinearity_graph(geo);
    for (int p = 0; p < geo.num_points(); ++p) {
        for (const auto& l : geo.lines) {
            if (std::binary_search(l.begin(), l.end(), p)) continue;
            size_t c = 0;
            for (int x : l)
                if (g.has_edge(p, x)) ++c;
            if (c != 1 && c != l.size()) return false;
        }
    }
    return true;
}

// Incidence-system restriction to a point subset: keeps the lines entirely
// inside the subset (their points reindexed by position in sorted subset).
inline Geometry restriction(const Geometry& geo, const std::vector<int>& subset_in) {
    std::vector<int> subset = subset_in;
    std::sort(subset.begin(), subset.end());
    std::vector<int> newidx(geo.num_points(), -1);
    for (size_t i = 0; i < subset.size(); ++i) newidx[subset[i]] = (int)i;
    Geometry sub;
    sub.kind = geo.kind + "|restriction";
    sub.field_q = geo.field_q;
    if (!geo.points.empty())
        for (int p : subset) sub.points.push_back(geo.points[p]);
    sub.abstract_points = (int)subset.size();
    for (const auto& l : geo.lines) {
        bool inside = true;
        for (int p : l)
            if (newidx[p] < 0) { inside = false; break; }
        if (!inside) continue;
        std::vector<int> nl;
        for (int p : l) nl.push_back(newidx[p]);
        sub.lines.push_back(nl);
    }
    sub.finalize();
    return sub;
}

// Flag geometry: points are the flags (incident point-line pairs); lines are
// the original points and the original lines.  Requires the input to be a
// generalized polygon (checked via girth/diameter of the incidence graph).
inline Geometry flag_geometry(const Geometry& geo) {
    // generalized d-gon <=> incidence graph has diameter d and girth 2d
    Graph inc = incidence_graph(geo);
    int dia = diameter(inc);
    if (dia < 3) throw NotGeneralizedPolygon("flag_geometry: degenerate input");
    // girth via BFS from every vertex
    int girth = -1;
    for (int v = 0; v < inc.n; ++v) {
        std::vector<int> dist(inc.n, -1), par(inc.n, -1);
        std::vector<int> q{v};
        dist[v] = 0;
        for (size_t h = 0; h < q.size(); ++h) {
            int u = q[h];
            for (int w : inc.neighbors(u)) {
                if (dist[w] < 0) {
                    dist[w] = dist[u] + 1;
                    par[w] = u;
                    q.push_back(w);
                } else if (w != par[u]) {
                    int cyc = dist[u] + dist[w] + 1;
                    if (girth < 0 || cyc < girth) girth = cyc;
                }
            }
        }
    }
    if (girth != 2 * dia)
        throw NotGeneralizedPolygon("flag_geometry: incidence graph girth " +
                                    std::to_string(girth) + " != 2*diameter " +
                                    std::to_string(dia));
    Geometry fg;
    fg.kind = geo.kind + "^F";
    int P = geo.num_points();
    std::vector<std::pair<int, int>> flags;
    for (int li = 0; li < (int)geo.lines.size(); ++li)
        for (int p : geo.lines[li]) flags.push_back({p, li});
    std::sort(flags.begin(), flags.end());
    fg.abstract_points = (int)flags.size();
    auto flag_index = [&](int p, int li) {
        return (int)(std::lower_bound(flags.begin(), flags.end(), std::make_pair(p, li)) -
                     flags.begin());
    };
    // one line per original point: all flags on that point
    std::vector<std::vector<int>> by_point(P), by_line(geo.lines.size());
    for (int fi = 0; fi < (int)flags.size(); ++fi) {
        by_point[flags[fi].first].push_back(fi);
        by_line[flags[fi].second].push_back(fi);
    }
    (void)flag_index;
    for (auto& l : by_point) fg.lines.push_back(l);
    for (auto& l : by_line) fg.lines.push_back(l);
    fg.finalize();
    return fg;
}

// The flags of a flag geometry, in the index order used by flag_geometry.
inline std::vector<std::pair<int, int>> flags_of(const Geometry& geo) {
    std::vector<std::pair<int, int>> flags;
    for (int li = 0; li < (int)geo.lines.size(); ++li)
        for (int p : geo.lines[li]) flags.push_back({p, li});
    std::sort(flags.begin(), flags.end());
    return flags;
}

} // namespace geomforge

#pragma once

// Constructors for the classical point-line geometries and graphs the
// workbench computes with: rank-2/3 polar spaces over GF(3) and GF(4),
// symplectic quadrangles W(s), graphs of (+)-points over GF(3) and of
// nonisotropic points over GF(4), PG(2,4) with its hyperovals, and the
// Sp6(2) polar space used for cross-checks.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "errors.hpp"
#include "fields.hpp"
#include "geometry.hpp"
#include "graph.hpp"

namespace geomforge {

enum class PolarKind { W3, Q4_3, Q5plus4, S5_4, Q7minus4, H5_4, H6_4, Sp6_2 };

inline std::string polar_kind_name(PolarKind k) {
    switch (k) {
    case PolarKind::W3: return "W3";
    case PolarKind::Q4_3: return "Q4_3";
    case PolarKind::Q5plus4: return "Q5plus4";
    case PolarKind::S5_4: return "S5_4";
    case PolarKind::Q7minus4: return "Q7minus4";
    case PolarKind::H5_4: return "H5_4";
    case PolarKind::H6_4: return "H6_4";
    case PolarKind::Sp6_2: return "Sp6_2";
    }
    return "?";
}

namespace detail {

// Lines from a point list and a pairwise perpendicularity test: totally
// isotropic/singular 2-spaces, enumerated from perpendicular point pairs.
inline void build_lines(Geometry& geo, const Form& bilinear) {
    const FieldTable& F = *bilinear.F;
    int P = (int)geo.points.size();
    int n = bilinear.n;
    // transformed vectors: tw[j] = G * sigma(p_j), so that
    // f(p_i, p_j) = p_i . tw[j]
    std::vector<Vec> tw(P, Vec(n, 0));
    for (int j = 0; j < P; ++j)
        for (int r = 0; r < n; ++r) {
            FElem s = 0;
            for (int c = 0; c < n; ++c) {
                FElem vc = (bilinear.kind == FormKind::Hermitian)
                               ? F.conj(geo.points[j][c])
                               : geo.points[j][c];
                s = F.add(s, F.mul(bilinear.gram[r][c], vc));
            }
            tw[j][r] = s;
        }
    std::set<std::vector<int>> lineset;
    std::vector<int> line;
    for (int i = 0; i < P; ++i) {
        for (int j = i + 1; j < P; ++j) {
            if (dot_row(F, geo.points[i], tw[j]) != 0) continue;
            line.assign({i, j});
            bool ok = true;
            for (int c = 1; c < F.order() && ok; ++c) {
                Vec u = F.add_vec(geo.points[i], F.scale_vec(FElem(c), geo.points[j]));
                int idx = geo.point_index(normalize_point(F, u));
                if (idx < i) { ok = false; break; } // built from a smaller point
                if (idx < 0) { ok = false; break; } // span leaves the point set
                line.push_back(idx);
            }
            if (!ok) continue;
            std::sort(line.begin(), line.end());
            lineset.insert(line);
        }
    }
    geo.lines.assign(lineset.begin(), lineset.end());
    geo.finalize();
}

// Points: form-isotropic projective points.  Lines: totally isotropic
// 2-spaces.
inline Geometry polar_space_from_form(const Form& f, const std::string& kind) {
    const FieldTable& F = *f.F;
    Geometry geo;
    geo.kind = kind;
    geo.field_q = F.order();
    for (auto& p : projective_points(F, f.n))
        if (f.eval(p, p) == 0) geo.points.push_back(p);
    std::sort(geo.points.begin(), geo.points.end());
    build_lines(geo, f);
    return geo;
}

// Same for a quadratic form in characteristic 2: points are singular
// points; a span of two singular points is totally singular iff they are
// perpendicular for the polarization.
inline Geometry polar_space_from_quadric(const QuadraticForm& Q, const std::string& kind) {
    const FieldTable& F = *Q.F;
    Geometry geo;
    geo.kind = kind;
    geo.field_q = F.order();
    for (auto& p : projective_points(F, Q.n))
        if (Q.eval(p) == 0) geo.points.push_back(p);
    std::sort(geo.points.begin(), geo.points.end());
    build_lines(geo, Q.polarization());
    return geo;
}

} // namespace detail

// The quadratic/sesquilinear model behind each polar-space kind.
inline Geometry polar_space(PolarKind kind) {
    switch (kind) {
    case PolarKind::W3: return detail::polar_space_from_form(w_form(3), "W3");
    case PolarKind::Q4_3: {
        // nondegenerate symmetric bilinear form on GF(3)^5
        Form f = gf3_symmetric(5, 1);
        return detail::polar_space_from_form(f, "Q4_3");
    }
    case PolarKind::Q5plus4:
        return detail::polar_space_from_quadric(quadric_plus(4, 6), "Q5plus4");
    case PolarKind::S5_4:
        return detail::polar_space_from_form(symplectic_form(4, 6), "S5_4");
    case PolarKind::Q7minus4:
        return detail::polar_space_from_quadric(quadric_minus(4, 8), "Q7minus4");
    case PolarKind::H5_4:
        return detail::polar_space_from_form(gf4_hermitian(6), "H5_4");
    case PolarKind::H6_4:
        return detail::polar_space_from_form(gf4_hermitian(7), "H6_4");
    case PolarKind::Sp6_2:
        return detail::polar_space_from_form(symplectic_form(2, 6), "Sp6_2");
    }
    throw UnknownKind("polar_space");
}

// W(s): points and totally isotropic lines of the alternating form
// f(x,y) = x1y4 - x2y3 + x3y2 - x4y1 on GF(s)^4.
inline Geometry w_s(int s) {
    if (s != 2 && s != 3 && s != 4) throw UnsupportedOrder("w_s: s must be 2, 3 or 4");
    return detail::polar_space_from_form(w_form(s), "W" + std::to_string(s));
}

// Graph of the (+)-points of GF(3)^n with a nondegenerate symmetric form of
// discriminant eps; adjacency = perpendicularity.
inline Graph gf3_plus_graph(int n, int eps, std::vector<Vec>* out_points = nullptr,
                            Form* out_form = nullptr) {
    if (n < 5 || n > 8) throw InvalidParameter("gf3_plus_graph: n must be in 5..8");
    const FieldTable& F = FieldTable::get(3);
    Form f = gf3_symmetric(n, eps);
    std::vector<Vec> plus;
    for (auto& p : projective_points(F, n))
        if (point_class(f, p) == PointClass::Plus) plus.push_back(p);
    std::sort(plus.begin(), plus.end());
    Graph g((int)plus.size());
    for (size_t i = 0; i < plus.size(); ++i)
        for (size_t j = i + 1; j < plus.size(); ++j)
            if (f.eval(plus[i], plus[j]) == 0) g.add_edge((int)i, (int)j);
    if (out_points) *out_points = plus;
    if (out_form) *out_form = f;
    return g;
}

// U_n: graph of the nonisotropic points of hermitian GF(4)^n; adjacency =
// perpendicularity.
inline Graph hermitian_nonisotropic_graph(int n, std::vector<Vec>* out_points = nullptr) {
    if (n < 4 || n > 6) throw InvalidParameter("hermitian_nonisotropic_graph: n in 4..6");
    const FieldTable& F = FieldTable::get(4);
    Form f = gf4_hermitian(n);
    std::vector<Vec> pts;
    for (auto& p : projective_points(F, n))
        if (f.eval(p, p) != 0) pts.push_back(p);
    std::sort(pts.begin(), pts.end());
    Graph g((int)pts.size());
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j)
            if (f.eval(pts[i], pts[j]) == 0) g.add_edge((int)i, (int)j);
    if (out_points) *out_points = pts;
    return g;
}

// Points of `geo` perpendicular to p (for the classical models, the point
// set of the hyperplane section p^perp).
inline std::vector<int> perp_section(const Geometry& geo, const Form& f, const Vec& p) {
    std::vector<int> sec;
    for (int i = 0; i < (int)geo.points.size(); ++i)
        if (f.eval(geo.points[i], p) == 0) sec.push_back(i);
    return sec;
}

// ---------------------------------------------------------------------------
// PG(2,4) and its hyperovals

struct PG24 {
    Geometry plane;            // 21 points, 21 lines
    Geometry flag_hexagon;     // GH(4,1) on the 105 flags
    std::vector<std::vector<int>> hyperovals; // 168 six-point sets, sorted
    std::vector<int> orbit_of_hyperoval;      // 0,1,2 per hyperoval
    std::vector<std::vector<int>> orbits;     // the three classes
};

inline Geometry pg2(int q) {
    const FieldTable& F = FieldTable::get(q);
    Geometry geo;
    geo.kind = "PG(2," + std::to_string(q) + ")";
    geo.field_q = q;
    geo.points = projective_points(F, 3);
    // lines = kernels of linear functionals, i.e. points of the dual plane
    for (auto& a : projective_points(F, 3)) {
        std::vector<int> line;
        for (int i = 0; i < (int)geo.points.size(); ++i) {
            FElem s = 0;
            for (int k = 0; k < 3; ++k) s = F.add(s, F.mul(a[k], geo.points[i][k]));
            if (s == 0) line.push_back(i);
        }
        geo.lines.push_back(line);
    }
    geo.finalize();
    return geo;
}

// All hyperovals (6 points, no 3 collinear) of PG(2,4), by backtracking.
inline std::vector<std::vector<int>> pg24_hyperovals(const Geometry& plane) {
    int P = plane.num_points();
    Graph coll(P); // "3 collinear" test via line membership
    std::vector<std::vector<int>> line_of(P, std::vector<int>(P, -1));
    for (int li = 0; li < (int)plane.lines.size(); ++li)
        for (int a : plane.lines[li])
            for (int b : plane.lines[li])
                if (a != b) line_of[a][b] = li;
    std::vector<std::vector<int>> found;
    std::vector<int> cur;
    std::vector<char> blocked(P, 0);
    // backtrack over points in ascending order; a new point must not be on a
    // line through two chosen points
    std::function<void(int)> rec = [&](int from) {
        if (cur.size() == 6) {
            found.push_back(cur);
            return;
        }
        for (int p = from; p < P; ++p) {
            bool ok = true;
            for (size_t i = 0; i < cur.size() && ok; ++i)
                for (size_t j = i + 1; j < cur.size() && ok; ++j)
                    if (line_of[cur[i]][cur[j]] >= 0 &&
                        std::binary_search(plane.lines[line_of[cur[i]][cur[j]]].begin(),
                                           plane.lines[line_of[cur[i]][cur[j]]].end(), p))
                        ok = false;
            if (!ok) continue;
            cur.push_back(p);
            rec(p + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return found;
}

inline PG24 pg24_with_hyperovals() {
    PG24 out;
    out.plane = pg2(4);
    out.flag_hexagon = flag_geometry(out.plane);
    out.hyperovals = pg24_hyperovals(out.plane);
    // orbit partition = transitive closure of "meet in an even number of
    // points" (a hyperoval meets itself in 6 points, so the relation is
    // reflexive on each class)
    int H = (int)out.hyperovals.size();
    std::vector<int> cls(H, -1);
    int ncls = 0;
    for (int i = 0; i < H; ++i) {
        if (cls[i] >= 0) continue;
        cls[i] = ncls;
        std::vector<int> stack{i};
        while (!stack.empty()) {
            int a = stack.back();
            stack.pop_back();
            for (int b = 0; b < H; ++b) {
                if (cls[b] >= 0) continue;
                std::vector<int> inter;
                std::set_intersection(out.hyperovals[a].begin(), out.hyperovals[a].end(),
                                      out.hyperovals[b].begin(), out.hyperovals[b].end(),
                                      std::back_inserter(inter));
                if (inter.size() % 2 == 0) {
                    cls[b] = ncls;
                    stack.push_back(b);
                }
            }
        }
        ++ncls;
    }
    out.orbit_of_hyperoval = cls;
    out.orbits.assign(ncls, {});
    for (int i = 0; i < H; ++i) out.orbits[cls[i]].push_back(i);
    return out;
}

// The six lines of the plane disjoint from a hyperoval (its dual hyperoval).
inline std::vector<int> external_lines(const Geometry& plane, const std::vector<int>& oval) {
    std::vector<int> ext;
    for (int li = 0; li < (int)plane.lines.size(); ++li) {
        bool meets = false;
        for (int p : oval)
            if (std::binary_search(plane.lines[li].begin(), plane.lines[li].end(), p)) {
                meets = true;
                break;
            }
        if (!meets) ext.push_back(li);
    }
    return ext;
}

} // namespace geomforge

#pragma once

// Small exact linear algebra over the table fields: solving, inversion,
// kernels, complements and symplectic bases.  Matrices are row vectors.

#include <vector>

#include "errors.hpp"
#include "fields.hpp"

namespace geomforge {

using Mat = std::vector<Vec>;

inline Vec mat_apply(const FieldTable& F, const Mat& m, const Vec& v) {
    Vec r(m.size(), 0);
    for (size_t i = 0; i < m.size(); ++i) r[i] = dot_row(F, m[i], v);
    return r;
}

// Inverse of a square matrix; throws InvalidParameter if singular.
inline Mat mat_inverse(const FieldTable& F, Mat m) {
    int n = (int)m.size();
    Mat inv(n, Vec(n, 0));
    for (int i = 0; i < n; ++i) inv[i][i] = 1;
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (m[r][c]) { piv = r; break; }
        if (piv < 0) throw InvalidParameter("mat_inverse: singular");
        std::swap(m[piv], m[c]);
        std::swap(inv[piv], inv[c]);
        FElem ic = F.inv(m[c][c]);
        for (int j = 0; j < n; ++j) {
            m[c][j] = F.mul(ic, m[c][j]);
            inv[c][j] = F.mul(ic, inv[c][j]);
        }
        for (int r = 0; r < n; ++r) {
            if (r == c || !m[r][c]) continue;
            FElem f = m[r][c];
            for (int j = 0; j < n; ++j) {
                m[r][j] = F.sub(m[r][j], F.mul(f, m[c][j]));
                inv[r][j] = F.sub(inv[r][j], F.mul(f, inv[c][j]));
            }
        }
    }
    return inv;
}

inline int mat_rank(const FieldTable& F, Mat m) {
    int rank = 0;
    int cols = m.empty() ? 0 : (int)m[0].size();
    for (int c = 0; c < cols && rank < (int)m.size(); ++c) {
        int piv = -1;
        for (int r = rank; r < (int)m.size(); ++r)
            if (m[r][c]) { piv = r; break; }
        if (piv < 0) continue;
        std::swap(m[piv], m[rank]);
        FElem ic = F.inv(m[rank][c]);
        for (int j = 0; j < cols; ++j) m[rank][j] = F.mul(ic, m[rank][j]);
        for (int r = 0; r < (int)m.size(); ++r) {
            if (r == rank || !m[r][c]) continue;
            FElem f = m[r][c];
            for (int j = 0; j < cols; ++j) m[r][j] = F.sub(m[r][j], F.mul(f, m[rank][j]));
        }
        ++rank;
    }
    return rank;
}

// Basis of the kernel of the linear functional v -> f(v, w).
inline Mat perp_hyperplane_basis(const FieldTable& F, const Form& f, const Vec& w) {
    int n = f.n;
    // functional coefficients: a_i = f(e_i, w)
    Vec a(n, 0);
    for (int i = 0; i < n; ++i) {
        Vec e(n, 0);
        e[i] = 1;
        a[i] = f.eval(e, w);
    }
    int lead = -1;
    for (int i = 0; i < n; ++i)
        if (a[i]) { lead = i; break; }
    if (lead < 0) throw InvalidParameter("perp_hyperplane_basis: zero functional");
    Mat basis;
    FElem il = F.inv(a[lead]);
    for (int i = 0; i < n; ++i) {
        if (i == lead) continue;
        Vec b(n, 0);
        b[i] = 1;
        b[lead] = F.neg(F.mul(il, a[i]));
        basis.push_back(b);
    }
    return basis;
}

// Given a nondegenerate alternating Gram matrix G (k x k, k even), returns a
// matrix S whose rows form a symplectic basis: S G S^T equals the standard
// block form with blocks [[0,1],[-1,0]].
inline Mat symplectic_basis(const FieldTable& F, const Mat& G) {
    int k = (int)G.size();
    if (k % 2) throw InvalidParameter("symplectic_basis: odd dimension");
    auto form = [&](const Vec& x, const Vec& y) {
        FElem s = 0;
        for (int i = 0; i < k; ++i) {
            if (!x[i]) continue;
            FElem t = 0;
            for (int j = 0; j < k; ++j) t = F.add(t, F.mul(G[i][j], y[j]));
            s = F.add(s, F.mul(x[i], t));
        }
        return s;
    };
    // working set: standard basis vectors, reduced as pairs are extracted
    Mat rest;
    for (int i = 0; i < k; ++i) {
        Vec e(k, 0);
        e[i] = 1;
        rest.push_back(e);
    }
    Mat out;
    while (!rest.empty()) {
        Vec u = rest.front();
        rest.erase(rest.begin());
        int vi = -1;
        for (size_t i = 0; i < rest.size(); ++i)
            if (form(u, rest[i]) != 0) { vi = (int)i; break; }
        if (vi < 0) throw InvalidParameter("symplectic_basis: degenerate form");
        Vec v = rest[vi];
        rest.erase(rest.begin() + vi);
        // scale v so that form(u,v) = 1
        v = F.scale_vec(F.inv(form(u, v)), v);
        out.push_back(u);
        out.push_back(v);
        // make the rest perpendicular to u and v
        for (auto& w : rest) {
            FElem cu = form(w, v); // coefficient for u
            FElem cv = form(w, u); // coefficient for v
            // w' = w - form(w,v)/form(u,v) u + ... ; with form(u,v)=1:
            // w' = w - form(w,v) u + form(w,u) v  (signs per alternating form)
            Vec wp = w;
            wp = F.add_vec(wp, F.scale_vec(F.neg(cu), u));
            Vec corr = F.scale_vec(cv, v);
            // form(v,u) = -1, so adding form(w,u) v fixes perpendicularity to v
            wp = F.add_vec(wp, corr);
            w = wp;
        }
    }
    return out;
}

} // namespace geomforge

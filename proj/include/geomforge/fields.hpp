#pragma once

// Exact arithmetic for GF(q), q in {2,3,4}, plus bilinear / alternating /
// hermitian forms and quadratic forms (needed for quadrics in
// characteristic 2, where the bilinear polarization loses information).
//
// Field elements are small integers 0..q-1.  In GF(4) we fix w := 2 and
// w^2 := 3, with w^2 = w + 1.  All arithmetic goes through precomputed
// tables; there is no floating point anywhere.

#include <algorithm>
#include <array>
#include <cstdint>
#include <vector>

#include "errors.hpp"

namespace geomforge {

using FElem = std::uint8_t;
using Vec = std::vector<FElem>;

class FieldTable {
public:
    static const FieldTable& get(int q) {
        switch (q) {
        case 2: { static const FieldTable f2(2); return f2; }
        case 3: { static const FieldTable f3(3); return f3; }
        case 4: { static const FieldTable f4(4); return f4; }
        default: throw UnsupportedOrder("GF(" + std::to_string(q) + ") not supported");
        }
    }

    int order() const { return q_; }
    int characteristic() const { return p_; }

    FElem add(FElem a, FElem b) const { return add_[a * q_ + b]; }
    FElem sub(FElem a, FElem b) const { return add(a, neg_[b]); }
    FElem neg(FElem a) const { return neg_[a]; }
    FElem mul(FElem a, FElem b) const { return mul_[a * q_ + b]; }
    FElem inv(FElem a) const {
        if (a == 0) throw InvalidParameter("inverse of zero");
        return inv_[a];
    }
    // x -> x^sqrt(q) when q is a square, identity otherwise.
    FElem conj(FElem a) const { return conj_[a]; }

    bool is_zero_vec(const Vec& v) const {
        for (FElem x : v) if (x) return false;
        return true;
    }

    Vec add_vec(const Vec& u, const Vec& v) const {
        Vec r(u.size());
        for (size_t i = 0; i < u.size(); ++i) r[i] = add(u[i], v[i]);
        return r;
    }

    Vec scale_vec(FElem c, const Vec& v) const {
        Vec r(v.size());
        for (size_t i = 0; i < v.size(); ++i) r[i] = mul(c, v[i]);
        return r;
    }

private:
    explicit FieldTable(int q) : q_(q) {
        p_ = (q == 4) ? 2 : q;
        add_.resize(q * q);
        mul_.resize(q * q);
        neg_.resize(q);
        inv_.resize(q);
        conj_.resize(q);
        if (q == 2 || q == 3) {
            for (int a = 0; a < q; ++a) {
                for (int b = 0; b < q; ++b) {
                    add_[a * q + b] = FElem((a + b) % q);
                    mul_[a * q + b] = FElem((a * b) % q);
                }
                neg_[a] = FElem((q - a) % q);
                conj_[a] = FElem(a);
            }
        } else {
            // GF(4) = GF(2)[w]/(w^2+w+1); elements 0,1,w=2,w^2=3.
            // Addition is xor of the 2-bit representations (0,1,2,3 encode
            // 0, 1, w, w+1).
            auto mul4 = [](int a, int b) -> int {
                if (a == 0 || b == 0) return 0;
                // log table base w: 1 -> 0, w -> 1, w^2 -> 2
                static constexpr std::array<int, 4> lg = {0, 0, 1, 2};
                static constexpr std::array<int, 3> ex = {1, 2, 3};
                return ex[(lg[a] + lg[b]) % 3];
            };
            for (int a = 0; a < 4; ++a) {
                for (int b = 0; b < 4; ++b) {
                    add_[a * 4 + b] = FElem(a ^ b);
                    mul_[a * 4 + b] = FElem(mul4(a, b));
                }
                neg_[a] = FElem(a);
                conj_[a] = FElem(mul4(a, a)); // Frobenius x -> x^2
            }
        }
        for (int a = 1; a < q; ++a)
            for (int b = 1; b < q; ++b)
                if (mul(FElem(a), FElem(b)) == 1) inv_[a] = FElem(b);
    }

    int q_, p_;
    std::vector<FElem> add_, mul_, neg_, inv_, conj_;
};

inline FElem dot_row(const FieldTable& F, const Vec& row, const Vec& v) {
    FElem s = 0;
    for (size_t j = 0; j < row.size(); ++j) s = F.add(s, F.mul(row[j], v[j]));
    return s;
}

// ---------------------------------------------------------------------------
// Sesquilinear / bilinear forms

enum class FormKind { SymmetricBilinear, Alternating, Hermitian };

struct Form {
    FormKind kind;
    int n = 0;
    const FieldTable* F = nullptr;
    std::vector<Vec> gram; // n x n

    // f(u,v) = sum_ij u_i G_ij sigma(v_j), sigma = conj for hermitian forms.
    FElem eval(const Vec& u, const Vec& v) const {
        if ((int)u.size() != n || (int)v.size() != n)
            throw DimensionMismatch("eval_form: vector length != form dimension");
        FElem s = 0;
        for (int i = 0; i < n; ++i) {
            if (u[i] == 0) continue;
            FElem t = 0;
            for (int j = 0; j < n; ++j) {
                FElem vj = (kind == FormKind::Hermitian) ? F->conj(v[j]) : v[j];
                t = F->add(t, F->mul(gram[i][j], vj));
            }
            s = F->add(s, F->mul(u[i], t));
        }
        return s;
    }

    bool check_symmetry() const {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                switch (kind) {
                case FormKind::SymmetricBilinear:
                    if (gram[i][j] != gram[j][i]) return false;
                    break;
                case FormKind::Alternating:
                    if (gram[i][j] != F->neg(gram[j][i])) return false;
                    if (i == j && gram[i][j] != 0) return false;
                    break;
                case FormKind::Hermitian:
                    if (gram[i][j] != F->conj(gram[j][i])) return false;
                    break;
                }
            }
        return true;
    }

    bool nonsingular() const {
        // Gaussian elimination over the field.
        std::vector<Vec> m = gram;
        int r = 0;
        for (int c = 0; c < n && r < n; ++c) {
            int piv = -1;
            for (int i = r; i < n; ++i)
                if (m[i][c]) { piv = i; break; }
            if (piv < 0) return false;
            std::swap(m[piv], m[r]);
            FElem ic = F->inv(m[r][c]);
            for (int j = 0; j < n; ++j) m[r][j] = F->mul(m[r][j], ic);
            for (int i = 0; i < n; ++i) {
                if (i == r || !m[i][c]) continue;
                FElem f = m[i][c];
                for (int j = 0; j < n; ++j)
                    m[i][j] = F->sub(m[i][j], F->mul(f, m[r][j]));
            }
            ++r;
        }
        return r == n;
    }
};

// Quadratic form, used for quadrics in characteristic 2.  Q(v) is stored via
// an upper-triangular coefficient matrix; the polarization
// B(u,v) = Q(u+v) - Q(u) - Q(v) is exposed as a bilinear Form.
struct QuadraticForm {
    int n = 0;
    const FieldTable* F = nullptr;
    std::vector<Vec> coeff; // upper triangular, Q(v) = sum_{i<=j} c_ij v_i v_j

    FElem eval(const Vec& v) const {
        if ((int)v.size() != n)
            throw DimensionMismatch("QuadraticForm::eval: bad length");
        FElem s = 0;
        for (int i = 0; i < n; ++i) {
            if (v[i] == 0) continue;
            for (int j = i; j < n; ++j)
                if (coeff[i][j] && v[j])
                    s = F->add(s, F->mul(coeff[i][j], F->mul(v[i], v[j])));
        }
        return s;
    }

    Form polarization() const {
        Form b;
        b.kind = FormKind::SymmetricBilinear;
        b.n = n;
        b.F = F;
        b.gram.assign(n, Vec(n, 0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i == j) {
                    // B(e_i,e_i) = 2 c_ii
                    b.gram[i][j] = F->add(coeff[i][i], coeff[i][i]);
                } else {
                    b.gram[i][j] = coeff[std::min(i, j)][std::max(i, j)];
                }
            }
        if (F->characteristic() == 2) b.kind = FormKind::Alternating;
        return b;
    }
};

// ---------------------------------------------------------------------------
// Projective points

// Normalizes v so that its first nonzero coordinate is 1; v must be nonzero.
inline Vec normalize_point(const FieldTable& F, Vec v) {
    for (size_t i = 0; i < v.size(); ++i) {
        if (v[i]) {
            FElem c = F.inv(v[i]);
            for (size_t j = i; j < v.size(); ++j) v[j] = F.mul(c, v[j]);
            return v;
        }
    }
    throw InvalidParameter("normalize_point: zero vector");
}

// All points of PG(n-1, q), normalized, in lexicographic order.
inline std::vector<Vec> projective_points(const FieldTable& F, int n) {
    std::vector<Vec> pts;
    Vec v(n, 0);
    // Representatives: first nonzero coordinate = 1.
    for (int lead = 0; lead < n; ++lead) {
        v.assign(n, 0);
        v[lead] = 1;
        // enumerate the tail in lexicographic order
        int tail = n - lead - 1;
        std::vector<int> digits(tail, 0);
        while (true) {
            for (int i = 0; i < tail; ++i) v[lead + 1 + i] = FElem(digits[i]);
            pts.push_back(v);
            int i = tail - 1;
            while (i >= 0 && digits[i] == F.order() - 1) { digits[i] = 0; --i; }
            if (i < 0) break;
            ++digits[i];
        }
    }
    std::sort(pts.begin(), pts.end());
    return pts;
}

enum class PointClass { Isotropic, Plus, Minus, Nonisotropic };

// Class of f(v,v).  Over GF(3) symmetric forms: 1 -> Plus, 2 -> Minus.
// Otherwise a nonzero value is Nonisotropic; the class is representative
// independent for the supported forms.
inline PointClass point_class(const Form& f, const Vec& v) {
    FElem x = f.eval(v, v);
    if (x == 0) return PointClass::Isotropic;
    if (f.F->order() == 3 && f.kind == FormKind::SymmetricBilinear)
        return x == 1 ? PointClass::Plus : PointClass::Minus;
    if (f.kind == FormKind::Hermitian || f.kind == FormKind::SymmetricBilinear)
        return PointClass::Nonisotropic;
    throw UnsupportedClassification("point_class: unsupported form kind");
}

// ---------------------------------------------------------------------------
// Standard Gram matrices / named forms

inline Form gf3_symmetric(int n, int eps) {
    if (n < 1 || (eps != 1 && eps != -1))
        throw InvalidParameter("gf3_symmetric: need n >= 1, eps = +-1");
    const FieldTable& F = FieldTable::get(3);
    Form f;
    f.kind = FormKind::SymmetricBilinear;
    f.n = n;
    f.F = &F;
    f.gram.assign(n, Vec(n, 0));
    for (int i = 0; i < n; ++i) f.gram[i][i] = 1;
    if (eps == -1) f.gram[n - 1][n - 1] = 2; // det = 2 = -1
    return f;
}

inline Form gf4_hermitian(int n) {
    const FieldTable& F = FieldTable::get(4);
    Form f;
    f.kind = FormKind::Hermitian;
    f.n = n;
    f.F = &F;
    f.gram.assign(n, Vec(n, 0));
    for (int i = 0; i < n; ++i) f.gram[i][i] = 1;
    return f;
}

// f(x,y) = x1 y4 - x2 y3 + x3 y2 - x4 y1, the alternating form defining W(s).
inline Form w_form(int q) {
    const FieldTable& F = FieldTable::get(q);
    Form f;
    f.kind = FormKind::Alternating;
    f.n = 4;
    f.F = &F;
    f.gram.assign(4, Vec(4, 0));
    f.gram[0][3] = 1;
    f.gram[1][2] = F.neg(1);
    f.gram[2][1] = 1;
    f.gram[3][0] = F.neg(1);
    return f;
}

// Standard alternating form on GF(q)^n (n even): hyperbolic pairs
// (e1,e2),(e3,e4),...
inline Form symplectic_form(int q, int n) {
    if (n % 2) throw InvalidParameter("symplectic_form: n must be even");
    const FieldTable& F = FieldTable::get(q);
    Form f;
    f.kind = FormKind::Alternating;
    f.n = n;
    f.F = &F;
    f.gram.assign(n, Vec(n, 0));
    for (int i = 0; i + 1 < n; i += 2) {
        f.gram[i][i + 1] = 1;
        f.gram[i + 1][i] = F.neg(1);
    }
    return f;
}

// Hyperbolic quadratic form x1x2 + x3x4 + ... on GF(q)^n, n even.
inline QuadraticForm quadric_plus(int q, int n) {
    if (n % 2) throw InvalidParameter("quadric_plus: n must be even");
    QuadraticForm Q;
    Q.n = n;
    Q.F = &FieldTable::get(q);
    Q.coeff.assign(n, Vec(n, 0));
    for (int i = 0; i + 1 < n; i += 2) Q.coeff[i][i + 1] = 1;
    return Q;
}

// Elliptic quadratic form x1x2 + ... + x_{n-3}x_{n-2} + h(x_{n-1}, x_n)
// with h irreducible over GF(q).
inline QuadraticForm quadric_minus(int q, int n) {
    if (n % 2) throw InvalidParameter("quadric_minus: n must be even");
    QuadraticForm Q;
    Q.n = n;
    Q.F = &FieldTable::get(q);
    Q.coeff.assign(n, Vec(n, 0));
    for (int i = 0; i + 1 < n - 2; i += 2) Q.coeff[i][i + 1] = 1;
    // h(x,y) = x^2 + xy + c y^2 with t^2+t+c irreducible.
    // q=2: c=1; q=4: c=w works (t^2+t+w has no root in GF(4)).
    FElem c = (q == 4) ? FElem(2) : FElem(1);
    if (q == 3) { // x^2 + y^2 is anisotropic over GF(3)
        Q.coeff[n - 2][n - 2] = 1;
        Q.coeff[n - 1][n - 1] = 1;
    } else {
        Q.coeff[n - 2][n - 2] = 1;
        Q.coeff[n - 2][n - 1] = 1;
        Q.coeff[n - 1][n - 1] = c;
    }
    return Q;
}

} // namespace geomforge

#pragma once

// Hyperoval classification of the rank-3 polar spaces over GF(4).
//
// Q5+(4) and H5(4) are handled by a hierarchical seeded search: up to the
// (computationally verified) edge-transitive symmetry, a hyperoval contains
// a fixed edge {x0,y0}, and its trace on the double perp x0^perp /\ y0^perp
// is a hyperoval of that subsystem.  The search enumerates all such traces
// and extends every one of them with the trace pinned exactly, so the pool
// contains a representative of every type.  The pool is partitioned into
// types by sweeping orbits of the verified automorphisms (every member is
// then equivalent to its representative by an explicit group element) and
// merging any orbit representatives whose ambient colored certificates
// coincide.
//
// S5(4) is handled through its hyperbolic quadric: a hyperoval would meet a
// fixed Q5+(4) subspace in a hyperoval of it, so placements of the Q5+(4)
// representatives through a fixed point are extended; none extends.
// Q7-(4) reduces to S5(4) via nondegenerate hyperplane sections, which are
// isomorphic to S5(4) by explicit nucleus projection.  H6(4) is ruled out
// by the two counting equations over its hyperplane sections.

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "canon.hpp"
#include "errors.hpp"
#include "fields.hpp"
#include "geometry.hpp"
#include "graph.hpp"
#include "groupgens.hpp"
#include "hyperovals.hpp"
#include "linalg.hpp"
#include "spaces.hpp"

namespace geomforge {

struct Rank3Census {
    std::string kind;
    std::vector<TypeReport> types; // empty when no hyperovals exist
    long long seed_sections = 0;   // traces on the double perp
    long long completions = 0;     // distinct hyperovals found across all seeds
    long long orbits_swept = 0;    // group-orbit classes before certificate merge
};

// Partitions the census by orbits of <gens> (explicit automorphisms), then
// merges orbit representatives with equal ambient colored certificates; the
// result is exactly the partition by certificate class.
inline std::vector<TypeReport> classify_types_by_orbit(const Geometry& geo, const Graph& g,
                                                       const std::vector<Perm>& gens,
                                                       const std::vector<Hyperoval>& census,
                                                       long long* orbits_out = nullptr,
                                                       size_t orbit_cap = 6000000) {
    int W = (g.n + 63) / 64;
    auto key_of = [&](const std::vector<int>& pts) {
        std::string k(W * 8, '\0');
        for (int p : pts)
            k[(p >> 6) * 8 + ((p & 63) >> 3)] |= char(1 << (p & 7));
        return k;
    };
    auto apply_gen = [&](const std::string& k, const Perm& perm) {
        std::string r(W * 8, '\0');
        for (int w = 0; w < W * 8; ++w) {
            unsigned char byte = (unsigned char)k[w];
            while (byte) {
                int b = __builtin_ctz(byte);
                byte &= byte - 1;
                int v = perm[w * 8 + b];
                r[(v >> 6) * 8 + ((v & 63) >> 3)] |= char(1 << (v & 7));
            }
        }
        return r;
    };
    std::unordered_map<std::string, int> orbit_of;
    std::vector<Hyperoval> reps;
    std::vector<long long> counts;
    for (const auto& h : census) {
        std::string k = key_of(h.pts);
        auto it = orbit_of.find(k);
        if (it != orbit_of.end()) {
            counts[it->second] += 1;
            continue;
        }
        int id = (int)reps.size();
        reps.push_back(h);
        counts.push_back(1);
        std::vector<std::string> queue{k};
        orbit_of.emplace(k, id);
        for (size_t head = 0; head < queue.size(); ++head) {
            for (const auto& perm : gens) {
                std::string img = apply_gen(queue[head], perm);
                if (orbit_of.emplace(img, id).second) {
                    if (orbit_of.size() > orbit_cap)
                        throw Infeasible("classify_types_by_orbit: orbit cap exceeded");
                    queue.push_back(img);
                }
            }
        }
    }
    if (orbits_out) *orbits_out = (long long)reps.size();
    // merge orbit classes with equal ambient certificates
    std::map<std::string, TypeReport> by_cert;
    for (size_t i = 0; i < reps.size(); ++i) {
        auto cert = canonical_form(g, Coloring::mark_subset(g.n, reps[i].pts));
        auto it = by_cert.find(cert.bytes);
        if (it == by_cert.end()) {
            TypeReport t;
            t.representative = reps[i];
            t.size = (int)reps[i].pts.size();
            t.count = counts[i];
            t.certificate_digest = cert.digest_hex();
            by_cert.emplace(cert.bytes, std::move(t));
        } else {
            it->second.count += counts[i];
            if (reps[i].pts < it->second.representative.pts)
                it->second.representative = reps[i];
        }
    }
    std::vector<TypeReport> out;
    for (auto& [k, v] : by_cert) out.push_back(std::move(v));
    std::sort(out.begin(), out.end(), [](const TypeReport& a, const TypeReport& b) {
        if (a.size != b.size) return a.size < b.size;
        return a.certificate_digest < b.certificate_digest;
    });
    for (auto& t : out) t.outside_profile = outside_profile(g, t.representative.pts);
    return out;
}

// Hierarchical search for Q5plus4 / H5_4.  `gens` must be verified
// line-preserving automorphisms witnessing point- and edge-transitivity.
inline Rank3Census rank3_hierarchical_search(const Geometry& geo,
                                             const std::vector<Perm>& gens,
                                             const SearchLimits& lim = {},
                                             bool verbose = false) {
    Rank3Census out;
    out.kind = geo.kind;
    auto note = [&](const std::string& msg) {
        if (verbose) {
            std::fprintf(stderr, "[rank3 %s] %s\n", geo.kind.c_str(), msg.c_str());
            std::fflush(stderr);
        }
    };
    Graph g = collinearity_graph(geo);
    for (const auto& p : gens)
        if (!perm_acts_as_automorphism(p, g) || !preserves_lines(geo, p))
            throw NotAutomorphisms("rank3 search: generator check failed");
    if (!gens_transitive(g.n, gens))
        throw Infeasible("rank3 search: supplied generators not point-transitive");
    if (!gens_edge_transitive(g, gens))
        throw Infeasible("rank3 search: supplied generators not edge-transitive");
    int x0 = 0;
    int y0 = g.neighbors(0).front();
    // double perp: {x0, y0} with their common neighbors
    std::vector<int> dpts;
    {
        const std::uint64_t* ru = g.row(x0);
        const std::uint64_t* rv = g.row(y0);
        for (int w = 0; w < g.words; ++w) {
            std::uint64_t x = ru[w] & rv[w];
            while (x) { dpts.push_back(w * 64 + __builtin_ctzll(x)); x &= x - 1; }
        }
    }
    dpts.push_back(x0);
    dpts.push_back(y0);
    std::sort(dpts.begin(), dpts.end());
    Geometry sub = restriction(geo, dpts);
    int xl = (int)(std::lower_bound(dpts.begin(), dpts.end(), x0) - dpts.begin());
    int yl = (int)(std::lower_bound(dpts.begin(), dpts.end(), y0) - dpts.begin());
    note("double perp has " + std::to_string(sub.num_points()) + " points, " +
         std::to_string(sub.lines.size()) + " lines");
    // traces of hyperovals on the double perp: hyperovals of `sub` on the edge
    auto sections = search_hyperovals(sub, {xl, yl}, {}, lim);
    out.seed_sections = (long long)sections.size();
    note(std::to_string(out.seed_sections) + " edge sections");
    // extend every trace with the trace pinned exactly
    std::set<std::vector<int>> all;
    long long seedno = 0;
    for (const auto& sec : sections) {
        std::vector<int> rep;
        for (int p : sec.pts) rep.push_back(dpts[p]);
        std::sort(rep.begin(), rep.end());
        std::vector<int> forb;
        std::set_difference(dpts.begin(), dpts.end(), rep.begin(), rep.end(),
                            std::back_inserter(forb));
        auto res = search_hyperovals(geo, rep, forb, lim);
        for (const auto& h : res) all.insert(h.pts);
        ++seedno;
        if (verbose && seedno % 16 == 0)
            note("seed " + std::to_string(seedno) + "/" + std::to_string(out.seed_sections) +
                 ": pool " + std::to_string(all.size()));
    }
    out.completions = (long long)all.size();
    std::vector<Hyperoval> census;
    for (auto& pts : all) {
        if (!is_hyperoval(geo, pts))
            throw Error("rank3 search: post-hoc 0-or-2 verification failed");
        census.push_back({pts});
    }
    note("classifying " + std::to_string(census.size()) + " hyperovals by orbit");
    out.types = classify_types_by_orbit(geo, g, gens, census, &out.orbits_swept);
    note("done: " + std::to_string(out.types.size()) + " types from " +
         std::to_string(out.orbits_swept) + " orbits");
    return out;
}

inline Rank3Census rank3_q5plus(bool verbose = false, const SearchLimits& lim = {}) {
    Geometry geo = polar_space(PolarKind::Q5plus4);
    Graph g = collinearity_graph(geo);
    auto gens = char2_reflection_gens(geo, quadric_plus(4, 6), &g);
    return rank3_hierarchical_search(geo, gens, lim, verbose);
}

inline Rank3Census rank3_h5(bool verbose = false, const SearchLimits& lim = {}) {
    Geometry geo = polar_space(PolarKind::H5_4);
    Graph g = collinearity_graph(geo);
    auto gens = unitary_transvection_gens(geo, gf4_hermitian(6), &g);
    return rank3_hierarchical_search(geo, gens, lim, verbose);
}

// ---------------------------------------------------------------------------
// S5(4): no hyperovals, via the Q5+(4) subspace.

struct EmptinessReport {
    std::string kind;
    bool empty = true;
    long long seeds_tried = 0;
    std::vector<Hyperoval> counterexamples; // would falsify the claim
    std::string method;
};

inline EmptinessReport s5_no_hyperovals(const Rank3Census& q5census,
                                        const SearchLimits& lim = {}, bool verbose = false) {
    EmptinessReport rep;
    rep.kind = "S5_4";
    rep.method = "restriction to a hyperbolic-quadric subspace";
    Geometry geoS = polar_space(PolarKind::S5_4);
    Geometry geoQ = polar_space(PolarKind::Q5plus4);
    // check: the polarization of the quadric is the symplectic form, the
    // quadric points are S5(4) points and the quadric lines are exactly the
    // S5(4) lines inside the quadric
    std::vector<int> qpts_in_s;
    for (const auto& p : geoQ.points) {
        int idx = geoS.point_index(p);
        if (idx < 0) throw ConstantsMismatch("s5: quadric point missing from S5(4)");
        qpts_in_s.push_back(idx);
    }
    {
        Geometry restr = restriction(geoS, qpts_in_s);
        if (restr.lines != geoQ.lines)
            throw ConstantsMismatch("s5: quadric subspace lines do not match Q5+(4)");
    }
    // wlog x0 in O for a fixed quadric point x0: the symplectic group is
    // point-transitive (verified), so O /\ Q is then a nonempty hyperoval of
    // Q5+(4) through x0
    Graph gS = collinearity_graph(geoS);
    auto sgens = symplectic_transvection_gens(geoS, symplectic_form(4, 6));
    if (!gens_transitive(gS.n, sgens))
        throw Infeasible("s5: transvections not point-transitive");
    int x0_q = 0; // quadric index; maps to geoS via qpts_in_s
    auto qgens = char2_reflection_gens(geoQ, quadric_plus(4, 6));
    if (!gens_transitive(geoQ.num_points(), qgens))
        throw Infeasible("s5: quadric reflections not point-transitive");
    auto witness = orbit_with_witness(geoQ.num_points(), x0_q, qgens);
    Graph gQ = collinearity_graph(geoQ);
    for (const auto& t : q5census.types) {
        // placement reps: orbits of the marked points under verified
        // line-preserving automorphisms of the marked quadric
        auto cert = canonical_form(gQ, Coloring::mark_subset(gQ.n, t.representative.pts));
        std::vector<Perm> kept;
        for (const auto& gamma : cert.generators)
            if (preserves_lines(geoQ, gamma)) kept.push_back(gamma);
        UnionFind uf(gQ.n);
        for (const auto& gamma : kept)
            for (int v = 0; v < gQ.n; ++v) uf.unite(v, gamma[v]);
        std::set<int> placements;
        for (int p : t.representative.pts) placements.insert(uf.find(p));
        for (int p : placements) {
            const Perm* w = witness.witness_for(p);
            if (!w) throw Infeasible("s5: no witness mapping x0 to placement point");
            Perm winv = perm_inverse(*w); // maps p -> x0
            std::vector<int> placed;
            for (int q : t.representative.pts) placed.push_back(qpts_in_s[winv[q]]);
            std::sort(placed.begin(), placed.end());
            std::vector<int> forb;
            std::vector<int> qall = qpts_in_s;
            std::sort(qall.begin(), qall.end());
            std::set_difference(qall.begin(), qall.end(), placed.begin(), placed.end(),
                                std::back_inserter(forb));
            rep.seeds_tried += 1;
            if (verbose)
                std::fprintf(stderr, "[s5] extending placement %lld (size %d)\n",
                             rep.seeds_tried, t.size);
            for (const auto& h : search_hyperovals(geoS, placed, forb, lim))
                rep.counterexamples.push_back(h);
        }
    }
    rep.empty = rep.counterexamples.empty();
    return rep;
}

// ---------------------------------------------------------------------------
// Q7-(4): no hyperovals, via S5(4) hyperplane sections.

inline EmptinessReport q7minus_no_hyperovals(bool s5_is_empty) {
    EmptinessReport rep;
    rep.kind = "Q7minus4";
    rep.method = "nondegenerate hyperplane sections isomorphic to S5(4)";
    if (!s5_is_empty) throw PreconditionViolated("q7minus: S5(4) emptiness not established");
    const FieldTable& F = FieldTable::get(4);
    QuadraticForm Q = quadric_minus(4, 8);
    Form B = Q.polarization();
    Geometry geo = polar_space(PolarKind::Q7minus4);
    // pick a nonsingular point w0; the section by w0^perp is a parabolic
    // quadric whose nucleus is w0 itself
    Vec w0;
    for (const auto& p : projective_points(F, 8))
        if (Q.eval(p) != 0) { w0 = p; break; }
    std::vector<int> sec = perp_section(geo, B, w0);
    if ((int)sec.size() != 1365)
        throw ConstantsMismatch("q7minus: section has " + std::to_string(sec.size()) +
                                " points, expected 1365");
    Geometry sub = restriction(geo, sec);
    // nucleus projection: coordinates on w0^perp / <w0>
    Mat hb = perp_hyperplane_basis(F, B, w0); // 7 vectors spanning w0^perp
    // complement basis of <w0> inside w0^perp
    Mat basis{w0};
    for (const auto& b : hb) {
        Mat trial = basis;
        trial.push_back(b);
        if (mat_rank(F, trial) == (int)trial.size()) basis = trial;
        if (basis.size() == 7) break;
    }
    if (basis.size() != 7) throw ConstantsMismatch("q7minus: complement basis not found");
    Mat comp(basis.begin() + 1, basis.end()); // complement of <w0> in w0^perp
    // Gram of the descended alternating form on the complement coordinates
    Mat G(6, Vec(6, 0));
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) G[i][j] = B.eval(comp[i], comp[j]);
    Mat sympl = symplectic_basis(F, G); // rows: coords w.r.t. comp
    Mat rows;
    for (int i = 0; i < 6; ++i) {
        Vec r(8, 0);
        for (int j = 0; j < 6; ++j) r = F.add_vec(r, F.scale_vec(sympl[i][j], comp[j]));
        rows.push_back(r);
    }
    rows.push_back(w0);
    for (const auto& p : projective_points(F, 8)) {
        if (B.eval(p, w0) == 0) continue;
        rows.push_back(p);
        break;
    }
    Mat inv = mat_inverse(F, rows);
    Geometry geoS = polar_space(PolarKind::S5_4);
    auto project = [&](const Vec& v) {
        // coordinates of v in the `rows` basis: c = (rows^T)^{-1} v = inv^T v
        Vec c(8, 0);
        for (int i = 0; i < 8; ++i) {
            FElem s = 0;
            for (int j = 0; j < 8; ++j) s = F.add(s, F.mul(inv[j][i], v[j]));
            c[i] = s;
        }
        return Vec(c.begin(), c.begin() + 6);
    };
    // the projection must send the section points bijectively onto the
    // S5(4) points and section lines onto S5(4) lines
    std::vector<int> image(sub.num_points(), -1);
    std::vector<char> hit(geoS.num_points(), 0);
    for (int i = 0; i < sub.num_points(); ++i) {
        Vec c = project(sub.points[i]);
        if (F.is_zero_vec(c))
            throw ConstantsMismatch("q7minus: section point projects to zero");
        int idx = geoS.point_index(normalize_point(F, c));
        if (idx < 0 || hit[idx]) throw ConstantsMismatch("q7minus: projection not bijective");
        hit[idx] = 1;
        image[i] = idx;
    }
    for (const auto& l : sub.lines) {
        std::vector<int> img;
        for (int q : l) img.push_back(image[q]);
        std::sort(img.begin(), img.end());
        if (!std::binary_search(geoS.lines.begin(), geoS.lines.end(), img))
            throw ConstantsMismatch("q7minus: section line does not map to an S5(4) line");
    }
    if (sub.lines.size() != geoS.lines.size())
        throw ConstantsMismatch("q7minus: section line count mismatch");
    // every point of Q7-(4) lies in some nondegenerate hyperplane section
    for (int i = 0; i < geo.num_points(); ++i) {
        bool ok = false;
        for (const auto& w : projective_points(F, 8)) {
            if (Q.eval(w) == 0) continue;
            if (B.eval(geo.points[i], w) == 0) { ok = true; break; }
        }
        if (!ok) throw ConstantsMismatch("q7minus: point avoids all sections");
        rep.seeds_tried += 1;
    }
    rep.empty = true;
    return rep;
}

// ---------------------------------------------------------------------------
// H6(4): the counting argument.

struct H6Proof {
    long long sections = 0;        // H5(4)-type hyperplane sections
    long long per_point = 0;       // sections through a point
    long long per_noncoll_pair = 0;
    std::vector<std::pair<long long, long long>> eq1_only_solutions; // (|O|, a)
    bool joint_solution_exists = false;
};

inline H6Proof h6_counting_check() {
    const FieldTable& F = FieldTable::get(4);
    Form f = gf4_hermitian(7);
    Geometry geo = polar_space(PolarKind::H6_4);
    int P = geo.num_points();
    // nonisotropic points index the H5(4)-type hyperplane sections
    std::vector<Vec> noniso;
    for (const auto& p : projective_points(F, 7))
        if (f.eval(p, p) != 0) noniso.push_back(p);
    H6Proof proof;
    proof.sections = (long long)noniso.size();
    if (proof.sections != 2752)
        throw ConstantsMismatch("h6: expected 2752 sections, got " +
                                std::to_string(proof.sections));
    // per point: bitset over sections perpendicular to each geometry point
    int W = ((int)noniso.size() + 63) / 64;
    std::vector<std::uint64_t> bits((size_t)P * W, 0);
    // transformed vectors for fast evaluation: f(p, w) = p . conj(w)
    std::vector<Vec> tw(noniso.size(), Vec(7, 0));
    for (size_t j = 0; j < noniso.size(); ++j)
        for (int r = 0; r < 7; ++r) tw[j][r] = F.conj(noniso[j][r]); // identity Gram
    for (int i = 0; i < P; ++i) {
        long long cnt = 0;
        for (int j = 0; j < (int)noniso.size(); ++j) {
            if (dot_row(F, geo.points[i], tw[j]) == 0) {
                bits[(size_t)i * W + j / 64] |= 1ull << (j % 64);
                ++cnt;
            }
        }
        if (proof.per_point == 0) proof.per_point = cnt;
        else if (proof.per_point != cnt)
            throw ConstantsMismatch("h6: section count through points not constant");
    }
    if (proof.per_point != 704)
        throw ConstantsMismatch("h6: expected 704 sections per point");
    // per noncollinear pair (collinear = perpendicular for isotropic points)
    Graph g = collinearity_graph(geo);
    for (int i = 0; i < P; ++i) {
        const std::uint64_t* bi = bits.data() + (size_t)i * W;
        for (int j = i + 1; j < P; ++j) {
            if (g.has_edge(i, j)) continue;
            const std::uint64_t* bj = bits.data() + (size_t)j * W;
            long long c = 0;
            for (int w = 0; w < W; ++w) c += __builtin_popcountll(bi[w] & bj[w]);
            if (proof.per_noncoll_pair == 0) proof.per_noncoll_pair = c;
            else if (proof.per_noncoll_pair != c)
                throw ConstantsMismatch("h6: pair section count not constant");
        }
    }
    if (proof.per_noncoll_pair != 176)
        throw ConstantsMismatch("h6: expected 176 sections per noncollinear pair");
    // the two equations: with a = number of 162-point subhyperovals,
    //   704|O| = 162a + 126(2752-a)
    //   176|O|(|O|-166) = 162*116*a + 126*80*(2752-a)
    for (long long sz = 1; sz <= P; ++sz) {
        for (long long a = 0; a <= proof.sections; ++a) {
            bool eq1 = 704 * sz == 162 * a + 126 * (2752 - a);
            if (!eq1) continue;
            proof.eq1_only_solutions.push_back({sz, a});
            bool eq2 = 176 * sz * (sz - 166) == 162 * 116 * a + 126 * 80 * (2752 - a);
            if (eq2) proof.joint_solution_exists = true;
        }
    }
    return proof;
}

} // namespace geomforge

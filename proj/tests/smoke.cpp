// Throwaway smoke test used during bring-up (not part of the suite).
#include <cassert>
#include <cstdio>
#include <random>

#include "geomforge/canon.hpp"
#include "geomforge/fields.hpp"
#include "geomforge/graph.hpp"
#include "geomforge/graph6.hpp"
#include "geomforge/permgroup.hpp"

using namespace geomforge;

static Graph petersen() {
    Graph g(10);
    // outer C5, inner pentagram, spokes
    for (int i = 0; i < 5; ++i) {
        g.add_edge(i, (i + 1) % 5);
        g.add_edge(5 + i, 5 + (i + 2) % 5);
        g.add_edge(i, 5 + i);
    }
    return g;
}

static bool brute_iso(const Graph& a, const Graph& b) {
    if (a.n != b.n) return false;
    std::vector<int> p(a.n);
    for (int i = 0; i < a.n; ++i) p[i] = i;
    do {
        bool ok = true;
        for (int u = 0; u < a.n && ok; ++u)
            for (int v = u + 1; v < a.n && ok; ++v)
                if (a.has_edge(u, v) != b.has_edge(p[u], p[v])) ok = false;
        if (ok) return true;
    } while (std::next_permutation(p.begin(), p.end()));
    return false;
}

int main() {
    // fields
    const auto& F3 = FieldTable::get(3);
    assert(F3.add(2, 2) == 1);
    const auto& F4 = FieldTable::get(4);
    assert(F4.mul(2, 3) == 1);       // w * w^2 = 1
    assert(F4.conj(2) == 3);         // conj(w) = w^2
    assert(F4.add(2, 1) == 3);       // w + 1 = w^2

    // point counts
    auto pts6 = projective_points(F4, 6);
    assert((int)pts6.size() == (4 * 4 * 4 * 4 * 4 * 4 - 1) / 3);
    Form h6 = gf4_hermitian(6);
    int iso = 0;
    for (auto& p : pts6)
        if (point_class(h6, p) == PointClass::Isotropic) ++iso;
    printf("H5(4) isotropic points: %d (expect 693)\n", iso);
    assert(iso == 693);

    Form h4 = gf4_hermitian(4);
    auto pts4 = projective_points(F4, 4);
    int iso4 = 0;
    for (auto& p : pts4)
        if (point_class(h4, p) == PointClass::Isotropic) ++iso4;
    assert(iso4 == 45);

    // graph6 round trip
    Graph pg = petersen();
    assert(from_graph6(to_graph6(pg)) == pg);
    Graph big(100);
    big.add_edge(0, 99);
    assert(from_graph6(to_graph6(big)) == big);

    // srg / intersection array
    auto sp = srg_params(pg);
    assert(sp && sp->v == 10 && sp->k == 3 && sp->lambda == 0 && sp->mu == 1);
    auto ia = intersection_array(pg);
    assert(ia && ia->to_string() == "{3,2;1,1}");
    auto ia6 = intersection_array(Graph::cycle(6));
    assert(ia6 && ia6->to_string() == "{2,1,1;1,1,2}");

    // canon: Petersen automorphisms
    auto cert = canonical_form(pg);
    auto grp = group_closure(cert.generators.empty() ? std::vector<Perm>{perm_identity(10)}
                                                     : cert.generators);
    printf("Petersen |Aut| via closure: %lld (expect 120), gens %zu\n", grp.order(),
           cert.generators.size());
    assert(grp.order() == 120);

    // canon vs brute force on random graphs
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 300; ++trial) {
        int n = 1 + (int)(rng() % 7);
        Graph a(n);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng() & 1) a.add_edge(u, v);
        // permuted copy
        std::vector<int> p(n);
        for (int i = 0; i < n; ++i) p[i] = i;
        std::shuffle(p.begin(), p.end(), rng);
        Graph b(n);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (a.has_edge(u, v)) b.add_edge(p[u], p[v]);
        assert(are_isomorphic(a, b));
        // mutated copy
        Graph c = b;
        int u = (int)(rng() % n), v = (int)(rng() % n);
        if (u != v) {
            if (c.has_edge(u, v)) {
                c.row(u)[v >> 6] &= ~(1ull << (v & 63));
                c.row(v)[u >> 6] &= ~(1ull << (u & 63));
            } else {
                c.add_edge(u, v);
            }
            assert(are_isomorphic(a, c) == brute_iso(a, c));
        }
    }
    printf("canon brute-force cross-check OK\n");

    // colored canon: edgeless 3 vertices, all distinct colors -> |Aut| = 1
    Graph e3(3);
    Coloring c3;
    c3.color = {0, 1, 2};
    auto ce = canonical_form(e3, c3);
    assert(ce.generators.empty());

    printf("smoke OK\n");
    return 0;
}

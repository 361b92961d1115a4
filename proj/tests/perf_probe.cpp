// Throwaway performance probe for the canonizer on rank-3 graphs (bring-up only).
#include <chrono>
#include <cstdio>

#include "geomforge/canon.hpp"
#include "geomforge/fields.hpp"
#include "geomforge/graph.hpp"

using namespace geomforge;
using Clock = std::chrono::steady_clock;

static Graph gf3_plus(int n, int eps) {
    const auto& F = FieldTable::get(3);
    Form f = gf3_symmetric(n, eps);
    auto pts = projective_points(F, n);
    std::vector<Vec> plus;
    for (auto& p : pts)
        if (point_class(f, p) == PointClass::Plus) plus.push_back(p);
    Graph g((int)plus.size());
    for (size_t i = 0; i < plus.size(); ++i)
        for (size_t j = i + 1; j < plus.size(); ++j)
            if (f.eval(plus[i], plus[j]) == 0) g.add_edge((int)i, (int)j);
    return g;
}

int main() {
    for (auto [n, eps] : {std::pair{6, 1}, {6, -1}, {7, 1}, {7, -1}, {8, 1}, {8, -1}}) {
        auto t0 = Clock::now();
        Graph g = gf3_plus(n, eps);
        auto t1 = Clock::now();
        auto cert = canonical_form(g);
        auto t2 = Clock::now();
        int orbits = 0;
        for (int v = 0; v < g.n; ++v)
            if (cert.orbit_of[v] == v) ++orbits;
        printf("Sigma^%+d_%d: v=%d k=%d  build %ld ms, canon %ld ms, gens=%zu orbits=%d\n",
               eps, n, g.n, g.degree(0),
               std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count(),
               std::chrono::duration_cast<std::chrono::milliseconds>(t2 - t1).count(),
               cert.generators.size(), orbits);
        fflush(stdout);
        // neighborhood certificate (what is_locally computes per orbit rep)
        auto t3 = Clock::now();
        auto nb = canonical_form(induced(g, g.neighbors(0)));
        auto t4 = Clock::now();
        printf("  neighborhood canon: %ld ms\n",
               std::chrono::duration_cast<std::chrono::milliseconds>(t4 - t3).count());
        fflush(stdout);
    }
    return 0;
}

#pragma once

// Light permutation-group machinery: explicit element closure, conjugacy
// classes of involutions with fixed-subgraph types, pairwise fix tables, and
// orbit counting of subsets by canonical certificate.

#include <algorithm>
#include <map>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "canon.hpp"
#include "errors.hpp"
#include "graph.hpp"

namespace geomforge {

using Perm = std::vector<int>;

inline Perm perm_identity(int n) {
    Perm p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    return p;
}

inline Perm perm_compose(const Perm& a, const Perm& b) {
    // (a*b)(x) = a(b(x))
    Perm r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[b[i]];
    return r;
}

inline Perm perm_inverse(const Perm& a) {
    Perm r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[a[i]] = (int)i;
    return r;
}

inline bool perm_is_identity(const Perm& a) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != (int)i) return false;
    return true;
}

struct PermHash {
    size_t operator()(const Perm& p) const {
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (int x : p) {
            h ^= (std::uint64_t)x;
            h *= 0x100000001b3ull;
        }
        return (size_t)h;
    }
};

struct PermGroupElements {
    int degree = 0;
    std::vector<Perm> gens;
    std::vector<Perm> elements; // full list, closed under product and inverse
    long long order() const { return (long long)elements.size(); }
};

// Full element list by breadth-first closure; throws CapExceeded (with the
// partial count in the message) if the order exceeds `cap`.
inline PermGroupElements group_closure(const std::vector<Perm>& gens, size_t cap = 2000000) {
    PermGroupElements G;
    if (gens.empty()) throw InvalidParameter("group_closure: need at least one generator (use identity)");
    G.degree = (int)gens[0].size();
    for (auto& g : gens)
        if ((int)g.size() != G.degree)
            throw InvalidParameter("group_closure: mixed degrees");
    G.gens = gens;
    std::unordered_set<Perm, PermHash> seen;
    std::vector<Perm> queue;
    Perm id = perm_identity(G.degree);
    seen.insert(id);
    queue.push_back(id);
    for (size_t head = 0; head < queue.size(); ++head) {
        Perm cur = queue[head];
        for (const Perm& g : G.gens) {
            Perm nxt = perm_compose(g, cur);
            if (seen.insert(nxt).second) {
                if (seen.size() > cap)
                    throw CapExceeded("group_closure: order exceeds cap " + std::to_string(cap) +
                                      " (at least " + std::to_string(seen.size()) + " elements)");
                queue.push_back(nxt);
            }
        }
    }
    G.elements = std::move(queue);
    std::sort(G.elements.begin(), G.elements.end());
    return G;
}

inline std::vector<int> fixed_vertices(const Perm& g) {
    std::vector<int> f;
    for (size_t v = 0; v < g.size(); ++v)
        if (g[v] == (int)v) f.push_back((int)v);
    return f;
}

struct InvolutionClass {
    std::vector<Perm> members; // sorted
    Perm representative;
    int fix_count = 0;
    CanonicalCertificate fix_certificate; // of the induced subgraph on Fix(rep)
};

inline bool perm_acts_as_automorphism(const Perm& p, const Graph& g) {
    for (int u = 0; u < g.n; ++u)
        for (int v : g.neighbors(u))
            if (!g.has_edge(p[u], p[v])) return false;
    return true;
}

// Involutions of grp partitioned by conjugacy, each class annotated with the
// isomorphism type of the subgraph induced by the fixed vertices of a
// representative.  Classes are sorted by (size, fix_count) then certificate.
inline std::vector<InvolutionClass> involution_classes(const PermGroupElements& grp,
                                                       const Graph& g) {
    if (grp.degree != g.n)
        throw NotAutomorphisms("involution_classes: degree != vertex count");
    for (const Perm& p : grp.gens)
        if (!perm_acts_as_automorphism(p, g))
            throw NotAutomorphisms("involution_classes: generator is not an automorphism");
    std::vector<Perm> invs;
    for (const Perm& p : grp.elements)
        if (!perm_is_identity(p) && perm_is_identity(perm_compose(p, p)))
            invs.push_back(p);
    std::unordered_set<Perm, PermHash> unassigned(invs.begin(), invs.end());
    std::vector<InvolutionClass> classes;
    for (const Perm& seed : invs) {
        if (!unassigned.count(seed)) continue;
        // conjugacy orbit by BFS over generator conjugation
        std::vector<Perm> cls{seed};
        unassigned.erase(seed);
        for (size_t head = 0; head < cls.size(); ++head) {
            for (const Perm& t : grp.gens) {
                Perm c = perm_compose(perm_compose(t, cls[head]), perm_inverse(t));
                auto it = unassigned.find(c);
                if (it != unassigned.end()) {
                    cls.push_back(*it);
                    unassigned.erase(it);
                }
            }
        }
        std::sort(cls.begin(), cls.end());
        InvolutionClass ic;
        ic.members = std::move(cls);
        ic.representative = ic.members.front();
        auto fix = fixed_vertices(ic.representative);
        ic.fix_count = (int)fix.size();
        ic.fix_certificate = canonical_form(induced(g, fix));
        classes.push_back(std::move(ic));
    }
    std::sort(classes.begin(), classes.end(), [](const InvolutionClass& a, const InvolutionClass& b) {
        if (a.members.size() != b.members.size()) return a.members.size() < b.members.size();
        if (a.fix_count != b.fix_count) return a.fix_count < b.fix_count;
        return a.fix_certificate.bytes < b.fix_certificate.bytes;
    });
    return classes;
}

// Histogram over h in `cls` (h != g0) of the certificate of the subgraph
// induced on Fix(g0) /\ Fix(h), keyed by certificate bytes.
inline std::map<std::string, long long> pairwise_fix_table(const Graph& g,
                                                           const InvolutionClass& cls,
                                                           const Perm& g0) {
    std::map<std::string, long long> hist;
    auto fix0 = fixed_vertices(g0);
    VertexSet f0 = VertexSet::of(g.n, fix0);
    for (const Perm& h : cls.members) {
        if (h == g0) continue;
        std::vector<int> both;
        for (int v : fix0)
            if (h[v] == v) both.push_back(v);
        hist[canonical_form(induced(g, both)).bytes] += 1;
    }
    return hist;
}

struct SubsetOrbit {
    std::vector<int> representative; // lexicographically least member
    long long multiplicity = 0;
    std::string certificate_bytes;
};

// Groups subsets by the certificate of (ambient, 2-coloring marking the
// subset); one representative per class with multiplicity.  The
// representative choice is order independent (least subset wins).
inline std::vector<SubsetOrbit> dedupe_subsets(const Graph& ambient,
                                               const std::vector<std::vector<int>>& subsets) {
    std::map<std::string, SubsetOrbit> by_cert;
    for (const auto& s_in : subsets) {
        std::vector<int> s = s_in;
        std::sort(s.begin(), s.end());
        auto cert = canonical_form(ambient, Coloring::mark_subset(ambient.n, s));
        auto it = by_cert.find(cert.bytes);
        if (it == by_cert.end()) {
            SubsetOrbit o;
            o.representative = s;
            o.multiplicity = 1;
            o.certificate_bytes = cert.bytes;
            by_cert.emplace(cert.bytes, std::move(o));
        } else {
            it->second.multiplicity += 1;
            if (s < it->second.representative) it->second.representative = s;
        }
    }
    std::vector<SubsetOrbit> out;
    for (auto& [k, v] : by_cert) out.push_back(std::move(v));
    return out;
}

} // namespace geomforge

#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fusionlim/catmodule.hpp"
#include "fusionlim/fusion.hpp"
#include "fusionlim/group.hpp"

namespace fusionlim {

inline constexpr int kPosetDegreeCap = 4;

// Chain complex over F_p: dim[n] for degrees 0..N and bnd[n] : C_{n+1} -> C_n.
struct ChainComplex {
    int p = 2;
    std::vector<int> dim;
    std::vector<FpMat> bnd;

    void validate() const {
        ensure(bnd.size() + 1 == dim.size(), "boundary count mismatch");
        for (std::size_t n = 0; n < bnd.size(); ++n) {
            ensure(bnd[n].rows == dim[n] && bnd[n].cols == dim[n + 1],
                   "boundary shape mismatch");
            if (n + 1 < bnd.size())
                for (std::int32_t v : (bnd[n] * bnd[n + 1]).a)
                    ensure(v == 0, "boundary squared is nonzero");
        }
    }

    std::vector<int> homology_dims() const {
        std::vector<int> out(dim.size());
        for (std::size_t n = 0; n < dim.size(); ++n) {
            int out_rank = (n == 0) ? 0 : rank(bnd[n - 1]);
            int in_rank = (n < bnd.size()) ? rank(bnd[n]) : 0;
            out[n] = dim[n] - out_rank - in_rank;
        }
        return out;
    }
};

// Poset of pairs (Hx, P): a right coset of H and a family member that the
// coset representative conjugates into H.  (Hx,P) <= (Hy,Q) iff Hx = Hy and
// P <= Q, and g sends (Hx,P) to (Hxg^{-1}, gPg^{-1}).
struct CosetPoset {
    GroupPtr G;
    Subgroup H;
    std::vector<Subgroup> family;
    std::vector<int> coset_rep;                 // coset id -> smallest member
    std::vector<int> coset_of;                  // element -> coset id
    std::vector<std::pair<int, int>> objects;   // (coset id, family index)
    std::map<std::pair<int, int>, int> obj_index;
    std::vector<std::vector<int>> conj_fam;     // [g][fi] -> family index of gFg^{-1}
    std::vector<std::vector<bool>> fam_leq;     // [fi][fj] : F_i <= F_j

    bool leq(int a, int b) const {
        return objects[a].first == objects[b].first &&
               fam_leq[objects[a].second][objects[b].second];
    }

    int act(int g, int o) const {
        auto [k, fi] = objects[o];
        int rep = G->mul(coset_rep[k], G->inv(g));
        return obj_index.at({coset_of[rep], conj_fam[g][fi]});
    }
};

// Whether the family contains PQ whenever the product set PQ is a subgroup
// (which for finite P, Q happens exactly when PQ = QP as sets).
inline bool family_product_closed(const std::vector<Subgroup>& family) {
    if (family.empty()) return true;
    const FiniteGroup& G = family[0].parent();
    std::set<std::vector<int>> have;
    for (const Subgroup& F : family) have.insert(F.elements());
    for (const Subgroup& A : family)
        for (const Subgroup& B : family) {
            std::set<int> ab, ba;
            for (int a : A.elements())
                for (int b : B.elements()) {
                    ab.insert(G.mul(a, b));
                    ba.insert(G.mul(b, a));
                }
            if (ab != ba) continue;
            if (!have.count(std::vector<int>(ab.begin(), ab.end()))) return false;
        }
    return true;
}

inline CosetPoset build_coset_poset(GroupPtr G, const Subgroup& H,
                                    const std::vector<Subgroup>& family) {
    require(H.parent_ptr() == G.get(), "MismatchedAmbientGroup",
            "subgroup does not live in the given group");
    std::set<std::vector<int>> fam_sets;
    std::map<std::vector<int>, int> fam_index;
    for (std::size_t i = 0; i < family.size(); ++i) {
        require(family[i].parent_ptr() == G.get(), "MismatchedAmbientGroup",
                "family member does not live in the given group");
        fam_sets.insert(family[i].elements());
        fam_index[family[i].elements()] = static_cast<int>(i);
    }
    require(fam_index.size() == family.size(), "BadInput", "family has duplicate members");

    CosetPoset X;
    X.G = G;
    X.H = H;
    X.family = family;

    X.conj_fam.assign(G->order(), std::vector<int>(family.size()));
    for (int g = 0; g < G->order(); ++g)
        for (std::size_t fi = 0; fi < family.size(); ++fi) {
            Subgroup c = conjugate_subgroup(family[fi], g);
            auto it = fam_index.find(c.elements());
            require(it != fam_index.end(), "FamilyNotConjugationClosed",
                    "family is not closed under conjugation");
            X.conj_fam[g][fi] = it->second;
        }

    X.fam_leq.assign(family.size(), std::vector<bool>(family.size()));
    for (std::size_t i = 0; i < family.size(); ++i)
        for (std::size_t j = 0; j < family.size(); ++j) {
            bool in = true;
            for (int e : family[i].elements())
                if (!family[j].contains(e)) {
                    in = false;
                    break;
                }
            X.fam_leq[i][j] = in;
        }

    X.coset_of.assign(G->order(), -1);
    for (int g = 0; g < G->order(); ++g) {
        if (X.coset_of[g] >= 0) continue;
        int k = static_cast<int>(X.coset_rep.size());
        X.coset_rep.push_back(g);
        for (int h : H.elements()) X.coset_of[G->mul(h, g)] = k;
    }

    // (Hx, P) is an object when x P x^{-1} <= H; the condition only depends
    // on the coset of x.
    for (int k = 0; k < static_cast<int>(X.coset_rep.size()); ++k)
        for (std::size_t fi = 0; fi < family.size(); ++fi) {
            int x = X.coset_rep[k];
            bool ok = true;
            for (int e : X.family[fi].elements())
                if (!H.contains(G->conj(x, e))) {
                    ok = false;
                    break;
                }
            if (ok) {
                X.obj_index[{k, static_cast<int>(fi)}] = static_cast<int>(X.objects.size());
                X.objects.emplace_back(k, static_cast<int>(fi));
            }
        }
    return X;
}

// Number of classes in H \ N_G(P,H) / C_G(P), i.e. of G-conjugation maps
// P -> H up to postcomposition with conjugation by H.
inline int hom_class_count(const Subgroup& H, const Subgroup& P) {
    const FiniteGroup& G = H.parent();
    require(P.parent_ptr() == &G, "MismatchedAmbientGroup",
            "subgroups live in different groups");
    Subgroup C = centralizer(G, P);
    std::vector<bool> used(G.order(), false);
    int count = 0;
    for (int x : transporter(G, P, H)) {
        if (used[x]) continue;
        ++count;
        for (int h : H.elements())
            for (int c : C.elements()) used[G.mul(G.mul(h, x), c)] = true;
    }
    return count;
}

// Normalized chains of the C_G(P)-quotient of the P-fixed subposet nerve.
// Basis in degree n: C_G(P)-orbits of strictly increasing chains of n+1
// fixed objects; the boundary drops one vertex at a time.
inline ChainComplex fixed_quotient_complex(const CosetPoset& X, const Subgroup& P, int p,
                                           int cap = kPosetDegreeCap) {
    require(P.parent_ptr() == X.G.get(), "MismatchedAmbientGroup",
            "subgroup does not live in the poset's group");
    bool in_family = false;
    for (const Subgroup& F : X.family)
        if (F.elements() == P.elements()) in_family = true;
    require(in_family, "NotInFamily", "fixed point subgroup must belong to the family");
    require(cap >= 0, "BadInput", "degree cap must be nonnegative");

    std::vector<int> fixed;
    for (int o = 0; o < static_cast<int>(X.objects.size()); ++o) {
        bool fix = true;
        for (int y : P.generators())
            if (X.act(y, o) != o) {
                fix = false;
                break;
            }
        if (fix) fixed.push_back(o);
    }

    std::vector<int> cent = centralizer(*X.G, P).elements();
    auto canon = [&](const std::vector<int>& chain) {
        std::vector<int> best, cur(chain.size());
        for (int c : cent) {
            for (std::size_t i = 0; i < chain.size(); ++i) cur[i] = X.act(c, chain[i]);
            if (best.empty() || cur < best) best = cur;
        }
        return best;
    };

    // orbit representatives degree by degree; extending representatives by
    // every larger object reaches every orbit, since a chain is equivalent
    // to an extension of its own prefix's representative
    std::vector<std::vector<std::vector<int>>> reps(cap + 2);
    std::vector<std::map<std::vector<int>, int>> index(cap + 2);
    for (int o : fixed) {
        std::vector<int> c = canon({o});
        if (index[0].emplace(c, static_cast<int>(reps[0].size())).second) reps[0].push_back(c);
    }
    for (int n = 1; n <= cap + 1; ++n)
        for (const std::vector<int>& base : reps[n - 1])
            for (int o : fixed) {
                if (!(X.leq(base.back(), o) && base.back() != o)) continue;
                std::vector<int> ext = base;
                ext.push_back(o);
                std::vector<int> c = canon(ext);
                if (index[n].emplace(c, static_cast<int>(reps[n].size())).second)
                    reps[n].push_back(c);
            }

    ChainComplex out;
    out.p = p;
    for (int n = 0; n <= cap + 1; ++n) out.dim.push_back(static_cast<int>(reps[n].size()));
    for (int n = 0; n <= cap; ++n) {
        FpMat d(p, out.dim[n], out.dim[n + 1]);
        for (int col = 0; col < out.dim[n + 1]; ++col) {
            const std::vector<int>& sigma = reps[n + 1][col];
            for (std::size_t i = 0; i < sigma.size(); ++i) {
                std::vector<int> face;
                face.reserve(sigma.size() - 1);
                for (std::size_t l = 0; l < sigma.size(); ++l)
                    if (l != i) face.push_back(sigma[l]);
                int row = index[n].at(canon(face));
                int sign = (i % 2 == 0) ? 1 : p - 1;
                d.at(row, col) = (d.at(row, col) + sign) % p;
            }
        }
        out.bnd.push_back(std::move(d));
    }
    out.validate();
    return out;
}

inline std::vector<int> fixed_quotient_homology(const CosetPoset& X, const Subgroup& P, int p,
                                                int cap = kPosetDegreeCap) {
    std::vector<int> h = fixed_quotient_complex(X, P, p, cap).homology_dims();
    h.resize(cap + 1);
    return h;
}

// Finite graph model of the centralizer classifying space at a centric P:
// one vertex per class of Hom_F(P,S) modulo postcomposition with Inn(S),
// one vertex per class modulo the coarser relation identifying phi and psi
// when some theta in Hom_{F_i}(phi P, psi P) has theta phi = psi (one family
// of classes per factor i = 1,2), and one edge from each fine class to its
// coarse class on each side.
struct CosetGraph {
    std::vector<FusionHom> vs_rep;  // fine classes, lex sorted
    std::vector<int> side1, side2;  // per fine class: coarse label on each side
    int nv1 = 0, nv2 = 0;

    int vertices() const { return static_cast<int>(vs_rep.size()) + nv1 + nv2; }
    int edges() const { return 2 * static_cast<int>(vs_rep.size()); }

    int components() const {
        int nvs = static_cast<int>(vs_rep.size());
        std::vector<int> root(vertices());
        for (int v = 0; v < vertices(); ++v) root[v] = v;
        auto find = [&](int v) {
            while (root[v] != v) v = root[v] = root[root[v]];
            return v;
        };
        for (int k = 0; k < nvs; ++k) {
            root[find(k)] = find(nvs + side1[k]);
            root[find(k)] = find(nvs + nv1 + side2[k]);
        }
        std::set<int> comps;
        for (int v = 0; v < vertices(); ++v) comps.insert(find(v));
        return static_cast<int>(comps.size());
    }

    int h1_dim() const { return edges() - vertices() + components(); }
};

inline CosetGraph amalgam_graph(const FusionSystem& F, const FusionSystem& F1,
                                const FusionSystem& F2, int p_obj) {
    require(F1.S_ptr() == F.S_ptr() && F2.S_ptr() == F.S_ptr(), "MismatchedAmbientGroup",
            "all three fusion systems must share the reference group");
    require(is_centric(F, p_obj), "NotCentric", "graph model needs a centric subgroup");

    int top = F.top_object();
    std::set<FusionHom> classes;
    for (const FusionHom& h : F.homs(p_obj, top)) classes.insert(inn_canonical(F, h));

    CosetGraph g;
    g.vs_rep.assign(classes.begin(), classes.end());
    int nvs = static_cast<int>(g.vs_rep.size());

    const Subgroup& P = F.object(p_obj);
    auto related = [&](const FusionSystem& Fi, const FusionHom& a, const FusionHom& b) {
        int ia = F.image_object(a), ib = F.image_object(b);
        const Subgroup& A = F.object(ia);
        for (const FusionHom& th : Fi.homs(ia, ib)) {
            bool ok = true;
            for (int k = 0; k < P.order() && ok; ++k)
                ok = th.img[A.position_of(a.img[k])] == b.img[k];
            if (ok) return true;
        }
        return false;
    };
    auto coarse = [&](const FusionSystem& Fi, std::vector<int>& side, int& count) {
        std::vector<int> root(nvs);
        for (int v = 0; v < nvs; ++v) root[v] = v;
        auto find = [&](int v) {
            while (root[v] != v) v = root[v] = root[root[v]];
            return v;
        };
        for (int a = 0; a < nvs; ++a)
            for (int b = a + 1; b < nvs; ++b)
                if (find(a) != find(b) && related(Fi, g.vs_rep[a], g.vs_rep[b]))
                    root[find(b)] = find(a);
        side.assign(nvs, -1);
        std::map<int, int> label;
        for (int v = 0; v < nvs; ++v) {
            int r = find(v);
            auto it = label.emplace(r, static_cast<int>(label.size())).first;
            side[v] = it->second;
        }
        count = static_cast<int>(label.size());
    };
    coarse(F1, g.side1, g.nv1);
    coarse(F2, g.side2, g.nv2);
    return g;
}

namespace detail {

// Spanning forest cycle basis: vertex v of the graph is a fine class
// (v < nvs), a side-1 coarse class (nvs + c) or a side-2 coarse class
// (nvs + nv1 + c); edge 2k goes from fine vertex k to its side-1 class and
// edge 2k+1 to its side-2 class.
struct GraphCycles {
    int nvs = 0;
    std::vector<char> tree;
    std::vector<int> basis;  // non-forest edge ids, ascending

    explicit GraphCycles(const CosetGraph& g) : nvs(static_cast<int>(g.vs_rep.size())) {
        int V = g.vertices();
        std::vector<std::vector<std::pair<int, int>>> adj(V);  // (edge, other end)
        auto other = [&](int e) {
            int k = e / 2;
            return (e % 2 == 0) ? nvs + g.side1[k] : nvs + g.nv1 + g.side2[k];
        };
        for (int e = 0; e < g.edges(); ++e) {
            adj[e / 2].emplace_back(e, other(e));
            adj[other(e)].emplace_back(e, e / 2);
        }
        tree.assign(g.edges(), 0);
        std::vector<char> seen(V, 0);
        for (int s = 0; s < V; ++s) {
            if (seen[s]) continue;
            seen[s] = 1;
            std::vector<int> work{s};
            for (std::size_t h = 0; h < work.size(); ++h)
                for (auto [e, w] : adj[work[h]])
                    if (!seen[w]) {
                        seen[w] = 1;
                        tree[e] = 1;
                        work.push_back(w);
                    }
        }
        for (int e = 0; e < g.edges(); ++e)
            if (!tree[e]) basis.push_back(e);
    }
};

}  // namespace detail

// Contravariant module over the centric orbit category valued in graph H_1.
// The action of a class of phi : P -> Q maps the vertex [psi] of the graph
// at Q to the vertex [psi . phi] of the graph at P; since it preserves
// sides, it maps edges to edges and cycles to cycles, and the matrix reads
// off the image cycle on the non-forest basis edges.
inline CatModule cgpc_module(const FusionSystem& F, const FusionSystem& F1,
                             const FusionSystem& F2, const OrbitCategory& oc, int p) {
    require(oc.family == centric_family(F), "NotCentric",
            "module is defined over the centric orbit category");

    int n = oc.cat.nobj;
    std::vector<CosetGraph> graph;
    std::vector<detail::GraphCycles> cyc;
    graph.reserve(n);
    cyc.reserve(n);
    for (int k = 0; k < n; ++k) {
        graph.push_back(amalgam_graph(F, F1, F2, oc.family[k]));
        cyc.emplace_back(graph[k]);
        ensure(static_cast<int>(cyc[k].basis.size()) == graph[k].h1_dim(),
               "cycle basis size disagrees with the Euler computation");
    }

    CatModule out;
    out.p = p;
    out.dim.resize(n);
    for (int k = 0; k < n; ++k) out.dim[k] = graph[k].h1_dim();

    auto induced = [&](int kx, int ky, const FusionHom& phi) {
        const CosetGraph& gq = graph[ky];
        const CosetGraph& gp = graph[kx];
        const Subgroup& Q = F.object(oc.family[ky]);
        // vertex map on fine classes: [psi] -> [psi . phi]
        std::vector<int> vmap(gq.vs_rep.size());
        for (std::size_t v = 0; v < gq.vs_rep.size(); ++v) {
            const FusionHom& psi = gq.vs_rep[v];
            FusionHom comp{phi.src, psi.dst, {}};
            comp.img.reserve(phi.img.size());
            for (int e : phi.img) comp.img.push_back(psi.img[Q.position_of(e)]);
            FusionHom c = inn_canonical(F, comp);
            auto it = std::lower_bound(gp.vs_rep.begin(), gp.vs_rep.end(), c);
            ensure(it != gp.vs_rep.end() && *it == c, "image class missing from target graph");
            vmap[v] = static_cast<int>(it - gp.vs_rep.begin());
        }
        FpMat A(p, out.dim[kx], out.dim[ky]);
        for (std::size_t col = 0; col < cyc[ky].basis.size(); ++col) {
            // basis cycle = non-forest edge plus the forest path closing it;
            // expand it as the edge chain with zero boundary, push edges
            // forward, then read off non-forest coordinates
            std::vector<int> z(gq.edges(), 0);
            z[cyc[ky].basis[col]] = 1;
            // close up inside the forest: repeatedly cancel the boundary at
            // fine vertices via their forest edges
            // boundary at a coarse vertex w: sum of z over edges at w
            // boundary at a fine vertex k: -(z[2k] + z[2k+1])
            // Use the standard fundamental cycle: walk the forest path
            // between the two endpoints.  The forest is small, find the path
            // by BFS over tree edges.
            int e0 = cyc[ky].basis[col];
            int from = e0 / 2;
            int to = (e0 % 2 == 0) ? cyc[ky].nvs + gq.side1[e0 / 2]
                                   : cyc[ky].nvs + gq.nv1 + gq.side2[e0 / 2];
            // BFS from 'to' back to 'from' through tree edges
            int V = gq.vertices();
            std::vector<std::vector<std::pair<int, int>>> adj(V);
            for (int e = 0; e < gq.edges(); ++e) {
                if (!cyc[ky].tree[e]) continue;
                int a = e / 2;
                int b = (e % 2 == 0) ? cyc[ky].nvs + gq.side1[e / 2]
                                     : cyc[ky].nvs + gq.nv1 + gq.side2[e / 2];
                adj[a].emplace_back(e, b);
                adj[b].emplace_back(e, a);
            }
            std::vector<int> via_edge(V, -1), via_from(V, -1);
            std::vector<int> work{to};
            std::vector<char> seen(V, 0);
            seen[to] = 1;
            for (std::size_t h = 0; h < work.size() && !seen[from]; ++h)
                for (auto [e, w] : adj[work[h]])
                    if (!seen[w]) {
                        seen[w] = 1;
                        via_edge[w] = e;
                        via_from[w] = work[h];
                        work.push_back(w);
                    }
            ensure(seen[from], "cycle endpoints in different forest trees");
            // close it up with the forest path walked from 'to' down to
            // 'from'; an edge natively points fine -> coarse, so a step
            // whose destination v is the coarse end is a forward traversal
            for (int v = from; v != to; v = via_from[v]) {
                int e = via_edge[v];
                bool forward = (v != e / 2);
                z[e] = (z[e] + (forward ? 1 : p - 1)) % p;
            }
            // push the cycle through the graph map
            std::vector<int> w(gp.edges(), 0);
            for (int e = 0; e < gq.edges(); ++e) {
                if (z[e] == 0) continue;
                int ie = 2 * vmap[e / 2] + (e % 2);
                w[ie] = (w[ie] + z[e]) % p;
            }
            // image must again be a cycle
            {
                std::vector<int> bnd(gp.vertices(), 0);
                for (int e = 0; e < gp.edges(); ++e) {
                    if (w[e] == 0) continue;
                    int a = e / 2;
                    int b = (e % 2 == 0) ? cyc[kx].nvs + gp.side1[e / 2]
                                         : cyc[kx].nvs + gp.nv1 + gp.side2[e / 2];
                    bnd[a] = (bnd[a] + p - w[e]) % p;
                    bnd[b] = (bnd[b] + w[e]) % p;
                }
                for (int v : bnd) ensure(v == 0, "graph map does not send cycles to cycles");
            }
            for (std::size_t row = 0; row < cyc[kx].basis.size(); ++row)
                A.at(static_cast<int>(row), static_cast<int>(col)) = w[cyc[kx].basis[row]];
        }
        return A;
    };

    out.act.resize(oc.cat.nmor(), FpMat(p, 0, 0));
    for (int f = 0; f < oc.cat.nmor(); ++f) {
        int kx = oc.cat.mor[f].src, ky = oc.cat.mor[f].dst;
        out.act[f] = induced(kx, ky, oc.rep[f]);
        // the matrix may not depend on which class member represents f
        std::set<FusionHom> seen{oc.rep[f]};
        for (int q : F.object(oc.family[ky]).elements()) {
            FusionHom m{oc.rep[f].src, oc.rep[f].dst, {}};
            m.img.reserve(oc.rep[f].img.size());
            for (int e : oc.rep[f].img) m.img.push_back(F.S().conj(q, e));
            if (!seen.insert(m).second) continue;
            ensure(induced(kx, ky, m).a == out.act[f].a,
                   "induced map depends on the class representative");
        }
    }
    out.validate(oc.cat);
    return out;
}

}  // namespace fusionlim

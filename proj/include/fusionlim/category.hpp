#pragma once

#include <string>
#include <vector>

#include "fusionlim/errors.hpp"

namespace fusionlim {

// Finite category with a fully materialized composition table.
// Morphism ids index into `mor`; comp[g][f] = g∘f when dst(f) == src(g).
struct FiniteCategory {
    struct Morph {
        int src = 0, dst = 0;
    };

    int nobj = 0;
    std::vector<std::string> obj_names;
    std::vector<Morph> mor;
    std::vector<int> id_of;                        // identity morphism per object
    std::vector<std::vector<std::vector<int>>> hom; // hom[src][dst] = morphism ids
    std::vector<std::vector<int>> comp;            // comp[g][f], -1 when not composable

    int nmor() const { return static_cast<int>(mor.size()); }

    int compose(int g, int f) const {
        ensure(mor[f].dst == mor[g].src, "compose: morphisms not composable");
        return comp[g][f];
    }

    void rebuild_hom() {
        hom.assign(nobj, std::vector<std::vector<int>>(nobj));
        for (int f = 0; f < nmor(); ++f) hom[mor[f].src][mor[f].dst].push_back(f);
    }

    // Identity and associativity laws over the whole table.
    void validate() const {
        ensure(static_cast<int>(id_of.size()) == nobj, "identity list size mismatch");
        for (int x = 0; x < nobj; ++x) {
            int e = id_of[x];
            ensure(mor[e].src == x && mor[e].dst == x, "identity endpoints wrong");
        }
        for (int f = 0; f < nmor(); ++f) {
            ensure(comp[id_of[mor[f].dst]][f] == f, "left identity law fails");
            ensure(comp[f][id_of[mor[f].src]] == f, "right identity law fails");
            for (int g = 0; g < nmor(); ++g) {
                if (mor[g].src != mor[f].dst) {
                    ensure(comp[g][f] == -1, "composite defined for non-composable pair");
                    continue;
                }
                int gf = comp[g][f];
                ensure(gf >= 0 && mor[gf].src == mor[f].src && mor[gf].dst == mor[g].dst,
                       "composite endpoints wrong");
                for (int h = 0; h < nmor(); ++h) {
                    if (mor[h].src != mor[g].dst) continue;
                    ensure(comp[h][gf] == comp[comp[h][g]][f], "associativity fails");
                }
            }
        }
    }

    bool is_iso(int f) const { return inverse_of(f) >= 0; }

    int inverse_of(int f) const {
        int a = mor[f].src, b = mor[f].dst;
        for (int g : hom[b][a])
            if (comp[g][f] == id_of[a] && comp[f][g] == id_of[b]) return g;
        return -1;
    }

    bool isomorphic_objects(int x, int y) const {
        if (x == y) return true;
        for (int f : hom[x][y])
            if (is_iso(f)) return true;
        return false;
    }

    // Number of objects with at least one morphism into x (including x).
    // Used as the default generator-picking order for free covers: objects
    // that reach everything come first.
    int in_reach(int x) const {
        int n = 0;
        for (int y = 0; y < nobj; ++y)
            if (!hom[y][x].empty()) ++n;
        return n;
    }
};

// Objects ordered by how many objects admit a morphism into them, largest
// first.  Covering in this order keeps resolutions small: once a generator
// is placed at a late object, it cannot help cover earlier ones.
inline std::vector<int> default_cover_order(const FiniteCategory& c) {
    std::vector<int> order(c.nobj);
    for (int i = 0; i < c.nobj; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return c.in_reach(a) > c.in_reach(b); });
    return order;
}

// Poset of nonempty subsets of {1..n} under reverse inclusion: a unique
// morphism I -> J exactly when J is a subset of I.
inline FiniteCategory dn_category(int n) {
    require(n >= 1 && n <= 10, "BadPosetRank", "subset poset rank out of range");
    FiniteCategory c;
    int nset = (1 << n) - 1;
    c.nobj = nset;
    auto obj_of_mask = [](int mask) { return mask - 1; };
    for (int mask = 1; mask <= nset; ++mask) {
        std::string nm = "{";
        for (int i = 0; i < n; ++i)
            if (mask >> i & 1) nm += (nm.size() > 1 ? "," : "") + std::to_string(i + 1);
        nm += "}";
        c.obj_names.push_back(nm);
    }
    std::vector<std::vector<int>> arrow(c.nobj, std::vector<int>(c.nobj, -1));
    for (int src = 1; src <= nset; ++src)
        for (int dst = 1; dst <= nset; ++dst)
            if ((dst & src) == dst) { // dst subseteq src
                arrow[obj_of_mask(src)][obj_of_mask(dst)] = c.nmor();
                c.mor.push_back({obj_of_mask(src), obj_of_mask(dst)});
            }
    c.id_of.resize(c.nobj);
    for (int x = 0; x < c.nobj; ++x) c.id_of[x] = arrow[x][x];
    c.comp.assign(c.nmor(), std::vector<int>(c.nmor(), -1));
    for (int f = 0; f < c.nmor(); ++f)
        for (int g = 0; g < c.nmor(); ++g)
            if (c.mor[g].src == c.mor[f].dst) c.comp[g][f] = arrow[c.mor[f].src][c.mor[g].dst];
    c.rebuild_hom();
    c.validate();
    return c;
}

// Finite poset as a category: one morphism x -> y per related pair x <= y.
// `leq` lists generating relations; reflexive-transitive closure is taken.
inline FiniteCategory poset_category(int nobj, const std::vector<std::pair<int, int>>& leq,
                                     std::vector<std::string> names = {}) {
    FiniteCategory c;
    c.nobj = nobj;
    c.obj_names = std::move(names);
    if (c.obj_names.empty())
        for (int i = 0; i < nobj; ++i) c.obj_names.push_back("x" + std::to_string(i));
    std::vector<std::vector<bool>> rel(nobj, std::vector<bool>(nobj, false));
    for (int i = 0; i < nobj; ++i) rel[i][i] = true;
    for (auto [a, b] : leq) rel[a][b] = true;
    for (int k = 0; k < nobj; ++k)
        for (int i = 0; i < nobj; ++i)
            for (int j = 0; j < nobj; ++j)
                if (rel[i][k] && rel[k][j]) rel[i][j] = true;
    for (int i = 0; i < nobj; ++i)
        for (int j = 0; j < nobj; ++j)
            require(!(i != j && rel[i][j] && rel[j][i]), "BadPoset", "relation is not antisymmetric");
    std::vector<std::vector<int>> arrow(nobj, std::vector<int>(nobj, -1));
    for (int i = 0; i < nobj; ++i)
        for (int j = 0; j < nobj; ++j)
            if (rel[i][j]) {
                arrow[i][j] = c.nmor();
                c.mor.push_back({i, j});
            }
    c.id_of.resize(nobj);
    for (int x = 0; x < nobj; ++x) c.id_of[x] = arrow[x][x];
    c.comp.assign(c.nmor(), std::vector<int>(c.nmor(), -1));
    for (int f = 0; f < c.nmor(); ++f)
        for (int g = 0; g < c.nmor(); ++g)
            if (c.mor[g].src == c.mor[f].dst) c.comp[g][f] = arrow[c.mor[f].src][c.mor[g].dst];
    c.rebuild_hom();
    c.validate();
    return c;
}

// Functor between finite categories given by object and morphism tables.
// Carries no category pointers; pass the categories to validate explicitly.
struct CatFunctor {
    std::vector<int> obj; // src object -> dst object
    std::vector<int> mor; // src morphism -> dst morphism

    void validate(const FiniteCategory& src, const FiniteCategory& dst) const {
        ensure(static_cast<int>(obj.size()) == src.nobj && static_cast<int>(mor.size()) == src.nmor(),
               "functor table size mismatch");
        for (int f = 0; f < src.nmor(); ++f) {
            ensure(dst.mor[mor[f]].src == obj[src.mor[f].src] &&
                       dst.mor[mor[f]].dst == obj[src.mor[f].dst],
                   "functor breaks endpoints");
        }
        for (int x = 0; x < src.nobj; ++x)
            ensure(mor[src.id_of[x]] == dst.id_of[obj[x]], "functor breaks identities");
        for (int f = 0; f < src.nmor(); ++f)
            for (int g = 0; g < src.nmor(); ++g)
                if (src.mor[g].src == src.mor[f].dst)
                    ensure(mor[src.comp[g][f]] == dst.comp[mor[g]][mor[f]],
                           "functor breaks composition");
    }
};

// Full subcategory on the given objects, with the inclusion functor.
struct SubcategoryResult {
    FiniteCategory cat;
    CatFunctor incl;           // cat -> parent
    std::vector<int> obj_back; // parent object -> new index, -1 if dropped
};

inline SubcategoryResult full_subcategory(const FiniteCategory& parent, const std::vector<int>& objects) {
    SubcategoryResult out;
    out.obj_back.assign(parent.nobj, -1);
    out.cat.nobj = static_cast<int>(objects.size());
    for (int k = 0; k < out.cat.nobj; ++k) {
        require(out.obj_back[objects[k]] == -1, "NotASubcategory", "duplicate object");
        out.obj_back[objects[k]] = k;
        out.cat.obj_names.push_back(parent.obj_names.empty() ? "x" + std::to_string(objects[k])
                                                             : parent.obj_names[objects[k]]);
    }
    std::vector<int> new_of(parent.nmor(), -1);
    for (int f = 0; f < parent.nmor(); ++f) {
        int a = out.obj_back[parent.mor[f].src], b = out.obj_back[parent.mor[f].dst];
        if (a < 0 || b < 0) continue;
        new_of[f] = out.cat.nmor();
        out.cat.mor.push_back({a, b});
        out.incl.mor.push_back(f);
    }
    out.cat.id_of.resize(out.cat.nobj);
    for (int k = 0; k < out.cat.nobj; ++k) out.cat.id_of[k] = new_of[parent.id_of[objects[k]]];
    out.cat.comp.assign(out.cat.nmor(), std::vector<int>(out.cat.nmor(), -1));
    for (int f = 0; f < parent.nmor(); ++f) {
        if (new_of[f] < 0) continue;
        for (int g = 0; g < parent.nmor(); ++g) {
            if (new_of[g] < 0 || parent.mor[g].src != parent.mor[f].dst) continue;
            out.cat.comp[new_of[g]][new_of[f]] = new_of[parent.comp[g][f]];
        }
    }
    out.cat.rebuild_hom();
    out.cat.validate();
    out.incl.obj = objects;
    out.incl.validate(out.cat, parent);
    return out;
}

// Skeleton: one object per isomorphism class (the smallest index in each
// class) plus, for every original object X, a chosen isomorphism u_X to its
// representative.  That data transports modules in both directions.
struct Skeleton {
    FiniteCategory cat;
    CatFunctor incl;              // skeleton -> original (full subcategory inclusion)
    std::vector<int> rep_of;      // original object -> representative original object
    std::vector<int> skel_of;     // original object -> skeleton object index
    std::vector<int> to_rep;      // original morphism id u_X : X -> rep(X)
    std::vector<int> from_rep;    // original morphism id u_X^{-1} : rep(X) -> X
};

inline Skeleton skeleton(const FiniteCategory& c) {
    Skeleton out;
    out.rep_of.assign(c.nobj, -1);
    out.to_rep.assign(c.nobj, -1);
    out.from_rep.assign(c.nobj, -1);
    std::vector<int> reps;
    for (int x = 0; x < c.nobj; ++x) {
        for (int r : reps) {
            for (int f : c.hom[x][r]) {
                if (c.is_iso(f)) {
                    out.rep_of[x] = r;
                    out.to_rep[x] = f;
                    out.from_rep[x] = c.inverse_of(f);
                    break;
                }
            }
            if (out.rep_of[x] >= 0) break;
        }
        if (out.rep_of[x] < 0) {
            out.rep_of[x] = x;
            out.to_rep[x] = c.id_of[x];
            out.from_rep[x] = c.id_of[x];
            reps.push_back(x);
        }
    }
    SubcategoryResult sub = full_subcategory(c, reps);
    out.cat = std::move(sub.cat);
    out.incl = std::move(sub.incl);
    out.skel_of.assign(c.nobj, -1);
    for (int x = 0; x < c.nobj; ++x) out.skel_of[x] = sub.obj_back[out.rep_of[x]];
    return out;
}

} // namespace fusionlim

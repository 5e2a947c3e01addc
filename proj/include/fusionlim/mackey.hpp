#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fusionlim/catmodule.hpp"
#include "fusionlim/fusion.hpp"
#include "fusionlim/groupcoh.hpp"

namespace fusionlim {

inline constexpr int kMackeyOrderCap = 64;
inline constexpr int kMackeyDegreeCap = 4;

// A pair of module structures over the full orbit category of a fusion
// system on shared value spaces: contra.act[f] maps M(dst f) -> M(src f)
// and cov[f] maps M(src f) -> M(dst f).
struct MackeyFunctor {
    FusionSystem F;
    OrbitCategory orbit;     // full orbit category, every subgroup an object
    CatModule contra;
    std::vector<FpMat> cov;  // one matrix per morphism of orbit.cat
};

struct MackeyReport {
    bool pass = true;
    std::string detail;  // first violation found, empty when pass
};

// Exhaustive axiom check: shared value spaces and covariant functoriality,
// cov[f] = contra.act[f^{-1}] on isomorphisms, and the double coset identity
//   contra[i_B^C] cov[i_A^C] = sum over x in [B\C/A] of
//     cov[i . c_x : B^x cap A -> B] contra[i : B^x cap A -> A]
// for every pair of subgroups A, B inside every subgroup C.
inline MackeyReport check_mackey(const MackeyFunctor& M) {
    const FiniteCategory& c = M.orbit.cat;
    MackeyReport out;
    auto fail = [&](std::string d) {
        out.pass = false;
        out.detail = std::move(d);
    };
    auto mname = [&](int f) {
        return "morphism " + std::to_string(f) + " : " + c.obj_names[c.mor[f].src] + " -> " +
               c.obj_names[c.mor[f].dst];
    };

    try {
        M.contra.validate(c);
    } catch (const std::exception& e) {
        fail(std::string("contravariant part: ") + e.what());
        return out;
    }
    if (static_cast<int>(M.cov.size()) != c.nmor()) {
        fail("covariant part has the wrong number of matrices");
        return out;
    }
    for (int f = 0; f < c.nmor(); ++f) {
        const FpMat& T = M.cov[f];
        if (T.p != M.contra.p || T.rows != M.contra.dim[c.mor[f].dst] ||
            T.cols != M.contra.dim[c.mor[f].src]) {
            fail("covariant matrix shape mismatch at " + mname(f));
            return out;
        }
    }
    for (int x = 0; x < c.nobj; ++x) {
        const FpMat& T = M.cov[c.id_of[x]];
        for (int i = 0; i < T.rows; ++i)
            for (int j = 0; j < T.cols; ++j)
                if (T.at(i, j) != (i == j ? 1 : 0)) {
                    fail("covariant part is not the identity on " + c.obj_names[x]);
                    return out;
                }
    }
    for (int f = 0; f < c.nmor(); ++f)
        for (int g = 0; g < c.nmor(); ++g) {
            if (c.mor[g].src != c.mor[f].dst) continue;
            if (!(M.cov[c.comp[g][f]].a == (M.cov[g] * M.cov[f]).a)) {
                fail("covariant functoriality fails at " + mname(g) + " after " + mname(f));
                return out;
            }
        }
    for (int f = 0; f < c.nmor(); ++f) {
        int g = c.inverse_of(f);
        if (g >= 0 && !(M.cov[f].a == M.contra.act[g].a)) {
            fail("isomorphism compatibility fails at " + mname(f));
            return out;
        }
    }

    const FusionSystem& F = M.F;
    const FiniteGroup& S = F.S();
    for (int ci = 0; ci < F.nobj(); ++ci) {
        const Subgroup& C = F.object(ci);
        std::vector<int> inside;
        for (int ai = 0; ai < F.nobj(); ++ai) {
            bool in = true;
            for (int e : F.object(ai).elements())
                if (!C.contains(e)) {
                    in = false;
                    break;
                }
            if (in) inside.push_back(ai);
        }
        for (int ai : inside)
            for (int bi : inside) {
                const Subgroup& A = F.object(ai);
                const Subgroup& B = F.object(bi);
                int fAC = orbit_class(M.orbit, F, F.inclusion_hom(ai, ci));
                int fBC = orbit_class(M.orbit, F, F.inclusion_hom(bi, ci));
                FpMat lhs = M.contra.act[fBC] * M.cov[fAC];
                FpMat rhs(M.contra.p, lhs.rows, lhs.cols);
                for (int x : double_cosets(B, C, A)) {
                    // D = B^x cap A; e is in B^x exactly when x e x^{-1} is in B
                    std::vector<int> delems;
                    for (int e : A.elements())
                        if (B.contains(S.conj(x, e))) delems.push_back(e);
                    int di = F.object_index(delems);
                    FusionHom phi{di, bi, {}};
                    phi.img.reserve(delems.size());
                    for (int e : delems) phi.img.push_back(S.conj(x, e));
                    int fphi = orbit_class(M.orbit, F, phi);
                    int fpsi = orbit_class(M.orbit, F, F.inclusion_hom(di, ai));
                    rhs = rhs + M.cov[fphi] * M.contra.act[fpsi];
                }
                if (!(lhs.a == rhs.a)) {
                    fail("double coset identity fails at (A, B, C) = (" +
                         c.obj_names[M.orbit.fusion_obj_to_cat[ai]] + ", " +
                         c.obj_names[M.orbit.fusion_obj_to_cat[bi]] + ", " +
                         c.obj_names[M.orbit.fusion_obj_to_cat[ci]] + ")");
                    return out;
                }
            }
    }
    return out;
}

// Fixed points of the one dimensional trivial module: every value space is
// k, restrictions are the identity and the transfer along a class of
// phi : P -> Q is multiplication by the index [Q : phi(P)].
inline MackeyFunctor fixed_point_mackey(const FusionSystem& F, int p) {
    OrbitCategory oc = orbit_category(F);
    CatModule contra = constant_module(oc.cat, p);
    std::vector<FpMat> cov;
    cov.reserve(oc.cat.nmor());
    for (int f = 0; f < oc.cat.nmor(); ++f) {
        const FusionHom& h = oc.rep[f];
        FpMat T(p, 1, 1);
        T.at(0, 0) = (F.object(h.dst).order() / F.object(h.src).order()) % p;
        cov.push_back(std::move(T));
    }
    return {F, std::move(oc), std::move(contra), std::move(cov)};
}

// A subgroup repackaged as a standalone group on the same permutations,
// with element index translation in both directions.
struct SubgroupGroup {
    GroupPtr G;
    std::vector<int> to_parent;
    std::vector<int> from_parent;  // -1 off the subgroup
};

inline SubgroupGroup subgroup_as_group(const Subgroup& H, const std::string& name = "") {
    const FiniteGroup& S = H.parent();
    std::vector<Permutation> gens;
    gens.reserve(H.order());
    for (int e : H.elements()) gens.push_back(S.element(e));
    SubgroupGroup out;
    out.G = make_group(S.degree(), gens, name);
    ensure(out.G->order() == H.order(), "subgroup closure changed size");
    out.to_parent.resize(H.order());
    out.from_parent.assign(S.order(), -1);
    for (int g = 0; g < out.G->order(); ++g) {
        out.to_parent[g] = S.index_of(out.G->element(g));
        out.from_parent[out.to_parent[g]] = g;
    }
    return out;
}

// Mod p cohomology in a single degree j as a Mackey functor: value spaces
// H^j(P) from minimal resolutions, contravariant maps induced by chain maps
// along the class representatives, covariant maps the chain level coset sum
// transfer.  Both maps are recomputed from every member of each morphism
// class and compared, so descent to the orbit category is checked, not
// assumed (for the identity class this says inner automorphisms act
// trivially on H^j).
inline MackeyFunctor cohomology_mackey(const FusionSystem& F, int j, int p) {
    require(F.S().order() <= kMackeyOrderCap, "GroupTooLarge",
            "cohomology functor limited to groups of order at most " +
                std::to_string(kMackeyOrderCap));
    require(j >= 0 && j <= kMackeyDegreeCap, "DegreeTooLarge",
            "cohomology functor limited to degree at most " + std::to_string(kMackeyDegreeCap));
    OrbitCategory oc = orbit_category(F);
    int n = oc.cat.nobj;

    std::vector<SubgroupGroup> grp;
    std::vector<GroupCohomology> coh;
    grp.reserve(n);
    coh.reserve(n);
    for (int k = 0; k < n; ++k) {
        grp.push_back(subgroup_as_group(F.object(oc.family[k]), oc.cat.obj_names[k]));
        coh.emplace_back(grp[k].G, p, j);
        ensure(coh[k].cohomology_dims()[j] == coh[k].rank(j),
               "resolution is not minimal: cochain differential does not vanish");
    }

    CatModule contra;
    contra.p = p;
    contra.dim.resize(n);
    for (int k = 0; k < n; ++k) contra.dim[k] = coh[k].rank(j);
    contra.act.resize(oc.cat.nmor(), FpMat(p, 0, 0));
    std::vector<FpMat> cov(oc.cat.nmor(), FpMat(p, 0, 0));

    for (int f = 0; f < oc.cat.nmor(); ++f) {
        int kx = oc.cat.mor[f].src, ky = oc.cat.mor[f].dst;
        const Subgroup& P = F.object(oc.family[kx]);
        auto local_graph = [&](const FusionHom& h) {
            std::vector<int> phi(grp[kx].G->order());
            for (int g = 0; g < grp[kx].G->order(); ++g)
                phi[g] = grp[ky].from_parent[h.img[P.position_of(grp[kx].to_parent[g])]];
            return phi;
        };
        std::vector<int> phi = local_graph(oc.rep[f]);
        contra.act[f] = restriction_matrix(coh[kx], coh[ky], phi, j);
        cov[f] = transfer_matrix(coh[kx], coh[ky], phi, j);

        std::set<FusionHom> seen{oc.rep[f]};
        for (int q : F.object(oc.family[ky]).elements()) {
            FusionHom m{oc.rep[f].src, oc.rep[f].dst, {}};
            m.img.reserve(oc.rep[f].img.size());
            for (int e : oc.rep[f].img) m.img.push_back(F.S().conj(q, e));
            if (!seen.insert(m).second) continue;
            std::vector<int> pm = local_graph(m);
            ensure(restriction_matrix(coh[kx], coh[ky], pm, j).a == contra.act[f].a,
                   "restriction depends on the class representative");
            ensure(transfer_matrix(coh[kx], coh[ky], pm, j).a == cov[f].a,
                   "transfer depends on the class representative");
        }
    }
    contra.validate(oc.cat);
    return {F, std::move(oc), std::move(contra), std::move(cov)};
}

// The contravariant part as a module over an orbit subcategory built from
// the same fusion system (typically the centric one).
inline CatModule restrict_to_orbit_subcategory(const MackeyFunctor& M, const OrbitCategory& sub) {
    CatModule out;
    out.p = M.contra.p;
    out.dim.resize(sub.cat.nobj);
    for (int k = 0; k < sub.cat.nobj; ++k) {
        int full = M.orbit.fusion_obj_to_cat[sub.family[k]];
        require(full >= 0, "NotInFamily", "subcategory object missing from the functor base");
        out.dim[k] = M.contra.dim[full];
    }
    out.act.reserve(sub.cat.nmor());
    for (int f = 0; f < sub.cat.nmor(); ++f)
        out.act.push_back(M.contra.act[orbit_class(M.orbit, M.F, sub.rep[f])]);
    out.validate(sub.cat);
    return out;
}

inline CatModule restrict_to_orbit_subcategory(const MackeyFunctor& M,
                                               const std::vector<int>& family) {
    return restrict_to_orbit_subcategory(M, orbit_category(M.F, family));
}

}  // namespace fusionlim

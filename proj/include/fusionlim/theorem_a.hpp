#pragma once

#include <array>
#include <chrono>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fusionlim/dwyer.hpp"
#include "fusionlim/mackey.hpp"
#include "fusionlim/resolution.hpp"

namespace fusionlim {

// Two finite groups glued along a shared p-group: the reference copy of S
// together with one embedding into each factor, each landing on a Sylow
// p-subgroup.
struct AmalgamSpec {
    GroupPtr S;
    GroupPtr G1, G2;
    GroupEmbedding in1, in2;
    int p = 2;
};

inline AmalgamSpec make_amalgam_spec(GroupPtr S, GroupPtr G1, GroupPtr G2,
                                     const std::vector<Permutation>& S_in_G1,
                                     const std::vector<Permutation>& S_in_G2, int p) {
    require(p >= 2, "BadPrime", "prime must be at least 2");
    int n = S->order();
    while (n % p == 0) n /= p;
    require(n == 1, "NotPSubgroup", "shared subgroup is not a p-group");
    AmalgamSpec spec{std::move(S), std::move(G1), std::move(G2), {}, {}, p};
    spec.in1 = GroupEmbedding::from_generator_images(*spec.S, *spec.G1, S_in_G1);
    spec.in2 = GroupEmbedding::from_generator_images(*spec.S, *spec.G2, S_in_G2);
    for (const FiniteGroup* Gi : {spec.G1.get(), spec.G2.get()}) {
        int idx = Gi->order() / spec.S->order();
        require(Gi->order() % spec.S->order() == 0 && idx % p != 0, "NotSylow",
                "shared subgroup is not Sylow in a factor");
    }
    return spec;
}

// Fusion data of the amalgam: the two factor systems, the system they
// generate, the inner system of S, and the family of centric subgroups of
// the generated system.
struct AmalgamFusion {
    FusionSystem F;
    FusionSystem F1, F2, F3;
    std::vector<int> centric;
};

inline AmalgamFusion build_amalgam_fusion(const AmalgamSpec& spec) {
    FusionSystem F1 = fusion_of_group(spec.S, *spec.G1, spec.in1, spec.p);
    FusionSystem F2 = fusion_of_group(spec.S, *spec.G2, spec.in2, spec.p);
    FusionSystem F = generate_fusion({F1, F2});
    FusionSystem F3 = fusion_of_group(spec.S, spec.p);
    std::vector<int> centric = centric_family(F);
    return {std::move(F), std::move(F1), std::move(F2), std::move(F3), std::move(centric)};
}

// Same reference group, same prime, identical hom sets.
inline bool fusion_systems_agree(const FusionSystem& A, const FusionSystem& B) {
    if (A.p() != B.p() || A.nobj() != B.nobj()) return false;
    if (A.S().order() != B.S().order()) return false;
    for (int a = 0; a < A.nobj(); ++a) {
        if (A.object(a).elements() != B.object(a).elements()) return false;
        for (int b = 0; b < A.nobj(); ++b)
            if (A.homs(a, b) != B.homs(a, b)) return false;
    }
    return true;
}

// Higher limits of the restriction of M over the centric orbit category of
// each of F1, F2 and the inner system, for degrees 1..maxdeg; all must
// vanish for the exact sequence below to apply.
struct HypothesisReport {
    bool pass = true;
    MackeyReport mackey;
    std::array<std::vector<int>, 3> limits;  // per system, degrees 0..maxdeg
    std::string detail;
};

inline HypothesisReport verify_hypotheses(const AmalgamFusion& A, const MackeyFunctor& M,
                                          int maxdeg) {
    require(maxdeg >= 1, "BadInput", "need at least degree one");
    require(fusion_systems_agree(M.F, A.F), "MismatchedAmbientGroup",
            "functor is not defined over the generated fusion system");
    HypothesisReport rep;
    rep.mackey = check_mackey(M);
    if (!rep.mackey.pass) {
        rep.pass = false;
        rep.detail = "functor fails the transfer axioms: " + rep.mackey.detail;
        return rep;
    }
    const FusionSystem* sys[3] = {&A.F1, &A.F2, &A.F3};
    std::ostringstream bad;
    for (int i = 0; i < 3; ++i) {
        OrbitCategory sub = orbit_category(*sys[i], A.centric);
        CatModule Mi = restrict_to_orbit_subcategory(M, sub);
        rep.limits[i] = higher_limits(sub.cat, Mi, maxdeg);
        for (int n = 1; n <= maxdeg; ++n)
            if (rep.limits[i][n] != 0) {
                rep.pass = false;
                bad << " lim^" << n << " over system " << (i + 1) << " has dimension "
                    << rep.limits[i][n] << ";";
            }
    }
    if (!rep.pass) rep.detail = "nonzero higher limits:" + bad.str();
    return rep;
}

// dim M(S) / (M^{F1} + M^{F2}): the two limit subspaces are computed inside
// M(S) as the vectors on which all morphisms P -> S of the factor system
// agree, then summed.
inline int stable_quotient(const AmalgamFusion& A, const MackeyFunctor& M) {
    require(fusion_systems_agree(M.F, A.F), "MismatchedAmbientGroup",
            "functor is not defined over the generated fusion system");
    int top = A.F.top_object();
    FpMat span(M.contra.p, 0, 0);
    int dim_at_s = -1;
    for (const FusionSystem* Fi : {&A.F1, &A.F2}) {
        OrbitCategory sub = orbit_category(*Fi, A.centric);
        CatModule Mi = restrict_to_orbit_subcategory(M, sub);
        int t = sub.fusion_obj_to_cat[top];
        FpMat basis = limit_embedded(sub.cat, Mi, t);
        dim_at_s = Mi.dim[t];
        span = (span.rows == 0) ? basis : span.hstack(basis);
    }
    return dim_at_s - rank(span);
}

// Dimension bookkeeping for the four-term exact sequence
//   0 -> lim^1 -> M(S)/(M^{F1}+M^{F2}) -> Hom(C, M') -> lim^2 -> 0
// and the degree shift Ext^n(C, M') = lim^{n+2}(M'), where C is the cycle
// module of the amalgam graphs and M' the restriction of M to the centric
// orbit category.
struct SharpnessReport {
    bool pass = true;
    HypothesisReport hypotheses;
    std::vector<int> lim;          // dim lim^n M', n = 0..maxdeg
    int stable_quotient_dim = 0;
    int hom_dim = 0;               // dim Hom(C, M')
    std::vector<int> ext;          // dim Ext^n(C, M'), n = 0..maxdeg-2
    bool euler_identity = false;   // lim^1 - quotient + hom - lim^2 = 0
    bool lim1_bounded = false;     // lim^1 <= quotient
    bool lim2_bounded = false;     // lim^2 <= hom
    bool ext_shift = false;        // Ext^n = lim^{n+2} for 1 <= n <= maxdeg-2
    double elapsed_ms = 0.0;
    std::string detail;
};

inline SharpnessReport verify_exact_sequence(const AmalgamFusion& A, const MackeyFunctor& M,
                                             int maxdeg) {
    require(maxdeg >= 2, "BadInput", "need at least degree two to test the sequence");
    auto t0 = std::chrono::steady_clock::now();
    SharpnessReport rep;
    rep.hypotheses = verify_hypotheses(A, M, maxdeg);
    if (!rep.hypotheses.pass)
        throw check_error("HypothesisFailed: " + rep.hypotheses.detail);

    OrbitCategory oc = orbit_category(A.F, A.centric);
    CatModule Mp = restrict_to_orbit_subcategory(M, oc);
    rep.lim = higher_limits(oc.cat, Mp, maxdeg);
    rep.stable_quotient_dim = stable_quotient(A, M);

    CatModule C = cgpc_module(A.F, A.F1, A.F2, oc, M.contra.p);
    rep.hom_dim = module_hom_dim(oc.cat, C, Mp);
    Resolution res = free_resolution(oc.cat, C, maxdeg);
    rep.ext = ext_dims(oc.cat, res, Mp, maxdeg - 2);
    // degree zero of the resolution computation must reproduce the hom space
    ensure(rep.ext[0] == rep.hom_dim, "Ext^0 disagrees with the hom space dimension");

    rep.euler_identity =
        rep.lim[1] - rep.stable_quotient_dim + rep.hom_dim - rep.lim[2] == 0;
    rep.lim1_bounded = rep.lim[1] <= rep.stable_quotient_dim;
    rep.lim2_bounded = rep.lim[2] <= rep.hom_dim;
    rep.ext_shift = true;
    std::ostringstream bad;
    for (int n = 1; n <= maxdeg - 2; ++n)
        if (rep.ext[n] != rep.lim[n + 2]) {
            rep.ext_shift = false;
            bad << " Ext^" << n << " = " << rep.ext[n] << " but lim^" << (n + 2) << " = "
                << rep.lim[n + 2] << ";";
        }
    rep.pass = rep.euler_identity && rep.lim1_bounded && rep.lim2_bounded && rep.ext_shift;
    if (!rep.pass) {
        std::ostringstream d;
        d << "failed:";
        if (!rep.euler_identity) d << " euler identity;";
        if (!rep.lim1_bounded) d << " lim^1 exceeds the stable quotient;";
        if (!rep.lim2_bounded) d << " lim^2 exceeds the hom space;";
        if (!rep.ext_shift) d << bad.str();
        rep.detail = d.str();
    }
    rep.elapsed_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    return rep;
}

inline SharpnessReport verify_exact_sequence(const AmalgamSpec& spec, const MackeyFunctor& M,
                                             int maxdeg) {
    return verify_exact_sequence(build_amalgam_fusion(spec), M, maxdeg);
}

// Higher limits of the restriction of M over the centric orbit category of
// its own fusion system; any nonzero value in positive degree is flagged.
struct SharpnessScan {
    std::vector<int> lim;              // degrees 0..maxdeg
    std::vector<int> nonzero_degrees;  // degrees >= 1 with nonvanishing limit
    bool all_vanish = true;
};

inline SharpnessScan sharpness_scan(const FusionSystem& F, const MackeyFunctor& M, int maxdeg) {
    require(maxdeg >= 0, "BadInput", "degree must be nonnegative");
    require(fusion_systems_agree(M.F, F), "MismatchedAmbientGroup",
            "functor is not defined over the given fusion system");
    MackeyReport mk = check_mackey(M);
    if (!mk.pass) throw check_error("transfer axioms fail: " + mk.detail);
    OrbitCategory oc = orbit_category(F, centric_family(F));
    CatModule Mp = restrict_to_orbit_subcategory(M, oc);
    SharpnessScan scan;
    scan.lim = higher_limits(oc.cat, Mp, maxdeg);
    for (int n = 1; n <= maxdeg; ++n)
        if (scan.lim[n] != 0) {
            scan.nonzero_degrees.push_back(n);
            scan.all_vanish = false;
        }
    return scan;
}

}  // namespace fusionlim

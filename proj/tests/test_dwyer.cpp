#include <catch2/catch_amalgamated.hpp>

#include "fusionlim/dwyer.hpp"
#include "fusionlim/theorem_a.hpp"

#include <random>

using namespace fusionlim;

namespace {

GroupPtr v4() { return make_group(4, {Permutation({1, 0, 3, 2}), Permutation({2, 3, 0, 1})}, "V4"); }
GroupPtr d8() { return make_group(4, {Permutation({1, 2, 3, 0}), Permutation({2, 1, 0, 3})}, "D8"); }
GroupPtr a4() { return make_group(4, {Permutation({1, 0, 3, 2}), Permutation({1, 2, 0, 3})}, "A4"); }
GroupPtr s4() { return make_group(4, {Permutation({1, 2, 3, 0}), Permutation({1, 0, 2, 3})}, "S4"); }
GroupPtr s3() { return make_group(3, {Permutation({1, 0, 2}), Permutation({1, 2, 0})}, "S3"); }

std::vector<Subgroup> all_p_subgroups(const FiniteGroup& G, int p) {
    std::vector<Subgroup> fam;
    for (auto& H : subgroups_of(full_subgroup(G)))
        if (is_p_group(H, p)) fam.push_back(H);
    return fam;
}

} // namespace

TEST_CASE("coset poset structure for S3") {
    auto G = s3();
    Subgroup H = generated_subgroup(*G, {G->index_of(Permutation({1, 0, 2}))});
    auto fam = all_p_subgroups(*G, 2);
    CHECK(fam.size() == 4);
    CosetPoset P = build_coset_poset(G, H, fam);
    // |G:H| = 3 cosets, each paired with the p-subgroups it can sit over
    CHECK(!P.objects.empty());
    for (std::size_t o = 0; o < P.objects.size(); ++o) {
        // action by every group element permutes the poset
        for (int g = 0; g < G->order(); ++g) {
            int o2 = P.act(g, static_cast<int>(o));
            CHECK(o2 >= 0);
            CHECK(o2 < static_cast<int>(P.objects.size()));
        }
    }
    // the order relation is respected by the action
    for (std::size_t a = 0; a < P.objects.size(); ++a)
        for (std::size_t b = 0; b < P.objects.size(); ++b) {
            if (!P.leq(static_cast<int>(a), static_cast<int>(b))) continue;
            for (int g = 0; g < G->order(); ++g)
                CHECK(P.leq(P.act(g, static_cast<int>(a)), P.act(g, static_cast<int>(b))));
        }
}

TEST_CASE("all p-subgroups always form a product closed family") {
    for (auto [G, p] : {std::pair{s3(), 2}, {s3(), 3}, {d8(), 2}, {a4(), 2}, {a4(), 3}, {s4(), 2}}) {
        auto fam = all_p_subgroups(*G, p);
        CHECK(family_product_closed(fam));
    }
}

TEST_CASE("a reflection pair in D8 is conjugation closed but not product closed") {
    auto G = d8();
    int r = G->index_of(Permutation({1, 2, 3, 0}));
    int s = G->index_of(Permutation({2, 1, 0, 3}));
    std::vector<Subgroup> fam = {
        trivial_subgroup(*G),
        generated_subgroup(*G, {G->mul(r, r)}),
        generated_subgroup(*G, {s}),
        generated_subgroup(*G, {G->mul(G->mul(r, r), s)}),
    };
    CHECK_FALSE(family_product_closed(fam));
    // adding the Klein closure fixes it
    fam.push_back(generated_subgroup(*G, {G->mul(r, r), s}));
    CHECK(family_product_closed(fam));
}

TEST_CASE("fixed quotient homology matches the double coset count") {
    std::mt19937 rng(20260815);
    std::vector<std::pair<GroupPtr, std::vector<int>>> zoo = {
        {s3(), {2, 3}},
        {make_group(6, {Permutation({1, 2, 3, 4, 5, 0})}, "C6"), {2, 3}},
        {d8(), {2}},
        {a4(), {2, 3}},
        {s4(), {2, 3}},
    };
    int trials = 0;
    for (auto& [G, primes] : zoo) {
        auto subs = subgroups_of(full_subgroup(*G));
        for (int p : primes) {
            auto fam = all_p_subgroups(*G, p);
            REQUIRE(family_product_closed(fam));
            std::uniform_int_distribution<int> pick_h(0, static_cast<int>(subs.size()) - 1),
                pick_p(0, static_cast<int>(fam.size()) - 1);
            for (int t = 0; t < 4; ++t) {
                Subgroup H = subs[pick_h(rng)];
                Subgroup P = fam[pick_p(rng)];
                CosetPoset cp = build_coset_poset(G, H, fam);
                auto h = fixed_quotient_homology(cp, P, p, 4);
                CHECK(h[0] == hom_class_count(H, P));
                for (int n = 1; n <= 4; ++n) CHECK(h[n] == 0);
                ++trials;
            }
        }
    }
    CHECK(trials >= 30);
}

TEST_CASE("H = G counts one class per fused conjugacy class") {
    auto G = s4();
    auto fam = all_p_subgroups(*G, 2);
    CosetPoset cp = build_coset_poset(G, full_subgroup(*G), fam);
    // P = a transposition: all transpositions are conjugate, so one class
    Subgroup P = generated_subgroup(*G, {G->index_of(Permutation({1, 0, 2, 3}))});
    CHECK(hom_class_count(full_subgroup(*G), P) == 1);
    CHECK(fixed_quotient_homology(cp, P, 2, 2)[0] == 1);
}

TEST_CASE("a subgroup outside the family is rejected") {
    auto G = s3();
    auto fam = all_p_subgroups(*G, 2);
    CosetPoset cp = build_coset_poset(G, full_subgroup(*G), fam);
    Subgroup C3 = generated_subgroup(*G, {G->index_of(Permutation({1, 2, 0}))});
    CHECK_THROWS_AS(fixed_quotient_homology(cp, C3, 2, 2), input_error);
}

TEST_CASE("amalgam graph for the A4 double") {
    AmalgamSpec spec = make_amalgam_spec(v4(), a4(), a4(),
        {Permutation({1, 0, 3, 2}), Permutation({2, 3, 0, 1})},
        {Permutation({1, 0, 3, 2}), Permutation({2, 3, 0, 1})}, 2);
    AmalgamFusion A = build_amalgam_fusion(spec);
    REQUIRE(A.centric.size() == 1);
    CosetGraph g = amalgam_graph(A.F, A.F1, A.F2, A.centric[0]);
    CHECK(g.vs_rep.size() == 3); // Hom_F(V4,S)/Inn(S) = Aut_F(V4) = C3
    CHECK(g.nv1 == 1);
    CHECK(g.nv2 == 1);
    CHECK(g.edges() == 6);
    CHECK(g.vertices() == 5);
    CHECK(g.components() == 1);
    CHECK(g.h1_dim() == 2);
}

TEST_CASE("degenerate amalgam graphs are trees") {
    for (auto S : {v4(), d8()}) {
        std::vector<Permutation> gens;
        for (int gi : S->generator_indices()) gens.push_back(S->element(gi));
        AmalgamSpec spec = make_amalgam_spec(S, S, S, gens, gens, 2);
        AmalgamFusion A = build_amalgam_fusion(spec);
        for (int c : A.centric) {
            CosetGraph g = amalgam_graph(A.F, A.F1, A.F2, c);
            CHECK(g.components() == 1);
            CHECK(g.h1_dim() == 0);
        }
    }
}

TEST_CASE("centralizer quotient module over the A4 double") {
    AmalgamSpec spec = make_amalgam_spec(v4(), a4(), a4(),
        {Permutation({1, 0, 3, 2}), Permutation({2, 3, 0, 1})},
        {Permutation({1, 0, 3, 2}), Permutation({2, 3, 0, 1})}, 2);
    AmalgamFusion A = build_amalgam_fusion(spec);
    OrbitCategory oc = orbit_category(A.F, A.centric);
    CatModule C = cgpc_module(A.F, A.F1, A.F2, oc, 2);
    C.validate(oc.cat);
    REQUIRE(oc.cat.nobj == 1);
    CHECK(C.dim[0] == 2);
    // the induced action of Out_F(V4) = C3 is fixed point free of order 3
    for (int f = 0; f < oc.cat.nmor(); ++f) {
        if (f == oc.cat.id_of[0]) continue;
        const FpMat& Amat = C.act[f];
        FpMat AI = Amat + FpMat::identity(2, 2); // A - I over F2
        CHECK(rank(AI) == 2);
        CHECK(Amat * Amat * Amat == FpMat::identity(2, 2));
    }
    // no nonzero map to or from the constant module
    CatModule K = constant_module(oc.cat, 2);
    CHECK(module_hom_dim(oc.cat, C, K) == 0);
    CHECK(module_hom_dim(oc.cat, K, C) == 0);
}

TEST_CASE("centralizer quotient module at an odd prime") {
    // S3 double over C3 at p = 3.  The centraliser of C3 in the amalgam is
    // C3 x Z (a reflection from each side composes to a centralising element
    // of infinite order), so the module is one dimensional and the outer
    // inversion negates the cycle.
    auto C3 = make_group(3, {Permutation({1, 2, 0})}, "C3");
    auto S3 = s3();
    AmalgamSpec spec = make_amalgam_spec(C3, S3, S3,
        {Permutation({1, 2, 0})}, {Permutation({1, 2, 0})}, 3);
    AmalgamFusion A = build_amalgam_fusion(spec);
    OrbitCategory oc = orbit_category(A.F, A.centric);
    REQUIRE(oc.cat.nobj == 1);
    CHECK(oc.cat.nmor() == 2); // Out_F(C3) = C2
    CatModule C = cgpc_module(A.F, A.F1, A.F2, oc, 3);
    C.validate(oc.cat);
    CHECK(C.total_dim() == 1);
    for (int f = 0; f < oc.cat.nmor(); ++f)
        if (f != oc.cat.id_of[0]) CHECK(C.act[f].at(0, 0) == 2); // acts by -1
    // sign representation: no invariants, so no maps to or from the constant
    CatModule K = constant_module(oc.cat, 3);
    CHECK(module_hom_dim(oc.cat, C, K) == 0);
    CHECK(module_hom_dim(oc.cat, K, C) == 0);
}

TEST_CASE("centralizer quotient module demands the centric family") {
    AmalgamSpec spec = make_amalgam_spec(v4(), a4(), a4(),
        {Permutation({1, 0, 3, 2}), Permutation({2, 3, 0, 1})},
        {Permutation({1, 0, 3, 2}), Permutation({2, 3, 0, 1})}, 2);
    AmalgamFusion A = build_amalgam_fusion(spec);
    OrbitCategory full = orbit_category(A.F);
    CHECK_THROWS_AS(cgpc_module(A.F, A.F1, A.F2, full, 2), input_error);
}

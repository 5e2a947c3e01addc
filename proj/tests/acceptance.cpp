// Acceptance harness: one line per criterion, exit code = number of failures.
// Every check is an exact integer comparison; timings only bound runtimes.
#include <chrono>
#include <cstdio>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fusionlim/dwyer.hpp"
#include "fusionlim/intmodule.hpp"
#include "fusionlim/io.hpp"
#include "fusionlim/theorem_a.hpp"

#include "oracles.hpp"

using namespace fusionlim;

namespace {

std::string g_data = "data";
int g_failures = 0;

void report(int n, const std::string& what, bool pass, const std::string& detail = "") {
    std::printf("[%s] criterion %d: %s%s%s\n", pass ? "PASS" : "FAIL", n, what.c_str(),
                detail.empty() ? "" : " — ", detail.c_str());
    if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

GroupPtr v4() { return make_group(4, {Permutation({1, 0, 3, 2}), Permutation({2, 3, 0, 1})}, "V4"); }
GroupPtr d8() { return make_group(4, {Permutation({1, 2, 3, 0}), Permutation({2, 1, 0, 3})}, "D8"); }
GroupPtr a4() { return make_group(4, {Permutation({1, 0, 3, 2}), Permutation({1, 2, 0, 3})}, "A4"); }
GroupPtr s4() { return make_group(4, {Permutation({1, 2, 3, 0}), Permutation({1, 0, 2, 3})}, "S4"); }
GroupPtr c2() { return make_group(2, {Permutation({1, 0})}, "C2"); }

const char* kAmalgamFiles[] = {"amalgam_a4.json",  "amalgam_s4.json", "amalgam_s4_twisted.json",
                               "amalgam_c2.json", "amalgam_v4.json", "amalgam_d8.json"};

AmalgamFusion load_amalgam(const std::string& name) {
    return build_amalgam_fusion(amalgam_from_json(load_json_file(g_data + "/" + name)));
}

// Shared corpus between the two-arrow oracle criteria: two hundred random
// modules with primes cycling through 2, 3, 5 and dimensions at most six.
struct TwoArrowCorpus {
    FiniteCategory cat;
    std::vector<CatModule> mods;
    std::vector<std::vector<int>> lims; // filled by criterion 1, degrees 0..6
};

TwoArrowCorpus build_corpus() {
    TwoArrowCorpus corpus;
    corpus.cat = dn_category(2);
    std::mt19937 rng(729344);
    const int ps[3] = {2, 3, 5};
    for (int i = 0; i < 200; ++i)
        corpus.mods.push_back(oracles::random_two_arrow_module(corpus.cat, rng, ps[i % 3], 6));
    return corpus;
}

void criterion_1(TwoArrowCorpus& corpus) {
    const std::string what =
        "generic Ext engine matches the two-arrow closed form on 200 random modules";
    try {
        auto t0 = std::chrono::steady_clock::now();
        std::map<int, Resolution> res;
        for (int p : {2, 3, 5})
            res.emplace(p, free_resolution(corpus.cat, constant_module(corpus.cat, p), 8));
        bool ok = true;
        std::string detail;
        for (std::size_t i = 0; i < corpus.mods.size() && ok; ++i) {
            const CatModule& M = corpus.mods[i];
            std::vector<int> got = ext_dims(corpus.cat, res.at(M.p), M, 6);
            std::vector<int> want = two_arrow_closed_form(corpus.cat, M, 6);
            if (got != want) {
                ok = false;
                std::ostringstream d;
                d << "module " << i << " disagrees with the closed form";
                detail = d.str();
            }
            for (int n = 2; n <= 6 && ok; ++n)
                if (got[n] != 0) {
                    ok = false;
                    detail = "nonzero limit above degree one at module " + std::to_string(i);
                }
            corpus.lims.push_back(std::move(got));
        }
        double secs = seconds_since(t0);
        if (ok && secs >= 10.0) {
            ok = false;
            detail = "runtime " + std::to_string(secs) + "s exceeds the 10s bound";
        }
        report(1, what, ok, detail);
    } catch (const std::exception& e) {
        report(1, what, false, e.what());
    }
}

void criterion_2() {
    const std::string what =
        "free resolution of the constant two-arrow module has the expected shape";
    try {
        bool ok = true;
        FiniteCategory d2 = dn_category(2);
        for (int p : {2, 3, 5}) {
            Resolution res = free_resolution(d2, constant_module(d2, p), 4);
            // F0 one generator at each singleton, F1 one at the top, then zero
            std::vector<int> g0 = res.F[0].gens;
            std::sort(g0.begin(), g0.end());
            ok = ok && g0 == std::vector<int>{0, 1};
            ok = ok && res.F[1].gens == std::vector<int>{2};
            ok = ok && res.F[2].gens.empty();
            ok = ok && res.complete;
        }
        report(2, what, ok);
    } catch (const std::exception& e) {
        report(2, what, false, e.what());
    }
}

void criterion_3() {
    const std::string what =
        "poset homology equals the hom class count in degree zero and vanishes above";
    try {
        auto t0 = std::chrono::steady_clock::now();
        std::mt19937 rng(508227);
        std::vector<std::pair<GroupPtr, std::vector<int>>> zoo = {
            {make_group(3, {Permutation({1, 0, 2}), Permutation({1, 2, 0})}, "S3"), {2, 3}},
            {make_group(6, {Permutation({1, 2, 3, 4, 5, 0})}, "C6"), {2, 3}},
            {d8(), {2}},
            {a4(), {2, 3}},
            {s4(), {2, 3}},
            {make_group(6, {Permutation({1, 2, 3, 4, 5, 0}), Permutation({5, 4, 3, 2, 1, 0})},
                        "D12"),
             {2, 3}},
            {make_group(6, {Permutation({1, 0, 2, 3, 4, 5}), Permutation({0, 1, 3, 4, 5, 2})},
                        "C2xC4"),
             {2}},
            {make_group(6, {Permutation({1, 2, 0, 3, 4, 5}), Permutation({0, 1, 2, 4, 5, 3})},
                        "C3xC3"),
             {3}},
        };
        int trials = 0;
        bool ok = true;
        std::string detail;
        for (auto& [G, primes] : zoo) {
            auto subs = subgroups_of(full_subgroup(*G));
            for (int p : primes) {
                std::vector<Subgroup> fam;
                for (auto& H : subs)
                    if (is_p_group(H, p)) fam.push_back(H);
                if (!family_product_closed(fam)) {
                    ok = false;
                    detail = "family not product closed for " + G->name();
                    continue;
                }
                std::uniform_int_distribution<int> pick_h(0, static_cast<int>(subs.size()) - 1);
                std::uniform_int_distribution<int> pick_p(0, static_cast<int>(fam.size()) - 1);
                for (int t = 0; t < 3; ++t) {
                    Subgroup H = subs[pick_h(rng)];
                    Subgroup P = fam[pick_p(rng)];
                    CosetPoset cp = build_coset_poset(G, H, fam);
                    std::vector<int> h = fixed_quotient_homology(cp, P, p, 4);
                    if (h[0] != hom_class_count(H, P)) {
                        ok = false;
                        detail = "degree zero mismatch on " + G->name();
                    }
                    for (int n = 1; n <= 4; ++n)
                        if (h[n] != 0) {
                            ok = false;
                            detail = "nonzero higher homology on " + G->name();
                        }
                    ++trials;
                }
            }
        }
        if (trials < 30) {
            ok = false;
            detail = "only " + std::to_string(trials) + " trials";
        }
        double secs = seconds_since(t0);
        if (ok && secs >= 120.0) {
            ok = false;
            detail = "runtime " + std::to_string(secs) + "s exceeds the 2min bound";
        }
        report(3, what + " (" + std::to_string(trials) + " trials)", ok, detail);
    } catch (const std::exception& e) {
        report(3, what, false, e.what());
    }
}

void criterion_4() {
    const std::string what =
        "transfer axioms hold and transfer after restriction is the index on every map";
    try {
        std::vector<FusionSystem> systems;
        {
            auto V = v4();
            auto A = a4();
            auto eV = GroupEmbedding::from_generator_images(
                *V, *A, {Permutation({1, 0, 3, 2}), Permutation({2, 3, 0, 1})});
            systems.push_back(fusion_of_group(V, *A, eV, 2));
        }
        {
            auto D = d8();
            auto S = s4();
            auto eD = GroupEmbedding::from_generator_images(
                *D, *S, {Permutation({1, 2, 3, 0}), Permutation({2, 1, 0, 3})});
            systems.push_back(fusion_of_group(D, *S, eD, 2));
        }
        for (auto S : {c2(), v4(), d8()}) systems.push_back(fusion_of_group(S, 2));

        bool ok = true;
        std::string detail;
        for (const FusionSystem& F : systems) {
            for (int j = -1; j <= 2; ++j) { // -1 stands for the fixed point functor
                MackeyFunctor M = j < 0 ? fixed_point_mackey(F, 2) : cohomology_mackey(F, j, 2);
                MackeyReport mk = check_mackey(M);
                if (!mk.pass) {
                    ok = false;
                    detail = mk.detail;
                    continue;
                }
                const FiniteCategory& c = M.orbit.cat;
                for (int f = 0; f < c.nmor() && ok; ++f) {
                    int src = M.orbit.family[c.mor[f].src];
                    int dst = M.orbit.family[c.mor[f].dst];
                    int index = F.object(dst).order() / F.object(src).order();
                    FpMat tr = M.cov[f] * M.contra.act[f]; // M(dst) -> M(dst)
                    FpMat want = FpMat::identity(2, tr.rows);
                    for (auto& v : want.a) v = v * (index % 2) % 2;
                    if (!(tr == want)) {
                        ok = false;
                        detail = "transfer-restriction composite is not the index";
                    }
                }
            }
        }
        report(4, what, ok, detail);
    } catch (const std::exception& e) {
        report(4, what, false, e.what());
    }
}

void criterion_5() {
    const std::string what = "minimal resolution cohomology matches bar complex enumeration";
    try {
        bool ok = true;
        std::string detail;
        auto C4 = make_group(4, {Permutation({1, 2, 3, 0})}, "C4");
        auto Q8 = make_group(8, {Permutation({2, 3, 1, 0, 6, 7, 5, 4}),
                                 Permutation({4, 5, 7, 6, 1, 0, 2, 3})}, "Q8");
        for (auto G : {c2(), C4, v4(), d8(), Q8}) {
            std::vector<int> lib = GroupCohomology(G, 2, 3).cohomology_dims();
            std::vector<int> bar = oracles::bar_cohomology_dims(*G, 2, 3);
            if (lib != bar) {
                ok = false;
                detail = "dimension mismatch for " + G->name();
            }
        }
        report(5, what, ok, detail);
    } catch (const std::exception& e) {
        report(5, what, false, e.what());
    }
}

void criterion_6() {
    const std::string what = "exact sequence identities hold on the shipped amalgam corpus";
    try {
        bool ok = true;
        std::string detail;
        for (const char* name : kAmalgamFiles) {
            AmalgamFusion A = load_amalgam(name);
            for (int j = -1; j <= 2 && ok; ++j) {
                MackeyFunctor M =
                    j < 0 ? fixed_point_mackey(A.F, 2) : cohomology_mackey(A.F, j, 2);
                HypothesisReport hyp = verify_hypotheses(A, M, 4);
                if (!hyp.pass) {
                    ok = false;
                    detail = std::string(name) + ": " + hyp.detail;
                    break;
                }
                SharpnessReport r = verify_exact_sequence(A, M, 4);
                if (!r.pass) {
                    ok = false;
                    detail = std::string(name) + ": " + r.detail;
                    break;
                }
                if (r.elapsed_ms >= 300000.0) {
                    ok = false;
                    detail = std::string(name) + ": run exceeded five minutes";
                    break;
                }
            }
            if (!ok) break;
        }
        // hand anchors for the Klein four double: the cycle module is two
        // dimensional with a fixed point free order three action, and the
        // fixed point run is all zero away from degree zero
        if (ok) {
            AmalgamFusion A = load_amalgam("amalgam_a4.json");
            OrbitCategory oc = orbit_category(A.F, A.centric);
            CatModule C = cgpc_module(A.F, A.F1, A.F2, oc, 2);
            ok = ok && C.total_dim() == 2;
            int nontrivial = 0;
            for (int f = 0; f < oc.cat.nmor(); ++f) {
                if (f == oc.cat.id_of[0]) continue;
                const FpMat& Am = C.act[f];
                FpMat AI = Am + FpMat::identity(2, 2);
                ok = ok && rank(AI) == 2; // no fixed vectors
                ok = ok && Am * Am * Am == FpMat::identity(2, 2);
                ++nontrivial;
            }
            ok = ok && nontrivial == 2;
            MackeyFunctor M = fixed_point_mackey(A.F, 2);
            SharpnessReport r = verify_exact_sequence(A, M, 4);
            ok = ok && r.lim == std::vector<int>{1, 0, 0, 0, 0};
            ok = ok && r.stable_quotient_dim == 0 && r.hom_dim == 0;
            ok = ok && r.ext == std::vector<int>{0, 0, 0};
            if (!ok) detail = "hand anchors for the Klein four double failed";
        }
        report(6, what, ok, detail);
    } catch (const std::exception& e) {
        report(6, what, false, e.what());
    }
}

void criterion_7() {
    const std::string what =
        "cohomology functors are sharp over both nontrivial centric orbit categories";
    try {
        bool ok = true;
        std::string detail;
        for (const char* name : {"amalgam_a4.json", "amalgam_s4.json"}) {
            AmalgamFusion A = load_amalgam(name);
            for (int j = 0; j <= 2; ++j) {
                MackeyFunctor M = cohomology_mackey(A.F, j, 2);
                SharpnessScan scan = sharpness_scan(A.F, M, 4);
                if (!scan.all_vanish) {
                    ok = false;
                    std::ostringstream d;
                    d << name << " degree " << j << " has nonvanishing limits at";
                    for (int n : scan.nonzero_degrees) d << " " << n;
                    detail = d.str();
                }
            }
        }
        report(7, what, ok, detail);
    } catch (const std::exception& e) {
        report(7, what, false, e.what());
    }
}

void criterion_8(const TwoArrowCorpus& corpus) {
    const std::string what =
        "integral higher limits are elementary abelian of the module's mod-p ranks";
    try {
        bool ok = corpus.lims.size() == corpus.mods.size();
        std::string detail = ok ? "" : "mod-p corpus dimensions were not computed";
        IntResolution ires =
            int_free_resolution(corpus.cat, constant_int_module(corpus.cat), 6);
        for (std::size_t i = 0; i < corpus.mods.size() && ok; ++i) {
            const CatModule& M = corpus.mods[i];
            auto zi = int_ext_invariants(corpus.cat, ires, to_integral(corpus.cat, M), 4);
            for (int n = 0; n <= 4 && ok; ++n) {
                std::vector<mpz_class> want(corpus.lims[i][n], mpz_class(M.p));
                if (zi[n] != want) {
                    ok = false;
                    detail = "invariant factors disagree at module " + std::to_string(i) +
                             " degree " + std::to_string(n);
                }
            }
        }
        report(8, what, ok, detail);
    } catch (const std::exception& e) {
        report(8, what, false, e.what());
    }
}

void criterion_9() {
    const std::string what = "higher limits are invariant under passing to the skeleton";
    try {
        bool ok = true;
        std::string detail;
        int collapsed = 0; // count cases where the skeleton is genuinely smaller
        for (const char* name : kAmalgamFiles) {
            AmalgamFusion A = load_amalgam(name);
            for (int j = -1; j <= 1 && ok; ++j) {
                MackeyFunctor M =
                    j < 0 ? fixed_point_mackey(A.F, 2) : cohomology_mackey(A.F, j, 2);
                // once over the centric orbit category, once over the full one
                OrbitCategory oc = orbit_category(A.F, A.centric);
                CatModule Mc = restrict_to_orbit_subcategory(M, oc);
                std::vector<std::pair<const FiniteCategory*, const CatModule*>> cases = {
                    {&oc.cat, &Mc}, {&M.orbit.cat, &M.contra}};
                for (auto [cat, mod] : cases) {
                    Skeleton sk = skeleton(*cat);
                    if (sk.cat.nobj < cat->nobj) ++collapsed;
                    CatModule Msk = restrict_module(*mod, sk.incl, sk.cat);
                    std::vector<int> full = higher_limits(*cat, *mod, 4);
                    std::vector<int> skel = higher_limits(sk.cat, Msk, 4);
                    if (full != skel) {
                        ok = false;
                        detail = std::string(name) + ": limits change across the skeleton";
                    }
                }
            }
            if (!ok) break;
        }
        if (ok && collapsed == 0) {
            ok = false;
            detail = "no case exercised a nontrivial skeleton";
        }
        report(9, what, ok, detail);
    } catch (const std::exception& e) {
        report(9, what, false, e.what());
    }
}

} // namespace

int main(int argc, char** argv) {
    if (argc > 1) g_data = argv[1];
    TwoArrowCorpus corpus = build_corpus();
    criterion_1(corpus);
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8(corpus);
    criterion_9();
    if (g_failures == 0)
        std::printf("all criteria passed\n");
    else
        std::printf("%d criteria failed\n", g_failures);
    return g_failures;
}

// Batch front end: load groups and amalgam specs from JSON, run the
// pipelines, emit reports.  Exit codes: 0 success, 2 bad input, 3 failed
// mathematical check, 4 resource cap hit.
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fusionlim/io.hpp"

namespace {

using namespace fusionlim;

// JSON goes to --out when given (markdown then goes to stdout), otherwise
// JSON itself goes to stdout.
void emit(const std::string& out_path, const json& j, const std::string& markdown = "") {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        write_json_file(out_path, j);
        if (!markdown.empty()) std::cout << markdown;
    }
}

int cmd_fusion_build(const std::string& spec_path, const std::string& out, int cap_order) {
    AmalgamSpec spec = amalgam_from_json(load_json_file(spec_path), cap_order);
    AmalgamFusion A = build_amalgam_fusion(spec);
    emit(out, fusion_summary_json(A));
    return 0;
}

int cmd_limits(const std::string& cat_path, const std::string& mod_path, int maxdeg,
               bool use_skeleton, bool integral, int cap_dim, const std::string& out) {
    FiniteCategory cat = category_from_json(load_json_file(cat_path));
    CatModule M = module_from_json(cat, load_json_file(mod_path));
    Skeleton sk;
    if (use_skeleton) {
        sk = skeleton(cat);
        M = restrict_module(M, sk.incl, sk.cat);
    }
    const FiniteCategory& c = use_skeleton ? sk.cat : cat;
    if (integral) {
        auto inv = int_higher_limits(c, to_integral(c, M), maxdeg);
        emit(out, int_limits_to_json(inv), int_limits_to_markdown(inv));
    } else {
        auto dims = higher_limits(c, M, maxdeg, cap_dim);
        emit(out, limits_to_json(dims), limits_to_markdown(dims));
    }
    return 0;
}

int cmd_theorem_a(const std::string& spec_path, const std::string& functor, int degree,
                  int maxdeg, const std::string& out, int cap_order) {
    AmalgamSpec spec = amalgam_from_json(load_json_file(spec_path), cap_order);
    AmalgamFusion A = build_amalgam_fusion(spec);
    MackeyFunctor M = functor == "fixed_point" ? fixed_point_mackey(A.F, spec.p)
                                               : cohomology_mackey(A.F, degree, spec.p);
    HypothesisReport hyp = verify_hypotheses(A, M, maxdeg);
    if (!hyp.pass) {
        json j;
        j["status"] = "HypothesisFailed";
        j["hypotheses"] = hypothesis_to_json(hyp);
        emit(out, j);
        return 3;
    }
    SharpnessReport rep = verify_exact_sequence(A, M, maxdeg);
    emit(out, sharpness_to_json(rep), sharpness_to_markdown(rep));
    return rep.pass ? 0 : 3;
}

struct OracleCase {
    GroupPtr G;
    Subgroup H;
    std::vector<Subgroup> family;
    Subgroup P;
    int prime = 2;
    std::string label;
};

std::vector<Subgroup> all_p_subgroups(const FiniteGroup& G, int p) {
    std::vector<Subgroup> fam;
    for (const Subgroup& P : subgroups_of(full_subgroup(G))) {
        int n = P.order();
        while (n % p == 0) n /= p;
        if (n == 1) fam.push_back(P);
    }
    return fam;
}

int run_oracle_cases(const std::vector<OracleCase>& cases, int maxdeg, const std::string& out) {
    json rows = json::array();
    std::ostringstream md;
    md << "| case | |G| | |H| | |P| | H_0 | predicted | higher | verdict |\n"
       << "|---|---|---|---|---|---|---|---|\n";
    bool mismatch = false;
    for (const OracleCase& oc : cases) {
        CosetPoset X = build_coset_poset(oc.G, oc.H, oc.family);
        bool closed = family_product_closed(oc.family);
        std::vector<int> h = fixed_quotient_homology(X, oc.P, oc.prime, maxdeg);
        int predicted = hom_class_count(oc.H, oc.P);
        bool higher_zero = true;
        for (int n = 1; n <= maxdeg; ++n) higher_zero = higher_zero && h[n] == 0;
        std::string verdict;
        if (!closed) {
            verdict = "skipped";
            std::cerr << "warning: " << oc.label
                      << ": family is not product closed, prediction not asserted\n";
        } else if (h[0] == predicted && higher_zero) {
            verdict = "match";
        } else {
            verdict = "MISMATCH";
            mismatch = true;
        }
        json row;
        row["case"] = oc.label;
        row["group_order"] = oc.G->order();
        row["H_order"] = oc.H.order();
        row["P_order"] = oc.P.order();
        row["homology"] = h;
        row["predicted_h0"] = predicted;
        row["product_closed"] = closed;
        row["verdict"] = verdict;
        rows.push_back(std::move(row));
        md << "| " << oc.label << " | " << oc.G->order() << " | " << oc.H.order() << " | "
           << oc.P.order() << " | " << h[0] << " | " << predicted << " | "
           << (higher_zero ? "0" : "nonzero") << " | " << verdict << " |\n";
    }
    json j;
    j["cases"] = std::move(rows);
    j["all_match"] = !mismatch;
    emit(out, j, md.str());
    return mismatch ? 3 : 0;
}

int cmd_dwyer_oracle(const std::string& config_path, int random_trials, unsigned seed,
                     int prime_override, int maxdeg, int cap_order, const std::string& out) {
    std::vector<OracleCase> cases;
    if (!config_path.empty()) {
        json j = load_json_file(config_path);
        OracleCase base;
        base.G = group_from_json(field(j, "G"), cap_order);
        base.H = subgroup_from_json(*base.G, field(j, "H"));
        const json& fam = field(j, "family");
        if (fam.is_object()) {
            base.family = all_p_subgroups(*base.G, field(fam, "all_p_subgroups").get<int>());
        } else {
            for (const json& s : fam) base.family.push_back(subgroup_from_json(*base.G, s));
        }
        base.prime = prime_override > 0 ? prime_override : j.value("prime", 2);
        std::vector<Subgroup> ps;
        if (j.contains("P"))
            for (const json& s : j["P"]) ps.push_back(subgroup_from_json(*base.G, s));
        else
            ps = base.family;
        int k = 0;
        for (const Subgroup& P : ps) {
            OracleCase oc = base;
            oc.P = P;
            oc.label = (base.G->name().empty() ? "case" : base.G->name()) + "#" +
                       std::to_string(k++);
            cases.push_back(std::move(oc));
        }
    } else {
        require(random_trials > 0, "BadInput",
                "need --config or a positive --random trial count");
        std::vector<GroupPtr> zoo{
            make_group(3, {Permutation({1, 0, 2}), Permutation({1, 2, 0})}, "S3"),
            make_group(6, {Permutation({1, 2, 3, 4, 5, 0})}, "C6"),
            make_group(4, {Permutation({1, 2, 3, 0}), Permutation({2, 1, 0, 3})}, "D8"),
            make_group(8, {Permutation({2, 3, 1, 0, 6, 7, 5, 4}),
                           Permutation({4, 5, 7, 6, 1, 0, 2, 3})}, "Q8"),
            make_group(4, {Permutation({1, 0, 3, 2}), Permutation({1, 2, 0, 3})}, "A4"),
            make_group(4, {Permutation({1, 2, 3, 0}), Permutation({1, 0, 2, 3})}, "S4"),
            make_group(5, {Permutation({1, 2, 0, 3, 4}), Permutation({1, 2, 3, 4, 0})}, "A5"),
        };
        std::mt19937 rng(seed);
        for (int t = 0; t < random_trials; ++t) {
            OracleCase oc;
            oc.G = zoo[rng() % zoo.size()];
            std::vector<int> primes;
            for (int p : {2, 3, 5})
                if (oc.G->order() % p == 0) primes.push_back(p);
            int p = primes[rng() % primes.size()];
            oc.family = all_p_subgroups(*oc.G, p);
            std::vector<Subgroup> subs = subgroups_of(full_subgroup(*oc.G));
            oc.H = subs[rng() % subs.size()];
            oc.P = oc.family[rng() % oc.family.size()];
            oc.prime = prime_override > 0 ? prime_override : p;
            oc.label = oc.G->name() + "#" + std::to_string(t);
            cases.push_back(std::move(oc));
        }
    }
    return run_oracle_cases(cases, maxdeg, out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fusion orbit category limit computations"};
    app.require_subcommand(1);

    std::string spec_path, cat_path, mod_path, config_path, out_path, functor = "cohomology";
    int maxdeg = 4, degree = 1, cap_order = kDefaultOrderBound, cap_dim = kDefaultDimCap;
    int random_trials = 0, prime = 0;
    unsigned seed = 0;
    bool use_skeleton = false, integral = false;

    CLI::App* build = app.add_subcommand("fusion-build", "build fusion data from an amalgam");
    build->add_option("--spec", spec_path, "amalgam spec JSON")->required();
    build->add_option("--out", out_path, "output JSON path");
    build->add_option("--cap-order", cap_order, "group order bound");

    CLI::App* limits = app.add_subcommand("limits", "higher limits of a module over a category");
    limits->add_option("--category", cat_path, "category JSON")->required();
    limits->add_option("--module", mod_path, "module JSON")->required();
    limits->add_option("--maxdeg", maxdeg, "top degree");
    limits->add_flag("--skeleton,!--no-skeleton", use_skeleton,
                     "compute over a skeleton of the category");
    limits->add_flag("--integral", integral, "integral invariant factors via Smith form");
    limits->add_option("--cap-dim", cap_dim, "resolution dimension cap");
    limits->add_option("--out", out_path, "output JSON path");

    CLI::App* ta = app.add_subcommand("theorem-a", "exact sequence report for an amalgam");
    ta->add_option("--spec", spec_path, "amalgam spec JSON")->required();
    ta->add_option("--functor", functor, "fixed_point or cohomology")
        ->check(CLI::IsMember({"fixed_point", "cohomology"}));
    ta->add_option("--degree", degree, "cohomology degree");
    ta->add_option("--maxdeg", maxdeg, "top limit degree");
    ta->add_option("--cap-order", cap_order, "group order bound");
    ta->add_option("--out", out_path, "output JSON path");

    CLI::App* oracle = app.add_subcommand("dwyer-oracle",
                                          "coset poset homology against the class count");
    oracle->add_option("--config", config_path, "oracle config JSON");
    oracle->add_option("--random", random_trials, "number of randomized trials");
    oracle->add_option("--seed", seed, "random seed");
    oracle->add_option("--prime", prime, "coefficient prime override");
    oracle->add_option("--maxdeg", maxdeg, "top homology degree");
    oracle->add_option("--cap-order", cap_order, "group order bound");
    oracle->add_option("--out", out_path, "output JSON path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (build->parsed()) return cmd_fusion_build(spec_path, out_path, cap_order);
        if (limits->parsed())
            return cmd_limits(cat_path, mod_path, maxdeg, use_skeleton, integral, cap_dim,
                              out_path);
        if (ta->parsed())
            return cmd_theorem_a(spec_path, functor, degree, maxdeg, out_path, cap_order);
        if (oracle->parsed())
            return cmd_dwyer_oracle(config_path, random_trials, seed, prime, maxdeg, cap_order,
                                    out_path);
    } catch (const input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const cap_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const check_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

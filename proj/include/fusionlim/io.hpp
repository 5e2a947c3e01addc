#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fusionlim/intmodule.hpp"
#include "fusionlim/theorem_a.hpp"

namespace fusionlim {

using json = nlohmann::ordered_json;

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), "BadInput", "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw input_error("BadJson", path + ": " + e.what());
    }
}

inline void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    require(out.good(), "BadInput", "cannot write " + path);
    out << j.dump(2) << "\n";
}

// Field access that reports which key is missing or mistyped.
inline const json& field(const json& j, const std::string& key) {
    auto it = j.find(key);
    require(it != j.end(), "BadJson", "missing field \"" + key + "\"");
    return *it;
}

inline Permutation perm_from_json(const json& j) {
    require(j.is_array(), "BadJson", "permutation must be an array of images");
    std::vector<std::uint8_t> img;
    img.reserve(j.size());
    for (const json& v : j) {
        require(v.is_number_integer(), "BadJson", "permutation entries must be integers");
        int e = v.get<int>();
        require(e >= 0 && e < kMaxDegree, "InvalidPermutation", "image out of range");
        img.push_back(static_cast<std::uint8_t>(e));
    }
    return Permutation(std::move(img));
}

inline std::vector<Permutation> perm_list_from_json(const json& j) {
    require(j.is_array(), "BadJson", "expected an array of permutations");
    std::vector<Permutation> out;
    out.reserve(j.size());
    for (const json& g : j) out.push_back(perm_from_json(g));
    return out;
}

// {"degree": d, "generators": [[images], ...], "name": "..."}
inline GroupPtr group_from_json(const json& j, int order_bound = kDefaultOrderBound) {
    int degree = field(j, "degree").get<int>();
    std::vector<Permutation> gens = perm_list_from_json(field(j, "generators"));
    std::string name = j.value("name", std::string());
    return make_group(degree, std::move(gens), std::move(name), order_bound);
}

inline json group_to_json(const FiniteGroup& G) {
    json j;
    j["degree"] = G.degree();
    json gens = json::array();
    for (int g : G.generator_indices()) {
        const Permutation& p = G.element(g);
        json img = json::array();
        for (int i = 0; i < p.degree(); ++i) img.push_back(p(i));
        gens.push_back(std::move(img));
    }
    j["generators"] = std::move(gens);
    if (!G.name().empty()) j["name"] = G.name();
    return j;
}

// {"p": 2, "G1": group, "G2": group, "S_in_G1": [[images], ...],
//  "S_in_G2": [[images], ...]}.  The shared group is the subgroup of G1
// generated by S_in_G1, abstracted to its own permutation group; the two
// generator image lists pair up entrywise.
inline AmalgamSpec amalgam_from_json(const json& j, int order_bound = kDefaultOrderBound) {
    int p = field(j, "p").get<int>();
    GroupPtr G1 = group_from_json(field(j, "G1"), order_bound);
    GroupPtr G2 = group_from_json(field(j, "G2"), order_bound);
    std::vector<Permutation> in1 = perm_list_from_json(field(j, "S_in_G1"));
    std::vector<Permutation> in2 = perm_list_from_json(field(j, "S_in_G2"));
    require(!in1.empty() && in1.size() == in2.size(), "BadJson",
            "generator image lists must be nonempty and of equal length");
    GroupPtr S = make_group(G1->degree(), in1, "S", order_bound);
    return make_amalgam_spec(std::move(S), std::move(G1), std::move(G2), in1, in2, p);
}

// Subgroup from a list of generating permutations of the parent group.
inline Subgroup subgroup_from_json(const FiniteGroup& G, const json& j) {
    std::vector<int> gens;
    for (const Permutation& p : perm_list_from_json(j)) {
        require(G.contains(p), "BadInput", "subgroup generator is not in the group");
        gens.push_back(G.index_of(p));
    }
    return generated_subgroup(G, gens);
}

inline json matrix_to_json(const FpMat& A) {
    json rows = json::array();
    for (int i = 0; i < A.rows; ++i) {
        json r = json::array();
        for (int k = 0; k < A.cols; ++k) r.push_back(A.at(i, k));
        rows.push_back(std::move(r));
    }
    return rows;
}

inline FpMat matrix_from_json(int p, int rows, int cols, const json& j) {
    require(j.is_array() && static_cast<int>(j.size()) == rows, "BadJson",
            "matrix row count mismatch");
    FpMat A(p, rows, cols);
    for (int i = 0; i < rows; ++i) {
        const json& r = j[i];
        require(r.is_array() && static_cast<int>(r.size()) == cols, "BadJson",
                "matrix column count mismatch");
        for (int k = 0; k < cols; ++k) {
            int v = r[k].get<int>();
            A.at(i, k) = ((v % p) + p) % p;
        }
    }
    return A;
}

// {"objects": [names], "morphisms": [{"src": i, "dst": j}, ...],
//  "identity": [per object], "composition": [[g rows] x [f cols], -1 gaps]}
inline FiniteCategory category_from_json(const json& j) {
    FiniteCategory c;
    for (const json& nm : field(j, "objects")) c.obj_names.push_back(nm.get<std::string>());
    c.nobj = static_cast<int>(c.obj_names.size());
    for (const json& m : field(j, "morphisms"))
        c.mor.push_back({field(m, "src").get<int>(), field(m, "dst").get<int>()});
    for (const json& e : field(j, "identity")) c.id_of.push_back(e.get<int>());
    const json& comp = field(j, "composition");
    require(static_cast<int>(comp.size()) == c.nmor(), "BadJson",
            "composition table must be morphisms x morphisms");
    for (const json& row : comp) {
        require(static_cast<int>(row.size()) == c.nmor(), "BadJson",
                "composition table must be morphisms x morphisms");
        std::vector<int> r;
        for (const json& v : row) r.push_back(v.get<int>());
        c.comp.push_back(std::move(r));
    }
    for (const auto& m : c.mor)
        require(m.src >= 0 && m.src < c.nobj && m.dst >= 0 && m.dst < c.nobj, "BadJson",
                "morphism endpoint out of range");
    c.rebuild_hom();
    try {
        c.validate();
    } catch (const check_error& e) {
        throw input_error("BadCategory", e.what());
    }
    return c;
}

inline json category_to_json(const FiniteCategory& c) {
    json j;
    j["objects"] = c.obj_names;
    json mor = json::array();
    for (const auto& m : c.mor) mor.push_back(json{{"src", m.src}, {"dst", m.dst}});
    j["morphisms"] = std::move(mor);
    j["identity"] = c.id_of;
    j["composition"] = c.comp;
    return j;
}

// {"p": p, "dim": [per object], "act": [matrix per morphism]}; act[f] has
// dim[src] rows and dim[dst] columns.
inline CatModule module_from_json(const FiniteCategory& c, const json& j) {
    CatModule M;
    M.p = field(j, "p").get<int>();
    require(M.p >= 2, "BadJson", "module prime must be at least 2");
    for (const json& d : field(j, "dim")) M.dim.push_back(d.get<int>());
    require(static_cast<int>(M.dim.size()) == c.nobj, "BadJson",
            "one dimension per object required");
    const json& act = field(j, "act");
    require(static_cast<int>(act.size()) == c.nmor(), "BadJson",
            "one matrix per morphism required");
    for (int f = 0; f < c.nmor(); ++f)
        M.act.push_back(matrix_from_json(M.p, M.dim[c.mor[f].src], M.dim[c.mor[f].dst], act[f]));
    try {
        M.validate(c);
    } catch (const check_error& e) {
        throw input_error("BadModule", e.what());
    }
    return M;
}

inline json module_to_json(const CatModule& M) {
    json j;
    j["p"] = M.p;
    j["dim"] = M.dim;
    json act = json::array();
    for (const FpMat& A : M.act) act.push_back(matrix_to_json(A));
    j["act"] = std::move(act);
    return j;
}

inline json hypothesis_to_json(const HypothesisReport& rep) {
    json j;
    j["pass"] = rep.pass;
    j["transfer_axioms"] = rep.mackey.pass;
    json limits = json::array();
    for (const auto& l : rep.limits) limits.push_back(l);
    j["limits"] = std::move(limits);
    if (!rep.detail.empty()) j["detail"] = rep.detail;
    return j;
}

// Deterministic report: timings deliberately excluded.
inline json sharpness_to_json(const SharpnessReport& rep) {
    json j;
    j["status"] = rep.pass ? "pass" : "fail";
    j["lim"] = rep.lim;
    j["stable_quotient"] = rep.stable_quotient_dim;
    j["hom"] = rep.hom_dim;
    j["ext"] = rep.ext;
    j["identities"] = {{"euler", rep.euler_identity},
                       {"lim1_bounded", rep.lim1_bounded},
                       {"lim2_bounded", rep.lim2_bounded},
                       {"ext_shift", rep.ext_shift}};
    j["hypotheses"] = hypothesis_to_json(rep.hypotheses);
    if (!rep.detail.empty()) j["detail"] = rep.detail;
    return j;
}

inline std::string sharpness_to_markdown(const SharpnessReport& rep) {
    std::ostringstream md;
    md << "| quantity | value |\n|---|---|\n";
    for (std::size_t n = 0; n < rep.lim.size(); ++n)
        md << "| lim^" << n << " | " << rep.lim[n] << " |\n";
    md << "| stable quotient | " << rep.stable_quotient_dim << " |\n";
    md << "| hom | " << rep.hom_dim << " |\n";
    for (std::size_t n = 1; n < rep.ext.size(); ++n)
        md << "| ext^" << n << " | " << rep.ext[n] << " |\n";
    md << "| euler identity | " << (rep.euler_identity ? "pass" : "fail") << " |\n";
    md << "| lim^1 bound | " << (rep.lim1_bounded ? "pass" : "fail") << " |\n";
    md << "| lim^2 bound | " << (rep.lim2_bounded ? "pass" : "fail") << " |\n";
    md << "| ext shift | " << (rep.ext_shift ? "pass" : "fail") << " |\n";
    return md.str();
}

inline json limits_to_json(const std::vector<int>& dims) {
    json j;
    j["maxdeg"] = static_cast<int>(dims.size()) - 1;
    j["dims"] = dims;
    return j;
}

inline std::string limits_to_markdown(const std::vector<int>& dims) {
    std::ostringstream md;
    md << "| degree | dim |\n|---|---|\n";
    for (std::size_t n = 0; n < dims.size(); ++n) md << "| " << n << " | " << dims[n] << " |\n";
    return md.str();
}

inline json int_limits_to_json(const std::vector<std::vector<mpz_class>>& inv) {
    json degrees = json::array();
    for (const auto& deg : inv) {
        json factors = json::array();
        for (const mpz_class& d : deg) factors.push_back(d.get_str());
        degrees.push_back(std::move(factors));
    }
    json j;
    j["maxdeg"] = static_cast<int>(inv.size()) - 1;
    j["invariant_factors"] = std::move(degrees);
    return j;
}

inline std::string int_limits_to_markdown(const std::vector<std::vector<mpz_class>>& inv) {
    std::ostringstream md;
    md << "| degree | invariant factors |\n|---|---|\n";
    for (std::size_t n = 0; n < inv.size(); ++n) {
        md << "| " << n << " | ";
        if (inv[n].empty()) md << "0";
        for (std::size_t k = 0; k < inv[n].size(); ++k)
            md << (k ? ", " : "") << inv[n][k].get_str();
        md << " |\n";
    }
    return md.str();
}

// Conjugacy classes, centric family and orbit category sizes of a built
// fusion system.
inline json fusion_summary_json(const AmalgamFusion& A) {
    json j;
    j["p"] = A.F.p();
    j["reference_order"] = A.F.S().order();
    j["objects"] = A.F.nobj();
    json classes = json::array();
    std::vector<bool> seen(A.F.nobj(), false);
    for (int i = 0; i < A.F.nobj(); ++i) {
        if (seen[i]) continue;
        std::vector<int> cls = conjugacy_class(A.F, i);
        for (int b : cls) seen[b] = true;
        json entry;
        entry["order"] = A.F.object(i).order();
        entry["objects"] = cls;
        classes.push_back(std::move(entry));
    }
    j["conjugacy_classes"] = std::move(classes);
    j["centric"] = A.centric;
    OrbitCategory oc = orbit_category(A.F, A.centric);
    j["centric_orbit_category"] = {{"objects", oc.cat.nobj}, {"morphisms", oc.cat.nmor()}};
    return j;
}

}  // namespace fusionlim

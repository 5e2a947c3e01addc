#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <queue>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "fusionlim/errors.hpp"
#include "fusionlim/perm.hpp"
#include "fusionlim/smith.hpp"

namespace fusionlim {

constexpr int kDefaultOrderBound = 20000;

// Finite permutation group, fully enumerated.  Elements are stored sorted by
// image array, so element indices are canonical for a given element set.
class FiniteGroup {
public:
    FiniteGroup(int degree, std::vector<Permutation> generators, std::string name = "",
                int order_bound = kDefaultOrderBound)
        : degree_(degree), name_(std::move(name)) {
        require(degree >= 1 && degree <= kMaxDegree, "InvalidPermutation",
                "degree out of range");
        for (const auto& g : generators)
            require(g.degree() == degree, "InvalidPermutation",
                    "generator degree mismatch");
        enumerate(generators, order_bound);
        gens_.reserve(generators.size());
        for (const auto& g : generators) gens_.push_back(index_of(g));
    }

    int degree() const { return degree_; }
    int order() const { return static_cast<int>(elems_.size()); }
    const std::string& name() const { return name_; }
    const std::vector<Permutation>& elements() const { return elems_; }
    const Permutation& element(int i) const { return elems_[i]; }
    const std::vector<int>& generator_indices() const { return gens_; }
    int identity() const { return id_; }

    int index_of(const Permutation& p) const {
        auto it = index_.find(p);
        require(it != index_.end(), "NotAnElement", "permutation not in group");
        return it->second;
    }
    bool contains(const Permutation& p) const { return index_.find(p) != index_.end(); }

    int mul(int i, int j) const {
        if (!mul_.empty()) return mul_[static_cast<std::size_t>(i) * order() + j];
        return index_.at(elems_[i] * elems_[j]);
    }
    int inv(int i) const { return inv_[i]; }
    // conj(x, g) = x g x^{-1}
    int conj(int x, int g) const { return mul(mul(x, g), inv_[x]); }

    int element_order(int i) const {
        int n = 1, acc = i;
        while (acc != id_) {
            acc = mul(acc, i);
            ++n;
        }
        return n;
    }

private:
    void enumerate(const std::vector<Permutation>& generators, int order_bound) {
        std::vector<Permutation> work{Permutation::identity(degree_)};
        std::unordered_map<Permutation, int, PermHash> seen;
        seen.emplace(work[0], 0);
        for (std::size_t head = 0; head < work.size(); ++head) {
            Permutation cur = work[head]; // copy: work may reallocate
            for (const auto& g : generators) {
                Permutation nxt = cur * g;
                if (seen.emplace(nxt, static_cast<int>(work.size())).second) {
                    work.push_back(std::move(nxt));
                    if (static_cast<int>(work.size()) > order_bound)
                        throw cap_error("OrderBoundExceeded",
                                        "group order exceeds " + std::to_string(order_bound));
                }
            }
        }
        std::sort(work.begin(), work.end());
        elems_ = std::move(work);
        index_.clear();
        for (int i = 0; i < order(); ++i) index_.emplace(elems_[i], i);
        id_ = index_.at(Permutation::identity(degree_));
        inv_.resize(order());
        for (int i = 0; i < order(); ++i) inv_[i] = index_.at(elems_[i].inverse());
        if (order() <= 1024) {
            mul_.resize(static_cast<std::size_t>(order()) * order());
            for (int i = 0; i < order(); ++i)
                for (int j = 0; j < order(); ++j)
                    mul_[static_cast<std::size_t>(i) * order() + j] = index_.at(elems_[i] * elems_[j]);
        }
    }

    int degree_;
    std::string name_;
    std::vector<Permutation> elems_;
    std::unordered_map<Permutation, int, PermHash> index_;
    std::vector<int> inv_;
    std::vector<int> mul_; // full table when the group is small enough
    std::vector<int> gens_;
    int id_ = 0;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

inline GroupPtr make_group(int degree, std::vector<Permutation> gens, std::string name = "",
                           int order_bound = kDefaultOrderBound) {
    return std::make_shared<FiniteGroup>(degree, std::move(gens), std::move(name), order_bound);
}

// Subgroup of a FiniteGroup, stored as a sorted list of element indices.
class Subgroup {
public:
    Subgroup() = default;
    Subgroup(const FiniteGroup* G, std::vector<int> sorted_elems)
        : G_(G), elems_(std::move(sorted_elems)), member_(G->order(), false) {
        for (int e : elems_) member_[e] = true;
        pick_generators();
    }

    const FiniteGroup& parent() const { return *G_; }
    const FiniteGroup* parent_ptr() const { return G_; }
    int order() const { return static_cast<int>(elems_.size()); }
    const std::vector<int>& elements() const { return elems_; }
    int element(int k) const { return elems_[k]; }
    bool contains(int e) const { return member_[e]; }
    const std::vector<int>& generators() const { return gens_; }

    // Position of parent element e in this subgroup's element list.
    int position_of(int e) const {
        auto it = std::lower_bound(elems_.begin(), elems_.end(), e);
        require(it != elems_.end() && *it == e, "NotAnElement",
                "element not in subgroup");
        return static_cast<int>(it - elems_.begin());
    }

    bool operator==(const Subgroup& rhs) const {
        return G_ == rhs.G_ && elems_ == rhs.elems_;
    }
    bool operator<(const Subgroup& rhs) const { return elems_ < rhs.elems_; }

private:
    // Greedy generating set: repeatedly add the smallest element outside the
    // generated part.  Deterministic, and small enough in practice.
    void pick_generators() {
        std::vector<bool> got(G_->order(), false);
        std::vector<int> closure{G_->identity()};
        got[G_->identity()] = true;
        for (int e : elems_) {
            if (got[e]) continue;
            gens_.push_back(e);
            // close under multiplication by the new generating set
            std::vector<int> work = closure;
            work.push_back(e);
            got[e] = true;
            closure.push_back(e);
            for (std::size_t h = 0; h < work.size(); ++h)
                for (int g : gens_) {
                    int n = G_->mul(work[h], g);
                    if (!got[n]) {
                        got[n] = true;
                        work.push_back(n);
                        closure.push_back(n);
                    }
                }
        }
    }

    const FiniteGroup* G_ = nullptr;
    std::vector<int> elems_;
    std::vector<bool> member_;
    std::vector<int> gens_;
};

inline Subgroup generated_subgroup(const FiniteGroup& G, const std::vector<int>& gens) {
    std::vector<int> work{G.identity()};
    std::vector<bool> seen(G.order(), false);
    seen[G.identity()] = true;
    for (std::size_t h = 0; h < work.size(); ++h)
        for (int g : gens) {
            int n = G.mul(work[h], g);
            if (!seen[n]) {
                seen[n] = true;
                work.push_back(n);
            }
        }
    std::sort(work.begin(), work.end());
    return Subgroup(&G, std::move(work));
}

inline Subgroup full_subgroup(const FiniteGroup& G) {
    std::vector<int> all(G.order());
    std::iota(all.begin(), all.end(), 0);
    return Subgroup(&G, std::move(all));
}

inline Subgroup trivial_subgroup(const FiniteGroup& G) {
    return Subgroup(&G, {G.identity()});
}

// x P x^{-1}
inline Subgroup conjugate_subgroup(const Subgroup& P, int x) {
    const FiniteGroup& G = P.parent();
    std::vector<int> out;
    out.reserve(P.order());
    for (int e : P.elements()) out.push_back(G.conj(x, e));
    std::sort(out.begin(), out.end());
    return Subgroup(&G, std::move(out));
}

// All subgroups of S, sorted by (order, element list).  Breadth-first closure
// over one-generator extensions; every subgroup is reached by a chain that
// adds one generator at a time.
inline std::vector<Subgroup> subgroups_of(const Subgroup& S, int order_cap = 256) {
    if (S.order() > order_cap)
        throw cap_error("GroupTooLarge", "subgroup enumeration capped at order " +
                                             std::to_string(order_cap));
    const FiniteGroup& G = S.parent();
    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> work;
    std::vector<int> triv{G.identity()};
    seen.insert(triv);
    work.push_back(triv);
    for (std::size_t h = 0; h < work.size(); ++h) {
        std::vector<int> cur = work[h];
        std::vector<bool> in_cur(G.order(), false);
        for (int e : cur) in_cur[e] = true;
        for (int x : S.elements()) {
            if (in_cur[x]) continue;
            std::vector<int> gens = cur;
            gens.push_back(x);
            Subgroup H = generated_subgroup(G, gens);
            if (seen.insert(H.elements()).second) work.push_back(H.elements());
        }
    }
    std::vector<Subgroup> out;
    out.reserve(seen.size());
    for (const auto& e : seen) out.emplace_back(&G, e);
    std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
        if (a.order() != b.order()) return a.order() < b.order();
        return a.elements() < b.elements();
    });
    return out;
}

// N_G(P, Q) = { x in G : x P x^{-1} <= Q }.  Checking generators of P suffices.
inline std::vector<int> transporter(const FiniteGroup& G, const Subgroup& P, const Subgroup& Q) {
    require(P.parent_ptr() == &G && Q.parent_ptr() == &G, "MismatchedAmbientGroup",
            "transporter arguments live in different groups");
    std::vector<int> out;
    for (int x = 0; x < G.order(); ++x) {
        bool ok = true;
        for (int g : P.generators())
            if (!Q.contains(G.conj(x, g))) {
                ok = false;
                break;
            }
        if (ok) out.push_back(x);
    }
    return out;
}

inline Subgroup centralizer(const FiniteGroup& G, const Subgroup& P) {
    std::vector<int> out;
    for (int x = 0; x < G.order(); ++x) {
        bool ok = true;
        for (int g : P.generators())
            if (G.conj(x, g) != g) {
                ok = false;
                break;
            }
        if (ok) out.push_back(x);
    }
    return Subgroup(&G, std::move(out));
}

inline Subgroup normalizer(const FiniteGroup& G, const Subgroup& P) {
    std::vector<int> out;
    for (int x = 0; x < G.order(); ++x) {
        bool ok = true;
        for (int g : P.generators())
            if (!P.contains(G.conj(x, g))) {
                ok = false;
                break;
            }
        if (ok) out.push_back(x);
    }
    return Subgroup(&G, std::move(out));
}

// Centralizer of P inside the subgroup H (both subgroups of the same parent).
inline Subgroup centralizer_in(const Subgroup& H, const Subgroup& P) {
    const FiniteGroup& G = H.parent();
    std::vector<int> out;
    for (int x : H.elements()) {
        bool ok = true;
        for (int g : P.generators())
            if (G.conj(x, g) != g) {
                ok = false;
                break;
            }
        if (ok) out.push_back(x);
    }
    return Subgroup(&G, std::move(out));
}

inline Subgroup center_of(const Subgroup& P) {
    const FiniteGroup& G = P.parent();
    std::vector<int> out;
    for (int x : P.elements()) {
        bool ok = true;
        for (int g : P.generators())
            if (G.conj(x, g) != g) {
                ok = false;
                break;
            }
        if (ok) out.push_back(x);
    }
    return Subgroup(&G, std::move(out));
}

// Conjugation map c_x : P -> Q, y |-> x y x^{-1}, recorded by its graph so
// that deduplication is canonical (independent of the conjugator chosen).
struct ConjugationMap {
    const Subgroup* src = nullptr;
    const Subgroup* dst = nullptr;
    int conjugator = 0;
    std::vector<int> graph; // graph[k] = image of src->element(k), a parent element index
};

// Hom_G(P, Q): all maps P -> Q induced by conjugation in G, deduplicated.
// |Hom_G(P, Q)| * |C_G(P)| = |N_G(P, Q)|.
inline std::vector<ConjugationMap> hom_G(const FiniteGroup& G, const Subgroup& P, const Subgroup& Q) {
    std::vector<ConjugationMap> out;
    std::set<std::vector<int>> seen;
    for (int x : transporter(G, P, Q)) {
        std::vector<int> graph;
        graph.reserve(P.order());
        for (int e : P.elements()) graph.push_back(G.conj(x, e));
        if (seen.insert(graph).second)
            out.push_back(ConjugationMap{&P, &Q, x, std::move(graph)});
    }
    return out;
}

// Representatives of the double cosets B \ C / A, smallest element first.
// A and B must be subgroups of C; all live in the same parent group.
inline std::vector<int> double_cosets(const Subgroup& B, const Subgroup& C, const Subgroup& A) {
    const FiniteGroup& G = C.parent();
    require(B.parent_ptr() == &G && A.parent_ptr() == &G, "MismatchedAmbientGroup",
            "double coset arguments live in different groups");
    for (int e : B.elements())
        require(C.contains(e), "NotASubgroup", "B is not contained in C");
    for (int e : A.elements())
        require(C.contains(e), "NotASubgroup", "A is not contained in C");
    std::vector<bool> used(G.order(), false);
    std::vector<int> reps;
    for (int x : C.elements()) {
        if (used[x]) continue;
        reps.push_back(x);
        for (int b : B.elements())
            for (int a : A.elements()) used[G.mul(G.mul(b, x), a)] = true;
    }
    return reps;
}

inline bool is_p_group(const Subgroup& P, int p) {
    int n = P.order();
    while (n % p == 0) n /= p;
    return n == 1;
}

inline bool is_sylow_p(const FiniteGroup& G, const Subgroup& P, int p) {
    if (!is_p_group(P, p)) return false;
    int n = G.order(), ppart = 1;
    while (n % p == 0) {
        n /= p;
        ppart *= p;
    }
    return P.order() == ppart;
}

// A Sylow p-subgroup, grown from the trivial subgroup: while P is not Sylow,
// N_G(P)/P contains an element of p-power order that extends P.
inline Subgroup sylow_subgroup(const FiniteGroup& G, int p) {
    Subgroup P = trivial_subgroup(G);
    int ppart = 1, n = G.order();
    while (n % p == 0) {
        n /= p;
        ppart *= p;
    }
    while (P.order() < ppart) {
        Subgroup N = normalizer(G, P);
        bool grown = false;
        for (int x : N.elements()) {
            if (P.contains(x)) continue;
            int o = G.element_order(x);
            bool ppow = true;
            while (o > 1) {
                if (o % p != 0) { ppow = false; break; }
                o /= p;
            }
            if (!ppow) continue;
            std::vector<int> gens = P.generators();
            gens.push_back(x);
            Subgroup cand = generated_subgroup(G, gens);
            if (is_p_group(cand, p)) {
                P = cand;
                grown = true;
                break;
            }
        }
        ensure(grown, "sylow_subgroup failed to grow a proper p-subgroup");
    }
    return P;
}

// Invariant factors of the abelianization P/[P,P], each dividing the next,
// 1s omitted.  Computed as Smith normal form of a relation matrix for the
// quotient: generator orders plus one Cayley-graph relation per (element,
// generator) pair, which together generate the full relation lattice.
inline std::vector<long> abelian_invariants(const Subgroup& P) {
    const FiniteGroup& G = P.parent();
    // commutator subgroup
    std::vector<int> comms;
    for (int x : P.elements())
        for (int y : P.elements())
            comms.push_back(G.mul(G.mul(G.inv(x), G.inv(y)), G.mul(x, y)));
    std::sort(comms.begin(), comms.end());
    comms.erase(std::unique(comms.begin(), comms.end()), comms.end());
    Subgroup D = generated_subgroup(G, comms);

    // quotient Q = P/D as cosets, canonical representative = smallest element
    std::map<int, int> coset_id; // representative -> index
    std::vector<int> rep_of;
    auto coset_rep = [&](int x) {
        int best = -1;
        for (int d : D.elements()) {
            int y = G.mul(d, x);
            if (best < 0 || y < best) best = y;
        }
        return best;
    };
    for (int x : P.elements()) {
        int r = coset_rep(x);
        if (coset_id.emplace(r, static_cast<int>(rep_of.size())).second) rep_of.push_back(r);
    }
    int qn = static_cast<int>(rep_of.size());
    auto qmul = [&](int i, int j) { return coset_id.at(coset_rep(G.mul(rep_of[i], rep_of[j]))); };
    int qid = coset_id.at(coset_rep(G.identity()));

    // images of P's generators in Q, identities dropped
    std::vector<int> qgens;
    for (int g : P.generators()) {
        int q = coset_id.at(coset_rep(g));
        if (q != qid) qgens.push_back(q);
    }
    if (qgens.empty()) return {};
    int m = static_cast<int>(qgens.size());

    // BFS expression of every element of Q as a word vector in qgens; each
    // edge of the BFS tree closed against the table yields a relation.
    std::vector<std::vector<long>> expr(qn);
    std::vector<int> order_found;
    expr[qid] = std::vector<long>(m, 0);
    order_found.push_back(qid);
    std::vector<std::vector<long>> rel_rows;
    for (std::size_t h = 0; h < order_found.size(); ++h) {
        int cur = order_found[h];
        for (int gi = 0; gi < m; ++gi) {
            int nxt = qmul(cur, qgens[gi]);
            std::vector<long> w = expr[cur];
            w[gi] += 1;
            if (expr[nxt].empty()) {
                expr[nxt] = w;
                order_found.push_back(nxt);
            } else {
                // relation: w - expr[nxt] maps to identity
                std::vector<long> r(m);
                for (int t = 0; t < m; ++t) r[t] = w[t] - expr[nxt][t];
                rel_rows.push_back(std::move(r));
            }
        }
    }
    ZMat R(m, static_cast<int>(rel_rows.size()));
    for (int j = 0; j < R.cols; ++j)
        for (int i = 0; i < m; ++i) R.at(i, j) = rel_rows[j][i];
    std::vector<long> out;
    for (const auto& d : quotient_invariants(R, m)) {
        ensure(d != 0, "abelianization of a finite group must be finite");
        out.push_back(d.get_si());
    }
    return out;
}

} // namespace fusionlim

#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "fusionlim/category.hpp"
#include "fusionlim/group.hpp"

namespace fusionlim {

// Injective group homomorphism between two subgroups of the reference group
// S, stored by its full graph: img[k] is the S-element index of the image of
// the k-th element of the source subgroup.  Equality of morphisms is equality
// of (src, dst, img), which makes deduplication canonical.
struct FusionHom {
    int src = 0, dst = 0;
    std::vector<int> img;

    bool operator==(const FusionHom&) const = default;
    bool operator<(const FusionHom& rhs) const {
        if (src != rhs.src) return src < rhs.src;
        if (dst != rhs.dst) return dst < rhs.dst;
        return img < rhs.img;
    }
};

// Group monomorphism src -> dst extended from generator images; the whole
// element map is materialized and verified.
struct GroupEmbedding {
    const FiniteGroup* src = nullptr;
    const FiniteGroup* dst = nullptr;
    std::vector<int> elem_image;   // src element index -> dst element index
    std::vector<int> elem_preimage; // dst element index -> src element index or -1

    static GroupEmbedding from_generator_images(const FiniteGroup& src, const FiniteGroup& dst,
                                                const std::vector<Permutation>& gen_images) {
        require(gen_images.size() == src.generator_indices().size(), "BadEmbedding",
                "one image per generator required");
        GroupEmbedding e;
        e.src = &src;
        e.dst = &dst;
        e.elem_image.assign(src.order(), -1);
        e.elem_image[src.identity()] = dst.identity();
        std::vector<int> work{src.identity()};
        for (std::size_t h = 0; h < work.size(); ++h) {
            int cur = work[h];
            for (std::size_t gi = 0; gi < gen_images.size(); ++gi) {
                int g = src.generator_indices()[gi];
                require(dst.contains(gen_images[gi]), "BadEmbedding",
                        "generator image is not in the target group");
                int gimg = dst.index_of(gen_images[gi]);
                int nxt = src.mul(cur, g);
                int nimg = dst.mul(e.elem_image[cur], gimg);
                if (e.elem_image[nxt] == -1) {
                    e.elem_image[nxt] = nimg;
                    work.push_back(nxt);
                } else {
                    require(e.elem_image[nxt] == nimg, "BadEmbedding",
                            "generator images do not extend to a homomorphism");
                }
            }
        }
        // full homomorphism and injectivity check
        e.elem_preimage.assign(dst.order(), -1);
        for (int x = 0; x < src.order(); ++x) {
            require(e.elem_image[x] >= 0, "BadEmbedding", "embedding not defined everywhere");
            require(e.elem_preimage[e.elem_image[x]] == -1, "BadEmbedding",
                    "generator images do not give an injective map");
            e.elem_preimage[e.elem_image[x]] = x;
        }
        for (int x = 0; x < src.order(); ++x)
            for (int y = 0; y < src.order(); ++y)
                require(e.elem_image[src.mul(x, y)] == dst.mul(e.elem_image[x], e.elem_image[y]),
                        "BadEmbedding", "map is not a homomorphism");
        return e;
    }

    static GroupEmbedding identity(const FiniteGroup& G) {
        GroupEmbedding e;
        e.src = &G;
        e.dst = &G;
        e.elem_image.resize(G.order());
        e.elem_preimage.resize(G.order());
        for (int i = 0; i < G.order(); ++i) e.elem_image[i] = e.elem_preimage[i] = i;
        return e;
    }
};

// Fusion system over a finite p-group S: for every pair of subgroups P, Q of
// S a set of injective homomorphisms P -> Q containing all conjugations by
// elements of S and closed under composition, restriction and inversion onto
// the image.  Saturation is deliberately not part of the contract.
class FusionSystem {
public:
    FusionSystem(GroupPtr S, int p) : S_(std::move(S)), p_(p) {
        require(p >= 2, "BadPrime", "prime must be at least 2");
        int n = S_->order();
        while (n % p == 0) n /= p;
        require(n == 1, "NotPSubgroup", "reference group is not a p-group");
        objs_ = subgroups_of(full_subgroup(*S_));
        hom_.assign(objs_.size(), std::vector<std::vector<FusionHom>>(objs_.size()));
    }

    const FiniteGroup& S() const { return *S_; }
    GroupPtr S_ptr() const { return S_; }
    int p() const { return p_; }
    // Whether the reference group was Sylow in the ambient group it was
    // pulled back from.  Informational only; nothing downstream requires it.
    bool ambient_sylow() const { return ambient_sylow_; }
    void set_ambient_sylow(bool v) { ambient_sylow_ = v; }
    int nobj() const { return static_cast<int>(objs_.size()); }
    const std::vector<Subgroup>& objects() const { return objs_; }
    const Subgroup& object(int i) const { return objs_[i]; }
    const std::vector<FusionHom>& homs(int src, int dst) const { return hom_[src][dst]; }

    int object_index(const std::vector<int>& sorted_elems) const {
        for (int i = 0; i < nobj(); ++i)
            if (objs_[i].elements() == sorted_elems) return i;
        throw input_error("NotASubgroup", "element set is not a subgroup of the reference group");
    }
    int object_index_of(const Subgroup& P) const { return object_index(P.elements()); }
    int top_object() const { return nobj() - 1; } // S itself: unique object of full order

    // Insert, return true if new.  The morphism must be a valid monomorphism.
    bool add_hom(const FusionHom& f) {
        verify_hom(f);
        auto& v = hom_[f.src][f.dst];
        auto it = std::lower_bound(v.begin(), v.end(), f);
        if (it != v.end() && *it == f) return false;
        v.insert(it, f);
        return true;
    }

    void verify_hom(const FusionHom& f) const {
        const Subgroup& P = objs_[f.src];
        const Subgroup& Q = objs_[f.dst];
        require(static_cast<int>(f.img.size()) == P.order(), "BadMorphism",
                "graph size does not match source order");
        std::set<int> image;
        for (int k = 0; k < P.order(); ++k) {
            require(Q.contains(f.img[k]), "BadMorphism", "image leaves the target subgroup");
            image.insert(f.img[k]);
        }
        require(static_cast<int>(image.size()) == P.order(), "BadMorphism", "map is not injective");
        for (int k = 0; k < P.order(); ++k)
            for (int l = 0; l < P.order(); ++l) {
                int xy = P.position_of(S_->mul(P.element(k), P.element(l)));
                require(f.img[xy] == S_->mul(f.img[k], f.img[l]), "BadMorphism",
                        "graph is not a homomorphism");
            }
    }

    FusionHom compose(const FusionHom& g, const FusionHom& f) const {
        require(f.dst == g.src, "BadMorphism", "morphisms not composable");
        const Subgroup& Q = objs_[g.src];
        FusionHom out{f.src, g.dst, {}};
        out.img.reserve(f.img.size());
        for (int e : f.img) out.img.push_back(g.img[Q.position_of(e)]);
        return out;
    }

    // The subgroup object phi(P) as an object index.
    int image_object(const FusionHom& f) const {
        std::vector<int> im = f.img;
        std::sort(im.begin(), im.end());
        return object_index(im);
    }

    // phi^{-1} : phi(P) -> P, an honest morphism of the system.
    FusionHom invert_onto_image(const FusionHom& f) const {
        int r = image_object(f);
        const Subgroup& P = objs_[f.src];
        const Subgroup& R = objs_[r];
        FusionHom out{r, f.src, std::vector<int>(R.order())};
        for (int k = 0; k < P.order(); ++k) out.img[R.position_of(f.img[k])] = P.element(k);
        return out;
    }

    FusionHom restrict_hom(const FusionHom& f, int sub_obj) const {
        const Subgroup& P = objs_[f.src];
        const Subgroup& A = objs_[sub_obj];
        FusionHom out{sub_obj, f.dst, {}};
        out.img.reserve(A.order());
        for (int e : A.elements()) {
            require(P.contains(e), "NotASubgroup", "restriction domain not contained in source");
            out.img.push_back(f.img[P.position_of(e)]);
        }
        return out;
    }

    FusionHom inclusion_hom(int src, int dst) const {
        const Subgroup& P = objs_[src];
        const Subgroup& Q = objs_[dst];
        FusionHom out{src, dst, P.elements()};
        for (int e : P.elements())
            require(Q.contains(e), "NotASubgroup", "inclusion requires source inside target");
        return out;
    }

    // c_s restricted to P, as a morphism P -> Q; requires sPs^{-1} <= Q.
    FusionHom conjugation_hom(int src, int dst, int s) const {
        const Subgroup& P = objs_[src];
        FusionHom out{src, dst, {}};
        out.img.reserve(P.order());
        for (int e : P.elements()) out.img.push_back(S_->conj(s, e));
        verify_hom(out);
        return out;
    }

    bool is_isomorphism(const FusionHom& f) const {
        return objs_[f.src].order() == objs_[f.dst].order();
    }

private:
    GroupPtr S_;
    int p_;
    bool ambient_sylow_ = true;
    std::vector<Subgroup> objs_;
    std::vector<std::vector<std::vector<FusionHom>>> hom_;
};

// F_S(G) pulled back to the reference copy of S along an embedding S -> G.
// Hom(P, Q) = conjugation maps in G between the embedded images.
inline FusionSystem fusion_of_group(GroupPtr S, const FiniteGroup& G, const GroupEmbedding& embed,
                                    int p) {
    require(embed.src == S.get() && embed.dst == &G, "MismatchedAmbientGroup",
            "embedding endpoints do not match");
    FusionSystem F(S, p);
    // embedded image of S must be a p-subgroup of G (it is: S is a p-group
    // and the embedding is injective), record embedded subgroups
    std::vector<Subgroup> embedded;
    embedded.reserve(F.nobj());
    for (int i = 0; i < F.nobj(); ++i) {
        std::vector<int> elems;
        elems.reserve(F.object(i).order());
        for (int e : F.object(i).elements()) elems.push_back(embed.elem_image[e]);
        std::sort(elems.begin(), elems.end());
        embedded.emplace_back(&G, std::move(elems));
    }
    for (int a = 0; a < F.nobj(); ++a)
        for (int b = 0; b < F.nobj(); ++b) {
            if (F.object(a).order() > F.object(b).order()) continue;
            for (const ConjugationMap& cm : hom_G(G, embedded[a], embedded[b])) {
                FusionHom f{a, b, {}};
                f.img.reserve(F.object(a).order());
                for (int k = 0; k < F.object(a).order(); ++k) {
                    int ge = embed.elem_image[F.object(a).element(k)];
                    int he = cm.graph[embedded[a].position_of(ge)];
                    int se = embed.elem_preimage[he];
                    require(se >= 0, "BadEmbedding", "conjugate leaves the embedded copy of S");
                    f.img.push_back(se);
                }
                F.add_hom(f);
            }
        }
    int index = G.order() / F.S().order();
    F.set_ambient_sylow(index % p != 0);
    return F;
}

// F_S(S): the inner fusion system.
inline FusionSystem fusion_of_group(GroupPtr S, int p) {
    const FiniteGroup& G = *S;
    return fusion_of_group(std::move(S), G, GroupEmbedding::identity(G), p);
}

// Smallest fusion system over the common S containing every input system:
// closure of the union together with F_S(S) under composition, restriction,
// and inversion onto the image.
inline FusionSystem generate_fusion(const std::vector<FusionSystem>& systems) {
    require(!systems.empty(), "BadInput", "need at least one fusion system");
    const FusionSystem& first = systems.front();
    for (const FusionSystem& Fi : systems) {
        require(Fi.p() == first.p(), "MismatchedAmbientGroup", "systems use different primes");
        require(Fi.S().order() == first.S().order() &&
                    Fi.S().elements() == first.S().elements(),
                "MismatchedAmbientGroup", "systems live over different reference groups");
    }
    FusionSystem F(first.S_ptr(), first.p());

    std::deque<FusionHom> queue;
    auto push = [&](const FusionHom& f) {
        if (F.add_hom(f)) queue.push_back(f);
    };

    // seed: all conjugations c_s : P -> Q available inside S, plus inclusions
    for (int a = 0; a < F.nobj(); ++a)
        for (int s = 0; s < F.S().order(); ++s) {
            std::vector<int> im;
            im.reserve(F.object(a).order());
            for (int e : F.object(a).elements()) im.push_back(F.S().conj(s, e));
            for (int b = 0; b < F.nobj(); ++b) {
                bool inside = true;
                for (int e : im)
                    if (!F.object(b).contains(e)) {
                        inside = false;
                        break;
                    }
                if (inside) push(F.conjugation_hom(a, b, s));
            }
        }
    // seed: the given systems
    for (const FusionSystem& Fi : systems)
        for (int a = 0; a < Fi.nobj(); ++a)
            for (int b = 0; b < Fi.nobj(); ++b)
                for (const FusionHom& f : Fi.homs(a, b)) push(f);

    // fixpoint closure
    while (!queue.empty()) {
        FusionHom f = queue.front();
        queue.pop_front();
        push(F.invert_onto_image(f));
        for (int sub = 0; sub < F.nobj(); ++sub) {
            if (sub == f.src || F.object(sub).order() >= F.object(f.src).order()) continue;
            bool inside = true;
            for (int e : F.object(sub).elements())
                if (!F.object(f.src).contains(e)) {
                    inside = false;
                    break;
                }
            if (inside) push(F.restrict_hom(f, sub));
        }
        for (int c = 0; c < F.nobj(); ++c) {
            for (const FusionHom& g : std::vector<FusionHom>(F.homs(f.dst, c).begin(),
                                                             F.homs(f.dst, c).end()))
                push(F.compose(g, f));
            for (const FusionHom& e : std::vector<FusionHom>(F.homs(c, f.src).begin(),
                                                             F.homs(c, f.src).end()))
                push(F.compose(f, e));
        }
    }
    return F;
}

// Objects F-isomorphic to P: equal order and nonempty hom set.
inline std::vector<int> conjugacy_class(const FusionSystem& F, int obj) {
    std::vector<int> out;
    for (int b = 0; b < F.nobj(); ++b)
        if (F.object(b).order() == F.object(obj).order() && !F.homs(obj, b).empty())
            out.push_back(b);
    return out;
}

// P is F-centric when every F-conjugate Q satisfies C_S(Q) = Z(Q).
inline bool is_centric(const FusionSystem& F, int obj) {
    for (int b : conjugacy_class(F, obj)) {
        Subgroup cs = centralizer(F.S(), F.object(b));
        Subgroup z = center_of(F.object(b));
        if (!(cs == z)) return false;
    }
    return true;
}

inline std::vector<int> centric_family(const FusionSystem& F) {
    std::vector<int> out;
    for (int i = 0; i < F.nobj(); ++i)
        if (is_centric(F, i)) out.push_back(i);
    return out;
}

// Orbit category on a family of objects closed under F-overconjugation:
// Hom(P, Q) = Hom_F(P, Q) modulo postcomposition with conjugations by
// elements of Q.  Composition of classes is verified to be independent of
// representatives over the whole table.
struct OrbitCategory {
    FiniteCategory cat;
    std::vector<int> family;     // cat object -> fusion object index
    std::vector<FusionHom> rep;  // cat morphism -> chosen representative
    std::vector<int> fusion_obj_to_cat; // fusion object index -> cat object or -1
};

inline OrbitCategory orbit_category(const FusionSystem& F, const std::vector<int>& family) {
    for (int a : family)
        for (int b = 0; b < F.nobj(); ++b)
            if (!F.homs(a, b).empty())
                require(std::find(family.begin(), family.end(), b) != family.end(),
                        "FamilyNotClosed", "family is not closed under overconjugation");

    OrbitCategory oc;
    oc.family = family;
    oc.fusion_obj_to_cat.assign(F.nobj(), -1);
    oc.cat.nobj = static_cast<int>(family.size());
    for (int k = 0; k < oc.cat.nobj; ++k) {
        oc.fusion_obj_to_cat[family[k]] = k;
        oc.cat.obj_names.push_back("P" + std::to_string(F.object(family[k]).order()) + "." +
                                   std::to_string(family[k]));
    }

    // classes under Inn(Q)-postcomposition, keyed by smallest member
    std::map<FusionHom, int> class_of; // any member -> morphism id
    for (int ka = 0; ka < oc.cat.nobj; ++ka)
        for (int kb = 0; kb < oc.cat.nobj; ++kb) {
            int a = family[ka], b = family[kb];
            std::set<FusionHom> left(F.homs(a, b).begin(), F.homs(a, b).end());
            while (!left.empty()) {
                FusionHom seed = *left.begin();
                // orbit of seed under postcomposition with c_q, q in Q
                FusionHom best = seed;
                std::vector<FusionHom> members;
                for (int q : F.object(b).elements()) {
                    FusionHom m{a, b, {}};
                    m.img.reserve(seed.img.size());
                    for (int e : seed.img) m.img.push_back(F.S().conj(q, e));
                    if (m < best) best = m;
                    members.push_back(std::move(m));
                }
                int id = oc.cat.nmor();
                oc.cat.mor.push_back({ka, kb});
                oc.rep.push_back(best);
                for (const FusionHom& m : members) {
                    class_of[m] = id;
                    left.erase(m);
                }
            }
        }

    auto class_id = [&](const FusionHom& f) {
        auto it = class_of.find(f);
        ensure(it != class_of.end(), "orbit class lookup failed");
        return it->second;
    };

    oc.cat.id_of.resize(oc.cat.nobj);
    for (int k = 0; k < oc.cat.nobj; ++k)
        oc.cat.id_of[k] = class_id(F.inclusion_hom(family[k], family[k]));

    oc.cat.comp.assign(oc.cat.nmor(), std::vector<int>(oc.cat.nmor(), -1));
    for (int f = 0; f < oc.cat.nmor(); ++f)
        for (int g = 0; g < oc.cat.nmor(); ++g)
            if (oc.cat.mor[g].src == oc.cat.mor[f].dst)
                oc.cat.comp[g][f] = class_id(F.compose(oc.rep[g], oc.rep[f]));
    oc.cat.rebuild_hom();
    oc.cat.validate();

    // well-definedness: replacing either representative by a conjugate of it
    // lands in the same class (class equivalence is transitive, so varying
    // one side at a time covers all representative pairs)
    auto conj_rep = [&](const FusionHom& h, int q) {
        FusionHom out{h.src, h.dst, {}};
        out.img.reserve(h.img.size());
        for (int e : h.img) out.img.push_back(F.S().conj(q, e));
        return out;
    };
    for (int f = 0; f < oc.cat.nmor(); ++f)
        for (int g = 0; g < oc.cat.nmor(); ++g) {
            if (oc.cat.mor[g].src != oc.cat.mor[f].dst) continue;
            for (int qf : F.object(family[oc.cat.mor[f].dst]).elements())
                ensure(class_id(F.compose(oc.rep[g], conj_rep(oc.rep[f], qf))) ==
                           oc.cat.comp[g][f],
                       "orbit composition depends on representatives");
            for (int qg : F.object(family[oc.cat.mor[g].dst]).elements())
                ensure(class_id(F.compose(conj_rep(oc.rep[g], qg), oc.rep[f])) ==
                           oc.cat.comp[g][f],
                       "orbit composition depends on representatives");
        }
    return oc;
}

// Full orbit category, over every subgroup of S.
inline OrbitCategory orbit_category(const FusionSystem& F) {
    std::vector<int> all(F.nobj());
    for (int i = 0; i < F.nobj(); ++i) all[i] = i;
    return orbit_category(F, all);
}

// Lex-least member of the Inn(target)-postcomposition class of h; the
// canonical representative used throughout the orbit category.
inline FusionHom inn_canonical(const FusionSystem& F, const FusionHom& h) {
    FusionHom best = h;
    for (int q : F.object(h.dst).elements()) {
        FusionHom m{h.src, h.dst, {}};
        m.img.reserve(h.img.size());
        for (int e : h.img) m.img.push_back(F.S().conj(q, e));
        if (m < best) best = std::move(m);
    }
    return best;
}

// Morphism id in the orbit category whose class contains h.
inline int orbit_class(const OrbitCategory& oc, const FusionSystem& F, const FusionHom& h) {
    require(oc.fusion_obj_to_cat[h.src] >= 0 && oc.fusion_obj_to_cat[h.dst] >= 0, "NotInFamily",
            "morphism endpoint is outside the orbit category family");
    FusionHom best = inn_canonical(F, h);
    for (int f = 0; f < oc.cat.nmor(); ++f)
        if (oc.rep[f] == best) return f;
    throw input_error("BadMorphism", "morphism does not belong to the fusion system");
}

} // namespace fusionlim

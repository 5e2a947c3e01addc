#pragma once

#include <vector>

#include "fusionlim/catmodule.hpp"
#include "fusionlim/smith.hpp"

namespace fusionlim {

inline constexpr int kDefaultRankCap = 1024;

inline std::vector<mpz_class> zmat_col(const ZMat& A, int j) {
    std::vector<mpz_class> v(A.rows);
    for (int i = 0; i < A.rows; ++i) v[i] = A.at(i, j);
    return v;
}

// Are A and B congruent column by column modulo the column lattice of L?
inline bool congruent_mod(const ZMat& L, const ZMat& A, const ZMat& B) {
    ensure(A.rows == B.rows && A.cols == B.cols, "congruence shape mismatch");
    for (int j = 0; j < A.cols; ++j) {
        std::vector<mpz_class> d(A.rows);
        for (int i = 0; i < A.rows; ++i) d[i] = A.at(i, j) - B.at(i, j);
        if (!in_column_lattice(L, d)) return false;
    }
    return true;
}

// Contravariant functor to finitely generated abelian groups, each value
// presented as Z^dim[x] modulo the column lattice rel[x].  act[f] is an
// integer matrix that must carry the target relations into the source
// relations, so it descends to the quotients.
struct IntCatModule {
    std::vector<int> dim;
    std::vector<ZMat> rel;
    std::vector<ZMat> act;

    void validate(const FiniteCategory& c) const {
        ensure(static_cast<int>(dim.size()) == c.nobj, "object count mismatch");
        ensure(static_cast<int>(rel.size()) == c.nobj, "relation count mismatch");
        ensure(static_cast<int>(act.size()) == c.nmor(), "morphism count mismatch");
        for (int x = 0; x < c.nobj; ++x) ensure(rel[x].rows == dim[x], "relation shape mismatch");
        for (int f = 0; f < c.nmor(); ++f) {
            int x = c.mor[f].src, y = c.mor[f].dst;
            ensure(act[f].rows == dim[x] && act[f].cols == dim[y], "action shape mismatch");
            for (int j = 0; j < rel[y].cols; ++j) {
                std::vector<mpz_class> img(dim[x], 0);
                for (int i = 0; i < dim[x]; ++i)
                    for (int k = 0; k < dim[y]; ++k) img[i] += act[f].at(i, k) * rel[y].at(k, j);
                ensure(in_column_lattice(rel[x], img), "action does not preserve relations");
            }
        }
        for (int x = 0; x < c.nobj; ++x)
            ensure(congruent_mod(rel[x], act[c.id_of[x]], ZMat::identity(dim[x])),
                   "identity does not act as identity");
        for (int f = 0; f < c.nmor(); ++f)
            for (int g = 0; g < c.nmor(); ++g) {
                if (c.mor[g].src != c.mor[f].dst) continue;
                ensure(congruent_mod(rel[c.mor[f].src], act[c.comp[g][f]], act[f] * act[g]),
                       "module is not functorial");
            }
    }
};

// F_p values regarded as Z^d with relations p Z^d.
inline IntCatModule to_integral(const FiniteCategory& c, const CatModule& M) {
    IntCatModule out;
    out.dim = M.dim;
    out.rel.reserve(c.nobj);
    for (int x = 0; x < c.nobj; ++x) {
        ZMat L = ZMat::identity(M.dim[x]);
        for (int i = 0; i < M.dim[x]; ++i) L.at(i, i) = M.p;
        out.rel.push_back(std::move(L));
    }
    out.act.reserve(c.nmor());
    for (int f = 0; f < c.nmor(); ++f) {
        ZMat A(M.act[f].rows, M.act[f].cols);
        for (int i = 0; i < A.rows; ++i)
            for (int j = 0; j < A.cols; ++j) A.at(i, j) = M.act[f].at(i, j);
        out.act.push_back(std::move(A));
    }
    return out;
}

inline IntCatModule constant_int_module(const FiniteCategory& c) {
    IntCatModule out;
    out.dim.assign(c.nobj, 1);
    out.rel.assign(c.nobj, ZMat(1, 0));
    ZMat one = ZMat::identity(1);
    out.act.assign(c.nmor(), one);
    return out;
}

// Free integral module: value at x is the free abelian group on Hom(x, g)
// over the generators, same basis layout as the F_p version.
struct IntFreeModule {
    std::vector<int> gens;
    std::vector<std::vector<int>> offset;
    std::vector<int> dim;
    std::vector<ZMat> act;
};

inline IntFreeModule int_free_module_sum(const FiniteCategory& c, const std::vector<int>& gens) {
    IntFreeModule F;
    F.gens = gens;
    F.dim.assign(c.nobj, 0);
    F.offset.assign(c.nobj, {});
    for (int x = 0; x < c.nobj; ++x) {
        F.offset[x].push_back(0);
        for (int g : gens) {
            F.dim[x] += static_cast<int>(c.hom[x][g].size());
            F.offset[x].push_back(F.dim[x]);
        }
    }
    auto basis_index = [&](int x, int summand, int mor_id) {
        const auto& lst = c.hom[x][gens[summand]];
        for (std::size_t k = 0; k < lst.size(); ++k)
            if (lst[k] == mor_id) return F.offset[x][summand] + static_cast<int>(k);
        throw check_error("morphism not in free basis");
    };
    F.act.reserve(c.nmor());
    for (int f = 0; f < c.nmor(); ++f) {
        int x = c.mor[f].src, y = c.mor[f].dst;
        ZMat A(F.dim[x], F.dim[y]);
        for (std::size_t i = 0; i < gens.size(); ++i) {
            const auto& ylist = c.hom[y][gens[i]];
            for (std::size_t k = 0; k < ylist.size(); ++k)
                A.at(basis_index(x, static_cast<int>(i), c.comp[ylist[k]][f]),
                     F.offset[y][i] + static_cast<int>(k)) = 1;
        }
        F.act.push_back(std::move(A));
    }
    return F;
}

// Greedy integral cover: walk the objects in cover order and, as long as the
// covered sublattice (relations plus images of generators placed so far) is
// proper, adjoin the first standard basis vector outside it as a new
// generator.  The quotient is trivial exactly when every basis vector lies
// in the lattice, and each step strictly enlarges a sublattice of Z^d, so
// this terminates.
struct IntCover {
    IntFreeModule F;
    std::vector<ZMat> gen_values; // column in M(gens[i]) ambient coordinates
    std::vector<ZMat> map_at;     // component M.dim[x] x F.dim[x]
};

inline IntCover int_cover_module(const FiniteCategory& c, const IntCatModule& M,
                                 const std::vector<int>* order_override = nullptr) {
    std::vector<int> order = order_override ? *order_override : default_cover_order(c);
    std::vector<ZMat> covered;
    covered.reserve(c.nobj);
    for (int x = 0; x < c.nobj; ++x) covered.push_back(M.rel[x]);
    std::vector<int> gens;
    std::vector<ZMat> gen_values;

    for (int X : order) {
        for (bool grew = true; grew;) {
            grew = false;
            for (int k = 0; k < M.dim[X]; ++k) {
                std::vector<mpz_class> e(M.dim[X], 0);
                e[k] = 1;
                if (in_column_lattice(covered[X], e)) continue;
                ZMat v(M.dim[X], 1);
                v.at(k, 0) = 1;
                gens.push_back(X);
                gen_values.push_back(v);
                for (int x = 0; x < c.nobj; ++x)
                    for (int f : c.hom[x][X]) covered[x] = covered[x].hstack(M.act[f] * v);
                grew = true;
                break;
            }
        }
    }
    for (int x = 0; x < c.nobj; ++x)
        ensure(quotient_invariants(covered[x], M.dim[x]).empty(), "integral cover not surjective");

    IntCover out;
    out.F = int_free_module_sum(c, gens);
    out.gen_values = gen_values;
    out.map_at.reserve(c.nobj);
    for (int x = 0; x < c.nobj; ++x) {
        ZMat A(M.dim[x], out.F.dim[x]);
        for (std::size_t i = 0; i < gens.size(); ++i) {
            const auto& lst = c.hom[x][gens[i]];
            for (std::size_t k = 0; k < lst.size(); ++k) {
                ZMat col = M.act[lst[k]] * gen_values[i];
                for (int r = 0; r < M.dim[x]; ++r)
                    A.at(r, out.F.offset[x][i] + static_cast<int>(k)) = col.at(r, 0);
            }
        }
        out.map_at.push_back(std::move(A));
    }
    return out;
}

// Resolution of M by free integral modules.  After the first step every
// syzygy module has free values: the kernel of (free value) -> Z^d / L is
// the preimage lattice { w : A w in L }, and a basis of it is extracted
// from the projected kernel of [A | -L].  d_gen[k][j] is the image of the
// j-th generator of F[k+1] inside F[k](its object), in the free basis.
struct IntResolution {
    std::vector<IntFreeModule> F;
    std::vector<ZMat> aug_at;
    std::vector<std::vector<ZMat>> d_gen;
    bool complete = false;
};

inline IntResolution int_free_resolution(const FiniteCategory& c, const IntCatModule& M,
                                         int nterms, int rank_cap = kDefaultRankCap,
                                         const std::vector<int>* order_override = nullptr) {
    require(nterms >= 1, "BadInput", "resolution needs at least one term");
    IntResolution res;
    IntCatModule target = M;
    std::vector<ZMat> embed; // target coordinates -> previous free module coordinates
    bool exhausted = false;

    for (int n = 0; n < nterms; ++n) {
        if (exhausted) {
            res.F.push_back(int_free_module_sum(c, {}));
            if (n > 0) res.d_gen.push_back({});
            continue;
        }
        IntCover cov = int_cover_module(c, target, order_override);
        int total = 0;
        for (int x = 0; x < c.nobj; ++x) total += cov.F.dim[x];
        require(total <= rank_cap, "DimensionBlowup",
                "integral resolution exceeded the rank cap");
        if (n == 0) {
            res.aug_at = cov.map_at;
        } else {
            std::vector<ZMat> imgs;
            imgs.reserve(cov.gen_values.size());
            for (std::size_t j = 0; j < cov.gen_values.size(); ++j)
                imgs.push_back(embed[cov.F.gens[j]] * cov.gen_values[j]);
            res.d_gen.push_back(std::move(imgs));
        }

        // kernel of the cover
        IntCatModule K;
        K.dim.resize(c.nobj);
        K.rel.assign(c.nobj, ZMat());
        std::vector<ZMat> kbasis(c.nobj);
        for (int x = 0; x < c.nobj; ++x) {
            ZMat negL = target.rel[x];
            for (auto& v : negL.a) v = -v;
            ZMat big = integer_kernel(cov.map_at[x].hstack(negL));
            ZMat proj(cov.F.dim[x], big.cols);
            for (int i = 0; i < proj.rows; ++i)
                for (int j = 0; j < proj.cols; ++j) proj.at(i, j) = big.at(i, j);
            kbasis[x] = lattice_basis(proj);
            K.dim[x] = kbasis[x].cols;
            K.rel[x] = ZMat(K.dim[x], 0);
        }
        K.act.reserve(c.nmor());
        for (int f = 0; f < c.nmor(); ++f) {
            int x = c.mor[f].src, y = c.mor[f].dst;
            auto sol = solve_integer_matrix(kbasis[x], cov.F.act[f] * kbasis[y]);
            ensure(sol.has_value(), "integral kernel is not closed under the action");
            K.act.push_back(std::move(*sol));
        }
        res.F.push_back(std::move(cov.F));
        embed = std::move(kbasis);
        target = std::move(K);
        int ktotal = 0;
        for (int x = 0; x < c.nobj; ++x) ktotal += target.dim[x];
        require(ktotal <= rank_cap, "DimensionBlowup",
                "integral resolution exceeded the rank cap");
        if (ktotal == 0) exhausted = true;
    }
    res.complete = exhausted;
    return res;
}

// Hom(F[k], M) = sum over generators of M(X_i), a presented abelian group
// Z^{D_k} / Lambda_k with Lambda_k block diagonal in the relations.
inline ZMat int_ext_differential(const FiniteCategory& c, const IntResolution& res,
                                 const IntCatModule& M, int k) {
    const IntFreeModule& Fk = res.F[k];
    const IntFreeModule& Fk1 = res.F[k + 1];
    std::vector<int> roff(Fk1.gens.size() + 1, 0);
    for (std::size_t j = 0; j < Fk1.gens.size(); ++j)
        roff[j + 1] = roff[j] + M.dim[Fk1.gens[j]];
    std::vector<int> coff(Fk.gens.size() + 1, 0);
    for (std::size_t i = 0; i < Fk.gens.size(); ++i) coff[i + 1] = coff[i] + M.dim[Fk.gens[i]];
    ZMat D(roff.back(), coff.back());
    for (std::size_t j = 0; j < Fk1.gens.size(); ++j) {
        int Y = Fk1.gens[j];
        const ZMat& img = res.d_gen[k][j];
        for (std::size_t i = 0; i < Fk.gens.size(); ++i) {
            const auto& lst = c.hom[Y][Fk.gens[i]];
            for (std::size_t t = 0; t < lst.size(); ++t) {
                const mpz_class& coeff = img.at(Fk.offset[Y][i] + static_cast<int>(t), 0);
                if (coeff == 0) continue;
                const ZMat& A = M.act[lst[t]];
                for (int r = 0; r < A.rows; ++r)
                    for (int s = 0; s < A.cols; ++s)
                        D.at(roff[j] + r, coff[i] + s) += coeff * A.at(r, s);
            }
        }
    }
    return D;
}

inline ZMat int_hom_relations(const IntResolution& res, const IntCatModule& M, int k) {
    const IntFreeModule& Fk = res.F[k];
    int total = 0, cols = 0;
    for (int g : Fk.gens) {
        total += M.dim[g];
        cols += M.rel[g].cols;
    }
    ZMat L(total, cols);
    int ro = 0, co = 0;
    for (int g : Fk.gens) {
        for (int i = 0; i < M.rel[g].rows; ++i)
            for (int j = 0; j < M.rel[g].cols; ++j) L.at(ro + i, co + j) = M.rel[g].at(i, j);
        ro += M.dim[g];
        co += M.rel[g].cols;
    }
    return L;
}

// Invariant factors of Ext^n for n = 0..maxdeg (entries != 1, divisibility
// order, 0 meaning a free summand).  Cohomology of a complex of presented
// groups: with K generated by W = { x : delta_n x in Lambda_{n+1} } and
// R = [delta_{n-1} | Lambda_n] (all columns of which lie in K), the group
// K / R is Z^{cols W} modulo the pullback { y : W y in col(R) }.
inline std::vector<std::vector<mpz_class>> int_ext_invariants(const FiniteCategory& c,
                                                              const IntResolution& res,
                                                              const IntCatModule& M, int maxdeg) {
    require(static_cast<int>(res.F.size()) >= maxdeg + 2, "BadInput",
            "resolution too short for requested degree");
    std::vector<std::vector<mpz_class>> out;
    for (int n = 0; n <= maxdeg; ++n) {
        ZMat dn = int_ext_differential(c, res, M, n);
        ZMat Ln1 = int_hom_relations(res, M, n + 1);
        ZMat negLn1 = Ln1;
        for (auto& v : negLn1.a) v = -v;
        ZMat big = integer_kernel(dn.hstack(negLn1));
        int Dn = dn.cols;
        ZMat W(Dn, big.cols);
        for (int i = 0; i < Dn; ++i)
            for (int j = 0; j < big.cols; ++j) W.at(i, j) = big.at(i, j);
        W = hermite_basis(W);

        ZMat R = int_hom_relations(res, M, n);
        if (n > 0) R = int_ext_differential(c, res, M, n - 1).hstack(R);
        ZMat negR = R;
        for (auto& v : negR.a) v = -v;
        ZMat pull = integer_kernel(W.hstack(negR));
        ZMat P(W.cols, pull.cols);
        for (int i = 0; i < W.cols; ++i)
            for (int j = 0; j < pull.cols; ++j) P.at(i, j) = pull.at(i, j);
        out.push_back(quotient_invariants(hermite_basis(P), W.cols));
    }
    return out;
}

// Higher limits with integer coefficients, as lists of invariant factors.
inline std::vector<std::vector<mpz_class>> int_higher_limits(const FiniteCategory& c,
                                                             const IntCatModule& M, int maxdeg,
                                                             int rank_cap = kDefaultRankCap) {
    IntResolution res = int_free_resolution(c, constant_int_module(c), maxdeg + 2, rank_cap);
    return int_ext_invariants(c, res, M, maxdeg);
}

} // namespace fusionlim

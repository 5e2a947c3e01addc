#pragma once

#include <optional>
#include <vector>

#include "fusionlim/catmodule.hpp"

namespace fusionlim {

inline constexpr int kDefaultDimCap = 4096;

// Submodule ker(h) for h : M -> N, together with the embedding bases.
// embed[x] has the kernel basis of h.at[x] as columns; the action is the
// restriction of M's action, which lands in the kernel by naturality.
struct KernelModule {
    CatModule mod;
    std::vector<FpMat> embed;
};

inline KernelModule kernel_module(const FiniteCategory& c, const CatModule& M,
                                  const ModuleHom& h) {
    KernelModule K;
    K.mod.p = M.p;
    K.mod.dim.resize(c.nobj);
    K.embed.reserve(c.nobj);
    for (int x = 0; x < c.nobj; ++x) {
        K.embed.push_back(nullspace(h.at[x]));
        K.mod.dim[x] = K.embed.back().cols;
    }
    K.mod.act.reserve(c.nmor());
    for (int f = 0; f < c.nmor(); ++f) {
        int x = c.mor[f].src, y = c.mor[f].dst;
        auto sol = solve_matrix(K.embed[x], M.act[f] * K.embed[y]);
        ensure(sol.has_value(), "kernel is not closed under the action");
        K.mod.act.push_back(std::move(*sol));
    }
    return K;
}

// Greedy surjection from a sum of representables onto M.  Walk the objects
// in cover order; whenever M(X) is not yet spanned by earlier generators,
// add generators at X.  Each generator (X, v) contributes act[f](v) to the
// covered subspace of every object mapping into X.
struct Cover {
    FreeModule F;
    std::vector<FpMat> gen_images; // value of generator i in M(gens[i])
    ModuleHom map;                 // F.mod -> M, surjective by construction
};

inline Cover cover_module(const FiniteCategory& c, const CatModule& M,
                          const std::vector<int>* order_override = nullptr) {
    std::vector<int> order = order_override ? *order_override : default_cover_order(c);
    require(static_cast<int>(order.size()) == c.nobj, "BadInput", "cover order size mismatch");

    std::vector<FpMat> covered; // spanning columns of the covered subspace
    covered.reserve(c.nobj);
    for (int x = 0; x < c.nobj; ++x) covered.push_back(FpMat(M.p, M.dim[x], 0));
    std::vector<int> gens;
    std::vector<FpMat> gen_images;

    for (int X : order) {
        for (int k = 0; k < M.dim[X]; ++k) {
            FpMat v(M.p, M.dim[X], 1);
            v.at(k, 0) = 1;
            if (rank(covered[X].hstack(v)) == rank(covered[X])) continue;
            gens.push_back(X);
            gen_images.push_back(v);
            for (int x = 0; x < c.nobj; ++x)
                for (int f : c.hom[x][X]) covered[x] = covered[x].hstack(M.act[f] * v);
        }
    }
    for (int x = 0; x < c.nobj; ++x)
        ensure(rank(covered[x]) == M.dim[x], "cover failed to be surjective");

    Cover out;
    out.F = free_module_sum(c, M.p, gens);
    out.gen_images = gen_images;
    out.map = free_hom(c, out.F, M, gen_images);
    return out;
}

// Free resolution ... -> F[1] -> F[0] -> M -> 0 with nterms free modules.
// d[k] : F[k+1] -> F[k]; d_gen[k][j] is the image of the j-th generator of
// F[k+1] as a column vector in F[k](gen object), which is what the Ext
// complex needs.  Once the kernel vanishes the remaining terms are zero.
struct Resolution {
    std::vector<FreeModule> F;
    ModuleHom aug;
    std::vector<ModuleHom> d;
    std::vector<std::vector<FpMat>> d_gen;
    bool complete = false;
};

inline Resolution free_resolution(const FiniteCategory& c, const CatModule& M, int nterms,
                                  int dim_cap = kDefaultDimCap,
                                  const std::vector<int>* order_override = nullptr) {
    require(nterms >= 1, "BadInput", "resolution needs at least one term");
    Resolution res;

    CatModule target = M;                 // current module to cover
    std::vector<FpMat> embed;             // embedding of target into F[n-1], empty at n=0
    bool exhausted = false;

    for (int n = 0; n < nterms; ++n) {
        if (exhausted) {
            Cover zero;
            zero.F = free_module_sum(c, M.p, {});
            res.F.push_back(zero.F);
            if (n > 0) {
                res.d_gen.push_back({});
                ModuleHom dz;
                for (int x = 0; x < c.nobj; ++x)
                    dz.at.push_back(FpMat(M.p, res.F[n - 1].mod.dim[x], 0));
                res.d.push_back(std::move(dz));
            }
            continue;
        }
        Cover cov = cover_module(c, target, order_override);
        if (cov.F.mod.total_dim() > dim_cap)
            throw cap_error("DimensionBlowup", "free resolution exceeded the dimension cap");
        if (n == 0) {
            res.aug = cov.map;
        } else {
            // differential = embedding of target into F[n-1] after the cover
            std::vector<FpMat> imgs;
            imgs.reserve(cov.gen_images.size());
            for (std::size_t j = 0; j < cov.gen_images.size(); ++j)
                imgs.push_back(embed[cov.F.gens[j]] * cov.gen_images[j]);
            res.d.push_back(free_hom(c, cov.F, res.F[n - 1].mod, imgs));
            res.d_gen.push_back(std::move(imgs));
        }
        KernelModule K = kernel_module(c, cov.F.mod, cov.map);
        if (K.mod.total_dim() > dim_cap)
            throw cap_error("DimensionBlowup", "free resolution exceeded the dimension cap");
        res.F.push_back(std::move(cov.F));
        target = std::move(K.mod);
        embed = std::move(K.embed);
        if (target.total_dim() == 0) exhausted = true;
    }
    res.complete = exhausted;
    return res;
}

// Hom(F[k], N) identified with the sum of N(X) over the generators of F[k].
// The transpose of d[k] becomes a block matrix whose (generator j of
// F[k+1], generator i of F[k]) block is the coefficient-weighted sum of
// N.act over the morphisms appearing in the image of generator j.
inline FpMat ext_differential(const FiniteCategory& c, const Resolution& res, const CatModule& N,
                              int k) {
    const FreeModule& Fk = res.F[k];
    const FreeModule& Fk1 = res.F[k + 1];
    std::vector<int> roff(Fk1.gens.size() + 1, 0);
    for (std::size_t j = 0; j < Fk1.gens.size(); ++j)
        roff[j + 1] = roff[j] + N.dim[Fk1.gens[j]];
    std::vector<int> coff(Fk.gens.size() + 1, 0);
    for (std::size_t i = 0; i < Fk.gens.size(); ++i) coff[i + 1] = coff[i] + N.dim[Fk.gens[i]];

    FpMat D(N.p, roff.back(), coff.back());
    for (std::size_t j = 0; j < Fk1.gens.size(); ++j) {
        int Y = Fk1.gens[j];
        const FpMat& img = res.d_gen[k][j]; // vector in F[k](Y)
        for (std::size_t i = 0; i < Fk.gens.size(); ++i) {
            const auto& lst = c.hom[Y][Fk.gens[i]];
            for (std::size_t t = 0; t < lst.size(); ++t) {
                int coeff = img.at(Fk.offset[Y][i] + static_cast<int>(t), 0);
                if (coeff == 0) continue;
                const FpMat& A = N.act[lst[t]]; // N(X_i) -> N(Y)
                for (int r = 0; r < A.rows; ++r)
                    for (int s = 0; s < A.cols; ++s)
                        D.at(roff[j] + r, coff[i] + s) =
                            (D.at(roff[j] + r, coff[i] + s) + coeff * A.at(r, s)) % N.p;
            }
        }
    }
    return D;
}

// dim Ext^n(M, N) for n = 0..maxdeg from a resolution of M with at least
// maxdeg + 2 terms.
inline std::vector<int> ext_dims(const FiniteCategory& c, const Resolution& res,
                                 const CatModule& N, int maxdeg) {
    require(static_cast<int>(res.F.size()) >= maxdeg + 2, "BadInput",
            "resolution too short for requested degree");
    std::vector<FpMat> delta;
    for (int k = 0; k <= maxdeg; ++k) delta.push_back(ext_differential(c, res, N, k));
    std::vector<int> out(maxdeg + 1);
    for (int n = 0; n <= maxdeg; ++n) {
        int dom = delta[n].cols;
        int ker = dom - rank(delta[n]);
        int im = (n == 0) ? 0 : rank(delta[n - 1]);
        out[n] = ker - im;
    }
    return out;
}

// dim lim^n M for n = 0..maxdeg, as Ext of the constant module.
inline std::vector<int> higher_limits(const FiniteCategory& c, const CatModule& M, int maxdeg,
                                      int dim_cap = kDefaultDimCap,
                                      const std::vector<int>* order_override = nullptr) {
    Resolution res =
        free_resolution(c, constant_module(c, M.p), maxdeg + 2, dim_cap, order_override);
    return ext_dims(c, res, M, maxdeg);
}

// Closed form for the three-object shape  a <- s -> b  (two arrows out of a
// common source, no other non-identities).  With A = act[s -> a] and
// B = act[s -> b] mapping M(a), M(b) into M(s):
//   lim^0 = dim ker [A | -B],   lim^1 = dim M(s) - rank [A | B],
//   lim^n = 0 for n >= 2.
inline std::vector<int> two_arrow_closed_form(const FiniteCategory& c, const CatModule& M,
                                              int maxdeg) {
    require(c.nobj == 3 && c.nmor() == 5, "WrongCategory",
            "closed form needs exactly three objects and two non-identity arrows");
    int s = -1;
    for (int x = 0; x < c.nobj; ++x) {
        int outdeg = 0;
        for (int f = 0; f < c.nmor(); ++f)
            if (c.mor[f].src == x && c.mor[f].dst != x) ++outdeg;
        if (outdeg == 2) s = x;
    }
    require(s >= 0, "WrongCategory", "no source object with two outgoing arrows");
    std::vector<int> arrows;
    for (int f = 0; f < c.nmor(); ++f)
        if (c.mor[f].src == s && c.mor[f].dst != s) arrows.push_back(f);
    require(arrows.size() == 2 && c.mor[arrows[0]].dst != c.mor[arrows[1]].dst, "WrongCategory",
            "arrows must reach two distinct objects");
    const FpMat& A = M.act[arrows[0]];
    const FpMat& B = M.act[arrows[1]];

    FpMat negB = B;
    for (std::int32_t& v : negB.a) v = (M.p - v) % M.p;
    FpMat K = A.hstack(negB);
    std::vector<int> out(maxdeg + 1, 0);
    out[0] = K.cols - rank(K);
    if (maxdeg >= 1) out[1] = M.dim[s] - rank(A.hstack(B));
    return out;
}

} // namespace fusionlim

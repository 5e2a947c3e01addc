#pragma once

#include <numeric>
#include <vector>

#include "fusionlim/category.hpp"
#include "fusionlim/fpmatrix.hpp"

namespace fusionlim {

// Contravariant functor from a finite category to finite dimensional
// F_p-vector spaces.  act[f] for f : x -> y is the induced map
// M(y) -> M(x), stored as a dim[x] by dim[y] matrix, so contravariance
// reads act[g o f] = act[f] * act[g].
struct CatModule {
    int p = 2;
    std::vector<int> dim;
    std::vector<FpMat> act;

    int total_dim() const { return std::accumulate(dim.begin(), dim.end(), 0); }

    void validate(const FiniteCategory& c) const {
        ensure(static_cast<int>(dim.size()) == c.nobj, "module object count mismatch");
        ensure(static_cast<int>(act.size()) == c.nmor(), "module morphism count mismatch");
        for (int x = 0; x < c.nobj; ++x) ensure(dim[x] >= 0, "negative dimension");
        for (int f = 0; f < c.nmor(); ++f) {
            ensure(act[f].p == p, "module prime mismatch");
            ensure(act[f].rows == dim[c.mor[f].src] && act[f].cols == dim[c.mor[f].dst],
                   "module matrix shape mismatch");
        }
        for (int x = 0; x < c.nobj; ++x)
            ensure(act[c.id_of[x]].is_identity(), "identity does not act as identity");
        for (int f = 0; f < c.nmor(); ++f)
            for (int g = 0; g < c.nmor(); ++g) {
                if (c.mor[g].src != c.mor[f].dst) continue;
                ensure(act[c.comp[g][f]] == act[f] * act[g], "module is not functorial");
            }
    }
};

inline CatModule constant_module(const FiniteCategory& c, int p) {
    CatModule m;
    m.p = p;
    m.dim.assign(c.nobj, 1);
    m.act.assign(c.nmor(), FpMat::identity(p, 1));
    return m;
}

// Pull a module on the target of a functor back along it.
inline CatModule restrict_module(const CatModule& M, const CatFunctor& inc,
                                 const FiniteCategory& src) {
    CatModule out;
    out.p = M.p;
    out.dim.resize(src.nobj);
    out.act.resize(src.nmor(), FpMat(M.p, 0, 0));
    for (int x = 0; x < src.nobj; ++x) out.dim[x] = M.dim[inc.obj[x]];
    for (int f = 0; f < src.nmor(); ++f) out.act[f] = M.act[inc.mor[f]];
    return out;
}

// Natural transformation M -> N: at[x] is the x-component N.dim[x] x M.dim[x].
struct ModuleHom {
    std::vector<FpMat> at;

    void validate(const FiniteCategory& c, const CatModule& M, const CatModule& N) const {
        ensure(static_cast<int>(at.size()) == c.nobj, "hom component count mismatch");
        for (int x = 0; x < c.nobj; ++x)
            ensure(at[x].rows == N.dim[x] && at[x].cols == M.dim[x], "hom component shape");
        for (int f = 0; f < c.nmor(); ++f) {
            int x = c.mor[f].src, y = c.mor[f].dst;
            ensure(at[x] * M.act[f] == N.act[f] * at[y], "hom is not natural");
        }
    }
};

// Direct sum of representable modules R_g, g in gens, where
// R_g(x) = k[Hom(x, g)].  Basis of mod at object x: for each summand i in
// order, the morphisms hom[x][gens[i]] in list order; offset[x][i] is where
// summand i starts, offset[x].back() == mod.dim[x].
struct FreeModule {
    CatModule mod;
    std::vector<int> gens;
    std::vector<std::vector<int>> offset;

    int basis_index(const FiniteCategory& c, int x, int summand, int mor_id) const {
        const auto& lst = c.hom[x][gens[summand]];
        for (std::size_t k = 0; k < lst.size(); ++k)
            if (lst[k] == mor_id) return offset[x][summand] + static_cast<int>(k);
        throw check_error("morphism not in free basis");
    }
};

inline FreeModule free_module_sum(const FiniteCategory& c, int p, const std::vector<int>& gens) {
    FreeModule F;
    F.gens = gens;
    F.mod.p = p;
    F.mod.dim.assign(c.nobj, 0);
    F.offset.assign(c.nobj, {});
    for (int x = 0; x < c.nobj; ++x) {
        F.offset[x].push_back(0);
        for (int g : gens) {
            F.mod.dim[x] += static_cast<int>(c.hom[x][g].size());
            F.offset[x].push_back(F.mod.dim[x]);
        }
    }
    F.mod.act.reserve(c.nmor());
    for (int f = 0; f < c.nmor(); ++f) {
        int x = c.mor[f].src, y = c.mor[f].dst;
        FpMat A(p, F.mod.dim[x], F.mod.dim[y]);
        for (std::size_t i = 0; i < gens.size(); ++i) {
            const auto& ylist = c.hom[y][gens[i]];
            for (std::size_t k = 0; k < ylist.size(); ++k) {
                int composite = c.comp[ylist[k]][f];
                A.at(F.basis_index(c, x, static_cast<int>(i), composite),
                     F.offset[y][i] + static_cast<int>(k)) = 1;
            }
        }
        F.mod.act.push_back(std::move(A));
    }
    return F;
}

inline FreeModule free_module(const FiniteCategory& c, int p, int gen_obj) {
    return free_module_sum(c, p, {gen_obj});
}

// A module map out of a free module is freely determined by the images of
// the identity generators: gen_images[i] is a column vector in N(gens[i]).
// The concrete components are assembled by naturality.
inline ModuleHom free_hom(const FiniteCategory& c, const FreeModule& F, const CatModule& N,
                          const std::vector<FpMat>& gen_images) {
    ensure(gen_images.size() == F.gens.size(), "one image per generator required");
    for (std::size_t i = 0; i < F.gens.size(); ++i)
        ensure(gen_images[i].rows == N.dim[F.gens[i]] && gen_images[i].cols == 1,
               "generator image shape mismatch");
    ModuleHom h;
    h.at.reserve(c.nobj);
    for (int x = 0; x < c.nobj; ++x) {
        FpMat A(N.p, N.dim[x], F.mod.dim[x]);
        for (std::size_t i = 0; i < F.gens.size(); ++i) {
            const auto& lst = c.hom[x][F.gens[i]];
            for (std::size_t k = 0; k < lst.size(); ++k) {
                FpMat col = N.act[lst[k]] * gen_images[i];
                for (int r = 0; r < N.dim[x]; ++r)
                    A.at(r, F.offset[x][i] + static_cast<int>(k)) = col.at(r, 0);
            }
        }
        h.at.push_back(std::move(A));
    }
    return h;
}

// Basis of the space of module maps M -> N as a linear system over all
// morphisms.  Unknowns: entries of all components at[x], column-major per
// object in object order.  Returns the nullspace basis matrix; its column
// count is dim Hom(M, N).
inline FpMat module_hom_space(const FiniteCategory& c, const CatModule& M, const CatModule& N) {
    ensure(M.p == N.p, "modules over different primes");
    int p = M.p;
    std::vector<int> var_off(c.nobj + 1, 0);
    for (int x = 0; x < c.nobj; ++x) var_off[x + 1] = var_off[x] + N.dim[x] * M.dim[x];
    int nvars = var_off[c.nobj];
    auto var = [&](int x, int r, int col) { return var_off[x] + col * N.dim[x] + r; };

    int nrows = 0;
    for (int f = 0; f < c.nmor(); ++f)
        nrows += N.dim[c.mor[f].src] * M.dim[c.mor[f].dst];
    FpMat sys(p, nrows, nvars);
    int row = 0;
    for (int f = 0; f < c.nmor(); ++f) {
        int x = c.mor[f].src, y = c.mor[f].dst;
        // at[x] * M.act[f] - N.act[f] * at[y] = 0, entry (r, t)
        for (int r = 0; r < N.dim[x]; ++r)
            for (int t = 0; t < M.dim[y]; ++t) {
                for (int s = 0; s < M.dim[x]; ++s)
                    sys.at(row, var(x, r, s)) =
                        (sys.at(row, var(x, r, s)) + M.act[f].at(s, t)) % p;
                for (int u = 0; u < N.dim[y]; ++u)
                    sys.at(row, var(y, u, t)) =
                        (sys.at(row, var(y, u, t)) + p - N.act[f].at(r, u) % p) % p;
                ++row;
            }
    }
    ensure(row == nrows, "hom system row count mismatch");
    return nullspace(sys);
}

inline int module_hom_dim(const FiniteCategory& c, const CatModule& M, const CatModule& N) {
    return module_hom_space(c, M, N).cols;
}

// Inverse limit of M: compatible families (x_v), act[f](x_dst) = x_src for
// every morphism.  Returned as a basis of the subspace of the direct sum
// over all objects (object blocks in order).
inline FpMat limit_basis(const FiniteCategory& c, const CatModule& M) {
    std::vector<int> off(c.nobj + 1, 0);
    for (int x = 0; x < c.nobj; ++x) off[x + 1] = off[x] + M.dim[x];
    int nrows = 0;
    for (int f = 0; f < c.nmor(); ++f) nrows += M.dim[c.mor[f].src];
    FpMat sys(M.p, nrows, off[c.nobj]);
    int row = 0;
    for (int f = 0; f < c.nmor(); ++f) {
        int x = c.mor[f].src, y = c.mor[f].dst;
        for (int r = 0; r < M.dim[x]; ++r) {
            for (int t = 0; t < M.dim[y]; ++t) sys.at(row, off[y] + t) = M.act[f].at(r, t);
            sys.at(row, off[x] + r) = (sys.at(row, off[x] + r) + M.p - 1) % M.p;
            ++row;
        }
    }
    return nullspace(sys);
}

inline int limit_dim(const FiniteCategory& c, const CatModule& M) {
    return limit_basis(c, M).cols;
}

// When some object t receives a morphism from every object, a compatible
// family is determined by its value at t, and the limit embeds into M(t) as
// the subspace where all comparison maps into each object agree.  Returns a
// basis of that subspace of M(t).
inline FpMat limit_embedded(const FiniteCategory& c, const CatModule& M, int t) {
    for (int x = 0; x < c.nobj; ++x)
        require(!c.hom[x][t].empty(), "SinkObjectMissing",
                "chosen object does not receive a morphism from every object");
    std::vector<FpMat> rows;
    for (int x = 0; x < c.nobj; ++x) {
        const auto& fs = c.hom[x][t];
        for (std::size_t k = 1; k < fs.size(); ++k)
            rows.push_back(M.act[fs[k]] - M.act[fs[0]]);
    }
    if (rows.empty()) return FpMat::identity(M.p, M.dim[t]);
    int nr = 0;
    for (const FpMat& r : rows) nr += r.rows;
    FpMat sys(M.p, nr, M.dim[t]);
    int at = 0;
    for (const FpMat& r : rows) {
        for (int i = 0; i < r.rows; ++i)
            for (int j = 0; j < r.cols; ++j) sys.at(at + i, j) = r.at(i, j);
        at += r.rows;
    }
    return nullspace(sys);
}

} // namespace fusionlim

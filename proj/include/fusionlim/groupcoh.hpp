#pragma once

#include <vector>

#include "fusionlim/fpmatrix.hpp"
#include "fusionlim/group.hpp"

namespace fusionlim {

inline constexpr int kCohomologyOrderCap = 64;
inline constexpr int kCohomologyDegreeCap = 8;

// Minimal free resolution of the trivial module over F_p[G] for a p-group G.
// The group algebra is local with radical J spanned by (g - e); a kernel K
// inside a free module is generated by any lift of a basis of K / JK, and JK
// is spanned by (g - e)v over group generators g and basis vectors v of K
// (for a product gh, (gh - e)v = (g - e)(hv) + (h - e)v).  Free modules are
// k[G]^r viewed as plain vector spaces of dimension |G| r, basis grouped by
// factor: index g + |G| * i.
class GroupCohomology {
public:
    GroupCohomology(GroupPtr G, int p, int maxdeg) : G_(std::move(G)), p_(p), maxdeg_(maxdeg) {
        check_prime(p);
        require(G_->order() <= kCohomologyOrderCap, "GroupTooLarge",
                "group order exceeds the cohomology cap");
        require(maxdeg >= 0 && maxdeg <= kCohomologyDegreeCap, "DegreeTooLarge",
                "cohomology degree exceeds the cap");
        int n = G_->order();
        while (n % p == 0) n /= p;
        require(n == 1, "NotPSubgroup", "cohomology resolution needs a p-group");
        build();
    }

    const FiniteGroup& G() const { return *G_; }
    GroupPtr G_ptr() const { return G_; }
    int p() const { return p_; }
    int maxdeg() const { return maxdeg_; }
    int rank(int j) const { return betti_[j]; }
    const std::vector<int>& betti() const { return betti_; }
    const FpMat& diff(int j) const { return d_[j]; } // F_{j+1} -> F_j

    // Left multiplication by g on k[G]^r as a permutation matrix.
    FpMat action(int j, int g) const {
        int n = G_->order(), r = betti_[j];
        FpMat A(p_, n * r, n * r);
        for (int i = 0; i < r; ++i)
            for (int h = 0; h < n; ++h) A.at(G_->mul(g, h) + n * i, h + n * i) = 1;
        return A;
    }

    // Coordinates of a cochain: a k[G]-map k[G]^r -> k (trivial action) is
    // the sum of coordinates in each factor, weighted by the value at that
    // factor's generator.  Rows index generators.
    FpMat aug_coords(int j) const {
        int n = G_->order(), r = betti_[j];
        FpMat A(p_, r, n * r);
        for (int i = 0; i < r; ++i)
            for (int h = 0; h < n; ++h) A.at(i, h + n * i) = 1;
        return A;
    }

    // Honest cochain cohomology dimensions for degrees 0..maxdeg.  For a
    // minimal resolution every induced differential vanishes and the answer
    // equals the Betti numbers, but this computes kernels and images anyway.
    std::vector<int> cohomology_dims() const {
        std::vector<FpMat> delta;
        for (int j = 0; j <= maxdeg_; ++j) {
            // value of the transposed differential on generator cochains
            FpMat D(p_, betti_[j + 1], betti_[j]);
            int n = G_->order();
            for (int i1 = 0; i1 < betti_[j + 1]; ++i1)
                for (int i0 = 0; i0 < betti_[j]; ++i0) {
                    int acc = 0;
                    for (int cr = 0; cr < n; ++cr)
                        acc += d_[j].at(cr + n * i0, G_->identity() + n * i1);
                    D.at(i1, i0) = acc % p_;
                }
            delta.push_back(std::move(D));
        }
        std::vector<int> out(maxdeg_ + 1);
        for (int j = 0; j <= maxdeg_; ++j) {
            int ker = delta[j].cols - fusionlim::rank(delta[j]);
            int im = (j == 0) ? 0 : fusionlim::rank(delta[j - 1]);
            out[j] = ker - im;
        }
        return out;
    }

private:
    void build() {
        int n = G_->order();
        betti_.assign(1, 1);
        // kernel of the augmentation k[G] -> k
        FpMat aug(p_, 1, n);
        for (int h = 0; h < n; ++h) aug.at(0, h) = 1;
        FpMat K = nullspace(aug);
        for (int j = 0; j <= maxdeg_; ++j) {
            // JK = span (g - e) v over group generators g, basis vectors v
            int r = betti_[j];
            FpMat JK(p_, n * r, 0);
            for (int gi : G_->generator_indices()) {
                FpMat gm = action(j, gi);
                JK = JK.hstack(gm * K - K);
            }
            FpMat gens = complement_in(K, image_basis(JK));
            int r1 = gens.cols;
            betti_.push_back(r1);
            FpMat D(p_, n * r, n * r1);
            for (int i = 0; i < r1; ++i) {
                FpMat w = gens.column(i);
                for (int g = 0; g < n; ++g) {
                    FpMat img = action(j, g) * w;
                    for (int row = 0; row < n * r; ++row) D.at(row, g + n * i) = img.at(row, 0);
                }
            }
            ensure(fusionlim::rank(D) == K.cols, "resolution step is not surjective onto the kernel");
            d_.push_back(std::move(D));
            if (j < maxdeg_) K = nullspace(d_[j]);
        }
    }

    GroupPtr G_;
    int p_, maxdeg_;
    std::vector<int> betti_;
    std::vector<FpMat> d_;
};

// Chain map tau_j : F^P_j -> F^Q_j over an injective homomorphism
// phi : P -> Q (phi[x] = Q-element index of the image of P-element x),
// P-equivariant through phi and compatible with the augmentations.  tau_0
// sends the group basis along phi; higher tau are lifted generator by
// generator through the target differential, which is solvable because the
// target complex is exact in positive degrees.
inline std::vector<FpMat> chain_map(const GroupCohomology& cP, const GroupCohomology& cQ,
                                    const std::vector<int>& phi) {
    ensure(cP.p() == cQ.p(), "chain map needs matching primes");
    int nP = cP.G().order(), nQ = cQ.G().order();
    ensure(static_cast<int>(phi.size()) == nP, "phi graph size mismatch");
    std::vector<FpMat> tau;
    FpMat t0(cP.p(), nQ, nP);
    for (int x = 0; x < nP; ++x) t0.at(phi[x], x) = 1;
    tau.push_back(std::move(t0));
    for (int j = 0; j < cP.maxdeg(); ++j) {
        FpMat rhs(cP.p(), nQ * cQ.rank(j), cP.rank(j + 1));
        for (int i = 0; i < cP.rank(j + 1); ++i) {
            FpMat col(cP.p(), nP * cP.rank(j), 1);
            for (int row = 0; row < col.rows; ++row)
                col.at(row, 0) = cP.diff(j).at(row, cP.G().identity() + nP * i);
            FpMat img = tau[j] * col;
            for (int row = 0; row < img.rows; ++row) rhs.at(row, i) = img.at(row, 0);
        }
        auto sol = solve_matrix(cQ.diff(j), rhs);
        ensure(sol.has_value(), "chain map lift failed");
        FpMat t(cP.p(), nQ * cQ.rank(j + 1), nP * cP.rank(j + 1));
        for (int i = 0; i < cP.rank(j + 1); ++i) {
            FpMat y = sol->column(i);
            for (int g = 0; g < nP; ++g) {
                FpMat img = cQ.action(j + 1, phi[g]) * y;
                for (int row = 0; row < img.rows; ++row) t.at(row, g + nP * i) = img.at(row, 0);
            }
        }
        tau.push_back(std::move(t));
    }
    return tau;
}

// H^j(Q) -> H^j(P) along phi : P -> Q, in generator coordinates.
inline FpMat restriction_matrix(const GroupCohomology& cP, const GroupCohomology& cQ,
                                const std::vector<int>& phi, int j) {
    require(j <= cP.maxdeg() && j <= cQ.maxdeg(), "DegreeTooLarge",
            "restriction beyond resolved degree");
    std::vector<FpMat> tau = chain_map(cP, cQ, phi);
    FpMat A = cQ.aug_coords(j);
    int nP = cP.G().order();
    FpMat R(cP.p(), cP.rank(j), cQ.rank(j));
    for (int i = 0; i < cP.rank(j); ++i) {
        FpMat col(cP.p(), nP * cP.rank(j), 1);
        col.at(cP.G().identity() + nP * i, 0) = 1;
        FpMat v = A * (tau[j] * col);
        for (int iq = 0; iq < cQ.rank(j); ++iq) R.at(i, iq) = v.at(iq, 0);
    }
    return R;
}

// Right coset transversal: Q = disjoint union of phi(P) t over t in T,
// smallest element index first.
inline std::vector<int> coset_transversal(const FiniteGroup& Q, const std::vector<int>& phi_image) {
    std::vector<char> seen(Q.order(), 0);
    std::vector<int> T;
    for (int q = 0; q < Q.order(); ++q) {
        if (seen[q]) continue;
        T.push_back(q);
        for (int x : phi_image) seen[Q.mul(x, q)] = 1;
    }
    return T;
}

// H^j(P) -> H^j(Q) along phi : P -> Q.  A class c is represented on the
// restricted complex by composing with a reverse chain map
// sigma_j : F^Q_j -> F^P_j of k[P]-modules (lifted on a coset basis), and
// the transfer of a k[P]-cochain f is x |-> sum over the transversal of
// f(s x), which is k[Q]-linear into the trivial module.
inline FpMat transfer_matrix(const GroupCohomology& cP, const GroupCohomology& cQ,
                             const std::vector<int>& phi, int j,
                             const std::vector<int>* transversal_override = nullptr) {
    require(j <= cP.maxdeg() && j <= cQ.maxdeg(), "DegreeTooLarge",
            "transfer beyond resolved degree");
    int nP = cP.G().order(), nQ = cQ.G().order();
    std::vector<int> T =
        transversal_override ? *transversal_override : coset_transversal(cQ.G(), phi);
    require(static_cast<int>(T.size()) * nP == nQ, "BadInput", "transversal has wrong size");
    {
        std::vector<char> seen(nQ, 0);
        for (int t : T)
            for (int x : phi) {
                int q = cQ.G().mul(x, t);
                require(!seen[q], "BadInput", "transversal cosets overlap");
                seen[q] = 1;
            }
    }

    // decompose q = phi(g) t: for each q, which (g, t)
    std::vector<int> part_g(nQ, -1), part_t(nQ, -1);
    for (std::size_t ti = 0; ti < T.size(); ++ti)
        for (int g = 0; g < nP; ++g) {
            int q = cQ.G().mul(phi[g], T[ti]);
            part_g[q] = g;
            part_t[q] = static_cast<int>(ti);
        }

    // sigma_0 : k[Q] -> k[P], phi(g) t |-> g
    std::vector<FpMat> sigma;
    FpMat s0(cP.p(), nP, nQ);
    for (int q = 0; q < nQ; ++q) s0.at(part_g[q], q) = 1;
    sigma.push_back(std::move(s0));
    for (int lev = 0; lev < j; ++lev) {
        int rQ = cQ.rank(lev + 1);
        // lift on the k[P]-basis (t, generator i)
        FpMat rhs(cP.p(), nP * cP.rank(lev), static_cast<int>(T.size()) * rQ);
        for (int i = 0; i < rQ; ++i)
            for (std::size_t ti = 0; ti < T.size(); ++ti) {
                FpMat col(cP.p(), nQ * rQ, 1);
                col.at(T[ti] + nQ * i, 0) = 1;
                FpMat img = sigma[lev] * (cQ.diff(lev) * col);
                for (int row = 0; row < img.rows; ++row)
                    rhs.at(row, static_cast<int>(ti + T.size() * i)) = img.at(row, 0);
            }
        auto sol = solve_matrix(cP.diff(lev), rhs);
        ensure(sol.has_value(), "reverse chain map lift failed");
        FpMat s(cP.p(), nP * cP.rank(lev + 1), nQ * rQ);
        for (int i = 0; i < rQ; ++i)
            for (int q = 0; q < nQ; ++q) {
                FpMat y = sol->column(part_t[q] + static_cast<int>(T.size()) * i);
                FpMat img = cP.action(lev + 1, part_g[q]) * y;
                for (int row = 0; row < img.rows; ++row) s.at(row, q + nQ * i) = img.at(row, 0);
            }
        sigma.push_back(std::move(s));
    }

    FpMat A = cP.aug_coords(j);
    FpMat Tr(cP.p(), cQ.rank(j), cP.rank(j));
    for (int iq = 0; iq < cQ.rank(j); ++iq) {
        // sum over the transversal of sigma_j(s * e_iq), in P-generator coords
        FpMat acc(cP.p(), cP.rank(j), 1);
        for (int s : T) {
            FpMat col(cP.p(), nQ * cQ.rank(j), 1);
            col.at(s + nQ * iq, 0) = 1;
            acc = acc + A * (sigma[j] * col);
        }
        for (int ip = 0; ip < cP.rank(j); ++ip) Tr.at(iq, ip) = acc.at(ip, 0);
    }
    return Tr;
}

} // namespace fusionlim

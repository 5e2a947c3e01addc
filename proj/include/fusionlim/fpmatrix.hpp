#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fusionlim/errors.hpp"

namespace fusionlim {

constexpr int kMaxPrime = 97;

inline void check_prime(int p) {
    require(p >= 2 && p <= kMaxPrime, "BadPrime", "prime out of supported range");
    for (int d = 2; d * d <= p; ++d)
        require(p % d != 0, "BadPrime", "modulus is not prime");
}

inline int inv_mod(int a, int p) { // p prime, a != 0 mod p
    int r = 1, b = a % p, e = p - 2;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

// Dense matrix over F_p.  All linear algebra below reduces to one primitive:
// Gaussian elimination to reduced row echelon form.
struct FpMat {
    int p = 2;
    int rows = 0, cols = 0;
    std::vector<std::int32_t> a;

    FpMat() = default;
    FpMat(int p_, int r, int c) : p(p_), rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0) {}

    std::int32_t& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    std::int32_t at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

    static FpMat identity(int p, int n) {
        FpMat m(p, n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    bool is_identity() const {
        if (rows != cols) return false;
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                if (at(i, j) != (i == j ? 1 : 0)) return false;
        return true;
    }

    bool is_zero() const {
        for (auto v : a)
            if (v) return false;
        return true;
    }

    FpMat operator*(const FpMat& rhs) const {
        ensure(p == rhs.p && cols == rhs.rows, "FpMat product shape mismatch");
        FpMat out(p, rows, rhs.cols);
        for (int i = 0; i < rows; ++i)
            for (int k = 0; k < cols; ++k) {
                std::int64_t v = at(i, k);
                if (!v) continue;
                for (int j = 0; j < rhs.cols; ++j)
                    out.at(i, j) = static_cast<std::int32_t>((out.at(i, j) + v * rhs.at(k, j)) % p);
            }
        return out;
    }

    FpMat operator+(const FpMat& rhs) const {
        ensure(p == rhs.p && rows == rhs.rows && cols == rhs.cols, "FpMat sum shape mismatch");
        FpMat out(p, rows, cols);
        for (std::size_t i = 0; i < a.size(); ++i)
            out.a[i] = static_cast<std::int32_t>((a[i] + rhs.a[i]) % p);
        return out;
    }

    FpMat operator-(const FpMat& rhs) const {
        ensure(p == rhs.p && rows == rhs.rows && cols == rhs.cols, "FpMat diff shape mismatch");
        FpMat out(p, rows, cols);
        for (std::size_t i = 0; i < a.size(); ++i)
            out.a[i] = static_cast<std::int32_t>(((a[i] - rhs.a[i]) % p + p) % p);
        return out;
    }

    bool operator==(const FpMat& rhs) const {
        return p == rhs.p && rows == rhs.rows && cols == rhs.cols && a == rhs.a;
    }

    std::vector<std::int32_t> apply(const std::vector<std::int32_t>& v) const {
        ensure(static_cast<int>(v.size()) == cols, "FpMat apply shape mismatch");
        std::vector<std::int32_t> out(rows, 0);
        for (int i = 0; i < rows; ++i) {
            std::int64_t acc = 0;
            for (int j = 0; j < cols; ++j) acc += static_cast<std::int64_t>(at(i, j)) * v[j];
            out[i] = static_cast<std::int32_t>(acc % p);
        }
        return out;
    }

    FpMat hstack(const FpMat& rhs) const {
        ensure(p == rhs.p && rows == rhs.rows, "FpMat hstack shape mismatch");
        FpMat out(p, rows, cols + rhs.cols);
        for (int i = 0; i < rows; ++i) {
            for (int j = 0; j < cols; ++j) out.at(i, j) = at(i, j);
            for (int j = 0; j < rhs.cols; ++j) out.at(i, cols + j) = rhs.at(i, j);
        }
        return out;
    }

    FpMat column(int j) const {
        FpMat out(p, rows, 1);
        for (int i = 0; i < rows; ++i) out.at(i, 0) = at(i, j);
        return out;
    }
};

// In-place reduced row echelon form; returns pivot columns.
inline std::vector<int> rref(FpMat& m) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int sel = -1;
        for (int i = r; i < m.rows; ++i)
            if (m.at(i, c)) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        if (sel != r)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(r, j));
        int iv = inv_mod(m.at(r, c), m.p);
        for (int j = 0; j < m.cols; ++j) m.at(r, j) = static_cast<std::int32_t>(static_cast<std::int64_t>(m.at(r, j)) * iv % m.p);
        for (int i = 0; i < m.rows; ++i) {
            if (i == r || !m.at(i, c)) continue;
            std::int64_t f = m.at(i, c);
            for (int j = 0; j < m.cols; ++j)
                m.at(i, j) = static_cast<std::int32_t>(((m.at(i, j) - f * m.at(r, j)) % m.p + m.p) % m.p);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline int rank(FpMat m) { return static_cast<int>(rref(m).size()); }

// Basis of the null space { x : A x = 0 }, as columns.
inline FpMat nullspace(FpMat m) {
    int p = m.p, n = m.cols;
    std::vector<int> pivots = rref(m);
    std::vector<bool> is_pivot(n, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < n; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    FpMat out(p, n, static_cast<int>(free_cols.size()));
    for (int k = 0; k < static_cast<int>(free_cols.size()); ++k) {
        int fc = free_cols[k];
        out.at(fc, k) = 1;
        for (int r = 0; r < static_cast<int>(pivots.size()); ++r)
            out.at(pivots[r], k) = (p - m.at(r, fc)) % p;
    }
    return out;
}

// Columns of A forming a basis of its column space.
inline FpMat image_basis(const FpMat& A) {
    FpMat work = A;
    std::vector<int> pivots = rref(work);
    FpMat out(A.p, A.rows, static_cast<int>(pivots.size()));
    for (int k = 0; k < static_cast<int>(pivots.size()); ++k)
        for (int i = 0; i < A.rows; ++i) out.at(i, k) = A.at(i, pivots[k]);
    return out;
}

// Solve A X = B column by column; nullopt if any column is inconsistent.
inline std::optional<FpMat> solve_matrix(const FpMat& A, const FpMat& B) {
    ensure(A.p == B.p && A.rows == B.rows, "solve_matrix shape mismatch");
    FpMat aug = A.hstack(B);
    std::vector<int> pivots = rref(aug);
    for (int c : pivots)
        if (c >= A.cols) return std::nullopt; // pivot in the rhs block
    FpMat X(A.p, A.cols, B.cols);
    for (int r = 0; r < static_cast<int>(pivots.size()); ++r)
        for (int j = 0; j < B.cols; ++j) X.at(pivots[r], j) = aug.at(r, A.cols + j);
    return X;
}

// Do the columns of A and B span the same subspace?
inline bool same_column_space(const FpMat& A, const FpMat& B) {
    return rank(A) == rank(B) && rank(A.hstack(B)) == rank(A);
}

// Basis (as columns of the ambient space) completing `have` to `want`,
// where columns of `have` span a subspace of the span of `want`.
inline FpMat complement_in(const FpMat& want, const FpMat& have) {
    FpMat acc = have;
    FpMat out(want.p, want.rows, 0);
    int r = rank(acc);
    for (int j = 0; j < want.cols; ++j) {
        FpMat cand = acc.hstack(want.column(j));
        int r2 = rank(cand);
        if (r2 > r) {
            out = out.hstack(want.column(j));
            acc = cand;
            r = r2;
        }
    }
    return out;
}

} // namespace fusionlim

#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "fusionlim/errors.hpp"

namespace fusionlim {

// Dense integer matrix with arbitrary-precision entries.  Naive pivoting in
// the Smith reduction can grow entries quickly, hence mpz rather than a fixed
// width type.
struct ZMat {
    int rows = 0, cols = 0;
    std::vector<mpz_class> a;

    ZMat() = default;
    ZMat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0) {}

    mpz_class& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    const mpz_class& at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

    static ZMat identity(int n) {
        ZMat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    bool is_zero() const {
        for (const auto& v : a)
            if (v != 0) return false;
        return true;
    }

    ZMat operator*(const ZMat& rhs) const {
        ensure(cols == rhs.rows, "ZMat product shape mismatch");
        ZMat out(rows, rhs.cols);
        for (int i = 0; i < rows; ++i)
            for (int k = 0; k < cols; ++k) {
                const mpz_class& v = at(i, k);
                if (v == 0) continue;
                for (int j = 0; j < rhs.cols; ++j) out.at(i, j) += v * rhs.at(k, j);
            }
        return out;
    }

    bool operator==(const ZMat& rhs) const {
        return rows == rhs.rows && cols == rhs.cols && a == rhs.a;
    }

    ZMat hstack(const ZMat& rhs) const {
        ensure(rows == rhs.rows, "ZMat hstack shape mismatch");
        ZMat out(rows, cols + rhs.cols);
        for (int i = 0; i < rows; ++i) {
            for (int j = 0; j < cols; ++j) out.at(i, j) = at(i, j);
            for (int j = 0; j < rhs.cols; ++j) out.at(i, cols + j) = rhs.at(i, j);
        }
        return out;
    }

    ZMat columns(const std::vector<int>& which) const {
        ZMat out(rows, static_cast<int>(which.size()));
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < out.cols; ++j) out.at(i, j) = at(i, which[j]);
        return out;
    }
};

// U * A * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... | d_r.
struct SmithResult {
    ZMat D, U, V;
    int rank = 0; // number of nonzero diagonal entries
};

inline SmithResult smith_normal_form(ZMat A) {
    const int r = A.rows, c = A.cols;
    SmithResult res;
    res.U = ZMat::identity(r);
    res.V = ZMat::identity(c);

    auto row_op = [&](ZMat& M, int i, int k, const mpz_class& q) { // row_i -= q * row_k
        for (int j = 0; j < M.cols; ++j) M.at(i, j) -= q * M.at(k, j);
    };
    auto col_op = [&](ZMat& M, int j, int k, const mpz_class& q) { // col_j -= q * col_k
        for (int i = 0; i < M.rows; ++i) M.at(i, j) -= q * M.at(i, k);
    };
    auto swap_rows = [&](ZMat& M, int i, int k) {
        for (int j = 0; j < M.cols; ++j) std::swap(M.at(i, j), M.at(k, j));
    };
    auto swap_cols = [&](ZMat& M, int j, int k) {
        for (int i = 0; i < M.rows; ++i) std::swap(M.at(i, j), M.at(i, k));
    };

    int t = 0;
    while (t < r && t < c) {
        // Find the nonzero entry of smallest absolute value in the remaining block.
        int pi = -1, pj = -1;
        mpz_class best;
        for (int i = t; i < r; ++i)
            for (int j = t; j < c; ++j) {
                if (A.at(i, j) == 0) continue;
                mpz_class v = abs(A.at(i, j));
                if (pi < 0 || v < best) {
                    best = v;
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break; // block is zero
        if (pi != t) { swap_rows(A, pi, t); swap_rows(res.U, pi, t); }
        if (pj != t) { swap_cols(A, pj, t); swap_cols(res.V, pj, t); }

        bool clean = false;
        while (!clean) {
            clean = true;
            for (int i = t + 1; i < r; ++i) {
                if (A.at(i, t) == 0) continue;
                mpz_class q = A.at(i, t) / A.at(t, t); // truncated division is fine here
                row_op(A, i, t, q);
                row_op(res.U, i, t, q);
                if (A.at(i, t) != 0) { // remainder became the smaller pivot
                    swap_rows(A, i, t);
                    swap_rows(res.U, i, t);
                    clean = false;
                }
            }
            for (int j = t + 1; j < c; ++j) {
                if (A.at(t, j) == 0) continue;
                mpz_class q = A.at(t, j) / A.at(t, t);
                col_op(A, j, t, q);
                col_op(res.V, j, t, q);
                if (A.at(t, j) != 0) {
                    swap_cols(A, j, t);
                    swap_cols(res.V, j, t);
                    clean = false;
                }
            }
            if (!clean) continue;
            // Enforce divisibility of the remaining block by the pivot.
            for (int i = t + 1; i < r && clean; ++i)
                for (int j = t + 1; j < c && clean; ++j)
                    if (A.at(i, j) % A.at(t, t) != 0) {
                        // add row i to row t, which reintroduces entries in row t
                        row_op(A, t, i, -1);
                        row_op(res.U, t, i, -1);
                        clean = false;
                    }
        }
        if (A.at(t, t) < 0) {
            for (int j = 0; j < c; ++j) A.at(t, j) = -A.at(t, j);
            for (int j = 0; j < res.U.cols; ++j) res.U.at(t, j) = -res.U.at(t, j);
        }
        ++t;
    }
    res.rank = t;
    res.D = std::move(A);
    return res;
}

// Column Hermite basis of the lattice spanned by the columns of A: column
// echelon with positive pivots, entries above each pivot untouched by later
// reductions and entries of earlier columns in each pivot row reduced into
// [0, pivot).  Zero columns are dropped, so the result has full column rank
// and, unlike raw transform columns from the Smith form, small entries.
inline ZMat hermite_basis(ZMat A) {
    int col = 0;
    for (int i = 0; i < A.rows && col < A.cols; ++i) {
        for (;;) {
            int best = -1;
            for (int j = col; j < A.cols; ++j) {
                if (A.at(i, j) == 0) continue;
                if (best < 0 || abs(A.at(i, j)) < abs(A.at(i, best))) best = j;
            }
            if (best < 0) break; // no pivot in this row
            if (best != col)
                for (int t = 0; t < A.rows; ++t) std::swap(A.at(t, col), A.at(t, best));
            bool again = false;
            for (int j = col + 1; j < A.cols; ++j) {
                if (A.at(i, j) == 0) continue;
                mpz_class q = A.at(i, j) / A.at(i, col); // truncated: |remainder| < |pivot|
                for (int t = 0; t < A.rows; ++t) A.at(t, j) -= q * A.at(t, col);
                if (A.at(i, j) != 0) again = true;
            }
            if (again) continue; // a remainder became the new smallest entry
            if (A.at(i, col) < 0)
                for (int t = 0; t < A.rows; ++t) A.at(t, col) = -A.at(t, col);
            // the pivot column is zero above row i, so reducing earlier
            // columns here cannot disturb their own pivot rows
            for (int j = 0; j < col; ++j) {
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), A.at(i, j).get_mpz_t(), A.at(i, col).get_mpz_t());
                if (q != 0)
                    for (int t = 0; t < A.rows; ++t) A.at(t, j) -= q * A.at(t, col);
            }
            ++col;
            break;
        }
    }
    std::vector<int> keep(col);
    for (int j = 0; j < col; ++j) keep[j] = j;
    return A.columns(keep);
}

// Basis of { x : A x = 0 } as columns.  The transform columns span the full
// (saturated) kernel lattice; the Hermite pass rewrites them with small
// entries, which keeps downstream eliminations from blowing up.
inline ZMat integer_kernel(const ZMat& A) {
    SmithResult s = smith_normal_form(A);
    std::vector<int> free_cols;
    for (int j = 0; j < A.cols; ++j)
        if (j >= s.rank) free_cols.push_back(j);
    return hermite_basis(s.V.columns(free_cols));
}

// One integer solution of A x = b, if any.
inline std::optional<std::vector<mpz_class>> solve_integer(const ZMat& A, const std::vector<mpz_class>& b) {
    ensure(static_cast<int>(b.size()) == A.rows, "solve_integer: rhs size mismatch");
    SmithResult s = smith_normal_form(A);
    std::vector<mpz_class> ub(A.rows, 0);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.rows; ++k)
            if (s.U.at(i, k) != 0) ub[i] += s.U.at(i, k) * b[k];
    std::vector<mpz_class> z(A.cols, 0);
    for (int i = 0; i < A.rows; ++i) {
        if (i < s.rank && i < A.cols && s.D.at(i, i) != 0) {
            if (ub[i] % s.D.at(i, i) != 0) return std::nullopt;
            z[i] = ub[i] / s.D.at(i, i);
        } else if (ub[i] != 0) {
            return std::nullopt;
        }
    }
    std::vector<mpz_class> x(A.cols, 0);
    for (int i = 0; i < A.cols; ++i)
        for (int k = 0; k < A.cols; ++k)
            if (s.V.at(i, k) != 0) x[i] += s.V.at(i, k) * z[k];
    return x;
}

// Is v in the lattice generated by the columns of A?
inline bool in_column_lattice(const ZMat& A, const std::vector<mpz_class>& v) {
    return solve_integer(A, v).has_value();
}

// One integer solution X of A X = B column by column, sharing a single
// decomposition of A; nullopt if any column is unsolvable.
inline std::optional<ZMat> solve_integer_matrix(const ZMat& A, const ZMat& B) {
    ensure(B.rows == A.rows, "solve_integer_matrix: shape mismatch");
    SmithResult s = smith_normal_form(A);
    ZMat X(A.cols, B.cols);
    for (int j = 0; j < B.cols; ++j) {
        std::vector<mpz_class> ub(A.rows, 0);
        for (int i = 0; i < A.rows; ++i)
            for (int k = 0; k < A.rows; ++k)
                if (s.U.at(i, k) != 0) ub[i] += s.U.at(i, k) * B.at(k, j);
        std::vector<mpz_class> z(A.cols, 0);
        for (int i = 0; i < A.rows; ++i) {
            if (i < s.rank && i < A.cols && s.D.at(i, i) != 0) {
                if (ub[i] % s.D.at(i, i) != 0) return std::nullopt;
                z[i] = ub[i] / s.D.at(i, i);
            } else if (ub[i] != 0) {
                return std::nullopt;
            }
        }
        for (int i = 0; i < A.cols; ++i) {
            mpz_class acc = 0;
            for (int k = 0; k < A.cols; ++k)
                if (s.V.at(i, k) != 0) acc += s.V.at(i, k) * z[k];
            X.at(i, j) = acc;
        }
    }
    return X;
}

// Basis (full column rank) of the lattice generated by the columns of A.
inline ZMat lattice_basis(const ZMat& A) { return hermite_basis(A); }

// Invariant factors of Z^n / (column lattice of R): the diagonal entries != 1
// in divisibility order, followed by one 0 per free rank.
inline std::vector<mpz_class> quotient_invariants(const ZMat& R, int n) {
    ensure(R.rows == n, "quotient_invariants: ambient rank mismatch");
    SmithResult s = smith_normal_form(R);
    std::vector<mpz_class> out;
    for (int i = 0; i < s.rank; ++i)
        if (s.D.at(i, i) != 1) out.push_back(s.D.at(i, i));
    for (int i = s.rank; i < n; ++i) out.push_back(0);
    return out;
}

} // namespace fusionlim

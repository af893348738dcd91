/**
 * @file linalg.hpp
 * @brief Exact integer matrix algebra: Hermite and Smith normal forms,
 *        lattice membership with certificates, exact linear solves.
 *
 * All arithmetic is arbitrary precision (GMP); there is no floating point
 * anywhere in this library. Pivot selection prefers the smallest nonzero
 * magnitude to limit intermediate entry growth.
 */
#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gwitt/errors.hpp"

namespace gwitt {

using Int = mpz_class;

class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

    static IntMatrix identity(int n) {
        IntMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Int& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const Int& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    bool operator==(const IntMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    IntMatrix transposed() const {
        IntMatrix t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    std::vector<Int> column(int j) const {
        std::vector<Int> c(rows_);
        for (int i = 0; i < rows_; ++i) c[i] = at(i, j);
        return c;
    }

    void set_column(int j, const std::vector<Int>& c) {
        for (int i = 0; i < rows_; ++i) at(i, j) = c[i];
    }

    /// Matrix * column vector.
    std::vector<Int> apply(const std::vector<Int>& x) const {
        if (static_cast<int>(x.size()) != cols_)
            throw validation_error("IntMatrix::apply: dimension mismatch");
        std::vector<Int> y(rows_, Int(0));
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                if (at(i, j) != 0) y[i] += at(i, j) * x[j];
        return y;
    }

    IntMatrix operator*(const IntMatrix& b) const {
        if (cols_ != b.rows_) throw validation_error("IntMatrix::operator*: dimension mismatch");
        IntMatrix c(rows_, b.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                if (at(i, k) == 0) continue;
                for (int j = 0; j < b.cols_; ++j)
                    if (b.at(k, j) != 0) c.at(i, j) += at(i, k) * b.at(k, j);
            }
        return c;
    }

private:
    int rows_, cols_;
    std::vector<Int> a_;
};

/// Floor division: q = floor(a / b), b != 0.
inline Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

/// Nonnegative remainder: a - floor(a/b)*b for b > 0.
inline Int pos_mod(const Int& a, const Int& b) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

struct HermiteResult {
    IntMatrix h; ///< row-style Hermite form, U*a = h
    IntMatrix u; ///< unimodular row transform
    std::vector<int> pivot_cols; ///< pivot column per nonzero row of h
};

/// Row-style Hermite normal form. Pivots positive, entries above each pivot
/// reduced into [0, pivot). Selects the smallest nonzero pivot candidate.
inline HermiteResult hnf(const IntMatrix& a_in) {
    IntMatrix h = a_in;
    IntMatrix u = IntMatrix::identity(h.rows());
    const int m = h.rows(), n = h.cols();

    auto swap_rows = [&](int i, int j) {
        if (i == j) return;
        for (int c = 0; c < n; ++c) std::swap(h.at(i, c), h.at(j, c));
        for (int c = 0; c < m; ++c) std::swap(u.at(i, c), u.at(j, c));
    };
    auto add_row = [&](int dst, int src, const Int& k) {
        if (k == 0) return;
        for (int c = 0; c < n; ++c) h.at(dst, c) += k * h.at(src, c);
        for (int c = 0; c < m; ++c) u.at(dst, c) += k * u.at(src, c);
    };
    auto negate_row = [&](int i) {
        for (int c = 0; c < n; ++c) h.at(i, c) = -h.at(i, c);
        for (int c = 0; c < m; ++c) u.at(i, c) = -u.at(i, c);
    };

    std::vector<int> pivot_cols;
    int r = 0;
    for (int c = 0; c < n && r < m; ++c) {
        // Euclidean elimination in column c below row r.
        while (true) {
            int best = -1;
            for (int i = r; i < m; ++i) {
                if (h.at(i, c) == 0) continue;
                if (best < 0 || cmp(abs(h.at(i, c)), abs(h.at(best, c))) < 0) best = i;
            }
            if (best < 0) break;
            swap_rows(r, best);
            bool clean = true;
            for (int i = r + 1; i < m; ++i) {
                if (h.at(i, c) == 0) continue;
                add_row(i, r, -floor_div(h.at(i, c), h.at(r, c)));
                if (h.at(i, c) != 0) clean = false;
            }
            if (clean) break;
        }
        if (h.at(r, c) == 0) continue;
        if (h.at(r, c) < 0) negate_row(r);
        for (int i = 0; i < r; ++i)
            add_row(i, r, -floor_div(h.at(i, c), h.at(r, c)));
        pivot_cols.push_back(c);
        ++r;
    }
    return {std::move(h), std::move(u), std::move(pivot_cols)};
}

struct SmithResult {
    std::vector<Int> diag;   ///< diagonal of D = U*A*V, d1 | d2 | ..., all >= 0
    IntMatrix u, u_inv;      ///< unimodular row transform and its inverse
    IntMatrix v;             ///< unimodular column transform
    /// Invariant factors of coker(A) (Z^rows / colspan A): the nontrivial
    /// torsion factors followed by one 0 per free summand.
    std::vector<Int> cokernel_factors;
};

/// Smith normal form with transforms: u * A * v = diag(diag).
inline SmithResult snf(const IntMatrix& a_in) {
    IntMatrix d = a_in;
    const int m = d.rows(), n = d.cols();
    IntMatrix u = IntMatrix::identity(m);
    IntMatrix u_inv = IntMatrix::identity(m);
    IntMatrix v = IntMatrix::identity(n);

    // Row op on d and u; inverse op applied to columns of u_inv.
    auto row_swap = [&](int i, int j) {
        if (i == j) return;
        for (int c = 0; c < n; ++c) std::swap(d.at(i, c), d.at(j, c));
        for (int c = 0; c < m; ++c) std::swap(u.at(i, c), u.at(j, c));
        for (int r = 0; r < m; ++r) std::swap(u_inv.at(r, i), u_inv.at(r, j));
    };
    auto row_add = [&](int dst, int src, const Int& k) {
        if (k == 0) return;
        for (int c = 0; c < n; ++c) d.at(dst, c) += k * d.at(src, c);
        for (int c = 0; c < m; ++c) u.at(dst, c) += k * u.at(src, c);
        for (int r = 0; r < m; ++r) u_inv.at(r, src) -= k * u_inv.at(r, dst);
    };
    auto row_neg = [&](int i) {
        for (int c = 0; c < n; ++c) d.at(i, c) = -d.at(i, c);
        for (int c = 0; c < m; ++c) u.at(i, c) = -u.at(i, c);
        for (int r = 0; r < m; ++r) u_inv.at(r, i) = -u_inv.at(r, i);
    };
    auto col_swap = [&](int i, int j) {
        if (i == j) return;
        for (int r = 0; r < m; ++r) std::swap(d.at(r, i), d.at(r, j));
        for (int r = 0; r < n; ++r) std::swap(v.at(r, i), v.at(r, j));
    };
    auto col_add = [&](int dst, int src, const Int& k) {
        if (k == 0) return;
        for (int r = 0; r < m; ++r) d.at(r, dst) += k * d.at(r, src);
        for (int r = 0; r < n; ++r) v.at(r, dst) += k * v.at(r, src);
    };

    int t = 0;
    while (true) {
        int pi = -1, pj = -1;
        for (int i = t; i < m; ++i)
            for (int j = t; j < n; ++j) {
                if (d.at(i, j) == 0) continue;
                if (pi < 0 || cmp(abs(d.at(i, j)), abs(d.at(pi, pj))) < 0) { pi = i; pj = j; }
            }
        if (pi < 0) break;
        row_swap(t, pi);
        col_swap(t, pj);

        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (int i = t + 1; i < m; ++i) {
                if (d.at(i, t) == 0) continue;
                row_add(i, t, -floor_div(d.at(i, t), d.at(t, t)));
                if (d.at(i, t) != 0) { row_swap(t, i); dirty = true; }
            }
            for (int j = t + 1; j < n; ++j) {
                if (d.at(t, j) == 0) continue;
                col_add(j, t, -floor_div(d.at(t, j), d.at(t, t)));
                if (d.at(t, j) != 0) { col_swap(t, j); dirty = true; }
            }
        }
        // Enforce divisibility of the remaining block by the pivot.
        bool restart = false;
        for (int i = t + 1; i < m && !restart; ++i)
            for (int j = t + 1; j < n && !restart; ++j)
                if (pos_mod(d.at(i, j), abs(d.at(t, t))) != 0) {
                    row_add(t, i, 1);
                    restart = true;
                }
        if (restart) continue;
        if (d.at(t, t) < 0) row_neg(t);
        ++t;
    }

    SmithResult res;
    res.diag.resize(std::min(m, n), Int(0));
    for (int i = 0; i < std::min(m, n); ++i) res.diag[i] = d.at(i, i);
    res.u = std::move(u);
    res.u_inv = std::move(u_inv);
    res.v = std::move(v);
    int nonzero = 0;
    for (const Int& x : res.diag)
        if (x != 0) {
            ++nonzero;
            if (x != 1) res.cokernel_factors.push_back(x);
        }
    for (int i = nonzero; i < m; ++i) res.cokernel_factors.push_back(0);
    return res;
}

/// Membership of v in the lattice spanned by the columns of A.
/// Returns coefficients x with A*x = v when v is a member.
inline std::optional<std::vector<Int>> in_lattice(const std::vector<Int>& v, const IntMatrix& a) {
    if (static_cast<int>(v.size()) != a.rows())
        throw validation_error("in_lattice: dimension mismatch");
    // Row HNF of A^T: rows of H are an echelon basis of the column lattice.
    HermiteResult hr = hnf(a.transposed());
    const int nrows = hr.h.rows();
    std::vector<Int> rem = v;
    std::vector<Int> t(nrows, Int(0));
    for (int r = 0; r < static_cast<int>(hr.pivot_cols.size()); ++r) {
        int pc = hr.pivot_cols[r];
        const Int& p = hr.h.at(r, pc);
        if (rem[pc] == 0) continue;
        if (pos_mod(rem[pc], p) != 0) return std::nullopt;
        Int q = rem[pc] / p;
        t[r] = q;
        for (int c = 0; c < hr.h.cols(); ++c) rem[c] -= q * hr.h.at(r, c);
    }
    for (const Int& x : rem)
        if (x != 0) return std::nullopt;
    // v = t * H = t * U * A^T, so coefficients are (t * U)^T = U^T t.
    std::vector<Int> coeff(a.cols(), Int(0));
    for (int j = 0; j < a.cols(); ++j)
        for (int r = 0; r < nrows; ++r)
            if (t[r] != 0 && hr.u.at(r, j) != 0) coeff[j] += t[r] * hr.u.at(r, j);
    return coeff;
}

/// Unique solution check helper: A*x for stacked column generators.
inline std::vector<Int> mat_vec(const IntMatrix& a, const std::vector<Int>& x) { return a.apply(x); }

} // namespace gwitt

#pragma once

#include <gmpxx.h>

#include <utility>
#include <vector>

#include "arrcohom/errors.hpp"
#include "arrcohom/rat.hpp"

namespace arrcohom {

/// Dense matrix over the rationals, exact everywhere. Rank and determinant go
/// through fraction-free (Bareiss) elimination on a denominator-cleared
/// integer copy; nullspace bases and linear solving use rational RREF. The
/// two elimination routes are independent, and rank_and_nullspace()
/// cross-checks one against the other.
class MatQ {
public:
    MatQ() : rows_(0), cols_(0) {}
    MatQ(size_t rows, size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static MatQ identity(size_t n) {
        MatQ m(n, n);
        for (size_t i = 0; i < n; ++i) m(i, i) = Rat(1);
        return m;
    }

    static MatQ from_rows(const std::vector<VecQ>& rows) {
        if (rows.empty()) return MatQ(0, 0);
        MatQ m(rows.size(), rows[0].size());
        for (size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_)
                throw DimensionMismatch("MatQ::from_rows: ragged rows");
            for (size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    Rat& operator()(size_t i, size_t j) { return data_[i * cols_ + j]; }
    const Rat& operator()(size_t i, size_t j) const { return data_[i * cols_ + j]; }

    VecQ row(size_t i) const {
        VecQ r(cols_);
        for (size_t j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
        return r;
    }
    VecQ col(size_t j) const {
        VecQ c(rows_);
        for (size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    bool is_zero() const {
        for (const Rat& x : data_)
            if (!x.is_zero()) return false;
        return true;
    }

    friend bool operator==(const MatQ& a, const MatQ& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    friend MatQ operator+(const MatQ& a, const MatQ& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw DimensionMismatch("MatQ: shape mismatch in +");
        MatQ r(a.rows_, a.cols_);
        for (size_t i = 0; i < a.data_.size(); ++i)
            r.data_[i] = a.data_[i] + b.data_[i];
        return r;
    }

    friend MatQ operator*(const MatQ& a, const MatQ& b) {
        if (a.cols_ != b.rows_) throw DimensionMismatch("MatQ: shape mismatch in *");
        MatQ r(a.rows_, b.cols_);
        for (size_t i = 0; i < a.rows_; ++i)
            for (size_t k = 0; k < a.cols_; ++k) {
                if (a(i, k).is_zero()) continue;
                for (size_t j = 0; j < b.cols_; ++j)
                    r(i, j) += a(i, k) * b(k, j);
            }
        return r;
    }

    friend MatQ operator*(const MatQ& a, const Rat& c) {
        MatQ r(a.rows_, a.cols_);
        for (size_t i = 0; i < a.data_.size(); ++i) r.data_[i] = a.data_[i] * c;
        return r;
    }

    friend VecQ operator*(const MatQ& a, const VecQ& v) {
        if (a.cols_ != v.size()) throw DimensionMismatch("MatQ: shape mismatch in M*v");
        VecQ r(a.rows_);
        for (size_t i = 0; i < a.rows_; ++i)
            for (size_t j = 0; j < a.cols_; ++j)
                if (!a(i, j).is_zero()) r[i] += a(i, j) * v[j];
        return r;
    }

    MatQ transpose() const {
        MatQ r(cols_, rows_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    MatQ submatrix(const std::vector<size_t>& rs, const std::vector<size_t>& cs) const {
        MatQ r(rs.size(), cs.size());
        for (size_t i = 0; i < rs.size(); ++i)
            for (size_t j = 0; j < cs.size(); ++j) r(i, j) = (*this)(rs[i], cs[j]);
        return r;
    }

    static MatQ hcat(const MatQ& a, const MatQ& b) {
        if (a.rows_ != b.rows_) throw DimensionMismatch("MatQ::hcat: row mismatch");
        MatQ r(a.rows_, a.cols_ + b.cols_);
        for (size_t i = 0; i < a.rows_; ++i) {
            for (size_t j = 0; j < a.cols_; ++j) r(i, j) = a(i, j);
            for (size_t j = 0; j < b.cols_; ++j) r(i, a.cols_ + j) = b(i, j);
        }
        return r;
    }

    /// Rank via fraction-free elimination.
    size_t rank() const {
        mpz_class scale;
        int sign;
        std::vector<mpz_class> m = cleared_int_copy(scale);
        return bareiss(m, rows_, cols_, sign).first;
    }

    /// Determinant via fraction-free elimination (product-of-pivots form).
    Rat det_bareiss() const {
        if (rows_ != cols_) throw DimensionMismatch("det: non-square matrix");
        if (rows_ == 0) return Rat(1);
        mpz_class scale;
        int sign;
        std::vector<mpz_class> m = cleared_int_copy(scale);
        auto [rank, last_piv] = bareiss(m, rows_, cols_, sign);
        if (rank < rows_) return Rat(0);
        mpq_class q(sign > 0 ? last_piv : -last_piv, scale);
        return Rat(q);
    }

    /// Reduced row echelon form. Returns the pivot column list; `out`
    /// receives the RREF. Deterministic: first nonzero pivot in column order.
    std::vector<size_t> rref(MatQ& out) const {
        out = *this;
        std::vector<size_t> pivots;
        size_t pr = 0;
        for (size_t c = 0; c < cols_ && pr < rows_; ++c) {
            size_t p = pr;
            while (p < rows_ && out(p, c).is_zero()) ++p;
            if (p == rows_) continue;
            if (p != pr)
                for (size_t j = 0; j < cols_; ++j) std::swap(out(p, j), out(pr, j));
            Rat inv = Rat(1) / out(pr, c);
            for (size_t j = c; j < cols_; ++j) out(pr, j) *= inv;
            for (size_t i = 0; i < rows_; ++i) {
                if (i == pr || out(i, c).is_zero()) continue;
                Rat f = out(i, c);
                for (size_t j = c; j < cols_; ++j) out(i, j) -= f * out(pr, j);
            }
            pivots.push_back(c);
            ++pr;
        }
        return pivots;
    }

private:
    /// Clear denominators row by row; `scale` returns the product of the row
    /// multipliers (which multiplies the determinant).
    std::vector<mpz_class> cleared_int_copy(mpz_class& scale) const {
        std::vector<mpz_class> m(rows_ * cols_);
        scale = 1;
        for (size_t i = 0; i < rows_; ++i) {
            mpz_class l = 1;
            for (size_t j = 0; j < cols_; ++j) {
                mpz_class d = (*this)(i, j).den();
                mpz_class g;
                mpz_gcd(g.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
                l = l / g * d;
            }
            scale *= l;
            for (size_t j = 0; j < cols_; ++j) {
                const Rat& e = (*this)(i, j);
                m[i * cols_ + j] = e.num() * (l / e.den());
            }
        }
        return m;
    }

    /// Bareiss echelon over the integers. Returns (rank, last pivot). The
    /// exact divisions are asserted; a nonzero remainder would mean the
    /// elimination bookkeeping is broken.
    static std::pair<size_t, mpz_class> bareiss(std::vector<mpz_class>& m,
                                                size_t rows, size_t cols,
                                                int& sign) {
        sign = 1;
        mpz_class prev = 1;
        mpz_class last_piv = 1;
        size_t pr = 0;
        for (size_t c = 0; c < cols && pr < rows; ++c) {
            size_t p = pr;
            while (p < rows && m[p * cols + c] == 0) ++p;
            if (p == rows) continue;
            if (p != pr) {
                for (size_t j = 0; j < cols; ++j)
                    std::swap(m[p * cols + j], m[pr * cols + j]);
                sign = -sign;
            }
            const mpz_class piv = m[pr * cols + c];
            for (size_t i = pr + 1; i < rows; ++i) {
                const mpz_class mic = m[i * cols + c];
                for (size_t j = c; j < cols; ++j) {
                    mpz_class t = piv * m[i * cols + j] - mic * m[pr * cols + j];
                    mpz_class q, r;
                    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), t.get_mpz_t(),
                                prev.get_mpz_t());
                    if (r != 0)
                        throw InternalError("bareiss: inexact division");
                    m[i * cols + j] = q;
                }
            }
            prev = piv;
            last_piv = piv;
            ++pr;
        }
        return {pr, last_piv};
    }

    size_t rows_, cols_;
    std::vector<Rat> data_;
};

/// Rank together with a deterministic nullspace basis in reduced echelon
/// form: basis vector for free column f has 1 at f and the negated RREF
/// entries at the pivot coordinates. Cross-checks the Bareiss rank against
/// the RREF pivot count.
inline std::pair<size_t, std::vector<VecQ>> rank_and_nullspace(const MatQ& M) {
    MatQ R;
    std::vector<size_t> pivots = M.rref(R);
    size_t bareiss_rank = M.rank();
    if (bareiss_rank != pivots.size())
        throw InternalError("rank_and_nullspace: Bareiss and RREF ranks disagree");
    std::vector<bool> is_pivot(M.cols(), false);
    for (size_t c : pivots) is_pivot[c] = true;
    std::vector<VecQ> basis;
    for (size_t f = 0; f < M.cols(); ++f) {
        if (is_pivot[f]) continue;
        VecQ v(M.cols());
        v[f] = Rat(1);
        for (size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -R(k, f);
        basis.push_back(std::move(v));
    }
    return {pivots.size(), std::move(basis)};
}

/// Solve M x = y exactly. Returns false when inconsistent; x receives the
/// solution with free variables set to zero.
inline bool solve(const MatQ& M, const VecQ& y, VecQ& x) {
    if (y.size() != M.rows()) throw DimensionMismatch("solve: rhs length");
    MatQ rhs(M.rows(), 1);
    for (size_t i = 0; i < M.rows(); ++i) rhs(i, 0) = y[i];
    MatQ aug = MatQ::hcat(M, rhs);
    MatQ R;
    std::vector<size_t> pivots = aug.rref(R);
    if (!pivots.empty() && pivots.back() == M.cols()) return false;
    x.assign(M.cols(), Rat(0));
    for (size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = R(k, M.cols());
    return true;
}

/// Exact inverse; throws on singular input.
inline MatQ invert(const MatQ& M) {
    if (M.rows() != M.cols()) throw DimensionMismatch("invert: non-square");
    size_t n = M.rows();
    MatQ aug = MatQ::hcat(M, MatQ::identity(n));
    MatQ R;
    std::vector<size_t> pivots = aug.rref(R);
    if (pivots.size() != n || (n > 0 && pivots.back() != n - 1))
        throw InputError("invert: singular matrix");
    std::vector<size_t> rows(n), cols(n);
    for (size_t i = 0; i < n; ++i) { rows[i] = i; cols[i] = n + i; }
    return R.submatrix(rows, cols);
}

/// Columns-as-vectors matrix.
inline MatQ from_cols(const std::vector<VecQ>& cols) {
    if (cols.empty()) return MatQ(0, 0);
    MatQ m(cols[0].size(), cols.size());
    for (size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != m.rows())
            throw DimensionMismatch("from_cols: ragged columns");
        for (size_t i = 0; i < m.rows(); ++i) m(i, j) = cols[j][i];
    }
    return m;
}

/// Rank of the span of a set of vectors.
inline size_t span_rank(const std::vector<VecQ>& vecs) {
    if (vecs.empty()) return 0;
    return MatQ::from_rows(vecs).rank();
}

/// Canonical basis of the span: RREF rows (deterministic, echelon form).
inline std::vector<VecQ> span_canonical_basis(const std::vector<VecQ>& vecs) {
    if (vecs.empty()) return {};
    MatQ R;
    std::vector<size_t> pivots = MatQ::from_rows(vecs).rref(R);
    std::vector<VecQ> out;
    for (size_t k = 0; k < pivots.size(); ++k) out.push_back(R.row(k));
    return out;
}

}  // namespace arrcohom

#pragma once

#include <cstdint>
#include <map>
#include <tuple>
#include <vector>

#include "arrcohom/errors.hpp"
#include "arrcohom/matq.hpp"
#include "arrcohom/mpoly.hpp"

namespace arrcohom {

/// Enumerate all k-subsets of {0..n-1} in lexicographic order.
inline std::vector<std::vector<size_t>> k_subsets(size_t n, size_t k) {
    std::vector<std::vector<size_t>> out;
    if (k > n) return out;
    std::vector<size_t> cur(k);
    for (size_t i = 0; i < k; ++i) cur[i] = i;
    for (;;) {
        out.push_back(cur);
        // advance
        size_t i = k;
        while (i > 0) {
            --i;
            if (cur[i] != i + n - k) {
                ++cur[i];
                for (size_t j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
                i = k + 1;
                break;
            }
        }
        if (i != k + 1) break;
        if (k == 0) break;
    }
    if (k == 0) out = {{}};
    return out;
}

/// Matrix of homogeneous linear forms in a fixed polynomial ring. Entries are
/// either zero or have total degree exactly one; the constructor-side setters
/// enforce this because every consumer (Fitting ideals, rank specialization)
/// depends on it.
class MatPoly {
public:
    MatPoly() : rows_(0), cols_(0), nvars_(0) {}
    MatPoly(size_t rows, size_t cols, size_t nvars)
        : rows_(rows), cols_(cols), nvars_(nvars),
          data_(rows * cols, MPoly(nvars)) {}

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    size_t nvars() const { return nvars_; }

    const MPoly& operator()(size_t i, size_t j) const { return data_[i * cols_ + j]; }

    void set(size_t i, size_t j, const MPoly& p) {
        if (p.nvars() != nvars_) throw DimensionMismatch("MatPoly::set: arity");
        if (!p.is_zero() && !p.is_homogeneous(1))
            throw InternalError("MatPoly: entry not homogeneous linear");
        data_[i * cols_ + j] = p;
    }

    /// Entrywise exact evaluation at a rational point.
    MatQ eval(const VecQ& point) const {
        if (point.size() != nvars_)
            throw DimensionMismatch("MatPoly::eval: point length != variable count");
        MatQ m(rows_, cols_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j)
                m(i, j) = (*this)(i, j).eval(point);
        return m;
    }

    /// Polynomial matrix product (for chain-complex composition checks).
    friend MatPoly compose(const MatPoly& a, const MatPoly& b) {
        if (a.cols_ != b.rows_) throw DimensionMismatch("MatPoly: shape mismatch");
        MatPoly r(a.rows_, b.cols_, a.nvars_);
        for (size_t i = 0; i < a.rows_; ++i)
            for (size_t k = 0; k < a.cols_; ++k) {
                if (a(i, k).is_zero()) continue;
                for (size_t j = 0; j < b.cols_; ++j) {
                    if (b(k, j).is_zero()) continue;
                    r.data_[i * r.cols_ + j] += a(i, k) * b(k, j);
                }
            }
        return r;
    }

    bool is_zero() const {
        for (const MPoly& p : data_)
            if (!p.is_zero()) return false;
        return true;
    }

    MatPoly submatrix(const std::vector<size_t>& rs,
                      const std::vector<size_t>& cs) const {
        MatPoly r(rs.size(), cs.size(), nvars_);
        for (size_t i = 0; i < rs.size(); ++i)
            for (size_t j = 0; j < cs.size(); ++j)
                r.data_[i * cs.size() + j] = (*this)(rs[i], cs[j]);
        return r;
    }

    MatPoly delete_col(size_t col) const {
        std::vector<size_t> rs(rows_), cs;
        for (size_t i = 0; i < rows_; ++i) rs[i] = i;
        for (size_t j = 0; j < cols_; ++j)
            if (j != col) cs.push_back(j);
        return submatrix(rs, cs);
    }

    /// Exact determinant via cofactor expansion with sub-minors memoized per
    /// column subset. Scope keeps minors small (<= ~6), where this beats
    /// fraction-free polynomial elimination.
    MPoly det() const {
        if (rows_ != cols_) throw DimensionMismatch("MatPoly::det: non-square");
        std::map<uint64_t, MPoly> memo;
        return det_rec(full_mask(cols_), rows_, memo);
    }

    /// All k-minors as (row_set, col_set, value), index sets lexicographic.
    struct Minor {
        std::vector<size_t> row_set;
        std::vector<size_t> col_set;
        MPoly value;
    };

    std::vector<Minor> minors(size_t k) const {
        if (k < 1 || k > rows_ || k > cols_)
            throw InputError("MatPoly::minors: k out of range");
        std::vector<Minor> out;
        for (const auto& rs : k_subsets(rows_, k))
            for (const auto& cs : k_subsets(cols_, k))
                out.push_back({rs, cs, submatrix(rs, cs).det()});
        return out;
    }

private:
    static uint64_t full_mask(size_t n) {
        return n >= 64 ? ~uint64_t{0} : ((uint64_t{1} << n) - 1);
    }

    /// Determinant of the submatrix on the first `nrows` rows and the column
    /// set `mask`, expanding along the last of those rows.
    MPoly det_rec(uint64_t mask, size_t nrows,
                  std::map<uint64_t, MPoly>& memo) const {
        if (nrows == 0) return MPoly::constant(nvars_, Rat(1));
        auto it = memo.find(mask);
        if (it != memo.end()) return it->second;
        MPoly acc(nvars_);
        size_t pos = 0;
        for (size_t c = 0; c < cols_; ++c) {
            if (!(mask & (uint64_t{1} << c))) continue;
            const MPoly& e = (*this)(nrows - 1, c);
            if (!e.is_zero()) {
                MPoly sub = det_rec(mask & ~(uint64_t{1} << c), nrows - 1, memo);
                MPoly term = e * sub;
                if (pos % 2 == (nrows - 1) % 2)
                    acc += term;
                else
                    acc -= term;
            }
            ++pos;
        }
        memo.emplace(mask, acc);
        return acc;
    }

    size_t rows_, cols_, nvars_;
    std::vector<MPoly> data_;
};

/// Determinant dispatch matching det() on MatQ: fraction-free elimination.
inline Rat det(const MatQ& m) { return m.det_bareiss(); }
inline MPoly det(const MatPoly& m) { return m.det(); }

}  // namespace arrcohom

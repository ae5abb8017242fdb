#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "sra/error.hpp"

namespace sra {

// Dense matrix over an exact field F (Rational or Cyclotomic).  Everything
// here is plain Gauss-Jordan in exact arithmetic; no floating point.
template <class F>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols, F fill = F{})
        : rows_(rows), cols_(cols), d_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n, F(0));
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = F(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    F& at(std::size_t i, std::size_t j) { return d_[i * cols_ + j]; }
    const F& at(std::size_t i, std::size_t j) const { return d_[i * cols_ + j]; }

    bool is_zero() const {
        const F zero(0);
        return std::all_of(d_.begin(), d_.end(), [&](const F& v) { return v == zero; });
    }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && d_ == o.d_;
    }

    Matrix operator+(const Matrix& o) const {
        require_same_shape(o);
        Matrix r = *this;
        for (std::size_t i = 0; i < d_.size(); ++i) r.d_[i] += o.d_[i];
        return r;
    }

    Matrix operator-(const Matrix& o) const {
        require_same_shape(o);
        Matrix r = *this;
        for (std::size_t i = 0; i < d_.size(); ++i) r.d_[i] -= o.d_[i];
        return r;
    }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw errors::dimension_mismatch("matrix product shape mismatch");
        const F zero(0);
        Matrix r(rows_, o.cols_, zero);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const F& a = at(i, k);
                if (a == zero) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) {
                    const F& b = o.at(k, j);
                    if (b == zero) continue;
                    r.at(i, j) += a * b;
                }
            }
        return r;
    }

    Matrix scaled(const F& s) const {
        Matrix r = *this;
        for (F& v : r.d_) v *= s;
        return r;
    }

    Matrix transposed() const {
        Matrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    F trace() const {
        F t(0);
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += at(i, i);
        return t;
    }

private:
    std::size_t rows_, cols_;
    std::vector<F> d_;

    void require_same_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw errors::dimension_mismatch("matrix shape mismatch");
    }
};

// In-place reduced row echelon form; returns the pivot columns in order.
template <class F>
std::vector<std::size_t> rref(Matrix<F>& m) {
    const F zero(0);
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t sel = row;
        while (sel < m.rows() && m.at(sel, col) == zero) ++sel;
        if (sel == m.rows()) continue;
        if (sel != row)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(sel, j), m.at(row, j));
        F inv = F(1) / m.at(row, col);
        for (std::size_t j = col; j < m.cols(); ++j) m.at(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m.at(i, col) == zero) continue;
            F f = m.at(i, col);
            for (std::size_t j = col; j < m.cols(); ++j) m.at(i, j) -= f * m.at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <class F>
std::size_t rank(Matrix<F> m) {
    return rref(m).size();
}

// Basis of the right kernel {x : m x = 0}.
template <class F>
std::vector<std::vector<F>> kernel_basis(Matrix<F> m) {
    const F zero(0);
    std::vector<std::size_t> pivots = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    std::vector<std::vector<F>> basis;
    for (std::size_t fc = 0; fc < m.cols(); ++fc) {
        if (is_pivot[fc]) continue;
        std::vector<F> v(m.cols(), zero);
        v[fc] = F(1);
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m.at(r, fc);
        basis.push_back(std::move(v));
    }
    return basis;
}

// Canonical form of the row space: RREF with zero rows dropped.  Two row sets
// span the same space iff these agree entrywise.
template <class F>
Matrix<F> row_space_canonical(const std::vector<std::vector<F>>& rows, std::size_t cols) {
    Matrix<F> m(rows.size(), cols, F(0));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw errors::dimension_mismatch("row length mismatch");
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
    }
    std::vector<std::size_t> pivots = rref(m);
    Matrix<F> out(pivots.size(), cols, F(0));
    for (std::size_t i = 0; i < pivots.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) out.at(i, j) = m.at(i, j);
    return out;
}

// Sparse homogeneous linear system with incremental reduced-echelon basis.
// Pivot preference is the smallest column index, so ordering matrix unknowns
// before parameters eliminates the matrix block first.
template <class F>
class LinearSystem {
public:
    using SparseRow = std::vector<std::pair<std::size_t, F>>;  // sorted by column

    explicit LinearSystem(std::size_t num_cols) : cols_(num_cols) {}

    std::size_t cols() const { return cols_; }
    std::size_t rank() const { return basis_.size(); }

    void add_row(SparseRow row) {
        normalize_sorted(row);
        reduce_forward(row);
        if (row.empty()) return;
        F inv = F(1) / row.front().second;
        for (auto& [c, v] : row) v *= inv;
        std::size_t lead = row.front().first;
        // back-substitute the new row into existing basis rows
        for (auto& [l, r] : basis_) {
            auto it = std::lower_bound(r.begin(), r.end(), lead,
                                       [](const auto& p, std::size_t c) { return p.first < c; });
            if (it != r.end() && it->first == lead) {
                F f = it->second;
                axpy(r, row, -f);
            }
        }
        basis_.emplace(lead, std::move(row));
    }

    void add_dense_row(const std::vector<F>& row) {
        const F zero(0);
        SparseRow s;
        for (std::size_t c = 0; c < row.size(); ++c)
            if (!(row[c] == zero)) s.emplace_back(c, row[c]);
        add_row(std::move(s));
    }

    // Rows of the echelon basis whose support lies entirely in [from, cols).
    std::vector<std::vector<F>> rows_supported_from(std::size_t from) const {
        std::vector<std::vector<F>> out;
        for (const auto& [lead, r] : basis_) {
            if (lead < from) continue;
            std::vector<F> dense(cols_ - from, F(0));
            for (const auto& [c, v] : r) dense[c - from] = v;
            out.push_back(std::move(dense));
        }
        return out;
    }

    std::size_t pivots_before(std::size_t col) const {
        std::size_t n = 0;
        for (const auto& [lead, r] : basis_)
            if (lead < col) ++n;
        return n;
    }

    // Kernel basis of the accumulated system, one vector per free column.
    std::vector<std::vector<F>> kernel() const {
        std::vector<std::vector<F>> out;
        const F zero(0);
        for (std::size_t fc = 0; fc < cols_; ++fc) {
            if (basis_.count(fc)) continue;
            std::vector<F> v(cols_, zero);
            v[fc] = F(1);
            for (const auto& [lead, r] : basis_) {
                for (const auto& [c, val] : r)
                    if (c == fc) v[lead] = -val;
            }
            out.push_back(std::move(v));
        }
        return out;
    }

    // Particular solution with the given values on columns [from, cols) and
    // all free columns in [0, from) set to zero.  Returns nullopt when the
    // fixed tail violates a constraint row supported on the tail.
    std::optional<std::vector<F>> particular_solution(std::size_t from,
                                                      const std::vector<F>& tail) const {
        const F zero(0);
        std::vector<F> x(cols_, zero);
        for (std::size_t c = from; c < cols_; ++c) x[c] = tail[c - from];
        // process pivot rows from the right so dependencies are resolved
        for (auto it = basis_.rbegin(); it != basis_.rend(); ++it) {
            const auto& [lead, r] = *it;
            F acc(0);
            for (const auto& [c, v] : r)
                if (c != lead) acc += v * x[c];
            if (lead >= from) {
                // row is a constraint on the fixed tail
                if (!(x[lead] + acc == zero)) return std::nullopt;
            } else {
                x[lead] = -acc;
            }
        }
        return x;
    }

private:
    std::size_t cols_;
    std::map<std::size_t, SparseRow> basis_;  // lead column -> normalized row

    static void normalize_sorted(SparseRow& row) {
        std::sort(row.begin(), row.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        SparseRow out;
        const F zero(0);
        for (auto& [c, v] : row) {
            if (!out.empty() && out.back().first == c) out.back().second += v;
            else out.emplace_back(c, v);
            if (!out.empty() && out.back().second == zero) out.pop_back();
        }
        row = std::move(out);
    }

    // row -= (lead coeff) * basis row, repeatedly
    void reduce_forward(SparseRow& row) {
        while (!row.empty()) {
            auto it = basis_.find(row.front().first);
            if (it == basis_.end()) return;
            F f = row.front().second;
            axpy(row, it->second, -f);
        }
    }

    // a += s * b, keeping a sorted and zero-free
    static void axpy(SparseRow& a, const SparseRow& b, const F& s) {
        const F zero(0);
        SparseRow out;
        out.reserve(a.size() + b.size());
        std::size_t i = 0, j = 0;
        while (i < a.size() || j < b.size()) {
            if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
                out.push_back(a[i++]);
            } else if (i == a.size() || b[j].first < a[i].first) {
                F v = s * b[j].second;
                if (!(v == zero)) out.emplace_back(b[j].first, std::move(v));
                ++j;
            } else {
                F v = a[i].second + s * b[j].second;
                if (!(v == zero)) out.emplace_back(a[i].first, std::move(v));
                ++i, ++j;
            }
        }
        a = std::move(out);
    }
};

}  // namespace sra

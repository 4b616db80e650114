#pragma once

#include "ddcalc/ring.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace ddc {

/// Sorted (index, value) pairs with no stored zeros.
class SparseVector {
public:
    using Entry = std::pair<std::size_t, Integer>;

    SparseVector() = default;
    static SparseVector unit(std::size_t i, const Integer& value = 1);
    static SparseVector from_dense(const std::vector<Integer>& dense);

    const std::vector<Entry>& entries() const { return entries_; }
    std::size_t nnz() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    Integer at(std::size_t i) const;
    /// Overwrites entry i (erasing it when value is zero).
    void set(std::size_t i, const Integer& value);
    /// Appends; caller guarantees increasing indices and nonzero value.
    void push_back(std::size_t i, Integer value) { entries_.emplace_back(i, std::move(value)); }

    /// this += factor * other. With modulus 2 the result is reduced mod 2.
    void add_multiple(const SparseVector& other, const Integer& factor, unsigned long modulus = 0);
    /// this = a * this + b * other.
    void combine(const Integer& a, const SparseVector& other, const Integer& b);
    void scale(const Integer& factor);
    void reduce(unsigned long modulus);

    std::vector<Integer> to_dense(std::size_t size) const;
    Integer dot(const std::vector<Integer>& dense) const;

    bool operator==(const SparseVector& other) const { return entries_ == other.entries_; }

private:
    std::vector<Entry> entries_;
};

/// Row-major sparse integer matrix.
class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

    static SparseMatrix identity(std::size_t n);
    static SparseMatrix from_dense(const std::vector<std::vector<Integer>>& dense, std::size_t cols);
    /// Columns given as sparse vectors of length `rows`.
    static SparseMatrix from_columns(const std::vector<SparseVector>& columns, std::size_t rows);

    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }
    std::size_t nnz() const;

    const SparseVector& row(std::size_t r) const { return rows_[r]; }
    SparseVector& row(std::size_t r) { return rows_[r]; }
    void set_row(std::size_t r, SparseVector v) { rows_[r] = std::move(v); }
    void append_row(SparseVector v) { rows_.push_back(std::move(v)); }
    void set_cols(std::size_t cols) { cols_ = cols; }

    Integer at(std::size_t r, std::size_t c) const { return rows_[r].at(c); }
    void set(std::size_t r, std::size_t c, const Integer& v) { rows_[r].set(c, v); }

    SparseMatrix transpose() const;
    SparseMatrix operator*(const SparseMatrix& rhs) const;
    std::vector<Integer> apply(const std::vector<Integer>& x) const;
    /// Column c as a sparse vector (linear in the row count).
    SparseVector column(std::size_t c) const;
    /// Rows selected in the given order.
    SparseMatrix select_rows(const std::vector<std::size_t>& which) const;
    SparseMatrix select_columns(const std::vector<std::size_t>& which) const;

    std::vector<std::vector<Integer>> to_dense() const;
    bool is_zero() const;
    void reduce(unsigned long modulus);

    bool operator==(const SparseMatrix& other) const
    {
        return cols_ == other.cols_ && rows_ == other.rows_;
    }

private:
    std::size_t cols_ = 0;
    std::vector<SparseVector> rows_;
};

/// Reduces x into [0, m) for m > 0; returns x unchanged for m == 0.
Integer reduce_mod(const Integer& x, const Integer& m);

}  // namespace ddc

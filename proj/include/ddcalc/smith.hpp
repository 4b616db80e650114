#pragma once

#include "ddcalc/sparse.hpp"

#include <cstddef>
#include <vector>

namespace ddc {

struct Pivot {
    std::size_t row;
    std::size_t col;
    Integer value;  // positive; 1 for every pivot when working mod 2
};

enum TrackTransforms : unsigned {
    kTrackNone = 0,
    kTrackRows = 1,
    kTrackColumns = 2,
    kTrackBoth = 3,
};

/// Result of diagonalizing M by unimodular row and column operations, U * M * V = D,
/// without permuting rows or columns. Row `pivots[k].row` of D holds `pivots[k].value`
/// in column `pivots[k].col`; every other row and column of D is zero. Pivot values
/// form a divisibility chain in the order listed.
struct SmithReduction {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Pivot> pivots;
    std::vector<std::size_t> zero_rows;  // increasing
    std::vector<std::size_t> zero_cols;  // increasing

    // Filled according to the tracking flags.
    SparseMatrix u;          // rows x rows
    SparseMatrix u_inv_t;    // transpose of U^{-1}
    SparseMatrix v_t;        // transpose of V

    std::size_t rank() const { return pivots.size(); }
};

/// Sparse elimination over Z (modulus 0) or Z/2 (modulus 2). Unit pivots are preferred,
/// ties broken by Markowitz cost then by (row, col), so the output is deterministic.
SmithReduction smith_reduce(const SparseMatrix& m, unsigned long modulus = 0,
                            unsigned track = kTrackNone);

struct SmithForm {
    SparseMatrix u;
    SparseMatrix d;
    SparseMatrix v;
};

/// U * M * V = D with U, V unimodular and D diagonal (d1 | d2 | ..., nonnegative).
SmithForm smith_normal_form(const SparseMatrix& m);

/// Determinant of a small dense square matrix by fraction-free elimination.
Integer determinant(const SparseMatrix& m);

}  // namespace ddc

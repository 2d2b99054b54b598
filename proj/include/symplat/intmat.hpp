#pragma once

#include <cstddef>
#include <vector>

#include "symplat/numeric.hpp"

namespace symplat {

// A lattice element: coordinates in the fixed basis (e1, f1, ..., eg, fg).
using Vec = std::vector<Int>;

// Dense integer matrix, row-major.  Exact arithmetic only.
class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static Mat identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool operator==(const Mat& o) const = default;

    void swap_rows(std::size_t i, std::size_t j);
    void swap_cols(std::size_t i, std::size_t j);
    // row i += c * row j, and the column analogue.
    void add_row(std::size_t i, std::size_t j, const Int& c);
    void add_col(std::size_t i, std::size_t j, const Int& c);
    void negate_row(std::size_t i);
    void negate_col(std::size_t i);

    Vec col(std::size_t j) const;
    void set_col(std::size_t j, const Vec& v);

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Int> a_;
};

Mat mul(const Mat& a, const Mat& b);
Vec mul(const Mat& a, const Vec& v);
Mat transpose(const Mat& a);
bool is_zero(const Vec& v);

// Exact determinant by fraction-free (Bareiss) elimination.
Int det(const Mat& a);

// Basis of the full integer kernel {x : A x = 0}, via unimodular column
// reduction.  The returned vectors generate the kernel as a lattice (the
// kernel of an integer matrix is saturated, so no content can be missed).
std::vector<Vec> kernel_basis(const Mat& a);

// Matrix whose columns are the given vectors (all of equal length).
Mat from_cols(const std::vector<Vec>& cols);

}  // namespace symplat

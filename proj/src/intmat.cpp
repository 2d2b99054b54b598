#include "symplat/intmat.hpp"

#include <algorithm>

#include "symplat/error.hpp"

namespace symplat {

Mat Mat::identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

void Mat::swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < cols_; ++k) std::swap((*this)(i, k), (*this)(j, k));
}

void Mat::swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < rows_; ++k) std::swap((*this)(k, i), (*this)(k, j));
}

void Mat::add_row(std::size_t i, std::size_t j, const Int& c) {
    for (std::size_t k = 0; k < cols_; ++k) (*this)(i, k) += c * (*this)(j, k);
}

void Mat::add_col(std::size_t i, std::size_t j, const Int& c) {
    for (std::size_t k = 0; k < rows_; ++k) (*this)(k, i) += c * (*this)(k, j);
}

void Mat::negate_row(std::size_t i) {
    for (std::size_t k = 0; k < cols_; ++k) (*this)(i, k) = -(*this)(i, k);
}

void Mat::negate_col(std::size_t i) {
    for (std::size_t k = 0; k < rows_; ++k) (*this)(k, i) = -(*this)(k, i);
}

Vec Mat::col(std::size_t j) const {
    Vec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

void Mat::set_col(std::size_t j, const Vec& v) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

Mat mul(const Mat& a, const Mat& b) {
    if (a.cols() != b.rows()) throw VerifyError("matrix product dimension mismatch");
    Mat c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Int& aik = a(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

Vec mul(const Mat& a, const Vec& v) {
    if (a.cols() != v.size()) throw VerifyError("matrix-vector dimension mismatch");
    Vec r(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r[i] += a(i, j) * v[j];
    return r;
}

Mat transpose(const Mat& a) {
    Mat t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

bool is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

Int det(const Mat& a) {
    if (a.rows() != a.cols()) throw VerifyError("det of non-square matrix");
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    Mat w = a;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (w(k, k) == 0) {
            std::size_t piv = k + 1;
            while (piv < n && w(piv, k) == 0) ++piv;
            if (piv == n) return 0;
            w.swap_rows(k, piv);
            sign = -sign;
        }
        // Bareiss step: entries stay integral, divisions are exact.
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                w(i, j) = exact_div(w(i, j) * w(k, k) - w(i, k) * w(k, j), prev);
        prev = w(k, k);
    }
    return sign > 0 ? w(n - 1, n - 1) : Int(-w(n - 1, n - 1));
}

std::vector<Vec> kernel_basis(const Mat& a) {
    const std::size_t m = a.rows(), n = a.cols();
    Mat w = a;
    Mat u = Mat::identity(n);
    std::size_t lead = 0;  // next pivot column
    for (std::size_t r = 0; r < m && lead < n; ++r) {
        // Sweep gcd column operations until row r has at most one nonzero
        // entry among columns >= lead.
        for (;;) {
            std::size_t j0 = n;
            for (std::size_t j = lead; j < n; ++j)
                if (w(r, j) != 0) {
                    j0 = j;
                    break;
                }
            if (j0 == n) break;  // row clear, no pivot in this row
            std::size_t j1 = n;
            for (std::size_t j = j0 + 1; j < n; ++j)
                if (w(r, j) != 0) {
                    j1 = j;
                    break;
                }
            if (j1 == n) {
                // single nonzero left: make it the pivot for column `lead`
                w.swap_cols(lead, j0);
                u.swap_cols(lead, j0);
                ++lead;
                break;
            }
            // Unimodular 2-column transform sending (a, b) -> (g, 0).
            Int x, y;
            const Int g = ext_gcd(w(r, j0), w(r, j1), x, y);
            const Int p = exact_div(w(r, j0), g), q = exact_div(w(r, j1), g);
            for (Mat* t : {&w, &u}) {
                for (std::size_t i = 0; i < t->rows(); ++i) {
                    Int c0 = (*t)(i, j0), c1 = (*t)(i, j1);
                    (*t)(i, j0) = x * c0 + y * c1;
                    (*t)(i, j1) = p * c1 - q * c0;
                }
            }
        }
    }
    std::vector<Vec> ker;
    for (std::size_t j = lead; j < n; ++j) ker.push_back(u.col(j));
    return ker;
}

Mat from_cols(const std::vector<Vec>& cols) {
    if (cols.empty()) return Mat(0, 0);
    Mat m(cols[0].size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != m.rows()) throw VerifyError("from_cols: ragged columns");
        m.set_col(j, cols[j]);
    }
    return m;
}

}  // namespace symplat

#include "mpair/matrix.hpp"

#include <optional>
#include <stdexcept>

namespace mpair {

Matrix::Matrix(Field f, std::size_t rows, std::size_t cols)
    : f_(f), rows_(rows), cols_(cols), e_(rows * cols, Coefficient::zero(f)) {}

Matrix Matrix::identity(Field f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, Coefficient::one(f));
    return m;
}

const Coefficient& Matrix::at(std::size_t row, std::size_t col) const {
    return e_[col * rows_ + row];
}

void Matrix::set(std::size_t row, std::size_t col, Coefficient v) {
    if (row >= rows_ || col >= cols_) throw std::out_of_range("matrix index out of range");
    if (!(v.field() == f_)) throw std::logic_error("matrix entry field mismatch");
    e_[col * rows_ + row] = std::move(v);
}

Matrix Matrix::mul(const Matrix& o) const {
    if (cols_ != o.rows_ || !(f_ == o.f_)) throw std::logic_error("matrix product shape/field mismatch");
    Matrix r(f_, rows_, o.cols_);
    for (std::size_t c = 0; c < o.cols_; ++c) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const Coefficient& okc = o.at(k, c);
            if (okc.is_zero()) continue;
            for (std::size_t j = 0; j < rows_; ++j) {
                const Coefficient& a = at(j, k);
                if (a.is_zero()) continue;
                r.set(j, c, r.at(j, c) + a * okc);
            }
        }
    }
    return r;
}

Matrix Matrix::inverse() const {
    if (rows_ != cols_) throw std::logic_error("inverse of a non-square matrix");
    const std::size_t n = rows_;
    Matrix a(*this), inv = identity(f_, n);
    for (std::size_t col = 0; col < n; ++col) {
        std::optional<std::size_t> pivot;
        for (std::size_t r = col; r < n; ++r)
            if (!a.at(r, col).is_zero()) { pivot = r; break; }
        if (!pivot) throw std::domain_error("matrix is singular");
        if (*pivot != col) {
            for (std::size_t c = 0; c < n; ++c) {
                auto t = a.at(col, c); a.set(col, c, a.at(*pivot, c)); a.set(*pivot, c, t);
                auto u = inv.at(col, c); inv.set(col, c, inv.at(*pivot, c)); inv.set(*pivot, c, u);
            }
        }
        const Coefficient scale = a.at(col, col).inverse();
        for (std::size_t c = 0; c < n; ++c) {
            if (!a.at(col, c).is_zero()) a.set(col, c, a.at(col, c) * scale);
            if (!inv.at(col, c).is_zero()) inv.set(col, c, inv.at(col, c) * scale);
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const Coefficient factor = a.at(r, col);
            if (factor.is_zero()) continue;
            for (std::size_t c = 0; c < n; ++c) {
                if (!a.at(col, c).is_zero()) a.set(r, c, a.at(r, c) - factor * a.at(col, c));
                if (!inv.at(col, c).is_zero()) inv.set(r, c, inv.at(r, c) - factor * inv.at(col, c));
            }
        }
    }
    return inv;
}

bool Matrix::is_zero() const {
    for (const auto& c : e_)
        if (!c.is_zero()) return false;
    return true;
}

bool Matrix::operator==(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || !(f_ == o.f_)) return false;
    for (std::size_t i = 0; i < e_.size(); ++i)
        if (!(e_[i] == o.e_[i])) return false;
    return true;
}

namespace {

// Row echelon in place; returns pivot column per used row.
std::vector<std::size_t> echelonize(Matrix& a) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        std::optional<std::size_t> pivot;
        for (std::size_t r = row; r < a.rows(); ++r)
            if (!a.at(r, col).is_zero()) { pivot = r; break; }
        if (!pivot) continue;
        if (*pivot != row)
            for (std::size_t c = 0; c < a.cols(); ++c) {
                auto t = a.at(row, c); a.set(row, c, a.at(*pivot, c)); a.set(*pivot, c, t);
            }
        const Coefficient scale = a.at(row, col).inverse();
        for (std::size_t c = col; c < a.cols(); ++c)
            if (!a.at(row, c).is_zero()) a.set(row, c, a.at(row, c) * scale);
        for (std::size_t r = 0; r < a.rows(); ++r) {
            if (r == row) continue;
            const Coefficient factor = a.at(r, col);
            if (factor.is_zero()) continue;
            for (std::size_t c = col; c < a.cols(); ++c)
                if (!a.at(row, c).is_zero()) a.set(r, c, a.at(r, c) - factor * a.at(row, c));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

} // namespace

std::size_t rank(const Matrix& m) {
    Matrix a(m);
    return echelonize(a).size();
}

std::vector<std::vector<Coefficient>> kernel_basis(const Matrix& m) {
    Matrix a(m);
    const auto pivots = echelonize(a);
    const Field f = m.field();
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;

    std::vector<std::vector<Coefficient>> basis;
    for (std::size_t free_col = 0; free_col < m.cols(); ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<Coefficient> v(m.cols(), Coefficient::zero(f));
        v[free_col] = Coefficient::one(f);
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -a.at(r, free_col);
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace mpair

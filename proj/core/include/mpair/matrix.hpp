#pragma once

#include <cstddef>
#include <vector>

#include "mpair/field.hpp"

namespace mpair {

// Dense column-major matrix over a fixed field. All arithmetic is exact.
class Matrix {
public:
    Matrix(Field f, std::size_t rows, std::size_t cols);  // zero-filled
    static Matrix identity(Field f, std::size_t n);

    Field field() const { return f_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    const Coefficient& at(std::size_t row, std::size_t col) const;
    void set(std::size_t row, std::size_t col, Coefficient v);

    Matrix mul(const Matrix& o) const;
    Matrix inverse() const;  // throws std::domain_error if singular
    bool is_zero() const;

    bool operator==(const Matrix& o) const;
    bool operator!=(const Matrix& o) const { return !(*this == o); }

private:
    Field f_;
    std::size_t rows_, cols_;
    std::vector<Coefficient> e_;
};

std::size_t rank(const Matrix& m);

// Basis of the null space {v : m v = 0}; each vector has m.cols() entries.
std::vector<std::vector<Coefficient>> kernel_basis(const Matrix& m);

} // namespace mpair

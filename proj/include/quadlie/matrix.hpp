#pragma once

#include "quadlie/rational.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace quadlie {

/// Dense row-major rational matrix. As a linear map, column j is the image
/// of the j-th basis vector.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

    static Matrix identity(std::size_t n);
    static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols);
    static Matrix from_columns(const std::vector<Vector>& cols, std::size_t rows);
    static Matrix diagonal(const Vector& d);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Vector row(std::size_t r) const;
    Vector column(std::size_t c) const;
    void set_column(std::size_t c, const Vector& v);

    Matrix transpose() const;
    bool is_zero() const;
    bool is_symmetric() const;
    bool is_antisymmetric() const;

    /// Rows [r0, r0+nr) x columns [c0, c0+nc).
    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(const Rational& s, const Matrix& m);
Vector operator*(const Matrix& m, const Vector& v);

/// a*b - b*a
Matrix commutator(const Matrix& a, const Matrix& b);

/// Block-diagonal sum.
Matrix direct_sum(const Matrix& a, const Matrix& b);

std::string format_matrix(const Matrix& m);

}  // namespace quadlie

#pragma once

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <vector>

#include "cellsheaf/scalar.hpp"

namespace cellsheaf {

using Vector = std::vector<Scalar>;

/// Dense row-major matrix over a Field.
///
/// 0 x n and n x 0 shapes are legal; they are the maps into and out of the
/// zero space.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, Field field = Field::rationals());

    static Matrix identity(std::size_t n, Field field = Field::rationals());
    static Matrix from_rows(std::initializer_list<std::initializer_list<Scalar>> rows,
                            Field field = Field::rationals());
    /// Every row must have `cols` entries.
    static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols, Field field);
    static Matrix column(const Vector& v, Field field);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    const Field& field() const noexcept { return field_; }

    const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    /// Stores `value` converted into this matrix's field.
    void set(std::size_t i, std::size_t j, const Scalar& value);

    Vector row(std::size_t i) const;
    Vector col(std::size_t j) const;
    Vector apply(const Vector& v) const;

    Matrix transpose() const;
    Matrix block(std::size_t row0, std::size_t col0, std::size_t nrows, std::size_t ncols) const;
    bool is_zero() const;
    bool is_square() const noexcept { return rows_ == cols_; }

    Matrix& operator+=(const Matrix& rhs);
    Matrix& operator-=(const Matrix& rhs);
    Matrix& operator*=(const Scalar& factor);

    friend Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
    friend Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }
    friend Matrix operator*(Matrix lhs, const Scalar& rhs) { return lhs *= rhs; }
    friend Matrix operator*(const Scalar& lhs, Matrix rhs) { return rhs *= lhs; }
    friend Matrix operator*(const Matrix& lhs, const Matrix& rhs);
    friend Matrix operator-(const Matrix& m) { return m * Scalar(-1); }

    friend bool operator==(const Matrix& lhs, const Matrix& rhs);

    /// "[[1, 2], [3/4, 0]]"; a matrix with zero rows prints as "[]".
    std::string to_string() const;

private:
    friend class EchelonWorkspace;

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    Field field_;
    std::vector<Scalar> data_;
};

std::ostream& operator<<(std::ostream& os, const Matrix& m);

std::string to_string(const Vector& v);

} // namespace cellsheaf

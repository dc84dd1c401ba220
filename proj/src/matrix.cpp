#include "cellsheaf/matrix.hpp"

#include <ostream>

#include "cellsheaf/error.hpp"

namespace cellsheaf {

namespace {

std::string shape(const Matrix& m) {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void require_same_field(const Matrix& a, const Matrix& b) {
    if (!(a.field() == b.field())) {
        throw InvalidArgument("matrices over different fields (" + a.field().to_string() + ", " +
                              b.field().to_string() + ")");
    }
}

} // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, Field field)
    : rows_(rows), cols_(cols), field_(field), data_(rows * cols, Scalar(0).in(field)) {}

Matrix Matrix::identity(std::size_t n, Field field) {
    Matrix m(n, n, field);
    const Scalar one = Scalar(1).in(field);
    for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = one;
    return m;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<Scalar>> rows, Field field) {
    std::vector<Vector> v;
    v.reserve(rows.size());
    for (const auto& r : rows) v.emplace_back(r);
    const std::size_t cols = v.empty() ? 0 : v.front().size();
    return from_rows(v, cols, field);
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows, std::size_t cols, Field field) {
    Matrix m(rows.size(), cols, field);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) {
            throw InvalidArgument("row " + std::to_string(i) + " has " +
                                  std::to_string(rows[i].size()) + " entries, expected " +
                                  std::to_string(cols));
        }
        for (std::size_t j = 0; j < cols; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
}

Matrix Matrix::column(const Vector& v, Field field) {
    Matrix m(v.size(), 1, field);
    for (std::size_t i = 0; i < v.size(); ++i) m.set(i, 0, v[i]);
    return m;
}

void Matrix::set(std::size_t i, std::size_t j, const Scalar& value) {
    data_[i * cols_ + j] = value.in(field_);
}

Vector Matrix::row(std::size_t i) const {
    return Vector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

Vector Matrix::col(std::size_t j) const {
    Vector v;
    v.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
    return v;
}

Vector Matrix::apply(const Vector& v) const {
    if (v.size() != cols_) {
        throw InvalidArgument("cannot apply a " + shape(*this) + " matrix to a vector of length " +
                              std::to_string(v.size()));
    }
    Vector out(rows_, Scalar(0).in(field_));
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            const Scalar& a = (*this)(i, j);
            if (a.is_zero() || v[j].is_zero()) continue;
            out[i] += a * v[j];
        }
    }
    return out;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_, field_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) t.data_[j * rows_ + i] = (*this)(i, j);
    }
    return t;
}

Matrix Matrix::block(std::size_t row0, std::size_t col0, std::size_t nrows,
                     std::size_t ncols) const {
    if (row0 + nrows > rows_ || col0 + ncols > cols_) {
        throw InvalidArgument("block out of range of a " + shape(*this) + " matrix");
    }
    Matrix b(nrows, ncols, field_);
    for (std::size_t i = 0; i < nrows; ++i) {
        for (std::size_t j = 0; j < ncols; ++j) b.data_[i * ncols + j] = (*this)(row0 + i, col0 + j);
    }
    return b;
}

bool Matrix::is_zero() const {
    for (const auto& x : data_) {
        if (!x.is_zero()) return false;
    }
    return true;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
    require_same_field(*this, rhs);
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
        throw InvalidArgument("cannot add " + shape(*this) + " and " + shape(rhs));
    }
    for (std::size_t k = 0; k < data_.size(); ++k) {
        if (!rhs.data_[k].is_zero()) data_[k] += rhs.data_[k];
    }
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) { return *this += -rhs; }

Matrix& Matrix::operator*=(const Scalar& factor) {
    const Scalar f = factor.in(field_);
    for (auto& x : data_) {
        if (!x.is_zero()) x *= f;
    }
    return *this;
}

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
    require_same_field(lhs, rhs);
    if (lhs.cols_ != rhs.rows_) {
        throw InvalidArgument("cannot compose " + shape(lhs) + " after " + shape(rhs));
    }
    Matrix out(lhs.rows_, rhs.cols_, lhs.field_);
    for (std::size_t i = 0; i < lhs.rows_; ++i) {
        for (std::size_t k = 0; k < lhs.cols_; ++k) {
            const Scalar& a = lhs(i, k);
            if (a.is_zero()) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) {
                const Scalar& b = rhs(k, j);
                if (b.is_zero()) continue;
                out.data_[i * out.cols_ + j] += a * b;
            }
        }
    }
    return out;
}

bool operator==(const Matrix& lhs, const Matrix& rhs) {
    return lhs.rows_ == rhs.rows_ && lhs.cols_ == rhs.cols_ && lhs.field_ == rhs.field_ &&
           lhs.data_ == rhs.data_;
}

std::string Matrix::to_string() const {
    std::string out = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        if (i > 0) out += ", ";
        out += cellsheaf::to_string(row(i));
    }
    return out + "]";
}

std::ostream& operator<<(std::ostream& os, const Matrix& m) { return os << m.to_string(); }

std::string to_string(const Vector& v) {
    std::string out = "[";
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (j > 0) out += ", ";
        out += v[j].to_string();
    }
    return out + "]";
}

} // namespace cellsheaf

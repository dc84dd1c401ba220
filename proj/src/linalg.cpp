#include "cellsheaf/linalg.hpp"

#include <stdexcept>
#include <utility>

#include "cellsheaf/error.hpp"

namespace cellsheaf {

/// Row-wise elimination state. Lives here so it can read Matrix storage directly.
class EchelonWorkspace {
public:
    explicit EchelonWorkspace(const Matrix& m)
        : rows_(m.rows()), cols_(m.cols()), field_(m.field()), data_(m.data_) {}

    EchelonForm run() {
        if (field_.is_rational()) {
            clear_denominators();
            fraction_free_reduce();
        } else {
            gauss_jordan_reduce();
        }
        EchelonForm out;
        out.pivots = pivots_;
        out.reduced = Matrix(rows_, cols_, field_);
        out.reduced.data_ = std::move(data_);
        return out;
    }

private:
    Scalar& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap(at(a, j), at(b, j));
    }

    bool row_is_zero(std::size_t i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            if (!at(i, j).is_zero()) return false;
        }
        return true;
    }

    void clear_denominators() {
        for (std::size_t i = 0; i < rows_; ++i) {
            Scalar lcm(1);
            for (std::size_t j = 0; j < cols_; ++j) {
                const Scalar& x = at(i, j);
                if (x.is_zero() || x.is_integer()) continue;
                const Scalar d = x.denominator();
                lcm = lcm * d / gcd_integers(lcm, d);
            }
            if (lcm.is_one()) continue;
            for (std::size_t j = 0; j < cols_; ++j) {
                if (!at(i, j).is_zero()) at(i, j) *= lcm;
            }
        }
    }

    // Fraction-free Gauss-Jordan: every division below is exact, and all
    // entries stay integral until the final normalization.
    void fraction_free_reduce() {
        Scalar previous(1);
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
            std::size_t p = r;
            while (p < rows_ && at(p, c).is_zero()) ++p;
            if (p == rows_) continue;
            swap_rows(r, p);
            const Scalar pivot = at(r, c);
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == r) continue;
                const Scalar factor = at(i, c);
                if (factor.is_zero() && row_is_zero(i)) continue;
                for (std::size_t j = 0; j < cols_; ++j) {
                    if (j == c) continue;
                    Scalar value = pivot * at(i, j);
                    if (!factor.is_zero() && !at(r, j).is_zero()) value -= factor * at(r, j);
                    if (!previous.is_one() && !value.is_zero()) {
                        value /= previous;
                        if (!value.is_integer()) {
                            throw std::logic_error("fraction-free elimination lost exactness");
                        }
                    }
                    at(i, j) = std::move(value);
                }
                at(i, c) = Scalar(0);
            }
            previous = pivot;
            pivots_.push_back(c);
            ++r;
        }
        for (std::size_t k = 0; k < pivots_.size(); ++k) {
            const Scalar inv = at(k, pivots_[k]).inverse();
            for (std::size_t j = 0; j < cols_; ++j) {
                if (!at(k, j).is_zero()) at(k, j) *= inv;
            }
        }
    }

    void gauss_jordan_reduce() {
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
            std::size_t p = r;
            while (p < rows_ && at(p, c).is_zero()) ++p;
            if (p == rows_) continue;
            swap_rows(r, p);
            const Scalar inv = at(r, c).inverse();
            for (std::size_t j = 0; j < cols_; ++j) {
                if (!at(r, j).is_zero()) at(r, j) *= inv;
            }
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == r) continue;
                const Scalar factor = at(i, c);
                if (factor.is_zero()) continue;
                for (std::size_t j = 0; j < cols_; ++j) {
                    if (!at(r, j).is_zero()) at(i, j) -= factor * at(r, j);
                }
            }
            pivots_.push_back(c);
            ++r;
        }
    }

    std::size_t rows_;
    std::size_t cols_;
    Field field_;
    std::vector<Scalar> data_;
    std::vector<std::size_t> pivots_;
};

EchelonForm echelon(const Matrix& m) { return EchelonWorkspace(m).run(); }

Matrix rref(const Matrix& m) { return echelon(m).reduced; }

std::size_t rank(const Matrix& m) { return echelon(m).rank(); }

SubspaceBasis::SubspaceBasis(std::size_t ambient_dim, Field field) : basis_(0, ambient_dim, field) {}

SubspaceBasis SubspaceBasis::full(std::size_t ambient_dim, Field field) {
    return row_space(Matrix::identity(ambient_dim, field));
}

SubspaceBasis SubspaceBasis::row_space(const Matrix& m) {
    EchelonForm e = echelon(m);
    SubspaceBasis s(m.cols(), m.field());
    s.basis_ = e.reduced.block(0, 0, e.rank(), m.cols());
    s.pivots_ = std::move(e.pivots);
    return s;
}

SubspaceBasis SubspaceBasis::column_space(const Matrix& m) { return row_space(m.transpose()); }

SubspaceBasis SubspaceBasis::span(const std::vector<Vector>& vectors, std::size_t ambient_dim,
                                  Field field) {
    return row_space(Matrix::from_rows(vectors, ambient_dim, field));
}

bool SubspaceBasis::contains(const Vector& v) const {
    if (v.size() != ambient_dim()) return false;
    Vector residual = v;
    for (std::size_t k = 0; k < pivots_.size(); ++k) {
        const Scalar coef = residual[pivots_[k]];
        if (coef.is_zero()) continue;
        for (std::size_t j = 0; j < residual.size(); ++j) {
            if (!basis_(k, j).is_zero()) residual[j] -= coef * basis_(k, j);
        }
    }
    for (const auto& x : residual) {
        if (!x.is_zero()) return false;
    }
    return true;
}

Vector SubspaceBasis::coordinates(const Vector& v) const {
    if (v.size() != ambient_dim()) {
        throw InvalidArgument("vector of length " + std::to_string(v.size()) +
                              " is not in an ambient space of dimension " +
                              std::to_string(ambient_dim()));
    }
    Vector coords;
    coords.reserve(dim());
    Vector rebuilt(ambient_dim(), Scalar(0).in(field()));
    for (std::size_t k = 0; k < pivots_.size(); ++k) {
        const Scalar coef = v[pivots_[k]].in(field());
        coords.push_back(coef);
        if (coef.is_zero()) continue;
        for (std::size_t j = 0; j < rebuilt.size(); ++j) {
            if (!basis_(k, j).is_zero()) rebuilt[j] += coef * basis_(k, j);
        }
    }
    if (rebuilt != v) throw InvalidArgument("vector " + to_string(v) + " is not in the subspace");
    return coords;
}

bool SubspaceBasis::is_subspace_of(const SubspaceBasis& other) const {
    if (ambient_dim() != other.ambient_dim()) return false;
    for (std::size_t k = 0; k < dim(); ++k) {
        if (!other.contains(vector(k))) return false;
    }
    return true;
}

SubspaceBasis SubspaceBasis::sum(const SubspaceBasis& other) const {
    if (ambient_dim() != other.ambient_dim()) {
        throw InvalidArgument("subspaces live in different ambient spaces");
    }
    std::vector<Vector> vs;
    for (std::size_t k = 0; k < dim(); ++k) vs.push_back(vector(k));
    for (std::size_t k = 0; k < other.dim(); ++k) vs.push_back(other.vector(k));
    return span(vs, ambient_dim(), field());
}

SubspaceBasis kernel_basis(const Matrix& m) {
    const EchelonForm e = echelon(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : e.pivots) is_pivot[c] = true;
    std::vector<Vector> vs;
    const Scalar zero = Scalar(0).in(m.field());
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        Vector v(m.cols(), zero);
        v[f] = Scalar(1).in(m.field());
        for (std::size_t k = 0; k < e.pivots.size(); ++k) v[e.pivots[k]] = -e.reduced(k, f);
        vs.push_back(std::move(v));
    }
    return SubspaceBasis::span(vs, m.cols(), m.field());
}

SubspaceBasis image_basis(const Matrix& m) { return SubspaceBasis::column_space(m); }

bool is_exact_at(const Matrix& f, const Matrix& g) {
    if (g.cols() != f.rows()) {
        throw InvalidArgument("sequence is not composable: f has " + std::to_string(f.rows()) +
                              " rows but g has " + std::to_string(g.cols()) + " columns");
    }
    return image_basis(f) == kernel_basis(g);
}

Matrix compose(const Matrix& g, const Matrix& f) { return g * f; }

bool is_injective(const Matrix& m) { return rank(m) == m.cols(); }

bool is_surjective(const Matrix& m) { return rank(m) == m.rows(); }

bool is_invertible(const Matrix& m) { return m.is_square() && rank(m) == m.rows(); }

std::optional<Matrix> inverse(const Matrix& m) {
    if (!m.is_square()) return std::nullopt;
    const std::size_t n = m.rows();
    BlockLayout layout({n}, {n, n}, m.field());
    layout.add(0, 0, m);
    layout.add(0, 1, Matrix::identity(n, m.field()));
    const EchelonForm e = echelon(layout.assemble());
    if (e.rank() < n || (n > 0 && e.pivots[n - 1] != n - 1)) return std::nullopt;
    return e.reduced.block(0, n, n, n);
}

BlockLayout::BlockLayout(std::vector<std::size_t> row_sizes, std::vector<std::size_t> col_sizes,
                         Field field)
    : row_sizes_(std::move(row_sizes)), col_sizes_(std::move(col_sizes)) {
    std::size_t total_rows = 0;
    for (auto s : row_sizes_) {
        row_offsets_.push_back(total_rows);
        total_rows += s;
    }
    std::size_t total_cols = 0;
    for (auto s : col_sizes_) {
        col_offsets_.push_back(total_cols);
        total_cols += s;
    }
    matrix_ = Matrix(total_rows, total_cols, field);
}

void BlockLayout::add(std::size_t row_block, std::size_t col_block, const Matrix& block) {
    if (row_block >= row_sizes_.size() || col_block >= col_sizes_.size()) {
        throw InvalidArgument("block index out of range");
    }
    if (block.rows() != row_sizes_[row_block] || block.cols() != col_sizes_[col_block]) {
        throw InvalidArgument("block (" + std::to_string(row_block) + ", " +
                              std::to_string(col_block) + ") must be " +
                              std::to_string(row_sizes_[row_block]) + "x" +
                              std::to_string(col_sizes_[col_block]) + ", got " +
                              std::to_string(block.rows()) + "x" + std::to_string(block.cols()));
    }
    const std::size_t r0 = row_offsets_[row_block];
    const std::size_t c0 = col_offsets_[col_block];
    for (std::size_t i = 0; i < block.rows(); ++i) {
        for (std::size_t j = 0; j < block.cols(); ++j) {
            if (block(i, j).is_zero()) continue;
            matrix_.set(r0 + i, c0 + j, matrix_(r0 + i, c0 + j) + block(i, j));
        }
    }
}

Matrix block_assemble(const std::vector<std::size_t>& row_sizes,
                      const std::vector<std::size_t>& col_sizes,
                      const std::vector<std::vector<std::optional<Matrix>>>& blocks, Field field) {
    BlockLayout layout(row_sizes, col_sizes, field);
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        for (std::size_t j = 0; j < blocks[i].size(); ++j) {
            if (blocks[i][j]) layout.add(i, j, *blocks[i][j]);
        }
    }
    return layout.assemble();
}

} // namespace cellsheaf

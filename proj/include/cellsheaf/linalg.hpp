#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cellsheaf/matrix.hpp"

namespace cellsheaf {

/// Reduced row echelon form together with its pivot columns.
struct EchelonForm {
    Matrix reduced;
    std::vector<std::size_t> pivots;

    std::size_t rank() const noexcept { return pivots.size(); }
};

/// Reduced row echelon form. Over the rationals the elimination runs
/// fraction-free on integer-scaled rows and normalizes at the end.
EchelonForm echelon(const Matrix& m);
Matrix rref(const Matrix& m);
std::size_t rank(const Matrix& m);

/// A subspace of F^n stored as its canonical RREF basis, so two bases are
/// equal exactly when the subspaces are.
class SubspaceBasis {
public:
    /// The zero subspace of F^n.
    explicit SubspaceBasis(std::size_t ambient_dim = 0, Field field = Field::rationals());

    static SubspaceBasis full(std::size_t ambient_dim, Field field = Field::rationals());
    static SubspaceBasis row_space(const Matrix& m);
    static SubspaceBasis column_space(const Matrix& m);
    static SubspaceBasis span(const std::vector<Vector>& vectors, std::size_t ambient_dim,
                              Field field);

    std::size_t ambient_dim() const noexcept { return basis_.cols(); }
    std::size_t dim() const noexcept { return basis_.rows(); }
    const Field& field() const noexcept { return basis_.field(); }

    /// dim x ambient_dim matrix whose rows are the basis vectors.
    const Matrix& basis() const noexcept { return basis_; }
    const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }
    Vector vector(std::size_t i) const { return basis_.row(i); }

    bool contains(const Vector& v) const;
    /// Coordinates of `v` in the basis; throws InvalidArgument if v is outside.
    Vector coordinates(const Vector& v) const;
    /// basis()^T: maps coordinates back into the ambient space.
    Matrix embedding() const { return basis_.transpose(); }

    bool is_subspace_of(const SubspaceBasis& other) const;
    SubspaceBasis sum(const SubspaceBasis& other) const;

    friend bool operator==(const SubspaceBasis& lhs, const SubspaceBasis& rhs) {
        return lhs.basis_ == rhs.basis_;
    }

private:
    Matrix basis_;
    std::vector<std::size_t> pivots_;
};

/// {v : m v = 0}.
SubspaceBasis kernel_basis(const Matrix& m);
/// Column space of m.
SubspaceBasis image_basis(const Matrix& m);

/// For A --f--> B --g--> C: whether image(f) = kernel(g).
/// Throws InvalidArgument unless g.cols() == f.rows().
bool is_exact_at(const Matrix& f, const Matrix& g);

/// g after f.
Matrix compose(const Matrix& g, const Matrix& f);
bool is_injective(const Matrix& m);
bool is_surjective(const Matrix& m);
bool is_invertible(const Matrix& m);
std::optional<Matrix> inverse(const Matrix& m);

/// Builds a matrix out of labeled blocks. Blocks added to the same slot
/// accumulate.
class BlockLayout {
public:
    BlockLayout(std::vector<std::size_t> row_sizes, std::vector<std::size_t> col_sizes,
                Field field = Field::rationals());

    void add(std::size_t row_block, std::size_t col_block, const Matrix& block);
    Matrix assemble() const { return matrix_; }

    std::size_t row_offset(std::size_t row_block) const { return row_offsets_.at(row_block); }
    std::size_t col_offset(std::size_t col_block) const { return col_offsets_.at(col_block); }

private:
    std::vector<std::size_t> row_sizes_;
    std::vector<std::size_t> col_sizes_;
    std::vector<std::size_t> row_offsets_;
    std::vector<std::size_t> col_offsets_;
    Matrix matrix_;
};

Matrix block_assemble(const std::vector<std::size_t>& row_sizes,
                      const std::vector<std::size_t>& col_sizes,
                      const std::vector<std::vector<std::optional<Matrix>>>& blocks,
                      Field field = Field::rationals());

} // namespace cellsheaf

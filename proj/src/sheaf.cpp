#include "cellsheaf/sheaf.hpp"

#include <optional>

#include "cellsheaf/error.hpp"

namespace cellsheaf {

namespace {

std::string shape(std::size_t rows, std::size_t cols) {
    return std::to_string(rows) + "x" + std::to_string(cols);
}

} // namespace

Matrix convert_matrix(const Matrix& m, const Field& field) {
    if (m.field() == field) return m;
    Matrix out(m.rows(), m.cols(), field);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) out.set(i, j, m(i, j));
    }
    return out;
}

CellularSheaf::CellularSheaf(Poset base, std::vector<std::size_t> dims, Field field)
    : base_(std::move(base)), space_(base_), field_(field), dims_(std::move(dims)) {}

CellularSheaf CellularSheaf::build(Poset base, std::vector<std::size_t> dims,
                                   const RestrictionMaps& maps, Field field) {
    if (dims.size() != base.size()) {
        throw InvalidArgument("expected " + std::to_string(base.size()) + " stalk dimensions, got " +
                              std::to_string(dims.size()));
    }
    CellularSheaf s(std::move(base), std::move(dims), field);
    const Poset& P = s.base_;
    const std::size_t n = P.size();
    s.covers_ = hasse_edges(P);

    std::vector<std::vector<bool>> is_cover(n, std::vector<bool>(n, false));
    for (const auto& [p, q] : s.covers_) is_cover[p][q] = true;

    std::map<RelationPair, Matrix> given;
    for (const auto& [key, m] : maps) {
        const auto [p, q] = key;
        if (p >= n || q >= n) throw InvalidArgument("restriction map on an unknown element");
        if (!P.less(p, q)) {
            throw InvalidArgument("restriction map given for '" + P.name(p) + "', '" + P.name(q) +
                                  "', which are not related by p < q");
        }
        if (m.rows() != s.dims_[q] || m.cols() != s.dims_[p]) {
            throw InvalidArgument("restriction map " + P.name(p) + " -> " + P.name(q) +
                                  " has shape " + shape(m.rows(), m.cols()) + ", expected " +
                                  shape(s.dims_[q], s.dims_[p]));
        }
        given.emplace(key, convert_matrix(m, field));
    }

    s.full_.assign(n * n, Matrix());
    for (ElementIndex p = 0; p < n; ++p) s.full_[p * n + p] = Matrix::identity(s.dims_[p], field);
    for (const auto& [p, q] : s.covers_) {
        const auto it = given.find({p, q});
        if (it != given.end()) {
            s.full_[p * n + q] = it->second;
        } else if (s.dims_[p] == 0 || s.dims_[q] == 0) {
            s.full_[p * n + q] = Matrix(s.dims_[q], s.dims_[p], field);
        } else {
            throw InvalidArgument("missing restriction map " + P.name(p) + " -> " + P.name(q));
        }
    }

    // Every path from p to q ends in a covering pair (c, q); the maps up to c
    // are already path-independent, so comparing the candidates over all
    // such c covers every pair of paths.
    for (ElementIndex q : linear_extension(P)) {
        for (ElementIndex p = 0; p < n; ++p) {
            if (!P.less(p, q) || is_cover[p][q]) continue;
            std::optional<Matrix> agreed;
            ElementIndex via = p;
            for (ElementIndex c = 0; c < n; ++c) {
                if (!is_cover[c][q] || !P.less(p, c)) continue;
                Matrix candidate = s.full_[c * n + q] * s.full_[p * n + c];
                if (!agreed) {
                    agreed = std::move(candidate);
                    via = c;
                } else if (!(candidate == *agreed)) {
                    throw FunctorialityError(P.name(p), P.name(q),
                                             "through '" + P.name(via) + "': " + agreed->to_string() +
                                                 ", through '" + P.name(c) +
                                                 "': " + candidate.to_string());
                }
            }
            s.full_[p * n + q] = std::move(*agreed);
        }
    }

    for (const auto& [key, m] : given) {
        const auto [p, q] = key;
        if (is_cover[p][q]) continue;
        if (!(m == s.full_[p * n + q])) {
            throw FunctorialityError(P.name(p), P.name(q),
                                     "given map " + m.to_string() + ", composite " +
                                         s.full_[p * n + q].to_string());
        }
    }
    return s;
}

const Matrix& CellularSheaf::full_map(ElementIndex p, ElementIndex q) const {
    if (p >= size() || q >= size() || !base_.leq(p, q)) {
        throw InvalidArgument("no restriction map: elements are not related by p <= q");
    }
    return full_[p * size() + q];
}

RestrictionMaps CellularSheaf::edge_maps() const {
    RestrictionMaps out;
    for (const auto& [p, q] : covers_) out.emplace(RelationPair{p, q}, full_map(p, q));
    return out;
}

} // namespace cellsheaf

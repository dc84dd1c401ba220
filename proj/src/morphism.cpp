#include "cellsheaf/morphism.hpp"

#include "cellsheaf/error.hpp"

namespace cellsheaf {

namespace {

void require_same_base(const CellularSheaf& source, const CellularSheaf& target) {
    if (!(source.base() == target.base())) {
        throw InvalidArgument("source and target sheaves live on different posets");
    }
    if (!(source.field() == target.field())) {
        throw InvalidArgument("source and target sheaves use different fields");
    }
}

std::vector<Matrix> checked_components(const CellularSheaf& source, const CellularSheaf& target,
                                       std::vector<Matrix> components) {
    require_same_base(source, target);
    const Poset& P = source.base();
    if (components.size() != P.size()) {
        throw InvalidArgument("expected " + std::to_string(P.size()) + " components, got " +
                              std::to_string(components.size()));
    }
    for (ElementIndex p = 0; p < P.size(); ++p) {
        const Matrix& c = components[p];
        if (c.rows() != target.stalk_dim(p) || c.cols() != source.stalk_dim(p)) {
            throw InvalidArgument("component at '" + P.name(p) + "' has shape " +
                                  std::to_string(c.rows()) + "x" + std::to_string(c.cols()) +
                                  ", expected " + std::to_string(target.stalk_dim(p)) + "x" +
                                  std::to_string(source.stalk_dim(p)));
        }
        components[p] = convert_matrix(c, source.field());
    }
    return components;
}

void check_natural(const CellularSheaf& source, const CellularSheaf& target,
                   const std::vector<Matrix>& components, ElementIndex p, ElementIndex q) {
    const Matrix lhs = target.full_map(p, q) * components[p];
    const Matrix rhs = components[q] * source.full_map(p, q);
    if (!(lhs == rhs)) {
        throw NaturalityError(source.base().name(p), source.base().name(q),
                              "target restriction after component gives " + lhs.to_string() +
                                  ", component after source restriction gives " + rhs.to_string());
    }
}

} // namespace

SheafMorphism SheafMorphism::build(CellularSheaf source, CellularSheaf target,
                                   std::vector<Matrix> components) {
    components = checked_components(source, target, std::move(components));
    // Composites of natural squares are natural, so covering pairs suffice.
    for (const auto& [p, q] : source.covering_pairs()) check_natural(source, target, components, p, q);
    return SheafMorphism(std::move(source), std::move(target), std::move(components));
}

SheafMorphism SheafMorphism::identity(const CellularSheaf& s) {
    std::vector<Matrix> components;
    for (ElementIndex p = 0; p < s.size(); ++p) components.push_back(Matrix::identity(s.stalk_dim(p), s.field()));
    return build(s, s, std::move(components));
}

SheafMorphism SheafMorphism::zero(const CellularSheaf& source, const CellularSheaf& target) {
    require_same_base(source, target);
    std::vector<Matrix> components;
    for (ElementIndex p = 0; p < source.size(); ++p) {
        components.emplace_back(target.stalk_dim(p), source.stalk_dim(p), source.field());
    }
    return build(source, target, std::move(components));
}

Matrix section_map(const SheafMorphism& m, const OpenSet& u) {
    SectionAtlas from(m.source());
    SectionAtlas to(m.target());
    return section_map(m, u, from, to);
}

Matrix section_map(const SheafMorphism& m, const OpenSet& u, SectionAtlas& source_atlas,
                   SectionAtlas& target_atlas) {
    const SectionSpace& from = source_atlas.over(u);
    const SectionSpace& to = target_atlas.over(u);
    std::vector<std::size_t> rows, cols;
    for (auto x : u.members()) {
        rows.push_back(m.target().stalk_dim(x));
        cols.push_back(m.source().stalk_dim(x));
    }
    BlockLayout pointwise(rows, cols, m.source().field());
    for (std::size_t i = 0; i < u.size(); ++i) pointwise.add(i, i, m.component(u.members()[i]));
    return coordinate_reader(to.basis()) * (pointwise.assemble() * from.basis().embedding());
}

StalkMapComparison compare_stalk_map(const SheafMorphism& m, ElementIndex p,
                                     const StalkOracleOptions& options) {
    SectionAtlas from(m.source());
    SectionAtlas to(m.target());
    const StalkOracle src = stalk_oracle(from, p, options);
    const StalkOracle tgt = stalk_oracle(to, p, options);

    // The morphism on the two direct sums, neighbourhood by neighbourhood.
    std::vector<std::size_t> rows, cols;
    for (std::size_t i = 0; i < src.neighbourhoods.size(); ++i) {
        rows.push_back(tgt.offsets[i + 1] - tgt.offsets[i]);
        cols.push_back(src.offsets[i + 1] - src.offsets[i]);
    }
    BlockLayout sum_map(rows, cols, m.source().field());
    for (std::size_t i = 0; i < src.neighbourhoods.size(); ++i) {
        sum_map.add(i, i, section_map(m, src.neighbourhoods[i], from, to));
    }
    const Matrix pushed = tgt.quotient_map * sum_map.assemble();

    StalkMapComparison out;
    out.oracle_map = pushed * src.lift;
    out.well_defined = pushed == out.oracle_map * src.quotient_map;
    out.agrees = out.oracle_map * src.germ_of_point == tgt.germ_of_point * m.component(p);
    return out;
}

MorphismClass classify(const SheafMorphism& m) {
    MorphismClass c{true, true, false};
    for (const auto& phi : m.components()) {
        c.injective = c.injective && is_injective(phi);
        c.surjective = c.surjective && is_surjective(phi);
    }
    c.isomorphism = c.injective && c.surjective;
    return c;
}

SectionLevelClass classify_by_sections(const SheafMorphism& m, std::size_t max_elements) {
    SectionAtlas from(m.source());
    SectionAtlas to(m.target());
    const AlexandrovSpace& X = m.source().space();
    SectionLevelClass c;
    for (const auto& u : X.enumerate_opens(max_elements)) {
        ++c.opens;
        const Matrix sm = section_map(m, u, from, to);
        const bool inj = is_injective(sm);
        const bool sur = is_surjective(sm);
        c.all_injective = c.all_injective && inj;
        c.all_surjective = c.all_surjective && sur;
        c.all_invertible = c.all_invertible && inj && sur;
        bool basic = false;
        for (auto x : u.members()) basic = basic || X.open_star(x) == u;
        if (basic) c.basic_surjective = c.basic_surjective && sur;
    }
    return c;
}

SheafMorphism extend_from_basis(const CellularSheaf& source, const CellularSheaf& target,
                                const std::vector<Matrix>& basis_components) {
    const auto components = checked_components(source, target, basis_components);
    const Poset& P = source.base();
    for (ElementIndex p = 0; p < P.size(); ++p) {
        for (ElementIndex q = 0; q < P.size(); ++q) {
            if (P.less(p, q)) check_natural(source, target, components, p, q);
        }
    }
    return SheafMorphism::build(source, target, components);
}

std::vector<Matrix> restrict_to_basis(const SheafMorphism& m) {
    SectionAtlas from(m.source());
    SectionAtlas to(m.target());
    std::vector<Matrix> out;
    for (ElementIndex p = 0; p < m.source().size(); ++p) {
        const Matrix sm = section_map(m, m.source().space().open_star(p), from, to);
        const auto back = inverse(extension_matrix(to, p));
        if (!back) throw Error("extension over an open star is not invertible");
        out.push_back(*back * sm * extension_matrix(from, p));
    }
    return out;
}

ExtensionReport check_unique_extension(const SheafMorphism& m, std::size_t max_elements) {
    SectionAtlas from(m.source());
    SectionAtlas to(m.target());
    const AlexandrovSpace& X = m.source().space();
    const Field& field = m.source().field();
    ExtensionReport report;
    for (const auto& u : X.enumerate_opens(max_elements)) {
        ++report.opens;
        const Matrix here = section_map(m, u, from, to);
        std::vector<std::size_t> rows;
        std::vector<OpenSet> stars;
        for (auto x : u.members()) {
            stars.push_back(X.open_star(x));
            rows.push_back(to.over(stars.back()).dim());
        }
        BlockLayout joint(rows, {to.over(u).dim()}, field);
        bool compatible = true;
        for (std::size_t i = 0; i < stars.size(); ++i) {
            const Matrix& r_target = to.restriction(u, stars[i]);
            joint.add(i, 0, r_target);
            const Matrix on_star = section_map(m, stars[i], from, to);
            compatible = compatible && r_target * here == on_star * from.restriction(u, stars[i]);
        }
        if (from.over(u).dim() > 0 && !is_injective(joint.assemble())) ++report.non_unique;
        if (!compatible) ++report.incompatible;
    }
    return report;
}

SubspaceBasis hom_space(const CellularSheaf& source, const CellularSheaf& target) {
    require_same_base(source, target);
    const std::size_t n = source.size();
    const Field& field = source.field();
    std::vector<std::size_t> offset(n + 1, 0);
    for (ElementIndex p = 0; p < n; ++p) offset[p + 1] = offset[p] + target.stalk_dim(p) * source.stalk_dim(p);
    const auto var = [&](ElementIndex p, std::size_t i, std::size_t j) {
        return offset[p] + i * source.stalk_dim(p) + j;
    };
    std::size_t equations = 0;
    for (const auto& [p, q] : source.covering_pairs()) equations += target.stalk_dim(q) * source.stalk_dim(p);
    Matrix system(equations, offset[n], field);
    std::size_t row = 0;
    for (const auto& [p, q] : source.covering_pairs()) {
        const Matrix& sigma = target.full_map(p, q);
        const Matrix& rho = source.full_map(p, q);
        // (sigma phi_p - phi_q rho)[i][j] = 0.
        for (std::size_t i = 0; i < target.stalk_dim(q); ++i) {
            for (std::size_t j = 0; j < source.stalk_dim(p); ++j, ++row) {
                for (std::size_t k = 0; k < target.stalk_dim(p); ++k) {
                    system.set(row, var(p, k, j), system(row, var(p, k, j)) + sigma(i, k));
                }
                for (std::size_t k = 0; k < source.stalk_dim(q); ++k) {
                    system.set(row, var(q, i, k), system(row, var(q, i, k)) - rho(k, j));
                }
            }
        }
    }
    return kernel_basis(system);
}

SheafMorphism morphism_from_vector(const CellularSheaf& source, const CellularSheaf& target,
                                   const Vector& v) {
    require_same_base(source, target);
    std::vector<Matrix> components;
    std::size_t at = 0;
    for (ElementIndex p = 0; p < source.size(); ++p) {
        Matrix c(target.stalk_dim(p), source.stalk_dim(p), source.field());
        for (std::size_t i = 0; i < c.rows(); ++i) {
            for (std::size_t j = 0; j < c.cols(); ++j) c.set(i, j, v.at(at++));
        }
        components.push_back(std::move(c));
    }
    if (at != v.size()) throw InvalidArgument("vector length does not match the component shapes");
    return SheafMorphism::build(source, target, std::move(components));
}

} // namespace cellsheaf

#pragma once

// Sectioned text documents describing a poset, sheaves on it, morphisms,
// named open sets and local sections.
//
//   [poset]
//   elements = p, q1, q2, r
//   leq = p <= q1, p <= q2, q1 <= r, q2 <= r
//
//   [sheaf G]
//   field = q
//   dim p = 1
//   map p q1 = [[1]]
//
//   [morphism m]
//   source = G
//   target = G
//   component p = [[2]]
//
//   [open U]
//   set = star:q1, star:q2
//
//   [section s]
//   sheaf = G
//   open = star:q1
//   value q1 = [1]
//
// `#` starts a comment. The [poset] block comes first. Unknown blocks and
// keys are rejected with a line/column diagnostic.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cellsheaf/morphism.hpp"
#include "cellsheaf/sections.hpp"
#include "cellsheaf/sheaf.hpp"

namespace cellsheaf {

struct SourceLocation {
    std::size_t line = 0;
    std::size_t column = 0;
};

/// A matrix from the document, entries kept as rationals until a field is chosen.
struct MatrixEntry {
    ElementIndex lower = 0;
    ElementIndex upper = 0;
    Matrix matrix;
    SourceLocation where;
};

struct SheafBlock {
    std::string name;
    Field field;
    std::vector<std::size_t> dims;
    std::vector<MatrixEntry> maps;
    SourceLocation where;
};

struct MorphismBlock {
    std::string name;
    std::string source;
    std::string target;
    /// One per element in poset order; `lower == upper` is the element.
    std::vector<MatrixEntry> components;
    SourceLocation where;
};

struct OpenBlock {
    std::string name;
    ElementSet members;
    SourceLocation where;
};

struct SectionBlock {
    std::string name;
    std::string sheaf;
    ElementSet open;
    /// Values in the order of `open`.
    std::vector<Vector> values;
    SourceLocation where;
};

struct SheafDocument {
    PreOrder order;
    std::vector<SheafBlock> sheaves;
    std::vector<MorphismBlock> morphisms;
    std::vector<OpenBlock> opens;
    std::vector<SectionBlock> sections;

    /// The named sheaf; an empty name falls back to the first sheaf. Throws InvalidArgument.
    const SheafBlock& sheaf(const std::string& name) const;
    const MorphismBlock& morphism(const std::string& name) const;
    const SectionBlock& section(const std::string& name) const;
};

/// Throws ParseError with the location of the first problem.
SheafDocument parse_document(std::string_view text);

/// The poset of the document. Throws InvalidArgument naming a two-cycle.
Poset document_poset(const SheafDocument& doc);

/// Throws FunctorialityError for path-dependent maps, InvalidArgument if an
/// entry has no image in the field.
CellularSheaf build_sheaf(const SheafDocument& doc, const SheafBlock& block,
                          std::optional<Field> field = std::nullopt);

/// Throws NaturalityError when a component square fails to commute.
SheafMorphism build_morphism(const SheafDocument& doc, const MorphismBlock& block,
                             std::optional<Field> field = std::nullopt);

/// The local section of a [section] block. Throws InvalidArgument if its
/// set is not open or its values are not compatible.
Section build_section(const CellularSheaf& s, const SectionBlock& block);

/// Comma-separated `star:x`, element names, or [open] block names, united.
/// Throws InvalidArgument for unknown names. Openness is not checked.
ElementSet resolve_open_spec(const SheafDocument& doc, std::string_view spec);

/// Canonical text: relations as covering pairs (all strict pairs when the
/// order has cycles), maps on covering pairs only when the sheaf is valid,
/// components in poset order, opens as element lists.
std::string format_document(const SheafDocument& doc, std::optional<Field> field = std::nullopt);

} // namespace cellsheaf

#include "cellsheaf/document.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "cellsheaf/error.hpp"

namespace cellsheaf {

namespace {

struct Token {
    std::string text;
    std::size_t column = 0; // 1-based
};

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

Token trim(std::string_view s, std::size_t column) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && is_space(s[b])) ++b;
    while (e > b && is_space(s[e - 1])) --e;
    return {std::string(s.substr(b, e - b)), column + b};
}

std::vector<Token> split(const Token& t, std::string_view sep) {
    std::vector<Token> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t at = t.text.find(sep, start);
        const std::size_t end = at == std::string::npos ? t.text.size() : at;
        out.push_back(trim(std::string_view(t.text).substr(start, end - start), t.column + start));
        if (at == std::string::npos) return out;
        start = at + sep.size();
    }
}

std::vector<Token> words(const Token& t) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < t.text.size()) {
        while (i < t.text.size() && is_space(t.text[i])) ++i;
        const std::size_t b = i;
        while (i < t.text.size() && !is_space(t.text[i])) ++i;
        if (i > b) out.push_back({t.text.substr(b, i - b), t.column + b});
    }
    return out;
}

/// A comma list that may be empty; empty items are an error.
std::vector<Token> list_items(const Token& t) {
    if (t.text.empty()) return {};
    auto items = split(t, ",");
    for (const auto& item : items) {
        if (item.text.empty()) throw ParseError(0, item.column, "empty list item");
    }
    return items;
}

bool valid_name(std::string_view s) {
    if (s.empty()) return false;
    return std::none_of(s.begin(), s.end(), [](char c) {
        return is_space(c) || c == ',' || c == '[' || c == ']' || c == '=' || c == '<' ||
               c == '#' || c == ':';
    });
}

// Matrix and vector literals: [[1, -1/2], [0, 3]] and [1, 0].
class LiteralParser {
public:
    explicit LiteralParser(const Token& t) : text_(t.text), base_(t.column) {}

    std::vector<std::vector<Scalar>> matrix() {
        std::vector<std::vector<Scalar>> rows;
        expect('[');
        skip();
        if (peek() != ']') {
            while (true) {
                skip();
                rows.push_back(row());
                skip();
                if (peek() == ',') {
                    ++pos_;
                    continue;
                }
                break;
            }
        }
        expect(']');
        finish();
        return rows;
    }

    std::vector<Scalar> vector() {
        auto v = row();
        finish();
        return v;
    }

private:
    std::vector<Scalar> row() {
        std::vector<Scalar> out;
        expect('[');
        skip();
        if (peek() == ']') {
            ++pos_;
            return out;
        }
        while (true) {
            skip();
            const std::size_t b = pos_;
            while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
                                           text_[pos_] == '-' || text_[pos_] == '/')) {
                ++pos_;
            }
            try {
                out.push_back(Scalar::parse(std::string_view(text_).substr(b, pos_ - b), Field::rationals()));
            } catch (const InvalidArgument&) {
                throw ParseError(0, base_ + b, "expected a rational number like 3, -2 or 1/2");
            }
            skip();
            if (peek() == ',') {
                ++pos_;
                continue;
            }
            expect(']');
            return out;
        }
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    void skip() {
        while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
    }
    void expect(char c) {
        skip();
        if (peek() != c) throw ParseError(0, base_ + pos_, std::string("expected '") + c + "'");
        ++pos_;
    }
    void finish() {
        skip();
        if (pos_ != text_.size()) throw ParseError(0, base_ + pos_, "unexpected text after literal");
    }

    const std::string& text_;
    std::size_t base_;
    std::size_t pos_ = 0;
};

struct RawMatrix {
    std::vector<std::vector<Scalar>> rows;
    Token key;
    Token value;
};

std::string shape(std::size_t r, std::size_t c) { return std::to_string(r) + "x" + std::to_string(c); }

Matrix shaped(const RawMatrix& raw, std::size_t rows, std::size_t cols, std::size_t line) {
    const std::size_t got_rows = raw.rows.size();
    const std::size_t got_cols = got_rows == 0 ? cols : raw.rows[0].size();
    bool ragged = false;
    for (const auto& r : raw.rows) ragged = ragged || r.size() != got_cols;
    if (ragged) throw ParseError(line, raw.value.column, "rows have different lengths");
    if (got_rows != rows || got_cols != cols) {
        throw ParseError(line, raw.value.column,
                         "expected a " + shape(rows, cols) + " matrix, got " + shape(got_rows, got_cols));
    }
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) m.set(i, j, raw.rows[i][j]);
    }
    return m;
}

enum class BlockKind { none, poset, sheaf, morphism, open, section };

struct PendingSheaf {
    SheafBlock block;
    std::map<ElementIndex, std::pair<std::size_t, Token>> dims; // element -> (line, value)
    std::vector<std::pair<std::size_t, RawMatrix>> maps;
    std::set<std::pair<ElementIndex, ElementIndex>> seen;
    bool field_given = false;
};

struct PendingMorphism {
    MorphismBlock block;
    std::pair<std::size_t, Token> source, target;
    std::map<ElementIndex, std::pair<std::size_t, RawMatrix>> components;
};

struct PendingOpen {
    std::string name;
    SourceLocation where;
    std::optional<std::pair<std::size_t, Token>> set;
};

struct PendingSection {
    std::string name;
    SourceLocation where;
    std::optional<std::pair<std::size_t, Token>> sheaf, open;
    std::map<ElementIndex, std::pair<std::size_t, Token>> values;
};

class DocumentParser {
public:
    SheafDocument run(std::string_view text) {
        std::size_t line_no = 0;
        std::size_t start = 0;
        while (start <= text.size()) {
            const std::size_t nl = text.find('\n', start);
            const std::size_t end = nl == std::string_view::npos ? text.size() : nl;
            ++line_no;
            line_ = line_no;
            std::string_view line = text.substr(start, end - start);
            if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
            if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
            try {
                handle_line(trim(line, 1));
            } catch (const ParseError& e) {
                if (e.line() == 0) throw ParseError(line_no, e.column(), strip_location(e.what()));
                throw;
            }
            if (nl == std::string_view::npos) break;
            start = nl + 1;
        }
        line_ = line_no + 1;
        close_block();
        if (!have_poset_) throw ParseError(1, 1, "document has no [poset] block");
        finish();
        return std::move(doc_);
    }

private:
    static std::string strip_location(const std::string& what) {
        // "line 0, column C: message" -> "message"
        const auto at = what.find(": ");
        return at == std::string::npos ? what : what.substr(at + 2);
    }

    [[noreturn]] void fail(std::size_t column, const std::string& msg) const {
        throw ParseError(line_, column, msg);
    }

    ElementIndex element(const Token& t) const {
        const auto idx = doc_.order.find(t.text);
        if (!idx) fail(t.column, "unknown element '" + t.text + "'");
        return *idx;
    }

    void handle_line(const Token& line) {
        if (line.text.empty()) return;
        if (line.text.front() == '[') {
            if (line.text.back() != ']') fail(line.column + line.text.size(), "expected ']' to close the block header");
            close_block();
            open_block(trim(std::string_view(line.text).substr(1, line.text.size() - 2), line.column + 1));
            return;
        }
        const auto eq = line.text.find('=');
        if (eq == std::string::npos) fail(line.column, "expected 'key = value'");
        const Token lhs = trim(std::string_view(line.text).substr(0, eq), line.column);
        const Token rhs = trim(std::string_view(line.text).substr(eq + 1), line.column + eq + 1);
        const auto key = words(lhs);
        if (key.empty()) fail(line.column, "missing key before '='");
        if (kind_ == BlockKind::none) fail(line.column, "key outside of any block");
        switch (kind_) {
        case BlockKind::poset: poset_key(key, rhs); break;
        case BlockKind::sheaf: sheaf_key(key, rhs); break;
        case BlockKind::morphism: morphism_key(key, rhs); break;
        case BlockKind::open: open_key(key, rhs); break;
        case BlockKind::section: section_key(key, rhs); break;
        case BlockKind::none: break;
        }
    }

    void expect_args(const std::vector<Token>& key, std::size_t n) const {
        if (key.size() != n + 1) {
            fail(key[0].column, "key '" + key[0].text + "' takes " + std::to_string(n) +
                                    (n == 1 ? " argument" : " arguments"));
        }
    }

    void open_block(const Token& header) {
        const auto w = words(header);
        if (w.empty()) fail(header.column, "empty block header");
        const std::string& kind = w[0].text;
        if (w.size() > 2) fail(w[2].column, "block header takes at most one name");
        std::string name = w.size() == 2 ? w[1].text : "";
        if (w.size() == 2 && !valid_name(name)) fail(w[1].column, "invalid name '" + name + "'");
        const SourceLocation where{line_, header.column - 1};

        if (kind == "poset") {
            if (have_poset_ || kind_ != BlockKind::none) fail(w[0].column, "the [poset] block must come first and only once");
            if (w.size() == 2) fail(w[1].column, "[poset] takes no name");
            kind_ = BlockKind::poset;
            return;
        }
        if (!have_poset_) fail(w[0].column, "the [poset] block must come first");
        const auto claim = [&](std::set<std::string>& names) {
            if (!names.insert(name).second) {
                fail(w.size() == 2 ? w[1].column : w[0].column, "duplicate " + kind + " '" + name + "'");
            }
        };
        if (kind == "sheaf") {
            claim(sheaf_names_);
            kind_ = BlockKind::sheaf;
            sheaf_ = PendingSheaf{};
            sheaf_.block.name = name;
            sheaf_.block.where = where;
        } else if (kind == "morphism") {
            if (name.empty()) fail(w[0].column, "[morphism] needs a name");
            claim(morphism_names_);
            kind_ = BlockKind::morphism;
            morphism_ = PendingMorphism{};
            morphism_.block.name = name;
            morphism_.block.where = where;
        } else if (kind == "open") {
            if (name.empty()) fail(w[0].column, "[open] needs a name");
            if (doc_.order.find(name)) fail(w[1].column, "open set name '" + name + "' is also an element");
            claim(open_names_);
            kind_ = BlockKind::open;
            open_ = PendingOpen{name, where, std::nullopt};
        } else if (kind == "section") {
            if (name.empty()) fail(w[0].column, "[section] needs a name");
            claim(section_names_);
            kind_ = BlockKind::section;
            section_ = PendingSection{};
            section_.name = name;
            section_.where = where;
        } else {
            fail(w[0].column, "unknown block '" + kind + "'");
        }
    }

    void poset_key(const std::vector<Token>& key, const Token& value) {
        const std::string& k = key[0].text;
        if (k == "elements") {
            expect_args(key, 0);
            if (elements_given_) fail(key[0].column, "duplicate key 'elements'");
            elements_given_ = true;
            for (const auto& item : list_items(value)) {
                if (!valid_name(item.text)) fail(item.column, "invalid element name '" + item.text + "'");
                if (std::find(elements_.begin(), elements_.end(), item.text) != elements_.end()) {
                    fail(item.column, "duplicate element '" + item.text + "'");
                }
                elements_.push_back(item.text);
            }
        } else if (k == "leq") {
            expect_args(key, 0);
            for (const auto& item : list_items(value)) {
                const auto chain = split(item, "<=");
                if (chain.size() < 2) fail(item.column, "expected 'x <= y'");
                for (const auto& t : chain) {
                    if (t.text.empty()) fail(t.column, "missing element name");
                }
                for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
                    relations_.emplace_back(line_, std::make_pair(chain[i], chain[i + 1]));
                }
            }
        } else {
            fail(key[0].column, "unknown key '" + k + "' in [poset]");
        }
    }

    void sheaf_key(const std::vector<Token>& key, const Token& value) {
        const std::string& k = key[0].text;
        if (k == "field") {
            expect_args(key, 0);
            if (sheaf_.field_given) fail(key[0].column, "duplicate key 'field'");
            sheaf_.field_given = true;
            try {
                sheaf_.block.field = Field::parse(value.text);
            } catch (const InvalidArgument&) {
                fail(value.column, "expected 'q' or 'fp:<prime>'");
            }
        } else if (k == "dim") {
            expect_args(key, 1);
            const ElementIndex x = element(key[1]);
            if (sheaf_.dims.count(x)) fail(key[1].column, "duplicate dim for '" + key[1].text + "'");
            std::size_t used = 0;
            unsigned long long n = 0;
            try {
                n = std::stoull(value.text, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used == 0 || used != value.text.size() || value.text[0] == '-' || n > 64) {
                fail(value.column, "expected a dimension between 0 and 64");
            }
            sheaf_.dims.emplace(x, std::make_pair(static_cast<std::size_t>(n), value));
        } else if (k == "map") {
            expect_args(key, 2);
            const ElementIndex p = element(key[1]);
            const ElementIndex q = element(key[2]);
            if (!doc_.order.less(p, q)) {
                fail(key[2].column, "'" + key[2].text + "' is not strictly above '" + key[1].text + "'");
            }
            if (!sheaf_.seen.emplace(p, q).second) {
                fail(key[0].column, "duplicate map " + key[1].text + " " + key[2].text);
            }
            RawMatrix raw{LiteralParser(value).matrix(), key[0], value};
            sheaf_.block.maps.push_back(MatrixEntry{p, q, Matrix(), {line_, key[0].column}});
            sheaf_.maps.emplace_back(line_, std::move(raw));
        } else {
            fail(key[0].column, "unknown key '" + k + "' in [sheaf]");
        }
    }

    void morphism_key(const std::vector<Token>& key, const Token& value) {
        const std::string& k = key[0].text;
        if (k == "source" || k == "target") {
            expect_args(key, 0);
            auto& slot = k == "source" ? morphism_.source : morphism_.target;
            if (slot.first != 0) fail(key[0].column, "duplicate key '" + k + "'");
            slot = {line_, value};
        } else if (k == "component") {
            expect_args(key, 1);
            const ElementIndex x = element(key[1]);
            if (morphism_.components.count(x)) fail(key[1].column, "duplicate component for '" + key[1].text + "'");
            morphism_.components.emplace(x, std::make_pair(line_, RawMatrix{LiteralParser(value).matrix(), key[0], value}));
        } else {
            fail(key[0].column, "unknown key '" + k + "' in [morphism]");
        }
    }

    void open_key(const std::vector<Token>& key, const Token& value) {
        if (key[0].text != "set") fail(key[0].column, "unknown key '" + key[0].text + "' in [open]");
        expect_args(key, 0);
        if (open_.set) fail(key[0].column, "duplicate key 'set'");
        open_.set = std::make_pair(line_, value);
    }

    void section_key(const std::vector<Token>& key, const Token& value) {
        const std::string& k = key[0].text;
        if (k == "sheaf" || k == "open") {
            expect_args(key, 0);
            auto& slot = k == "sheaf" ? section_.sheaf : section_.open;
            if (slot) fail(key[0].column, "duplicate key '" + k + "'");
            slot = std::make_pair(line_, value);
        } else if (k == "value") {
            expect_args(key, 1);
            const ElementIndex x = element(key[1]);
            if (section_.values.count(x)) fail(key[1].column, "duplicate value for '" + key[1].text + "'");
            section_.values.emplace(x, std::make_pair(line_, value));
        } else {
            fail(key[0].column, "unknown key '" + k + "' in [section]");
        }
    }

    void close_block() {
        switch (kind_) {
        case BlockKind::poset: close_poset(); break;
        case BlockKind::sheaf: close_sheaf(); break;
        case BlockKind::morphism: morphisms_.push_back(std::move(morphism_)); break;
        case BlockKind::open:
            if (!open_.set) throw ParseError(open_.where.line, open_.where.column, "[open " + open_.name + "] has no 'set'");
            opens_.push_back(std::move(open_));
            break;
        case BlockKind::section:
            if (!section_.open) {
                throw ParseError(section_.where.line, section_.where.column,
                                 "[section " + section_.name + "] has no 'open'");
            }
            sections_.push_back(std::move(section_));
            break;
        case BlockKind::none: break;
        }
        kind_ = BlockKind::none;
    }

    void close_poset() {
        std::vector<std::pair<ElementIndex, ElementIndex>> pairs;
        const auto find = [&](const Token& t, std::size_t line) {
            const auto it = std::find(elements_.begin(), elements_.end(), t.text);
            if (it == elements_.end()) throw ParseError(line, t.column, "unknown element '" + t.text + "'");
            return static_cast<ElementIndex>(it - elements_.begin());
        };
        for (const auto& [line, rel] : relations_) pairs.emplace_back(find(rel.first, line), find(rel.second, line));
        doc_.order = PreOrder::from_indices(elements_, pairs);
        have_poset_ = true;
    }

    void close_sheaf() {
        const std::size_t n = doc_.order.size();
        auto& b = sheaf_.block;
        b.dims.assign(n, 0);
        for (ElementIndex x = 0; x < n; ++x) {
            const auto it = sheaf_.dims.find(x);
            if (it == sheaf_.dims.end()) {
                throw ParseError(b.where.line, b.where.column, "sheaf has no dim for '" + doc_.order.name(x) + "'");
            }
            b.dims[x] = it->second.first;
        }
        for (std::size_t i = 0; i < b.maps.size(); ++i) {
            const auto& [line, raw] = sheaf_.maps[i];
            b.maps[i].matrix = shaped(raw, b.dims[b.maps[i].upper], b.dims[b.maps[i].lower], line);
        }
        std::sort(b.maps.begin(), b.maps.end(), [](const MatrixEntry& a, const MatrixEntry& c) {
            return std::make_pair(a.lower, a.upper) < std::make_pair(c.lower, c.upper);
        });
        doc_.sheaves.push_back(std::move(b));
    }

    std::optional<ElementSet> resolve_token(const std::string& name) const {
        if (name.rfind("star:", 0) == 0) {
            const auto x = doc_.order.find(name.substr(5));
            if (!x) return std::nullopt;
            ElementSet out;
            for (ElementIndex y = 0; y < doc_.order.size(); ++y) {
                if (doc_.order.leq(*x, y)) out.push_back(y);
            }
            return out;
        }
        if (const auto x = doc_.order.find(name)) return ElementSet{*x};
        for (const auto& o : opens_) {
            if (o.name == name && o.set) return resolve(*o.set, false);
        }
        return std::nullopt;
    }

    ElementSet resolve(const std::pair<std::size_t, Token>& spec, bool allow_named) const {
        ElementSet acc;
        for (const auto& item : list_items_at(spec)) {
            if (!allow_named && item.text.rfind("star:", 0) != 0 && !doc_.order.find(item.text)) {
                throw ParseError(spec.first, item.column, "expected 'star:x' or an element name, got '" + item.text + "'");
            }
            const auto part = resolve_token(item.text);
            if (!part) throw ParseError(spec.first, item.column, "unknown element or open set '" + item.text + "'");
            acc = set_union(acc, *part);
        }
        return acc;
    }

    static std::vector<Token> list_items_at(const std::pair<std::size_t, Token>& spec) {
        try {
            return list_items(spec.second);
        } catch (const ParseError& e) {
            throw ParseError(spec.first, e.column(), "empty list item");
        }
    }

    const SheafBlock* find_sheaf(const std::string& name) const {
        for (const auto& s : doc_.sheaves) {
            if (s.name == name) return &s;
        }
        return nullptr;
    }

    void finish() {
        for (const auto& o : opens_) doc_.opens.push_back(OpenBlock{o.name, resolve(*o.set, false), o.where});

        for (auto& pm : morphisms_) {
            auto& b = pm.block;
            if (pm.source.first == 0 || pm.target.first == 0) {
                throw ParseError(b.where.line, b.where.column, "[morphism " + b.name + "] needs 'source' and 'target'");
            }
            const SheafBlock* src = find_sheaf(pm.source.second.text);
            const SheafBlock* tgt = find_sheaf(pm.target.second.text);
            if (!src) throw ParseError(pm.source.first, pm.source.second.column, "unknown sheaf '" + pm.source.second.text + "'");
            if (!tgt) throw ParseError(pm.target.first, pm.target.second.column, "unknown sheaf '" + pm.target.second.text + "'");
            b.source = src->name;
            b.target = tgt->name;
            for (ElementIndex x = 0; x < doc_.order.size(); ++x) {
                const auto it = pm.components.find(x);
                if (it == pm.components.end()) {
                    if (src->dims[x] != 0 && tgt->dims[x] != 0) {
                        throw ParseError(b.where.line, b.where.column,
                                         "morphism has no component at '" + doc_.order.name(x) + "'");
                    }
                    b.components.push_back(MatrixEntry{x, x, Matrix(tgt->dims[x], src->dims[x]), b.where});
                    continue;
                }
                const auto& [line, raw] = it->second;
                b.components.push_back(MatrixEntry{x, x, shaped(raw, tgt->dims[x], src->dims[x], line),
                                                   {line, raw.key.column}});
            }
            doc_.morphisms.push_back(std::move(b));
        }

        for (const auto& ps : sections_) {
            SectionBlock b;
            b.name = ps.name;
            b.where = ps.where;
            const SheafBlock* sheaf = ps.sheaf ? find_sheaf(ps.sheaf->second.text) : (doc_.sheaves.empty() ? nullptr : &doc_.sheaves[0]);
            if (!sheaf) {
                if (ps.sheaf) throw ParseError(ps.sheaf->first, ps.sheaf->second.column, "unknown sheaf '" + ps.sheaf->second.text + "'");
                throw ParseError(ps.where.line, ps.where.column, "section has no sheaf to live in");
            }
            b.sheaf = sheaf->name;
            b.open = resolve(*ps.open, true);
            for (const auto& [x, entry] : ps.values) {
                if (!std::binary_search(b.open.begin(), b.open.end(), x)) {
                    throw ParseError(entry.first, entry.second.column,
                                     "'" + doc_.order.name(x) + "' is not in the section's set");
                }
            }
            for (auto x : b.open) {
                const std::size_t d = sheaf->dims[x];
                const auto it = ps.values.find(x);
                if (it == ps.values.end()) {
                    if (d != 0) throw ParseError(ps.where.line, ps.where.column, "section has no value at '" + doc_.order.name(x) + "'");
                    b.values.emplace_back();
                    continue;
                }
                const auto& [line, tok] = it->second;
                std::vector<Scalar> v;
                try {
                    v = LiteralParser(tok).vector();
                } catch (const ParseError& e) {
                    throw ParseError(line, e.column(), strip_location(e.what()));
                }
                if (v.size() != d) {
                    throw ParseError(line, tok.column, "expected a vector of length " + std::to_string(d) +
                                                           ", got " + std::to_string(v.size()));
                }
                b.values.push_back(std::move(v));
            }
            doc_.sections.push_back(std::move(b));
        }
    }

    SheafDocument doc_;
    std::size_t line_ = 0;
    BlockKind kind_ = BlockKind::none;
    bool have_poset_ = false;
    bool elements_given_ = false;
    std::vector<std::string> elements_;
    std::vector<std::pair<std::size_t, std::pair<Token, Token>>> relations_;
    std::set<std::string> sheaf_names_, morphism_names_, open_names_, section_names_;
    PendingSheaf sheaf_;
    PendingMorphism morphism_;
    PendingOpen open_;
    PendingSection section_;
    std::vector<PendingMorphism> morphisms_;
    std::vector<PendingOpen> opens_;
    std::vector<PendingSection> sections_;
};

std::string join_names(const PreOrder& order, const ElementSet& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + order.name(xs[i]);
    return out;
}

std::string header(const std::string& kind, const std::string& name) {
    return "[" + kind + (name.empty() ? "" : " " + name) + "]\n";
}

} // namespace

const SheafBlock& SheafDocument::sheaf(const std::string& name) const {
    if (sheaves.empty()) throw InvalidArgument("document has no [sheaf] block");
    for (const auto& s : sheaves) {
        if (s.name == name) return s;
    }
    if (name.empty()) return sheaves.front();
    throw InvalidArgument("unknown sheaf '" + name + "'");
}

const MorphismBlock& SheafDocument::morphism(const std::string& name) const {
    for (const auto& m : morphisms) {
        if (m.name == name) return m;
    }
    throw InvalidArgument("unknown morphism '" + name + "'");
}

const SectionBlock& SheafDocument::section(const std::string& name) const {
    for (const auto& s : sections) {
        if (s.name == name) return s;
    }
    throw InvalidArgument("unknown section '" + name + "'");
}

SheafDocument parse_document(std::string_view text) { return DocumentParser().run(text); }

Poset document_poset(const SheafDocument& doc) { return Poset(doc.order); }

CellularSheaf build_sheaf(const SheafDocument& doc, const SheafBlock& block, std::optional<Field> field) {
    const Field f = field.value_or(block.field);
    RestrictionMaps maps;
    for (const auto& m : block.maps) maps.emplace(std::make_pair(m.lower, m.upper), convert_matrix(m.matrix, f));
    return CellularSheaf::build(document_poset(doc), block.dims, maps, f);
}

SheafMorphism build_morphism(const SheafDocument& doc, const MorphismBlock& block, std::optional<Field> field) {
    const CellularSheaf source = build_sheaf(doc, doc.sheaf(block.source), field);
    const CellularSheaf target = build_sheaf(doc, doc.sheaf(block.target), field);
    if (!(source.field() == target.field())) {
        throw InvalidArgument("morphism '" + block.name + "' joins sheaves over different fields");
    }
    std::vector<Matrix> comps;
    for (const auto& c : block.components) comps.push_back(convert_matrix(c.matrix, source.field()));
    return SheafMorphism::build(source, target, std::move(comps));
}

Section build_section(const CellularSheaf& s, const SectionBlock& block) {
    Section sec{s.space().make_open(block.open), {}};
    for (const auto& v : block.values) {
        Vector w;
        for (const auto& x : v) w.push_back(x.in(s.field()));
        sec.components.push_back(std::move(w));
    }
    const auto& m = sec.open.members();
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m.size(); ++j) {
            if (!s.base().less(m[i], m[j])) continue;
            const Vector image = s.full_map(m[i], m[j]).apply(sec.components[i]);
            if (image != sec.components[j]) {
                throw InvalidArgument("section '" + block.name + "' is not compatible: the map from '" +
                                      s.base().name(m[i]) + "' to '" + s.base().name(m[j]) + "' sends " +
                                      to_string(sec.components[i]) + " to " + to_string(image) +
                                      ", but the value at '" + s.base().name(m[j]) + "' is " +
                                      to_string(sec.components[j]));
            }
        }
    }
    return sec;
}

ElementSet resolve_open_spec(const SheafDocument& doc, std::string_view spec) {
    ElementSet acc;
    const Token whole = trim(spec, 1);
    std::vector<Token> items;
    try {
        items = list_items(whole);
    } catch (const ParseError&) {
        throw InvalidArgument("empty item in open set '" + std::string(spec) + "'");
    }
    for (const auto& item : items) {
        const std::string& name = item.text;
        if (name.rfind("star:", 0) == 0) {
            const auto x = doc.order.find(name.substr(5));
            if (!x) throw InvalidArgument("unknown element '" + name.substr(5) + "'");
            ElementSet star;
            for (ElementIndex y = 0; y < doc.order.size(); ++y) {
                if (doc.order.leq(*x, y)) star.push_back(y);
            }
            acc = set_union(acc, star);
        } else if (const auto x = doc.order.find(name)) {
            acc = set_union(acc, ElementSet{*x});
        } else {
            const auto it = std::find_if(doc.opens.begin(), doc.opens.end(),
                                         [&](const OpenBlock& o) { return o.name == name; });
            if (it == doc.opens.end()) throw InvalidArgument("unknown element or open set '" + name + "'");
            acc = set_union(acc, it->members);
        }
    }
    return acc;
}

std::string format_document(const SheafDocument& doc, std::optional<Field> field) {
    const PreOrder& order = doc.order;
    std::string out = "[poset]\nelements = " + join_names(order, [&] {
        ElementSet all(order.size());
        for (ElementIndex x = 0; x < order.size(); ++x) all[x] = x;
        return all;
    }()) + "\n";
    const auto relations = is_poset(order) ? hasse_edges(Poset(order)) : order.strict_pairs();
    if (!relations.empty()) {
        out += "leq = ";
        for (std::size_t i = 0; i < relations.size(); ++i) {
            out += (i ? ", " : "") + order.name(relations[i].first) + " <= " + order.name(relations[i].second);
        }
        out += "\n";
    }
    for (const auto& s : doc.sheaves) {
        const Field f = field.value_or(s.field);
        out += "\n" + header("sheaf", s.name) + "field = " + f.to_string() + "\n";
        for (ElementIndex x = 0; x < order.size(); ++x) {
            out += "dim " + order.name(x) + " = " + std::to_string(s.dims[x]) + "\n";
        }
        // A valid sheaf is written through its covering maps; an invalid one
        // keeps the maps as given so that it stays invalid.
        std::vector<std::pair<RelationPair, Matrix>> maps;
        try {
            for (auto& entry : build_sheaf(doc, s, f).edge_maps()) maps.push_back(std::move(entry));
        } catch (const Error&) {
            for (const auto& m : s.maps) maps.emplace_back(RelationPair{m.lower, m.upper}, convert_matrix(m.matrix, f));
        }
        for (const auto& [pq, m] : maps) {
            if (m.rows() == 0 || m.cols() == 0) continue;
            out += "map " + order.name(pq.first) + " " + order.name(pq.second) + " = " + m.to_string() + "\n";
        }
    }
    for (const auto& m : doc.morphisms) {
        const Field f = field.value_or(doc.sheaf(m.source).field);
        out += "\n" + header("morphism", m.name) + "source = " + m.source + "\ntarget = " + m.target + "\n";
        for (const auto& c : m.components) {
            if (c.matrix.rows() == 0 || c.matrix.cols() == 0) continue;
            out += "component " + order.name(c.lower) + " = " + convert_matrix(c.matrix, f).to_string() + "\n";
        }
    }
    for (const auto& o : doc.opens) {
        out += "\n" + header("open", o.name) + "set = " + join_names(order, o.members) + "\n";
    }
    for (const auto& s : doc.sections) {
        const Field f = field.value_or(doc.sheaf(s.sheaf).field);
        out += "\n" + header("section", s.name);
        if (!s.sheaf.empty()) out += "sheaf = " + s.sheaf + "\n";
        out += "open = " + join_names(order, s.open) + "\n";
        for (std::size_t i = 0; i < s.open.size(); ++i) {
            if (s.values[i].empty()) continue;
            Vector v;
            for (const auto& x : s.values[i]) v.push_back(x.in(f));
            out += "value " + order.name(s.open[i]) + " = " + to_string(v) + "\n";
        }
    }
    return out;
}

} // namespace cellsheaf

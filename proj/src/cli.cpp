#include "cellsheaf/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <optional>
#include <sstream>

#include "cellsheaf/axioms.hpp"
#include "cellsheaf/document.hpp"
#include "cellsheaf/error.hpp"
#include "cellsheaf/stalk.hpp"

namespace cellsheaf::cli {

namespace {

using json = nlohmann::ordered_json;

struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct Report {
    std::string command;
    std::uint64_t seed = 0;
    std::vector<Check> checks;
    json data = json::object();

    bool add(std::string name, bool passed, std::string detail) {
        checks.push_back({std::move(name), passed, std::move(detail)});
        return passed;
    }
    bool passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
    }
};

/// Thrown for input problems that should end with the usage exit code; the
/// check name lands in the report.
struct InputError : Error {
    InputError(std::string check, const std::string& message) : Error(message), check(std::move(check)) {}
    std::string check;
};

struct Options {
    std::string command;
    std::string file;
    std::string field_text;
    std::optional<Field> field;
    std::uint64_t seed = 0;
    std::size_t max_elements = kDefaultMaxElements;
    std::size_t random_covers = 50;
    bool json = false;
    std::string sheaf;
    std::string open;
    std::string point;
    std::string morphism;
    std::vector<std::string> sections;
};

// ---- conversions ---------------------------------------------------------

json to_json(const Vector& v) {
    json out = json::array();
    for (const auto& x : v) out.push_back(x.to_string());
    return out;
}

json to_json(const Matrix& m) {
    json out = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(to_json(m.row(i)));
    return out;
}

json names(const PreOrder& order, const ElementSet& xs) {
    json out = json::array();
    for (auto x : xs) out.push_back(order.name(x));
    return out;
}

json section_json(const PreOrder& order, const Section& s) {
    json out = json::object();
    for (std::size_t i = 0; i < s.open.size(); ++i) out[order.name(s.open.members()[i])] = to_json(s.components[i]);
    return out;
}

json coordinate_labels(const CellularSheaf& s, const OpenSet& u) {
    json out = json::array();
    for (auto x : u.members()) {
        const std::size_t d = s.stalk_dim(x);
        for (std::size_t k = 0; k < d; ++k) {
            out.push_back(d == 1 ? s.base().name(x) : s.base().name(x) + "[" + std::to_string(k) + "]");
        }
    }
    return out;
}

// ---- text rendering ------------------------------------------------------

bool is_inline(const json& v) {
    if (v.is_object()) return false;
    if (v.is_string()) return v.get_ref<const std::string&>().find('\n') == std::string::npos;
    if (v.is_array()) return std::all_of(v.begin(), v.end(), [](const json& x) { return is_inline(x); });
    return true;
}

std::string inline_text(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array()) {
        std::string out = "[";
        bool first = true;
        for (const auto& x : v) {
            out += (first ? "" : ", ") + inline_text(x);
            first = false;
        }
        return out + "]";
    }
    return v.dump();
}

void render(std::ostream& out, const std::string& key, const json& v, std::size_t indent);

void render_items(std::ostream& out, const json& v, std::size_t indent) {
    const std::string pad(indent, ' ');
    if (v.is_object()) {
        for (const auto& [k, x] : v.items()) render(out, k, x, indent);
        return;
    }
    for (const auto& x : v) {
        if (is_inline(x)) {
            out << pad << "- " << inline_text(x) << "\n";
            continue;
        }
        // Block item: render two deeper and mark the first line with a dash.
        std::ostringstream block;
        render_items(block, x, indent + 2);
        std::string text = block.str();
        if (text.size() > indent) text[indent] = '-';
        out << text;
    }
}

void render(std::ostream& out, const std::string& key, const json& v, std::size_t indent) {
    const std::string pad(indent, ' ');
    if (is_inline(v)) {
        out << pad << key << ": " << inline_text(v) << "\n";
    } else if (v.is_string()) {
        out << pad << key << ": |\n";
        std::istringstream lines(v.get<std::string>());
        for (std::string line; std::getline(lines, line);) {
            if (line.empty()) {
                out << "\n";
            } else {
                out << pad << "  " << line << "\n";
            }
        }
    } else {
        out << pad << key << ":\n";
        render_items(out, v, indent + 2);
    }
}

void print_text(std::ostream& out, const Report& r) {
    out << "command: " << r.command << "\n";
    out << "seed: " << r.seed << "\n";
    out << "checks:\n";
    for (const auto& c : r.checks) {
        out << "  " << (c.passed ? "PASS" : "FAIL") << " " << c.name;
        if (!c.detail.empty()) out << ": " << c.detail;
        out << "\n";
    }
    out << "result: " << (r.passed() ? "PASS" : "FAIL") << "\n";
    if (!r.data.empty()) {
        out << "data:\n";
        render_items(out, r.data, 2);
    }
}

void print_json(std::ostream& out, const Report& r) {
    json doc = json::object();
    doc["command"] = r.command;
    doc["seed"] = r.seed;
    doc["checks"] = json::array();
    for (const auto& c : r.checks) {
        doc["checks"].push_back({{"name", c.name}, {"status", c.passed ? "PASS" : "FAIL"}, {"detail", c.detail}});
    }
    doc["data"] = r.data;
    out << doc.dump(2) << "\n";
}

// ---- shared steps --------------------------------------------------------

class Session {
public:
    Session(const Options& opt, Report& report) : opt_(opt), report_(report) {}

    void load() {
        std::ifstream in(opt_.file, std::ios::binary);
        if (!in) throw InputError("input", "cannot read '" + opt_.file + "'");
        std::ostringstream text;
        text << in.rdbuf();
        try {
            doc_ = parse_document(text.str());
        } catch (const ParseError& e) {
            throw InputError("parse", opt_.file + ":" + std::to_string(e.line()) + ":" +
                                          std::to_string(e.column()) + ": " + strip(e.what()));
        }
    }

    const SheafDocument& doc() const { return doc_; }
    const Options& options() const { return opt_; }
    Report& report() { return report_; }

    /// Adds the poset and functoriality checks; nullopt when either fails.
    std::optional<CellularSheaf> sheaf(const SheafBlock& block, bool record_success) {
        const std::string prefix = block.name.empty() ? "" : "sheaf " + block.name + ": ";
        if (!is_poset(doc_.order)) {
            try {
                document_poset(doc_);
            } catch (const InvalidArgument& e) {
                report_.add("poset", false, e.what());
            }
            return std::nullopt;
        }
        try {
            CellularSheaf s = build_sheaf(doc_, block, opt_.field);
            if (record_success) {
                report_.add(prefix + "functoriality", true,
                            "restriction maps compose independently of the path on all " +
                                std::to_string(s.base().strict_pairs().size()) + " related pairs");
            }
            return s;
        } catch (const FunctorialityError& e) {
            report_.add(prefix + "functoriality", false, e.what());
            return std::nullopt;
        }
    }

    const SheafBlock& chosen_sheaf() const {
        try {
            return doc_.sheaf(opt_.sheaf);
        } catch (const InvalidArgument& e) {
            throw InputError("input", e.what());
        }
    }

    /// An open set from a spec; non-open sets are input errors that cite the witness.
    OpenSet open_set(const CellularSheaf& s, const std::string& spec, const std::string& check) {
        ElementSet set;
        try {
            set = resolve_open_spec(doc_, spec);
        } catch (const InvalidArgument& e) {
            throw InputError(check, e.what());
        }
        if (const auto v = s.space().up_closure_violation(set)) {
            throw InputError(check, "set " + s.space().describe(set) + " is not open: it contains '" +
                                        s.base().name(v->first) + "' but not its successor '" +
                                        s.base().name(v->second) + "'");
        }
        return s.space().make_open(set);
    }

    static std::string strip(const std::string& what) {
        const auto at = what.find(": ");
        return at == std::string::npos ? what : what.substr(at + 2);
    }

private:
    const Options& opt_;
    Report& report_;
    SheafDocument doc_;
};

std::string describe_failure(const AlexandrovSpace& X, const AxiomReport& r) {
    for (const auto& c : r.checks) {
        if (c.passed()) continue;
        std::string why = !c.injective ? "restriction to the cover is not injective"
                          : !c.exact   ? "compatible families do not all come from sections"
                                       : "intersection form of the sequence is not exact";
        return "cover " + describe_cover(X, c.cover) + " of " + X.describe(c.open.members()) + ": " + why;
    }
    return "";
}

// ---- commands ------------------------------------------------------------

int cmd_check(Session& ses) {
    Report& rep = ses.report();
    const SheafDocument& doc = ses.doc();
    const Options& opt = ses.options();
    if (!is_poset(doc.order)) {
        try {
            document_poset(doc);
        } catch (const InvalidArgument& e) {
            rep.add("poset", false, e.what());
        }
        rep.data["normalized_document"] = format_document(doc, opt.field);
        return kExitFail;
    }
    bool ok = true;
    rep.add("poset", true,
            std::to_string(doc.order.size()) + " elements, " +
                std::to_string(hasse_edges(Poset(doc.order)).size()) + " covering pairs");

    std::vector<const SheafBlock*> blocks;
    if (!opt.sheaf.empty()) {
        blocks.push_back(&ses.chosen_sheaf());
    } else {
        for (const auto& b : doc.sheaves) blocks.push_back(&b);
    }
    rep.data["sheaves"] = json::array();
    for (const SheafBlock* block : blocks) {
        const auto s = ses.sheaf(*block, true);
        if (!s) {
            ok = false;
            continue;
        }
        const std::string prefix = block->name.empty() ? "" : "sheaf " + block->name + ": ";
        SectionAtlas atlas(*s);
        const AlexandrovSpace& X = s->space();

        const AxiomReport base = verify_base_sheaf_axioms(atlas);
        ok &= rep.add(prefix + "base-sheaf axioms", base.passed(),
                      base.passed() ? std::to_string(base.checks.size()) + " covers of open stars by open stars are exact"
                                    : describe_failure(X, base));

        ExtendedAxiomOptions ext_opt;
        ext_opt.seed = opt.seed;
        ext_opt.random_covers = opt.random_covers;
        ext_opt.max_elements = opt.max_elements;
        const AxiomReport ext = verify_sheaf_axioms_extended(atlas, ext_opt);
        ok &= rep.add(prefix + "sheaf axioms", ext.passed(),
                      ext.passed() ? std::to_string(ext.checks.size()) + " covers of " +
                                         std::to_string(ext.opens_checked) + " open sets are exact"
                                   : describe_failure(X, ext));

        std::size_t stalk_failures = 0;
        for (ElementIndex p = 0; p < s->size(); ++p) {
            if (!stalk_at(atlas, p, {opt.max_elements, false}).passed()) ++stalk_failures;
        }
        ok &= rep.add(prefix + "stalks", stalk_failures == 0,
                      stalk_failures == 0 ? "the direct limit at every point is the value at the point"
                                          : std::to_string(stalk_failures) + " points disagree");

        json dims = json::object();
        for (ElementIndex p = 0; p < s->size(); ++p) dims[s->base().name(p)] = s->stalk_dim(p);
        rep.data["sheaves"].push_back({{"name", block->name},
                                       {"field", s->field().to_string()},
                                       {"dims", dims},
                                       {"open_sets", X.enumerate_opens(opt.max_elements).size()},
                                       {"global_sections", atlas.over(X.whole()).dim()}});
    }
    if (opt.sheaf.empty()) {
        for (const auto& m : doc.morphisms) {
            try {
                build_morphism(doc, m, opt.field);
                rep.add("morphism " + m.name + ": naturality", true, "components commute with restrictions");
            } catch (const NaturalityError& e) {
                ok = rep.add("morphism " + m.name + ": naturality", false, e.what());
            } catch (const FunctorialityError&) {
                ok = rep.add("morphism " + m.name + ": naturality", false, "an endpoint sheaf is not functorial");
            }
        }
    }
    rep.data["normalized_document"] = format_document(doc, opt.field);
    return ok ? kExitPass : kExitFail;
}

int cmd_sections(Session& ses) {
    Report& rep = ses.report();
    const auto s = ses.sheaf(ses.chosen_sheaf(), false);
    if (!s) return kExitFail;
    const OpenSet u = ses.open_set(*s, ses.options().open, "open set");
    rep.add("open set", true, s->space().describe(u.members()) + " is up-closed");
    const SectionSpace sp = sections_over(*s, u);
    rep.data["open"] = names(s->base(), u.members());
    rep.data["dim"] = sp.dim();
    rep.data["coordinates"] = coordinate_labels(*s, u);
    rep.data["rref"] = to_json(sp.basis().basis());
    json basis = json::array();
    for (std::size_t i = 0; i < sp.dim(); ++i) basis.push_back(section_json(s->base(), sp.section(i)));
    rep.data["basis"] = basis;
    return kExitPass;
}

int cmd_stalk(Session& ses) {
    Report& rep = ses.report();
    const Options& opt = ses.options();
    const auto s = ses.sheaf(ses.chosen_sheaf(), false);
    if (!s) return kExitFail;
    std::vector<ElementIndex> points;
    if (opt.point.empty()) {
        for (ElementIndex p = 0; p < s->size(); ++p) points.push_back(p);
    } else {
        const auto p = s->base().find(opt.point);
        if (!p) throw InputError("point", "unknown element '" + opt.point + "'");
        points.push_back(*p);
    }
    SectionAtlas atlas(*s);
    json rows = json::array();
    for (auto p : points) {
        const StalkReport r = stalk_at(atlas, p, {opt.max_elements, false});
        rep.add("stalk " + s->base().name(p), r.passed(),
                "value dim " + std::to_string(r.theorem_dim) + ", direct limit dim " +
                    std::to_string(r.oracle_dim) + ", germ map " +
                    (r.witness_invertible ? "invertible" : "not invertible"));
        rows.push_back({{"point", s->base().name(p)},
                        {"value_dim", r.theorem_dim},
                        {"limit_dim", r.oracle_dim},
                        {"germ_map", to_json(r.iso_witness)}});
    }
    rep.data["points"] = rows;
    return rep.passed() ? kExitPass : kExitFail;
}

int cmd_quotient(Session& ses) {
    Report& rep = ses.report();
    const PreOrder& order = ses.doc().order;
    const QuotientResult q = quotient_to_poset(order);
    rep.add("projection monotone", is_monotone(q.projection), "x <= y implies [x] <= [y]");
    rep.add("quotient antisymmetric", is_poset(q.quotient),
            std::to_string(q.classes.size()) + " classes from " + std::to_string(order.size()) + " elements");
    json classes = json::array();
    for (const auto& c : q.classes) classes.push_back(names(order, c));
    json hasse = json::array();
    for (const auto& [a, b] : hasse_edges(q.quotient)) {
        hasse.push_back(q.quotient.name(a) + " <= " + q.quotient.name(b));
    }
    rep.data["input_is_poset"] = is_poset(order);
    rep.data["classes"] = classes;
    rep.data["hasse"] = hasse;
    return rep.passed() ? kExitPass : kExitFail;
}

int cmd_morphism(Session& ses) {
    Report& rep = ses.report();
    const SheafDocument& doc = ses.doc();
    const Options& opt = ses.options();
    std::vector<const MorphismBlock*> blocks;
    if (!opt.morphism.empty()) {
        try {
            blocks.push_back(&doc.morphism(opt.morphism));
        } catch (const InvalidArgument& e) {
            throw InputError("morphism", e.what());
        }
    } else {
        for (const auto& m : doc.morphisms) blocks.push_back(&m);
    }
    if (blocks.empty()) throw InputError("morphism", "document has no [morphism] block");
    if (!is_poset(doc.order)) {
        ses.sheaf(doc.sheaves.front(), false);
        return kExitFail;
    }
    json rows = json::array();
    for (const MorphismBlock* b : blocks) {
        const std::string name = "morphism " + b->name;
        std::optional<SheafMorphism> m;
        try {
            m = build_morphism(doc, *b, opt.field);
        } catch (const NaturalityError& e) {
            rep.add(name + ": naturality", false, e.what());
            continue;
        } catch (const FunctorialityError& e) {
            rep.add(name + ": naturality", false, std::string("endpoint sheaf: ") + e.what());
            continue;
        }
        rep.add(name + ": naturality", true, "components commute with restrictions on all covering pairs");
        const MorphismClass c = classify(*m);
        const SectionLevelClass sc = classify_by_sections(*m, opt.max_elements);
        rep.add(name + ": stalks against sections",
                c.isomorphism == sc.all_invertible && c.injective == sc.all_injective,
                "section maps over " + std::to_string(sc.opens) + " open sets: " +
                    (sc.all_invertible ? "all invertible" : "not all invertible") + ", " +
                    (sc.all_injective ? "all injective" : "not all injective"));
        rows.push_back({{"name", b->name},
                        {"source", b->source},
                        {"target", b->target},
                        {"injective", c.injective},
                        {"surjective", c.surjective},
                        {"isomorphism", c.isomorphism},
                        {"open_sets", sc.opens},
                        {"sections_injective", sc.all_injective},
                        {"sections_invertible", sc.all_invertible}});
    }
    rep.data["morphisms"] = rows;
    return rep.passed() ? kExitPass : kExitFail;
}

int cmd_glue(Session& ses) {
    Report& rep = ses.report();
    const SheafDocument& doc = ses.doc();
    const Options& opt = ses.options();
    const SheafBlock& block = ses.chosen_sheaf();
    std::vector<const SectionBlock*> chosen;
    if (!opt.sections.empty()) {
        for (const auto& n : opt.sections) {
            try {
                chosen.push_back(&doc.section(n));
            } catch (const InvalidArgument& e) {
                throw InputError("sections", e.what());
            }
        }
    } else {
        for (const auto& sec : doc.sections) {
            if (sec.sheaf == block.name) chosen.push_back(&sec);
        }
    }
    if (chosen.empty()) throw InputError("sections", "no [section] blocks to glue");
    const auto s = ses.sheaf(block, false);
    if (!s) return kExitFail;

    std::vector<OpenSet> cover;
    std::vector<Section> locals;
    for (const SectionBlock* b : chosen) {
        if (b->sheaf != block.name) {
            throw InputError("sections", "section '" + b->name + "' lives in a different sheaf");
        }
        std::string spec;
        for (auto x : b->open) spec += (spec.empty() ? "" : ",") + s->base().name(x);
        cover.push_back(ses.open_set(*s, spec, "section " + b->name));
        try {
            locals.push_back(build_section(*s, *b));
        } catch (const InvalidArgument& e) {
            rep.add("section " + b->name, false, e.what());
            return kExitFail;
        }
    }
    rep.add("local sections", true, std::to_string(locals.size()) + " local sections are compatible");
    try {
        const Section glued = glue(*s, cover, locals);
        rep.add("overlaps", true, "local sections agree on every overlap");
        const SectionSpace sp = sections_over(*s, glued.open);
        rep.data["open"] = names(s->base(), glued.open.members());
        rep.data["section"] = section_json(s->base(), glued);
        rep.data["coordinates"] = to_json(sp.coordinates(glued));
    } catch (const GluingError& e) {
        rep.add("overlaps", false, e.what());
        rep.data["witness"] = e.element();
        return kExitFail;
    }
    return kExitPass;
}

int dispatch(Session& ses) {
    const std::string& c = ses.options().command;
    if (c == "check") return cmd_check(ses);
    if (c == "sections") return cmd_sections(ses);
    if (c == "stalk") return cmd_stalk(ses);
    if (c == "quotient") return cmd_quotient(ses);
    if (c == "morphism") return cmd_morphism(ses);
    if (c == "glue") return cmd_glue(ses);
    // normalize
    ses.report().data["document"] = format_document(ses.doc(), ses.options().field);
    return kExitPass;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options opt;
    CLI::App app{"Cellular sheaves on finite posets: sections, stalks, sheaf axioms and morphisms.",
                 "sheafcli"};
    app.fallthrough();
    app.require_subcommand(1);
    app.add_option("--field", opt.field_text, "Scalars: q (rationals) or fp:<prime>; overrides the document");
    app.add_option("--seed", opt.seed, "Seed for sampled covers")->capture_default_str();
    app.add_option("--max-elements", opt.max_elements, "Refuse to enumerate open sets of larger posets")
        ->capture_default_str();
    app.add_flag("--json", opt.json, "Machine-readable report");

    const auto with_file = [&](const std::string& name, const std::string& help) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("file", opt.file, "Sheaf document")->required();
        return sub;
    };
    CLI::App* check = with_file("check", "Validate the document: functoriality, sheaf axioms, stalks, naturality");
    check->add_option("--sheaf", opt.sheaf, "Only this sheaf");
    check->add_option("--random-covers", opt.random_covers, "Sampled covers per open set")->capture_default_str();
    CLI::App* sections = with_file("sections", "Sections over an open set");
    sections->add_option("--open", opt.open, "star:x, element names or [open] names, comma separated")->required();
    sections->add_option("--sheaf", opt.sheaf, "Sheaf name");
    CLI::App* stalk = with_file("stalk", "Stalks against the direct limit over neighbourhoods");
    stalk->add_option("--point", opt.point, "Only this element");
    stalk->add_option("--sheaf", opt.sheaf, "Sheaf name");
    with_file("quotient", "Classes of mutually related elements and the quotient poset");
    CLI::App* morphism = with_file("morphism", "Naturality and classification of morphisms");
    morphism->add_option("--name", opt.morphism, "Only this morphism");
    CLI::App* glue_cmd = with_file("glue", "Glue local sections over the union of their open sets");
    glue_cmd->add_option("--sections", opt.sections, "Section names (default: all of the sheaf)")->delimiter(',');
    glue_cmd->add_option("--sheaf", opt.sheaf, "Sheaf name");
    with_file("normalize", "Print the document in canonical form");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitPass : kExitUsage;
    }
    opt.command = app.get_subcommands().front()->get_name();

    Report report;
    report.command = opt.command;
    report.seed = opt.seed;
    int code = kExitPass;
    try {
        if (!opt.field_text.empty()) {
            try {
                opt.field = Field::parse(opt.field_text);
            } catch (const InvalidArgument& e) {
                throw InputError("field", e.what());
            }
        }
        Session ses(opt, report);
        ses.load();
        code = dispatch(ses);
    } catch (const InputError& e) {
        report.add(e.check, false, e.what());
        err << "sheafcli: " << e.what() << "\n";
        code = kExitUsage;
    } catch (const InvalidArgument& e) {
        report.add("input", false, e.what());
        err << "sheafcli: " << e.what() << "\n";
        code = kExitUsage;
    }

    if (opt.json) {
        print_json(out, report);
    } else if (opt.command == "normalize" && code == kExitPass) {
        out << report.data["document"].get<std::string>();
    } else {
        print_text(out, report);
    }
    return code;
}

} // namespace cellsheaf::cli

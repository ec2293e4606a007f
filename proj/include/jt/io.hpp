/**
 * @file io.hpp
 * @brief Text formats: base specifiers, finite algebra tables, set-mapping
 * JSON, lattice DOT, and the JSON report envelope
 * {kind, inputs, result, witnesses, budgetExhausted}.
 */
#pragma once

#include "jt/algebra.hpp"
#include "jt/analysis.hpp"
#include "jt/combinat.hpp"
#include "jt/errors.hpp"
#include "jt/layers.hpp"
#include "jt/ordinal.hpp"
#include "jt/term.hpp"

#include <json.hpp>

#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace jt {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Base specifiers: "cantor", "layer0", "perm(<base>;(0 1)(2 5))"
// ---------------------------------------------------------------------------

[[nodiscard]] inline Permutation parse_cycles(std::string_view text)
{
    std::vector<std::vector<Natural>> cycles;
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == ',')) {
            ++i;
        }
    };
    skip();
    while (i < text.size()) {
        if (text[i] != '(') {
            throw ParseError("expected '(' in cycle list", i);
        }
        ++i;
        std::vector<Natural> cyc;
        for (;;) {
            skip();
            if (i >= text.size()) {
                throw ParseError("unterminated cycle", i);
            }
            if (text[i] == ')') {
                ++i;
                break;
            }
            const std::size_t start = i;
            while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
                ++i;
            }
            if (start == i) {
                throw ParseError("expected a natural in cycle", i);
            }
            cyc.push_back(detail::parse_natural(text.substr(start, i - start), text, start));
        }
        if (cyc.empty()) {
            throw ParseError("empty cycle", i);
        }
        cycles.push_back(std::move(cyc));
        skip();
    }
    return Permutation(cycles);
}

[[nodiscard]] inline AlgebraHandle parse_base(std::string_view spec)
{
    while (!spec.empty() && spec.front() == ' ') {
        spec.remove_prefix(1);
    }
    while (!spec.empty() && spec.back() == ' ') {
        spec.remove_suffix(1);
    }
    if (spec == "cantor") {
        return base_cantor();
    }
    if (spec == "layer0") {
        return base_layer0();
    }
    if (spec.starts_with("perm(") && spec.ends_with(")")) {
        const std::string_view body = spec.substr(5, spec.size() - 6);
        int depth = 0;
        for (std::size_t i = 0; i < body.size(); ++i) {
            if (body[i] == '(') {
                ++depth;
            } else if (body[i] == ')') {
                --depth;
            } else if (body[i] == ';' && depth == 0) {
                return base_permuted(parse_base(body.substr(0, i)), parse_cycles(body.substr(i + 1)));
            }
        }
        throw ParseError("perm(...) needs '<base>;<cycles>'", 5);
    }
    throw ParseError("unknown base '" + std::string(spec) + "' (expected cantor, layer0 or perm(...))", 0);
}

// ---------------------------------------------------------------------------
// Finite algebras: "size n", then "op arity=a" and n^(a-1) rows of n values
// ---------------------------------------------------------------------------

[[nodiscard]] inline FinAlgebra read_fin_algebra(std::istream& in)
{
    FinAlgebra f;
    std::string line;
    std::size_t lineno = 0;
    bool have_size = false;
    std::vector<std::uint32_t>* table = nullptr;
    std::size_t expect = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word)) {
            continue;
        }
        if (word == "size") {
            if (have_size || !(ls >> f.size)) {
                throw ParseError("bad size line", lineno);
            }
            if (f.size > FinAlgebra::kMaxSize) {
                throw InvalidInput("finite algebras are limited to " + std::to_string(FinAlgebra::kMaxSize) +
                                   " elements");
            }
            have_size = true;
            continue;
        }
        if (word == "op") {
            std::string ar;
            if (!have_size || !(ls >> ar) || !ar.starts_with("arity=")) {
                throw ParseError("expected 'op arity=a' after a size line", lineno);
            }
            if (table != nullptr && table->size() != expect) {
                throw ParseError("previous operation table is incomplete", lineno);
            }
            Operation op;
            op.arity = std::stoul(ar.substr(6));
            expect = 1;
            for (std::size_t a = 0; a < op.arity; ++a) {
                expect *= f.size;
            }
            f.operations.push_back(std::move(op));
            table = &f.operations.back().table;
            continue;
        }
        if (table == nullptr) {
            throw ParseError("table row before any 'op' line", lineno);
        }
        std::istringstream row(line);
        long long v = 0;
        while (row >> v) {
            if (v < 0) {
                throw ParseError("negative table entry", lineno);
            }
            table->push_back(static_cast<std::uint32_t>(v));
        }
        if (!row.eof()) {
            throw ParseError("non-numeric table entry", lineno);
        }
    }
    if (!have_size) {
        throw ParseError("missing size line", lineno);
    }
    f.validate();
    return f;
}

[[nodiscard]] inline std::string write_fin_algebra(const FinAlgebra& f)
{
    std::ostringstream out;
    out << "size " << f.size << "\n";
    for (const auto& op : f.operations) {
        out << "op arity=" << op.arity << "\n";
        const std::size_t width = op.arity == 0 ? 1 : f.size;
        for (std::size_t i = 0; i < op.table.size(); ++i) {
            out << op.table[i] << ((i + 1) % width == 0 ? "\n" : " ");
        }
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Set-mappings as {size, images}
// ---------------------------------------------------------------------------

[[nodiscard]] inline SetMapping setmap_from_json(const Json& j)
{
    SetMapping f;
    f.size = j.at("size").get<std::size_t>();
    f.images = j.at("images").get<std::vector<std::vector<std::size_t>>>();
    f.validate();
    return f;
}

[[nodiscard]] inline Json setmap_to_json(const SetMapping& f)
{
    return Json{{"size", f.size}, {"images", f.images}};
}

// ---------------------------------------------------------------------------
// Lattices as DOT Hasse diagrams
// ---------------------------------------------------------------------------

[[nodiscard]] inline std::string lattice_dot(const std::vector<Subset>& lattice)
{
    std::ostringstream out;
    out << "digraph subalgebras {\n  rankdir=BT;\n";
    for (std::size_t i = 0; i < lattice.size(); ++i) {
        out << "  n" << i << " [label=\"" << show_subset(lattice[i]) << "\"];\n";
    }
    for (std::size_t i = 0; i < lattice.size(); ++i) {
        for (std::size_t j = 0; j < lattice.size(); ++j) {
            const Subset a = lattice[i];
            const Subset b = lattice[j];
            if (a == b || !subset_of(a, b)) {
                continue;
            }
            bool cover = true;
            for (Subset c : lattice) {
                if (c != a && c != b && subset_of(a, c) && subset_of(c, b)) {
                    cover = false;
                    break;
                }
            }
            if (cover) {
                out << "  n" << i << " -> n" << j << ";\n";
            }
        }
    }
    out << "}\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

[[nodiscard]] inline Json make_report(std::string kind, Json inputs, Json result, Json witnesses = Json::array(),
                                      bool budget_exhausted = false)
{
    Json r;
    r["kind"] = std::move(kind);
    r["inputs"] = std::move(inputs);
    r["result"] = std::move(result);
    r["witnesses"] = witnesses.is_array() ? std::move(witnesses) : Json::array({std::move(witnesses)});
    r["budgetExhausted"] = budget_exhausted;
    return r;
}

[[nodiscard]] inline Json ordinals_json(const std::vector<Ordinal>& xs)
{
    Json a = Json::array();
    for (const auto& x : xs) {
        a.push_back(format_ordinal(x));
    }
    return a;
}

[[nodiscard]] inline Json subset_json(Subset s)
{
    return Json(members(s));
}

[[nodiscard]] inline Json to_json(const ClosureReport& c)
{
    return Json{{"found", ordinals_json(c.found)},
                {"foundCount", c.found.size()},
                {"frontierCount", c.frontier_size},
                {"frontierSample", ordinals_json(c.frontier_sample)},
                {"generated", c.generated},
                {"saturated", c.saturated},
                {"predicted", c.predicted_text()}};
}

[[nodiscard]] inline Json to_json(const GeneratorWord& g)
{
    return Json{{"word", g.word},
                {"from", format_ordinal(g.from)},
                {"to", format_ordinal(g.to)},
                {"trace", ordinals_json(g.trace)},
                {"fromPattern", g.from_pattern}};
}

[[nodiscard]] inline Json to_json(const CoverageReport& c)
{
    Json hits = Json::array();
    for (const auto& [z, n] : c.first_hit) {
        hits.push_back(Json{{"element", format_ordinal(z)}, {"n", n}});
    }
    return Json{{"g", format_ordinal(c.g)},
                {"mode", c.mode == CoverageMode::A ? "A" : "B"},
                {"nmax", c.nmax},
                {"coveredCount", c.first_hit.size()},
                {"complete", c.complete()},
                {"largest", format_ordinal(c.largest)},
                {"missing", ordinals_json(c.missing)},
                {"hits", std::move(hits)}};
}

[[nodiscard]] inline Json to_json(const DescentTrace& d)
{
    return Json{{"g", format_ordinal(d.g)},
                {"descent", ordinals_json(d.descent)},
                {"largestRight", format_ordinal(d.largest_right)},
                {"unreachable", format_ordinal(d.unreachable)},
                {"descentDecreasing", d.descent_decreasing},
                {"boundHolds", d.bound_holds}};
}

[[nodiscard]] inline Json to_json(const TypeBCertificate& c)
{
    Json j{{"sigma", c.sigma.str()}, {"topLayer", c.top_layer}, {"verified", c.verified()}};
    if (c.kind == TypeBCertificate::Kind::generator) {
        j["certificate"] = "Generator";
        j["g"] = format_ordinal(limit_of(c.top_layer));
    } else {
        j["certificate"] = "Refutation";
        j["argument"] = "every r(l^n(w*c+m)) is at most w*c+m+2, so w*c+m+4 is not of that form; "
                        "elements below w*c lie in the proper subalgebra w*c";
    }
    return j;
}

[[nodiscard]] inline Json to_json(const JonssonReport& r)
{
    Json fails = Json::array();
    for (const auto& e : r.entries) {
        if (!e.ok) {
            fails.push_back(Json{{"alpha", format_ordinal(e.alpha)},
                                 {"missingCount", e.missing_count},
                                 {"missing", ordinals_json(e.missing)},
                                 {"budgetExhausted", e.budget_exhausted}});
        }
    }
    return Json{{"passed", r.passed()}, {"checked", r.entries.size()}, {"failures", std::move(fails)}};
}

[[nodiscard]] inline Json to_json(const NonIsoCertificate& c)
{
    return Json{{"sigma1", c.sigma1.str()},
                {"sigma2", c.sigma2.str()},
                {"firstDifference", c.first_difference},
                {"letters", std::string{to_char(c.letter1), to_char(c.letter2)}},
                {"prefixAAB", true},
                {"tailsFreeOfAA", true}};
}

[[nodiscard]] inline Json to_json(const DistributivityWitness& w)
{
    Json ex = Json::array();
    for (const auto& e : w.extracted) {
        ex.push_back(Json{{"word", e.word}, {"side", to_string(e.side)}, {"slot", print_term(e.slot_term)}});
    }
    return Json{{"p", print_term(w.p)},
                {"normal", print_term(w.normal)},
                {"s", print_term(w.s)},
                {"extracted", std::move(ex)},
                {"rebuilt", print_term(w.rebuilt())}};
}

[[nodiscard]] inline Json to_json(const AxiomReport& a)
{
    return Json{{"passed", a.passed},
                {"checks", a.checks},
                {"identity", a.identity},
                {"witness", ordinals_json(a.witness)},
                {"detail", a.detail}};
}

[[nodiscard]] inline Json to_json(const ProperSubalgebraWitness& w)
{
    return Json{{"setMapping", setmap_to_json(w.setmap)},
                {"freeSet", w.free_set},
                {"xi", w.xi},
                {"S", subset_json(w.S)},
                {"generated", subset_json(w.generated)},
                {"proper", w.proper},
                {"avoidsGap", w.avoids_gap}};
}

[[nodiscard]] inline Json to_json(const UnionCover& u)
{
    Json fam = Json::array();
    for (const auto& m : u.family) {
        fam.push_back(Json{{"class", m.class_index},
                           {"indices", m.indices},
                           {"generated", subset_json(m.generated)},
                           {"proper", m.proper},
                           {"dropTail", m.from_drop_tail}});
    }
    return Json{{"setMapping", setmap_to_json(u.setmap)},
                {"classes", u.classes},
                {"family", std::move(fam)},
                {"covers", u.covers},
                {"allProper", u.all_proper},
                {"uncovered", subset_json(u.uncovered)},
                {"degenerate", u.degenerate}};
}

} // namespace jt

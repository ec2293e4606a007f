// Command-line front end: one subcommand per analysis, reports on stdout,
// diagnostics on stderr. Exit status 0 on success, 1 when an analysis fails
// or refutes its claim, 2 on malformed input.

#include "jt/jt.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace {

using jt::Json;

struct UsageError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct Globals
{
    std::string base = "cantor";
    std::string sigma;
    std::string bound;
    std::size_t budget = jt::kDefaultClosureBudget;
    std::uint64_t seed = 1;
    std::string format;
    std::string in;
};

std::shared_ptr<const jt::LayeredAlgebra> build(const Globals& g)
{
    return jt::build_sigma(jt::parse_base(g.base), jt::SigmaWord::parse(g.sigma));
}

Json algebra_inputs(const Globals& g)
{
    return Json{{"base", g.base}, {"sigma", g.sigma}};
}

jt::Window window_or(const Globals& g, jt::Window fallback)
{
    return g.bound.empty() ? fallback : jt::Window::from_bound(jt::parse_ordinal(g.bound));
}

std::string read_input(const Globals& g)
{
    if (g.in.empty()) {
        throw UsageError("--in FILE is required");
    }
    if (g.in == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream f(g.in);
    if (!f) {
        throw UsageError("cannot open " + g.in);
    }
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string scalar_text(const Json& v)
{
    if (v.is_string()) {
        return v.get<std::string>();
    }
    if (v.is_array()) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) {
            s += (i ? ", " : "") + scalar_text(v[i]);
        }
        return "[" + s + "]";
    }
    if (v.is_object()) {
        return v.dump();
    }
    return v.dump();
}

void render_text(const Json& v, const std::string& prefix, std::ostream& out)
{
    for (const auto& [key, val] : v.items()) {
        const std::string name = prefix.empty() ? key : prefix + "." + key;
        if (val.is_object()) {
            render_text(val, name, out);
        } else {
            out << name << ": " << scalar_text(val) << "\n";
        }
    }
}

/// Writes the report in the requested format. `text` overrides the generic
/// key/value rendering; `csv` is used only when the command is tabular.
void emit(const Globals& g, const std::string& fallback, const Json& report, const std::string& text = {},
          const std::string& csv = {}, const std::string& dot = {})
{
    const std::string fmt = g.format.empty() ? fallback : g.format;
    if (fmt == "json") {
        std::cout << report.dump(2) << "\n";
    } else if (fmt == "text") {
        if (!text.empty()) {
            std::cout << text;
        } else {
            render_text(report.at("result"), "", std::cout);
        }
    } else if (fmt == "csv") {
        if (csv.empty()) {
            throw UsageError("this command has no csv form");
        }
        std::cout << csv;
    } else {
        if (dot.empty()) {
            throw UsageError("this command has no dot form");
        }
        std::cout << dot;
    }
}

std::set<std::string> split_names(const std::string& s)
{
    std::set<std::string> out;
    std::string cur;
    for (char ch : s + ",") {
        if (ch == ',' || ch == ' ') {
            if (!cur.empty()) {
                out.insert(cur);
            }
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    return out;
}

std::vector<std::size_t> parse_order(const std::string& s)
{
    std::vector<std::size_t> out;
    std::string cur;
    for (char ch : s + ",") {
        if (ch == ',' || ch == ' ') {
            if (!cur.empty()) {
                out.push_back(jt::detail::parse_natural(cur, s, 0));
            }
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

int cmd_normalize(const Globals& g, const std::string& text)
{
    const jt::Term t = jt::parse_term(text);
    const jt::Term n = jt::normalize(t);
    const jt::MuDecomposition d = jt::is_mu(n);
    Json unaries = Json::array();
    for (const auto& u : d.unaries) {
        unaries.push_back(Json{{"word", jt::show_word(u.word)}, {"variable", u.variable}});
    }
    const Json report = jt::make_report(
        "normalize", Json{{"term", text}},
        Json{{"normal", jt::print_term(n)}, {"skeleton", jt::print_term(d.skeleton)}, {"unaries", unaries}});
    emit(g, "text", report, jt::print_term(n) + "\n");
    return 0;
}

int cmd_equiv(const Globals& g, const std::string& a, const std::string& b)
{
    const jt::Term ta = jt::parse_term(a);
    const jt::Term tb = jt::parse_term(b);
    const bool eq = jt::sigma_equiv(ta, tb);
    const Json report = jt::make_report("equiv", Json{{"term1", a}, {"term2", b}},
                                        Json{{"equivalent", eq},
                                             {"normal1", jt::print_term(jt::normalize(ta))},
                                             {"normal2", jt::print_term(jt::normalize(tb))}});
    emit(g, "text", report, std::string(eq ? "true" : "false") + "\n");
    return 0;
}

int cmd_eval(const Globals& g, const std::string& text, const std::vector<std::string>& bindings)
{
    const auto alg = build(g);
    const jt::Term t = jt::parse_term(text);
    jt::Env<jt::Ordinal> env;
    Json env_json = Json::object();
    for (const auto& b : bindings) {
        const auto eq = b.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw UsageError("binding '" + b + "' must look like name=value");
        }
        const jt::Ordinal v = jt::parse_ordinal(b.substr(eq + 1));
        env[b.substr(0, eq)] = v;
        env_json[b.substr(0, eq)] = jt::format_ordinal(v);
    }
    const jt::Ordinal v = jt::evaluate(t, env, static_cast<const jt::JtAlgebra&>(*alg));
    Json inputs = algebra_inputs(g);
    inputs["term"] = text;
    inputs["env"] = env_json;
    const Json report = jt::make_report("eval", inputs, Json{{"value", jt::format_ordinal(v)}});
    emit(g, "text", report, jt::format_ordinal(v) + "\n");
    return 0;
}

int cmd_witness(const Globals& g, const std::string& text, const std::string& xs, const std::string& ys,
                std::size_t samples)
{
    const auto alg = build(g);
    const jt::Term p = jt::parse_term(text);
    const jt::VariableSplit split{split_names(xs), split_names(ys)};
    const jt::DistributivityWitness w = jt::distributivity_witness(p, split);

    bool ok = jt::sigma_equiv(w.rebuilt(), p);
    for (const auto& e : w.extracted) {
        ok = ok && jt::sigma_equiv(jt::apply_word(e.word, w.normal), e.slot_term);
    }

    std::mt19937_64 rng(g.seed);
    std::uniform_int_distribution<jt::Natural> offset(0, 15);
    std::uniform_int_distribution<jt::Natural> block(0, alg->max_block());
    const auto vars = jt::variables(p);
    std::size_t evaluated = 0;
    std::size_t beyond = 0;
    Json failures = Json::array();
    for (std::size_t s = 0; s < samples; ++s) {
        jt::Env<jt::Ordinal> env;
        jt::Env<jt::Ordinal> other;
        for (const auto& v : vars) {
            env[v] = {block(rng), offset(rng)};
            other[v] = {block(rng), offset(rng)};
        }
        try {
            if (auto f = jt::check_witness(w, split, env, other, static_cast<const jt::JtAlgebra&>(*alg))) {
                failures.push_back(*f);
                ok = false;
            }
            ++evaluated;
        } catch (const jt::BeyondHorizon&) {
            ++beyond;
        }
    }

    Json inputs = algebra_inputs(g);
    inputs["term"] = text;
    inputs["x"] = split.x;
    inputs["y"] = split.y;
    inputs["samples"] = samples;
    inputs["seed"] = g.seed;
    Json result = jt::to_json(w);
    result["identitiesHold"] = ok;
    result["evaluated"] = evaluated;
    result["skippedBeyondHorizon"] = beyond;
    const Json report = jt::make_report("witness", inputs, result, failures);

    std::ostringstream txt;
    txt << "s = " << jt::print_term(w.s) << "\n";
    for (std::size_t i = 0; i < w.extracted.size(); ++i) {
        const auto& e = w.extracted[i];
        txt << "t" << (i + 1) << " = " << jt::show_word(e.word) << " (" << jt::to_string(e.side) << "-side, "
            << jt::print_term(e.slot_term) << ")\n";
    }
    txt << "identities " << (ok ? "hold" : "FAIL") << " on " << evaluated << " samples\n";
    emit(g, "json", report, txt.str());
    return ok ? 0 : 1;
}

int cmd_build_table(const Globals& g, jt::Natural layer, jt::Natural count)
{
    const auto alg = build(g);
    std::vector<jt::LayerRow> rows;
    if (layer == 0) {
        for (jt::Natural n = 0; n < count; ++n) {
            rows.push_back({jt::finite(n), alg->left(jt::finite(n)), alg->right(jt::finite(n))});
        }
    } else {
        rows = jt::describe_layer(*alg, layer, count);
    }
    Json arr = Json::array();
    std::ostringstream csv;
    std::ostringstream txt;
    csv << "z,l,r\n";
    for (const auto& r : rows) {
        const auto z = jt::format_ordinal(r.z);
        const auto l = jt::format_ordinal(r.l);
        const auto rr = jt::format_ordinal(r.r);
        arr.push_back(Json{{"z", z}, {"l", l}, {"r", rr}});
        csv << z << "," << l << "," << rr << "\n";
        txt << z << "\tl=" << l << "\tr=" << rr << "\n";
    }
    Json inputs = algebra_inputs(g);
    inputs["layer"] = layer;
    inputs["count"] = count;
    emit(g, "csv", jt::make_report("build-table", inputs, Json{{"rows", arr}}), txt.str(), csv.str());
    return 0;
}

int cmd_closure(const Globals& g, const std::vector<std::string>& elems)
{
    const auto alg = build(g);
    std::vector<jt::Ordinal> S;
    for (const auto& e : elems) {
        S.push_back(jt::parse_ordinal(e));
    }
    const jt::Window w = window_or(g, {alg->max_block(), 16});
    const jt::ClosureReport rep = jt::closure_bounded(*alg, S, w, g.budget);
    Json inputs = algebra_inputs(g);
    inputs["S"] = jt::ordinals_json(S);
    inputs["bound"] = jt::format_ordinal({w.max_block, w.width});
    inputs["budget"] = g.budget;
    std::ostringstream csv;
    csv << "element\n";
    for (const auto& z : rep.found) {
        csv << jt::format_ordinal(z) << "\n";
    }
    emit(g, "json", jt::make_report("closure", inputs, jt::to_json(rep), Json::array(), rep.budget_exhausted), {},
         csv.str());
    return 0;
}

int cmd_genword(const Globals& g, const std::string& from, const std::string& to)
{
    const auto alg = build(g);
    const jt::GeneratorWord gw = jt::generator_word(*alg, jt::parse_ordinal(from), jt::parse_ordinal(to));
    Json inputs = algebra_inputs(g);
    inputs["from"] = from;
    inputs["to"] = to;
    Json result = jt::to_json(gw);
    result["word"] = jt::show_word(gw.word);
    emit(g, "json", jt::make_report("genword", inputs, result), jt::show_word(gw.word) + "\n");
    return 0;
}

int cmd_coverage(const Globals& g, const std::string& gen, const std::string& mode, jt::Natural nmax)
{
    const auto alg = build(g);
    const jt::Window w = window_or(g, {alg->max_block(), 16});
    const auto m = mode == "A" ? jt::CoverageMode::A : jt::CoverageMode::B;
    const jt::CoverageReport rep = jt::coverage_check(*alg, jt::parse_ordinal(gen), m, w, nmax);
    Json inputs = algebra_inputs(g);
    inputs["g"] = gen;
    inputs["mode"] = mode;
    inputs["bound"] = jt::format_ordinal({w.max_block, w.width});
    inputs["nmax"] = nmax;
    std::ostringstream csv;
    csv << "element,n\n";
    for (const auto& [z, n] : rep.first_hit) {
        csv << jt::format_ordinal(z) << "," << n << "\n";
    }
    emit(g, "json", jt::make_report("coverage", inputs, jt::to_json(rep)), {}, csv.str());
    return 0;
}

int cmd_certify_typeb(const Globals& g, jt::Natural nmax)
{
    const auto alg = build(g);
    const jt::Window w = window_or(g, {alg->max_block(), 16});
    const jt::TypeBCertificate cert = jt::typeB_certificate(*alg, w.width, nmax);
    Json witnesses = Json::array();
    std::ostringstream txt;
    if (cert.kind == jt::TypeBCertificate::Kind::generator) {
        witnesses.push_back(jt::to_json(*cert.coverage));
        txt << "Generator(" << jt::format_ordinal(jt::limit_of(cert.top_layer)) << ")";
    } else {
        for (const auto& d : cert.candidates) {
            witnesses.push_back(jt::to_json(d));
        }
        txt << "Refutation(" << cert.candidates.size() << " candidates from "
            << jt::format_ordinal(jt::limit_of(cert.top_layer)) << ")";
    }
    txt << (cert.verified() ? "" : " UNVERIFIED") << "\n";
    Json inputs = algebra_inputs(g);
    inputs["width"] = w.width;
    inputs["nmax"] = nmax;
    emit(g, "json", jt::make_report("certify-typeb", inputs, jt::to_json(cert), witnesses), txt.str());
    return cert.verified() ? 0 : 1;
}

int cmd_certify_noniso(const Globals& g, const std::string& a, const std::string& b)
{
    const jt::NonIsoCertificate cert = jt::noniso_certificate(jt::SigmaWord::parse(a), jt::SigmaWord::parse(b));
    const Json report = jt::make_report("certify-noniso", Json{{"sigma1", a}, {"sigma2", b}}, jt::to_json(cert));
    emit(g, "json", report, "firstDifference=" + std::to_string(cert.first_difference) + "\n");
    return 0;
}

int cmd_encode(const Globals& g, const std::string& bits)
{
    const jt::SigmaWord w = jt::encode_delta(jt::parse_bits(bits));
    const jt::WordConstraints c = jt::check_word_constraints(w);
    const Json report = jt::make_report("encode", Json{{"delta", bits}},
                                        Json{{"sigma", w.str()}, {"prefixAAB", c.prefix_ok}, {"tailsFreeOfAA", !c.aa_at}});
    emit(g, "text", report, w.str() + "\n");
    return 0;
}

int cmd_jonsson(const Globals& g)
{
    const auto alg = build(g);
    const jt::Window w = window_or(g, {alg->max_block(), 16});
    const jt::JonssonReport rep = jt::jonsson_check(*alg, w, g.budget);
    Json inputs = algebra_inputs(g);
    inputs["bound"] = jt::format_ordinal({w.max_block, w.width});
    inputs["budget"] = g.budget;
    const Json result = jt::to_json(rep);
    emit(g, "json", jt::make_report("jonsson", inputs, result, result.at("failures"), rep.any_budget_exhausted()));
    return rep.passed() ? 0 : 1;
}

int cmd_fin_lattice(const Globals& g)
{
    std::istringstream in(read_input(g));
    const jt::FinAlgebra f = jt::read_fin_algebra(in);
    const auto lattice = jt::fin_subalgebras(f);
    const auto dist = jt::distributive_check(f, lattice);
    Json members = Json::array();
    std::ostringstream txt;
    for (auto s : lattice) {
        members.push_back(jt::subset_json(s));
        txt << jt::show_subset(s) << "\n";
    }
    Json result{{"size", f.size}, {"count", lattice.size()}, {"members", members}, {"distributive", dist.distributive}};
    Json witnesses = Json::array();
    if (dist.witness) {
        const auto& [h, k, m] = *dist.witness;
        witnesses.push_back(Json{{"H", jt::subset_json(h)}, {"K", jt::subset_json(k)}, {"M", jt::subset_json(m)}});
    }
    txt << "distributive: " << (dist.distributive ? "true" : "false") << "\n";
    emit(g, "json", jt::make_report("fin-lattice", Json{{"in", g.in}}, result, witnesses), txt.str(), {},
         jt::lattice_dot(lattice));
    return 0;
}

int cmd_freeset(const Globals& g)
{
    const jt::SetMapping f = jt::setmap_from_json(Json::parse(read_input(g)));
    Json result = Json::object();
    if (f.size <= jt::kMaxExactFree) {
        result["maxFree"] = jt::max_free(f);
    }
    result["greedyFree"] = jt::greedy_free(f);
    const auto classes = jt::partition_free(f);
    result["partition"] = classes;
    result["classCount"] = classes.size();
    std::ostringstream csv;
    csv << "element,class\n";
    std::vector<std::size_t> cls(f.size);
    for (std::size_t c = 0; c < classes.size(); ++c) {
        for (auto x : classes[c]) {
            cls[x] = c;
        }
    }
    for (std::size_t x = 0; x < f.size; ++x) {
        csv << x << "," << cls[x] << "\n";
    }
    emit(g, "json", jt::make_report("freeset", Json{{"in", g.in}}, result), {}, csv.str());
    return 0;
}

int cmd_pipeline(const Globals& g, const std::string& order_text, const std::string& mode)
{
    std::istringstream in(read_input(g));
    const jt::FinAlgebra f = jt::read_fin_algebra(in);
    std::vector<std::size_t> order = parse_order(order_text);
    if (order.empty()) {
        for (std::size_t i = 0; i < f.size; ++i) {
            order.push_back(i);
        }
    }
    const jt::SubChain sc = jt::make_chain(f, order);
    Json chain = Json::array();
    for (auto s : sc.chain) {
        chain.push_back(jt::subset_json(s));
    }
    Json inputs{{"in", g.in}, {"order", order}, {"mode", mode}};
    if (mode == "union") {
        const jt::UnionCover u = jt::union_cover_pipeline(sc);
        Json result = jt::to_json(u);
        result["chain"] = chain;
        result["enumeration"] = sc.enumeration;
        emit(g, "json", jt::make_report("pipeline", inputs, result));
        return u.covers && u.all_proper ? 0 : 1;
    }
    const jt::ProperSubalgebraWitness w = jt::proper_subalgebra_pipeline(sc);
    Json result = jt::to_json(w);
    result["chain"] = chain;
    result["enumeration"] = sc.enumeration;
    emit(g, "json", jt::make_report("pipeline", inputs, result));
    return w.proper && w.avoids_gap ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Layered Jonsson-Tarski algebras: terms, layers, certificates and free-set pipelines"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--base", g.base, "cantor | layer0 | perm(<base>;<cycles>)");
    app.add_option("--sigma", g.sigma, "layer word over {A,B}");
    app.add_option("--bound", g.bound, "window bound w*k+n: blocks 0..k, offsets below n");
    app.add_option("--budget", g.budget, "closure budget (generated elements)");
    app.add_option("--seed", g.seed, "random seed");
    app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"json", "csv", "dot", "text"}));
    app.add_option("--in", g.in, "input file ('-' for stdin)");

    std::string t1;
    std::string t2;
    std::vector<std::string> list;
    std::string xs;
    std::string ys;
    std::size_t samples = 200;
    jt::Natural layer = 1;
    jt::Natural count = 16;
    std::string mode = "A";
    jt::Natural nmax = jt::kCoverageNmax;
    std::string order;
    std::string pmode = "proper";
    std::function<int()> run;

    auto* normalize = app.add_subcommand("normalize", "normal form of a term");
    normalize->add_option("term", t1)->required();
    normalize->callback([&] { run = [&] { return cmd_normalize(g, t1); }; });

    auto* equiv = app.add_subcommand("equiv", "decide equivalence of two terms");
    equiv->add_option("term1", t1)->required();
    equiv->add_option("term2", t2)->required();
    equiv->callback([&] { run = [&] { return cmd_equiv(g, t1, t2); }; });

    auto* eval = app.add_subcommand("eval", "evaluate a term, e.g. eval \"x*y\" x=1 y=w+2");
    eval->add_option("term", t1)->required();
    eval->add_option("bindings", list);
    eval->callback([&] { run = [&] { return cmd_eval(g, t1, list); }; });

    auto* witness = app.add_subcommand("witness", "distributivity witness for a term and a variable split");
    witness->add_option("term", t1)->required();
    witness->add_option("--x", xs, "x-side variables, comma separated");
    witness->add_option("--y", ys, "y-side variables, comma separated");
    witness->add_option("--samples", samples, "random evaluation samples");
    witness->callback([&] { run = [&] { return cmd_witness(g, t1, xs, ys, samples); }; });

    auto* table = app.add_subcommand("build-table", "rows (z, l z, r z) of one layer (0 = base)");
    table->add_option("--layer", layer);
    table->add_option("--count", count);
    table->callback([&] { run = [&] { return cmd_build_table(g, layer, count); }; });

    auto* closure = app.add_subcommand("closure", "bounded closure of a set of elements");
    closure->add_option("elements", list);
    closure->callback([&] { run = [&] { return cmd_closure(g, list); }; });

    auto* genword = app.add_subcommand("genword", "word over {l,r} leading from one element to another");
    genword->add_option("from", t1)->required();
    genword->add_option("to", t2)->required();
    genword->callback([&] { run = [&] { return cmd_genword(g, t1, t2); }; });

    auto* coverage = app.add_subcommand("coverage", "elements l(r^n g) (mode A) or r(l^n g) (mode B)");
    coverage->add_option("g", t1)->required();
    coverage->add_option("--mode", mode)->check(CLI::IsMember({"A", "B"}));
    coverage->add_option("--nmax", nmax);
    coverage->callback([&] { run = [&] { return cmd_coverage(g, t1, mode, nmax); }; });

    auto* typeb = app.add_subcommand("certify-typeb", "type B generator or refutation for the top layer");
    typeb->add_option("--nmax", nmax);
    typeb->callback([&] { run = [&] { return cmd_certify_typeb(g, nmax); }; });

    auto* noniso = app.add_subcommand("certify-noniso", "non-isomorphism certificate for two layer words");
    noniso->add_option("sigma1", t1)->required();
    noniso->add_option("sigma2", t2)->required();
    noniso->callback([&] { run = [&] { return cmd_certify_noniso(g, t1, t2); }; });

    auto* encode = app.add_subcommand("encode", "layer word for a bit string");
    encode->add_option("bits", t1);
    encode->callback([&] { run = [&] { return cmd_encode(g, t1); }; });

    auto* jonsson = app.add_subcommand("jonsson", "every element >= w generates the window below its limit");
    jonsson->callback([&] { run = [&] { return cmd_jonsson(g); }; });

    auto* lattice = app.add_subcommand("fin-lattice", "subalgebra lattice of a finite algebra (--in)");
    lattice->callback([&] { run = [&] { return cmd_fin_lattice(g); }; });

    auto* freeset = app.add_subcommand("freeset", "free sets of a set-mapping (--in JSON)");
    freeset->callback([&] { run = [&] { return cmd_freeset(g); }; });

    auto* pipeline = app.add_subcommand("pipeline", "proper subalgebra or union cover from a chain (--in)");
    pipeline->add_option("--order", order, "generation order, comma separated (default 0..n-1)");
    pipeline->add_option("--mode", pmode)->check(CLI::IsMember({"proper", "union"}));
    pipeline->callback([&] { run = [&] { return cmd_pipeline(g, order, pmode); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        return run();
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const jt::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const jt::InvalidInput& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const jt::UnboundVariable& e) {
        std::cerr << "unbound variable: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "invalid JSON: " << e.what() << "\n";
        return 2;
    } catch (const jt::Error& e) {
        std::cerr << "analysis failed: " << e.what() << "\n";
        return 1;
    }
}

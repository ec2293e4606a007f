#include "jt/io.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

using jt::Json;

namespace {

jt::FinAlgebra read(const std::string& text)
{
    std::istringstream in(text);
    return jt::read_fin_algebra(in);
}

} // namespace

TEST(FinAlgebraFormat, ReadsCommentsAndTables)
{
    const auto f = read("# a chain\nsize 3\nop arity=1\n0 0 1   # i -> i-1\n");
    EXPECT_EQ(f.size, 3U);
    ASSERT_EQ(f.operations.size(), 1U);
    EXPECT_EQ(f.operations[0].table, (std::vector<std::uint32_t>{0, 0, 1}));

    const auto g = read("size 2\nop arity=2\n0 1\n1 0\nop arity=0\n1\n");
    ASSERT_EQ(g.operations.size(), 2U);
    EXPECT_EQ(g.operations[0].table.size(), 4U);
    EXPECT_EQ(g.operations[1].table, (std::vector<std::uint32_t>{1}));
    EXPECT_TRUE(read("size 4\n").operations.empty());
}

TEST(FinAlgebraFormat, RoundTrip)
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + trial % 7;
        std::uniform_int_distribution<std::uint32_t> v(0, static_cast<std::uint32_t>(n - 1));
        jt::FinAlgebra f{n, {}};
        for (std::size_t arity = 0; arity <= static_cast<std::size_t>(trial % 4); ++arity) {
            jt::Operation op{arity, {}};
            std::size_t cells = 1;
            for (std::size_t a = 0; a < arity; ++a) {
                cells *= n;
            }
            for (std::size_t i = 0; i < cells; ++i) {
                op.table.push_back(v(rng));
            }
            f.operations.push_back(op);
        }
        const auto text = jt::write_fin_algebra(f);
        const auto back = read(text);
        ASSERT_EQ(back.size, f.size);
        ASSERT_EQ(back.operations.size(), f.operations.size());
        for (std::size_t i = 0; i < f.operations.size(); ++i) {
            ASSERT_EQ(back.operations[i].arity, f.operations[i].arity);
            ASSERT_EQ(back.operations[i].table, f.operations[i].table);
        }
        ASSERT_EQ(jt::write_fin_algebra(back), text);
    }
}

TEST(FinAlgebraFormat, Errors)
{
    EXPECT_THROW((void)read(""), jt::ParseError);
    EXPECT_THROW((void)read("op arity=1\n0\n"), jt::ParseError);
    EXPECT_THROW((void)read("size 2\n0 1\n"), jt::ParseError);
    EXPECT_THROW((void)read("size 2\nop arity=1\n0 x\n"), jt::ParseError);
    EXPECT_THROW((void)read("size 2\nop arity=1\n0 -1\n"), jt::ParseError);
    EXPECT_THROW((void)read("size 2\nop arity=1\n0\nop arity=1\n0 1\n"), jt::ParseError);
    EXPECT_THROW((void)read("size 2\nsize 3\n"), jt::ParseError);
    EXPECT_THROW((void)read("size 2\nop arity=1\n0 2\n"), jt::InvalidInput);
    EXPECT_THROW((void)read("size 2\nop arity=2\n0 1\n"), jt::InvalidInput);
    EXPECT_THROW((void)read("size 65\n"), jt::InvalidInput);
    try {
        (void)read("size 2\nop arity=1\n0 1\n\nbogus\n");
        FAIL();
    } catch (const jt::ParseError& e) {
        EXPECT_NE(std::string(e.what()).find('5'), std::string::npos) << e.what();
    }
}

TEST(SetMapJson, RoundTripAndValidation)
{
    const jt::SetMapping f{3, {{1, 2}, {}, {0}}};
    const Json j = jt::setmap_to_json(f);
    EXPECT_EQ(j.dump(), R"({"size":3,"images":[[1,2],[],[0]]})");
    const auto back = jt::setmap_from_json(j);
    EXPECT_EQ(back.size, 3U);
    EXPECT_EQ(back.images, f.images);
    EXPECT_THROW((void)jt::setmap_from_json(Json::parse(R"({"size":2,"images":[[0],[]]})")), jt::InvalidInput);
    EXPECT_THROW((void)jt::setmap_from_json(Json::parse(R"({"size":2,"images":[[5],[]]})")), jt::InvalidInput);
    EXPECT_THROW((void)jt::setmap_from_json(Json::parse(R"({"size":3,"images":[[],[]]})")), jt::InvalidInput);
    EXPECT_THROW((void)jt::setmap_from_json(Json::parse(R"({"images":[]})")), Json::exception);
}

TEST(LatticeDot, HasseEdgesOnly)
{
    // chain {} < {0} < {0,1}: two covering edges, no transitive one
    const auto dot = jt::lattice_dot({0b0, 0b1, 0b11});
    EXPECT_NE(dot.find("rankdir=BT"), std::string::npos);
    EXPECT_NE(dot.find("n0 -> n1;"), std::string::npos);
    EXPECT_NE(dot.find("n1 -> n2;"), std::string::npos);
    EXPECT_EQ(dot.find("n0 -> n2;"), std::string::npos);
    EXPECT_NE(dot.find("label=\"{0,1}\""), std::string::npos);
    EXPECT_NE(dot.find("label=\"{}\""), std::string::npos);

    // Boolean square: four covers
    const auto sq = jt::lattice_dot({0b00, 0b01, 0b10, 0b11});
    std::size_t edges = 0;
    for (auto p = sq.find("->"); p != std::string::npos; p = sq.find("->", p + 1)) {
        ++edges;
    }
    EXPECT_EQ(edges, 4U);
}

TEST(Reports, EnvelopeKeysInOrder)
{
    const Json r = jt::make_report("closure", Json{{"base", "cantor"}}, Json{{"x", 1}});
    std::vector<std::string> keys;
    for (const auto& [k, v] : r.items()) {
        keys.push_back(k);
    }
    EXPECT_EQ(keys, (std::vector<std::string>{"kind", "inputs", "result", "witnesses", "budgetExhausted"}));
    EXPECT_TRUE(r["witnesses"].is_array());
    EXPECT_FALSE(r["budgetExhausted"].get<bool>());
    const Json single = jt::make_report("k", Json::object(), Json::object(), Json{{"a", 1}}, true);
    EXPECT_EQ(single["witnesses"].size(), 1U);
    EXPECT_TRUE(single["budgetExhausted"].get<bool>());
}

TEST(Reports, OrdinalsAndSubsets)
{
    EXPECT_EQ(jt::ordinals_json({{0, 3}, {1, 0}, {2, 7}}).dump(), R"(["3","w*1","w*2+7"])");
    EXPECT_EQ(jt::subset_json(0b1011).dump(), "[0,1,3]");
}

TEST(Reports, TypeBCertificates)
{
    const auto ab = jt::build_sigma(jt::base_cantor(), jt::SigmaWord::parse("AB"));
    const Json g = jt::to_json(jt::typeB_certificate(*ab, 16));
    EXPECT_EQ(g["certificate"], "Generator");
    EXPECT_EQ(g["g"], "w*2");
    EXPECT_TRUE(g["verified"].get<bool>());
    const auto aa = jt::build_sigma(jt::base_cantor(), jt::SigmaWord::parse("AA"));
    const Json r = jt::to_json(jt::typeB_certificate(*aa, 16));
    EXPECT_EQ(r["certificate"], "Refutation");
    EXPECT_FALSE(r.contains("g"));
    EXPECT_TRUE(r["argument"].is_string());
}

TEST(Reports, PipelinesSerialise)
{
    const auto sc = jt::make_chain(jt::FinAlgebra{3, {}}, {0, 1, 2});
    const Json u = jt::to_json(jt::union_cover_pipeline(sc));
    EXPECT_TRUE(u["covers"].get<bool>());
    EXPECT_EQ(u["family"].size(), 3U);
    EXPECT_EQ(u["family"][2]["indices"].dump(), "[1,2]");
    const Json p = jt::to_json(jt::proper_subalgebra_pipeline(sc));
    EXPECT_EQ(p["freeSet"].dump(), "[0,1,2]");
    EXPECT_EQ(p["xi"], 2);
    EXPECT_EQ(p["generated"].dump(), "[0,1]");
    EXPECT_TRUE(p["avoidsGap"].get<bool>());
}

TEST(Reports, DeterministicDumps)
{
    const auto alg = jt::build_sigma(jt::base_layer0(), jt::SigmaWord::parse("AB"));
    const auto once = jt::to_json(jt::closure_bounded(*alg, {{1, 3}}, jt::Window{1, 16})).dump();
    const auto twice = jt::to_json(jt::closure_bounded(*alg, {{1, 3}}, jt::Window{1, 16})).dump();
    EXPECT_EQ(once, twice);
}

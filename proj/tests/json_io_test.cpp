#include "sizeramsey/json_io.hpp"
#include "sizeramsey/pipeline.hpp"

#include <gtest/gtest.h>

#include "test_support.hpp"

namespace sizeramsey {
namespace {

std::string pointer_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const ConfigError& e) {
        return e.pointer();
    }
    return "<no error>";
}

Json toy_step() {
    return Json::parse(R"({"k":1,"s":2,"r":1,"t":2,"n":4,"T":6,"Tprime":4,
        "host":{"a":2,"b":100,"c":"1/2","eps":"1/2","t":1,"n":8,"p":"9/10","sample_tolerance":"1/2"},
        "lower":{"a":2,"b":100,"c":"1/2","eps":"1/2","n":4}})");
}

TEST(ConfigReader, RationalForms) {
    Json j = Json::parse(R"({"i":3,"f":0.1,"s":"2/6","d":"0.25","bad":"x/y","neg":-4,"obj":{}})");
    ConfigReader r(j);
    EXPECT_EQ(r.rational("i"), Rational(3));
    EXPECT_EQ(r.rational("f"), Rational(1, 10));
    EXPECT_EQ(r.rational("s"), Rational(1, 3));
    EXPECT_EQ(r.rational("d"), Rational(1, 4));
    EXPECT_EQ(r.rational("neg"), Rational(-4));
    EXPECT_EQ(pointer_of([&] { r.rational("bad"); }), "/bad");
    EXPECT_EQ(pointer_of([&] { r.rational("obj"); }), "/obj");
    EXPECT_EQ(pointer_of([&] { r.rational("missing"); }), "/missing");
    EXPECT_EQ(r.rational("missing", Rational(7)), Rational(7));
}

TEST(ParseRational, DecimalAndLeadingZeroForms) {
    EXPECT_EQ(parse_rational("0.05"), Rational(1, 20));
    EXPECT_EQ(parse_rational("0.25"), Rational(1, 4));
    EXPECT_EQ(parse_rational("010"), Rational(10));
    EXPECT_EQ(parse_rational("007/08"), Rational(7, 8));
    EXPECT_EQ(parse_rational("1e-3"), Rational(1, 1000));
    EXPECT_EQ(parse_rational("-0.5e1"), Rational(-5));
    EXPECT_EQ(parse_rational("00"), Rational(0));
    EXPECT_THROW(parse_rational("."), ParseError);
    EXPECT_THROW(parse_rational("1/0"), ParseError);
    EXPECT_THROW(parse_rational("0x10"), ParseError);
}

TEST(ConfigReader, IntegersAndChoices) {
    Json j = Json::parse(R"({"zero":0,"neg":-1,"f":1.5,"flag":"yes","mode":"fast","nested":{"deep":{"x":"q"}}})");
    ConfigReader r(j);
    EXPECT_EQ(r.integer("zero"), 0u);
    EXPECT_EQ(pointer_of([&] { r.positive("zero"); }), "/zero");
    EXPECT_EQ(pointer_of([&] { r.integer("neg"); }), "/neg");
    EXPECT_EQ(pointer_of([&] { r.integer("f"); }), "/f");
    EXPECT_EQ(pointer_of([&] { r.boolean("flag", false); }), "/flag");
    EXPECT_EQ(pointer_of([&] { r.choice("mode", "toy", {"toy", "paper"}); }), "/mode");
    EXPECT_EQ(pointer_of([&] { r.child("nested").child("deep").integer("x"); }), "/nested/deep/x");
    EXPECT_EQ(pointer_of([&] { ConfigReader bad(Json::array()); }), "/");
}

TEST(ConfigReader, ClassParamsPointers) {
    Json good = Json::parse(R"({"a":3,"b":950400,"c":1,"eps":"1/20","n":10})");
    ClassPParams p = read_class_params(ConfigReader(good));
    EXPECT_EQ(p.t, 1u);
    EXPECT_EQ(p.n, 10u);
    EXPECT_EQ(p.quad.eps, Rational(1, 20));

    Json j = good;
    j.erase("n");
    EXPECT_EQ(pointer_of([&] { read_class_params(ConfigReader(j)); }), "/n");
    j = good;
    j["a"] = -1;
    EXPECT_EQ(pointer_of([&] { read_class_params(ConfigReader(j)); }), "/a");
    j = good;
    j["eps"] = "oops";
    EXPECT_EQ(pointer_of([&] { read_class_params(ConfigReader(j)); }), "/eps");
}

TEST(PipelineConfig, MalformedFieldsNamed) {
    struct Case {
        std::string pointer;
        std::function<void(Json&)> mutate;
    };
    std::vector<Case> cases{
        {"/k", [](Json& j) { j["k"] = 0; }},
        {"/s", [](Json& j) { j["s"] = "two"; }},
        {"/Tprime", [](Json& j) { j["Tprime"] = 7; }},
        {"/host/c", [](Json& j) { j["host"]["c"] = "1/0"; }},
        {"/host/mode", [](Json& j) { j["host"]["mode"] = "huge"; }},
        {"/lower/eps", [](Json& j) { j["lower"].erase("eps"); }},
        {"/colouring/kind", [](Json& j) { j["colouring"] = {{"kind", "rainbow"}}; }},
        {"/colouring/colour", [](Json& j) { j["colouring"] = {{"colour", 3}}; }},
        {"/budgets/partition_mode", [](Json& j) { j["budgets"] = {{"partition_mode", "guess"}}; }},
        {"/budgets/arrow", [](Json& j) { j["budgets"] = {{"arrow", 0}}; }},
        {"/sparsify_p", [](Json& j) { j["sparsify_p"] = "3/2"; }},
        {"/schemaVersion", [](Json& j) { j["schemaVersion"] = 9; }},
        {"/continue_on_hypothesis_failure", [](Json& j) { j["continue_on_hypothesis_failure"] = 1; }},
    };
    for (const auto& c : cases) {
        Json j = toy_step();
        c.mutate(j);
        EXPECT_EQ(pointer_of([&] { read_pipeline_config(j); }), c.pointer) << j.dump();
    }
}

TEST(PipelineConfig, RoundTripAndSeedOverride) {
    PipelineConfig a = read_pipeline_config(toy_step());
    EXPECT_EQ(a.host_power(), 2u);
    Json emitted = to_json(a);
    PipelineConfig b = read_pipeline_config(emitted);
    EXPECT_EQ(dump(to_json(b)), dump(emitted));

    PipelineConfig c = read_pipeline_config(emitted, 99);
    EXPECT_EQ(c.seed, 99u);
    EXPECT_EQ(c.seeds.lll, PipelineSeeds::from_master(99).lll);
    EXPECT_EQ(c.host_generation.seed, c.seeds.generation);
    EXPECT_NE(c.seeds.lll, a.seeds.lll);
}

TEST(JsonIo, GraphRoundTrip) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Graph g = testing::random_graph(1 + seed % 13, 0.4, seed);
        EXPECT_EQ(graph_from_json(to_json(g)), g);
    }
    EXPECT_THROW(graph_from_json(Json::parse(R"({"vertices":2,"edges":[[0,2]]})")), std::exception);
    EXPECT_THROW(graph_from_json(Json::parse(R"({"vertices":2,"edges":[[1,1]]})")), std::exception);
    EXPECT_THROW(graph_from_json(Json::parse(R"({"edges":[]})")), ParseError);
}

TEST(JsonIo, RationalsAreStrings) {
    EXPECT_EQ(to_json(Rational(-3, 6)).get<std::string>(), "-1/2");
    EXPECT_EQ(to_json(Rational(4)).get<std::string>(), "4");
    EXPECT_EQ(dump(Json{{"x", 1}}), "{\n  \"x\": 1\n}\n");
}

TEST(JsonIo, EmbeddingShape) {
    Graph p = path_graph(2);
    Graph host = path_graph(3);
    Embedding e{p, host, {2, 1}, std::nullopt};
    Json j = to_json(e);
    EXPECT_EQ(j["hostVertices"], 3);
    EXPECT_EQ(j["map"]["0"], 2);
    EXPECT_EQ(j["map"]["1"], 1);
    EXPECT_TRUE(j["valid"].get<bool>());
}

}  // namespace
}  // namespace sizeramsey

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "framediag/error.hpp"
#include "framediag/json_io.hpp"
#include "framediag/realize.hpp"

namespace fd = framediag;

namespace {
fd::SequenceSpec parse(const std::string& text) { return fd::parse_sequence_spec(text); }

std::string field_of(const std::string& text) {
    try {
        (void)parse(text);
    } catch (const fd::spec_parse_error& e) {
        return e.field();
    }
    return "<no error>";
}
}  // namespace

TEST(SequenceJson, ScaledBasisInverseIndex) {
    const auto s = parse(R"({"kind":"scaled_basis","weight":{"rule":"inverse_index"}})");
    const auto r = fd::realize(s, 4);
    for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(r.columns()(k, k), fd::complex(1.0 / static_cast<double>(k + 1)));
}

TEST(SequenceJson, RoundTripsEveryKind) {
    const std::vector<std::string> docs = {
        R"({"kind":"explicit","columns":[[[1,0],[0,2]],[[0.5,-1],3]]})",
        R"({"kind":"scaled_basis","weight":{"rule":"geometric","ratio":[0,0.5]}})",
        R"({"kind":"scaled_basis","weight":{"rule":"table","values":[1,[2,1],3,4,[0,5]]}})",
        R"({"kind":"scaled_basis","weight":{"rule":"index"}})",
        R"({"kind":"pattern","prefix":[[{"index":1,"coeff":0.5}]],"cycle":[{"start":2,"step":1,"weight":{"rule":"constant","value":[1,0]},"offset":0}]})",
        R"({"kind":"paper_example","id":"ex-hs","role":"g"})",
        R"({"kind":"random_riesz","d":3,"seed":4,"role":"g"})",
        R"({"kind":"random_frame","d":3,"n":6,"seed":9})",
    };
    for (const auto& doc : docs) {
        const auto s = parse(doc);
        const auto again = fd::spec_from_json(fd::to_json(s));
        EXPECT_EQ(fd::to_json(again), fd::to_json(s)) << doc;
        EXPECT_EQ(fd::realize(again, 5).columns(), fd::realize(s, 5).columns()) << doc;
    }
}

TEST(SequenceJson, SingleRowColumnsAreValid) {
    // Two columns of one entry each: a 1-dimensional sequence (1, i).
    const auto r = fd::realize(parse(R"({"kind":"explicit","columns":[[[1,0]],[[0,1]]]})"), 2);
    EXPECT_EQ(r.dim(), 1u);
    EXPECT_EQ(r.columns()(0, 1), fd::complex(0.0, 1.0));
}

TEST(SequenceJson, RaggedColumnsRejectedWithField) {
    try {
        (void)parse(R"({"kind":"explicit","columns":[[[1,0],[0,0]],[[0,1]]]})");
        FAIL();
    } catch (const fd::spec_parse_error& e) {
        EXPECT_EQ(e.field(), "/columns/1");
        EXPECT_NE(std::string(e.what()).find("column length mismatch"), std::string::npos);
    }
}

TEST(SequenceJson, ErrorsCarryFieldPaths) {
    EXPECT_EQ(field_of(R"({"kind":"nope"})"), "/kind");
    EXPECT_EQ(field_of(R"({"weight":{}})"), "");
    EXPECT_EQ(field_of(R"({"kind":"explicit","columns":[[[1,2,3]]]})"), "/columns/0/0");
    EXPECT_EQ(field_of(R"({"kind":"explicit","columns":[["x"]]})"), "/columns/0/0");
    EXPECT_EQ(field_of(R"({"kind":"scaled_basis","weight":{"rule":"cubic"}})"), "/weight/rule");
    EXPECT_EQ(field_of(R"({"kind":"scaled_basis","weight":{"rule":"geometric"}})"), "/weight");
    EXPECT_EQ(field_of(R"({"kind":"random_frame","d":4,"n":2,"seed":1})"), "/n");
    EXPECT_EQ(field_of(R"({"kind":"random_riesz","d":0,"seed":1})"), "/d");
    EXPECT_EQ(field_of(R"({"kind":"paper_example","id":"ex-x"})"), "/id");
    EXPECT_EQ(field_of(R"({"kind":"paper_example","id":"ex-hs","role":"h"})"), "/role");
    EXPECT_EQ(field_of(R"({"kind":"pattern","cycle":[{"step":1}]})"), "/cycle/0");
    EXPECT_EQ(field_of(R"({"kind":"pattern","prefix":[[{"index":0,"coeff":1}]]})"), "/prefix/0/0/index");
}

TEST(SequenceJson, SyntaxErrorReportsLine) {
    try {
        (void)parse("{\n  \"kind\": \"explicit\",\n  \"columns\": [[1, 2],\n}\n");
        FAIL();
    } catch (const fd::spec_parse_error& e) {
        EXPECT_EQ(e.line(), 4u);
    }
}

TEST(SequenceJson, LoadFile) {
    const auto path = std::filesystem::temp_directory_path() / "framediag_io_test.json";
    {
        std::ofstream out(path);
        out << R"({"kind":"random_frame","d":3,"n":6,"seed":9})";
    }
    const auto s = fd::load_sequence_file(path.string());
    EXPECT_EQ(fd::kind_name(s), "random_frame");
    std::filesystem::remove(path);
    EXPECT_THROW(fd::load_sequence_file(path.string()), fd::invalid_spec);
}

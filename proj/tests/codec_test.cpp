#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "rcc/codec.hpp"
#include "rcc/diagram.hpp"
#include "support/catalog.hpp"
#include "support/random_diagrams.hpp"

using namespace rcc;

TEST(ParsePd, Curl) {
    const auto code = parse_pd("X(1,2,2,1)");
    ASSERT_EQ(code.size(), 1u);
    EXPECT_EQ(code.crossings[0].under_in(), 1);
    EXPECT_EQ(code.crossings[0].under_out(), 2);
}

TEST(ParsePd, Hopf) {
    const auto code = parse_pd("X(1,4,2,3) X(3,2,4,1)");
    ASSERT_EQ(code.size(), 2u);
    const auto d = build_diagram(code);
    EXPECT_EQ(d.component_count(), 2);
    EXPECT_EQ(d.face_count(), 4);
}

TEST(ParsePd, EmptyIsUnknot) {
    EXPECT_TRUE(parse_pd("").empty());
    EXPECT_TRUE(parse_pd("   \n").empty());
    EXPECT_TRUE(parse_pd("PD[]").empty());
}

TEST(ParsePd, WrappedAndCommaSeparated) {
    const auto plain = parse_pd("X(1,4,2,3) X(3,2,4,1)");
    EXPECT_EQ(parse_pd("PD[X(1,4,2,3), X(3,2,4,1)]"), plain);
    EXPECT_EQ(parse_pd("X(1,4,2,3),X(3,2,4,1)"), plain);
    EXPECT_EQ(parse_pd("  X( 1 , 4,2 ,3 )\n\tX(3,2,4,1)  "), plain);
}

TEST(ParsePd, RepeatedLabelsRejected) {
    EXPECT_THROW(parse_pd("X(1,4,2,3) X(1,4,2,3)"), LabelError);
}

TEST(ParsePd, LabelSetMustBeContiguous) {
    EXPECT_THROW(parse_pd("X(1,2,2,5)"), LabelError);
    EXPECT_THROW(parse_pd("X(0,1,1,2)"), LabelError);
    EXPECT_THROW(parse_pd("X(1,1,1,2)"), LabelError);
}

TEST(ParsePd, DegenerateSlots) {
    EXPECT_THROW(parse_pd("X(1,2,1,2)"), DegenerateError);
    EXPECT_THROW(parse_pd("X(2,1,2,1)"), DegenerateError);
}

TEST(ParsePd, SyntaxErrorsCarryOffset) {
    try {
        parse_pd("X(1,2,2)");
        FAIL() << "accepted a short term";
    } catch (const SyntaxError& e) {
        EXPECT_EQ(e.offset(), 7u);
    }
    EXPECT_THROW(parse_pd("Y(1,2,2,1)"), SyntaxError);
    EXPECT_THROW(parse_pd("X(1,2,2,1) junk"), SyntaxError);
    EXPECT_THROW(parse_pd("PD[X(1,2,2,1)"), SyntaxError);
    EXPECT_THROW(parse_pd("X(1,a,2,1)"), SyntaxError);
}

TEST(ParsePd, OverDirectionFollowsUnderStrands) {
    // Trefoil: every label enters exactly one crossing.
    const auto code = parse_pd("X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)");
    std::vector<int> in_count(7, 0);
    for (const auto& x : code.crossings) {
        ++in_count[static_cast<std::size_t>(x.under_in())];
        ++in_count[static_cast<std::size_t>(x.over_in())];
    }
    for (int label = 1; label <= 6; ++label)
        EXPECT_EQ(in_count[static_cast<std::size_t>(label)], 1) << label;
}

TEST(ParsePd, ComponentThatNeverPassesUnder) {
    // Labels 3 and 4 only ever cross over; label 3 runs from crossing 0 to 1.
    const auto code = parse_pd("X(1,3,2,4) X(2,3,1,4)");
    EXPECT_EQ(code.crossings[0].over_in(), 4);
    EXPECT_EQ(code.crossings[0].over_out(), 3);
    EXPECT_EQ(code.crossings[1].over_in(), 3);
    const auto d = build_diagram(code);
    EXPECT_EQ(d.component_count(), 2);
    EXPECT_EQ(d.face_count(), 4);
    EXPECT_TRUE(is_proper(d));
}

TEST(SerializePd, Curl) { EXPECT_EQ(serialize_pd(parse_pd("X(1,2,2,1)")), "X(1,2,2,1)"); }

TEST(SerializePd, HopfRoundTrip) {
    const auto code = parse_pd("X(1,4,2,3) X(3,2,4,1)");
    EXPECT_EQ(parse_pd(serialize_pd(code)), code);
}

TEST(SerializePd, CanonicalOnWhitespaceVariants) {
    const std::string canon = "X(1,4,2,3) X(3,2,4,1)";
    for (const char* text : {"X(1,4,2,3) X(3,2,4,1)", "PD[X(1,4,2,3),X(3,2,4,1)]", " X(1, 4, 2, 3)\n,X(3,2,4,1) "}) {
        EXPECT_EQ(serialize_pd(parse_pd(text)), canon);
        EXPECT_EQ(serialize_pd(parse_pd(serialize_pd(parse_pd(text)))), canon);
    }
}

TEST(SerializePd, EmptyCode) { EXPECT_EQ(serialize_pd(parse_pd("")), ""); }

TEST(CodecProperty, RoundTripOnRandomCodes) {
    std::mt19937_64 rng(20240611);
    for (int t = 0; t < 1000; ++t) {
        const auto text = serialize_pd(rcc::testing::random_code(rng, 12));
        const auto once = parse_pd(text);
        const auto twice = parse_pd(serialize_pd(once));
        ASSERT_EQ(once, twice) << text;
        ASSERT_EQ(serialize_pd(twice), text);
    }
}

TEST(CodecProperty, RoundTripThroughDiagram) {
    std::mt19937_64 rng(99);
    for (int t = 0; t < 300; ++t) {
        const auto d = build_diagram(rcc::testing::random_code(rng, 10));
        const auto code = to_code(d);
        EXPECT_EQ(parse_pd(serialize_pd(code)), code);
        const auto back = build_diagram(code);
        EXPECT_EQ(writhe(back), writhe(d));
        EXPECT_EQ(back.component_count(), d.component_count());
    }
}

TEST(LoadCatalog, EmptyStream) {
    std::istringstream in("");
    const auto cat = load_catalog(in);
    EXPECT_TRUE(cat.entries.empty());
    EXPECT_TRUE(cat.diagnostics.empty());
}

TEST(LoadCatalog, OrderPreserved) {
    std::istringstream in(R"jsonl({"name": "a", "pd": "X(1,2,2,1)"}
{"name": "b", "pd": ""}

{"name": "c", "pd": "X(1,4,2,3) X(3,2,4,1)"}
)jsonl");
    const auto cat = load_catalog(in);
    ASSERT_EQ(cat.entries.size(), 3u);
    EXPECT_EQ(cat.entries[0].name, "a");
    EXPECT_EQ(cat.entries[1].name, "b");
    EXPECT_EQ(cat.entries[2].name, "c");
    EXPECT_EQ(cat.entries[2].line, 4u);
    EXPECT_TRUE(cat.diagnostics.empty());
}

TEST(LoadCatalog, MalformedLineReportedWithPosition) {
    std::istringstream in("{\"name\": \"a\", \"pd\": \"X(1,2,2,1)\"}\n{\"name\": \"b\", \"pd\": \n");
    const auto cat = load_catalog(in);
    ASSERT_EQ(cat.entries.size(), 1u);
    ASSERT_EQ(cat.diagnostics.size(), 1u);
    EXPECT_EQ(cat.diagnostics[0].line, 2u);
}

TEST(LoadCatalog, BadRecordsCollected) {
    std::istringstream in(R"jsonl({"name": "no pd"}
{"name": "bad labels", "pd": "X(1,4,2,3) X(1,4,2,3)"}
{"name": 3, "pd": "X(1,2,2,1)"}
["not", "an", "object"]
{"name": "ok", "pd": "X(1,2,2,1)"}
)jsonl");
    const auto cat = load_catalog(in);
    ASSERT_EQ(cat.entries.size(), 1u);
    EXPECT_EQ(cat.entries[0].line, 5u);
    ASSERT_EQ(cat.diagnostics.size(), 4u);
    for (std::size_t i = 0; i < 4; ++i)
        EXPECT_EQ(cat.diagnostics[i].line, i + 1);
}

TEST(LoadCatalog, MissingFile) { EXPECT_THROW(load_catalog(std::filesystem::path("/nonexistent/catalog.jsonl")), IoError); }

TEST(LoadCatalog, BundledCatalogIsClean) {
    const auto& cat = rcc::testing::bundled_catalog();
    EXPECT_TRUE(cat.diagnostics.empty());
    for (const char* name : {"unknot", "curl", "trefoil", "trefoil_mirror", "figure_eight", "hopf", "torus_2_4",
                             "torus_2_6", "whitehead", "borromean", "torus_3_3"})
        EXPECT_NO_THROW(rcc::testing::catalog_code(name)) << name;
    for (const auto& e : cat.entries) {
        EXPECT_NO_THROW(build_diagram(e.code)) << e.name;
        EXPECT_EQ(parse_pd(serialize_pd(e.code)), e.code) << e.name;
    }
}

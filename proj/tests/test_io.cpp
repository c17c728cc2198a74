#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cmrep/io.hpp"
#include "cmrep/report.hpp"

using namespace cmrep;

namespace {

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string error_of(const std::string& text) {
    try {
        JsonDocument doc(text, "input");
        if (document_kind(doc) == "graph") graph_from_json(doc);
        else if (document_kind(doc) == "ribbon") ribbon_from_json(doc);
        else cm_from_json(doc);
    } catch (const ValidationError& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST(Io, BundledCorpusMatchesDataDirectory) {
    std::size_t seen = 0;
    for (const auto& entry : std::filesystem::directory_iterator(CMREP_DATA_DIR)) {
        if (entry.path().extension() != ".json") continue;
        const auto name = entry.path().stem().string();
        auto it = fixtures::all().find(name);
        ASSERT_NE(it, fixtures::all().end()) << name;
        EXPECT_EQ(Json::parse(read_file(entry.path())), Json::parse(it->second)) << name;
        ++seen;
    }
    EXPECT_EQ(seen, fixtures::all().size());
}

TEST(Io, EveryBundledInputLoads) {
    for (const auto& [name, text] : fixtures::all()) {
        auto doc = load_document(name);
        const auto kind = document_kind(doc);
        if (kind == "graph")
            EXPECT_NO_THROW(graph_from_json(doc)) << name;
        else
            EXPECT_NO_THROW(ribbon_from_json(doc)) << name;
    }
    EXPECT_EQ(load_document("gw_example").source(), "bundled:gw_two_line");
}

TEST(Io, UnknownInputListsBundledNames) {
    try {
        load_document("does-not-exist");
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("bubble"), std::string::npos);
    }
}

TEST(Io, ErrorsNameKeyAndLine) {
    const std::string text =
        "{\n"
        "  \"kind\": \"graph\",\n"
        "  \"vertices\": [\"a\", \"b\"],\n"
        "  \"lines\": [\n"
        "    {\"id\": 1, \"from\": \"a\", \"to\": \"b\", \"mass2\": \"x/2\"}\n"
        "  ]\n"
        "}\n";
    const auto msg = error_of(text);
    EXPECT_NE(msg.find("lines[0].mass2"), std::string::npos) << msg;
    EXPECT_NE(msg.find("line 5"), std::string::npos) << msg;
}

TEST(Io, MissingKeyPointsAtParent) {
    const std::string text =
        "{\n"
        "  \"kind\": \"ribbon\",\n"
        "  \"model\": \"GW\"\n"
        "}\n";
    const auto msg = error_of(text);
    EXPECT_NE(msg.find("missing required key"), std::string::npos) << msg;
}

TEST(Io, MalformedJson) {
    EXPECT_NE(error_of("{\"kind\": ").find("malformed JSON"), std::string::npos);
}

TEST(Io, GraphRoundTrip) {
    auto in = graph_from_json(load_document("triangle"));
    auto again = graph_from_json(JsonDocument(graph_to_json(in).dump(), "copy"));
    EXPECT_EQ(graph_to_json(in), graph_to_json(again));
}

TEST(Io, RibbonRoundTrip) {
    auto in = ribbon_from_json(load_document("gw_two_line"));
    auto again = ribbon_from_json(JsonDocument(ribbon_to_json(in).dump(), "copy"));
    EXPECT_EQ(ribbon_to_json(in), ribbon_to_json(again));
}

TEST(Io, CmRoundTripPreservesAnalysis) {
    for (const char* name : {"bubble", "gw_two_line", "lsz_two_line"}) {
        auto doc = load_document(name);
        CMRep cm = document_kind(doc) == "graph" ? build_cm(graph_from_json(doc).graph)
                                                 : build_cm(ribbon_from_json(doc).ribbon);
        CMRep back = cm_from_json(JsonDocument(dump(cm_to_json(cm)), "export"));
        EXPECT_EQ(cm_to_json(cm), cm_to_json(back)) << name;
        EXPECT_EQ(strip_report(cm).machine, strip_report(back).machine) << name;
        EXPECT_EQ(domain_report(cm, Rational(3, 2)).machine, domain_report(back, Rational(3, 2)).machine) << name;
        EXPECT_EQ(poles_report(cm, 2, -2, 6, 1).machine, poles_report(back, 2, -2, 6, 1).machine) << name;
    }
}

TEST(Io, CmImportRejectsRoleOrder) {
    auto cm = cm_to_json(build_cm(graph_from_json(load_document("bubble")).graph));
    std::swap(cm["variables"][0], cm["variables"][2]);
    const auto msg = error_of(cm.dump(2));
    EXPECT_NE(msg.find("ordered"), std::string::npos) << msg;
}

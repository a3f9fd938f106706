#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include "support/fixtures.hpp"
#include "tsrkit/testkit.hpp"
#include "tsrkit/textio.hpp"

using namespace tsrkit;
using testsupport::load_mixts;
using testsupport::load_tsr;
using testsupport::tsr_from_text;
namespace tk = tsrkit::testkit;

TEST_CASE("parses a minimal document") {
    SystemDoc doc = parse("kind tsr\nsystem x\nstates s0\ninitial s0\n");
    CHECK(doc.kind == DocKind::Tsr);
    CHECK(doc.name.text == "x");
    CHECK(doc.states.size() == 1);
    REQUIRE(doc.initial.has_value());
    CHECK(doc.initial->text == "s0");
}

TEST_CASE("comments, blank lines and repeated declaration lines are fine") {
    SystemDoc doc = parse(
        "# header comment\n"
        "kind tsr\n"
        "system x   # trailing comment\n"
        "\n"
        "actions a\n"
        "actions b\n"
        "states s0\n"
        "states s1\n"
        "initial s0\n"
        "trans s0 a s1  # edge\n");
    CHECK(doc.actions.size() == 2);
    CHECK(doc.states.size() == 2);
    CHECK(doc.edges.size() == 1);
}

TEST_CASE("parse errors carry the offending position") {
    try {
        parse("kind tsr\nsystem x\nstates s0\ninitial s0\ntrans s0 a\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.span().line == 5);
    }
    CHECK_THROWS_AS(parse(""), ParseError);
    CHECK_THROWS_AS(parse("kind dcr\nsystem x\n"), ParseError);
    CHECK_THROWS_AS(parse("system x\nkind tsr\n"), ParseError);
    CHECK_THROWS_AS(parse("kind tsr\nsystem x\nfoo bar\n"), ParseError);
    CHECK_THROWS_AS(parse("kind tsr\nsystem x\ninitial s0\ninitial s0\n"), ParseError);
    CHECK_THROWS_AS(parse("kind tsr\nsystem x\nstates \"s0\n"), ParseError);
    CHECK_THROWS_AS(parse("kind tsr\nsystem x\nstates \"s\\q\"\n"), ParseError);
    CHECK_THROWS_AS(parse("kind tsr\nsystem x\nstates s0!\n"), ParseError);
    CHECK_THROWS_AS(parse("kind tsr\nsystem x\nresponses s0 a\n"), ParseError);
}

TEST_CASE("edge keywords are kind-specific") {
    CHECK_THROWS_AS(parse("kind tsr\nsystem x\nstates s0\ninitial s0\nmay s0 a s0\n"),
                    ParseError);
    CHECK_THROWS_AS(parse("kind mixts\nsystem x\nstates s0\ninitial s0\ntrans s0 a s0\n"),
                    ParseError);
}

TEST_CASE("quoted names admit spaces, apostrophes and escapes") {
    Tsr t = tsr_from_text(
        "kind tsr\nsystem q\nactions \"don't trust\" \"with \\\"quote\\\"\"\n"
        "states s0 \"state one\"\ninitial s0\n"
        "responses s0 : \"don't trust\"\n"
        "trans s0 \"don't trust\" \"state one\"\n");
    CHECK(t.actions.find("don't trust").has_value());
    CHECK(t.actions.find("with \"quote\"").has_value());
    CHECK(t.states[1] == "state one");

    // Roundtrip through the canonical form keeps the exotic names.
    Tsr again = validate_tsr(parse(serialize(t)));
    CHECK(again == t);

    // Non-ASCII names ride along as quoted UTF-8.
    Tsr utf8 = tsr_from_text(
        "kind tsr\nsystem u\nactions \"给药\"\nstates s0\ninitial s0\n"
        "responses s0 : \"给药\"\ntrans s0 \"给药\" s0\n");
    CHECK(utf8.actions.find("给药").has_value());
    CHECK(validate_tsr(parse(serialize(utf8))) == utf8);
}

TEST_CASE("canonical serialization is stable and ordered") {
    Tsr ta = load_tsr("T_a.tsr");
    std::string canon = serialize(ta);
    CHECK(canon == serialize(validate_tsr(parse(canon))));
    // responses are listed lexicographically by action name
    Tsr tb = load_tsr("T_b.tsr");
    CHECK(serialize(tb).find("responses s1 : give sign") != std::string::npos);
    // transitions sorted by (source, action) declaration order
    std::string a_text = serialize(ta);
    CHECK(a_text.find("trans s1 prescribe s1") < a_text.find("trans s1 sign s2"));
    CHECK(a_text.find("trans s1 sign s2") < a_text.find("trans s1 cancel s4"));
}

TEST_CASE("document-level serialization reproduces content") {
    for (const char* name : {"T_a.tsr", "T_b.tsr", "T_c.tsr", "CE_left.tsr", "CE_right.tsr"}) {
        SystemDoc doc = to_doc(load_tsr(name));
        CHECK(same_content(parse(serialize(doc)), doc));
    }
    SystemDoc med = to_doc(load_mixts("M_med.mixts"));
    CHECK(same_content(parse(serialize(med)), med));
}

TEST_CASE("the fixture files are already canonical up to comments") {
    MixTs med = load_mixts("M_med.mixts");
    CHECK(validate_mixts(parse(serialize(med))) == med);
}

TEST_CASE("roundtrip on random systems of both kinds") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Tsr t = tk::random_tsr(seed, {.states = 6, .actions = 4, .density = 0.4,
                                      .response_rate = 0.5});
        CHECK(validate_tsr(parse(serialize(t))) == t);
        MixTs m = tk::random_mixts(seed, {.states = 6, .actions = 4});
        CHECK(validate_mixts(parse(serialize(m))) == m);
    }
}

TEST_CASE("dot export annotates responses and styles mixed edges") {
    std::string ta = export_dot(load_tsr("T_a.tsr"));
    CHECK(ta.find("digraph \"T_a\"") != std::string::npos);
    CHECK(ta.find("\"s1\" [label=\"s1\\n□{give}\"]") != std::string::npos);
    CHECK(ta.find("\"s0\" -> \"s1\" [label=\"prescribe\"]") != std::string::npos);

    std::string med = export_dot(load_mixts("M_med.mixts"));
    CHECK(med.find("style=dashed") != std::string::npos);
    CHECK(med.find("style=solid") != std::string::npos);
    CHECK(med.find("\"s1\" -> \"s5\" [label=\"give\", style=solid]") != std::string::npos);
}

TEST_CASE("json export mirrors the validated structure") {
    using json = nlohmann::json;
    json ta = json::parse(export_json(load_tsr("T_a.tsr")));
    CHECK(ta["kind"] == "tsr");
    CHECK(ta["name"] == "T_a");
    CHECK(ta["actions"].size() == 5);
    CHECK(ta["states"].size() == 5);
    CHECK(ta["initial"] == "s0");
    CHECK(ta["responses"]["s1"] == json::array({"give"}));
    CHECK(ta["responses"]["s0"] == json::array());
    CHECK(ta["trans"].size() == 9);
    CHECK(ta["trans"][0]["from"] == "s0");
    CHECK(ta["trans"][0]["action"] == "prescribe");
    CHECK(ta["trans"][0]["to"] == "s1");

    json med = json::parse(export_json(load_mixts("M_med.mixts")));
    CHECK(med["kind"] == "mixts");
    CHECK(med["may"].size() == 9);
    CHECK(med["must"].size() == 3);
}

TEST_CASE("load_system dispatches on the document kind") {
    auto tsr = load_system(testsupport::fixture_path("T_a.tsr"));
    CHECK(std::holds_alternative<Tsr>(tsr));
    auto mix = load_system(testsupport::fixture_path("M_med.mixts"));
    CHECK(std::holds_alternative<MixTs>(mix));
    CHECK_THROWS_AS(load_system(testsupport::fixture_path("missing.tsr")), Error);
}

TEST_CASE("mangled documents fail with ParseError, never crash") {
    const std::string base = serialize(tsrkit::testkit::random_tsr(
        3, {.states = 5, .actions = 3, .density = 0.5, .response_rate = 0.4}));
    std::uint64_t x = 0x243f6a8885a308d3ULL;
    auto next = [&x] {
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        return x;
    };
    for (int round = 0; round < 500; ++round) {
        std::string text = base;
        for (int hits = static_cast<int>(next() % 4) + 1; hits > 0; --hits) {
            std::size_t pos = next() % text.size();
            char c = static_cast<char>(next() % 96 + 32);
            switch (next() % 3) {
                case 0: text[pos] = c; break;
                case 1: text.insert(pos, 1, c); break;
                default: text.erase(pos, 1); break;
            }
        }
        try {
            validate_tsr(parse(text));
        } catch (const ParseError&) {
        } catch (const ValidateError&) {
        }
    }
}

TEST_CASE("format_trace prints space-separated action names") {
    Tsr tb = load_tsr("T_b.tsr");
    Trace w{{*tb.actions.find("prescribe"), *tb.actions.find("sign")}};
    CHECK(format_trace(w, tb.actions) == "prescribe sign");
    CHECK(format_trace(Trace{}, tb.actions).empty());
}

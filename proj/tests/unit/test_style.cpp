#include <doctest.h>

#include "helpers.hpp"
#include "scribemeter/errors.hpp"
#include "scribemeter/style.hpp"

using namespace scribemeter;
using doctest::Approx;
using testutil::data_path;
using testutil::fixture_path;
using testutil::slurp;

namespace {

style_lexicons lexicons() {
    style_lexicons lex;
    lex.signposting = load_phrase_list(data_path("signposting.txt"));
    lex.hedging = load_phrase_list(data_path("hedging.txt"));
    return lex;
}

}  // namespace

TEST_CASE("abstract fixture: frozen word-rule values") {
    document doc{slurp(fixture_path("abstract.txt")), doc_kind::abstract};
    style_scores s = style_regex_metrics(doc, lexicons());

    CHECK(s.sentence_length == Approx(364.0 / 12.0));   // linguistic sentences
    CHECK(s.numbers_per100 == Approx(7.41758241758));
    CHECK(s.signposting_per100 == 0.0);                  // pinned exactly
    CHECK(s.hedging_per100 == Approx(100.0 * 3.0 / 364.0));
    CHECK(s.active_narration == 1.0);
    CHECK(s.type_token_ratio == Approx(204.0 / 364.0));

    CHECK_FALSE(s.parse_depth.has_value());
    CHECK_FALSE(s.np_density.has_value());
    CHECK_FALSE(s.passive_rate.has_value());
}

TEST_CASE("signposting is case-sensitive, longest-first") {
    style_lexicons lex = lexicons();
    document d{"We first show X. We then prove Y.", doc_kind::abstract};
    // hits are bare "first" and "then"; capitalized "We ..." phrases do not match
    CHECK(style_regex_metrics(d, lex).signposting_per100 == Approx(100.0 * 2 / 8));

    document opener{"First we show things.", doc_kind::abstract};
    CHECK(style_regex_metrics(opener, lex).signposting_per100 == 0.0);

    document deixis{"Methods we propose in this paper succeed.", doc_kind::abstract};
    CHECK(style_regex_metrics(deixis, lex).signposting_per100 == 0.0);
    // one phrase hit, however many tokens it spans
    document signpost{"In this paper we propose methods.", doc_kind::abstract};
    CHECK(style_regex_metrics(signpost, lex).signposting_per100 ==
          Approx(100.0 * 1 / 6));
}

TEST_CASE("hedging is case-insensitive") {
    style_lexicons lex;
    lex.hedging = {"may", "suggest"};
    document d{"This MAY work; results Suggest promise.", doc_kind::abstract};
    CHECK(style_regex_metrics(d, lex).hedging_per100 == Approx(100.0 * 2 / 6));
}

TEST_CASE("active narration over first-person sentences") {
    style_lexicons lex;
    document mixed{"We are hopeful. We run experiments.", doc_kind::abstract};
    CHECK(style_regex_metrics(mixed, lex).active_narration == Approx(0.5));

    document none{"The method works well.", doc_kind::abstract};
    CHECK(style_regex_metrics(none, lex).active_narration == 0.0);

    document active{"I propose a fix. We verify it.", doc_kind::abstract};
    CHECK(style_regex_metrics(active, lex).active_narration == 1.0);
}

TEST_CASE("numbers per 100 counts digit-bearing tokens") {
    style_lexicons lex;
    document d{"Accuracy rose 2.8 points over 3 runs.", doc_kind::abstract};
    // tokens: Accuracy rose 28 points over 3 runs -> 2 of 7
    CHECK(style_regex_metrics(d, lex).numbers_per100 == Approx(100.0 * 2 / 7));
}

TEST_CASE("parse fixture: frozen parse-family values") {
    parsed_document parsed = ingest_parse(slurp(fixture_path("parse_fixture.conllu")));
    REQUIRE(parsed.sentences.size() == 2);

    style_scores s;
    style_parse_metrics(parsed, s);
    REQUIRE(s.parse_depth.has_value());
    CHECK(*s.parse_depth == Approx(3.0));
    CHECK(*s.passive_rate == Approx(0.5));
    CHECK(*s.nouns_per100 == Approx(20.0));
    CHECK(*s.verbs_per100 == Approx(20.0));
    CHECK(*s.noun_chunks_per100 == Approx(20.0));
    CHECK(*s.np_density == Approx(0.5));
}

TEST_CASE("conllu reader skips ranges, comments, empty nodes") {
    std::string text =
        "# newdoc\n"
        "1-2\tcannot\t_\t_\t_\t_\t_\t_\t_\t_\n"
        "1\tcan\tcan\tAUX\tMD\t_\t0\troot\t_\t_\n"
        "2\tnot\tnot\tPART\tRB\t_\t1\tadvmod\t_\t_\n"
        "2.1\tghost\t_\t_\t_\t_\t_\t_\t_\t_\n"
        "\n";
    parsed_document parsed = ingest_parse(text);
    REQUIRE(parsed.sentences.size() == 1);
    CHECK(parsed.sentences[0].tokens.size() == 2);
    CHECK(parsed.sentences[0].tokens[0].upos == "AUX");
}

TEST_CASE("conllu structural errors") {
    // too few columns
    CHECK_THROWS_AS(ingest_parse("1\tword\n\n"), parse_format_error);
    // head out of range
    CHECK_THROWS_AS(
        ingest_parse("1\tx\tx\tNOUN\tNN\t_\t9\tdep\t_\t_\n\n"), malformed_parse);
    // cycle (two nodes pointing at each other, no root)
    CHECK_THROWS_AS(
        ingest_parse("1\ta\ta\tNOUN\tNN\t_\t2\tdep\t_\t_\n"
                     "2\tb\tb\tNOUN\tNN\t_\t1\tdep\t_\t_\n\n"),
        malformed_parse);
    // line number is carried on format errors
    try {
        ingest_parse("# ok\n1\tbroken\n\n");
        FAIL("expected parse_format_error");
    } catch (const parse_format_error& e) {
        CHECK(e.line == 2);
    }
}

TEST_CASE("style metric table") {
    CHECK(style_metric_names().size() == 12);
    style_scores s;
    s.sentence_length = 9.0;
    CHECK(*style_value(s, "sentence_length") == 9.0);
    CHECK_FALSE(style_value(s, "parse_depth").has_value());
    CHECK_THROWS_AS(style_value(s, "bogus"), error);
}

#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "helpers.hpp"
#include "scribemeter/corpus.hpp"
#include "scribemeter/errors.hpp"

using namespace scribemeter;
using testutil::fixture_path;

namespace {

std::vector<paper_record> collect(const std::string& path,
                                  void (*ingester)(std::istream&, const record_sink&,
                                                   ingest_counters&),
                                  ingest_counters& counters) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(bool(in));
    std::vector<paper_record> out;
    ingester(in, [&](paper_record&& r) { out.push_back(std::move(r)); }, counters);
    return out;
}

}  // namespace

TEST_CASE("arXiv fixture: counters, fields, year fallbacks") {
    ingest_counters c;
    auto recs = collect(fixture_path("corpus/arxiv_fixture.jsonl"), ingest_arxiv, c);
    CHECK(c.emitted == 6);
    CHECK(c.malformed == 2);
    CHECK(c.filtered == 0);
    REQUIRE(recs.size() == 6);

    std::map<std::string, const paper_record*> by_id;
    for (const auto& r : recs) by_id[r.paper_id] = &r;

    const paper_record& sparse = *by_id.at("2101.00001");
    CHECK(sparse.venue == "arxiv");
    CHECK(sparse.year == 2021);
    CHECK(sparse.arxiv_primary_category == "cs.LG");
    CHECK(sparse.arxiv_categories == std::vector<std::string>{"cs.LG", "stat.ML"});
    CHECK_FALSE(sparse.abstract_missing);

    const paper_record& survey = *by_id.at("2103.00003");
    CHECK(survey.abstract.empty());
    CHECK(survey.abstract_missing);

    // update_date beats the id-encoded year
    CHECK(by_id.at("quant-ph/9901001")->year == 1999);
    CHECK(by_id.at("2104.00004")->arxiv_primary_category == "eess.SY");
}

TEST_CASE("arXiv year falls back to the identifier") {
    std::istringstream in(
        R"({"id": "9107.00001", "title": "Old new-style"}
{"id": "0704.00002", "title": "New-style"}
{"id": "hep-th/0203001", "title": "Old-style"}
{"id": "abc", "title": "No year anywhere"}
)");
    ingest_counters c;
    std::vector<paper_record> recs;
    ingest_arxiv(in, [&](paper_record&& r) { recs.push_back(std::move(r)); }, c);
    CHECK(c.emitted == 3);
    CHECK(c.malformed == 1);
    REQUIRE(recs.size() == 3);
    CHECK(recs[0].year == 1991);
    CHECK(recs[1].year == 2007);
    CHECK(recs[2].year == 2002);
    CHECK(recs[0].abstract_missing);
}

TEST_CASE("ML classification uses the primary category only") {
    paper_record r;
    r.arxiv_primary_category = "cs.LG";
    CHECK(classify_ml(r) == ml_class::ml);
    r.arxiv_primary_category = "stat.ML";
    CHECK(classify_ml(r) == ml_class::ml);
    r.arxiv_primary_category = "math.AG";
    CHECK(classify_ml(r) == ml_class::non_ml);
    r.arxiv_primary_category = "quant-ph";
    CHECK(classify_ml(r) == ml_class::non_ml);
    r.arxiv_primary_category.reset();
    CHECK(classify_ml(r) == ml_class::not_arxiv);

    // secondary ML categories do not help
    paper_record s;
    s.arxiv_primary_category = "eess.SY";
    s.arxiv_categories = {"eess.SY", "cs.LG"};
    CHECK(classify_ml(s) == ml_class::non_ml);

    CHECK(ml_category_set().count("cs.CL") == 1);
    CHECK(ml_category_set().count("cs.CR") == 0);
}

TEST_CASE("PubMed fixture: keep/drop rules, joining, entities") {
    ingest_counters c;
    auto recs = collect(fixture_path("corpus/pubmed_fixture.xml"), ingest_pubmed, c);
    CHECK(c.emitted == 3);
    CHECK(c.filtered == 3);
    CHECK(c.malformed == 0);
    REQUIRE(recs.size() == 3);

    CHECK(recs[0].paper_id == "10000001");
    CHECK(recs[0].venue == "pubmed");
    CHECK(recs[0].year == 2001);
    CHECK(recs[0].abstract == "This abstract has exactly six words.");

    // MedlineDate year, structured abstract joined with single spaces
    CHECK(recs[1].paper_id == "10000004");
    CHECK(recs[1].year == 1998);
    CHECK(recs[1].abstract ==
          "Structured abstracts carry labeled sections. Sections are joined with "
          "single spaces.");

    CHECK(recs[2].paper_id == "10000006");
    CHECK(recs[2].year == 2005);
    CHECK(recs[2].title == "Entities & escapes are decoded <properly>");
    CHECK(recs[2].abstract ==
          "Entity decoding keeps \"quoted\" text & symbols intact here.");
}

TEST_CASE("PubMed scanner survives chunk boundaries") {
    // replicate one article far past the 64 KiB read chunk so articles split
    // across feed() calls
    std::ifstream in(fixture_path("corpus/pubmed_fixture.xml"), std::ios::binary);
    REQUIRE(bool(in));
    std::stringstream raw;
    raw << in.rdbuf();
    std::string whole = raw.str();
    std::size_t open = whole.find("<PubmedArticle");
    std::size_t close = whole.find("</PubmedArticle>") + 16;
    std::string one = whole.substr(open, close - open);

    std::string big = "<?xml version=\"1.0\"?>\n<PubmedArticleSet>\n";
    for (int i = 0; i < 2000; ++i) big += one;
    big += "</PubmedArticleSet>\n";
    REQUIRE(big.size() > 2 * 65536);

    std::istringstream stream(big);
    ingest_counters c;
    std::size_t n = 0;
    ingest_pubmed(stream, [&](paper_record&& r) {
        ++n;
        CHECK(r.paper_id == "10000001");
    }, c);
    CHECK(n == 2000);
    CHECK(c.emitted == 2000);
}

TEST_CASE("NeurIPS CSV fixture: quoting, newlines, authors") {
    ingest_counters c;
    auto recs = collect(fixture_path("corpus/neurips_fixture.csv"), ingest_neurips, c);
    CHECK(c.emitted == 3);
    CHECK(c.malformed == 0);
    REQUIRE(recs.size() == 3);

    CHECK(recs[0].paper_id == "nips1987-001");
    CHECK(recs[0].venue == "neurips");
    CHECK(recs[0].year == 1987);
    CHECK(recs[0].authors ==
          std::vector<std::string>{"Ada Lovelace", "Charles Babbage"});

    CHECK(recs[1].title == "Backpropagation, Revisited");
    CHECK(recs[1].abstract ==
          "A re-examination of gradient methods, with \"careful\" experiments "
          "spanning\ntwo lines of text.");
    CHECK(recs[1].authors == std::vector<std::string>{"Grace Hopper"});

    CHECK(recs[2].year == 2024);
    CHECK(recs[2].authors.size() == 3);
}

TEST_CASE("NeurIPS CSV rejects a wrong header") {
    std::istringstream in("id,year,title,abstract,authors\nx,1999,t,a,b\n");
    ingest_counters c;
    CHECK_THROWS_AS(
        ingest_neurips(in, [](paper_record&&) {}, c), io_failure);
}

TEST_CASE("record validation flags each broken invariant") {
    paper_record rec;
    rec.paper_id = "x";
    rec.venue = "neurips";
    rec.year = 2001;
    rec.title = "t";
    rec.abstract = "a";
    CHECK(validate_record(rec).empty());

    rec.year = 1986;
    auto issues = validate_record(rec);
    REQUIRE(issues.size() == 1);
    CHECK(issues[0].field == "year");
    rec.year = 2031;
    CHECK(validate_record(rec).size() == 1);
    rec.year = 2030;
    CHECK(validate_record(rec).empty());

    rec.abstract.clear();
    CHECK(validate_record(rec).size() == 1);
    rec.abstract_missing = true;
    CHECK(validate_record(rec).empty());

    rec.citation_count = -1;
    rec.reference_count = -2;
    CHECK(validate_record(rec).size() == 2);

    paper_record blank;
    auto all = validate_record(blank);
    CHECK(all.size() == 5);  // paper_id, venue, year, title, abstract
}

TEST_CASE("canonical JSONL round-trip preserves every field") {
    paper_record rec;
    rec.paper_id = "2101.00001";
    rec.venue = "arxiv";
    rec.year = 2021;
    rec.title = "Round \"trip\" title";
    rec.abstract = "Text with\nnewline and unicode caf\xc3\xa9.";
    rec.authors = {"A. One", "B. Two"};
    rec.arxiv_primary_category = "cs.LG";
    rec.arxiv_categories = {"cs.LG", "stat.ML"};
    rec.citation_count = 42;
    rec.reference_count = 7;

    paper_record missing;
    missing.paper_id = "p2";
    missing.venue = "pubmed";
    missing.year = 1999;
    missing.title = "No optional fields";
    missing.abstract_missing = true;

    std::ostringstream out;
    write_jsonl({rec, missing}, out);
    std::string text = out.str();
    CHECK(std::count(text.begin(), text.end(), '\n') == 2);

    std::istringstream in(text);
    ingest_counters c;
    auto back = read_jsonl(in, c);
    CHECK(c.emitted == 2);
    CHECK(c.malformed == 0);
    REQUIRE(back.size() == 2);

    const paper_record& r = back[0];
    CHECK(r.paper_id == rec.paper_id);
    CHECK(r.venue == rec.venue);
    CHECK(r.year == rec.year);
    CHECK(r.title == rec.title);
    CHECK(r.abstract == rec.abstract);
    CHECK(r.authors == rec.authors);
    CHECK(r.arxiv_primary_category == rec.arxiv_primary_category);
    CHECK(r.arxiv_categories == rec.arxiv_categories);
    CHECK(r.citation_count == rec.citation_count);
    CHECK(r.reference_count == rec.reference_count);

    CHECK(back[1].abstract_missing);
    CHECK_FALSE(back[1].citation_count.has_value());
    CHECK_FALSE(back[1].arxiv_primary_category.has_value());

    // writing again is byte-stable
    std::ostringstream again;
    write_jsonl(back, again);
    CHECK(again.str() == text);
}

TEST_CASE("read_jsonl counts malformed lines") {
    std::istringstream in(
        "{\"paper_id\":\"a\",\"venue\":\"neurips\",\"year\":1999,\"title\":\"t\","
        "\"abstract\":\"x\"}\n"
        "not json\n");
    ingest_counters c;
    auto recs = read_jsonl(in, c);
    CHECK(recs.size() == 1);
    CHECK(c.malformed == 1);
}

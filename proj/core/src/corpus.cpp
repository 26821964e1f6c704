#include "scribemeter/corpus.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>
#include <zlib.h>

#include "csv.hpp"
#include "scribemeter/errors.hpp"

namespace scribemeter {

const std::set<std::string>& ml_category_set() {
    static const std::set<std::string> cats = {
        "cs.LG", "cs.AI", "cs.CV", "cs.CL", "cs.NE", "cs.RO",
        "cs.IR", "cs.MA", "cs.HC", "cs.CY", "stat.ML",
    };
    return cats;
}

ml_class classify_ml(const paper_record& rec) {
    if (!rec.arxiv_primary_category) return ml_class::not_arxiv;
    return ml_category_set().count(*rec.arxiv_primary_category) ? ml_class::ml
                                                                : ml_class::non_ml;
}

std::vector<validation_issue> validate_record(const paper_record& rec) {
    std::vector<validation_issue> issues;
    if (rec.paper_id.empty())
        issues.push_back({"paper_id", "must be non-empty"});
    if (rec.venue.empty())
        issues.push_back({"venue", "must be non-empty"});
    if (rec.year < 1987 || rec.year > 2030)
        issues.push_back({"year", "must lie in [1987, 2030], got " +
                                      std::to_string(rec.year)});
    if (rec.title.empty())
        issues.push_back({"title", "must be non-empty"});
    if (rec.abstract.empty() && !rec.abstract_missing)
        issues.push_back({"abstract", "empty abstract requires the missing flag"});
    if (rec.citation_count && *rec.citation_count < 0)
        issues.push_back({"citation_count", "must be non-negative"});
    if (rec.reference_count && *rec.reference_count < 0)
        issues.push_back({"reference_count", "must be non-negative"});
    return issues;
}

namespace {

std::string trim_ws(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// arXiv ids encode the submission year: new-style "2403.01234" and old-style
// "hep-th/9901001" both start with YYMM after any archive prefix
std::optional<int> year_from_arxiv_id(const std::string& id) {
    std::string digits = id;
    std::size_t slash = id.find('/');
    if (slash != std::string::npos) digits = id.substr(slash + 1);
    if (digits.size() < 4) return std::nullopt;
    for (std::size_t i = 0; i < 4; ++i)
        if (!std::isdigit(static_cast<unsigned char>(digits[i]))) return std::nullopt;
    int yy = (digits[0] - '0') * 10 + (digits[1] - '0');
    return yy >= 91 ? 1900 + yy : 2000 + yy;
}

std::optional<int> parse_year_prefix(const std::string& s) {
    if (s.size() < 4) return std::nullopt;
    int y = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + 4, y);
    if (ec != std::errc() || p != s.data() + 4) return std::nullopt;
    return y;
}

std::vector<std::string> split_authors_string(const std::string& s) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        std::size_t next = s.find(" and ", pos);
        std::string part = trim_ws(
            next == std::string::npos ? s.substr(pos) : s.substr(pos, next - pos));
        if (!part.empty()) out.push_back(std::move(part));
        if (next == std::string::npos) break;
        pos = next + 5;
    }
    return out;
}

}  // namespace

void ingest_arxiv(std::istream& in, const record_sink& sink, ingest_counters& counters) {
    std::string line;
    while (std::getline(in, line)) {
        if (trim_ws(line).empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception&) {
            ++counters.malformed;
            continue;
        }
        if (!j.is_object() || !j.contains("id") || !j.contains("title")) {
            ++counters.malformed;
            continue;
        }

        paper_record rec;
        rec.venue = "arxiv";
        try {
            rec.paper_id = j.at("id").get<std::string>();
            rec.title = trim_ws(j.at("title").get<std::string>());
            if (j.contains("abstract") && j["abstract"].is_string())
                rec.abstract = trim_ws(j["abstract"].get<std::string>());
            rec.abstract_missing = rec.abstract.empty();

            if (j.contains("categories") && j["categories"].is_string()) {
                std::istringstream cats(j["categories"].get<std::string>());
                std::string c;
                while (cats >> c) rec.arxiv_categories.push_back(c);
            }
            if (!rec.arxiv_categories.empty())
                rec.arxiv_primary_category = rec.arxiv_categories.front();

            std::optional<int> year;
            if (j.contains("year") && j["year"].is_number_integer())
                year = j["year"].get<int>();
            else if (j.contains("year") && j["year"].is_string())
                year = parse_year_prefix(j["year"].get<std::string>());
            if (!year && j.contains("update_date") && j["update_date"].is_string())
                year = parse_year_prefix(j["update_date"].get<std::string>());
            if (!year) year = year_from_arxiv_id(rec.paper_id);
            if (!year) {
                ++counters.malformed;
                continue;
            }
            rec.year = *year;

            if (j.contains("authors_parsed") && j["authors_parsed"].is_array()) {
                for (const auto& a : j["authors_parsed"]) {
                    if (!a.is_array() || a.empty()) continue;
                    std::string last = a[0].is_string() ? a[0].get<std::string>() : "";
                    std::string first =
                        a.size() > 1 && a[1].is_string() ? a[1].get<std::string>() : "";
                    std::string full = trim_ws(first + " " + last);
                    if (!full.empty()) rec.authors.push_back(std::move(full));
                }
            } else if (j.contains("authors") && j["authors"].is_string()) {
                rec.authors = split_authors_string(j["authors"].get<std::string>());
            }
        } catch (const nlohmann::json::exception&) {
            ++counters.malformed;
            continue;
        }

        if (rec.paper_id.empty() || rec.title.empty()) {
            ++counters.malformed;
            continue;
        }
        ++counters.emitted;
        sink(std::move(rec));
    }
    if (in.bad()) throw io_failure("stream failure while reading arXiv snapshot");
}

// ---------------------------------------------------------------------------
// PubMed

namespace {

std::string unescape_entities(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] != '&') {
            out.push_back(s[i++]);
            continue;
        }
        std::size_t semi = s.find(';', i);
        if (semi == std::string::npos || semi - i > 10) {
            out.push_back(s[i++]);
            continue;
        }
        std::string ent = s.substr(i + 1, semi - i - 1);
        if (ent == "amp") out.push_back('&');
        else if (ent == "lt") out.push_back('<');
        else if (ent == "gt") out.push_back('>');
        else if (ent == "quot") out.push_back('"');
        else if (ent == "apos") out.push_back('\'');
        else if (!ent.empty() && ent[0] == '#') {
            long code = 0;
            bool ok = false;
            if (ent.size() > 2 && (ent[1] == 'x' || ent[1] == 'X')) {
                auto [p, ec] = std::from_chars(ent.data() + 2, ent.data() + ent.size(),
                                               code, 16);
                ok = ec == std::errc() && p == ent.data() + ent.size();
            } else {
                auto [p, ec] =
                    std::from_chars(ent.data() + 1, ent.data() + ent.size(), code);
                ok = ec == std::errc() && p == ent.data() + ent.size();
            }
            if (ok && code > 0 && code < 0x110000) {
                // encode as UTF-8
                char32_t c = static_cast<char32_t>(code);
                if (c < 0x80) {
                    out.push_back(static_cast<char>(c));
                } else if (c < 0x800) {
                    out.push_back(static_cast<char>(0xC0 | (c >> 6)));
                    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
                } else if (c < 0x10000) {
                    out.push_back(static_cast<char>(0xE0 | (c >> 12)));
                    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
                    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
                } else {
                    out.push_back(static_cast<char>(0xF0 | (c >> 18)));
                    out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
                    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
                    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
                }
            } else {
                out.append(s, i, semi - i + 1);
            }
        } else {
            out.append(s, i, semi - i + 1);
        }
        i = semi + 1;
    }
    return out;
}

std::string strip_tags(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    bool in_tag = false;
    for (char c : s) {
        if (c == '<') in_tag = true;
        else if (c == '>') in_tag = false;
        else if (!in_tag) out.push_back(c);
    }
    return out;
}

// inner text of the first <tag ...>...</tag> after `from`, or nullopt
std::optional<std::string> first_element(const std::string& xml, const std::string& tag,
                                         std::size_t from = 0) {
    const std::string open = "<" + tag;
    std::size_t a = xml.find(open, from);
    while (a != std::string::npos) {
        char nxt = a + open.size() < xml.size() ? xml[a + open.size()] : '\0';
        if (nxt == '>' || nxt == ' ' || nxt == '\t' || nxt == '\n' || nxt == '/') break;
        a = xml.find(open, a + 1);
    }
    if (a == std::string::npos) return std::nullopt;
    std::size_t gt = xml.find('>', a);
    if (gt == std::string::npos) return std::nullopt;
    if (xml[gt - 1] == '/') return std::string{};  // self-closing
    std::size_t b = xml.find("</" + tag + ">", gt + 1);
    if (b == std::string::npos) return std::nullopt;
    return xml.substr(gt + 1, b - gt - 1);
}

std::size_t whitespace_word_count(const std::string& s) {
    std::istringstream in(s);
    std::string w;
    std::size_t n = 0;
    while (in >> w) ++n;
    return n;
}

// incremental scanner feeding whole <PubmedArticle> elements to a callback
class pubmed_scanner {
  public:
    pubmed_scanner(const record_sink& sink, ingest_counters& counters)
        : sink_(sink), counters_(counters) {}

    void feed(const char* data, std::size_t len) {
        buf_.append(data, len);
        while (true) {
            std::size_t start = buf_.find("<PubmedArticle");
            if (start == std::string::npos) {
                // keep only a tail that could hold a partial open tag
                if (buf_.size() > 32) buf_.erase(0, buf_.size() - 32);
                return;
            }
            std::size_t end = buf_.find("</PubmedArticle>", start);
            if (end == std::string::npos) {
                if (start > 0) buf_.erase(0, start);
                return;
            }
            handle_article(buf_.substr(start, end - start + 16));
            buf_.erase(0, end + 16);
        }
    }

  private:
    void handle_article(const std::string& art) {
        auto pmid = first_element(art, "PMID");
        auto title = first_element(art, "ArticleTitle");
        if (!pmid || trim_ws(*pmid).empty() || !title) {
            ++counters_.malformed;
            return;
        }

        // language filter: a declared English language element
        bool english = false;
        std::size_t pos = 0;
        while (true) {
            auto lang = first_element(art, "Language", pos);
            if (!lang) break;
            if (trim_ws(*lang) == "eng") english = true;
            pos = art.find("<Language", pos);
            pos = art.find("</Language>", pos);
            if (pos == std::string::npos) break;
            pos += 11;
        }
        if (!english) {
            ++counters_.filtered;
            return;
        }

        // abstract: all AbstractText sections joined with single spaces
        std::string abstract;
        pos = 0;
        while (true) {
            std::size_t a = art.find("<AbstractText", pos);
            if (a == std::string::npos) break;
            std::size_t gt = art.find('>', a);
            if (gt == std::string::npos) break;
            if (art[gt - 1] == '/') {
                pos = gt + 1;
                continue;
            }
            std::size_t b = art.find("</AbstractText>", gt + 1);
            if (b == std::string::npos) break;
            std::string part =
                trim_ws(unescape_entities(strip_tags(art.substr(gt + 1, b - gt - 1))));
            if (!part.empty()) {
                if (!abstract.empty()) abstract += " ";
                abstract += part;
            }
            pos = b + 15;
        }
        if (abstract.empty() || whitespace_word_count(abstract) < 6) {
            ++counters_.filtered;
            return;
        }

        std::optional<int> year;
        if (auto pubdate = first_element(art, "PubDate")) {
            if (auto y = first_element(*pubdate, "Year"))
                year = parse_year_prefix(trim_ws(*y));
            if (!year) {
                if (auto md = first_element(*pubdate, "MedlineDate")) {
                    const std::string& m = *md;
                    for (std::size_t i = 0; i + 4 <= m.size(); ++i) {
                        if (std::isdigit(static_cast<unsigned char>(m[i]))) {
                            year = parse_year_prefix(m.substr(i, 4));
                            break;
                        }
                    }
                }
            }
        }
        if (!year) {
            ++counters_.malformed;
            return;
        }

        paper_record rec;
        rec.paper_id = trim_ws(*pmid);
        rec.venue = "pubmed";
        rec.year = *year;
        rec.title = trim_ws(unescape_entities(strip_tags(*title)));
        rec.abstract = std::move(abstract);
        if (rec.title.empty()) {
            ++counters_.malformed;
            return;
        }
        ++counters_.emitted;
        sink_(std::move(rec));
    }

    std::string buf_;
    const record_sink& sink_;
    ingest_counters& counters_;
};

}  // namespace

void ingest_pubmed(std::istream& in, const record_sink& sink, ingest_counters& counters) {
    pubmed_scanner scanner(sink, counters);
    char chunk[65536];
    while (in.read(chunk, sizeof(chunk)) || in.gcount() > 0)
        scanner.feed(chunk, static_cast<std::size_t>(in.gcount()));
    if (in.bad()) throw io_failure("stream failure while reading PubMed XML");
}

void ingest_pubmed_file(const std::string& path, bool gzipped, const record_sink& sink,
                        ingest_counters& counters) {
    if (!gzipped) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw io_failure("cannot open " + path);
        ingest_pubmed(in, sink, counters);
        return;
    }
    gzFile gz = gzopen(path.c_str(), "rb");
    if (!gz) throw io_failure("cannot open " + path);
    pubmed_scanner scanner(sink, counters);
    char chunk[65536];
    int n;
    while ((n = gzread(gz, chunk, sizeof(chunk))) > 0)
        scanner.feed(chunk, static_cast<std::size_t>(n));
    bool bad = n < 0;
    gzclose(gz);
    if (bad) throw io_failure("gzip stream failure in " + path);
}

// ---------------------------------------------------------------------------
// NeurIPS CSV

void ingest_neurips(std::istream& in, const record_sink& sink, ingest_counters& counters) {
    std::vector<std::vector<std::string>> rows = detail::read_csv(in);
    if (in.bad()) throw io_failure("stream failure while reading CSV");
    if (rows.empty() ||
        rows[0] != std::vector<std::string>{"paper_id", "year", "title", "abstract",
                                            "authors"})
        throw io_failure("expected CSV header paper_id,year,title,abstract,authors");

    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (row.size() != 5) {
            ++counters.malformed;
            continue;
        }
        paper_record rec;
        rec.paper_id = trim_ws(row[0]);
        rec.venue = "neurips";
        int y = 0;
        auto [p, ec] = std::from_chars(row[1].data(), row[1].data() + row[1].size(), y);
        if (ec != std::errc() || p != row[1].data() + row[1].size()) {
            ++counters.malformed;
            continue;
        }
        rec.year = y;
        rec.title = trim_ws(row[2]);
        rec.abstract = trim_ws(row[3]);
        rec.abstract_missing = rec.abstract.empty();
        std::size_t pos = 0;
        while (pos <= row[4].size()) {
            std::size_t semi = row[4].find(';', pos);
            std::string a = trim_ws(semi == std::string::npos
                                        ? row[4].substr(pos)
                                        : row[4].substr(pos, semi - pos));
            if (!a.empty()) rec.authors.push_back(std::move(a));
            if (semi == std::string::npos) break;
            pos = semi + 1;
        }
        if (rec.paper_id.empty() || rec.title.empty()) {
            ++counters.malformed;
            continue;
        }
        ++counters.emitted;
        sink(std::move(rec));
    }
}

// ---------------------------------------------------------------------------
// canonical JSONL

std::string record_to_json(const paper_record& rec) {
    nlohmann::ordered_json j;
    j["paper_id"] = rec.paper_id;
    j["venue"] = rec.venue;
    j["year"] = rec.year;
    j["title"] = rec.title;
    j["abstract"] = rec.abstract;
    j["abstract_missing"] = rec.abstract_missing;
    j["authors"] = rec.authors;
    if (rec.arxiv_primary_category) j["arxiv_primary_category"] = *rec.arxiv_primary_category;
    if (!rec.arxiv_categories.empty()) j["arxiv_categories"] = rec.arxiv_categories;
    if (rec.citation_count) j["citation_count"] = *rec.citation_count;
    if (rec.reference_count) j["reference_count"] = *rec.reference_count;
    return j.dump();
}

void write_jsonl(const std::vector<paper_record>& records, std::ostream& out) {
    for (const paper_record& rec : records) out << record_to_json(rec) << "\n";
    if (!out) throw io_failure("short write while emitting JSONL");
}

std::vector<paper_record> read_jsonl(std::istream& in, ingest_counters& counters) {
    std::vector<paper_record> out;
    std::string line;
    while (std::getline(in, line)) {
        if (trim_ws(line).empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
            paper_record rec;
            rec.paper_id = j.at("paper_id").get<std::string>();
            rec.venue = j.at("venue").get<std::string>();
            rec.year = j.at("year").get<int>();
            rec.title = j.at("title").get<std::string>();
            rec.abstract = j.value("abstract", std::string{});
            rec.abstract_missing = j.value("abstract_missing", rec.abstract.empty());
            if (j.contains("authors"))
                rec.authors = j["authors"].get<std::vector<std::string>>();
            if (j.contains("arxiv_primary_category") &&
                j["arxiv_primary_category"].is_string())
                rec.arxiv_primary_category = j["arxiv_primary_category"].get<std::string>();
            if (j.contains("arxiv_categories"))
                rec.arxiv_categories = j["arxiv_categories"].get<std::vector<std::string>>();
            if (j.contains("citation_count") && j["citation_count"].is_number())
                rec.citation_count = j["citation_count"].get<std::int64_t>();
            if (j.contains("reference_count") && j["reference_count"].is_number())
                rec.reference_count = j["reference_count"].get<std::int64_t>();
            ++counters.emitted;
            out.push_back(std::move(rec));
        } catch (const nlohmann::json::exception&) {
            ++counters.malformed;
        }
    }
    if (in.bad()) throw io_failure("stream failure while reading JSONL");
    return out;
}

}  // namespace scribemeter

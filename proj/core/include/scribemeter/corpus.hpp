#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace scribemeter {

struct paper_record {
    std::string paper_id;
    std::string venue;
    int year = 0;
    std::string title;
    std::string abstract;
    bool abstract_missing = false;  // abstract may be empty only when set
    std::vector<std::string> authors;
    std::optional<std::string> arxiv_primary_category;
    std::vector<std::string> arxiv_categories;
    std::optional<std::int64_t> citation_count;
    std::optional<std::int64_t> reference_count;
};

// Fixed ML category set; classification looks at the primary category only.
const std::set<std::string>& ml_category_set();

enum class ml_class { ml, non_ml, not_arxiv };
ml_class classify_ml(const paper_record& rec);

struct validation_issue {
    std::string field;
    std::string message;
};

// Field-tagged invariant checks; empty result means the record is valid.
std::vector<validation_issue> validate_record(const paper_record& rec);

struct ingest_counters {
    std::size_t emitted = 0;
    std::size_t malformed = 0;   // structurally broken inputs, skipped
    std::size_t filtered = 0;    // valid inputs dropped by a filter rule
};

using record_sink = std::function<void(paper_record&&)>;

// arXiv metadata snapshot: one JSON object per line.  Malformed lines are
// counted and skipped.  Throws io_failure on stream-level failure.
void ingest_arxiv(std::istream& in, const record_sink& sink, ingest_counters& counters);

// PubMed baseline XML (optionally gzipped, by path).  Keeps only records with
// a declared English language and an abstract of at least six words; year
// from PubDate/Year, else the first four digits of MedlineDate.  Structural
// problems skip the record and bump `malformed`.
void ingest_pubmed(std::istream& in, const record_sink& sink, ingest_counters& counters);
void ingest_pubmed_file(const std::string& path, bool gzipped, const record_sink& sink,
                        ingest_counters& counters);

// NeurIPS export: CSV with header paper_id,year,title,abstract,authors
// (authors separated by ';').  Quoted fields may contain commas, doubled
// quotes, and newlines.
void ingest_neurips(std::istream& in, const record_sink& sink, ingest_counters& counters);

// Canonical interchange format: one JSON record per line, UTF-8.
void write_jsonl(const std::vector<paper_record>& records, std::ostream& out);
std::vector<paper_record> read_jsonl(std::istream& in, ingest_counters& counters);

// JSON round-trip for a single record (used by the canonical writer).
std::string record_to_json(const paper_record& rec);

}  // namespace scribemeter

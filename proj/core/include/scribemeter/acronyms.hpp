#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "scribemeter/corpus.hpp"
#include "scribemeter/text.hpp"

namespace scribemeter {

struct acronym_token {
    std::string surface;
    std::size_t upper = 0;
    std::size_t lower = 0;
    std::size_t digits = 0;
};

// upper >= lower + digits AND upper >= 2, over the token's alphanumerics.
bool is_acronym(const acronym_token& t);
acronym_token classify_token(const std::string& token);

// Every token of the document that classifies as an acronym, in order,
// occurrences preserved.  Throws empty_document.
std::vector<acronym_token> extract_acronyms(const document& doc);

// 100 * acronym token count / word count.  Throws empty_document.
double acronym_density(const document& doc);

struct first_seen_info {
    std::string venue;
    int year = 0;
    std::size_t record_index = 0;  // tie-break so threading cannot reorder
};

struct acronym_registry {
    // case-sensitive surface -> occurrence count
    std::map<std::string, std::size_t> counts;
    std::map<std::string, first_seen_info> first_seen;
    std::size_t skipped_empty = 0;

    // entrywise sum; first_seen keeps the smaller record_index
    void merge(const acronym_registry& other);
};

enum class corpus_field { title, abstract };

// Counts acronym occurrences over the chosen field of every record.  Empty
// fields are skipped and counted.  `threads` > 1 splits the records into
// contiguous chunks whose partial registries merge to a result byte-identical
// with the sequential one.  `fold_plural` folds a trailing lowercase 's'
// ("CNNs" -> "CNN"); the default keeps surfaces verbatim.
acronym_registry build_registry(const std::vector<paper_record>& records,
                                corpus_field field, unsigned threads = 1,
                                bool fold_plural = false);

struct bucket_row {
    std::string label;
    std::size_t unique_count = 0;
    double percent = 0.0;
};

// Reuse buckets 1, 2-9, 10-99, 100-999, 1000+ as percentages of unique
// acronyms; percentages sum to 100.  Throws empty_registry.
std::vector<bucket_row> bucket_frequencies(const acronym_registry& reg);

// Stable serialization (sorted by surface) used by the byte-identity tests.
std::string registry_to_json(const acronym_registry& reg);

struct glossary_entry {
    std::string acronym;
    std::string expansion;
    std::string note;
};

struct glossary {
    std::vector<glossary_entry> entries;
    bool contains(const std::string& acronym) const;
};

// JSON array of {acronym, expansion, note} or CSV with that header.
// Throws glossary_format_error / duplicate_glossary_entry.
glossary load_glossary(const std::string& path);

struct glossary_audit {
    std::vector<std::string> missing;  // used in docs, absent from glossary
    std::vector<std::string> unused;   // in glossary, never used
    std::vector<std::string> novel;    // used in docs, not in the approved set
    bool ok = false;                   // missing empty
};

// Acronyms used across the documents vs the glossary and the approved set.
glossary_audit validate_glossary(const glossary& gloss, const std::vector<document>& docs,
                                 const std::set<std::string>& approved);

}  // namespace scribemeter

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "scribemeter/text.hpp"

namespace scribemeter {

// Phrase lists for the word-rule metrics.  Signposting matches
// case-sensitively (the lists ship lowercase, so sentence-initial "First" is
// not a signpost); hedging matches case-insensitively.
struct style_lexicons {
    std::vector<std::string> signposting;
    std::vector<std::string> hedging;
};

// UTF-8, one word or phrase per line, `#` comments.  Throws config_error.
std::vector<std::string> load_phrase_list(const std::string& path);

struct style_scores {
    // regex/word-rule family, always present
    double sentence_length = 0.0;     // tokens per linguistic sentence
    double numbers_per100 = 0.0;      // digit-bearing tokens per 100 words
    double signposting_per100 = 0.0;
    double hedging_per100 = 0.0;
    double active_narration = 0.0;    // of first-person sentences, active fraction
    double type_token_ratio = 0.0;    // unique case-folded / words, whole doc
    // parse family, present iff a dependency parse was supplied
    std::optional<double> parse_depth;          // mean max root-to-leaf depth, root = 1
    std::optional<double> np_density;           // tokens inside noun chunks / words
    std::optional<double> noun_chunks_per100;
    std::optional<double> nouns_per100;         // UPOS NOUN + PROPN
    std::optional<double> verbs_per100;         // UPOS VERB
    std::optional<double> passive_rate;         // sentences with a *:pass relation
};

struct parse_token {
    std::string form;
    std::string upos;
    std::size_t head = 0;  // 1-based within sentence, 0 = root
    std::string deprel;
};

struct parse_sentence {
    std::vector<parse_token> tokens;
};

struct parsed_document {
    std::vector<parse_sentence> sentences;
};

// CoNLL-U subset reader: tab-separated 10-column lines, `#` comments, blank
// line ends a sentence; multiword-token and empty-node lines are skipped.
// Throws parse_format_error (with line number) on structural problems and
// malformed_parse on cyclic/out-of-range heads or a missing root.
parsed_document ingest_parse(const std::string& conllu_text);

// Word-rule family only; parse-family fields left empty.
style_scores style_regex_metrics(const document& doc, const style_lexicons& lex);

// Fill the parse family from a dependency parse.
void style_parse_metrics(const parsed_document& parsed, style_scores& out);

// Style metric names in report order.
const std::vector<std::string>& style_metric_names();

// Field lookup by metric name (empty for parse metrics without a parse);
// throws error on an unknown name.
std::optional<double> style_value(const style_scores& s, const std::string& name);

}  // namespace scribemeter

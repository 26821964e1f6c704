#pragma once

#include <map>
#include <string>
#include <vector>

#include "scribemeter/text.hpp"

namespace scribemeter {

// Nine stored categories; "total" is computed, never stored.
const std::vector<std::string>& sensational_categories();

struct sensational_lexicon {
    // category -> terms/phrases, categories exactly the nine stored ones
    std::map<std::string, std::vector<std::string>> terms;
};

// Sectioned lexicon file: `[category]` headers, one term or phrase per line,
// `#` comments.  Throws config_error on I/O problems and unknown_category on
// a section outside the fixed set (including a literal "[total]").
sensational_lexicon load_sensational_lexicon(const std::string& path);

struct sensational_counts {
    // per-category hits per 100 words, keys = the nine categories + "total"
    std::map<std::string, double> per100;
    double total() const { return per100.at("total"); }
};

// Case-insensitive whole-word/phrase matching, greedy longest-first; a token
// feeds at most one hit per category.  Throws empty_document.
sensational_counts sensational_rates(const document& doc, const sensational_lexicon& lex);

}  // namespace scribemeter

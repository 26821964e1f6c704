#pragma once

#include <string>
#include <unordered_set>
#include <vector>

#include "scribemeter/text.hpp"

namespace scribemeter {

struct readability_scores {
    double flesch_ease = 0.0;
    double flesch_kincaid = 0.0;
    double gunning_fog = 0.0;
    double smog = 0.0;
    double dale_chall = 0.0;
    double spache = 0.0;
    double coleman_liau = 0.0;
    double ari = 0.0;
    double linsear_write = 0.0;
    double lix = 0.0;
    double rix = 0.0;
    double forcast = 0.0;
    double powers_sumner_kearl = 0.0;
    double words_per_sentence = 0.0;
    double syllables_per_word = 0.0;
    // SMOG canonically wants >= 3 sentences; shorter docs still get a value
    bool smog_low_confidence = false;
};

// Familiar-word lists backing Dale-Chall and Spache.
struct readability_lexicons {
    std::unordered_set<std::string> dale_familiar;
    std::unordered_set<std::string> spache_familiar;
};

// UTF-8, one word per line, `#` comments.  Throws config_error if unreadable.
std::unordered_set<std::string> load_word_list(const std::string& path);

// Fraction of tokens (case-folded) absent from the familiar list.
// Digit-bearing tokens count as familiar.
double dale_chall_familiarity(const std::vector<std::string>& words,
                              const std::unordered_set<std::string>& familiar);

// All 15 metrics from one stats pass.  Throws degenerate_input when
// sentences or words are zero.
readability_scores compute_readability(const token_stats& stats, const document& doc,
                                       const readability_lexicons& lex);

// Metric names in report order, and the better-direction flag (true = higher
// is better; only flesch_ease qualifies).
const std::vector<std::string>& readability_metric_names();
bool higher_is_better(const std::string& metric_name);

// Field lookup by metric name; throws error on an unknown name.
double readability_value(const readability_scores& s, const std::string& name);

}  // namespace scribemeter

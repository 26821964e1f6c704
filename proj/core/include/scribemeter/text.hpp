#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace scribemeter {

enum class doc_kind { title, abstract, summary };

struct document {
    std::string text;
    doc_kind kind = doc_kind::abstract;
};

// Two sentence segmentations share one scanner.  `formula` additionally splits
// when '.' is immediately followed by a digit, so "rose 2.8 words" contributes
// the short pseudo-sentences the classical formulas were calibrated on;
// `linguistic` never splits inside a number.
enum class sentence_mode { formula, linguistic };

struct token_stats {
    std::size_t words = 0;
    std::size_t sentences = 0;
    std::size_t syllables = 0;
    std::size_t characters = 0;      // letters only
    std::size_t complex_words = 0;   // >= 3 syllables
    std::size_t long_words = 0;      // > 6 letters
    std::size_t monosyllables = 0;
    std::size_t polysyllables = 0;   // alias of complex_words
    std::size_t unique_words = 0;    // case-folded
};

// Whitespace-delimited chunks filtered to [A-Za-z0-9'-], edge hyphens and
// apostrophes trimmed, empties dropped.  Combining marks consume their base
// character, so composed and decomposed accents tokenize identically.
// Throws empty_document if the text trims to nothing.
std::vector<std::string> tokenize(const document& doc);

// Sentence segments of the raw text (trimmed, in order).  Splits after a
// [.!?]+ run plus optional closing quotes/brackets, followed by whitespace and
// an uppercase letter or digit; a known abbreviation before the period
// suppresses the split.  Throws empty_document.
std::vector<std::string> split_sentences(const document& doc,
                                         sentence_mode mode = sentence_mode::linguistic);

// Vowel-group heuristic with silent-e suffix handling; never less than 1.
// Non-alphabetic tokens count 1.
std::size_t count_syllables(std::string_view word);

// All counts in one pass.  Sentences use the given mode (formula by default:
// that is what the readability formulas consume).
token_stats compute_token_stats(const document& doc,
                                sentence_mode mode = sentence_mode::formula);

// The abbreviation set guarding sentence splits, dotted lowercase forms
// ("fig.", "al.", ...).  Exposed so the bundled data file can be kept in sync.
const std::set<std::string>& abbreviation_set();

// Letters (A-Z, a-z) in a token.
std::size_t letter_count(std::string_view token);

// True if the token carries at least one ASCII digit.
bool has_digit(std::string_view token);

// ASCII lowercase copy.
std::string fold_case(std::string_view s);

}  // namespace scribemeter

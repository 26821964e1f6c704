#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "scribemeter/judge.hpp"

namespace scribemeter {

// TOML-subset value: string, number, bool, or array of strings.
using config_value = std::variant<std::string, double, bool, std::vector<std::string>>;

// [section] headers, key = value pairs, `#` comments.  Strings are quoted
// with \" and \\ escapes; numbers parse as double; bare true/false are bools;
// arrays hold quoted strings.  Throws config_error with line numbers.
// Top-level keys land in the "" section.
std::map<std::string, std::map<std::string, config_value>> parse_config_file(
    const std::string& path);

enum class gate_mode { warn, require_revision };

struct gate_policy {
    std::size_t p1_max_novel_acronyms = 2;
    std::set<std::string> approved_terms;
    // thresholds ship unset; explicit config only
    std::optional<double> flesch_ease_min;
    std::optional<double> max_mean_sentence_length;
    std::optional<double> max_mean_parse_depth;
    gate_mode p2_mode = gate_mode::warn;
    std::size_t p5_summary_word_limit = 100;
    std::string author_justification;  // optional P2 attachment
};

gate_policy load_gate_policy(const std::string& path);
judge_config load_judge_config(const std::string& path);

// Bundled data directory: $SCRIBEMETER_DATA if set, else share/scribemeter
// next to the running binary, else the source-tree data directory compiled
// into the library.  Throws config_error when nothing exists.
std::string default_data_dir();

// CRC-32 of a file, as 8 lowercase hex digits ("crc32:xxxxxxxx"); the
// provenance fingerprint for lexicons and configs.
std::string file_fingerprint(const std::string& path);
std::string text_fingerprint(const std::string& bytes);

}  // namespace scribemeter

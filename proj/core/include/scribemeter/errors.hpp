#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace scribemeter {

// Base class for every error thrown by this library.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// text: document is empty after whitespace trimming.
struct empty_document : error {
    using error::error;
};

// readability: zero sentences (or zero words) make every formula undefined.
struct degenerate_input : error {
    using error::error;
};

// missing/unreadable/bad bundled data or configuration file.
struct config_error : error {
    using error::error;
};

// style: dependency parse has cyclic or out-of-range heads, or no root.
struct malformed_parse : error {
    using error::error;
};

// style: CoNLL-U input rejected; carries the 1-based line number.
struct parse_format_error : error {
    parse_format_error(std::size_t line_no, const std::string& what_arg)
        : error("line " + std::to_string(line_no) + ": " + what_arg), line(line_no) {}
    std::size_t line;
};

// sensational: lexicon file declares a section outside the fixed category set.
struct unknown_category : error {
    using error::error;
};

// acronyms: bucket table over an empty registry.
struct empty_registry : error {
    using error::error;
};

// acronyms: glossary lists the same acronym twice.
struct duplicate_glossary_entry : error {
    using error::error;
};

// acronyms: glossary file is structurally invalid.
struct glossary_format_error : error {
    using error::error;
};

// stream-level I/O problem (unreadable file, short write, ...).
struct io_failure : error {
    using error::error;
};

// aggregate: weighted rollup asked for a year with no papers.
struct zero_papers : error {
    using error::error;
};

// aggregate: percentile against an empty baseline distribution.
struct empty_baseline : error {
    using error::error;
};

// network client: transport failure that survived every retry.
struct network_error : error {
    using error::error;
};

// network client: endpoint rejected the credentials.
struct auth_error : error {
    using error::error;
};

// aggregate: not enough data to form the requested statistic.
struct insufficient_data : error {
    using error::error;
};

// judge: standardization window has zero variance.
struct degenerate_baseline : error {
    using error::error;
};

// gates: P5 asked to run without a summary document.
struct missing_summary : error {
    using error::error;
};

}  // namespace scribemeter

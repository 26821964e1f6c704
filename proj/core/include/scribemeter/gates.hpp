#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "scribemeter/acronyms.hpp"
#include "scribemeter/aggregate.hpp"
#include "scribemeter/config.hpp"
#include "scribemeter/readability.hpp"
#include "scribemeter/sensational.hpp"
#include "scribemeter/style.hpp"
#include "scribemeter/text.hpp"

namespace scribemeter {

struct novel_acronym {
    std::string surface;
    // expansion spotted as "Something (ACRO)" or "ACRO (Something)"
    bool expanded = false;
};

struct p1_verdict {
    bool pass = true;
    std::size_t limit = 2;
    std::vector<novel_acronym> novel;  // first-use order across title+abstract
    std::vector<std::string> warnings;  // novel acronyms never expanded
};

// Novel = unique acronym surfaces (title + abstract, exact match) outside
// both the approved set and the glossary.  Pass iff count <= limit.
p1_verdict gate_p1(const document& title, const document& abstract,
                   const glossary& gloss, const std::set<std::string>& approved,
                   std::size_t limit);

struct p2_check {
    std::string name;  // flesch_ease / sentence_length / parse_depth
    bool flagged = false;
    bool skipped = false;  // no threshold configured, or no parse supplied
    std::optional<double> measured;
    std::optional<double> threshold;
    std::string note;
};

struct p2_verdict {
    bool pass = true;  // no criterion flagged
    gate_mode mode = gate_mode::warn;
    std::vector<p2_check> checks;  // always three, fixed order
    std::string author_justification;
};

// Flesch floor on the abstract, sentence-length and parse-depth ceilings on
// the style metrics.  Criteria are independent; a missing parse skips the
// depth criterion with a notice rather than failing.
p2_verdict gate_p2(const readability_scores& abstract_readability,
                   const style_scores& abstract_style, const gate_policy& policy);

struct p5_verdict {
    bool pass = true;
    std::size_t word_count = 0;
    std::size_t limit = 100;
    std::vector<std::string> disallowed;  // acronyms outside the approved set
};

// Plain-language summary: word budget and approved-acronyms-only.
// Throws missing_summary when the summary has no words.
p5_verdict gate_p5(const document& summary, const std::set<std::string>& approved,
                   std::size_t limit);

struct provenance {
    std::string tool_version;
    std::map<std::string, std::string> lexicons;  // name -> crc32 fingerprint
    std::string config;                           // crc32 of the policy file
};

struct audit_inputs {
    document title;
    document abstract;
    std::optional<document> summary;       // enables the P5 verdict
    std::optional<parsed_document> parse;  // abstract dependency parse
};

struct audit_lexicons {
    readability_lexicons readability;
    style_lexicons style;
    sensational_lexicon sensational;
};

struct percentile_row {
    std::string metric;
    std::string source;  // baseline name
    double value = 0.0;
    double percentile = 0.0;
};

struct audit_report {
    readability_scores title_readability;
    readability_scores abstract_readability;
    style_scores abstract_style;
    sensational_counts abstract_sensational;
    double title_acronym_density = 0.0;
    double abstract_acronym_density = 0.0;
    p1_verdict p1;
    p2_verdict p2;
    std::optional<p5_verdict> p5;
    std::vector<percentile_row> percentiles;  // when baselines were supplied
    provenance prov;
};

// The whole audit: 15 readability metrics on title and abstract, 12 style
// metrics and 10 sensational rates on the abstract, acronym densities and
// the novel count, gate verdicts, and a percentile per supplied baseline.
// No timestamps anywhere: identical inputs give identical bytes.
audit_report self_audit(const audit_inputs& in, const audit_lexicons& lex,
                        const gate_policy& policy, const glossary& gloss,
                        const std::vector<baseline_distribution>& baselines,
                        const provenance& prov);

std::string report_to_json(const audit_report& r);   // two-space indent + newline
std::string report_to_table(const audit_report& r);  // human-readable

// True when any gate failed and the policy escalates it (P2 only escalates
// under require_revision); drives the CLI's exit code.
bool gates_require_revision(const audit_report& r);

}  // namespace scribemeter

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "scribemeter/corpus.hpp"
#include "scribemeter/text.hpp"

namespace scribemeter {

enum class prompt_id { simple, ascb, own_reasoning };

std::string to_string(prompt_id id);
std::optional<prompt_id> prompt_id_from_string(const std::string& s);

struct judge_prompt {
    prompt_id id = prompt_id::simple;
    std::string template_text;  // contains the {SUMMARY} placeholder
};

// The three protocol prompts, score-only output format.
const std::vector<judge_prompt>& default_prompts();

// {SUMMARY} replaced by the abstract text; no other mutation.
// Throws empty_document.
std::string render_prompt(const judge_prompt& p, const document& abstract);

// First integer 1-5 after a case-insensitive "Score:" marker (optional
// whitespace); nullopt when no occurrence yields a valid score.
std::optional<int> parse_score(const std::string& completion);

// per-triple aggregate: median of runs (protocol default) or their mean
enum class triple_aggregation { median, mean };
// standardization sigma variant; population is the pinned default
enum class sigma_kind { population, sample };

struct judge_config {
    std::string endpoint_url;           // e.g. http://host:port
    std::string endpoint_path = "/v1/chat/completions";
    std::string api_key_env;            // env var holding the key, may be empty
    double temperature = 0.7;
    int max_new_tokens = 32;
    int runs_per_triple = 3;
    std::vector<std::string> models;
    triple_aggregation aggregation = triple_aggregation::median;
    sigma_kind sigma = sigma_kind::population;
    unsigned max_retries = 3;
    unsigned backoff_ms = 100;
    std::size_t max_triples = 0;        // budget; 0 = unlimited
};

struct judge_score {
    std::string paper_id;
    std::string model;
    prompt_id prompt = prompt_id::simple;
    std::vector<std::optional<int>> runs;  // length runs_per_triple
    std::optional<int> median;             // missing when the triple failed
    std::optional<double> value;           // downstream aggregate (median or mean)
    std::size_t resamples = 0;
};

// One JSONL line per completed triple; the resume key is
// (paper_id, model, prompt).
std::string judge_score_to_json(const judge_score& s);
std::vector<judge_score> read_judge_ledger(const std::string& path);

// Runs every (paper x model x prompt) triple not already in the ledger,
// appending each completed triple to the ledger file as it finishes.  An
// unparseable run is re-sampled once; if still unparseable the whole triple
// is recorded with a missing median.  Stops cleanly when cfg.max_triples new
// triples have been issued (the crash-restart hook).  Returns all scores,
// ledger-resident ones included, in deterministic (input x model x prompt)
// order.
std::vector<judge_score> judge_corpus(const std::vector<paper_record>& records,
                                      const judge_config& cfg,
                                      const std::vector<judge_prompt>& prompts,
                                      const std::string& ledger_path);

// Mean of per-paper triple aggregates per (model, prompt, year).
std::map<std::tuple<std::string, prompt_id, int>, double> yearly_judge_means(
    const std::vector<judge_score>& scores,
    const std::map<std::string, int>& paper_year);

// z_t = (x_t - mu)/sigma with mu, sigma taken over the series' 1987-2022
// window.  Throws degenerate_baseline when sigma is zero and
// insufficient_data when fewer than 2 window years are present.
std::map<int, double> standardize(const std::map<int, double>& series,
                                  int base_from = 1987, int base_to = 2022,
                                  sigma_kind sigma = sigma_kind::population);

// Mean of the standardized per-(model, prompt) series per year: the avg_z
// column of the judge CSV contract.
std::map<int, double> average_z(
    const std::map<std::tuple<std::string, prompt_id, int>, double>& yearly_means,
    int base_from = 1987, int base_to = 2022,
    sigma_kind sigma = sigma_kind::population);

}  // namespace scribemeter

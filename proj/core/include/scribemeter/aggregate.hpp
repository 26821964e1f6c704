#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "scribemeter/corpus.hpp"

namespace scribemeter {

// A paper with its computed metric vector; what `score` emits and every
// aggregation stage consumes.
struct scored_paper {
    std::string paper_id;
    std::string venue;  // neurips | arxiv | pubmed | ...
    int year = 0;
    std::optional<std::string> arxiv_primary_category;
    std::optional<std::int64_t> citation_count;
    std::map<std::string, double> metrics;
};

struct venue_year_aggregate {
    std::string venue;  // series key: neurips, arxiv_ml, arxiv_nonml, pubmed, ...
    int year = 0;
    std::size_t paper_count = 0;
    std::map<std::string, double> metric_means;  // unweighted
    std::map<std::string, std::size_t> category_counts;  // arXiv sub-counts
};

// Unweighted per-bin means, keyed by (series, year); arXiv papers fall into
// arxiv_ml / arxiv_nonml by their primary category.  Deterministic regardless
// of input order.
std::vector<venue_year_aggregate> aggregate_venue_year(
    const std::vector<scored_paper>& records);

// Same shape but binned by (arXiv primary category, year); non-arXiv records
// are ignored.  Input to the weighted rollup.
std::vector<venue_year_aggregate> aggregate_category_year(
    const std::vector<scored_paper>& records);

struct rollup_series {
    // year -> weighted mean, plus the paper counts behind each weight
    std::map<int, double> ml;
    std::map<int, double> non_ml;
    std::map<int, std::size_t> ml_count;
    std::map<int, std::size_t> non_ml_count;
};

// Count-weighted rollup of per-category aggregates into ML / non-ML series
// for one metric: sum(count*mean)/sum(count) per year.  Throws zero_papers if
// a requested year has no papers.
rollup_series weighted_category_rollup(const std::vector<venue_year_aggregate>& per_category,
                                       const std::string& metric);

struct baseline_distribution {
    std::string metric;
    std::string source;
    std::vector<double> values;  // sorted ascending
};

baseline_distribution make_baseline(std::string metric, std::string source,
                                    std::vector<double> values);
void save_baseline(const baseline_distribution& base, const std::string& path);
baseline_distribution load_baseline(const std::string& path);

// Percent of baseline strictly below, counting ties at half weight.
// Throws empty_baseline.
double percentile_rank(double value, const baseline_distribution& base);

// Attach citation counts by paper id; returns how many records had no match.
std::size_t citation_join(std::vector<paper_record>& records,
                          const std::map<std::string, std::int64_t>& counts);

struct citation_endpoint {
    std::string base_url;       // e.g. http://host:port
    std::string path = "/batch";
    std::string api_key_env;    // env var holding the credential, may be empty
    std::size_t batch_size = 500;
    unsigned max_retries = 3;
    unsigned backoff_ms = 100;  // doubles per retry
};

struct citation_fetch_result {
    std::map<std::string, std::int64_t> counts;
    std::vector<std::string> misses;
};

// Batched POSTs (JSON array of ids in, array of {id, citationCount} out).
// Retries with exponential backoff on throttle/5xx; partial results plus a
// miss list come back.  Throws auth_error on credential rejection and
// network_error once retries are exhausted.
citation_fetch_result fetch_citation_counts(const std::vector<std::string>& ids,
                                            const citation_endpoint& endpoint);

struct decile_group_stats {
    double top_mean = 0.0;
    double top_ci95 = 0.0;
    double bottom_mean = 0.0;
    double bottom_ci95 = 0.0;
    double delta = 0.0;  // top - bottom
    std::size_t top_n = 0;
    std::size_t bottom_n = 0;
};

struct decile_stats_result {
    std::map<std::string, decile_group_stats> per_metric;
    std::vector<std::string> warnings;  // excluded year bins
};

// Within-year citation percentile first, then pooled top-10% / bottom-10%
// groups across years.  Year bins with fewer than 10 papers are excluded with
// a warning; throws insufficient_data when nothing remains.
decile_stats_result decile_stats(const std::vector<scored_paper>& records);

// metric CSV contract: header year,neurips,arxiv_ml,arxiv_nonml,pubmed with
// empty cells for missing venue-years
struct metric_series_table {
    // series name -> (year -> value); emitted column order is fixed
    std::map<std::string, std::map<int, double>> series;
};

void emit_metric_csv(const metric_series_table& table, const std::string& path);
metric_series_table read_metric_csv(const std::string& path);

// judge series contract: header year,avg_z
void emit_judge_csv(const std::map<int, double>& avg_z, const std::string& path);
std::map<int, double> read_judge_csv(const std::string& path);

}  // namespace scribemeter

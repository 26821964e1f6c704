#include "scribemeter/aggregate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <set>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "csv.hpp"
#include "scribemeter/errors.hpp"

namespace scribemeter {

namespace {

std::string series_key(const scored_paper& rec) {
    if (rec.venue != "arxiv") return rec.venue;
    if (!rec.arxiv_primary_category) return "arxiv_unknown";
    return ml_category_set().count(*rec.arxiv_primary_category) ? "arxiv_ml"
                                                                : "arxiv_nonml";
}

// permutation-invariant mean: sort before summing so input order can never
// change the rounding
double stable_mean(std::vector<double>& values) {
    std::sort(values.begin(), values.end());
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

std::vector<venue_year_aggregate> aggregate_by_key(
    const std::vector<scored_paper>& records,
    const std::function<std::optional<std::string>(const scored_paper&)>& key_of) {
    struct bin {
        std::size_t count = 0;
        std::map<std::string, std::vector<double>> metric_values;
        std::map<std::string, std::size_t> category_counts;
    };
    std::map<std::pair<std::string, int>, bin> bins;
    for (const scored_paper& rec : records) {
        std::optional<std::string> key = key_of(rec);
        if (!key) continue;
        bin& b = bins[{*key, rec.year}];
        ++b.count;
        for (const auto& [metric, value] : rec.metrics)
            b.metric_values[metric].push_back(value);
        if (rec.arxiv_primary_category)
            ++b.category_counts[*rec.arxiv_primary_category];
    }

    std::vector<venue_year_aggregate> out;
    out.reserve(bins.size());
    for (auto& [key, b] : bins) {
        venue_year_aggregate agg;
        agg.venue = key.first;
        agg.year = key.second;
        agg.paper_count = b.count;
        agg.category_counts = std::move(b.category_counts);
        for (auto& [metric, values] : b.metric_values)
            agg.metric_means[metric] = stable_mean(values);
        out.push_back(std::move(agg));
    }
    return out;  // map iteration: sorted by (venue, year)
}

}  // namespace

std::vector<venue_year_aggregate> aggregate_venue_year(
    const std::vector<scored_paper>& records) {
    return aggregate_by_key(records, [](const scored_paper& rec) {
        return std::optional<std::string>(series_key(rec));
    });
}

std::vector<venue_year_aggregate> aggregate_category_year(
    const std::vector<scored_paper>& records) {
    return aggregate_by_key(records, [](const scored_paper& rec) -> std::optional<std::string> {
        if (rec.venue != "arxiv" || !rec.arxiv_primary_category) return std::nullopt;
        return *rec.arxiv_primary_category;
    });
}

rollup_series weighted_category_rollup(const std::vector<venue_year_aggregate>& per_category,
                                       const std::string& metric) {
    struct acc {
        double weighted = 0.0;
        std::size_t count = 0;
    };
    std::map<int, acc> ml, non_ml;
    for (const venue_year_aggregate& agg : per_category) {
        auto it = agg.metric_means.find(metric);
        if (it == agg.metric_means.end()) continue;
        acc& a = ml_category_set().count(agg.venue) ? ml[agg.year] : non_ml[agg.year];
        a.weighted += static_cast<double>(agg.paper_count) * it->second;
        a.count += agg.paper_count;
    }

    rollup_series out;
    for (const auto& [year, a] : ml) {
        if (a.count == 0) throw zero_papers("ML rollup year " + std::to_string(year));
        out.ml[year] = a.weighted / static_cast<double>(a.count);
        out.ml_count[year] = a.count;
    }
    for (const auto& [year, a] : non_ml) {
        if (a.count == 0) throw zero_papers("non-ML rollup year " + std::to_string(year));
        out.non_ml[year] = a.weighted / static_cast<double>(a.count);
        out.non_ml_count[year] = a.count;
    }
    return out;
}

baseline_distribution make_baseline(std::string metric, std::string source,
                                    std::vector<double> values) {
    baseline_distribution base;
    base.metric = std::move(metric);
    base.source = std::move(source);
    base.values = std::move(values);
    std::sort(base.values.begin(), base.values.end());
    return base;
}

void save_baseline(const baseline_distribution& base, const std::string& path) {
    nlohmann::ordered_json j;
    j["metric"] = base.metric;
    j["source"] = base.source;
    j["values"] = base.values;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_failure("cannot write baseline: " + path);
    out << j.dump(2) << "\n";
    if (!out) throw io_failure("short write: " + path);
}

baseline_distribution load_baseline(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_failure("cannot open baseline: " + path);
    nlohmann::json j;
    try {
        in >> j;
        return make_baseline(j.at("metric").get<std::string>(),
                             j.value("source", std::string{}),
                             j.at("values").get<std::vector<double>>());
    } catch (const nlohmann::json::exception& e) {
        throw io_failure(path + ": " + e.what());
    }
}

double percentile_rank(double value, const baseline_distribution& base) {
    if (base.values.empty())
        throw empty_baseline("percentile against an empty baseline: " + base.metric);
    auto lo = std::lower_bound(base.values.begin(), base.values.end(), value);
    auto hi = std::upper_bound(lo, base.values.end(), value);
    double below = static_cast<double>(lo - base.values.begin());
    double ties = static_cast<double>(hi - lo);
    return 100.0 * (below + 0.5 * ties) / static_cast<double>(base.values.size());
}

std::size_t citation_join(std::vector<paper_record>& records,
                          const std::map<std::string, std::int64_t>& counts) {
    std::size_t misses = 0;
    for (paper_record& rec : records) {
        auto it = counts.find(rec.paper_id);
        if (it == counts.end())
            ++misses;
        else
            rec.citation_count = it->second;
    }
    return misses;
}

citation_fetch_result fetch_citation_counts(const std::vector<std::string>& ids,
                                            const citation_endpoint& endpoint) {
    citation_fetch_result result;
    if (ids.empty()) return result;

    httplib::Client client(endpoint.base_url);
    client.set_connection_timeout(10);
    client.set_read_timeout(30);

    httplib::Headers headers;
    if (!endpoint.api_key_env.empty()) {
        const char* key = std::getenv(endpoint.api_key_env.c_str());
        if (key && *key) headers.emplace("Authorization", std::string("Bearer ") + key);
    }

    const std::size_t batch = std::min<std::size_t>(endpoint.batch_size, 500);
    for (std::size_t off = 0; off < ids.size(); off += batch) {
        nlohmann::json body = nlohmann::json::array();
        const std::size_t end = std::min(ids.size(), off + batch);
        for (std::size_t i = off; i < end; ++i) body.push_back(ids[i]);

        httplib::Result res;
        unsigned attempt = 0;
        while (true) {
            res = client.Post(endpoint.path, headers, body.dump(), "application/json");
            if (res) {
                if (res->status == 401 || res->status == 403)
                    throw auth_error("citation endpoint rejected credentials (HTTP " +
                                     std::to_string(res->status) + ")");
                if (res->status == 200) break;
                // throttle / transient server error: fall through to retry
            }
            if (attempt >= endpoint.max_retries)
                throw network_error("citation endpoint failed after " +
                                    std::to_string(attempt + 1) + " attempts");
            std::this_thread::sleep_for(
                std::chrono::milliseconds(endpoint.backoff_ms << attempt));
            ++attempt;
        }

        nlohmann::json parsed;
        try {
            parsed = nlohmann::json::parse(res->body);
        } catch (const nlohmann::json::exception& e) {
            throw network_error(std::string("citation endpoint returned invalid JSON: ") +
                                e.what());
        }
        if (parsed.is_array()) {
            for (const auto& item : parsed) {
                if (!item.is_object() || !item.contains("id") ||
                    !item.contains("citationCount") || !item["citationCount"].is_number())
                    continue;  // null rows = misses
                result.counts[item["id"].get<std::string>()] =
                    item["citationCount"].get<std::int64_t>();
            }
        }
    }
    for (const std::string& id : ids)
        if (!result.counts.count(id)) result.misses.push_back(id);
    return result;
}

namespace {

struct group_acc {
    std::vector<double> values;
};

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double ci95_of(const std::vector<double>& v) {
    const std::size_t n = v.size();
    if (n <= 1) return 0.0;
    double m = mean_of(v);
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    double sd = std::sqrt(ss / static_cast<double>(n - 1));
    return 1.96 * sd / std::sqrt(static_cast<double>(n));
}

}  // namespace

decile_stats_result decile_stats(const std::vector<scored_paper>& records) {
    std::map<int, std::vector<const scored_paper*>> by_year;
    for (const scored_paper& rec : records)
        if (rec.citation_count) by_year[rec.year].push_back(&rec);

    decile_stats_result result;
    std::map<std::string, group_acc> top, bottom;

    for (const auto& [year, papers] : by_year) {
        if (papers.size() < 10) {
            result.warnings.push_back("year " + std::to_string(year) + " excluded: only " +
                                      std::to_string(papers.size()) + " papers");
            continue;
        }
        std::vector<double> cites;
        cites.reserve(papers.size());
        for (const scored_paper* p : papers)
            cites.push_back(static_cast<double>(*p->citation_count));
        std::sort(cites.begin(), cites.end());
        const double n = static_cast<double>(cites.size());
        for (const scored_paper* p : papers) {
            double v = static_cast<double>(*p->citation_count);
            auto lo = std::lower_bound(cites.begin(), cites.end(), v);
            auto hi = std::upper_bound(lo, cites.end(), v);
            double pct = 100.0 *
                         (static_cast<double>(lo - cites.begin()) +
                          0.5 * static_cast<double>(hi - lo)) /
                         n;
            if (pct >= 90.0)
                for (const auto& [metric, value] : p->metrics)
                    top[metric].values.push_back(value);
            else if (pct <= 10.0)
                for (const auto& [metric, value] : p->metrics)
                    bottom[metric].values.push_back(value);
        }
    }

    for (const auto& [metric, t] : top) {
        auto bit = bottom.find(metric);
        if (bit == bottom.end()) continue;
        decile_group_stats g;
        g.top_n = t.values.size();
        g.bottom_n = bit->second.values.size();
        g.top_mean = mean_of(t.values);
        g.top_ci95 = ci95_of(t.values);
        g.bottom_mean = mean_of(bit->second.values);
        g.bottom_ci95 = ci95_of(bit->second.values);
        g.delta = g.top_mean - g.bottom_mean;
        result.per_metric[metric] = g;
    }
    if (result.per_metric.empty())
        throw insufficient_data("no year bin had enough papers for decile groups");
    return result;
}

// ---------------------------------------------------------------------------
// CSV contracts

namespace {
const std::vector<std::string>& metric_csv_columns() {
    static const std::vector<std::string> cols = {"neurips", "arxiv_ml", "arxiv_nonml",
                                                  "pubmed"};
    return cols;
}
}  // namespace

void emit_metric_csv(const metric_series_table& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_failure("cannot write " + path);

    std::set<int> years;
    for (const std::string& col : metric_csv_columns()) {
        auto it = table.series.find(col);
        if (it == table.series.end()) continue;
        for (const auto& [year, value] : it->second) years.insert(year);
    }

    out << "year,neurips,arxiv_ml,arxiv_nonml,pubmed\n";
    for (int year : years) {
        out << year;
        for (const std::string& col : metric_csv_columns()) {
            out << ",";
            auto sit = table.series.find(col);
            if (sit == table.series.end()) continue;
            auto vit = sit->second.find(year);
            if (vit != sit->second.end()) out << detail::format_double(vit->second);
        }
        out << "\n";
    }
    if (!out) throw io_failure("short write: " + path);
}

metric_series_table read_metric_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_failure("cannot open " + path);
    std::vector<std::vector<std::string>> rows = detail::read_csv(in);
    if (rows.empty() || rows[0] != std::vector<std::string>{"year", "neurips", "arxiv_ml",
                                                            "arxiv_nonml", "pubmed"})
        throw io_failure(path + ": expected header year,neurips,arxiv_ml,arxiv_nonml,pubmed");

    metric_series_table table;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (row.empty()) continue;
        int year = std::stoi(row[0]);
        for (std::size_t c = 0; c < metric_csv_columns().size(); ++c) {
            if (c + 1 >= row.size() || row[c + 1].empty()) continue;
            table.series[metric_csv_columns()[c]][year] =
                detail::parse_double(row[c + 1]);
        }
    }
    return table;
}

void emit_judge_csv(const std::map<int, double>& avg_z, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_failure("cannot write " + path);
    out << "year,avg_z\n";
    for (const auto& [year, z] : avg_z)
        out << year << "," << detail::format_double(z) << "\n";
    if (!out) throw io_failure("short write: " + path);
}

std::map<int, double> read_judge_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_failure("cannot open " + path);
    std::vector<std::vector<std::string>> rows = detail::read_csv(in);
    if (rows.empty() || rows[0] != std::vector<std::string>{"year", "avg_z"})
        throw io_failure(path + ": expected header year,avg_z");
    std::map<int, double> out;
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].size() == 2 && !rows[i][1].empty())
            out[std::stoi(rows[i][0])] = detail::parse_double(rows[i][1]);
    return out;
}

}  // namespace scribemeter

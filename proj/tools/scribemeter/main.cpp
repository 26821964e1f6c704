// scribemeter command-line tool: audit, ingest, score, aggregate, registry,
// judge, gate, baseline.  Exit codes: 0 success, 1 gate failure under
// require_revision, 2 errors (including usage).

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "scribemeter/acronyms.hpp"
#include "scribemeter/aggregate.hpp"
#include "scribemeter/config.hpp"
#include "scribemeter/corpus.hpp"
#include "scribemeter/errors.hpp"
#include "scribemeter/gates.hpp"
#include "scribemeter/judge.hpp"
#include "scribemeter/readability.hpp"
#include "scribemeter/sensational.hpp"
#include "scribemeter/style.hpp"
#include "scribemeter/text.hpp"
#include "scribemeter/version.hpp"

namespace sm = scribemeter;
using ordered_json = nlohmann::ordered_json;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw sm::io_failure("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spill(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw sm::io_failure("cannot write " + path);
    out << bytes;
    if (!out) throw sm::io_failure("short write to " + path);
}

struct lexicon_paths {
    std::string dale, spache, signposting, hedging, sensational;
};

lexicon_paths data_files(const std::string& data_dir) {
    namespace fs = std::filesystem;
    fs::path d(data_dir);
    return {(d / "dale_easy.txt").string(), (d / "spache_easy.txt").string(),
            (d / "signposting.txt").string(), (d / "hedging.txt").string(),
            (d / "sensational.lex").string()};
}

sm::audit_lexicons load_lexicons(const lexicon_paths& p) {
    sm::audit_lexicons lex;
    lex.readability.dale_familiar = sm::load_word_list(p.dale);
    lex.readability.spache_familiar = sm::load_word_list(p.spache);
    lex.style.signposting = sm::load_phrase_list(p.signposting);
    lex.style.hedging = sm::load_phrase_list(p.hedging);
    lex.sensational = sm::load_sensational_lexicon(p.sensational);
    return lex;
}

sm::provenance build_provenance(const lexicon_paths& p, const std::string& policy_path) {
    sm::provenance prov;
    prov.tool_version = std::string(sm::version);
    prov.lexicons["dale_easy"] = sm::file_fingerprint(p.dale);
    prov.lexicons["spache_easy"] = sm::file_fingerprint(p.spache);
    prov.lexicons["signposting"] = sm::file_fingerprint(p.signposting);
    prov.lexicons["hedging"] = sm::file_fingerprint(p.hedging);
    prov.lexicons["sensational"] = sm::file_fingerprint(p.sensational);
    if (!policy_path.empty()) prov.config = sm::file_fingerprint(policy_path);
    return prov;
}

// ---- scored-paper JSONL (the `score` -> `aggregate`/`baseline` interchange)

std::string scored_to_json(const sm::scored_paper& p) {
    ordered_json j;
    j["paper_id"] = p.paper_id;
    j["venue"] = p.venue;
    j["year"] = p.year;
    j["arxiv_primary_category"] =
        p.arxiv_primary_category ? ordered_json(*p.arxiv_primary_category)
                                 : ordered_json(nullptr);
    j["citation_count"] = p.citation_count ? ordered_json(*p.citation_count)
                                           : ordered_json(nullptr);
    ordered_json metrics;
    for (const auto& [name, value] : p.metrics) metrics[name] = value;
    j["metrics"] = std::move(metrics);
    return j.dump();
}

std::vector<sm::scored_paper> read_scored_jsonl(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw sm::io_failure("cannot open " + path);
    std::vector<sm::scored_paper> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        ordered_json j = ordered_json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object())
            throw sm::io_failure(path + ":" + std::to_string(line_no) +
                                 ": malformed scored record");
        sm::scored_paper p;
        p.paper_id = j.value("paper_id", "");
        p.venue = j.value("venue", "");
        p.year = j.value("year", 0);
        if (j.contains("arxiv_primary_category") && j["arxiv_primary_category"].is_string())
            p.arxiv_primary_category = j["arxiv_primary_category"].get<std::string>();
        if (j.contains("citation_count") && j["citation_count"].is_number())
            p.citation_count = j["citation_count"].get<std::int64_t>();
        if (j.contains("metrics"))
            for (auto it = j["metrics"].begin(); it != j["metrics"].end(); ++it)
                p.metrics[it.key()] = it.value().get<double>();
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<sm::paper_record> read_records(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw sm::io_failure("cannot open " + path);
    sm::ingest_counters counters;
    auto records = sm::read_jsonl(in, counters);
    if (counters.malformed)
        std::cerr << "scribemeter: " << counters.malformed
                  << " malformed records skipped in " << path << "\n";
    return records;
}

// ---- audit/gate shared plumbing

struct audit_options {
    std::string title_path, abstract_path, summary_path, parse_path;
    std::string policy_path, glossary_path, data_dir, out_path;
    std::vector<std::string> baseline_paths;
    std::string format = "table";
};

void add_audit_options(CLI::App* cmd, audit_options& opt, bool baselines) {
    cmd->add_option("--title", opt.title_path, "title text file")->required();
    cmd->add_option("--abstract", opt.abstract_path, "abstract text file")->required();
    cmd->add_option("--summary", opt.summary_path,
                    "plain-language summary text file (enables the P5 verdict)");
    cmd->add_option("--parse", opt.parse_path,
                    "CoNLL-U dependency parse of the abstract");
    cmd->add_option("--policy", opt.policy_path, "gate policy TOML");
    cmd->add_option("--glossary", opt.glossary_path, "community glossary JSON/CSV");
    cmd->add_option("--data-dir", opt.data_dir, "lexicon directory");
    cmd->add_option("--out", opt.out_path, "write the report here instead of stdout");
    if (baselines)
        cmd->add_option("--baseline", opt.baseline_paths,
                        "baseline distribution file (repeatable)");
    cmd->add_option("--format", opt.format, "table or json")
        ->check(CLI::IsMember({"table", "json"}));
}

sm::audit_report run_audit(const audit_options& opt) {
    std::string data_dir = opt.data_dir.empty() ? sm::default_data_dir() : opt.data_dir;
    lexicon_paths paths = data_files(data_dir);
    sm::audit_lexicons lex = load_lexicons(paths);

    sm::audit_inputs in;
    in.title = {slurp(opt.title_path), sm::doc_kind::title};
    in.abstract = {slurp(opt.abstract_path), sm::doc_kind::abstract};
    if (!opt.summary_path.empty())
        in.summary = sm::document{slurp(opt.summary_path), sm::doc_kind::summary};
    if (!opt.parse_path.empty()) in.parse = sm::ingest_parse(slurp(opt.parse_path));

    sm::gate_policy policy;
    if (!opt.policy_path.empty()) policy = sm::load_gate_policy(opt.policy_path);
    sm::glossary gloss;
    if (!opt.glossary_path.empty()) gloss = sm::load_glossary(opt.glossary_path);

    std::vector<sm::baseline_distribution> baselines;
    for (const auto& p : opt.baseline_paths) baselines.push_back(sm::load_baseline(p));

    return sm::self_audit(in, lex, policy, gloss, baselines,
                          build_provenance(paths, opt.policy_path));
}

int emit_report(const sm::audit_report& report, const audit_options& opt,
                bool gates_only) {
    std::string text;
    if (opt.format == "json") {
        if (gates_only) {
            ordered_json full = ordered_json::parse(sm::report_to_json(report));
            ordered_json j;
            j["gates"] = full["gates"];
            j["provenance"] = full["provenance"];
            text = j.dump(2) + "\n";
        } else {
            text = sm::report_to_json(report);
        }
    } else {
        text = sm::report_to_table(report);
        if (gates_only) {
            std::size_t pos = text.find("\ngates\n");
            if (pos != std::string::npos) text = text.substr(pos + 1);
        }
    }
    if (opt.out_path.empty())
        std::cout << text;
    else
        spill(opt.out_path, text);
    return sm::gates_require_revision(report) ? 1 : 0;
}

// ---- score metric vector

void score_one(const sm::paper_record& rec, const sm::audit_lexicons& lex,
               sm::scored_paper& out) {
    sm::document abs{rec.abstract, sm::doc_kind::abstract};
    sm::token_stats stats = sm::compute_token_stats(abs);
    sm::readability_scores r = sm::compute_readability(stats, abs, lex.readability);
    for (const std::string& name : sm::readability_metric_names())
        out.metrics[name] = sm::readability_value(r, name);

    sm::style_scores s = sm::style_regex_metrics(abs, lex.style);
    for (const char* name :
         {"sentence_length", "numbers_per100", "signposting_per100",
          "hedging_per100", "active_narration", "type_token_ratio"})
        out.metrics[name] = *sm::style_value(s, name);

    sm::sensational_counts sens = sm::sensational_rates(abs, lex.sensational);
    for (const auto& [cat, rate] : sens.per100) out.metrics["sensational_" + cat] = rate;

    out.metrics["acronym_density"] = sm::acronym_density(abs);
    if (!rec.title.empty()) {
        sm::document title{rec.title, sm::doc_kind::title};
        try {
            out.metrics["title_acronym_density"] = sm::acronym_density(title);
        } catch (const sm::empty_document&) {
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"scribemeter: readability, style, and hype audits for "
                 "scientific writing"};
    app.set_version_flag("--version", std::string(sm::version));
    app.require_subcommand(1);

    // ---- audit / gate
    audit_options audit_opt;
    CLI::App* audit = app.add_subcommand("audit", "full metric + gate report");
    add_audit_options(audit, audit_opt, true);

    audit_options gate_opt;
    CLI::App* gate = app.add_subcommand("gate", "policy gate verdicts only");
    add_audit_options(gate, gate_opt, false);

    // ---- ingest
    std::string ingest_format, ingest_in, ingest_out;
    CLI::App* ingest = app.add_subcommand("ingest", "corpus file -> canonical JSONL");
    ingest->add_option("--format", ingest_format, "arxiv, pubmed, or neurips")
        ->required()
        ->check(CLI::IsMember({"arxiv", "pubmed", "neurips"}));
    ingest->add_option("--in", ingest_in, "input file (.gz accepted for pubmed)")
        ->required();
    ingest->add_option("--out", ingest_out, "canonical JSONL output")->required();

    // ---- score
    std::string score_in, score_out, score_data_dir;
    CLI::App* score = app.add_subcommand("score", "canonical JSONL -> per-paper metrics");
    score->add_option("--in", score_in, "canonical JSONL")->required();
    score->add_option("--out", score_out, "scored JSONL output")->required();
    score->add_option("--data-dir", score_data_dir, "lexicon directory");

    // ---- aggregate
    std::string agg_in, agg_out_dir, agg_deciles, agg_citations_url, agg_citations_path;
    CLI::App* aggregate =
        app.add_subcommand("aggregate", "scored JSONL -> per-metric venue-year CSVs");
    aggregate->add_option("--in", agg_in, "scored JSONL")->required();
    aggregate->add_option("--out", agg_out_dir, "output directory, one CSV per metric")
        ->required();
    aggregate->add_option("--deciles", agg_deciles,
                          "also write top/bottom citation-decile stats (JSON) here");
    aggregate->add_option("--citations-url", agg_citations_url,
                          "citation endpoint base URL (joined before decile stats)");
    aggregate->add_option("--citations-path", agg_citations_path,
                          "citation endpoint request path (default /batch)");

    // ---- registry
    std::string reg_in, reg_out, reg_field = "abstract";
    unsigned reg_threads = 1;
    bool reg_fold = false, reg_buckets = false;
    CLI::App* registry =
        app.add_subcommand("registry", "acronym registry and reuse buckets");
    registry->add_option("--in", reg_in, "canonical JSONL")->required();
    registry->add_option("--out", reg_out, "registry JSON output");
    registry->add_option("--field", reg_field, "title or abstract")
        ->check(CLI::IsMember({"title", "abstract"}));
    registry->add_option("--threads", reg_threads, "worker threads");
    registry->add_flag("--fold-plural", reg_fold, "fold a trailing lowercase s");
    registry->add_flag("--buckets", reg_buckets, "print reuse buckets to stdout");

    // ---- judge
    std::string judge_in, judge_cfg_path, judge_ledger, judge_out;
    CLI::App* judge =
        app.add_subcommand("judge", "LLM-as-judge harness -> year,avg_z CSV");
    judge->add_option("--in", judge_in, "canonical JSONL")->required();
    judge->add_option("--config", judge_cfg_path, "judge TOML")->required();
    judge->add_option("--ledger", judge_ledger, "append-only run ledger JSONL")
        ->required();
    judge->add_option("--out", judge_out, "avg_z CSV output")->required();

    // ---- baseline
    std::string base_in, base_metric, base_source, base_out, base_venue;
    int base_year_from = 0, base_year_to = 0;
    CLI::App* baseline =
        app.add_subcommand("baseline", "build a baseline distribution file");
    baseline->add_option("--in", base_in, "scored JSONL")->required();
    baseline->add_option("--metric", base_metric, "metric name")->required();
    baseline->add_option("--source", base_source, "baseline label, e.g. neurips-2022")
        ->required();
    baseline->add_option("--out", base_out, "baseline JSON output")->required();
    baseline->add_option("--venue", base_venue, "keep only this venue/series");
    baseline->add_option("--year-from", base_year_from, "keep years >= this");
    baseline->add_option("--year-to", base_year_to, "keep years <= this");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*audit) return emit_report(run_audit(audit_opt), audit_opt, false);
        if (*gate) return emit_report(run_audit(gate_opt), gate_opt, true);

        if (*ingest) {
            std::ofstream out(ingest_out, std::ios::binary);
            if (!out) throw sm::io_failure("cannot write " + ingest_out);
            std::vector<sm::paper_record> records;
            sm::ingest_counters counters;
            auto sink = [&](sm::paper_record&& rec) { records.push_back(std::move(rec)); };
            if (ingest_format == "pubmed") {
                bool gz = ingest_in.size() > 3 &&
                          ingest_in.compare(ingest_in.size() - 3, 3, ".gz") == 0;
                sm::ingest_pubmed_file(ingest_in, gz, sink, counters);
            } else {
                std::ifstream in(ingest_in, std::ios::binary);
                if (!in) throw sm::io_failure("cannot open " + ingest_in);
                if (ingest_format == "arxiv")
                    sm::ingest_arxiv(in, sink, counters);
                else
                    sm::ingest_neurips(in, sink, counters);
            }
            sm::write_jsonl(records, out);
            if (!out) throw sm::io_failure("short write to " + ingest_out);
            std::cerr << "ingest: emitted=" << counters.emitted
                      << " malformed=" << counters.malformed
                      << " filtered=" << counters.filtered << "\n";
            return 0;
        }

        if (*score) {
            std::string data_dir =
                score_data_dir.empty() ? sm::default_data_dir() : score_data_dir;
            sm::audit_lexicons lex = load_lexicons(data_files(data_dir));
            auto records = read_records(score_in);
            std::ofstream out(score_out, std::ios::binary);
            if (!out) throw sm::io_failure("cannot write " + score_out);
            std::size_t scored = 0, skipped = 0;
            for (const auto& rec : records) {
                sm::scored_paper p;
                p.paper_id = rec.paper_id;
                p.venue = rec.venue;
                p.year = rec.year;
                p.arxiv_primary_category = rec.arxiv_primary_category;
                p.citation_count = rec.citation_count;
                try {
                    score_one(rec, lex, p);
                } catch (const sm::empty_document&) {
                    ++skipped;
                    continue;
                } catch (const sm::degenerate_input&) {
                    ++skipped;
                    continue;
                }
                out << scored_to_json(p) << "\n";
                ++scored;
            }
            if (!out) throw sm::io_failure("short write to " + score_out);
            std::cerr << "score: scored=" << scored << " skipped=" << skipped << "\n";
            return 0;
        }

        if (*aggregate) {
            auto papers = read_scored_jsonl(agg_in);
            if (!agg_citations_url.empty()) {
                sm::citation_endpoint ep;
                ep.base_url = agg_citations_url;
                if (!agg_citations_path.empty()) ep.path = agg_citations_path;
                std::vector<std::string> ids;
                for (const auto& p : papers)
                    if (!p.citation_count) ids.push_back(p.paper_id);
                auto fetched = sm::fetch_citation_counts(ids, ep);
                for (auto& p : papers) {
                    auto it = fetched.counts.find(p.paper_id);
                    if (it != fetched.counts.end()) p.citation_count = it->second;
                }
                std::cerr << "aggregate: citations joined="
                          << fetched.counts.size() << " misses="
                          << fetched.misses.size() << "\n";
            }
            auto bins = sm::aggregate_venue_year(papers);
            std::set<std::string> metric_names;
            for (const auto& bin : bins)
                for (const auto& [name, mean] : bin.metric_means)
                    metric_names.insert(name);
            std::filesystem::create_directories(agg_out_dir);
            for (const auto& metric : metric_names) {
                sm::metric_series_table table;
                for (const auto& bin : bins) {
                    auto it = bin.metric_means.find(metric);
                    if (it != bin.metric_means.end())
                        table.series[bin.venue][bin.year] = it->second;
                }
                sm::emit_metric_csv(
                    table, (std::filesystem::path(agg_out_dir) / (metric + ".csv"))
                               .string());
            }
            std::cerr << "aggregate: metrics=" << metric_names.size()
                      << " bins=" << bins.size() << "\n";
            if (!agg_deciles.empty()) {
                auto deciles = sm::decile_stats(papers);
                ordered_json j;
                ordered_json per;
                for (const auto& [metric, g] : deciles.per_metric) {
                    ordered_json gj;
                    gj["top_mean"] = g.top_mean;
                    gj["top_ci95"] = g.top_ci95;
                    gj["bottom_mean"] = g.bottom_mean;
                    gj["bottom_ci95"] = g.bottom_ci95;
                    gj["delta"] = g.delta;
                    gj["top_n"] = g.top_n;
                    gj["bottom_n"] = g.bottom_n;
                    per[metric] = std::move(gj);
                }
                j["per_metric"] = std::move(per);
                j["warnings"] = deciles.warnings;
                spill(agg_deciles, j.dump(2) + "\n");
            }
            return 0;
        }

        if (*registry) {
            auto records = read_records(reg_in);
            auto field = reg_field == "title" ? sm::corpus_field::title
                                              : sm::corpus_field::abstract;
            auto reg = sm::build_registry(records, field, reg_threads, reg_fold);
            if (!reg_out.empty()) spill(reg_out, sm::registry_to_json(reg));
            if (reg_buckets || reg_out.empty()) {
                std::cout << "bucket,unique,percent\n";
                for (const auto& row : sm::bucket_frequencies(reg))
                    std::cout << row.label << "," << row.unique_count << ","
                              << row.percent << "\n";
            }
            std::cerr << "registry: surfaces=" << reg.counts.size()
                      << " skipped_empty=" << reg.skipped_empty << "\n";
            return 0;
        }

        if (*judge) {
            sm::judge_config cfg = sm::load_judge_config(judge_cfg_path);
            auto records = read_records(judge_in);
            auto scores =
                sm::judge_corpus(records, cfg, sm::default_prompts(), judge_ledger);
            std::map<std::string, int> paper_year;
            for (const auto& rec : records) paper_year[rec.paper_id] = rec.year;
            auto means = sm::yearly_judge_means(scores, paper_year);
            auto avg = sm::average_z(means, 1987, 2022, cfg.sigma);
            sm::emit_judge_csv(avg, judge_out);
            std::cerr << "judge: triples=" << scores.size()
                      << " years=" << avg.size() << "\n";
            return 0;
        }

        if (*baseline) {
            auto papers = read_scored_jsonl(base_in);
            std::vector<double> values;
            for (const auto& p : papers) {
                if (!base_venue.empty() && p.venue != base_venue) continue;
                if (base_year_from && p.year < base_year_from) continue;
                if (base_year_to && p.year > base_year_to) continue;
                auto it = p.metrics.find(base_metric);
                if (it != p.metrics.end()) values.push_back(it->second);
            }
            if (values.empty())
                throw sm::empty_baseline("no values for metric " + base_metric);
            sm::save_baseline(sm::make_baseline(base_metric, base_source, values),
                              base_out);
            std::cerr << "baseline: n=" << values.size() << "\n";
            return 0;
        }
    } catch (const sm::error& e) {
        std::cerr << "scribemeter: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "scribemeter: " << e.what() << "\n";
        return 2;
    }
    return 2;  // unreachable: a subcommand is required
}

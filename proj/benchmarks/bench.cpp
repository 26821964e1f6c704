#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "scribemeter/acronyms.hpp"
#include "scribemeter/aggregate.hpp"
#include "scribemeter/corpus.hpp"
#include "scribemeter/text.hpp"

namespace {

std::string synthetic_paragraph(std::size_t words, unsigned seed) {
    static const char* pool[] = {
        "the",        "model",    "training",  "evaluates", "benchmark",
        "results",    "shows",    "language",  "reading",   "corpus",
        "analysis",   "metric",   "sentence",  "document",  "baseline",
        "CNN",        "LSTM",     "BERT",      "method",    "approach",
    };
    std::mt19937 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, std::size(pool) - 1);
    std::string out;
    for (std::size_t i = 0; i < words; ++i) {
        if (i) out += ' ';
        out += pool[pick(rng)];
        if (i % 17 == 16) out += '.';
    }
    out += '.';
    return out;
}

std::vector<scribemeter::paper_record> synthetic_corpus(std::size_t n) {
    std::vector<scribemeter::paper_record> recs(n);
    for (std::size_t i = 0; i < n; ++i) {
        recs[i].paper_id = "p" + std::to_string(i);
        recs[i].venue = "neurips";
        recs[i].year = 2000 + static_cast<int>(i % 23);
        recs[i].title = synthetic_paragraph(10, static_cast<unsigned>(i));
        recs[i].abstract = synthetic_paragraph(120, static_cast<unsigned>(i) + 7);
    }
    return recs;
}

void bm_token_stats(benchmark::State& state) {
    scribemeter::document doc{synthetic_paragraph(150, 42),
                              scribemeter::doc_kind::abstract};
    for (auto _ : state) {
        auto stats = scribemeter::compute_token_stats(doc);
        benchmark::DoNotOptimize(stats);
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(bm_token_stats);

void bm_registry_build(benchmark::State& state) {
    auto recs = synthetic_corpus(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto reg = scribemeter::build_registry(
            recs, scribemeter::corpus_field::abstract,
            static_cast<unsigned>(state.range(1)));
        benchmark::DoNotOptimize(reg);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_registry_build)->Args({2000, 1})->Args({2000, 4});

void bm_aggregate(benchmark::State& state) {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> score(0.0, 100.0);
    std::vector<scribemeter::scored_paper> papers(10000);
    for (std::size_t i = 0; i < papers.size(); ++i) {
        papers[i].venue = i % 2 ? "neurips" : "pubmed";
        papers[i].year = 1990 + static_cast<int>(i % 30);
        papers[i].metrics["flesch_ease"] = score(rng);
    }
    for (auto _ : state) {
        auto agg = scribemeter::aggregate_venue_year(papers);
        benchmark::DoNotOptimize(agg);
    }
    state.SetItemsProcessed(state.iterations() * papers.size());
}
BENCHMARK(bm_aggregate);

}  // namespace

BENCHMARK_MAIN();

#include "scribemeter/sensational.hpp"

#include <fstream>

#include "phrase_match.hpp"
#include "scribemeter/errors.hpp"

namespace scribemeter {

const std::vector<std::string>& sensational_categories() {
    static const std::vector<std::string> cats = {
        "importance", "novelty", "rigor",   "scale",      "utility",
        "quality",    "attitude", "problem", "additional",
    };
    return cats;
}

sensational_lexicon load_sensational_lexicon(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open sensational lexicon: " + path);

    sensational_lexicon lex;
    for (const std::string& c : sensational_categories()) lex.terms[c];

    std::string line, section;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t b = line.find_first_not_of(" \t");
        if (b == std::string::npos) continue;
        std::size_t e = line.find_last_not_of(" \t");
        std::string entry = line.substr(b, e - b + 1);
        if (entry.empty() || entry[0] == '#') continue;
        if (entry.front() == '[' && entry.back() == ']') {
            section = fold_case(entry.substr(1, entry.size() - 2));
            if (!lex.terms.count(section))
                throw unknown_category("line " + std::to_string(line_no) +
                                       ": unknown sensational category [" + section + "]");
            continue;
        }
        if (section.empty())
            throw config_error("line " + std::to_string(line_no) +
                               ": term before any [category] header");
        lex.terms[section].push_back(entry);
    }
    return lex;
}

sensational_counts sensational_rates(const document& doc, const sensational_lexicon& lex) {
    std::vector<std::string> toks = tokenize(doc);
    const double W = static_cast<double>(toks.size());

    sensational_counts out;
    double total = 0.0;
    for (const std::string& cat : sensational_categories()) {
        auto it = lex.terms.find(cat);
        std::size_t hits = 0;
        if (it != lex.terms.end() && !it->second.empty()) {
            auto phrases = detail::compile_phrases(it->second, /*fold=*/true);
            hits = detail::count_phrase_hits(toks, phrases, true);
        }
        double rate = 100.0 * static_cast<double>(hits) / W;
        out.per100[cat] = rate;
        total += rate;
    }
    out.per100["total"] = total;
    return out;
}

}  // namespace scribemeter

#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "scribemeter/text.hpp"

namespace scribemeter::detail {

struct phrase {
    std::vector<std::string> words;  // case-folded iff the matcher is
};

// Phrases ready for greedy longest-first scanning.
inline std::vector<phrase> compile_phrases(const std::vector<std::string>& entries,
                                           bool fold) {
    std::vector<phrase> out;
    out.reserve(entries.size());
    for (const std::string& e : entries) {
        phrase p;
        std::size_t i = 0;
        while (i < e.size()) {
            while (i < e.size() && e[i] == ' ') ++i;
            std::size_t j = i;
            while (j < e.size() && e[j] != ' ') ++j;
            if (j > i) p.words.push_back(fold ? fold_case(e.substr(i, j - i))
                                              : e.substr(i, j - i));
            i = j;
        }
        if (!p.words.empty()) out.push_back(std::move(p));
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const phrase& a, const phrase& b) {
                         return a.words.size() > b.words.size();
                     });
    return out;
}

// Greedy scan: at each position the longest matching phrase wins and its
// tokens are consumed; every token feeds at most one hit.
inline std::size_t count_phrase_hits(const std::vector<std::string>& tokens,
                                     const std::vector<phrase>& phrases, bool fold) {
    std::vector<std::string> view;
    const std::vector<std::string>* t = &tokens;
    if (fold) {
        view.reserve(tokens.size());
        for (const std::string& tok : tokens) view.push_back(fold_case(tok));
        t = &view;
    }
    std::size_t hits = 0;
    std::size_t i = 0;
    while (i < t->size()) {
        bool matched = false;
        for (const phrase& p : phrases) {
            if (p.words.size() > t->size() - i) continue;
            bool ok = true;
            for (std::size_t k = 0; k < p.words.size(); ++k) {
                if ((*t)[i + k] != p.words[k]) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                ++hits;
                i += p.words.size();
                matched = true;
                break;
            }
        }
        if (!matched) ++i;
    }
    return hits;
}

}  // namespace scribemeter::detail

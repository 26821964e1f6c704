#include "scribemeter/style.hpp"

#include <charconv>
#include <fstream>
#include <unordered_set>

#include "phrase_match.hpp"
#include "scribemeter/errors.hpp"

namespace scribemeter {

std::vector<std::string> load_phrase_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open phrase list: " + path);
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t b = line.find_first_not_of(" \t");
        if (b == std::string::npos) continue;
        std::size_t e = line.find_last_not_of(" \t");
        std::string entry = line.substr(b, e - b + 1);
        if (entry.empty() || entry[0] == '#') continue;
        out.push_back(std::move(entry));
    }
    return out;
}

namespace {

// auxiliaries that mark a first-person sentence as non-active narration
const std::unordered_set<std::string>& copular_next() {
    static const std::unordered_set<std::string> s = {
        "are", "were", "is", "was", "be", "been", "being",
    };
    return s;
}

}  // namespace

style_scores style_regex_metrics(const document& doc, const style_lexicons& lex) {
    std::vector<std::string> toks = tokenize(doc);
    std::vector<std::string> sents = split_sentences(doc, sentence_mode::linguistic);
    const double W = static_cast<double>(toks.size());

    style_scores s;
    s.sentence_length = W / static_cast<double>(sents.size());

    std::size_t digit_toks = 0;
    std::unordered_set<std::string> uniq;
    uniq.reserve(toks.size() * 2);
    for (const std::string& t : toks) {
        if (has_digit(t)) ++digit_toks;
        uniq.insert(fold_case(t));
    }
    s.numbers_per100 = 100.0 * static_cast<double>(digit_toks) / W;
    s.type_token_ratio = static_cast<double>(uniq.size()) / W;

    auto sign = detail::compile_phrases(lex.signposting, /*fold=*/false);
    auto hedge = detail::compile_phrases(lex.hedging, /*fold=*/true);
    s.signposting_per100 =
        100.0 * static_cast<double>(detail::count_phrase_hits(toks, sign, false)) / W;
    s.hedging_per100 =
        100.0 * static_cast<double>(detail::count_phrase_hits(toks, hedge, true)) / W;

    // active narration: among sentences narrated in the first person, the
    // fraction whose first-person pronoun is followed by a plain verb rather
    // than a copular/auxiliary "to be"
    std::size_t first_person = 0, active = 0;
    for (const std::string& sent : sents) {
        std::vector<std::string> st = tokenize(document{sent, doc.kind});
        for (std::size_t i = 0; i < st.size(); ++i) {
            if (st[i] == "We" || st[i] == "we" || st[i] == "I") {
                ++first_person;
                if (i + 1 < st.size() && !copular_next().count(fold_case(st[i + 1])))
                    ++active;
                break;
            }
        }
    }
    s.active_narration =
        first_person == 0 ? 0.0
                          : static_cast<double>(active) / static_cast<double>(first_person);
    return s;
}

parsed_document ingest_parse(const std::string& conllu_text) {
    parsed_document doc;
    parse_sentence cur;
    std::size_t line_no = 0;

    auto finish_sentence = [&] {
        if (cur.tokens.empty()) return;
        const std::size_t n = cur.tokens.size();
        std::size_t roots = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (cur.tokens[i].head > n)
                throw malformed_parse("head index out of range at token " +
                                      std::to_string(i + 1));
            if (cur.tokens[i].head == 0) ++roots;
        }
        if (roots != 1)
            throw malformed_parse("sentence must have exactly one root, found " +
                                  std::to_string(roots));
        // cycle check: every token must reach the root
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t cursor = i + 1, steps = 0;
            while (cursor != 0) {
                cursor = cur.tokens[cursor - 1].head;
                if (++steps > n) throw malformed_parse("cyclic head indices");
            }
        }
        doc.sentences.push_back(std::move(cur));
        cur = parse_sentence{};
    };

    std::size_t pos = 0;
    while (pos <= conllu_text.size()) {
        std::size_t nl = conllu_text.find('\n', pos);
        std::string line = conllu_text.substr(
            pos, nl == std::string::npos ? std::string::npos : nl - pos);
        pos = nl == std::string::npos ? conllu_text.size() + 1 : nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();

        if (line.empty()) {
            finish_sentence();
            continue;
        }
        if (line[0] == '#') continue;

        std::vector<std::string> cols;
        std::size_t b = 0;
        while (true) {
            std::size_t t = line.find('\t', b);
            if (t == std::string::npos) {
                cols.push_back(line.substr(b));
                break;
            }
            cols.push_back(line.substr(b, t - b));
            b = t + 1;
        }
        if (cols.size() < 8)
            throw parse_format_error(line_no, "expected at least 8 tab-separated columns");

        const std::string& id = cols[0];
        if (id.find('-') != std::string::npos || id.find('.') != std::string::npos)
            continue;  // multiword token / empty node

        parse_token tok;
        tok.form = cols[1];
        tok.upos = cols[3];
        tok.deprel = cols[7];
        unsigned head = 0;
        auto [p, ec] = std::from_chars(cols[6].data(), cols[6].data() + cols[6].size(), head);
        if (ec != std::errc() || p != cols[6].data() + cols[6].size())
            throw parse_format_error(line_no, "HEAD column is not an integer: " + cols[6]);
        tok.head = head;
        cur.tokens.push_back(std::move(tok));
    }
    finish_sentence();
    return doc;
}

namespace {

bool nounish(const std::string& upos) { return upos == "NOUN" || upos == "PROPN"; }

bool chunk_member_rel(const std::string& deprel) {
    return deprel == "det" || deprel == "amod" || deprel == "compound" ||
           deprel == "nummod" || deprel == "poss" || deprel == "nmod:poss" ||
           deprel == "flat" || deprel == "fixed";
}

}  // namespace

void style_parse_metrics(const parsed_document& parsed, style_scores& out) {
    const std::size_t S = parsed.sentences.size();
    if (S == 0) return;

    std::size_t words = 0, nouns = 0, verbs = 0, chunks = 0, covered = 0,
                passive_sents = 0;
    double depth_sum = 0.0;

    for (const parse_sentence& sent : parsed.sentences) {
        const std::size_t n = sent.tokens.size();
        // token depth = edges to root + 1
        std::vector<std::size_t> depth(n, 0);
        std::size_t max_depth = 0;
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t cursor = i + 1, d = 0;
            while (cursor != 0) {
                cursor = sent.tokens[cursor - 1].head;
                ++d;
            }
            depth[i] = d;
            max_depth = std::max(max_depth, d);
        }
        depth_sum += static_cast<double>(max_depth);

        bool has_passive = false;
        for (const parse_token& t : sent.tokens) {
            if (t.upos != "PUNCT") ++words;
            if (nounish(t.upos)) ++nouns;
            if (t.upos == "VERB") ++verbs;
            if (t.deprel.find("pass") != std::string::npos) has_passive = true;
        }
        if (has_passive) ++passive_sents;

        // base noun chunks: a nominal head plus its contiguous left modifiers
        std::vector<bool> in_chunk(n, false);
        for (std::size_t i = 0; i < n; ++i) {
            const parse_token& t = sent.tokens[i];
            if (!nounish(t.upos)) continue;
            // skip nominals folded into a larger nominal (compound/flat parts)
            if (t.head >= 1 && t.head <= n && chunk_member_rel(t.deprel) &&
                nounish(sent.tokens[t.head - 1].upos))
                continue;
            ++chunks;
            std::size_t start = i;
            while (start > 0) {
                const parse_token& left = sent.tokens[start - 1];
                if (left.head == i + 1 && chunk_member_rel(left.deprel))
                    --start;
                else
                    break;
            }
            for (std::size_t k = start; k <= i; ++k) in_chunk[k] = true;
        }
        for (std::size_t i = 0; i < n; ++i)
            if (in_chunk[i]) ++covered;
    }

    const double w = static_cast<double>(words);
    out.parse_depth = depth_sum / static_cast<double>(S);
    out.passive_rate = static_cast<double>(passive_sents) / static_cast<double>(S);
    if (words > 0) {
        out.np_density = static_cast<double>(covered) / w;
        out.noun_chunks_per100 = 100.0 * static_cast<double>(chunks) / w;
        out.nouns_per100 = 100.0 * static_cast<double>(nouns) / w;
        out.verbs_per100 = 100.0 * static_cast<double>(verbs) / w;
    }
}

const std::vector<std::string>& style_metric_names() {
    static const std::vector<std::string> names = {
        "sentence_length",  "parse_depth",       "np_density",
        "noun_chunks_per100", "nouns_per100",    "verbs_per100",
        "numbers_per100",   "signposting_per100", "hedging_per100",
        "active_narration", "passive_rate",      "type_token_ratio",
    };
    return names;
}

std::optional<double> style_value(const style_scores& s, const std::string& name) {
    if (name == "sentence_length") return s.sentence_length;
    if (name == "parse_depth") return s.parse_depth;
    if (name == "np_density") return s.np_density;
    if (name == "noun_chunks_per100") return s.noun_chunks_per100;
    if (name == "nouns_per100") return s.nouns_per100;
    if (name == "verbs_per100") return s.verbs_per100;
    if (name == "numbers_per100") return s.numbers_per100;
    if (name == "signposting_per100") return s.signposting_per100;
    if (name == "hedging_per100") return s.hedging_per100;
    if (name == "active_narration") return s.active_narration;
    if (name == "passive_rate") return s.passive_rate;
    if (name == "type_token_ratio") return s.type_token_ratio;
    throw error("unknown style metric: " + name);
}

}  // namespace scribemeter

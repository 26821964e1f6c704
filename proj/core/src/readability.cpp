#include "scribemeter/readability.hpp"

#include <cmath>
#include <fstream>

#include "scribemeter/errors.hpp"

namespace scribemeter {

// Constant sets for every formula, pinned in one place.
namespace constants {
// Flesch (1948) reading ease
constexpr double flesch_base = 206.835, flesch_wps = 1.015, flesch_spw = 84.6;
// Kincaid et al. (1975) grade level
constexpr double fk_wps = 0.39, fk_spw = 11.8, fk_base = 15.59;
// Gunning (1952) fog index
constexpr double fog_scale = 0.4;
// McLaughlin (1969) SMOG
constexpr double smog_scale = 1.0430, smog_base = 3.1291;
// Dale & Chall (1948)
constexpr double dc_pdw = 0.1579, dc_asl = 0.0496, dc_adj = 3.6365, dc_adj_cut = 5.0;
// Spache (1953)
constexpr double sp_asl = 0.121, sp_pdw = 0.082, sp_base = 0.659;
// Coleman & Liau (1975)
constexpr double cl_letters = 0.058, cl_sentences = 0.296, cl_base = 15.8;
// Automated Readability Index (Senter & Smith 1967)
constexpr double ari_cpw = 4.71, ari_wps = 0.5, ari_base = 21.43;
// FORCAST (Caylor et al. 1973)
constexpr double forcast_base = 20.0, forcast_div = 10.0, forcast_scale = 150.0;
// Powers, Sumner & Kearl (1958) recalculated Flesch
constexpr double psk_wps = 0.0778, psk_spw = 0.0455, psk_base = 2.2029;
}  // namespace constants

std::unordered_set<std::string> load_word_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open word list: " + path);
    std::unordered_set<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t b = line.find_first_not_of(" \t");
        if (b == std::string::npos) continue;
        std::size_t e = line.find_last_not_of(" \t");
        std::string word = line.substr(b, e - b + 1);
        if (word.empty() || word[0] == '#') continue;
        out.insert(fold_case(word));
    }
    return out;
}

double dale_chall_familiarity(const std::vector<std::string>& words,
                              const std::unordered_set<std::string>& familiar) {
    if (words.empty()) return 0.0;
    std::size_t unfamiliar = 0;
    for (const std::string& w : words) {
        if (has_digit(w)) continue;  // numbers read as familiar
        if (!familiar.count(fold_case(w))) ++unfamiliar;
    }
    return static_cast<double>(unfamiliar) / static_cast<double>(words.size());
}

namespace {

// Linsear Write samples the first 100 tokens; the sentence count is how many
// formula-mode sentences that sample touches (a partial sentence counts).
std::size_t sentences_in_sample(const document& doc, std::size_t sample_tokens) {
    std::vector<std::string> sents = split_sentences(doc, sentence_mode::formula);
    std::size_t covered = 0, used = 0;
    for (const std::string& s : sents) {
        document sd{s, doc.kind};
        covered += tokenize(sd).size();
        ++used;
        if (covered >= sample_tokens) break;
    }
    return used == 0 ? 1 : used;
}

}  // namespace

readability_scores compute_readability(const token_stats& stats, const document& doc,
                                       const readability_lexicons& lex) {
    if (stats.words == 0 || stats.sentences == 0)
        throw degenerate_input("readability needs at least one word and one sentence");

    const double W = static_cast<double>(stats.words);
    const double S = static_cast<double>(stats.sentences);
    const double Y = static_cast<double>(stats.syllables);
    const double wps = W / S;
    const double spw = Y / W;

    readability_scores r;
    r.words_per_sentence = wps;
    r.syllables_per_word = spw;
    r.flesch_ease = constants::flesch_base - constants::flesch_wps * wps -
                    constants::flesch_spw * spw;
    r.flesch_kincaid = constants::fk_wps * wps + constants::fk_spw * spw - constants::fk_base;
    r.gunning_fog = constants::fog_scale *
                    (wps + 100.0 * static_cast<double>(stats.complex_words) / W);
    r.smog = constants::smog_scale *
                 std::sqrt(static_cast<double>(stats.polysyllables) * 30.0 / S) +
             constants::smog_base;
    r.smog_low_confidence = stats.sentences < 3;
    r.coleman_liau = constants::cl_letters * (static_cast<double>(stats.characters) * 100.0 / W) -
                     constants::cl_sentences * (S * 100.0 / W) - constants::cl_base;
    r.ari = constants::ari_cpw * (static_cast<double>(stats.characters) / W) +
            constants::ari_wps * wps - constants::ari_base;
    r.lix = wps + 100.0 * static_cast<double>(stats.long_words) / W;
    r.rix = static_cast<double>(stats.long_words) / S;
    r.forcast = constants::forcast_base -
                (static_cast<double>(stats.monosyllables) * constants::forcast_scale / W) /
                    constants::forcast_div;
    r.powers_sumner_kearl = constants::psk_wps * wps + constants::psk_spw * (Y * 100.0 / W) -
                            constants::psk_base;

    std::vector<std::string> toks = tokenize(doc);
    const std::size_t sample = std::min<std::size_t>(100, toks.size());
    std::size_t easy = 0, hard = 0;
    for (std::size_t i = 0; i < sample; ++i) {
        if (count_syllables(toks[i]) >= 3)
            ++hard;
        else
            ++easy;
    }
    const double sample_sents = static_cast<double>(sentences_in_sample(doc, sample));
    double provisional = (static_cast<double>(easy) + 3.0 * static_cast<double>(hard)) /
                         sample_sents;
    r.linsear_write = provisional > 20.0 ? provisional / 2.0 : (provisional - 2.0) / 2.0;

    const double pdw_dale = 100.0 * dale_chall_familiarity(toks, lex.dale_familiar);
    r.dale_chall = constants::dc_pdw * pdw_dale + constants::dc_asl * wps +
                   (pdw_dale > constants::dc_adj_cut ? constants::dc_adj : 0.0);
    const double pdw_spache = 100.0 * dale_chall_familiarity(toks, lex.spache_familiar);
    r.spache = constants::sp_asl * wps + constants::sp_pdw * pdw_spache + constants::sp_base;

    return r;
}

const std::vector<std::string>& readability_metric_names() {
    static const std::vector<std::string> names = {
        "flesch_ease",   "flesch_kincaid", "gunning_fog",  "smog",
        "dale_chall",    "spache",         "coleman_liau", "ari",
        "linsear_write", "lix",            "rix",          "forcast",
        "powers_sumner_kearl", "words_per_sentence", "syllables_per_word",
    };
    return names;
}

bool higher_is_better(const std::string& metric_name) {
    return metric_name == "flesch_ease";
}

double readability_value(const readability_scores& s, const std::string& name) {
    if (name == "flesch_ease") return s.flesch_ease;
    if (name == "flesch_kincaid") return s.flesch_kincaid;
    if (name == "gunning_fog") return s.gunning_fog;
    if (name == "smog") return s.smog;
    if (name == "dale_chall") return s.dale_chall;
    if (name == "spache") return s.spache;
    if (name == "coleman_liau") return s.coleman_liau;
    if (name == "ari") return s.ari;
    if (name == "linsear_write") return s.linsear_write;
    if (name == "lix") return s.lix;
    if (name == "rix") return s.rix;
    if (name == "forcast") return s.forcast;
    if (name == "powers_sumner_kearl") return s.powers_sumner_kearl;
    if (name == "words_per_sentence") return s.words_per_sentence;
    if (name == "syllables_per_word") return s.syllables_per_word;
    throw error("unknown readability metric: " + name);
}

}  // namespace scribemeter

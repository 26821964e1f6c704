#include "scribemeter/text.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <unordered_set>

#include "scribemeter/errors.hpp"

namespace scribemeter {

namespace {

bool ascii_space(char32_t c) {
    return c == U' ' || c == U'\t' || c == U'\n' || c == U'\v' || c == U'\f' || c == U'\r';
}

// whitespace per Unicode (the set str.split-style chunking honors)
bool uni_space(char32_t c) {
    if (ascii_space(c)) return true;
    switch (c) {
        case 0x85: case 0xA0: case 0x1680:
        case 0x2028: case 0x2029: case 0x202F: case 0x205F: case 0x3000:
            return true;
        default:
            return c >= 0x2000 && c <= 0x200A;
    }
}

// main combining diacritical block; a mark swallows its base so composed and
// decomposed accents behave the same (both fall outside the kept alphabet)
bool combining_mark(char32_t c) {
    return c >= 0x300 && c <= 0x36F;
}

bool keep_char(char32_t c) {
    return (c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z') ||
           (c >= U'0' && c <= U'9') || c == U'\'' || c == U'-';
}

// one UTF-8 codepoint starting at i; invalid sequences yield the raw byte
char32_t decode_utf8(const std::string& s, std::size_t& i) {
    auto byte = [&](std::size_t k) { return static_cast<unsigned char>(s[k]); };
    unsigned char b0 = byte(i);
    if (b0 < 0x80) {
        ++i;
        return b0;
    }
    auto cont = [&](std::size_t k) { return k < s.size() && (byte(k) & 0xC0) == 0x80; };
    if ((b0 & 0xE0) == 0xC0 && cont(i + 1)) {
        char32_t c = ((b0 & 0x1Fu) << 6) | (byte(i + 1) & 0x3Fu);
        i += 2;
        return c;
    }
    if ((b0 & 0xF0) == 0xE0 && cont(i + 1) && cont(i + 2)) {
        char32_t c = ((b0 & 0x0Fu) << 12) | ((byte(i + 1) & 0x3Fu) << 6) | (byte(i + 2) & 0x3Fu);
        i += 3;
        return c;
    }
    if ((b0 & 0xF8) == 0xF0 && cont(i + 1) && cont(i + 2) && cont(i + 3)) {
        char32_t c = ((b0 & 0x07u) << 18) | ((byte(i + 1) & 0x3Fu) << 12) |
                     ((byte(i + 2) & 0x3Fu) << 6) | (byte(i + 3) & 0x3Fu);
        i += 4;
        return c;
    }
    ++i;
    return b0;
}

std::string trimmed(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && ascii_space(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && ascii_space(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

bool vowel(char c) {
    return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
}

}  // namespace

std::size_t letter_count(std::string_view token) {
    std::size_t n = 0;
    for (unsigned char c : token)
        if (std::isalpha(c)) ++n;
    return n;
}

bool has_digit(std::string_view token) {
    for (unsigned char c : token)
        if (std::isdigit(c)) return true;
    return false;
}

std::string fold_case(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::vector<std::string> tokenize(const document& doc) {
    if (trimmed(doc.text).empty())
        throw empty_document("document text is empty after trimming");

    std::vector<std::string> out;
    std::string cur;
    bool prev_appended = false;
    auto flush = [&] {
        std::size_t b = 0, e = cur.size();
        while (b < e && (cur[b] == '-' || cur[b] == '\'')) ++b;
        while (e > b && (cur[e - 1] == '-' || cur[e - 1] == '\'')) --e;
        if (e > b) out.emplace_back(cur.substr(b, e - b));
        cur.clear();
        prev_appended = false;
    };

    std::size_t i = 0;
    while (i < doc.text.size()) {
        char32_t c = decode_utf8(doc.text, i);
        if (uni_space(c)) {
            flush();
        } else if (keep_char(c)) {
            cur.push_back(static_cast<char>(c));
            prev_appended = true;
        } else if (combining_mark(c)) {
            if (prev_appended) cur.pop_back();
            prev_appended = false;
        } else {
            prev_appended = false;
        }
    }
    flush();
    return out;
}

const std::set<std::string>& abbreviation_set() {
    // dotted, lowercase; kept in sync with core/data/abbreviations.txt
    // (a unit test regenerates this set from the file and compares)
    static const std::set<std::string> abbrev = {
        "al.", "fig.", "figs.", "eq.", "eqs.", "tab.", "ref.", "refs.",
        "sec.", "secs.", "vs.", "cf.", "e.g.", "i.e.", "etc.", "dr.", "mr.",
        "mrs.", "ms.", "prof.", "st.", "no.", "vol.", "pp.", "approx.", "resp.",
        "proc.", "conf.", "univ.", "dept.", "inc.", "ltd.", "co.", "jr.", "sr.",
        "ph.d.", "m.sc.", "b.sc.", "u.s.", "u.k.",
    };
    return abbrev;
}

std::vector<std::string> split_sentences(const document& doc, sentence_mode mode) {
    const std::string& text = doc.text;
    if (trimmed(text).empty())
        throw empty_document("document text is empty after trimming");

    // decode once so uppercase/space checks see codepoints, not bytes
    std::vector<char32_t> cp;
    std::vector<std::size_t> off;  // byte offset of each codepoint
    cp.reserve(text.size());
    off.reserve(text.size() + 1);
    {
        std::size_t i = 0;
        while (i < text.size()) {
            off.push_back(i);
            cp.push_back(decode_utf8(text, i));
        }
        off.push_back(text.size());
    }

    auto is_terminal = [](char32_t c) { return c == U'.' || c == U'!' || c == U'?'; };
    auto is_closer = [](char32_t c) { return c == U'"' || c == U'\'' || c == U')' || c == U']'; };
    auto is_digit = [](char32_t c) { return c >= U'0' && c <= U'9'; };
    auto is_upper = [](char32_t c) { return c >= U'A' && c <= U'Z'; };

    const std::size_t n = cp.size();
    std::vector<std::size_t> bounds;  // codepoint indices where a new sentence starts
    std::size_t i = 0;
    while (i < n) {
        if (is_terminal(cp[i])) {
            std::size_t j = i;
            while (j + 1 < n && is_terminal(cp[j + 1])) ++j;
            // decimal split: lone '.' directly followed by a digit
            if (mode == sentence_mode::formula && cp[i] == U'.' && j == i &&
                i + 1 < n && is_digit(cp[i + 1])) {
                bounds.push_back(i + 1);
                i = j + 1;
                continue;
            }
            std::size_t k = j + 1;
            while (k < n && is_closer(cp[k])) ++k;
            if (k < n && uni_space(cp[k])) {
                std::size_t m = k;
                while (m < n && uni_space(cp[m])) ++m;
                if (m < n && (is_upper(cp[m]) || is_digit(cp[m]))) {
                    // abbreviation guard: the whitespace-delimited word ending
                    // at the punctuation run, lowercased
                    std::size_t s = i;
                    while (s > 0 && !uni_space(cp[s - 1])) --s;
                    std::string word = fold_case(
                        std::string_view(text).substr(off[s], off[j + 1] - off[s]));
                    if (!abbreviation_set().count(word)) bounds.push_back(m);
                }
            }
        }
        ++i;
    }

    std::vector<std::string> sents;
    std::size_t prev = 0;
    auto emit = [&](std::size_t from_cp, std::size_t to_cp) {
        std::string seg = trimmed(text.substr(off[from_cp], off[to_cp] - off[from_cp]));
        if (!seg.empty()) sents.push_back(std::move(seg));
    };
    for (std::size_t b : bounds) {
        emit(prev, b);
        prev = b;
    }
    emit(prev, n);
    if (sents.empty()) sents.push_back(trimmed(text));
    return sents;
}

std::size_t count_syllables(std::string_view word) {
    // vowel groups over the raw token: digits, hyphens and other non-letters
    // break a group exactly like consonants do
    long groups = 0;
    bool prev_vowel = false;
    std::array<char, 64> abuf{};
    std::size_t an = 0;
    std::string aheap;  // overflow for very long tokens
    bool heap = false;
    for (unsigned char uc : word) {
        char c = static_cast<char>(std::tolower(uc));
        bool alpha = std::isalpha(static_cast<unsigned char>(c)) != 0;
        bool isv = alpha && vowel(c);
        if (isv && !prev_vowel) ++groups;
        prev_vowel = isv;
        if (alpha) {
            if (!heap && an < abuf.size()) {
                abuf[an++] = c;
            } else {
                if (!heap) {
                    aheap.assign(abuf.data(), an);
                    heap = true;
                }
                aheap.push_back(c);
                ++an;
            }
        }
    }
    const char* a = heap ? aheap.data() : abuf.data();
    const long n = static_cast<long>(an);
    auto cons = [&](long i) { return i >= 0 && i < n && !vowel(a[i]); };

    // exactly one silent-e suffix rule applies, mirroring how the trailing
    // 'e' loses its vowel group in -e / -ed / -es / -ely
    if (n >= 2 && a[n - 1] == 'e' && cons(n - 2)) {
        // "-le" after a consonant keeps its syllable (ta-ble)
        if (!(a[n - 2] == 'l' && cons(n - 3))) --groups;
    } else if (n >= 3 && a[n - 1] == 'd' && a[n - 2] == 'e' && cons(n - 3)) {
        // "-ed" silent unless after t/d (accept-ed) or syllabic "-led"
        if (a[n - 3] != 't' && a[n - 3] != 'd' && !(a[n - 3] == 'l' && cons(n - 4))) --groups;
    } else if (n >= 3 && a[n - 1] == 's' && a[n - 2] == 'e' && cons(n - 3)) {
        // "-es" silent unless after a sibilant (rais-es, church-es) or "-les"
        char c3 = a[n - 3];
        bool sib = c3 == 's' || c3 == 'z' || c3 == 'x' || c3 == 'c' || c3 == 'g' ||
                   (c3 == 'h' && n >= 4 && (a[n - 4] == 'c' || a[n - 4] == 's'));
        if (!sib && !(c3 == 'l' && cons(n - 4))) --groups;
    } else if (n >= 4 && a[n - 1] == 'y' && a[n - 2] == 'l' && a[n - 3] == 'e' && cons(n - 4)) {
        // silent e inside "-ely" adverbs (approximate-ly)
        --groups;
    }
    // unstressed final "-Cy" merges in longer words (summa-ry, poli-cy)
    if (n >= 2 && a[n - 1] == 'y' && cons(n - 2) && groups >= 3) --groups;

    return static_cast<std::size_t>(std::max(1L, groups));
}

token_stats compute_token_stats(const document& doc, sentence_mode mode) {
    std::vector<std::string> toks = tokenize(doc);
    token_stats st;
    st.words = toks.size();
    st.sentences = split_sentences(doc, mode).size();
    std::unordered_set<std::string> uniq;
    uniq.reserve(toks.size() * 2);
    for (const std::string& t : toks) {
        std::size_t y = count_syllables(t);
        st.syllables += y;
        if (y == 1) ++st.monosyllables;
        if (y >= 3) ++st.complex_words;
        std::size_t letters = letter_count(t);
        st.characters += letters;
        if (letters > 6) ++st.long_words;
        uniq.insert(fold_case(t));
    }
    st.polysyllables = st.complex_words;
    st.unique_words = uniq.size();
    return st;
}

}  // namespace scribemeter

#include "scribemeter/acronyms.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "csv.hpp"
#include "scribemeter/errors.hpp"

namespace scribemeter {

bool is_acronym(const acronym_token& t) {
    return t.upper >= t.lower + t.digits && t.upper >= 2;
}

acronym_token classify_token(const std::string& token) {
    acronym_token t;
    t.surface = token;
    for (unsigned char c : token) {
        if (std::isupper(c))
            ++t.upper;
        else if (std::islower(c))
            ++t.lower;
        else if (std::isdigit(c))
            ++t.digits;
        // hyphens, apostrophes and anything else are ignored
    }
    return t;
}

std::vector<acronym_token> extract_acronyms(const document& doc) {
    std::vector<acronym_token> out;
    for (const std::string& tok : tokenize(doc)) {
        acronym_token t = classify_token(tok);
        if (is_acronym(t)) out.push_back(std::move(t));
    }
    return out;
}

double acronym_density(const document& doc) {
    std::vector<std::string> toks = tokenize(doc);
    std::size_t acro = 0;
    for (const std::string& tok : toks)
        if (is_acronym(classify_token(tok))) ++acro;
    return 100.0 * static_cast<double>(acro) / static_cast<double>(toks.size());
}

void acronym_registry::merge(const acronym_registry& other) {
    for (const auto& [surface, count] : other.counts) counts[surface] += count;
    for (const auto& [surface, info] : other.first_seen) {
        auto it = first_seen.find(surface);
        if (it == first_seen.end() || info.record_index < it->second.record_index)
            first_seen[surface] = info;
    }
    skipped_empty += other.skipped_empty;
}

namespace {

std::string maybe_fold_plural(const std::string& surface, bool fold) {
    if (fold && surface.size() > 1 && surface.back() == 's')
        return surface.substr(0, surface.size() - 1);
    return surface;
}

acronym_registry registry_over_range(const std::vector<paper_record>& records,
                                     std::size_t begin, std::size_t end,
                                     corpus_field field, bool fold_plural) {
    acronym_registry reg;
    for (std::size_t i = begin; i < end; ++i) {
        const paper_record& rec = records[i];
        const std::string& text =
            field == corpus_field::title ? rec.title : rec.abstract;
        document d{text, field == corpus_field::title ? doc_kind::title
                                                      : doc_kind::abstract};
        std::vector<std::string> toks;
        try {
            toks = tokenize(d);
        } catch (const empty_document&) {
            ++reg.skipped_empty;
            continue;
        }
        for (const std::string& tok : toks) {
            acronym_token t = classify_token(tok);
            if (!is_acronym(t)) continue;
            std::string key = maybe_fold_plural(t.surface, fold_plural);
            ++reg.counts[key];
            auto it = reg.first_seen.find(key);
            if (it == reg.first_seen.end())
                reg.first_seen[key] = first_seen_info{rec.venue, rec.year, i};
        }
    }
    return reg;
}

}  // namespace

acronym_registry build_registry(const std::vector<paper_record>& records,
                                corpus_field field, unsigned threads,
                                bool fold_plural) {
    if (threads <= 1 || records.size() < 2)
        return registry_over_range(records, 0, records.size(), field, fold_plural);

    threads = std::min<unsigned>(threads, static_cast<unsigned>(records.size()));
    std::vector<acronym_registry> parts(threads);
    std::vector<std::thread> workers;
    const std::size_t chunk = (records.size() + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        std::size_t begin = static_cast<std::size_t>(t) * chunk;
        std::size_t end = std::min(records.size(), begin + chunk);
        if (begin >= end) break;
        workers.emplace_back([&, begin, end, t] {
            parts[t] = registry_over_range(records, begin, end, field, fold_plural);
        });
    }
    for (std::thread& w : workers) w.join();

    acronym_registry out;
    for (const acronym_registry& part : parts) out.merge(part);
    return out;
}

std::vector<bucket_row> bucket_frequencies(const acronym_registry& reg) {
    if (reg.counts.empty())
        throw empty_registry("bucket table over an empty acronym registry");

    std::vector<bucket_row> rows = {
        {"1", 0, 0.0}, {"2-9", 0, 0.0}, {"10-99", 0, 0.0},
        {"100-999", 0, 0.0}, {"1000+", 0, 0.0},
    };
    for (const auto& [surface, count] : reg.counts) {
        std::size_t idx;
        if (count == 1)
            idx = 0;
        else if (count <= 9)
            idx = 1;
        else if (count <= 99)
            idx = 2;
        else if (count <= 999)
            idx = 3;
        else
            idx = 4;
        ++rows[idx].unique_count;
    }
    const double n = static_cast<double>(reg.counts.size());
    for (bucket_row& row : rows)
        row.percent = 100.0 * static_cast<double>(row.unique_count) / n;
    return rows;
}

std::string registry_to_json(const acronym_registry& reg) {
    nlohmann::ordered_json j;
    j["skipped_empty"] = reg.skipped_empty;
    nlohmann::ordered_json counts = nlohmann::ordered_json::object();
    for (const auto& [surface, count] : reg.counts) {  // std::map: sorted
        nlohmann::ordered_json entry;
        entry["count"] = count;
        auto it = reg.first_seen.find(surface);
        if (it != reg.first_seen.end()) {
            entry["first_seen"] = {{"venue", it->second.venue},
                                   {"year", it->second.year}};
        }
        counts[surface] = std::move(entry);
    }
    j["acronyms"] = std::move(counts);
    return j.dump(2) + "\n";
}

bool glossary::contains(const std::string& acronym) const {
    return std::any_of(entries.begin(), entries.end(),
                       [&](const glossary_entry& e) { return e.acronym == acronym; });
}

namespace {

glossary glossary_from_json(const std::string& body, const std::string& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(body);
    } catch (const nlohmann::json::exception& e) {
        throw glossary_format_error(path + ": " + e.what());
    }
    if (!j.is_array()) throw glossary_format_error(path + ": expected a JSON array");
    glossary g;
    for (const auto& item : j) {
        if (!item.is_object() || !item.contains("acronym") || !item.contains("expansion"))
            throw glossary_format_error(path + ": entries need acronym and expansion");
        glossary_entry e;
        e.acronym = item.at("acronym").get<std::string>();
        e.expansion = item.at("expansion").get<std::string>();
        e.note = item.value("note", std::string{});
        g.entries.push_back(std::move(e));
    }
    return g;
}

glossary glossary_from_csv(const std::string& body, const std::string& path) {
    std::istringstream in(body);
    std::vector<std::vector<std::string>> rows = detail::read_csv(in);
    if (rows.empty() ||
        rows[0] != std::vector<std::string>{"acronym", "expansion", "note"})
        throw glossary_format_error(path + ": expected header acronym,expansion,note");
    glossary g;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].size() != 3)
            throw glossary_format_error(path + ": row " + std::to_string(i + 1) +
                                        " needs 3 fields");
        g.entries.push_back(glossary_entry{rows[i][0], rows[i][1], rows[i][2]});
    }
    return g;
}

}  // namespace

glossary load_glossary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw glossary_format_error("cannot open glossary: " + path);
    std::string body((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());

    std::size_t first = body.find_first_not_of(" \t\r\n");
    glossary g = (first != std::string::npos && body[first] == '[')
                     ? glossary_from_json(body, path)
                     : glossary_from_csv(body, path);

    std::set<std::string> seen;
    for (const glossary_entry& e : g.entries) {
        if (e.acronym.empty() || e.expansion.empty())
            throw glossary_format_error(path + ": empty acronym or expansion");
        if (!seen.insert(e.acronym).second)
            throw duplicate_glossary_entry(path + ": duplicate entry " + e.acronym);
    }
    return g;
}

glossary_audit validate_glossary(const glossary& gloss, const std::vector<document>& docs,
                                 const std::set<std::string>& approved) {
    std::set<std::string> used;
    for (const document& d : docs)
        for (const acronym_token& t : extract_acronyms(d)) used.insert(t.surface);

    glossary_audit audit;
    for (const std::string& surface : used) {
        if (!gloss.contains(surface)) audit.missing.push_back(surface);
        if (!approved.count(surface)) audit.novel.push_back(surface);
    }
    for (const glossary_entry& e : gloss.entries)
        if (!used.count(e.acronym)) audit.unused.push_back(e.acronym);
    audit.ok = audit.missing.empty();
    return audit;
}

}  // namespace scribemeter

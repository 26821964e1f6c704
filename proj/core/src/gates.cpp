#include "scribemeter/gates.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "scribemeter/errors.hpp"

namespace scribemeter {

namespace {

using ordered_json = nlohmann::ordered_json;

std::vector<std::string> unique_acronym_surfaces(const document& doc) {
    std::vector<std::string> order;
    std::set<std::string> seen;
    std::vector<acronym_token> toks;
    try {
        toks = extract_acronyms(doc);
    } catch (const empty_document&) {
        return order;
    }
    for (const auto& t : toks)
        if (seen.insert(t.surface).second) order.push_back(t.surface);
    return order;
}

bool expansion_present(const std::string& text, const std::string& acro) {
    return text.find("(" + acro + ")") != std::string::npos ||
           text.find(acro + " (") != std::string::npos;
}

}  // namespace

p1_verdict gate_p1(const document& title, const document& abstract,
                   const glossary& gloss, const std::set<std::string>& approved,
                   std::size_t limit) {
    p1_verdict v;
    v.limit = limit;

    std::vector<std::string> order;
    std::set<std::string> seen;
    for (const document* doc : {&title, &abstract})
        for (const std::string& s : unique_acronym_surfaces(*doc))
            if (seen.insert(s).second) order.push_back(s);

    for (const std::string& s : order) {
        if (approved.count(s) || gloss.contains(s)) continue;
        novel_acronym n;
        n.surface = s;
        n.expanded = expansion_present(title.text, s) ||
                     expansion_present(abstract.text, s);
        if (!n.expanded)
            v.warnings.push_back(s + ": no expansion found on first use");
        v.novel.push_back(std::move(n));
    }
    v.pass = v.novel.size() <= limit;
    return v;
}

p2_verdict gate_p2(const readability_scores& abstract_readability,
                   const style_scores& abstract_style, const gate_policy& policy) {
    p2_verdict v;
    v.mode = policy.p2_mode;
    v.author_justification = policy.author_justification;

    {
        p2_check c;
        c.name = "flesch_ease";
        c.measured = abstract_readability.flesch_ease;
        if (policy.flesch_ease_min) {
            c.threshold = *policy.flesch_ease_min;
            c.flagged = *c.measured < *c.threshold;
        } else {
            c.skipped = true;
            c.note = "no threshold configured";
        }
        v.checks.push_back(std::move(c));
    }
    {
        p2_check c;
        c.name = "sentence_length";
        c.measured = abstract_style.sentence_length;
        if (policy.max_mean_sentence_length) {
            c.threshold = *policy.max_mean_sentence_length;
            c.flagged = *c.measured > *c.threshold;
        } else {
            c.skipped = true;
            c.note = "no threshold configured";
        }
        v.checks.push_back(std::move(c));
    }
    {
        p2_check c;
        c.name = "parse_depth";
        if (!policy.max_mean_parse_depth) {
            c.skipped = true;
            c.note = "no threshold configured";
        } else if (!abstract_style.parse_depth) {
            c.threshold = *policy.max_mean_parse_depth;
            c.skipped = true;
            c.note = "no dependency parse supplied; criterion skipped";
        } else {
            c.measured = *abstract_style.parse_depth;
            c.threshold = *policy.max_mean_parse_depth;
            c.flagged = *c.measured > *c.threshold;
        }
        v.checks.push_back(std::move(c));
    }

    for (const auto& c : v.checks)
        if (c.flagged) v.pass = false;
    return v;
}

p5_verdict gate_p5(const document& summary, const std::set<std::string>& approved,
                   std::size_t limit) {
    std::vector<std::string> words;
    try {
        words = tokenize(summary);
    } catch (const empty_document&) {
        throw missing_summary("plain-language summary is empty");
    }

    p5_verdict v;
    v.limit = limit;
    v.word_count = words.size();

    std::set<std::string> seen;
    for (const std::string& w : words) {
        acronym_token t = classify_token(w);
        if (!is_acronym(t)) continue;
        if (approved.count(t.surface)) continue;
        if (seen.insert(t.surface).second) v.disallowed.push_back(t.surface);
    }
    v.pass = v.word_count <= limit && v.disallowed.empty();
    return v;
}

audit_report self_audit(const audit_inputs& in, const audit_lexicons& lex,
                        const gate_policy& policy, const glossary& gloss,
                        const std::vector<baseline_distribution>& baselines,
                        const provenance& prov) {
    audit_report r;
    r.prov = prov;

    token_stats title_stats = compute_token_stats(in.title);
    token_stats abstract_stats = compute_token_stats(in.abstract);
    r.title_readability = compute_readability(title_stats, in.title, lex.readability);
    r.abstract_readability =
        compute_readability(abstract_stats, in.abstract, lex.readability);

    r.abstract_style = style_regex_metrics(in.abstract, lex.style);
    if (in.parse) style_parse_metrics(*in.parse, r.abstract_style);

    r.abstract_sensational = sensational_rates(in.abstract, lex.sensational);

    r.title_acronym_density = acronym_density(in.title);
    r.abstract_acronym_density = acronym_density(in.abstract);

    r.p1 = gate_p1(in.title, in.abstract, gloss, policy.approved_terms,
                   policy.p1_max_novel_acronyms);
    r.p2 = gate_p2(r.abstract_readability, r.abstract_style, policy);
    if (in.summary) {
        std::set<std::string> approved = policy.approved_terms;
        for (const auto& e : gloss.entries) approved.insert(e.acronym);
        r.p5 = gate_p5(*in.summary, approved, policy.p5_summary_word_limit);
    }

    for (const auto& base : baselines) {
        std::optional<double> value;
        const auto& rnames = readability_metric_names();
        if (std::find(rnames.begin(), rnames.end(), base.metric) != rnames.end()) {
            value = readability_value(r.abstract_readability, base.metric);
        } else {
            const auto& snames = style_metric_names();
            if (std::find(snames.begin(), snames.end(), base.metric) != snames.end())
                value = style_value(r.abstract_style, base.metric);
            else if (base.metric == "acronym_density")
                value = r.abstract_acronym_density;
            else
                throw error("baseline metric unknown: " + base.metric);
        }
        if (!value) continue;  // parse metric without a parse
        percentile_row row;
        row.metric = base.metric;
        row.source = base.source;
        row.value = *value;
        row.percentile = percentile_rank(*value, base);
        r.percentiles.push_back(std::move(row));
    }
    return r;
}

namespace {

ordered_json readability_json(const readability_scores& s) {
    ordered_json j;
    for (const std::string& name : readability_metric_names())
        j[name] = readability_value(s, name);
    j["smog_low_confidence"] = s.smog_low_confidence;
    return j;
}

ordered_json optional_json(const std::optional<double>& v) {
    if (v) return *v;
    return nullptr;
}

ordered_json p1_json(const p1_verdict& v) {
    ordered_json j;
    j["pass"] = v.pass;
    j["novel_count"] = v.novel.size();
    j["limit"] = v.limit;
    ordered_json novel = ordered_json::array();
    for (const auto& n : v.novel)
        novel.push_back({{"surface", n.surface}, {"expanded", n.expanded}});
    j["novel"] = std::move(novel);
    j["warnings"] = v.warnings;
    return j;
}

ordered_json p2_json(const p2_verdict& v) {
    ordered_json j;
    j["pass"] = v.pass;
    j["mode"] = v.mode == gate_mode::require_revision ? "require_revision" : "warn";
    ordered_json checks = ordered_json::array();
    for (const auto& c : v.checks) {
        ordered_json cj;
        cj["name"] = c.name;
        cj["flagged"] = c.flagged;
        cj["skipped"] = c.skipped;
        cj["measured"] = optional_json(c.measured);
        cj["threshold"] = optional_json(c.threshold);
        cj["note"] = c.note;
        checks.push_back(std::move(cj));
    }
    j["checks"] = std::move(checks);
    j["author_justification"] = v.author_justification;
    return j;
}

ordered_json p5_json(const p5_verdict& v) {
    ordered_json j;
    j["pass"] = v.pass;
    j["word_count"] = v.word_count;
    j["limit"] = v.limit;
    j["disallowed"] = v.disallowed;
    return j;
}

}  // namespace

std::string report_to_json(const audit_report& r) {
    ordered_json j;
    j["tool"] = {{"name", "scribemeter"}, {"version", r.prov.tool_version}};

    ordered_json title;
    title["readability"] = readability_json(r.title_readability);
    title["acronym_density"] = r.title_acronym_density;
    j["title"] = std::move(title);

    ordered_json abs;
    abs["readability"] = readability_json(r.abstract_readability);
    ordered_json style;
    for (const std::string& name : style_metric_names())
        style[name] = optional_json(style_value(r.abstract_style, name));
    abs["style"] = std::move(style);
    ordered_json sens;
    for (const std::string& cat : sensational_categories())
        sens[cat] = r.abstract_sensational.per100.at(cat);
    sens["total"] = r.abstract_sensational.total();
    abs["sensational"] = std::move(sens);
    abs["acronym_density"] = r.abstract_acronym_density;
    j["abstract"] = std::move(abs);

    ordered_json pct = ordered_json::array();
    for (const auto& row : r.percentiles)
        pct.push_back({{"metric", row.metric},
                       {"source", row.source},
                       {"value", row.value},
                       {"percentile", row.percentile}});
    j["percentiles"] = std::move(pct);

    ordered_json gates;
    gates["p1"] = p1_json(r.p1);
    gates["p2"] = p2_json(r.p2);
    gates["p5"] = r.p5 ? p5_json(*r.p5) : ordered_json(nullptr);
    j["gates"] = std::move(gates);

    ordered_json prov;
    prov["tool_version"] = r.prov.tool_version;
    prov["config"] = r.prov.config;
    ordered_json lexicons;
    for (const auto& [name, fp] : r.prov.lexicons) lexicons[name] = fp;
    prov["lexicons"] = std::move(lexicons);
    j["provenance"] = std::move(prov);

    return j.dump(2) + "\n";
}

namespace {

std::string fmt2(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string pad(std::string s, std::size_t width) {
    if (s.size() < width) s.append(width - s.size(), ' ');
    return s;
}

}  // namespace

std::string report_to_table(const audit_report& r) {
    std::ostringstream out;
    out << "scribemeter audit\n";
    out << "=================\n\n";

    out << pad("readability", 24) << pad("title", 12) << "abstract\n";
    for (const std::string& name : readability_metric_names())
        out << "  " << pad(name, 22)
            << pad(fmt2(readability_value(r.title_readability, name)), 12)
            << fmt2(readability_value(r.abstract_readability, name)) << "\n";
    if (r.title_readability.smog_low_confidence ||
        r.abstract_readability.smog_low_confidence)
        out << "  (smog: fewer than 3 sentences; low confidence)\n";

    out << "\nstyle (abstract)\n";
    for (const std::string& name : style_metric_names()) {
        auto v = style_value(r.abstract_style, name);
        out << "  " << pad(name, 22) << (v ? fmt2(*v) : std::string("-")) << "\n";
    }

    out << "\nsensational per 100 words (abstract)\n";
    for (const std::string& cat : sensational_categories())
        out << "  " << pad(cat, 22) << fmt2(r.abstract_sensational.per100.at(cat))
            << "\n";
    out << "  " << pad("total", 22) << fmt2(r.abstract_sensational.total()) << "\n";

    out << "\nacronyms\n";
    out << "  " << pad("title_density", 22) << fmt2(r.title_acronym_density) << "\n";
    out << "  " << pad("abstract_density", 22) << fmt2(r.abstract_acronym_density)
        << "\n";
    out << "  " << pad("novel_count", 22) << r.p1.novel.size() << "\n";
    for (const auto& n : r.p1.novel)
        out << "    " << n.surface << (n.expanded ? " (expanded)" : " (unexpanded)")
            << "\n";

    if (!r.percentiles.empty()) {
        out << "\npercentiles\n";
        for (const auto& row : r.percentiles)
            out << "  " << pad(row.metric, 22) << pad(fmt2(row.value), 12)
                << "p" << fmt2(row.percentile) << " vs " << row.source << "\n";
    }

    out << "\ngates\n";
    out << "  P1 " << (r.p1.pass ? "PASS" : "FAIL") << "  novel "
        << r.p1.novel.size() << " / limit " << r.p1.limit << "\n";
    for (const auto& w : r.p1.warnings) out << "     warning: " << w << "\n";
    out << "  P2 " << (r.p2.pass ? "PASS" : "FAIL") << "  mode "
        << (r.p2.mode == gate_mode::require_revision ? "require_revision" : "warn")
        << "\n";
    for (const auto& c : r.p2.checks) {
        out << "     " << pad(c.name, 18);
        if (c.skipped) {
            out << "skipped";
            if (!c.note.empty()) out << " (" << c.note << ")";
        } else {
            out << (c.flagged ? "FLAG" : "ok") << "  " << fmt2(*c.measured)
                << " vs " << fmt2(*c.threshold);
        }
        out << "\n";
    }
    if (!r.p2.author_justification.empty())
        out << "     justification: " << r.p2.author_justification << "\n";
    if (r.p5) {
        out << "  P5 " << (r.p5->pass ? "PASS" : "FAIL") << "  words "
            << r.p5->word_count << " / limit " << r.p5->limit << "\n";
        for (const auto& d : r.p5->disallowed)
            out << "     disallowed acronym: " << d << "\n";
    } else {
        out << "  P5 -     no summary supplied\n";
    }

    out << "\nprovenance\n";
    out << "  " << pad("tool", 22) << "scribemeter " << r.prov.tool_version << "\n";
    if (!r.prov.config.empty())
        out << "  " << pad("config", 22) << r.prov.config << "\n";
    for (const auto& [name, fp] : r.prov.lexicons)
        out << "  " << pad(name, 22) << fp << "\n";
    return out.str();
}

bool gates_require_revision(const audit_report& r) {
    if (r.p2.mode != gate_mode::require_revision) return false;
    if (!r.p1.pass) return true;
    if (!r.p2.pass) return true;
    if (r.p5 && !r.p5->pass) return true;
    return false;
}

}  // namespace scribemeter

#include "scribemeter/config.hpp"

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <zlib.h>

#include "scribemeter/errors.hpp"

namespace scribemeter {

namespace {

std::string trim_ws(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& path, std::size_t line, const std::string& msg) {
    throw config_error(path + ":" + std::to_string(line) + ": " + msg);
}

// quoted string starting at s[i] == '"'; advances i past the closing quote
std::string parse_quoted(const std::string& s, std::size_t& i, const std::string& path,
                         std::size_t line) {
    std::string out;
    ++i;  // opening quote
    while (i < s.size()) {
        char c = s[i];
        if (c == '\\') {
            if (i + 1 >= s.size()) fail(path, line, "dangling escape");
            char n = s[i + 1];
            if (n == '"') out.push_back('"');
            else if (n == '\\') out.push_back('\\');
            else if (n == 'n') out.push_back('\n');
            else if (n == 't') out.push_back('\t');
            else fail(path, line, std::string("unknown escape \\") + n);
            i += 2;
        } else if (c == '"') {
            ++i;
            return out;
        } else {
            out.push_back(c);
            ++i;
        }
    }
    fail(path, line, "unterminated string");
}

config_value parse_value(const std::string& raw, const std::string& path,
                         std::size_t line) {
    std::string v = trim_ws(raw);
    if (v.empty()) fail(path, line, "missing value");

    if (v.front() == '"') {
        std::size_t i = 0;
        std::string s = parse_quoted(v, i, path, line);
        if (trim_ws(v.substr(i)) != "" ) fail(path, line, "trailing characters after string");
        return s;
    }
    if (v.front() == '[') {
        if (v.back() != ']') fail(path, line, "unterminated array");
        std::vector<std::string> items;
        std::size_t i = 1;
        while (i < v.size() - 1) {
            while (i < v.size() - 1 &&
                   (v[i] == ' ' || v[i] == '\t' || v[i] == ','))
                ++i;
            if (i >= v.size() - 1) break;
            if (v[i] != '"') fail(path, line, "arrays hold quoted strings only");
            items.push_back(parse_quoted(v, i, path, line));
        }
        return items;
    }
    if (v == "true") return true;
    if (v == "false") return false;

    double num = 0.0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), num);
    if (ec == std::errc() && p == v.data() + v.size()) return num;
    fail(path, line, "cannot parse value: " + v);
}

}  // namespace

std::map<std::string, std::map<std::string, config_value>> parse_config_file(
    const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config: " + path);

    std::map<std::string, std::map<std::string, config_value>> out;
    std::string section;
    std::string line;
    std::size_t line_no = 0;

    auto strip_comment = [](std::string& l) {
        bool in_str = false;
        for (std::size_t i = 0; i < l.size(); ++i) {
            char c = l[i];
            if (in_str) {
                if (c == '\\') ++i;  // skip the escaped character
                else if (c == '"') in_str = false;
            } else if (c == '"') {
                in_str = true;
            } else if (c == '#') {
                l.erase(i);
                break;
            }
        }
    };

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        strip_comment(line);
        std::string t = trim_ws(line);
        if (t.empty()) continue;
        if (t.front() == '[' && t.find('=') == std::string::npos) {
            if (t.back() != ']') fail(path, line_no, "unterminated section header");
            section = trim_ws(t.substr(1, t.size() - 2));
            if (section.empty()) fail(path, line_no, "empty section name");
            out[section];
            continue;
        }
        std::size_t eq = t.find('=');
        if (eq == std::string::npos) fail(path, line_no, "expected key = value");
        std::string key = trim_ws(t.substr(0, eq));
        if (key.empty()) fail(path, line_no, "empty key");
        std::string value = trim_ws(t.substr(eq + 1));
        const std::size_t value_line = line_no;
        // arrays may span lines until the closing bracket
        while (!value.empty() && value.front() == '[' && value.back() != ']') {
            if (!std::getline(in, line))
                fail(path, value_line, "unterminated array");
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            strip_comment(line);
            std::string more = trim_ws(line);
            if (!more.empty()) value += " " + more;
        }
        out[section][key] = parse_value(value, path, value_line);
    }
    return out;
}

namespace {

template <typename T>
std::optional<T> lookup(const std::map<std::string, std::map<std::string, config_value>>& cfg,
                        const std::string& section, const std::string& key,
                        const std::string& path) {
    auto sit = cfg.find(section);
    if (sit == cfg.end()) return std::nullopt;
    auto kit = sit->second.find(key);
    if (kit == sit->second.end()) return std::nullopt;
    const T* v = std::get_if<T>(&kit->second);
    if (!v)
        throw config_error(path + ": [" + section + "] " + key + " has the wrong type");
    return *v;
}

}  // namespace

gate_policy load_gate_policy(const std::string& path) {
    auto cfg = parse_config_file(path);
    gate_policy policy;

    if (auto v = lookup<double>(cfg, "p1", "max_novel_acronyms", path))
        policy.p1_max_novel_acronyms = static_cast<std::size_t>(*v);
    if (auto v = lookup<std::vector<std::string>>(cfg, "p1", "approved_terms", path))
        policy.approved_terms.insert(v->begin(), v->end());

    policy.flesch_ease_min = lookup<double>(cfg, "p2", "flesch_ease_min", path);
    policy.max_mean_sentence_length =
        lookup<double>(cfg, "p2", "max_mean_sentence_length", path);
    policy.max_mean_parse_depth = lookup<double>(cfg, "p2", "max_mean_parse_depth", path);
    if (auto v = lookup<std::string>(cfg, "p2", "mode", path)) {
        if (*v == "warn")
            policy.p2_mode = gate_mode::warn;
        else if (*v == "require_revision")
            policy.p2_mode = gate_mode::require_revision;
        else
            throw config_error(path + ": [p2] mode must be warn or require_revision");
    }
    if (auto v = lookup<std::string>(cfg, "p2", "author_justification", path))
        policy.author_justification = *v;

    if (auto v = lookup<double>(cfg, "p5", "summary_word_limit", path))
        policy.p5_summary_word_limit = static_cast<std::size_t>(*v);

    return policy;
}

judge_config load_judge_config(const std::string& path) {
    auto cfg = parse_config_file(path);
    judge_config jc;

    if (auto v = lookup<std::string>(cfg, "judge", "endpoint", path)) {
        // full URL: split scheme://host[:port] from the request path
        std::size_t scheme = v->find("://");
        std::size_t slash =
            v->find('/', scheme == std::string::npos ? 0 : scheme + 3);
        if (slash == std::string::npos) {
            jc.endpoint_url = *v;
        } else {
            jc.endpoint_url = v->substr(0, slash);
            jc.endpoint_path = v->substr(slash);
        }
    }
    if (auto v = lookup<std::string>(cfg, "judge", "api_key_env", path))
        jc.api_key_env = *v;
    if (auto v = lookup<double>(cfg, "judge", "temperature", path)) jc.temperature = *v;
    if (auto v = lookup<double>(cfg, "judge", "max_new_tokens", path))
        jc.max_new_tokens = static_cast<int>(*v);
    if (auto v = lookup<double>(cfg, "judge", "runs_per_triple", path))
        jc.runs_per_triple = static_cast<int>(*v);
    if (auto v = lookup<std::string>(cfg, "judge", "aggregation", path)) {
        if (*v == "median")
            jc.aggregation = triple_aggregation::median;
        else if (*v == "mean")
            jc.aggregation = triple_aggregation::mean;
        else
            throw config_error(path + ": aggregation must be \"median\" or \"mean\"");
    }
    if (auto v = lookup<std::string>(cfg, "judge", "sigma", path)) {
        if (*v == "population")
            jc.sigma = sigma_kind::population;
        else if (*v == "sample")
            jc.sigma = sigma_kind::sample;
        else
            throw config_error(path + ": sigma must be \"population\" or \"sample\"");
    }
    if (auto v = lookup<std::vector<std::string>>(cfg, "judge", "models", path))
        jc.models = *v;
    if (auto v = lookup<double>(cfg, "judge", "max_retries", path))
        jc.max_retries = static_cast<unsigned>(*v);
    if (auto v = lookup<double>(cfg, "judge", "backoff_ms", path))
        jc.backoff_ms = static_cast<unsigned>(*v);
    if (auto v = lookup<double>(cfg, "judge", "max_triples", path))
        jc.max_triples = static_cast<std::size_t>(*v);

    if (jc.endpoint_url.empty())
        throw config_error(path + ": [judge] endpoint is required");
    if (jc.models.empty())
        throw config_error(path + ": [judge] models must list at least one model");
    return jc;
}

std::string default_data_dir() {
    if (const char* env = std::getenv("SCRIBEMETER_DATA")) {
        if (*env && std::filesystem::is_directory(env)) return env;
    }
    std::error_code ec;
    std::filesystem::path exe = std::filesystem::read_symlink("/proc/self/exe", ec);
    if (!ec) {
        std::filesystem::path share =
            exe.parent_path().parent_path() / "share" / "scribemeter";
        if (std::filesystem::is_directory(share, ec)) return share.string();
    }
#ifdef SCRIBEMETER_SOURCE_DATA_DIR
    if (std::filesystem::is_directory(SCRIBEMETER_SOURCE_DATA_DIR))
        return SCRIBEMETER_SOURCE_DATA_DIR;
#endif
    throw config_error(
        "no data directory found; set SCRIBEMETER_DATA to the lexicon directory");
}

std::string text_fingerprint(const std::string& bytes) {
    uLong crc = crc32(0L, Z_NULL, 0);
    crc = crc32(crc, reinterpret_cast<const Bytef*>(bytes.data()),
                static_cast<uInt>(bytes.size()));
    std::ostringstream out;
    out << "crc32:" << std::hex << std::nouppercase;
    out.width(8);
    out.fill('0');
    out << crc;
    return out.str();
}

std::string file_fingerprint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("cannot fingerprint: " + path);
    std::string bytes((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
    return text_fingerprint(bytes);
}

}  // namespace scribemeter

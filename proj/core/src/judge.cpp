#include "scribemeter/judge.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "scribemeter/errors.hpp"

namespace scribemeter {

std::string to_string(prompt_id id) {
    switch (id) {
        case prompt_id::simple: return "simple";
        case prompt_id::ascb: return "ascb";
        case prompt_id::own_reasoning: return "own_reasoning";
    }
    return "simple";
}

std::optional<prompt_id> prompt_id_from_string(const std::string& s) {
    if (s == "simple") return prompt_id::simple;
    if (s == "ascb") return prompt_id::ascb;
    if (s == "own_reasoning") return prompt_id::own_reasoning;
    return std::nullopt;
}

const std::vector<judge_prompt>& default_prompts() {
    static const std::vector<judge_prompt> prompts = {
        {prompt_id::simple,
         "On a scale of 1 to 5, what is the reading ease of the following text? "
         "1 indicates the text requires expert background knowledge and 5 indicates "
         "the text is readable to the general population. Assume the reader is an "
         "adult.\n\n"
         "Format the output as follows:\n"
         "Score: <score>\n"
         "Text: {SUMMARY}"},
        {prompt_id::ascb,
         "On a scale of 1 to 5, what is the reading ease of the following text? "
         "1 indicates the text requires expert background knowledge and 5 indicates "
         "the text is readable to the general population. Characteristics of a highly "
         "readable text include:\n"
         "– Know your audience, and focus and organize your information for that "
         "particular audience.\n"
         "– Focus on the big picture. What larger problem is your work a part of? "
         "What major ideas or issues does your work address? How will your work help "
         "global understanding of some issue?\n"
         "– Avoid jargon. If you must use a technical term, make sure to explain "
         "it, but simplify the language.\n"
         "– Try to use metaphors or analogies to everyday experiences that people "
         "can relate to.\n"
         "– Underscore the importance of public support for exploratory research "
         "and scientific information, and the role of this information in providing "
         "the context for effective policy making.\n\n"
         "Assume the reader is an adult. Do not use Flesch-Kincaid or other "
         "readability formulas. Use your own judgment to rate the text.\n\n"
         "Format the output as follows:\n"
         "Score: <score>\n"
         "Text: {SUMMARY}"},
        {prompt_id::own_reasoning,
         "On a scale of 1 to 5, what is the reading ease of the following text? "
         "1 indicates the text requires expert background knowledge and 5 indicates "
         "the text is readable to the general population.\n"
         "Assume the reader is an adult. Do not use Flesch-Kincaid or other "
         "readability formulas. Use your own judgment to rate the text.\n\n"
         "Format the output as follows:\n"
         "Score: <score>\n"
         "Text: {SUMMARY}"},
    };
    return prompts;
}

std::string render_prompt(const judge_prompt& p, const document& abstract) {
    if (abstract.text.find_first_not_of(" \t\r\n") == std::string::npos)
        throw empty_document("abstract is empty; nothing to judge");
    std::string out = p.template_text;
    const std::string placeholder = "{SUMMARY}";
    std::size_t pos = 0;
    while ((pos = out.find(placeholder, pos)) != std::string::npos) {
        out.replace(pos, placeholder.size(), abstract.text);
        pos += abstract.text.size();
    }
    return out;
}

std::optional<int> parse_score(const std::string& completion) {
    const std::string marker = "score:";
    for (std::size_t i = 0; i + marker.size() <= completion.size(); ++i) {
        bool hit = true;
        for (std::size_t k = 0; k < marker.size(); ++k) {
            if (std::tolower(static_cast<unsigned char>(completion[i + k])) != marker[k]) {
                hit = false;
                break;
            }
        }
        if (!hit) continue;
        std::size_t p = i + marker.size();
        while (p < completion.size() &&
               std::isspace(static_cast<unsigned char>(completion[p])))
            ++p;
        std::size_t d = p;
        long value = 0;
        while (d < completion.size() &&
               std::isdigit(static_cast<unsigned char>(completion[d])) &&
               d - p < 10) {
            value = value * 10 + (completion[d] - '0');
            ++d;
        }
        if (d > p && value >= 1 && value <= 5) return static_cast<int>(value);
        // this occurrence had no valid score; keep scanning
    }
    return std::nullopt;
}

std::string judge_score_to_json(const judge_score& s) {
    nlohmann::ordered_json j;
    j["paper_id"] = s.paper_id;
    j["model"] = s.model;
    j["prompt"] = to_string(s.prompt);
    nlohmann::ordered_json runs = nlohmann::ordered_json::array();
    for (const std::optional<int>& r : s.runs) {
        if (r)
            runs.push_back(*r);
        else
            runs.push_back(nullptr);
    }
    j["runs"] = std::move(runs);
    if (s.median)
        j["median"] = *s.median;
    else
        j["median"] = nullptr;
    if (s.value)
        j["value"] = *s.value;
    else
        j["value"] = nullptr;
    j["resamples"] = s.resamples;
    return j.dump();
}

std::vector<judge_score> read_judge_ledger(const std::string& path) {
    std::vector<judge_score> out;
    std::ifstream in(path, std::ios::binary);
    if (!in) return out;  // no ledger yet: nothing resumed
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            nlohmann::json j = nlohmann::json::parse(line);
            judge_score s;
            s.paper_id = j.at("paper_id").get<std::string>();
            s.model = j.at("model").get<std::string>();
            auto pid = prompt_id_from_string(j.at("prompt").get<std::string>());
            if (!pid) continue;
            s.prompt = *pid;
            for (const auto& r : j.at("runs")) {
                if (r.is_number_integer())
                    s.runs.push_back(r.get<int>());
                else
                    s.runs.push_back(std::nullopt);
            }
            if (j.contains("median") && j["median"].is_number_integer())
                s.median = j["median"].get<int>();
            if (j.contains("value") && j["value"].is_number())
                s.value = j["value"].get<double>();
            s.resamples = j.value("resamples", std::size_t{0});
            out.push_back(std::move(s));
        } catch (const nlohmann::json::exception&) {
            // a torn final line from an interrupted run: that triple reruns
            continue;
        }
    }
    return out;
}

namespace {

class chat_client {
  public:
    explicit chat_client(const judge_config& cfg)
        : cfg_(cfg), client_(cfg.endpoint_url) {
        client_.set_connection_timeout(10);
        client_.set_read_timeout(120);
        if (!cfg.api_key_env.empty()) {
            const char* key = std::getenv(cfg.api_key_env.c_str());
            if (key && *key)
                headers_.emplace("Authorization", std::string("Bearer ") + key);
        }
    }

    // one sampled completion; transport failures retry with backoff
    std::string complete(const std::string& model, const std::string& prompt) {
        nlohmann::json body;
        body["model"] = model;
        body["messages"] = nlohmann::json::array(
            {nlohmann::json{{"role", "user"}, {"content", prompt}}});
        body["temperature"] = cfg_.temperature;
        body["max_tokens"] = cfg_.max_new_tokens;

        unsigned attempt = 0;
        while (true) {
            httplib::Result res =
                client_.Post(cfg_.endpoint_path, headers_, body.dump(), "application/json");
            if (res) {
                if (res->status == 401 || res->status == 403)
                    throw auth_error("judge endpoint rejected credentials (HTTP " +
                                     std::to_string(res->status) + ")");
                if (res->status == 200) {
                    try {
                        nlohmann::json j = nlohmann::json::parse(res->body);
                        return j.at("choices").at(0).at("message").at("content")
                            .get<std::string>();
                    } catch (const nlohmann::json::exception&) {
                        return res->body;  // let parse_score reject it
                    }
                }
            }
            if (attempt >= cfg_.max_retries)
                throw network_error("judge endpoint failed after " +
                                    std::to_string(attempt + 1) + " attempts");
            std::this_thread::sleep_for(
                std::chrono::milliseconds(cfg_.backoff_ms << attempt));
            ++attempt;
        }
    }

  private:
    const judge_config& cfg_;
    httplib::Client client_;
    httplib::Headers headers_;
};

}  // namespace

std::vector<judge_score> judge_corpus(const std::vector<paper_record>& records,
                                      const judge_config& cfg,
                                      const std::vector<judge_prompt>& prompts,
                                      const std::string& ledger_path) {
    std::map<std::tuple<std::string, std::string, prompt_id>, judge_score> done;
    for (judge_score& s : read_judge_ledger(ledger_path))
        done[{s.paper_id, s.model, s.prompt}] = std::move(s);

    std::ofstream ledger(ledger_path, std::ios::binary | std::ios::app);
    if (!ledger) throw io_failure("cannot open ledger for append: " + ledger_path);

    chat_client client(cfg);
    std::vector<judge_score> out;
    std::size_t issued = 0;
    bool budget_hit = false;

    for (const paper_record& rec : records) {
        if (budget_hit) break;
        for (const std::string& model : cfg.models) {
            if (budget_hit) break;
            for (const judge_prompt& prompt : prompts) {
                auto key = std::make_tuple(rec.paper_id, model, prompt.id);
                auto it = done.find(key);
                if (it != done.end()) {
                    out.push_back(it->second);
                    continue;
                }
                if (cfg.max_triples != 0 && issued >= cfg.max_triples) {
                    budget_hit = true;
                    break;
                }
                ++issued;

                std::string rendered =
                    render_prompt(prompt, document{rec.abstract, doc_kind::abstract});
                judge_score s;
                s.paper_id = rec.paper_id;
                s.model = model;
                s.prompt = prompt.id;
                s.runs.assign(static_cast<std::size_t>(cfg.runs_per_triple), std::nullopt);

                bool failed = false;
                for (int run = 0; run < cfg.runs_per_triple && !failed; ++run) {
                    std::optional<int> score = parse_score(client.complete(model, rendered));
                    if (!score) {
                        ++s.resamples;
                        score = parse_score(client.complete(model, rendered));
                    }
                    if (!score)
                        failed = true;  // triple is recorded as missing
                    else
                        s.runs[static_cast<std::size_t>(run)] = score;
                }
                if (!failed) {
                    std::vector<int> vals;
                    for (const auto& r : s.runs) vals.push_back(*r);
                    std::sort(vals.begin(), vals.end());
                    s.median = vals[(vals.size() - 1) / 2];
                    if (cfg.aggregation == triple_aggregation::mean) {
                        double sum = 0.0;
                        for (int v : vals) sum += v;
                        s.value = sum / static_cast<double>(vals.size());
                    } else {
                        s.value = static_cast<double>(*s.median);
                    }
                }

                ledger << judge_score_to_json(s) << "\n";
                ledger.flush();
                done[key] = s;
                out.push_back(std::move(s));
            }
        }
    }
    return out;
}

std::map<std::tuple<std::string, prompt_id, int>, double> yearly_judge_means(
    const std::vector<judge_score>& scores,
    const std::map<std::string, int>& paper_year) {
    struct acc {
        double sum = 0.0;
        std::size_t n = 0;
    };
    std::map<std::tuple<std::string, prompt_id, int>, acc> bins;
    for (const judge_score& s : scores) {
        std::optional<double> v = s.value;
        if (!v && s.median) v = static_cast<double>(*s.median);
        if (!v) continue;  // failed triple
        auto yit = paper_year.find(s.paper_id);
        if (yit == paper_year.end()) continue;
        acc& a = bins[{s.model, s.prompt, yit->second}];
        a.sum += *v;
        ++a.n;
    }
    std::map<std::tuple<std::string, prompt_id, int>, double> out;
    for (const auto& [key, a] : bins)
        out[key] = a.sum / static_cast<double>(a.n);
    return out;
}

std::map<int, double> standardize(const std::map<int, double>& series, int base_from,
                                  int base_to, sigma_kind sigma) {
    std::vector<double> window;
    for (const auto& [year, value] : series)
        if (year >= base_from && year <= base_to) window.push_back(value);
    if (window.size() < 2)
        throw insufficient_data("standardization window needs at least 2 years, has " +
                                std::to_string(window.size()));

    double mu = 0.0;
    for (double v : window) mu += v;
    mu /= static_cast<double>(window.size());
    double var = 0.0;
    for (double v : window) var += (v - mu) * (v - mu);
    var /= static_cast<double>(sigma == sigma_kind::population ? window.size()
                                                               : window.size() - 1);
    if (var == 0.0)
        throw degenerate_baseline("constant series over the standardization window");
    const double sd = std::sqrt(var);

    std::map<int, double> out;
    for (const auto& [year, value] : series) out[year] = (value - mu) / sd;
    return out;
}

std::map<int, double> average_z(
    const std::map<std::tuple<std::string, prompt_id, int>, double>& yearly_means,
    int base_from, int base_to, sigma_kind sigma) {
    // regroup into per-(model, prompt) series
    std::map<std::pair<std::string, prompt_id>, std::map<int, double>> series;
    for (const auto& [key, mean] : yearly_means)
        series[{std::get<0>(key), std::get<1>(key)}][std::get<2>(key)] = mean;

    std::map<int, double> sum;
    std::map<int, std::size_t> n;
    for (const auto& [key, s] : series) {
        for (const auto& [year, z] : standardize(s, base_from, base_to, sigma)) {
            sum[year] += z;
            ++n[year];
        }
    }
    std::map<int, double> out;
    for (const auto& [year, total] : sum)
        out[year] = total / static_cast<double>(n[year]);
    return out;
}

}  // namespace scribemeter

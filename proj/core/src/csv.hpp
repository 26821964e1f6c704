#pragma once

#include <charconv>
#include <istream>
#include <string>
#include <system_error>
#include <vector>

namespace scribemeter::detail {

// RFC-4180-style reader: quoted fields may hold commas, doubled quotes and
// newlines; rows are vectors of unquoted field values.
inline std::vector<std::vector<std::string>> read_csv(std::istream& in) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false, any = false;

    auto end_field = [&] {
        row.push_back(std::move(field));
        field.clear();
    };
    auto end_row = [&] {
        end_field();
        rows.push_back(std::move(row));
        row.clear();
        any = false;
    };

    char c;
    while (in.get(c)) {
        if (quoted) {
            if (c == '"') {
                if (in.peek() == '"') {
                    in.get(c);
                    field.push_back('"');
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(c);
            }
            any = true;
        } else if (c == '"' && field.empty()) {
            quoted = true;
            any = true;
        } else if (c == ',') {
            end_field();
            any = true;
        } else if (c == '\n') {
            if (!field.empty() && field.back() == '\r') field.pop_back();
            if (any || !field.empty() || !row.empty()) end_row();
        } else {
            field.push_back(c);
            any = true;
        }
    }
    if (!field.empty() || !row.empty()) end_row();
    return rows;
}

// One CSV field, quoted only when needed.
inline std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += "\"";
    return out;
}

// Shortest round-trip decimal form, so written CSVs re-read to the same bits.
inline std::string format_double(double v) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, p);
}

inline double parse_double(const std::string& s) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw std::invalid_argument("not a number: " + s);
    return v;
}

}  // namespace scribemeter::detail

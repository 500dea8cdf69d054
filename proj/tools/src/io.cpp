#include "convboot_app/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>

namespace convboot::app {
namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& line) {
    return trim(line.substr(0, line.find('#')));
}

double to_real(const std::string& field, std::size_t line_no) {
    const std::string t = trim(field);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(t, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (t.empty() || used != t.size() || !std::isfinite(v)) {
        std::ostringstream msg;
        msg << "line " << line_no << ": '" << t << "' is not a finite number";
        throw ParseError(msg.str());
    }
    return v;
}

int to_state(const std::string& field, std::size_t line_no) {
    const double v = to_real(field, line_no);
    if (v != std::floor(v)) {
        std::ostringstream msg;
        msg << "line " << line_no << ": state label '" << trim(field) << "' is not an integer";
        throw ParseError(msg.str());
    }
    return static_cast<int>(v);
}

std::string fmt_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
        out.push_back(trim(field));
    }
    if (!line.empty() && line.back() == ',') {
        out.emplace_back();
    }
    return out;
}

// Yields (line number, fields) for every data row after checking the header.
template<class F>
void for_each_row(std::istream& in, const std::vector<std::string>& header, F&& row) {
    std::string line;
    std::size_t line_no = 0;
    bool seen_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string body = strip_comment(line);
        if (body.empty()) {
            continue;
        }
        auto fields = split_csv(body);
        if (!seen_header) {
            if (fields != header) {
                std::string want;
                for (const auto& h : header) {
                    want += (want.empty() ? "" : ",") + h;
                }
                throw ParseError("expected header '" + want + "', got '" + body + "'");
            }
            seen_header = true;
            continue;
        }
        if (fields.size() != header.size()) {
            std::ostringstream msg;
            msg << "line " << line_no << ": expected " << header.size() << " fields, got " << fields.size();
            throw ParseError(msg.str());
        }
        row(line_no, fields);
    }
    if (!seen_header) {
        throw ParseError("input is empty");
    }
}

} // namespace

std::vector<double> parse_samples(std::istream& in) {
    std::vector<double> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string body = strip_comment(line);
        if (!body.empty()) {
            out.push_back(to_real(body, line_no));
        }
    }
    if (out.empty()) {
        throw ParseError("sample file holds no values");
    }
    return out;
}

std::string serialize_samples(const std::vector<double>& values) {
    std::string out;
    for (double v : values) {
        out += fmt_real(v) + "\n";
    }
    return out;
}

UnitIncrements parse_degradation(std::istream& in) {
    UnitIncrements d;
    for_each_row(in, {"unit", "increment"}, [&](std::size_t line_no, const std::vector<std::string>& f) {
        if (f[0].empty()) {
            throw ParseError("line " + std::to_string(line_no) + ": empty unit id");
        }
        const double inc = to_real(f[1], line_no);
        std::size_t u = 0;
        while (u < d.ids.size() && d.ids[u] != f[0]) {
            ++u;
        }
        if (u == d.ids.size()) {
            d.ids.push_back(f[0]);
            d.increments.emplace_back();
        }
        d.increments[u].push_back(inc);
    });
    if (d.ids.empty()) {
        throw ParseError("degradation file holds no rows");
    }
    return d;
}

std::string serialize_degradation(const UnitIncrements& data) {
    std::string out = "unit,increment\n";
    for (std::size_t u = 0; u < data.ids.size(); ++u) {
        for (double v : data.increments[u]) {
            out += data.ids[u] + "," + fmt_real(v) + "\n";
        }
    }
    return out;
}

std::vector<TransitionRecord> parse_transitions(std::istream& in) {
    std::vector<TransitionRecord> out;
    for_each_row(in, {"from", "to", "time"}, [&](std::size_t line_no, const std::vector<std::string>& f) {
        out.push_back({to_state(f[0], line_no), to_state(f[1], line_no), to_real(f[2], line_no)});
    });
    if (out.empty()) {
        throw ParseError("transition file holds no rows");
    }
    return out;
}

std::string serialize_transitions(const std::vector<TransitionRecord>& records) {
    std::string out = "from,to,time\n";
    for (const auto& r : records) {
        out += std::to_string(r.from_state) + "," + std::to_string(r.to_state) + "," + fmt_real(r.sojourn) + "\n";
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw ParseError("cannot open '" + path + "'");
    }
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

std::string fnv1a64_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    for (const auto& f : split_csv(text)) {
        out.push_back(to_real(f, 1));
    }
    return out;
}

} // namespace convboot::app

#include "entlab/io.hpp"

#include "entlab/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace entlab {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Comma-separated fields; double quotes enclose fields with commas and "" escapes a quote.
std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    bool quoted = false, was_quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                field += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = was_quoted = true;
        } else if (c == ',') {
            out.push_back(was_quoted ? field : trim(field));
            field.clear();
            was_quoted = false;
        } else {
            field += c;
        }
    }
    out.push_back(was_quoted ? field : trim(field));
    return out;
}

} // namespace

CsvTable read_csv(const std::string& path, bool has_header) {
    std::ifstream in(path);
    if (!in) fail_validation("io", "cannot open " + path);
    CsvTable t;
    std::string line;
    bool header_seen = !has_header;
    while (std::getline(in, line)) {
        std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        auto fields = split(s);
        if (!header_seen) {
            t.header = fields;
            header_seen = true;
            continue;
        }
        t.rows.push_back(std::move(fields));
    }
    if (has_header && !header_seen) fail_validation("io", path + ": missing header");
    return t;
}

double parse_double(const std::string& field, const std::string& context) {
    std::string f = trim(field);
    if (f == "inf" || f == "INFINITY" || f == "Infinity") return INFINITY;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
    if (ec != std::errc() || ptr != f.data() + f.size())
        fail_validation("io", context + ": not a number: '" + field + "'");
    return v;
}

std::uint64_t parse_count(const std::string& field, const std::string& context) {
    std::string f = trim(field);
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
    if (ec != std::errc() || ptr != f.data() + f.size())
        fail_validation("io", context + ": not a non-negative integer: '" + field + "'");
    return v;
}

std::string format_double(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (std::isnan(x)) return "nan";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    (void)ec;
    return std::string(buf, ptr);
}

std::string config_hash(const std::string& canonical) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : canonical) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

CsvWriter::CsvWriter(std::ostream& out, const std::string& hash,
                     const std::vector<std::string>& header)
    : out_(out) {
    out_ << "# config_hash=" << hash << "\n";
    row(header);
}

void CsvWriter::row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out_ << ',';
        const std::string& f = fields[i];
        if (f.find_first_of(",\"\n") == std::string::npos) {
            out_ << f;
            continue;
        }
        out_ << '"';
        for (char c : f) out_ << (c == '"' ? "\"\"" : std::string(1, c));
        out_ << '"';
    }
    out_ << '\n';
}

} // namespace entlab

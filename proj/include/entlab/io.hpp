#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace entlab {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

// Lines starting with '#' are comments. When `has_header` is false every line
// is data and `header` stays empty.
CsvTable read_csv(const std::string& path, bool has_header = true);
double parse_double(const std::string& field, const std::string& context);
std::uint64_t parse_count(const std::string& field, const std::string& context);

// Shortest round-trip formatting, so reruns are byte-identical.
std::string format_double(double x);

// FNV-1a over the canonical config text, rendered as 16 hex digits.
std::string config_hash(const std::string& canonical);

class CsvWriter {
public:
    CsvWriter(std::ostream& out, const std::string& hash, const std::vector<std::string>& header);
    void row(const std::vector<std::string>& fields);

private:
    std::ostream& out_;
};

} // namespace entlab

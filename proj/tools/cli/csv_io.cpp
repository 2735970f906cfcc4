#include "csv_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <set>
#include <string_view>

#include "triadic/error.hpp"

namespace triadic::cli {

namespace {

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + what);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        out.push_back(trim(line.substr(start, comma == line.npos ? line.npos : comma - start)));
        if (comma == line.npos) break;
        start = comma + 1;
    }
    return out;
}

double parse_number(std::string_view field, std::size_t line, std::string_view column) {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
    if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
        parse_error(line, "column '" + std::string(column) + "': not a number: '" + std::string(field) + "'");
    }
    return out;
}

// Reads lines, skipping blanks, stripping CR and a leading UTF-8 BOM.
class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    bool next(std::string& line) {
        while (std::getline(in_, line)) {
            ++line_no_;
            if (line_no_ == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) {
                line.erase(0, 3);
            }
            if (!line.empty() && line.back() == '\r') {
                line.pop_back();
            }
            if (!trim(line).empty()) {
                return true;
            }
        }
        return false;
    }

    std::size_t line_no() const { return line_no_; }

private:
    std::istream& in_;
    std::size_t line_no_ = 0;
};

} // namespace

PValueTable read_pvalue_csv(std::istream& in) {
    LineReader reader(in);
    std::string line;
    if (!reader.next(line)) {
        parse_error(reader.line_no() + 1, "empty input: expected header 'index,p_h[,p_k]'");
    }
    std::vector<std::string> header;
    for (std::string_view name : split(line)) {
        header.emplace_back(name);
    }
    auto column = [&](std::string_view name) -> std::ptrdiff_t {
        const auto it = std::find(header.begin(), header.end(), name);
        return it == header.end() ? -1 : it - header.begin();
    };
    const std::ptrdiff_t index_col = column("index");
    const std::ptrdiff_t p_h_col = column("p_h");
    const std::ptrdiff_t p_k_col = column("p_k");
    if (index_col < 0 || p_h_col < 0) {
        parse_error(reader.line_no(), "header must contain 'index' and 'p_h'");
    }

    PValueTable table;
    table.has_p_k = p_k_col >= 0;
    std::set<std::size_t> seen;
    while (reader.next(line)) {
        const std::size_t ln = reader.line_no();
        const std::vector<std::string_view> fields = split(line);
        if (fields.size() != header.size()) {
            parse_error(ln, "expected " + std::to_string(header.size()) + " fields, got " + std::to_string(fields.size()));
        }
        const std::string_view index_text = fields[static_cast<std::size_t>(index_col)];
        std::size_t label = 0;
        const auto [ptr, ec] = std::from_chars(index_text.data(), index_text.data() + index_text.size(), label);
        if (index_text.empty() || ec != std::errc() || ptr != index_text.data() + index_text.size() || label == 0) {
            parse_error(ln, "index must be a positive integer, got '" + std::string(index_text) + "'");
        }
        if (!seen.insert(label).second) {
            parse_error(ln, "duplicate index " + std::to_string(label));
        }
        const double p_h = parse_number(fields[static_cast<std::size_t>(p_h_col)], ln, "p_h");
        const double p_k = table.has_p_k ? parse_number(fields[static_cast<std::size_t>(p_k_col)], ln, "p_k") : 1.0 - p_h;
        if (!(p_h >= 0.0 && p_h <= 1.0)) {
            parse_error(ln, "p_h out of range [0, 1]: " + format_double(p_h));
        }
        if (!(p_k >= 0.0 && p_k <= 1.0)) {
            parse_error(ln, "p_k out of range [0, 1]: " + format_double(p_k));
        }
        table.labels.push_back(label);
        table.line_numbers.push_back(ln);
        table.pairs.emplace_back(p_h, p_k);
    }
    if (table.pairs.empty()) {
        parse_error(reader.line_no() + 1, "no data rows after the header");
    }
    return table;
}

DataTable read_data_csv(std::istream& in) {
    LineReader reader(in);
    std::string line;
    if (!reader.next(line)) {
        parse_error(reader.line_no() + 1, "empty input: expected a header row of variable names");
    }
    std::vector<std::string> names;
    for (std::string_view name : split(line)) {
        names.emplace_back(name);
    }
    std::vector<double> values;
    std::size_t rows = 0;
    while (reader.next(line)) {
        const std::vector<std::string_view> fields = split(line);
        if (fields.size() != names.size()) {
            parse_error(reader.line_no(),
                        "expected " + std::to_string(names.size()) + " fields, got " + std::to_string(fields.size()));
        }
        for (std::size_t c = 0; c < fields.size(); ++c) {
            values.push_back(parse_number(fields[c], reader.line_no(), names[c]));
        }
        ++rows;
    }
    const std::size_t cols = names.size();
    return DataTable{std::move(names), DataMatrix(rows, cols, std::move(values))};
}

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace triadic::cli

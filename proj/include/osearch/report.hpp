#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace osearch::report {

inline constexpr std::string_view kToolVersion = "0.1.0";

/// One result row: ordered (column, value) pairs. Values are text; rationals
/// appear as "num/den" and counts as decimal digits.
using Row = std::vector<std::pair<std::string, std::string>>;

struct Invocation {
    std::string name;
    std::vector<std::string> args;

    friend bool operator==(const Invocation&, const Invocation&) = default;
};

struct Metadata {
    std::string domain;
    std::string mode;
    std::string budget;
    std::optional<std::string> seed;
    std::string tool_version{kToolVersion};

    friend bool operator==(const Metadata&, const Metadata&) = default;
};

struct ReportDocument {
    Invocation command;
    std::vector<std::string> columns; // the tabular view used by CSV and Markdown
    std::vector<Row> results;
    Metadata metadata;

    friend bool operator==(const ReportDocument&, const ReportDocument&) = default;
};

enum class Format { Csv, Json, Markdown };

/// "csv", "json" or "md". Throws osearch::Error otherwise.
Format parse_format(std::string_view name);

/// Value of a row's column, empty when the row lacks it.
std::string cell(const Row& row, std::string_view column);

/// Header line plus one line per row, RFC 4180 quoting, LF endings.
std::string to_csv(const ReportDocument& doc);

/// A single pretty-printed JSON object; from_json(to_json(d)) == d.
std::string to_json(const ReportDocument& doc);
ReportDocument from_json(std::string_view text);

std::string to_markdown(const ReportDocument& doc);

std::string render(const ReportDocument& doc, Format format);

} // namespace osearch::report

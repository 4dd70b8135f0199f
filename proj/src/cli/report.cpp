#include "osearch/report.hpp"

#include "json.hpp"

#include "osearch/errors.hpp"

namespace osearch::report {

namespace {

using Json = nlohmann::ordered_json;

std::string csv_field(const std::string& value) {
    if (value.find_first_of(",\"\n\r") == std::string::npos) return value;
    std::string out = "\"";
    for (char c : value) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string md_field(const std::string& value) {
    std::string out;
    for (char c : value) {
        if (c == '|') out += '\\';
        out += c;
    }
    return out;
}

} // namespace

Format parse_format(std::string_view name) {
    if (name == "csv") return Format::Csv;
    if (name == "json") return Format::Json;
    if (name == "md") return Format::Markdown;
    throw Error("unknown format '" + std::string(name) + "' (expected csv, json or md)");
}

std::string cell(const Row& row, std::string_view column) {
    for (const auto& [key, value] : row)
        if (key == column) return value;
    return {};
}

std::string to_csv(const ReportDocument& doc) {
    std::string out;
    for (std::size_t i = 0; i < doc.columns.size(); ++i) out += (i ? "," : "") + csv_field(doc.columns[i]);
    out += '\n';
    for (const auto& row : doc.results) {
        for (std::size_t i = 0; i < doc.columns.size(); ++i) out += (i ? "," : "") + csv_field(cell(row, doc.columns[i]));
        out += '\n';
    }
    return out;
}

std::string to_json(const ReportDocument& doc) {
    Json results = Json::array();
    for (const auto& row : doc.results) {
        Json obj = Json::object();
        for (const auto& [key, value] : row) obj[key] = value;
        results.push_back(std::move(obj));
    }
    Json metadata = {{"domain", doc.metadata.domain},
                     {"mode", doc.metadata.mode},
                     {"budget", doc.metadata.budget},
                     {"seed", doc.metadata.seed ? Json(*doc.metadata.seed) : Json(nullptr)},
                     {"tool_version", doc.metadata.tool_version}};
    Json root = {{"command", {{"name", doc.command.name}, {"args", doc.command.args}}},
                 {"columns", doc.columns},
                 {"results", std::move(results)},
                 {"metadata", std::move(metadata)}};
    return root.dump(2) + "\n";
}

ReportDocument from_json(std::string_view text) {
    try {
        const Json root = Json::parse(text);
        ReportDocument doc;
        doc.command.name = root.at("command").at("name").get<std::string>();
        doc.command.args = root.at("command").at("args").get<std::vector<std::string>>();
        doc.columns = root.at("columns").get<std::vector<std::string>>();
        for (const auto& obj : root.at("results")) {
            Row row;
            for (const auto& [key, value] : obj.items()) row.emplace_back(key, value.get<std::string>());
            doc.results.push_back(std::move(row));
        }
        const Json& meta = root.at("metadata");
        doc.metadata.domain = meta.at("domain").get<std::string>();
        doc.metadata.mode = meta.at("mode").get<std::string>();
        doc.metadata.budget = meta.at("budget").get<std::string>();
        if (!meta.at("seed").is_null()) doc.metadata.seed = meta.at("seed").get<std::string>();
        doc.metadata.tool_version = meta.at("tool_version").get<std::string>();
        return doc;
    } catch (const Json::exception& e) {
        throw Error(std::string("malformed report: ") + e.what());
    }
}

std::string to_markdown(const ReportDocument& doc) {
    std::string out = "|";
    for (const auto& c : doc.columns) out += " " + md_field(c) + " |";
    out += "\n|";
    for (std::size_t i = 0; i < doc.columns.size(); ++i) out += " --- |";
    out += '\n';
    for (const auto& row : doc.results) {
        out += "|";
        for (const auto& c : doc.columns) out += " " + md_field(cell(row, c)) + " |";
        out += '\n';
    }
    return out;
}

std::string render(const ReportDocument& doc, Format format) {
    switch (format) {
    case Format::Csv: return to_csv(doc);
    case Format::Json: return to_json(doc);
    case Format::Markdown: return to_markdown(doc);
    }
    return {};
}

} // namespace osearch::report

#include "depref/table.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "depref/errors.hpp"

namespace depref {

void Table::add_row(std::vector<double> row) {
    if (row.size() != columns.size()) {
        throw std::logic_error("table row width does not match column count");
    }
    rows.push_back(std::move(row));
}

std::string format_double(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.15g", value);
    return buffer;
}

std::string to_csv(const Table& table) {
    std::string out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c > 0) out += ',';
        out += table.columns[c];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0) out += ',';
            out += format_double(row[c]);
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const std::vector<Table>& tables) {
    nlohmann::ordered_json doc;
    doc["tables"] = nlohmann::ordered_json::array();
    for (const Table& table : tables) {
        nlohmann::ordered_json entry;
        entry["name"] = table.name;
        entry["columns"] = table.columns;
        entry["rows"] = table.rows;
        doc["tables"].push_back(std::move(entry));
    }
    return doc.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SpecError("cannot open output file: " + path);
    out << content;
    if (!out) throw SpecError("failed writing output file: " + path);
}

std::string sibling_path(const std::string& path, const std::string& suffix) {
    const std::size_t slash = path.find_last_of("/\\");
    const std::size_t dot = path.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
        return path + "_" + suffix;
    }
    return path.substr(0, dot) + "_" + suffix + path.substr(dot);
}

} // namespace depref

#pragma once

#include <string>
#include <vector>

namespace depref {

/// A named numeric table with stable column order; the unit every command
/// emits. Boolean columns are encoded 0/1.
struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    void add_row(std::vector<double> row);
};

/// Fixed-format float for stable output: 15 significant digits, %g style.
std::string format_double(double value);

/// CSV with a header row, LF line endings, 15 significant digits.
std::string to_csv(const Table& table);

/// One JSON document for a set of tables:
///   {"tables": [{"name": ..., "columns": [...], "rows": [[...]]}]}
std::string to_json(const std::vector<Table>& tables);

void write_text_file(const std::string& path, const std::string& content);

/// "dir/out.csv" + "per_run" -> "dir/out_per_run.csv"
std::string sibling_path(const std::string& path, const std::string& suffix);

} // namespace depref

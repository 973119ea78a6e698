#pragma once

#include <string>
#include <vector>

namespace sdkim {

// A write-once table: every cell is pre-formatted text, so the CSV and JSON
// renderings of the same table are byte-deterministic.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    static std::string cell(double v);         // %.17g
    static std::string cell(int v);
    static std::string cell(std::uint64_t v);

    void add_row(std::vector<std::string> row);
    std::string to_csv() const;
    std::string to_json() const;  // array of objects; numeric-looking cells stay numbers
};

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

// Parse a CSV produced by Table::to_csv (no quoting/escaping in our outputs).
Table read_csv(const std::string& path);

}  // namespace sdkim

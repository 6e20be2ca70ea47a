#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

// Deterministic output plumbing shared by the CLI commands. Numbers are
// printed with 12 significant digits through std::to_chars, so the text is
// locale-independent and byte-identical across runs; csv and json-lines rows
// carry exactly the same number strings.

namespace kb::cli {

enum class OutputFormat { table, csv, jsonl };

std::optional<OutputFormat> parse_format(std::string_view text);

std::string format_number(double value);

struct Cell {
    std::string key;
    std::string text;
    bool numeric;
};

Cell num(std::string key, double value);
Cell integer(std::string key, long long value);
Cell text(std::string key, std::string value);
Cell boolean(std::string key, bool value);

class RowWriter {
public:
    RowWriter(std::ostream& out, OutputFormat format);

    // header/comment carry table- and csv-only metadata; json-lines readers
    // get the same content as dedicated records from the caller instead
    void comment(const std::string& line);
    void row(const std::vector<Cell>& cells);
    void flush();  // emits buffered table rows with aligned columns

private:
    std::ostream& out_;
    OutputFormat format_;
    bool csv_header_written_ = false;
    std::vector<std::vector<std::string>> table_rows_;  // header + data
};

}  // namespace kb::cli

#include "kb/format.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace kb::cli {

std::optional<OutputFormat> parse_format(std::string_view text) {
    if (text == "table") return OutputFormat::table;
    if (text == "csv") return OutputFormat::csv;
    if (text == "json-lines") return OutputFormat::jsonl;
    return std::nullopt;
}

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buffer[40];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value,
                                      std::chars_format::general, 12);
    return std::string(buffer, result.ptr);
}

Cell num(std::string key, double value) {
    return {std::move(key), format_number(value), true};
}

Cell integer(std::string key, long long value) {
    return {std::move(key), std::to_string(value), true};
}

Cell text(std::string key, std::string value) {
    return {std::move(key), std::move(value), false};
}

Cell boolean(std::string key, bool value) {
    return {std::move(key), value ? "true" : "false", true};
}

RowWriter::RowWriter(std::ostream& out, OutputFormat format)
    : out_(out), format_(format) {}

void RowWriter::comment(const std::string& line) {
    if (format_ == OutputFormat::jsonl) return;
    out_ << "# " << line << "\n";
}

void RowWriter::row(const std::vector<Cell>& cells) {
    switch (format_) {
        case OutputFormat::csv: {
            if (!csv_header_written_) {
                for (std::size_t i = 0; i < cells.size(); ++i)
                    out_ << (i ? "," : "") << cells[i].key;
                out_ << "\n";
                csv_header_written_ = true;
            }
            for (std::size_t i = 0; i < cells.size(); ++i)
                out_ << (i ? "," : "") << cells[i].text;
            out_ << "\n";
            break;
        }
        case OutputFormat::jsonl: {
            out_ << "{";
            for (std::size_t i = 0; i < cells.size(); ++i) {
                if (i) out_ << ",";
                out_ << "\"" << cells[i].key << "\":";
                if (cells[i].numeric)
                    out_ << (cells[i].text == "nan" ? "null" : cells[i].text);
                else
                    out_ << "\"" << cells[i].text << "\"";
            }
            out_ << "}\n";
            break;
        }
        case OutputFormat::table: {
            if (table_rows_.empty()) {
                std::vector<std::string> header;
                for (const Cell& cell : cells) header.push_back(cell.key);
                table_rows_.push_back(std::move(header));
            }
            std::vector<std::string> data;
            for (const Cell& cell : cells) data.push_back(cell.text);
            table_rows_.push_back(std::move(data));
            break;
        }
    }
}

void RowWriter::flush() {
    if (format_ != OutputFormat::table || table_rows_.empty()) return;
    std::vector<std::size_t> width;
    for (const auto& row : table_rows_) {
        if (width.size() < row.size()) width.resize(row.size(), 0);
        for (std::size_t i = 0; i < row.size(); ++i)
            width[i] = std::max(width[i], row[i].size());
    }
    for (const auto& row : table_rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out_ << "  ";
            out_ << std::string(width[i] - row[i].size(), ' ') << row[i];
        }
        out_ << "\n";
    }
    table_rows_.clear();
}

}  // namespace kb::cli

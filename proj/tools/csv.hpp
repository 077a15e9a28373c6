#pragma once

#include <cstdio>
#include <string>
#include <vector>

namespace pinball::cli {

/// Comma-separated table: header row, one row per cell, doubles printed with
/// 17 significant digits so binary64 values round-trip.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    class Row {
    public:
        explicit Row(CsvTable& t) : t_(t) {}
        Row& operator<<(double v) {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            cells_.emplace_back(buf);
            return *this;
        }
        Row& operator<<(long long v) {
            cells_.push_back(std::to_string(v));
            return *this;
        }
        Row& operator<<(int v) { return *this << static_cast<long long>(v); }
        Row& operator<<(bool v) {
            cells_.emplace_back(v ? "1" : "0");
            return *this;
        }
        Row& operator<<(const std::string& v) {
            cells_.push_back(v);
            return *this;
        }
        Row& operator<<(const char* v) {
            cells_.emplace_back(v);
            return *this;
        }
        ~Row() { t_.rows_.push_back(std::move(cells_)); }

    private:
        CsvTable& t_;
        std::vector<std::string> cells_;
    };

    Row row() { return Row(*this); }

    std::string to_string() const {
        std::string out;
        for (size_t i = 0; i < columns_.size(); ++i) {
            if (i) out += ',';
            out += columns_[i];
        }
        out += '\n';
        for (const auto& r : rows_) {
            for (size_t i = 0; i < r.size(); ++i) {
                if (i) out += ',';
                out += r[i];
            }
            out += '\n';
        }
        return out;
    }

    size_t row_count() const { return rows_.size(); }

private:
    friend class Row;
    std::vector<std::string> columns_;
    std::vector<std::vector<std::string>> rows_;
};

}  // namespace pinball::cli

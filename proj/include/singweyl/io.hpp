#pragma once

// File output helpers: deterministic CSV/JSON serialization with atomic
// write-then-rename, plus CSV import for replaying saved traces.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "singweyl/types.hpp"

namespace singweyl {

// writes to a sibling temp file and renames over the target, so readers
// never observe a partial file
inline void atomic_write_text(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw precondition_error("atomic_write_text: cannot open " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw precondition_error("atomic_write_text: write failed for " + tmp.string());
    }
    fs::rename(tmp, target);
}

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline std::string csv_format(const std::vector<std::string>& header,
                              const std::vector<std::vector<double>>& rows) {
    std::ostringstream out;
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << "\n";
    for (const auto& row : rows) {
        if (row.size() != header.size()) throw precondition_error("csv_format: row width mismatch");
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
        out << "\n";
    }
    return out.str();
}

inline void csv_write(const std::string& path, const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows) {
    atomic_write_text(path, csv_format(header, rows));
}

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

inline CsvTable csv_read(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw precondition_error("csv_read: cannot open " + path);
    CsvTable t;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (first) {
            t.header = cells;
            first = false;
            continue;
        }
        std::vector<double> row;
        for (auto& c : cells) row.push_back(std::stod(c));
        if (row.size() != t.header.size()) throw precondition_error("csv_read: ragged row in " + path);
        t.rows.push_back(row);
    }
    return t;
}

}  // namespace singweyl

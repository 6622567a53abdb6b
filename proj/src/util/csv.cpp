#include "uavdet/util/csv.hpp"

#include <charconv>
#include <cstdio>

#include "uavdet/errors.hpp"

namespace uavdet {

int CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return static_cast<int>(i);
    }
    throw ValidationError("missing CSV column '" + name + "'");
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            cells.push_back(line.substr(start));
            break;
        }
        cells.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    if (!cells.empty() && !cells.back().empty() && cells.back().back() == '\r') {
        cells.back().pop_back();
    }
    return cells;
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path.string());
    CsvTable t;
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("empty CSV file " + path.string());
    t.header = split_csv_line(line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto cells = split_csv_line(line);
        if (cells.size() != t.header.size()) {
            throw ValidationError(path.string() + ":" + std::to_string(t.rows.size() + 2) +
                                  ": expected " + std::to_string(t.header.size()) + " cells, got " +
                                  std::to_string(cells.size()));
        }
        t.rows.push_back(std::move(cells));
    }
    return t;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : out_(path), width_(header.size()) {
    if (!out_) throw ValidationError("cannot write " + path.string());
    for (std::size_t i = 0; i < header.size(); ++i) {
        out_ << header[i] << (i + 1 == header.size() ? "\n" : ",");
    }
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    if (cells.size() != width_) throw ValidationError("CSV row width mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        out_ << cells[i] << (i + 1 == cells.size() ? "\n" : ",");
    }
}

void CsvWriter::close() { out_.close(); }

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace uavdet

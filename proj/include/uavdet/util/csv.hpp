#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace uavdet {

/// Minimal CSV support for the project's numeric file formats. No quoting:
/// every format defined by this toolkit is plain comma-separated numbers
/// and identifiers.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int column(const std::string& name) const;
};

CsvTable read_csv(const std::filesystem::path& path);

std::vector<std::string> split_csv_line(const std::string& line);

class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);
    void row(const std::vector<std::string>& cells);
    void close();

private:
    std::ofstream out_;
    std::size_t width_;
};

/// Full-precision text form of a double (round-trips exactly).
std::string fmt_double(double v);

}  // namespace uavdet

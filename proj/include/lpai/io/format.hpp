#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace lpai::io {

/// Shortest round-trip decimal form, independent of the C/C++ locale.
std::string format_double(double value);

/// Writes a header row then rows of doubles; fields are comma separated and
/// lines end in '\n'.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);
    ~CsvWriter();
    CsvWriter(const CsvWriter&) = delete;
    CsvWriter& operator=(const CsvWriter&) = delete;

    void row(const std::vector<double>& values);
    void row(const std::vector<std::string>& fields);

private:
    struct Impl;
    Impl* impl_;
};

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    /// Index of the first column whose name is one of `names`; throws if absent.
    std::size_t column(std::initializer_list<std::string_view> names) const;
};

/// Numeric CSV with a header row. Throws IoError / ConfigError on bad input.
CsvTable read_csv(const std::filesystem::path& path);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace lpai::io

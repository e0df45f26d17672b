#include "lpai/io/format.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "lpai/error.hpp"

namespace lpai::io {

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

struct CsvWriter::Impl {
    std::ofstream out;
    std::filesystem::path path;
};

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : impl_(new Impl{std::ofstream(path, std::ios::binary | std::ios::trunc), path}) {
    if (!impl_->out) {
        delete impl_;
        throw IoError("cannot open " + path.string() + " for writing");
    }
    row(header);
}

CsvWriter::~CsvWriter() { delete impl_; }

void CsvWriter::row(const std::vector<double>& values) {
    std::string line;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) line += ',';
        line += format_double(values[i]);
    }
    line += '\n';
    impl_->out << line;
    if (!impl_->out) throw IoError("write failed: " + impl_->path.string());
}

void CsvWriter::row(const std::vector<std::string>& fields) {
    std::string line;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) line += ',';
        line += fields[i];
    }
    line += '\n';
    impl_->out << line;
    if (!impl_->out) throw IoError("write failed: " + impl_->path.string());
}

std::size_t CsvTable::column(std::initializer_list<std::string_view> names) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        for (auto n : names) {
            if (header[i] == n) return i;
        }
    }
    std::string wanted;
    for (auto n : names) wanted += std::string(wanted.empty() ? "" : " or ") + std::string(n);
    throw ConfigError("CSV is missing a column named " + wanted);
}

namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) {
        while (!field.empty() && (field.back() == '\r' || field.back() == ' ')) field.pop_back();
        std::size_t start = field.find_first_not_of(' ');
        out.push_back(start == std::string::npos ? std::string() : field.substr(start));
    }
    return out;
}

}  // namespace

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) throw ConfigError(path.string() + ": empty CSV");
    table.header = split(line);
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        const auto fields = split(line);
        if (fields.size() != table.header.size()) {
            throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": expected " +
                              std::to_string(table.header.size()) + " fields");
        }
        std::vector<double> row(fields.size());
        for (std::size_t i = 0; i < fields.size(); ++i) {
            const auto& f = fields[i];
            const auto res = std::from_chars(f.data(), f.data() + f.size(), row[i]);
            if (res.ec != std::errc() || res.ptr != f.data() + f.size()) {
                throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": non-numeric field '" + f + "'");
            }
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << text;
    if (!out) throw IoError("write failed: " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace lpai::io

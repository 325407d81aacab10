#pragma once

#include <nlohmann/json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace grimglue {

using json = nlohmann::ordered_json;

// Floats in reports are rendered to 17 significant digits so identical runs
// produce byte-identical files.
inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

inline void write_json(const std::filesystem::path& path, const json& j) {
    write_text_file(path, j.dump(2) + "\n");
}

// Minimal CSV writer: header row, comma separator, UTF-8.
class CsvWriter {
  public:
    explicit CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}

    void add_row(std::vector<std::string> row) {
        if (row.size() != header_.size()) throw std::runtime_error("CSV row width mismatch");
        rows_.push_back(std::move(row));
    }

    std::string str() const {
        std::string out = join(header_);
        for (const auto& row : rows_) out += join(row);
        return out;
    }

    void write(const std::filesystem::path& path) const { write_text_file(path, str()); }

  private:
    static std::string join(const std::vector<std::string>& fields) {
        std::string line;
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) line += ',';
            line += fields[i];
        }
        line += '\n';
        return line;
    }
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

using Rng = std::mt19937_64;

}  // namespace grimglue

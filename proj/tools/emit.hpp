#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace cusp::cli {

/// 17 significant digits, scientific.
std::string fmt17(double v);

/// Hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    std::string to_csv() const;
    nlohmann::json to_json() const;
    /// Whitespace-separated pair of columns, readable by gnuplot.
    std::string to_plot(std::size_t x, std::size_t y) const;
};

/// Collects the files written by one command and produces the manifest.
class OutputSet {
public:
    explicit OutputSet(std::filesystem::path dir);

    const std::filesystem::path& dir() const { return dir_; }

    void write(const std::string& name, const std::string& content);
    void write_json(const std::string& name, const nlohmann::json& j);
    /// Writes `stem`.csv, `stem`.json, or one `stem`_<x>_<y>.dat per listed pair.
    void write_table(const std::string& stem, const Table& t, const std::string& format,
                     const std::vector<std::pair<std::size_t, std::size_t>>& plot_pairs);

    struct Entry {
        std::string name;
        std::size_t bytes = 0;
        std::string sha256;
    };
    const std::vector<Entry>& entries() const { return entries_; }

private:
    std::filesystem::path dir_;
    std::vector<Entry> entries_;
};

}  // namespace cusp::cli

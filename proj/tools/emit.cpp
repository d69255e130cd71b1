#include "emit.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <openssl/evp.h>

namespace cusp::cli {

std::string fmt17(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

std::string sha256_hex(const std::string& bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("sha256 failed");
    }
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

std::string Table::to_csv() const {
    std::string out;
    for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + columns[i];
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + fmt17(row[i]);
        out += '\n';
    }
    return out;
}

nlohmann::json Table::to_json() const {
    nlohmann::json j = nlohmann::json::object();
    for (std::size_t c = 0; c < columns.size(); ++c) {
        nlohmann::json col = nlohmann::json::array();
        for (const auto& row : rows) {
            if (std::isfinite(row[c])) {
                col.push_back(row[c]);
            } else {
                col.push_back(nullptr);
            }
        }
        j[columns[c]] = std::move(col);
    }
    return j;
}

std::string Table::to_plot(std::size_t x, std::size_t y) const {
    std::string out = "# " + columns.at(x) + " " + columns.at(y) + "\n";
    for (const auto& row : rows) out += fmt17(row[x]) + " " + fmt17(row[y]) + "\n";
    return out;
}

OutputSet::OutputSet(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + dir_.string() + ": " + ec.message());
}

void OutputSet::write(const std::string& name, const std::string& content) {
    const auto path = dir_ / name;
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    os << content;
    os.close();
    if (!os) throw std::runtime_error("write failed for " + path.string());
    for (auto& e : entries_) {
        if (e.name == name) {
            e = {name, content.size(), sha256_hex(content)};
            return;
        }
    }
    entries_.push_back({name, content.size(), sha256_hex(content)});
}

void OutputSet::write_json(const std::string& name, const nlohmann::json& j) {
    write(name, j.dump(2) + "\n");
}

void OutputSet::write_table(const std::string& stem, const Table& t, const std::string& format,
                            const std::vector<std::pair<std::size_t, std::size_t>>& plot_pairs) {
    if (format == "json") {
        write_json(stem + ".json", t.to_json());
    } else if (format == "plot") {
        for (const auto& [x, y] : plot_pairs) write(stem + "_" + t.columns[x] + "_" + t.columns[y] + ".dat", t.to_plot(x, y));
    } else {
        write(stem + ".csv", t.to_csv());
    }
}

}  // namespace cusp::cli

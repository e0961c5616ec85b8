#pragma once

// JSON plumbing shared by the CLI and the bundled-data loaders: data
// directory resolution (PFWB_DATA_DIR override), file slurping, canonical
// checksums, and ordered-JSON report skeletons.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "pfwb/matrix.hpp"
#include "pfwb/rational.hpp"

namespace pfwb {

using Json = nlohmann::ordered_json;

inline std::string slurp_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// data directory: --data-dir flag > PFWB_DATA_DIR > ./data > ../data
inline std::filesystem::path resolve_data_dir(const std::string& flag_value = "") {
    namespace fs = std::filesystem;
    auto ok = [](const fs::path& p) { return fs::is_directory(p); };
    if (!flag_value.empty()) {
        if (!ok(flag_value)) throw std::runtime_error("data dir not found: " + flag_value);
        return flag_value;
    }
    if (const char* env = std::getenv("PFWB_DATA_DIR")) {
        if (ok(env)) return env;
        throw std::runtime_error(std::string("PFWB_DATA_DIR not a directory: ") + env);
    }
    for (const char* cand : {"data", "../data", "../../data"})
        if (ok(cand)) return cand;
    throw std::runtime_error("cannot locate the bundled data directory (set PFWB_DATA_DIR)");
}

inline Json load_json(const std::filesystem::path& path) {
    return Json::parse(slurp_file(path));
}

inline Mat<Int> mat_from_json(const Json& rows) {
    std::vector<std::vector<Int>> data;
    for (auto& row : rows) {
        std::vector<Int> r;
        for (auto& v : row) r.emplace_back(static_cast<long>(v.get<long long>()));
        data.push_back(std::move(r));
    }
    Mat<Int> m(static_cast<int>(data.size()), data.empty() ? 0 : static_cast<int>(data[0].size()));
    for (int i = 0; i < m.rows; ++i) {
        if (static_cast<int>(data[i].size()) != m.cols) throw std::runtime_error("ragged matrix");
        for (int j = 0; j < m.cols; ++j) m(i, j) = data[i][j];
    }
    return m;
}

inline Json mat_to_json(const Mat<Int>& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows; ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols; ++j) row.push_back(m(i, j).get_si());
        rows.push_back(row);
    }
    return rows;
}

inline std::string checksum_hex(const std::string& canonical) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(canonical)));
    return buf;
}

inline Json make_report(const std::string& command, int digits, long seed) {
    Json rep;
    rep["schema"] = 1;
    rep["command"] = command;
    rep["digits"] = digits;
    rep["seed"] = seed;
    rep["pass"] = true;
    rep["failures"] = Json::array();
    rep["results"] = Json::object();
    return rep;
}

inline void report_fail(Json& rep, const std::string& what) {
    rep["pass"] = false;
    rep["failures"].push_back(what);
}

}  // namespace pfwb

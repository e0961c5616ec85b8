#pragma once

// Bundled Calabi-Yau invariant records and BPS tables (data, never
// recomputed), the Euler-characteristic helpers, and the BPS counting-rule
// identities.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pfwb/report.hpp"

namespace pfwb {

struct CYInvariants {
    std::string name;
    long h3 = 0;    // H^3
    long c2h = 0;   // c2 . H
    long h11 = 0, h21 = 0;
    long euler = 0; // value used by the checks
    std::string notes;
    std::vector<std::string> warnings;  // recorded inconsistencies, never fixed
};

struct BPSTable {
    std::string name;
    long degree = 0;
    std::map<long, Int> entries;  // genus -> n_g(degree)
    std::string checksum;

    std::string canonical_dump() const {
        std::string s = name + ";d=" + std::to_string(degree) + ";";
        for (auto& [g, n] : entries) s += std::to_string(g) + ":" + n.get_str() + ";";
        return s;
    }
};

inline long euler_from_hodge(long h11, long h21) { return 2 * (h11 - h21); }

// the counting rule: a generically smooth family of curves with moduli space
// M contributes (-1)^dim(M) e(M) per multiplicity unit
inline Int bps_contribution(long dim_moduli, long euler_moduli, long multiplicity) {
    Int sign = (dim_moduli % 2 == 0) ? 1 : -1;
    return sign * Int(euler_moduli) * Int(multiplicity);
}

inline std::vector<CYInvariants> load_invariants(const std::filesystem::path& data_dir) {
    Json j = load_json(data_dir / "invariants.json");
    std::vector<CYInvariants> out;
    for (auto& rec : j.at("records")) {
        CYInvariants inv;
        inv.name = rec.at("name").get<std::string>();
        inv.h3 = rec.at("H3").get<long>();
        inv.c2h = rec.at("c2H").get<long>();
        inv.h11 = rec.at("h11").get<long>();
        inv.h21 = rec.at("h21").get<long>();
        inv.euler = rec.at("euler").get<long>();
        inv.notes = rec.value("notes", "");
        // hodge consistency: euler = 2(h11 - h21) when the printed hodge
        // numbers are trusted; a mismatch is recorded, never silently fixed
        long from_hodge = euler_from_hodge(inv.h11, inv.h21);
        if (from_hodge != inv.euler)
            inv.warnings.push_back("euler " + std::to_string(inv.euler) +
                                   " != 2(h11-h21) = " + std::to_string(from_hodge) +
                                   " from the printed hodge numbers");
        out.push_back(std::move(inv));
    }
    return out;
}

inline BPSTable load_bps_table(const std::filesystem::path& data_dir, const std::string& file) {
    Json j = load_json(data_dir / file);
    BPSTable t;
    t.name = j.at("name").get<std::string>();
    t.degree = j.at("degree").get<long>();
    for (auto& [g, n] : j.at("entries").items())
        t.entries[std::stol(g)] = Int(n.get<std::string>());
    t.checksum = j.at("checksum").get<std::string>();
    std::string expect = checksum_hex(t.canonical_dump());
    if (t.checksum != expect)
        throw std::runtime_error("bps table " + t.name + ": checksum mismatch (file " + t.checksum +
                                 ", content " + expect + ")");
    return t;
}

}  // namespace pfwb

#pragma once

// Integer recognition of continued matrices, exact form-preservation and
// relation checks, and diffs against the bundled reference tables.

#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pfwb/matrix.hpp"
#include "pfwb/numeric.hpp"
#include "pfwb/report.hpp"

namespace pfwb {

struct RecognizedMatrix {
    Mat<Int> entries;
    double max_residual = 0;
    std::string source;
};

struct RecognitionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Round every entry to the nearest integer; residual is the largest distance
// to the lattice, imaginary parts included.
inline RecognizedMatrix recognize_integral(const CMat& m, double tol,
                                           const std::string& source = "") {
    if (tol >= 1e-10) throw std::invalid_argument("recognition tolerance must be < 1e-10");
    RecognizedMatrix out;
    out.source = source;
    out.entries = Mat<Int>(m.rows, m.cols);
    std::ostringstream offenders;
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) {
            Int n = m(i, j).re.round_to_int();
            double res = abs(m(i, j) - PrecComplex{PrecFloat::from_int(n, m(i, j).precision()),
                                                   PrecFloat(0)})
                             .to_double();
            out.entries(i, j) = n;
            out.max_residual = std::max(out.max_residual, res);
            if (res >= tol) offenders << " (" << i << "," << j << ")=" << m(i, j).str(25);
        }
    if (out.max_residual >= tol)
        throw RecognitionError("non-integral matrix" +
                               (source.empty() ? "" : " [" + source + "]") + ":" + offenders.str());
    return out;
}

// true iff  M^T G M = G  exactly
inline bool verify_form(const Mat<Int>& m, const Mat<Int>& g) {
    if (m.rows != g.rows || !m.is_square() || !g.is_square())
        throw std::invalid_argument("verify_form: shape mismatch");
    return m.transpose() * g * m == g;
}

inline Mat<Int> integer_inverse(const Mat<Int>& m) {
    auto res = eliminate(mat_int_to_rational(m));
    if (!res.invertible) throw std::domain_error("integer_inverse: singular");
    Mat<Int> out(m.rows, m.cols);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) {
            if (!is_integer(res.inverse(i, j)))
                throw std::domain_error("integer_inverse: inverse is not integral");
            out(i, j) = res.inverse(i, j).get_num();
        }
    return out;
}

struct RelationResult {
    std::string relation;
    bool holds = false;
    std::string detail;
};

struct ReferenceTable {
    std::string id;
    int rank = 0;
    std::string pairing_name;
    std::string pairing_kind;
    Mat<Int> pairing;
    std::map<std::string, Mat<Int>> matrices;
    std::vector<std::string> form_preserving;
    std::vector<std::string> relations;
    std::vector<std::string> loop_order;
    std::string checksum;

    std::string canonical_dump() const {
        std::string s = id + ";";
        for (auto& [name, m] : matrices) s += name + ":" + mat_str(m) + ";";
        s += pairing_name + ":" + mat_str(pairing) + ";";
        return s;
    }
};

// product expressions like "Ma2*M0*Ma1*Ma3*Minf=I"
inline RelationResult check_relation(const std::map<std::string, Mat<Int>>& mats,
                                     const std::string& relation) {
    auto eval_side = [&](const std::string& side) -> Mat<Int> {
        std::optional<Mat<Int>> acc;
        std::string token;
        std::istringstream in(side);
        while (std::getline(in, token, '*')) {
            Mat<Int> factor;
            if (token == "I") {
                int n = acc ? acc->rows : (mats.empty() ? 0 : mats.begin()->second.rows);
                factor = Mat<Int>::identity(n);
            } else {
                auto it = mats.find(token);
                if (it == mats.end()) throw std::invalid_argument("unknown matrix name: " + token);
                factor = it->second;
            }
            acc = acc ? (*acc) * factor : factor;
        }
        if (!acc) throw std::invalid_argument("empty relation side");
        return *acc;
    };
    auto eq = relation.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("relation needs '=': " + relation);
    RelationResult res;
    res.relation = relation;
    Mat<Int> lhs = eval_side(relation.substr(0, eq));
    Mat<Int> rhs = eval_side(relation.substr(eq + 1));
    res.holds = lhs == rhs;
    if (!res.holds) res.detail = "lhs=" + mat_str(lhs) + " rhs=" + mat_str(rhs);
    return res;
}

inline std::vector<RelationResult> verify_relations(const std::map<std::string, Mat<Int>>& mats,
                                                    const std::vector<std::string>& relations) {
    std::vector<RelationResult> out;
    for (auto& rel : relations) out.push_back(check_relation(mats, rel));
    return out;
}

// Load a bundled table and validate it: checksum, declared relations, and
// form preservation must all hold before the table may serve as ground truth.
inline ReferenceTable load_reference_table(const std::filesystem::path& data_dir,
                                           const std::string& table_id) {
    auto path = data_dir / "tables" / (table_id + ".json");
    if (!std::filesystem::exists(path)) throw std::invalid_argument("unknown table id: " + table_id);
    Json j = load_json(path);
    ReferenceTable t;
    t.id = j.at("id").get<std::string>();
    t.rank = j.at("rank").get<int>();
    t.pairing_name = j.at("pairing_name").get<std::string>();
    t.pairing_kind = j.at("pairing_kind").get<std::string>();
    t.pairing = mat_from_json(j.at("pairing"));
    for (auto& [name, rows] : j.at("matrices").items()) t.matrices[name] = mat_from_json(rows);
    for (auto& v : j.at("form_preserving")) t.form_preserving.push_back(v.get<std::string>());
    for (auto& v : j.at("relations")) t.relations.push_back(v.get<std::string>());
    for (auto& v : j.at("loop_order")) t.loop_order.push_back(v.get<std::string>());
    t.checksum = j.at("checksum").get<std::string>();

    std::string expect = checksum_hex(t.canonical_dump());
    if (t.checksum != expect)
        throw std::runtime_error("table " + t.id + ": checksum mismatch (file " + t.checksum +
                                 ", content " + expect + ")");
    for (auto& name : t.form_preserving)
        if (!verify_form(t.matrices.at(name), t.pairing))
            throw std::runtime_error("table " + t.id + ": " + name + " does not preserve " +
                                     t.pairing_name);
    for (auto& rel : t.relations) {
        auto res = check_relation(t.matrices, rel);
        if (!res.holds)
            throw std::runtime_error("table " + t.id + ": stored relation fails: " + rel);
    }
    for (auto& [name, m] : t.matrices) {
        Rational d = mat_det(mat_int_to_rational(m));
        if (!(d == Rational(1) || d == Rational(-1)))
            throw std::runtime_error("table " + t.id + ": " + name + " is not unimodular");
    }
    return t;
}

struct DiffRecord {
    std::string matrix;
    int row = 0, col = 0;
    Int computed, reference;
};

inline std::vector<DiffRecord> compare_reference(
    const std::map<std::string, RecognizedMatrix>& computed, const ReferenceTable& table) {
    std::vector<DiffRecord> diffs;
    for (auto& [name, rec] : computed) {
        auto it = table.matrices.find(name);
        if (it == table.matrices.end()) {
            diffs.push_back({name + " (not in table)", -1, -1, Int(0), Int(0)});
            continue;
        }
        const Mat<Int>& ref = it->second;
        if (ref.rows != rec.entries.rows || ref.cols != rec.entries.cols) {
            diffs.push_back({name + " (shape)", -1, -1, Int(0), Int(0)});
            continue;
        }
        for (int i = 0; i < ref.rows; ++i)
            for (int j = 0; j < ref.cols; ++j)
                if (ref(i, j) != rec.entries(i, j))
                    diffs.push_back({name, i, j, rec.entries(i, j), ref(i, j)});
    }
    return diffs;
}

}  // namespace pfwb

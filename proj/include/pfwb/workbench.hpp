#pragma once

// Orchestration: load an operator bundle, validate its Riemann scheme,
// compute loop monodromies and the 0 <-> infinity connection in the integral
// frames, recognize integers, and diff against the bundled reference table.

#include <chrono>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pfwb/continuation.hpp"
#include "pfwb/frobenius.hpp"
#include "pfwb/monodromy_report.hpp"
#include "pfwb/period_basis.hpp"
#include "pfwb/report.hpp"
#include "pfwb/singularities.hpp"
#include "pfwb/theta_operator.hpp"

namespace pfwb {

struct OperatorBundle {
    ThetaOperator op;    // x chart
    ThetaOperator zop;   // z = 1/x chart
    IntegralFrame frame_x, frame_z;
    std::string table_id;                 // empty when no reference table applies
    std::vector<Rational> apparent;       // declared apparent singular points
    std::vector<SingularityRecord> scheme;

    double min_nonzero_singularity_x = 0;
    double min_nonzero_singularity_z = 0;
    std::vector<complexd> singular_x;  // finite singular points, x chart (incl 0)
    std::vector<complexd> singular_z;  // finite singular points, z chart (incl 0)
};

inline double dyadic_below(double x) { return std::pow(2.0, std::floor(std::log2(x))); }

inline OperatorBundle load_operator_bundle(const std::filesystem::path& op_path) {
    OperatorBundle b;
    b.op = parse_operator_file(slurp_file(op_path));
    b.zop = infinity_chart(b.op);
    auto& meta = b.op.metadata;
    std::string frame = meta.count("frame") ? meta.at("frame") : "";
    if (frame == "k3") {
        long deg = std::stol(meta.at("deg"));
        b.frame_x = build_k3_frame(deg);
        b.frame_z = build_k3_frame(deg);
    } else if (frame == "cy3") {
        b.frame_x = build_cy3_frame(std::stol(meta.at("kappa_x")), std::stol(meta.at("c2h_x")),
                                    std::stol(meta.at("euler_x")));
        b.frame_z = build_cy3_frame(std::stol(meta.at("kappa_z")), std::stol(meta.at("c2h_z")),
                                    std::stol(meta.at("euler_z")));
    } else {
        throw std::runtime_error("operator file must declare frame=k3 or frame=cy3");
    }
    if (meta.count("table")) b.table_id = meta.at("table");
    if (meta.count("apparent")) b.apparent.push_back(rational_from_string(meta.at("apparent")));

    b.scheme = singular_data(b.op);
    for (auto& rec : b.scheme) {
        if (rec.at_infinity || rec.kind == SingKind::Ordinary) continue;
        double pos = rec.approx();
        b.singular_x.emplace_back(pos, 0.0);
        if (pos != 0.0) b.singular_z.emplace_back(1.0 / pos, 0.0);
    }
    b.singular_z.emplace_back(0.0, 0.0);
    double mn = 1e300, mz = 1e300;
    for (auto& s : b.singular_x)
        if (std::abs(s) > 1e-14) mn = std::min(mn, std::abs(s));
    for (auto& s : b.singular_z)
        if (std::abs(s) > 1e-14) mz = std::min(mz, std::abs(s));
    b.min_nonzero_singularity_x = mn;
    b.min_nonzero_singularity_z = mz;
    return b;
}

// Scheme validation before any continuation: the declared apparent points
// must be singular with the apparent exponent pattern; every non-apparent
// finite singularity must be real so the real-ordering labels apply.  On
// failure the caller gets the full symbol-root diagnostic.
inline void validate_scheme(const OperatorBundle& b, int expected_loops) {
    std::string diag = "theta-symbol diagnostic:\n";
    for (auto& rec : b.scheme) {
        diag += "  " + rec.location_str() + " multiplicity " + std::to_string(rec.multiplicity) +
                " exponents [";
        for (auto& e : rec.exponents) diag += to_string(e) + " ";
        diag += "] kind ";
        diag += rec.kind == SingKind::MUM ? "MUM"
                : rec.kind == SingKind::Apparent ? "apparent"
                : rec.kind == SingKind::Ordinary ? "ordinary" : "regular-singular";
        diag += rec.exponents_complete ? "" : " (incomplete)";
        diag += "\n";
    }
    int loops = 0;
    bool apparent_ok = true;
    for (auto& rec : b.scheme) {
        if (rec.at_infinity || rec.kind == SingKind::Ordinary) continue;
        bool declared_apparent = false;
        for (auto& ap : b.apparent)
            if (std::holds_alternative<Rational>(rec.location) &&
                std::get<Rational>(rec.location) == ap)
                declared_apparent = true;
        if (declared_apparent) {
            if (rec.kind != SingKind::Apparent) apparent_ok = false;
            continue;
        }
        if (!rec.exponents_complete)
            throw std::runtime_error("unresolved exponents at a singular point\n" + diag);
        ++loops;
    }
    if (!apparent_ok)
        throw std::runtime_error("declared apparent point lacks the apparent exponent pattern\n" +
                                 diag);
    if (loops != expected_loops)
        throw std::runtime_error("operator has " + std::to_string(loops) +
                                 " labeled singular points, reference table expects " +
                                 std::to_string(expected_loops) + "\n" + diag);
    // origin and infinity must be MUM for the integral frames to exist
    for (auto& rec : b.scheme) {
        bool origin = !rec.at_infinity && std::holds_alternative<Rational>(rec.location) &&
                      std::get<Rational>(rec.location) == 0;
        if ((origin || rec.at_infinity) && rec.kind != SingKind::MUM)
            throw std::runtime_error("chart origin is not a MUM point\n" + diag);
    }
}

struct LoopComputation {
    std::string label;          // table name, or "apparent@<x>" for silent loops
    complexd target;
    CMat frame_matrix;          // integral-frame matrix before recognition
    double error_estimate = 0;
};

struct MonodromyRun {
    std::map<std::string, RecognizedMatrix> recognized;  // labeled loops + Minf
    std::vector<LoopComputation> loops;
    double max_residual = 0;
    double apparent_loop_residual = 0;  // distance of apparent loops from identity
    std::vector<std::string> loop_labels_in_order;
    double seconds = 0;
};

// label the non-apparent finite singular points by ascending real position
// with the table's loop order (minus the infinity entry)
inline std::vector<std::pair<complexd, std::string>> assign_loop_labels(
    const OperatorBundle& b, const std::vector<std::string>& loop_order) {
    std::vector<complexd> targets;
    for (auto& rec : b.scheme) {
        if (rec.at_infinity || rec.kind == SingKind::Ordinary) continue;
        bool declared_apparent = false;
        for (auto& ap : b.apparent)
            if (std::holds_alternative<Rational>(rec.location) &&
                std::get<Rational>(rec.location) == ap)
                declared_apparent = true;
        if (!declared_apparent) targets.emplace_back(rec.approx(), 0.0);
    }
    std::sort(targets.begin(), targets.end(),
              [](const complexd& a, const complexd& z) { return a.real() < z.real(); });
    std::vector<std::string> labels(loop_order.begin(), loop_order.end() - 1);  // drop Minf
    if (labels.size() != targets.size())
        throw std::runtime_error("loop label count mismatch");
    std::vector<std::pair<complexd, std::string>> out;
    for (size_t i = 0; i < targets.size(); ++i) out.emplace_back(targets[i], labels[i]);
    return out;
}

inline double identity_distance(const CMat& m) {
    double worst = 0;
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) {
            PrecComplex want = i == j ? PrecComplex::one(64) : PrecComplex::zero(64);
            worst = std::max(worst, abs(m(i, j) - want).to_double());
        }
    return worst;
}

inline MonodromyRun run_monodromy(const OperatorBundle& b, const ReferenceTable& table,
                                  int digits) {
    auto t0 = std::chrono::steady_clock::now();
    MonodromyRun run;
    mpfr_prec_t prec = bits_for_digits(digits);
    double tol = std::pow(10.0, -std::max(25.0, digits / 4.0));

    double base = dyadic_below(b.min_nonzero_singularity_x / 4.0);
    FrobeniusBasis basis = frobenius_for_radius(b.op, "x", base, b.min_nonzero_singularity_x, digits);
    Continuator cont(b.op, b.singular_x, digits);

    CMat tx = b.frame_x.ansatz(prec);
    CMat tx_inv = cmat_inverse(tx);

    auto labeled = assign_loop_labels(b, table.loop_order);
    for (auto& [target, label] : labeled) {
        double err = 0;
        CMat a = loop_monodromy_w(cont, basis, base, target, digits, +1, &err);
        CMat m = cmat_mul(cmat_mul(tx, a), tx_inv);
        LoopComputation lc{label, target, m, err};
        run.loops.push_back(lc);
        run.recognized[label] = recognize_integral(m, tol, label);
        run.max_residual = std::max(run.max_residual, run.recognized[label].max_residual);
        run.loop_labels_in_order.push_back(label);
    }
    // apparent points: loops must be the identity
    for (auto& ap : b.apparent) {
        double err = 0;
        complexd target(ap.get_d(), 0.0);
        CMat a = loop_monodromy_w(cont, basis, base, target, digits, +1, &err);
        CMat m = cmat_mul(cmat_mul(tx, a), tx_inv);
        run.apparent_loop_residual = std::max(run.apparent_loop_residual, identity_distance(m));
        run.loops.push_back({"apparent@" + to_string(ap), target, m, err});
    }
    // infinity: composite inverse of the finite loops in base-point order
    {
        Mat<Int> prod = Mat<Int>::identity(b.frame_x.rank);
        for (auto& label : run.loop_labels_in_order) prod = prod * run.recognized[label].entries;
        RecognizedMatrix minf;
        minf.entries = integer_inverse(prod);
        minf.max_residual = 0;
        minf.source = "composite inverse of finite loops";
        run.recognized[table.loop_order.back()] = minf;
    }
    run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return run;
}

struct ConnectionRun {
    RecognizedMatrix uxz, uxz_inv;
    std::map<std::string, Mat<Int>> conjugated;  // Mt<c> = Uxz^-1 M_c Uxz
    double max_residual = 0;
    // direct z-chart cross-check of the infinity monodromy
    bool zchart_check_done = false;
    bool zchart_check_ok = false;
    double seconds = 0;
};

inline ConnectionRun run_connection(const OperatorBundle& b, const ReferenceTable& table,
                                    const MonodromyRun& mono, int digits) {
    auto t0 = std::chrono::steady_clock::now();
    ConnectionRun run;
    mpfr_prec_t prec = bits_for_digits(digits);
    double tol = std::pow(10.0, -std::max(25.0, digits / 4.0));

    double base_x = dyadic_below(b.min_nonzero_singularity_x / 4.0);
    double base_z = dyadic_below(b.min_nonzero_singularity_z / 4.0);
    FrobeniusBasis basis_x =
        frobenius_for_radius(b.op, "x", base_x, b.min_nonzero_singularity_x, digits);
    FrobeniusBasis basis_z =
        frobenius_for_radius(b.zop, "z", base_z, b.min_nonzero_singularity_z, digits);
    Continuator cont(b.op, b.singular_x, digits);

    CMat tx = b.frame_x.ansatz(prec);
    CMat tz = b.frame_z.ansatz(prec);
    double err = 0;
    CMat c = connect_frames_w(cont, basis_x, basis_z, base_x, base_z, digits, &err);
    CMat u = cmat_mul(cmat_mul(tx, c), cmat_inverse(tz));
    run.uxz = recognize_integral(u, tol, "Uxz");
    run.max_residual = run.uxz.max_residual;
    run.uxz_inv.entries = integer_inverse(run.uxz.entries);
    run.uxz_inv.source = "exact inverse of recognized Uxz";

    for (auto& [label, rec] : mono.recognized)
        run.conjugated["Mt" + label.substr(1)] =
            run.uxz_inv.entries * rec.entries * run.uxz.entries;

    // direct z-chart loop around z = 0 as a cross-check of the conjugated
    // infinity monodromy (z = 1/x maps the x-loop around infinity to a
    // counterclockwise z-loop around the origin)
    {
        Continuator zcont(b.zop, b.singular_z, digits);
        double zerr = 0;
        CMat a = loop_monodromy_w(zcont, basis_z, base_z, complexd(0.0, 0.0), digits, +1, &zerr);
        CMat m = cmat_mul(cmat_mul(tz, a), cmat_inverse(tz));
        RecognizedMatrix rec = recognize_integral(m, tol, "zchart-inf");
        run.zchart_check_done = true;
        run.zchart_check_ok = rec.entries == run.conjugated.at("Mtinf");
    }
    run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return run;
}

}  // namespace pfwb

#pragma once

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <random>

#include <json.hpp>

#include "cloneforge/cloner.hpp"
#include "cloneforge/covariance.hpp"
#include "cloneforge/optimize.hpp"

/** @file
 * Deterministic report plumbing: JSON documents with a check list, CSV
 * emission, float canonicalization and the seeded generator. Identical
 * invocations must produce byte-identical output, so every float is
 * rounded to 15 significant digits before serialization and containers
 * keep insertion order.
 */

namespace cloneforge {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1.0.0";
inline constexpr const char* kRngName = "mt19937_64";
inline constexpr std::uint64_t kDefaultSeed = 0x9e3779b97f4a7c15ULL;

/// Rounds to 15 significant digits so dumps are stable and round-trip.
inline double canonical_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return std::strtod(buf, nullptr);
}

inline json jnum(double x) { return json(canonical_double(x)); }

inline json jvec(const std::vector<double>& v) {
    json a = json::array();
    for (double x : v) a.push_back(jnum(x));
    return a;
}

/// Complex entries as [re, im] pairs.
inline json jmatrix(const AmplitudeMatrix& m) {
    json rows = json::array();
    for (int r = 0; r < m.dim; ++r) {
        json row = json::array();
        for (int c = 0; c < m.dim; ++c)
            row.push_back(json::array({jnum(m.at(r, c).real()), jnum(m.at(r, c).imag())}));
        rows.push_back(row);
    }
    return rows;
}

inline json jket(const Ket& v) {
    json a = json::array();
    for (camp z : v.amps) a.push_back(json::array({jnum(z.real()), jnum(z.imag())}));
    return a;
}

/** One verification entry of a report: a named residual and its verdict. */
struct Check {
    std::string name;
    bool pass = false;
    double residual = 0;
};

inline json jchecks(const std::vector<Check>& checks) {
    json a = json::array();
    for (const Check& c : checks)
        a.push_back(json{{"name", c.name}, {"pass", c.pass}, {"residual", jnum(c.residual)}});
    return a;
}

inline bool all_pass(const std::vector<Check>& checks) {
    for (const Check& c : checks)
        if (!c.pass) return false;
    return true;
}

/** Seed resolution order: explicit value, CLONEFORGE_SEED, default. */
inline std::uint64_t resolve_seed(const std::optional<std::uint64_t>& explicit_seed) {
    if (explicit_seed) return *explicit_seed;
    if (const char* env = std::getenv("CLONEFORGE_SEED")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0') return static_cast<std::uint64_t>(v);
    }
    return kDefaultSeed;
}

/// Standard complex Gaussian samples, normalized to a unit Frobenius norm.
inline AmplitudeMatrix random_amplitudes(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    AmplitudeMatrix a(dim);
    for (camp& z : a.a) z = camp(gauss(rng), gauss(rng));
    return normalized(a);
}

inline Ket random_ket(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Ket v(dim);
    for (camp& z : v.amps) z = camp(gauss(rng), gauss(rng));
    return normalized(v);
}

/** The common envelope of every emitted document. */
inline json report_document(const std::string& command, json inputs, json outputs,
                            const std::vector<Check>& checks, std::uint64_t seed) {
    inputs["seed"] = seed;
    return json{{"schema_version", kSchemaVersion}, {"command", command},
                {"rng", kRngName},                  {"inputs", std::move(inputs)},
                {"outputs", std::move(outputs)},    {"checks", jchecks(checks)}};
}

inline json pattern_json(const AmplitudePattern& p) {
    json classes = json::array();
    for (const auto& cls : p.classes) {
        json members = json::array();
        for (const auto& e : cls) members.push_back(json::array({e[0], e[1]}));
        classes.push_back(members);
    }
    json labels = json::array();
    for (const auto& l : p.labels) labels.push_back(l);
    return json{{"dim", p.dim}, {"classes", classes}, {"labels", labels}};
}

inline json clone_report_json(const CloneReportData& r, const AmplitudeMatrix& a,
                              const AmplitudeMatrix& b) {
    json doc{{"F_A", jnum(r.f_a)}, {"F_B", jnum(r.f_b)}, {"D_A", jvec(r.d_a)},
             {"D_B", jvec(r.d_b)}, {"H_p", jnum(r.h_p)}, {"H_q", jnum(r.h_q)}};
    doc["I_AB"] = r.i_ab ? jnum(*r.i_ab) : json(nullptr);
    doc["I_AE"] = r.i_ae ? jnum(*r.i_ae) : json(nullptr);
    doc["secure"] = r.secure ? json(*r.secure) : json(nullptr);
    doc["a_matrix"] = jmatrix(a);
    doc["b_matrix"] = jmatrix(b);
    return doc;
}

/// Number formatting shared by JSON and CSV output.
inline std::string format_number(double x) { return json(canonical_double(x)).dump(); }

/** Curve CSV: header F_A,F_B,<label...>, '.' decimals, LF endings. */
inline std::string curve_csv(const TradeoffCurve& curve) {
    std::string out = "F_A,F_B";
    for (const auto& l : curve.pattern.labels) out += "," + l;
    out += "\n";
    for (const CurvePoint& pt : curve.points) {
        out += format_number(pt.f_a) + "," + format_number(pt.f_b);
        for (double p : pt.params) out += "," + format_number(p);
        out += "\n";
    }
    return out;
}

} // namespace cloneforge

// Command-line workbench for state-dependent quartit cloning machines:
// Bell families, covariance patterns, fidelity trade-offs and security
// verdicts, emitted as reproducible JSON reports and CSV curves.
//
// Exit codes: 0 success, 1 verification failure, 2 argument error,
// 3 infeasible computation.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "cloneforge/report.hpp"
#include "cloneforge/verify.hpp"

namespace cf = cloneforge;

namespace {

struct GlobalOpts {
    std::optional<std::uint64_t> seed;
    std::string out;
    bool as_json = false;
    bool as_csv = false;
};

void emit(const std::string& payload, const GlobalOpts& g) {
    if (!g.out.empty()) {
        std::ofstream f(g.out, std::ios::binary);
        if (!f) throw std::invalid_argument("cannot open output path: " + g.out);
        f << payload;
        return;
    }
    std::cout << payload;
}

void emit_json(const cf::json& doc, const GlobalOpts& g) { emit(doc.dump(2) + "\n", g); }

struct PairSetup {
    std::string pair;
    std::string bell;
    cf::BellRule rule = cf::BellRule::fourier;
    cf::OrthonormalBasis basis2;
    cf::AmplitudePattern full_pattern;
    cf::AmplitudePattern reduced_pattern;
};

/** Resolves a (pair, bell) combination into its basis, rule and patterns.
 *  The reduced pattern is the documented search space: the x/y/z form for
 *  the Fourier pair and for the Klein-family Hadamard pair, the isotropic
 *  a/b/c form for the Hadamard pair under the Fourier family. */
PairSetup resolve_pair(const std::string& pair, const std::string& bell) {
    PairSetup s;
    s.pair = pair;
    s.bell = bell;
    cf::OrthonormalBasis comp = cf::computational_basis(4);
    if (bell == "fourier") s.rule = cf::BellRule::fourier;
    else if (bell == "hadamard") s.rule = cf::BellRule::hadamard;
    else throw std::invalid_argument("unknown bell family: " + bell);

    if (pair == "comp-fourier") {
        if (s.rule != cf::BellRule::fourier)
            throw std::invalid_argument("comp-fourier supports only the fourier bell family");
        s.basis2 = cf::fourier_basis(4);
        s.full_pattern = cf::covariant_pattern(comp, s.basis2, s.rule);
        s.reduced_pattern = cf::reduce_to_xyz(s.full_pattern);
        return s;
    }
    if (pair == "comp-hadamard") {
        s.basis2 = cf::hadamard_basis();
        s.full_pattern = cf::covariant_pattern(comp, s.basis2, s.rule);
        if (s.rule == cf::BellRule::hadamard) {
            s.reduced_pattern = cf::reduce_to_xyz(s.full_pattern);
        } else {
            // isotropic substitution: tie the two interior classes to c
            s.reduced_pattern =
                cf::merge_pattern_classes(s.full_pattern, {{{0, 2}, {1, 1}, {2, 2}}});
        }
        return s;
    }
    throw std::invalid_argument("unknown basis pair: " + pair);
}

std::vector<cf::Check> report_checks(const cf::CloneReportData& r, const cf::AmplitudeMatrix& a,
                                     cf::BellRule rule) {
    std::vector<cf::Check> checks;
    double sum_a = r.f_a, sum_b = r.f_b;
    for (double d : r.d_a) sum_a += d;
    for (double d : r.d_b) sum_b += d;
    checks.push_back({"clone_a_probabilities_sum", std::abs(sum_a - 1.0) < 1e-9,
                      std::abs(sum_a - 1.0)});
    checks.push_back({"clone_b_probabilities_sum", std::abs(sum_b - 1.0) < 1e-9,
                      std::abs(sum_b - 1.0)});
    double ent = 2.0 * std::log2(static_cast<double>(a.dim)) - (r.h_p + r.h_q);
    checks.push_back({"entropic_no_cloning_bound", ent < 1e-9, std::max(0.0, ent)});
    cf::AmplitudeMatrix twice = cf::dual_amplitudes(cf::dual_amplitudes(a, rule), rule);
    double invol = 0;
    for (std::size_t i = 0; i < a.a.size(); ++i)
        invol = std::max(invol, std::abs(twice.a[i] - a.a[i]));
    checks.push_back({"duality_involution", invol < cf::kTol, invol});
    return checks;
}

int cmd_bell(const std::string& family, int dim, int m, int n, const GlobalOpts& g) {
    cf::Ket state;
    if (family == "fourier") {
        state = cf::fourier_bell(dim, m, n);
    } else if (family == "hadamard") {
        if (dim != 4) throw std::invalid_argument("hadamard bell states require --dim 4");
        state = cf::hadamard_bell(m, n);
    } else {
        throw std::invalid_argument("unknown family: " + family);
    }
    cf::Op rho = cf::density(state);
    cf::Op eye_over_n = cf::op_scale(cf::op_identity(dim), cf::camp(1.0 / dim, 0));
    double ent = std::max(
        cf::max_abs_diff(cf::partial_trace(rho, cf::Subsystem::A, dim, dim), eye_over_n),
        cf::max_abs_diff(cf::partial_trace(rho, cf::Subsystem::B, dim, dim), eye_over_n));
    std::vector<cf::Check> checks = {
        {"normalized", std::abs(cf::norm(state) - 1.0) < cf::kTol,
         std::abs(cf::norm(state) - 1.0)},
        {"maximally_entangled", ent < cf::kTol, ent}};

    cf::json outputs{{"amplitudes", cf::jket(state)}};
    if (family == "hadamard") {
        auto sig = cf::hadamard_parity_signature(m, n);
        outputs["parity_signature"] = cf::json::array({sig[0], sig[1], sig[2], sig[3]});
    }
    cf::json doc = cf::report_document(
        "bell", cf::json{{"family", family}, {"dim", dim}, {"m", m}, {"n", n}}, outputs, checks,
        cf::resolve_seed(g.seed));
    emit_json(doc, g);
    return cf::all_pass(checks) ? 0 : 1;
}

int cmd_covariance(const std::string& pair, const std::string& bell, const GlobalOpts& g) {
    PairSetup s = resolve_pair(pair, bell);
    cf::BellFamily f1 = cf::family_over(s.rule, cf::computational_basis(4));
    cf::BellFamily f2 = cf::family_over(s.rule, s.basis2);
    cf::OverlapMatrix v = cf::overlap_matrix(f1, f2);
    double unit = cf::max_abs_diff(cf::op_mul(cf::adjoint(v.v), v.v), cf::op_identity(16));
    std::vector<cf::Check> checks = {{"overlap_matrix_unitary", unit < cf::kTol, unit}};

    cf::json outputs{{"pattern", cf::pattern_json(s.full_pattern)},
                     {"free_parameters", s.full_pattern.classes.size()},
                     {"reduced_pattern", cf::pattern_json(s.reduced_pattern)}};
    cf::json doc = cf::report_document("covariance", cf::json{{"pair", pair}, {"bell", bell}},
                                       outputs, checks, cf::resolve_seed(g.seed));
    emit_json(doc, g);
    return cf::all_pass(checks) ? 0 : 1;
}

int cmd_tradeoff(const std::string& pair, const std::string& bell, int grid,
                 const GlobalOpts& g) {
    if (grid < 10) throw std::invalid_argument("--grid must be at least 10");
    PairSetup s = resolve_pair(pair, bell);
    cf::TradeoffCurve curve = cf::tradeoff_curve(s.reduced_pattern, s.rule, true, grid);
    cf::OptimalCloner sym = cf::symmetric_optimum(s.reduced_pattern, s.rule, true);

    std::vector<cf::Check> checks;
    double mono = 0;
    for (std::size_t i = 1; i < curve.points.size(); ++i)
        mono = std::max(mono, curve.points[i].f_b - curve.points[i - 1].f_b);
    checks.push_back({"curve_monotone_nonincreasing", mono < 1e-9, std::max(0.0, mono)});
    double worst_norm = 0;
    for (const cf::CurvePoint& pt : curve.points) {
        double total = pt.f_a;
        cf::AmplitudeMatrix a = cf::pattern_matrix(s.reduced_pattern, pt.params);
        auto [f, d] = cf::fidelity_and_disturbances(a);
        (void)f;
        for (double x : d) total += x;
        worst_norm = std::max(worst_norm, std::abs(total - 1.0));
    }
    checks.push_back({"curve_normalization", worst_norm < 1e-9, worst_norm});
    double gap = std::abs(sym.report.f_a - sym.report.f_b);
    checks.push_back({"symmetric_point_gap", gap < 1e-6, gap});

    cf::json outputs{{"pattern", cf::pattern_json(s.reduced_pattern)},
                     {"symmetric_point",
                      cf::json{{"F_A", cf::jnum(sym.report.f_a)},
                               {"F_B", cf::jnum(sym.report.f_b)},
                               {"params", cf::jvec(sym.params)}}}};
    try {
        cf::OptimalCloner fix = cf::elementwise_fixed_point(s.reduced_pattern, s.rule);
        outputs["elementwise_fixed_point"] =
            cf::json{{"F", cf::jnum(fix.report.f_a)}, {"params", cf::jvec(fix.params)}};
    } catch (const std::runtime_error&) {
        outputs["elementwise_fixed_point"] = nullptr; // not unique inside this pattern
    }

    std::string csv = cf::curve_csv(curve);
    if (g.as_csv) {
        emit(csv, g);
        return cf::all_pass(checks) ? 0 : 1;
    }
    if (!g.out.empty()) {
        std::ofstream f(g.out, std::ios::binary);
        if (!f) throw std::invalid_argument("cannot open output path: " + g.out);
        f << csv;
        outputs["csv_path"] = g.out;
    }
    cf::json doc = cf::report_document(
        "tradeoff", cf::json{{"pair", pair}, {"bell", bell}, {"grid", grid}}, outputs, checks,
        cf::resolve_seed(g.seed));
    std::cout << doc.dump(2) << "\n";
    return cf::all_pass(checks) ? 0 : 1;
}

int cmd_clone_report(const std::string& pair, const std::string& bell,
                     std::vector<double> params, const GlobalOpts& g) {
    PairSetup s = resolve_pair(pair, bell);
    if (params.size() != s.reduced_pattern.classes.size())
        throw std::invalid_argument("expected " +
                                    std::to_string(s.reduced_pattern.classes.size()) +
                                    " parameters for this pattern");
    for (double p : params)
        if (p < 0) throw std::invalid_argument("parameters must be non-negative");
    cf::AmplitudeMatrix a = cf::normalized(cf::pattern_matrix(s.reduced_pattern, params));
    std::vector<double> norm_params(params.size());
    for (std::size_t k = 0; k < params.size(); ++k)
        norm_params[k] = a.at(s.reduced_pattern.classes[k][0][0],
                              s.reduced_pattern.classes[k][0][1]).real();
    cf::CloneReportData r = cf::make_clone_report(a, s.rule);
    std::vector<cf::Check> checks = report_checks(r, a, s.rule);
    cf::json outputs = cf::clone_report_json(r, a, cf::dual_amplitudes(a, s.rule));
    outputs["pattern"] = cf::pattern_json(s.reduced_pattern);
    cf::json doc = cf::report_document(
        "clone-report",
        cf::json{{"pair", pair}, {"bell", bell}, {"params", cf::jvec(norm_params)}}, outputs,
        checks, cf::resolve_seed(g.seed));
    emit_json(doc, g);
    return cf::all_pass(checks) ? 0 : 1;
}

int cmd_universal(int dim, const GlobalOpts& g) {
    cf::OptimalCloner u = cf::universal_cloner(dim);
    std::vector<cf::Check> checks = report_checks(u.report, u.a, cf::BellRule::fourier);
    double self_dual = 0;
    for (std::size_t i = 0; i < u.a.a.size(); ++i)
        self_dual = std::max(self_dual, std::abs(u.a.a[i] - u.b.a[i]));
    checks.push_back({"self_dual", self_dual < cf::kTol, self_dual});
    double formula = std::abs(u.report.f_a - cf::universal_fidelity_formula(dim));
    checks.push_back({"fidelity_formula", formula < 1e-9, formula});
    cf::json outputs = cf::clone_report_json(u.report, u.a, u.b);
    outputs["fidelity_formula"] = cf::jnum(cf::universal_fidelity_formula(dim));
    cf::json doc = cf::report_document("universal", cf::json{{"dim", dim}}, outputs, checks,
                                       cf::resolve_seed(g.seed));
    emit_json(doc, g);
    return cf::all_pass(checks) ? 0 : 1;
}

int cmd_verify(const std::string& suite, int trials, const GlobalOpts& g) {
    std::uint64_t seed = cf::resolve_seed(g.seed);
    std::vector<cf::Check> checks;
    if (suite == "all") checks = cf::verify::suite_all(seed, trials);
    else if (suite == "bell") checks = cf::verify::suite_bell();
    else if (suite == "duality") checks = cf::verify::suite_duality(seed);
    else if (suite == "covariance") checks = cf::verify::suite_covariance(seed);
    else if (suite == "qubit-theorem") checks = cf::verify::suite_qubit_theorem(seed, trials);
    else if (suite == "entropy") checks = cf::verify::suite_entropy(seed, trials);
    else throw std::invalid_argument("unknown suite: " + suite);

    cf::json doc = cf::report_document("verify",
                                       cf::json{{"suite", suite}, {"trials", trials}},
                                       cf::json{{"passed", cf::all_pass(checks)}}, checks, seed);
    emit_json(doc, g);
    return cf::all_pass(checks) ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cloneforge: covariant quartit cloning workbench"};
    app.require_subcommand(1);

    GlobalOpts g;
    std::uint64_t seed_value = 0;
    std::vector<CLI::Option*> seed_options;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", g.out, "write the primary payload to this path");
        seed_options.push_back(cmd->add_option(
            "--seed", seed_value, "64-bit RNG seed (default: CLONEFORGE_SEED or built-in)"));
        cmd->add_flag("--json", g.as_json, "emit JSON (default)");
        cmd->add_flag("--csv", g.as_csv, "emit CSV where applicable");
    };

    std::string family = "fourier", pair = "comp-fourier", bell = "fourier", suite = "all";
    int dim = 4, m = 0, n = 0, grid = 1000, trials = 1000;
    std::vector<double> params;

    CLI::App* c_bell = app.add_subcommand("bell", "emit one Bell state");
    c_bell->add_option("--family", family, "fourier|hadamard")->required();
    c_bell->add_option("--dim", dim, "register dimension (default 4)");
    c_bell->add_option("--m", m, "shift index")->required();
    c_bell->add_option("--n", n, "phase index")->required();
    add_common(c_bell);

    CLI::App* c_cov = app.add_subcommand("covariance", "solve the covariance constraint");
    c_cov->add_option("--pair", pair, "comp-fourier|comp-hadamard")->required();
    c_cov->add_option("--bell", bell, "fourier|hadamard")->required();
    add_common(c_cov);

    CLI::App* c_trade = app.add_subcommand("tradeoff", "fidelity trade-off curve");
    c_trade->add_option("--pair", pair, "comp-fourier|comp-hadamard")->required();
    c_trade->add_option("--bell", bell, "fourier|hadamard")->required();
    c_trade->add_option("--grid", grid, "number of F_A samples (default 1000)");
    add_common(c_trade);

    CLI::App* c_report = app.add_subcommand("clone-report", "full report for pattern parameters");
    c_report->add_option("--pair", pair, "comp-fourier|comp-hadamard")->required();
    c_report->add_option("--bell", bell, "fourier|hadamard")->required();
    c_report->add_option("--params", params, "pattern parameters (normalized internally)")
        ->required()
        ->delimiter(',');
    add_common(c_report);

    CLI::App* c_universal = app.add_subcommand("universal", "universal cloner report");
    c_universal->add_option("--dim", dim, "register dimension (default 4)");
    add_common(c_universal);

    CLI::App* c_verify = app.add_subcommand("verify", "run the property suites");
    c_verify->add_option("--suite", suite, "all|bell|duality|covariance|qubit-theorem|entropy");
    c_verify->add_option("--trials", trials, "sweep size for randomized suites (default 1000)");
    add_common(c_verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }
    for (const CLI::Option* opt : seed_options)
        if (opt->count() > 0) g.seed = seed_value;

    try {
        if (g.as_json && g.as_csv) throw std::invalid_argument("--json and --csv are exclusive");
        if (g.as_csv && !c_trade->parsed())
            throw std::invalid_argument("--csv applies only to tradeoff");
        if (c_bell->parsed()) return cmd_bell(family, dim, m, n, g);
        if (c_cov->parsed()) return cmd_covariance(pair, bell, g);
        if (c_trade->parsed()) return cmd_tradeoff(pair, bell, grid, g);
        if (c_report->parsed()) return cmd_clone_report(pair, bell, params, g);
        if (c_universal->parsed()) return cmd_universal(dim, g);
        if (c_verify->parsed()) return cmd_verify(suite, trials, g);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}

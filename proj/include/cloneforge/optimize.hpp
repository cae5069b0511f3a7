#pragma once

#include <functional>
#include <optional>

#include "cloneforge/covariance.hpp"

/** @file
 * Cloner optimization under a covariance pattern. Parameters are real
 * non-negative, one per pattern class. In terms of s_k = p_k^2 the
 * normalization, the first-clone fidelity and the disturbances are all
 * linear, so a constrained point evaluation reduces to a grid over the
 * nullspace of a small linear system; F_B is then evaluated from the
 * first row of the dual matrix. The search is a deterministic nested
 * grid refinement (3 passes, factor 10 each), never stochastic, so
 * results are bitwise reproducible.
 */

namespace cloneforge {

/** Linear/quadratic data of a pattern under a duality rule:
 *  norm weights, per-row class counts, and the dual first row as a
 *  linear map of the class parameters. */
struct PatternQuadratics {
    int dim = 0;
    int n_classes = 0;
    AmplitudePattern pattern;
    BellRule rule = BellRule::fourier;
    std::vector<double> weight;       // class sizes
    std::vector<std::vector<double>> row_count; // [row][class]
    std::vector<std::vector<camp>> dual_row0;   // [n][class]: b_{0,n} = sum_k c*p_k
};

inline PatternQuadratics pattern_quadratics(const AmplitudePattern& p, BellRule rule) {
    int n = p.dim;
    int k_count = static_cast<int>(p.classes.size());
    PatternQuadratics q;
    q.dim = n;
    q.n_classes = k_count;
    q.pattern = p;
    q.rule = rule;
    q.weight.assign(static_cast<std::size_t>(k_count), 0.0);
    q.row_count.assign(static_cast<std::size_t>(n),
                       std::vector<double>(static_cast<std::size_t>(k_count), 0.0));
    for (int k = 0; k < k_count; ++k)
        for (const auto& e : p.classes[static_cast<std::size_t>(k)]) {
            q.weight[static_cast<std::size_t>(k)] += 1.0;
            q.row_count[static_cast<std::size_t>(e[0])][static_cast<std::size_t>(k)] += 1.0;
        }
    q.dual_row0.assign(static_cast<std::size_t>(n),
                       std::vector<camp>(static_cast<std::size_t>(k_count), camp(0, 0)));
    for (int k = 0; k < k_count; ++k) {
        std::vector<double> unit(static_cast<std::size_t>(k_count), 0.0);
        unit[static_cast<std::size_t>(k)] = 1.0;
        AmplitudeMatrix basis = pattern_matrix(p, unit);
        AmplitudeMatrix dual = dual_amplitudes(basis, rule);
        for (int col = 0; col < n; ++col)
            q.dual_row0[static_cast<std::size_t>(col)][static_cast<std::size_t>(k)] =
                dual.at(0, col);
    }
    return q;
}

inline double pattern_f_a(const PatternQuadratics& q, const std::vector<double>& p) {
    double f = 0;
    for (int k = 0; k < q.n_classes; ++k)
        f += q.row_count[0][static_cast<std::size_t>(k)] * p[static_cast<std::size_t>(k)] *
             p[static_cast<std::size_t>(k)];
    return f;
}

inline double pattern_f_b(const PatternQuadratics& q, const std::vector<double>& p) {
    double f = 0;
    for (int col = 0; col < q.dim; ++col) {
        camp b(0, 0);
        for (int k = 0; k < q.n_classes; ++k)
            b += q.dual_row0[static_cast<std::size_t>(col)][static_cast<std::size_t>(k)] *
                 p[static_cast<std::size_t>(k)];
        f += std::norm(b);
    }
    return f;
}

namespace detail {

struct AffineSolution {
    bool consistent = false;
    std::vector<double> particular;            // size K
    std::vector<std::vector<double>> nullspace; // orthonormal basis vectors, size K each
};

/** Row-reduces rows*[s;1] = 0 style system (each row: K coefficients and a
 *  right-hand side) and returns a particular solution plus an orthonormal
 *  nullspace basis. */
inline AffineSolution solve_affine(std::vector<std::vector<double>> m, int k_count) {
    const double piv_tol = 1e-11;
    int rows = static_cast<int>(m.size());
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < k_count && r < rows; ++c) {
        int best = -1;
        double best_abs = piv_tol;
        for (int i = r; i < rows; ++i)
            if (std::abs(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)]) > best_abs) {
                best = i;
                best_abs = std::abs(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)]);
            }
        if (best < 0) continue;
        std::swap(m[static_cast<std::size_t>(r)], m[static_cast<std::size_t>(best)]);
        double piv = m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
        for (int j = c; j <= k_count; ++j) m[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] /= piv;
        for (int i = 0; i < rows; ++i) {
            if (i == r) continue;
            double factor = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
            if (factor == 0.0) continue;
            for (int j = c; j <= k_count; ++j)
                m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -=
                    factor * m[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
        }
        pivot_col.push_back(c);
        ++r;
    }
    AffineSolution sol;
    for (int i = r; i < rows; ++i)
        if (std::abs(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(k_count)]) > 1e-9)
            return sol; // inconsistent
    sol.consistent = true;
    sol.particular.assign(static_cast<std::size_t>(k_count), 0.0);
    for (int i = 0; i < r; ++i)
        sol.particular[static_cast<std::size_t>(pivot_col[static_cast<std::size_t>(i)])] =
            m[static_cast<std::size_t>(i)][static_cast<std::size_t>(k_count)];
    std::vector<bool> is_pivot(static_cast<std::size_t>(k_count), false);
    for (int c : pivot_col) is_pivot[static_cast<std::size_t>(c)] = true;
    for (int c = 0; c < k_count; ++c) {
        if (is_pivot[static_cast<std::size_t>(c)]) continue;
        std::vector<double> v(static_cast<std::size_t>(k_count), 0.0);
        v[static_cast<std::size_t>(c)] = 1.0;
        for (int i = 0; i < r; ++i)
            v[static_cast<std::size_t>(pivot_col[static_cast<std::size_t>(i)])] =
                -m[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
        // modified Gram-Schmidt against the accepted basis
        for (const auto& u : sol.nullspace) {
            double dot = 0;
            for (int j = 0; j < k_count; ++j)
                dot += v[static_cast<std::size_t>(j)] * u[static_cast<std::size_t>(j)];
            for (int j = 0; j < k_count; ++j)
                v[static_cast<std::size_t>(j)] -= dot * u[static_cast<std::size_t>(j)];
        }
        double nrm = 0;
        for (double x : v) nrm += x * x;
        nrm = std::sqrt(nrm);
        if (nrm < 1e-12) continue;
        for (double& x : v) x /= nrm;
        sol.nullspace.push_back(std::move(v));
    }
    return sol;
}

} // namespace detail

/** Result of one constrained maximization of F_B. */
struct ConstrainedOptimum {
    bool feasible = false;
    double f_a = 0, f_b = 0;
    std::vector<double> params;
};

/** Maximizes F_B over the pattern's nonnegative parameters subject to
 *  normalization, optionally F_A = f_target, and optionally isotropy
 *  (equal disturbances). Deterministic nested grid refinement in the
 *  nullspace coordinates of the linearized constraints; points_per_dim = 0
 *  picks a density suited to the nullspace dimension. */
inline ConstrainedOptimum maximize_f_b(const PatternQuadratics& q,
                                       std::optional<double> f_target, bool isotropy,
                                       int points_per_dim = 0, int passes = 3) {
    int k_count = q.n_classes;
    std::vector<std::vector<double>> rows;
    {
        std::vector<double> norm_row(q.weight);
        norm_row.push_back(1.0);
        rows.push_back(std::move(norm_row));
    }
    if (f_target) {
        std::vector<double> fa_row(q.row_count[0]);
        fa_row.push_back(*f_target);
        rows.push_back(std::move(fa_row));
    }
    if (isotropy) {
        for (int i = 2; i < q.dim; ++i) {
            std::vector<double> iso(static_cast<std::size_t>(k_count) + 1, 0.0);
            for (int k = 0; k < k_count; ++k)
                iso[static_cast<std::size_t>(k)] =
                    q.row_count[1][static_cast<std::size_t>(k)] -
                    q.row_count[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
            iso[static_cast<std::size_t>(k_count)] = 0.0;
            rows.push_back(std::move(iso));
        }
    }
    detail::AffineSolution aff = detail::solve_affine(std::move(rows), k_count);
    ConstrainedOptimum best;
    if (!aff.consistent) return best;

    const double feas_tol = 1e-12;
    std::vector<double> s_buf(static_cast<std::size_t>(k_count));
    std::vector<double> p_buf(static_cast<std::size_t>(k_count));
    auto evaluate = [&](const std::vector<double>& t) {
        for (int k = 0; k < k_count; ++k) s_buf[static_cast<std::size_t>(k)] = aff.particular[static_cast<std::size_t>(k)];
        for (std::size_t j = 0; j < aff.nullspace.size(); ++j)
            for (int k = 0; k < k_count; ++k)
                s_buf[static_cast<std::size_t>(k)] += t[j] * aff.nullspace[j][static_cast<std::size_t>(k)];
        for (double v : s_buf)
            if (v < -feas_tol) return;
        for (int k = 0; k < k_count; ++k)
            p_buf[static_cast<std::size_t>(k)] =
                std::sqrt(std::max(0.0, s_buf[static_cast<std::size_t>(k)]));
        double fb = pattern_f_b(q, p_buf);
        if (!best.feasible || fb > best.f_b) {
            best.feasible = true;
            best.f_b = fb;
            best.f_a = pattern_f_a(q, p_buf);
            best.params = p_buf;
        }
    };

    int nu = static_cast<int>(aff.nullspace.size());
    if (nu == 0) {
        evaluate({});
        return best;
    }
    if (points_per_dim <= 0)
        points_per_dim = (nu == 1) ? 1001 : (nu == 2) ? 101 : (nu == 3) ? 41 : 21;

    // Initial box. One free coordinate admits exact interval bounds from
    // s >= 0; otherwise use the conservative ball |t| <= |s_part| + sqrt(K).
    std::vector<double> lo(static_cast<std::size_t>(nu)), hi(static_cast<std::size_t>(nu));
    if (nu == 1) {
        double tlo = -1e30, thi = 1e30;
        for (int k = 0; k < k_count; ++k) {
            double v = aff.nullspace[0][static_cast<std::size_t>(k)];
            double base = aff.particular[static_cast<std::size_t>(k)];
            if (v > 1e-14) tlo = std::max(tlo, -base / v);
            else if (v < -1e-14) thi = std::min(thi, -base / v);
            else if (base < -feas_tol) return best;
        }
        if (tlo > thi) return best;
        lo[0] = tlo;
        hi[0] = thi;
    } else {
        double part_norm = 0;
        for (double v : aff.particular) part_norm += v * v;
        double tmax = std::sqrt(part_norm) + std::sqrt(static_cast<double>(k_count));
        for (int j = 0; j < nu; ++j) {
            lo[static_cast<std::size_t>(j)] = -tmax;
            hi[static_cast<std::size_t>(j)] = tmax;
        }
    }

    int g = std::max(points_per_dim, 21);
    std::vector<double> t(static_cast<std::size_t>(nu), 0.0);
    std::vector<double> center(static_cast<std::size_t>(nu), 0.0);
    std::vector<double> width(static_cast<std::size_t>(nu), 0.0);
    for (int j = 0; j < nu; ++j) {
        center[static_cast<std::size_t>(j)] =
            0.5 * (lo[static_cast<std::size_t>(j)] + hi[static_cast<std::size_t>(j)]);
        width[static_cast<std::size_t>(j)] =
            hi[static_cast<std::size_t>(j)] - lo[static_cast<std::size_t>(j)];
    }

    for (int pass = 0; pass <= passes; ++pass) {
        std::vector<int> idx(static_cast<std::size_t>(nu), 0);
        bool done = false;
        std::vector<double> best_t(center);
        bool found_here = false;
        double best_val_before = best.feasible ? best.f_b : -1.0;
        while (!done) {
            for (int j = 0; j < nu; ++j)
                t[static_cast<std::size_t>(j)] =
                    center[static_cast<std::size_t>(j)] +
                    width[static_cast<std::size_t>(j)] *
                        (static_cast<double>(idx[static_cast<std::size_t>(j)]) / (g - 1) - 0.5);
            evaluate(t);
            if (best.feasible && best.f_b > best_val_before) {
                best_val_before = best.f_b;
                best_t = t;
                found_here = true;
            }
            int j = 0;
            for (; j < nu; ++j) {
                if (++idx[static_cast<std::size_t>(j)] < g) break;
                idx[static_cast<std::size_t>(j)] = 0;
            }
            done = (j == nu);
        }
        if (!best.feasible) return best; // nothing feasible anywhere in the box
        if (found_here) center = best_t;
        for (int j = 0; j < nu; ++j)
            width[static_cast<std::size_t>(j)] =
                std::max(width[static_cast<std::size_t>(j)] / 10.0,
                         4.0 * width[static_cast<std::size_t>(j)] / (g - 1));
    }
    return best;
}

/** One point of a fidelity trade-off curve. */
struct CurvePoint {
    double f_a = 0;
    double f_b = 0;
    std::vector<double> params;
};

struct TradeoffCurve {
    AmplitudePattern pattern;
    BellRule rule = BellRule::fourier;
    bool isotropy = false;
    std::vector<CurvePoint> points;
};

/** Scans F_A over [1/N, 1] on `grid` points and maximizes F_B at each.
 *  Throws if a requested F_A value is infeasible under the pattern. */
inline TradeoffCurve tradeoff_curve(const AmplitudePattern& pattern, BellRule rule,
                                    bool isotropy, int grid) {
    if (grid < 2) throw std::invalid_argument("tradeoff_curve: grid too small");
    PatternQuadratics q = pattern_quadratics(pattern, rule);
    TradeoffCurve curve{pattern, rule, isotropy, {}};
    double f_min = 1.0 / static_cast<double>(pattern.dim);
    for (int i = 0; i < grid; ++i) {
        double f = f_min + (1.0 - f_min) * static_cast<double>(i) / (grid - 1);
        ConstrainedOptimum opt = maximize_f_b(q, f, isotropy);
        if (!opt.feasible) throw std::runtime_error("tradeoff_curve: infeasible F_A value");
        curve.points.push_back(CurvePoint{opt.f_a, opt.f_b, opt.params});
    }
    return curve;
}

/** Clone-quality report data for one amplitude matrix (mutual informations
 *  are present only when the corresponding disturbances are symmetric). */
struct CloneReportData {
    double f_a = 0, f_b = 0;
    std::vector<double> d_a, d_b;
    double h_p = 0, h_q = 0;
    std::optional<double> i_ab, i_ae;
    std::optional<bool> secure;
    double r_lower = 0;
};

/** Security verdict from the one-way secret-key bound R >= I_AB - I_AE. */
struct CkVerdict {
    bool secure = false;
    double r_lower = 0;
};

inline CkVerdict ck_verdict(double i_ab, double i_ae) {
    return CkVerdict{i_ab > i_ae, std::max(0.0, i_ab - i_ae)};
}

/// Largest pairwise difference among the disturbances D_i.
inline double isotropy_residual(const AmplitudeMatrix& a) {
    auto [f, d] = fidelity_and_disturbances(a);
    (void)f;
    double worst = 0;
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = i + 1; j < d.size(); ++j)
            worst = std::max(worst, std::abs(d[i] - d[j]));
    return worst;
}

inline bool symmetric_probs(const std::vector<double>& d, double tol = 1e-9) {
    for (double x : d)
        if (std::abs(x - d[0]) > tol) return false;
    return true;
}

inline CloneReportData make_clone_report(const AmplitudeMatrix& a, BellRule rule) {
    CloneReportData r;
    AmplitudeMatrix b = dual_amplitudes(a, rule);
    std::tie(r.f_a, r.d_a) = fidelity_and_disturbances(a);
    std::tie(r.f_b, r.d_b) = fidelity_and_disturbances(b);
    std::tie(r.h_p, r.h_q) = entropic_bound(a, rule);
    if (symmetric_probs(r.d_a)) r.i_ab = mutual_information(r.f_a, r.d_a, a.dim);
    if (symmetric_probs(r.d_b)) r.i_ae = mutual_information(r.f_b, r.d_b, a.dim);
    if (r.i_ab && r.i_ae) {
        CkVerdict v = ck_verdict(*r.i_ab, *r.i_ae);
        r.secure = v.secure;
        r.r_lower = v.r_lower;
    }
    return r;
}

/** A fully-characterized cloner: amplitude matrix, its dual and report. */
struct OptimalCloner {
    AmplitudeMatrix a;
    AmplitudeMatrix b;
    std::vector<double> params;
    CloneReportData report;
};

inline OptimalCloner make_optimal_cloner(const AmplitudePattern& pattern, BellRule rule,
                                         const std::vector<double>& params) {
    AmplitudeMatrix a = pattern_matrix(pattern, params);
    return OptimalCloner{a, dual_amplitudes(a, rule), params, make_clone_report(a, rule)};
}

/** The point of the trade-off curve where the two fidelities cross,
 *  located by bisection on F_A; the reported point satisfies
 *  |F_A - F_B| < 1e-6. Throws if no crossing exists in [1/N, 1]. */
inline OptimalCloner symmetric_optimum(const AmplitudePattern& pattern, BellRule rule,
                                       bool isotropy) {
    PatternQuadratics q = pattern_quadratics(pattern, rule);
    auto gap = [&](double f) {
        ConstrainedOptimum opt = maximize_f_b(q, f, isotropy);
        if (!opt.feasible) throw std::runtime_error("symmetric_optimum: infeasible F_A");
        return std::make_pair(opt.f_b - f, opt);
    };
    double f_min = 1.0 / static_cast<double>(pattern.dim);
    double lo = f_min, hi = 1.0;
    auto [glo, opt_lo] = gap(lo);
    auto [ghi, opt_hi] = gap(hi);
    if (glo < 0 || ghi > 0) throw std::runtime_error("symmetric_optimum: no crossing in [1/N, 1]");
    ConstrainedOptimum opt = opt_lo;
    for (int it = 0; it < 60 && hi - lo > 1e-12; ++it) {
        double mid = 0.5 * (lo + hi);
        auto [g, o] = gap(mid);
        opt = o;
        if (g > 0) lo = mid;
        else hi = mid;
    }
    if (std::abs(opt.f_b - opt.f_a) >= 1e-6)
        throw std::runtime_error("symmetric_optimum: crossing did not converge");
    return make_optimal_cloner(pattern, rule, opt.params);
}

/** Solves a = dual(a) inside the pattern (the elementwise-symmetric fixed
 *  point): the condition is linear in the class parameters, so the unique
 *  nonnegative normalized nullspace direction is returned. */
inline OptimalCloner elementwise_fixed_point(const AmplitudePattern& pattern, BellRule rule) {
    int k_count = static_cast<int>(pattern.classes.size());
    int n = pattern.dim;
    // rows of (dual - identity) applied to each class indicator matrix
    std::vector<std::vector<double>> m;
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            std::vector<double> row(static_cast<std::size_t>(k_count) + 1, 0.0);
            for (int k = 0; k < k_count; ++k) {
                std::vector<double> unit(static_cast<std::size_t>(k_count), 0.0);
                unit[static_cast<std::size_t>(k)] = 1.0;
                AmplitudeMatrix basis = pattern_matrix(pattern, unit);
                AmplitudeMatrix dual = dual_amplitudes(basis, rule);
                if (std::abs(dual.at(r, c).imag()) > 1e-12)
                    throw std::runtime_error("elementwise_fixed_point: complex dual kernel");
                row[static_cast<std::size_t>(k)] = dual.at(r, c).real() - basis.at(r, c).real();
            }
            m.push_back(std::move(row));
        }
    detail::AffineSolution aff = detail::solve_affine(std::move(m), k_count);
    if (!aff.consistent || aff.nullspace.size() != 1)
        throw std::runtime_error("elementwise_fixed_point: fixed-point space is not a line");
    std::vector<double> p = aff.nullspace[0];
    double sign = 0;
    for (double v : p) sign += v;
    if (sign < 0)
        for (double& v : p) v = -v;
    for (double v : p)
        if (v < -1e-12) throw std::runtime_error("elementwise_fixed_point: mixed-sign direction");
    // scale to unit Frobenius norm
    double norm_sq = 0;
    for (int k = 0; k < k_count; ++k)
        norm_sq += static_cast<double>(pattern.classes[static_cast<std::size_t>(k)].size()) *
                   p[static_cast<std::size_t>(k)] * p[static_cast<std::size_t>(k)];
    for (double& v : p) v /= std::sqrt(norm_sq);
    return make_optimal_cloner(pattern, rule, p);
}

/// Pattern of the universal cloner: one class for (0,0), one for the rest.
inline AmplitudePattern universal_pattern(int n) {
    AmplitudePattern p;
    p.dim = n;
    p.classes.resize(2);
    for (int m = 0; m < n; ++m)
        for (int c = 0; c < n; ++c)
            p.classes[(m == 0 && c == 0) ? 0 : 1].push_back({m, c});
    p.labels = {"a", "b"};
    return p;
}

/** The state-independent (universal) cloner in N dimensions:
 *  a_{0,0} = (N+1)/sqrt(2N(N+1)), all other entries 1/sqrt(2N(N+1)).
 *  It is self-dual and its fidelity is (3+N)/(2(1+N)). */
inline OptimalCloner universal_cloner(int n) {
    if (n < 2) throw std::invalid_argument("universal_cloner: dim must be >= 2");
    double scale = 1.0 / std::sqrt(2.0 * n * (n + 1.0));
    std::vector<double> params = {(n + 1.0) * scale, scale};
    return make_optimal_cloner(universal_pattern(n), BellRule::fourier, params);
}

inline double universal_fidelity_formula(int n) {
    return (3.0 + n) / (2.0 * (1.0 + n));
}

} // namespace cloneforge

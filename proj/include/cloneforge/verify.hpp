#pragma once

#include "cloneforge/qubit_theorem.hpp"
#include "cloneforge/report.hpp"

/** @file
 * Property suites shared by the test binaries and the `verify` CLI
 * subcommand. Each suite returns a list of named checks with the worst
 * residual observed across its sweeps.
 */

namespace cloneforge::verify {

namespace detail {

/// |P>_{R,A} (x) |Q>_{B,C} as a four-register ket.
inline Ket pair_ra_bc(const Ket& p, const Ket& q, int n) {
    Ket out(n * n * n * n);
    for (int r = 0; r < n; ++r)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    out[((r * n + a) * n + b) * n + c] = p[r * n + a] * q[b * n + c];
    return out;
}

/// |P>_{R,B} (x) |Q>_{A,C} as a four-register ket.
inline Ket pair_rb_ac(const Ket& p, const Ket& q, int n) {
    Ket out(n * n * n * n);
    for (int r = 0; r < n; ++r)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    out[((r * n + a) * n + b) * n + c] = p[r * n + b] * q[a * n + c];
    return out;
}

inline Check check(const std::string& name, double residual, double tol = kTol) {
    return Check{name, residual < tol, residual};
}

inline double family_orthonormality_residual(const BellFamily& f) {
    int nn = f.dim * f.dim;
    double worst = 0;
    for (int i = 0; i < nn; ++i)
        for (int j = 0; j < nn; ++j) {
            camp g = inner(f.states[static_cast<std::size_t>(i)],
                           f.states[static_cast<std::size_t>(j)]);
            worst = std::max(worst, std::abs(g - (i == j ? camp(1, 0) : camp(0, 0))));
        }
    return worst;
}

inline double family_entanglement_residual(const BellFamily& f) {
    int n = f.dim;
    Op eye_over_n = op_scale(op_identity(n), camp(1.0 / n, 0));
    double worst = 0;
    for (const Ket& s : f.states) {
        Op rho = density(s);
        worst = std::max(worst, max_abs_diff(partial_trace(rho, Subsystem::A, n, n), eye_over_n));
        worst = std::max(worst, max_abs_diff(partial_trace(rho, Subsystem::B, n, n), eye_over_n));
    }
    return worst;
}

/// The quartit optimal amplitude pattern values (x, y, z) = (3/4, 1/4, 1/12).
inline AmplitudeMatrix optimal_xyz_matrix() {
    AmplitudeMatrix a(4);
    for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n)
            a.at(m, n) = camp((m == 0 && n == 0) ? 0.75 : (m == 0 || n == 0) ? 0.25 : 1.0 / 12.0, 0);
    return a;
}

} // namespace detail

/** Bell-family identities: orthonormality, maximal entanglement, the
 *  conjugation identities, the Fourier-basis bijection, the Hadamard
 *  bijection, and the two pairing-overlap formulas. */
inline std::vector<Check> suite_bell() {
    using namespace detail;
    std::vector<Check> out;
    const int n = 4;
    BellFamily fourier = fourier_family(n);
    BellFamily hadamard = hadamard_family();
    BellFamily tilde = generalized_family(fourier_basis(n));

    double ortho = std::max({family_orthonormality_residual(fourier),
                             family_orthonormality_residual(hadamard),
                             family_orthonormality_residual(tilde)});
    out.push_back(check("bell_orthonormality", ortho));

    double ent = std::max({family_entanglement_residual(fourier),
                           family_entanglement_residual(hadamard),
                           family_entanglement_residual(tilde)});
    out.push_back(check("bell_maximal_entanglement", ent));

    double conj_res = 0;
    for (int m = 0; m < n; ++m)
        for (int ph = 0; ph < n; ++ph) {
            conj_res = std::max(conj_res, max_abs_diff(conjugate(fourier.state(m, ph)),
                                                       fourier.state(m, mod(-ph, n))));
            conj_res = std::max(conj_res, max_abs_diff(conjugate(hadamard.state(m, ph)),
                                                       hadamard.state(m, ph)));
        }
    out.push_back(check("bell_conjugation_identities", conj_res));

    // B~_{m,n} = i^{-nm} B_{-n,m} and its conjugate, Fourier basis
    double dual_res = 0;
    for (int m = 0; m < n; ++m)
        for (int ph = 0; ph < n; ++ph) {
            camp phase = root_of_unity(4, -ph * m);
            dual_res = std::max(dual_res, max_abs_diff(tilde.state(m, ph),
                                                       scale(fourier.state(mod(-ph, n), m), phase)));
            dual_res = std::max(
                dual_res, max_abs_diff(conjugate(tilde.state(m, ph)),
                                       scale(conjugate(fourier.state(mod(-ph, n), m)),
                                             std::conj(phase))));
        }
    out.push_back(check("bell_fourier_basis_bijection", dual_res));

    out.push_back(Check{"bell_hadamard_bijection", hadamard_bijection_check(), 0.0});

    // <B_{m,n}(R,A) B_{m,-n}(B,C) | B_{x,y}(R,B) B_{x,-y}(A,C)> = exp(2pi i (nx-my)/N)/N
    double inprod_res = 0;
    for (int m = 0; m < n; ++m)
        for (int ph = 0; ph < n; ++ph)
            for (int x = 0; x < n; ++x)
                for (int y = 0; y < n; ++y) {
                    Ket bra = pair_ra_bc(fourier.state(m, ph), fourier.state(m, mod(-ph, n)), n);
                    Ket ket = pair_rb_ac(fourier.state(x, y), fourier.state(x, mod(-y, n)), n);
                    camp expected = root_of_unity(n, ph * x - m * y) / static_cast<double>(n);
                    inprod_res = std::max(inprod_res, std::abs(inner(bra, ket) - expected));
                }
    out.push_back(check("bell_fourier_pairing_overlap", inprod_res));

    // the Hadamard analogue: overlap = H_{i,n} * H_{m,j}
    const Op h = hadamard_basis().mat;
    double had_res = 0;
    for (int m = 0; m < n; ++m)
        for (int ph = 0; ph < n; ++ph)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    Ket bra = pair_rb_ac(hadamard.state(m, ph), hadamard.state(m, ph), n);
                    Ket ket = pair_ra_bc(hadamard.state(i, j), hadamard.state(i, j), n);
                    camp expected = h.at(i, ph) * h.at(m, j);
                    had_res = std::max(had_res, std::abs(inner(bra, ket) - expected));
                }
    out.push_back(check("bell_hadamard_pairing_overlap", had_res));

    // V_{m,n;k,l} = i^{mk} delta_{(l+m) mod 4, 0} delta_{k,n}
    OverlapMatrix v = overlap_matrix(fourier, tilde);
    double v_res = 0;
    for (int m = 0; m < n; ++m)
        for (int ph = 0; ph < n; ++ph)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    camp expected(0, 0);
                    if (mod(l + m, n) == 0 && k == ph) expected = root_of_unity(n, m * k);
                    v_res = std::max(v_res,
                                     std::abs(v.v.at(m * n + ph, k * n + l) - expected));
                }
    out.push_back(check("bell_fourier_overlap_matrix_formula", v_res));
    return out;
}

/** Duality transforms against the Bell re-expansion oracle, plus the
 *  involution property, for both families. */
inline std::vector<Check> suite_duality(std::uint64_t seed, int trials = 100) {
    using namespace detail;
    std::vector<Check> out;
    std::mt19937_64 rng(seed);
    BellFamily fourier = fourier_family(4);
    BellFamily hadamard = hadamard_family();

    double oracle_f = 0, oracle_h = 0, invol = 0;
    for (int t = 0; t < trials; ++t) {
        AmplitudeMatrix a = random_amplitudes(4, rng);
        AmplitudeMatrix bf = dual_amplitudes(a, BellRule::fourier);
        AmplitudeMatrix bh = dual_amplitudes(a, BellRule::hadamard);
        AmplitudeMatrix rf = reexpand_check(cerf_state(a, fourier), fourier);
        AmplitudeMatrix rh = reexpand_check(cerf_state(a, hadamard), hadamard);
        AmplitudeMatrix ff = dual_amplitudes(bf, BellRule::fourier);
        AmplitudeMatrix hh = dual_amplitudes(bh, BellRule::hadamard);
        for (int i = 0; i < 16; ++i) {
            auto idx = static_cast<std::size_t>(i);
            oracle_f = std::max(oracle_f, std::abs(bf.a[idx] - rf.a[idx]));
            oracle_h = std::max(oracle_h, std::abs(bh.a[idx] - rh.a[idx]));
            invol = std::max(invol, std::abs(ff.a[idx] - a.a[idx]));
            invol = std::max(invol, std::abs(hh.a[idx] - a.a[idx]));
        }
    }
    out.push_back(check("duality_reexpansion_oracle_fourier", oracle_f));
    out.push_back(check("duality_reexpansion_oracle_hadamard", oracle_h));
    out.push_back(check("duality_involution", invol));

    AmplitudeMatrix peaked = peaked_amplitudes(4);
    AmplitudeMatrix flat = dual_amplitudes(peaked, BellRule::fourier);
    double flat_res = 0;
    for (camp z : flat.a) flat_res = std::max(flat_res, std::abs(z - camp(0.25, 0)));
    out.push_back(check("duality_peaked_maps_to_flat", flat_res));
    return out;
}

/** Covariance patterns and verdicts for the three basis/family pairings,
 *  with random parameter assignments respecting each pattern. */
inline std::vector<Check> suite_covariance(std::uint64_t seed, int trials = 100) {
    using namespace detail;
    std::vector<Check> out;
    std::mt19937_64 rng(seed);
    OrthonormalBasis comp = computational_basis(4);
    OrthonormalBasis fourier = fourier_basis(4);
    OrthonormalBasis hadamard = hadamard_basis();

    AmplitudePattern p_ff = covariant_pattern(comp, fourier, BellRule::fourier);
    AmplitudePattern p_hf = covariant_pattern(comp, hadamard, BellRule::fourier);
    AmplitudePattern p_hh = covariant_pattern(comp, hadamard, BellRule::hadamard);
    out.push_back(Check{"covariance_fourier_pair_classes", p_ff.classes.size() == 6,
                        static_cast<double>(p_ff.classes.size())});
    out.push_back(Check{"covariance_hadamard_pair_classes", p_hf.classes.size() == 5,
                        static_cast<double>(p_hf.classes.size())});
    out.push_back(Check{"covariance_hadamard_bell_classes", p_hh.classes.size() == 10,
                        static_cast<double>(p_hh.classes.size())});

    auto random_respecting = [&](const AmplitudePattern& p, BellRule rule) {
        std::uniform_real_distribution<double> uni(0.05, 1.0);
        double worst = 0;
        OrthonormalBasis& b2 = (&p == &p_ff) ? fourier : hadamard;
        for (int t = 0; t < trials; ++t) {
            std::vector<double> params(p.classes.size());
            for (double& v : params) v = uni(rng);
            AmplitudeMatrix a = normalized(pattern_matrix(p, params));
            if (!verify_covariance(a, b2, rule)) worst = 1.0;
        }
        return worst;
    };
    out.push_back(check("covariance_random_fourier_pattern", random_respecting(p_ff, BellRule::fourier)));
    out.push_back(check("covariance_random_hadamard_pattern", random_respecting(p_hf, BellRule::fourier)));
    out.push_back(check("covariance_random_klein_pattern", random_respecting(p_hh, BellRule::hadamard)));

    AmplitudeMatrix xyz = optimal_xyz_matrix();
    bool v1 = verify_covariance(xyz, fourier, BellRule::fourier);
    bool v2 = verify_covariance(xyz, hadamard, BellRule::fourier);
    bool v3 = verify_covariance(xyz, hadamard, BellRule::hadamard);
    out.push_back(Check{"covariance_xyz_fourier_basis", v1, v1 ? 0.0 : 1.0});
    out.push_back(Check{"covariance_xyz_hadamard_basis_fails", !v2, v2 ? 1.0 : 0.0});
    out.push_back(Check{"covariance_xyz_klein_family_hadamard_basis", v3, v3 ? 0.0 : 1.0});

    // label swap 2<->3: breaks the Fourier cloning state, never the Klein one
    Op tau(4);
    tau.at(0, 0) = tau.at(1, 1) = tau.at(2, 3) = tau.at(3, 2) = camp(1, 0);
    Op tau4 = op_tensor(op_tensor(tau, tau), op_tensor(tau, tau));
    Ket psi_f = cerf_state(xyz, fourier_family(4)).joint;
    double tau_diff = max_abs_diff(apply(tau4, psi_f), psi_f);
    out.push_back(Check{"covariance_fourier_state_breaks_label_swap", tau_diff > 1e-3, tau_diff});

    Ket psi_h = cerf_state(xyz, hadamard_family()).joint;
    double perm_res = 0;
    for (int k = 0; k < 4; ++k) {
        Op p4 = op_tensor(op_tensor(pair_perm(k), pair_perm(k)),
                          op_tensor(pair_perm(k), pair_perm(k)));
        perm_res = std::max(perm_res, max_abs_diff(apply(p4, psi_h), psi_h));
    }
    out.push_back(check("covariance_klein_state_permutation_invariant", perm_res));
    return out;
}

/** The qubit generality theorem: closed-form statistics against the
 *  Born-rule oracle and the two-state mixture equivalence. */
inline std::vector<Check> suite_qubit_theorem(std::uint64_t seed, int trials = 1000) {
    using namespace detail;
    std::vector<Check> out;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    auto random_state = [&]() {
        std::array<camp, 8> z;
        double norm_sq = 0;
        for (camp& c : z) {
            c = camp(gauss(rng), gauss(rng));
            norm_sq += std::norm(c);
        }
        double r = 1.0 / std::sqrt(norm_sq);
        SymmetricQubitState s;
        s.alpha_plus = r * z[0];
        s.alpha_minus = r * z[1];
        s.beta_plus = r * z[2];
        s.beta_minus = r * z[3];
        s.gamma_plus = r * z[4];
        s.gamma_minus = r * z[5];
        s.delta_plus = r * z[6];
        s.delta_minus = r * z[7];
        return s;
    };

    Op cc4 = op_identity(16);
    {
        Op c = cyclic_perm(2);
        cc4 = op_tensor(op_tensor(c, c), op_tensor(c, c));
    }

    double invariance = 0, closed_vs_born = 0, mixture_stats = 0, mixture_density = 0,
           effective_diag = 0, half_bell_diag = 0;
    BellFamily qubit_bells = fourier_family(2);
    for (int t = 0; t < trials; ++t) {
        SymmetricQubitState s = random_state();
        Ket joint = build_symmetric_state(s);
        invariance = std::max(invariance, max_abs_diff(apply(cc4, joint), joint));

        AttackStatistics closed = attack_statistics(s);
        AttackStatistics born = born_statistics(joint);
        closed_vs_born = std::max(closed_vs_born, closed.max_abs_diff(born));

        MixtureDecomposition mix = mixture_decomposition(s);
        mixture_stats = std::max(mixture_stats, mixture_statistics(mix).max_abs_diff(born));
        mixture_density =
            std::max(mixture_density, max_abs_diff(mixture_ra_density(mix), effective_ra_density(s)));

        Op true_ra = partial_trace(density(joint), Subsystem::A, 4, 4);
        Op eff = effective_ra_density(s);
        for (int d = 0; d < 4; ++d)
            effective_diag = std::max(effective_diag, std::abs(true_ra.at(d, d) - eff.at(d, d)));

        for (const Ket& half : {build_symmetric_state(mix.state1), build_symmetric_state(mix.state2)}) {
            Op ra = partial_trace(density(half), Subsystem::A, 4, 4);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    if (i == j) continue;
                    camp g = inner(qubit_bells.states[static_cast<std::size_t>(i)],
                                   apply(ra, qubit_bells.states[static_cast<std::size_t>(j)]));
                    half_bell_diag = std::max(half_bell_diag, std::abs(g));
                }
        }
    }
    out.push_back(check("qubit_theorem_permutation_invariance", invariance));
    out.push_back(check("qubit_theorem_closed_form_vs_born", closed_vs_born));
    out.push_back(check("qubit_theorem_mixture_statistics", mixture_stats));
    out.push_back(check("qubit_theorem_mixture_density", mixture_density));
    out.push_back(check("qubit_theorem_effective_density_diagonal", effective_diag));
    out.push_back(check("qubit_theorem_half_attacks_bell_diagonal", half_bell_diag));

    // cross terms <pq|B_{i,j}><B_{m,n}|pq> vanish whenever m != i
    double lemma = 0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int m = 0; m < 2; ++m)
                for (int nn = 0; nn < 2; ++nn) {
                    if (m == i) continue;
                    for (int p = 0; p < 2; ++p)
                        for (int q = 0; q < 2; ++q) {
                            Ket pq = tensor(basis_ket(2, p), basis_ket(2, q));
                            camp val = inner(pq, qubit_bells.state(i, j)) *
                                       inner(qubit_bells.state(m, nn), pq);
                            lemma = std::max(lemma, std::abs(val));
                        }
                }
    out.push_back(check("qubit_theorem_cross_term_lemma", lemma));
    return out;
}

/** Entropic no-cloning sweep: H[p] + H[q] >= 2 log2(N) over random
 *  amplitude matrices, with equality at the peaked case. */
inline std::vector<Check> suite_entropy(std::uint64_t seed, int trials = 1000) {
    using namespace detail;
    std::vector<Check> out;
    std::mt19937_64 rng(seed);
    double min_sum_f = 1e300, min_sum_h = 1e300;
    for (int t = 0; t < trials; ++t) {
        AmplitudeMatrix a = random_amplitudes(4, rng);
        auto [hp_f, hq_f] = entropic_bound(a, BellRule::fourier);
        auto [hp_h, hq_h] = entropic_bound(a, BellRule::hadamard);
        min_sum_f = std::min(min_sum_f, hp_f + hq_f);
        min_sum_h = std::min(min_sum_h, hp_h + hq_h);
    }
    out.push_back(Check{"entropy_bound_fourier_sweep", min_sum_f >= 4.0 - 1e-9, 4.0 - min_sum_f});
    out.push_back(Check{"entropy_bound_hadamard_sweep", min_sum_h >= 4.0 - 1e-9, 4.0 - min_sum_h});

    auto [hp, hq] = entropic_bound(peaked_amplitudes(4), BellRule::fourier);
    double eq_res = std::max(std::abs(hp), std::abs(hq - 4.0));
    out.push_back(Check{"entropy_equality_at_peaked_case", eq_res < 1e-9, eq_res});
    return out;
}

inline std::vector<Check> suite_all(std::uint64_t seed, int trials = 1000) {
    std::vector<Check> out;
    for (auto&& suite : {suite_bell(), suite_duality(seed), suite_covariance(seed),
                         suite_qubit_theorem(seed, trials), suite_entropy(seed, trials)})
        out.insert(out.end(), suite.begin(), suite.end());
    return out;
}

} // namespace cloneforge::verify

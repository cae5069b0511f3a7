#pragma once

#include <array>

#include "cloneforge/cloner.hpp"

/** @file
 * Numerical verification that any optimal 4-register qubit state invariant
 * under relabeling of the basis states is equivalent, for the full set of
 * Alice/Eve counting statistics, to a probabilistic mixture of two states
 * whose (R,A) reduction is Bell-diagonal.
 *
 * Measurement model: Alice reads register R and Eve reads registers B and
 * C, all projectively in the computational product basis.
 */

namespace cloneforge {

/** The eight amplitudes of a qubit 4-register state restricted to the +1
 *  eigenspace of the label-swap operator applied to all registers:
 *  alpha/beta weigh the locked Bell pairs B_{0,n}(x)B_{0,n} and
 *  B_{1,n}(x)B_{1,n}; gamma/delta weigh the shift-mismatched products
 *  B_{1,n}(R,A)(x)B_{0,n}(B,C) and B_{0,n}(R,A)(x)B_{1,n}(B,C). */
struct SymmetricQubitState {
    camp alpha_plus{0, 0}, alpha_minus{0, 0};
    camp beta_plus{0, 0}, beta_minus{0, 0};
    camp gamma_plus{0, 0}, gamma_minus{0, 0};
    camp delta_plus{0, 0}, delta_minus{0, 0};

    std::array<camp, 8> amps() const {
        return {alpha_plus, alpha_minus, beta_plus,  beta_minus,
                gamma_plus, gamma_minus, delta_plus, delta_minus};
    }
    double norm_sq() const {
        double s = 0;
        for (camp z : amps()) s += std::norm(z);
        return s;
    }
    bool normalized(double tol = kTol) const { return std::abs(norm_sq() - 1.0) < tol; }
};

namespace detail {

/// The eight (R,A)/(B,C) Bell index pairs backing the amplitude slots.
inline const std::array<std::array<int, 4>, 8>& symmetric_slots() {
    // (m_ra, n_ra, m_bc, n_bc) per slot, in SymmetricQubitState order
    static const std::array<std::array<int, 4>, 8> slots = {{
        {0, 0, 0, 0}, // alpha+
        {0, 1, 0, 1}, // alpha-
        {1, 0, 1, 0}, // beta+
        {1, 1, 1, 1}, // beta-
        {1, 0, 0, 0}, // gamma+
        {1, 1, 0, 1}, // gamma-
        {0, 0, 1, 0}, // delta+
        {0, 1, 1, 1}, // delta-
    }};
    return slots;
}

} // namespace detail

/** Assembles the 16-amplitude joint state on (R,A,B,C); it is invariant
 *  under the swap of labels 0 and 1 applied to all four registers. */
inline Ket build_symmetric_state(const SymmetricQubitState& s) {
    if (!s.normalized(1e-9))
        throw std::invalid_argument("build_symmetric_state: amplitudes not normalized");
    const auto amps = s.amps();
    const auto& slots = detail::symmetric_slots();
    Ket joint(16);
    for (std::size_t slot = 0; slot < 8; ++slot) {
        camp c = amps[slot];
        if (c == camp(0, 0)) continue;
        Ket ra = fourier_bell(2, slots[slot][0], slots[slot][1]);
        Ket bc = fourier_bell(2, slots[slot][2], slots[slot][3]);
        joint = add(joint, scale(tensor(ra, bc), c));
    }
    return joint;
}

/** The Bell-diagonal operator carrying everything Alice and Bob can see in
 *  the computational basis: cross terms between Bell states of different
 *  shift index never contribute to those statistics. */
inline Op effective_ra_density(const SymmetricQubitState& s) {
    Op rho(4);
    auto add_weight = [&](double w, int m, int n) {
        rho = op_add(rho, op_scale(density(fourier_bell(2, m, n)), w));
    };
    add_weight(std::norm(s.alpha_plus) + std::norm(s.delta_plus), 0, 0);
    add_weight(std::norm(s.beta_plus) + std::norm(s.gamma_plus), 1, 0);
    add_weight(std::norm(s.alpha_minus) + std::norm(s.delta_minus), 0, 1);
    add_weight(std::norm(s.beta_minus) + std::norm(s.gamma_minus), 1, 1);
    return rho;
}

/** Joint counting statistics of an individual attack.
 *  p_e[i][j]: Eve sees clone B in detector i and machine C in detector j.
 *  p_ae[k][i][j]: additionally Alice's detector k fires. Both are joint
 *  probabilities, so sum_k p_ae[k][i][j] = p_e[i][j]. */
struct AttackStatistics {
    std::array<std::array<double, 2>, 2> p_e{};
    std::array<std::array<std::array<double, 2>, 2>, 2> p_ae{};

    double max_abs_diff(const AttackStatistics& o) const {
        double m = 0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                m = std::max(m, std::abs(p_e[i][j] - o.p_e[i][j]));
                for (int k = 0; k < 2; ++k)
                    m = std::max(m, std::abs(p_ae[k][i][j] - o.p_ae[k][i][j]));
            }
        return m;
    }
};

/// Born-rule contraction of a 16-amplitude joint state (register A traced).
inline AttackStatistics born_statistics(const Ket& joint) {
    if (joint.dim != 16) throw std::invalid_argument("born_statistics: dimension mismatch");
    AttackStatistics st;
    for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    double w = std::norm(joint[((k * 2 + l) * 2 + i) * 2 + j]);
                    st.p_ae[k][i][j] += w;
                    st.p_e[i][j] += w;
                }
    return st;
}

/** Closed-form statistics of the symmetric state; equals born_statistics
 *  of build_symmetric_state within 1e-12. */
inline AttackStatistics attack_statistics(const SymmetricQubitState& s) {
    AttackStatistics st;
    double even = 0.5 * (std::norm(s.alpha_plus) + std::norm(s.alpha_minus) +
                         std::norm(s.gamma_plus) + std::norm(s.gamma_minus));
    double odd = 0.5 * (std::norm(s.beta_plus) + std::norm(s.beta_minus) +
                        std::norm(s.delta_plus) + std::norm(s.delta_minus));
    st.p_e[0][0] = st.p_e[1][1] = even;
    st.p_e[0][1] = st.p_e[1][0] = odd;

    double cross_even = 0.5 * ((s.alpha_plus * std::conj(s.alpha_minus)).real() +
                               (s.gamma_plus * std::conj(s.gamma_minus)).real());
    double cross_odd = 0.5 * ((s.beta_plus * std::conj(s.beta_minus)).real() +
                              (s.delta_plus * std::conj(s.delta_minus)).real());
    st.p_ae[0][0][0] = st.p_ae[1][1][1] = 0.5 * even + cross_even;
    st.p_ae[1][0][0] = st.p_ae[0][1][1] = 0.5 * even - cross_even;
    st.p_ae[0][0][1] = st.p_ae[1][1][0] = 0.5 * odd + cross_odd;
    st.p_ae[1][0][1] = st.p_ae[0][1][0] = 0.5 * odd - cross_odd;
    return st;
}

/** A two-component mixture of symmetric states reproducing the original
 *  attack statistics exactly. */
struct MixtureDecomposition {
    double p1 = 0;
    SymmetricQubitState state1; // the alpha/beta block
    double p2 = 0;
    SymmetricQubitState state2; // the gamma/delta block
};

/** Splits the state into its locked (alpha,beta) block and its mismatched
 *  (gamma,delta) block. The two blocks have disjoint support in the
 *  computational product basis, so the mixture reproduces every counting
 *  statistic of the superposition, and its (R,A) density equals the
 *  effective density. Each block is Bell-diagonal on (R,A) and hence a
 *  legitimate cloning attack in its own right. */
inline MixtureDecomposition mixture_decomposition(const SymmetricQubitState& s) {
    MixtureDecomposition mix;
    mix.p1 = std::norm(s.alpha_plus) + std::norm(s.alpha_minus) + std::norm(s.beta_plus) +
             std::norm(s.beta_minus);
    mix.p2 = std::norm(s.gamma_plus) + std::norm(s.gamma_minus) + std::norm(s.delta_plus) +
             std::norm(s.delta_minus);
    if (mix.p1 > kTol) {
        double r = 1.0 / std::sqrt(mix.p1);
        mix.state1.alpha_plus = r * s.alpha_plus;
        mix.state1.alpha_minus = r * s.alpha_minus;
        mix.state1.beta_plus = r * s.beta_plus;
        mix.state1.beta_minus = r * s.beta_minus;
    }
    if (mix.p2 > kTol) {
        double r = 1.0 / std::sqrt(mix.p2);
        mix.state2.gamma_plus = r * s.gamma_plus;
        mix.state2.gamma_minus = r * s.gamma_minus;
        mix.state2.delta_plus = r * s.delta_plus;
        mix.state2.delta_minus = r * s.delta_minus;
    }
    // degenerate block: collapse to the single surviving attack
    if (mix.p1 <= kTol) {
        mix.state1 = mix.state2;
        mix.p1 = 0;
        mix.p2 = 1;
    } else if (mix.p2 <= kTol) {
        mix.state2 = mix.state1;
        mix.p2 = 0;
        mix.p1 = 1;
    }
    return mix;
}

/// Statistics of the mixture: p1*stats(state1) + p2*stats(state2).
inline AttackStatistics mixture_statistics(const MixtureDecomposition& mix) {
    AttackStatistics s1 = attack_statistics(mix.state1);
    AttackStatistics s2 = attack_statistics(mix.state2);
    AttackStatistics out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            out.p_e[i][j] = mix.p1 * s1.p_e[i][j] + mix.p2 * s2.p_e[i][j];
            for (int k = 0; k < 2; ++k)
                out.p_ae[k][i][j] = mix.p1 * s1.p_ae[k][i][j] + mix.p2 * s2.p_ae[k][i][j];
        }
    return out;
}

/// Tr_{B,C} of the mixture's density operator.
inline Op mixture_ra_density(const MixtureDecomposition& mix) {
    Op r1 = partial_trace(density(build_symmetric_state(mix.state1)), Subsystem::A, 4, 4);
    Op r2 = partial_trace(density(build_symmetric_state(mix.state2)), Subsystem::A, 4, 4);
    return op_add(op_scale(r1, mix.p1), op_scale(r2, mix.p2));
}

} // namespace cloneforge

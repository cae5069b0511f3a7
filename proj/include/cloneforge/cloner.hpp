#pragma once

#include "cloneforge/bell.hpp"

/** @file
 * The cloning-machine core: four-register joint states built from an
 * amplitude matrix and a Bell family, the amplitude duality between the
 * two clones, reduced density operators, fidelities, disturbances, the
 * entropic no-cloning bound and the symmetric-channel mutual information.
 *
 * Register convention: the joint state of (R, A, B, C) is flattened
 * row-major, index = ((r*N + a)*N + b)*N + c. R is the reference, A the
 * first clone, B the second clone, C the cloning machine.
 */

namespace cloneforge {

/** N x N complex amplitude matrix with unit Frobenius norm; entry (m,n)
 *  weighs the error channel that shifts by m and imprints phase n. */
struct AmplitudeMatrix {
    int dim = 0;
    std::vector<camp> a; // row-major dim*dim

    AmplitudeMatrix() = default;
    explicit AmplitudeMatrix(int d) : dim(d), a(static_cast<std::size_t>(d) * d, camp(0, 0)) {
        if (d <= 0) throw std::invalid_argument("AmplitudeMatrix: dimension must be positive");
    }

    camp& at(int m, int n) { return a[static_cast<std::size_t>(m) * dim + n]; }
    camp at(int m, int n) const { return a[static_cast<std::size_t>(m) * dim + n]; }

    double frobenius_sq() const {
        double s = 0;
        for (camp z : a) s += std::norm(z);
        return s;
    }
    bool normalized(double tol = kTol) const { return std::abs(frobenius_sq() - 1.0) < tol; }
};

inline AmplitudeMatrix normalized(const AmplitudeMatrix& a) {
    double n = std::sqrt(a.frobenius_sq());
    if (n < kTol) throw std::runtime_error("AmplitudeMatrix: zero matrix");
    AmplitudeMatrix r = a;
    for (camp& z : r.a) z /= n;
    return r;
}

/// delta matrix peaked at (m,n).
inline AmplitudeMatrix peaked_amplitudes(int dim, int m = 0, int n = 0) {
    AmplitudeMatrix r(dim);
    r.at(m, n) = camp(1, 0);
    return r;
}

/** The dual amplitude matrix of the second clone.
 *  fourier rule:  b_{m,n} = (1/N) sum_{x,y} exp(2*pi*i*(n*x - m*y)/N) a_{x,y}
 *  hadamard rule: b_{m,n} = sum_{x,y} H_{m,y} H_{n,x} a_{x,y}
 *  Both kernels are involutions, so applying the transform twice returns
 *  the input. */
inline AmplitudeMatrix dual_amplitudes(const AmplitudeMatrix& a, BellRule rule) {
    int n = a.dim;
    AmplitudeMatrix b(n);
    if (rule == BellRule::fourier || rule == BellRule::generalized) {
        for (int m = 0; m < n; ++m)
            for (int ph = 0; ph < n; ++ph) {
                camp s(0, 0);
                for (int x = 0; x < n; ++x)
                    for (int y = 0; y < n; ++y)
                        s += root_of_unity(n, ph * x - m * y) * a.at(x, y);
                b.at(m, ph) = s / static_cast<double>(n);
            }
        return b;
    }
    if (n != 4) throw std::invalid_argument("dual_amplitudes: hadamard rule requires N=4");
    const Op h = hadamard_basis().mat;
    for (int m = 0; m < 4; ++m)
        for (int ph = 0; ph < 4; ++ph) {
            camp s(0, 0);
            for (int x = 0; x < 4; ++x)
                for (int y = 0; y < 4; ++y)
                    s += h.at(m, y) * h.at(ph, x) * a.at(x, y);
            b.at(m, ph) = s;
        }
    return b;
}

/** A Cerf state: a unit-norm four-register joint state whose reduced
 *  density operator on (R,A) is diagonal in the family's Bell basis. */
struct CloningState {
    int dim = 0;
    BellRule rule = BellRule::fourier;
    Ket joint; // dim^4 amplitudes over (R,A,B,C)
};

/** Builds the Cerf joint state sum_{m,n} a_{m,n} B_{m,n}(R,A) (x)
 *  conj(B_{m,n})(B,C). For the Fourier family the conjugate factor equals
 *  B_{m,-n}; for the Hadamard family the states are real and the (B,C)
 *  factor is B^H_{m,n} itself. */
inline CloningState cerf_state(const AmplitudeMatrix& a, const BellFamily& family) {
    int n = family.dim;
    if (a.dim != n) throw std::invalid_argument("cerf_state: dimension mismatch");
    if (!a.normalized(1e-9)) throw std::invalid_argument("cerf_state: amplitudes not normalized");
    int nn = n * n;
    Ket joint(nn * nn);
    for (int m = 0; m < n; ++m)
        for (int ph = 0; ph < n; ++ph) {
            camp c = a.at(m, ph);
            if (c == camp(0, 0)) continue;
            const Ket& ra = family.state(m, ph);
            for (int i = 0; i < nn; ++i) {
                camp left = c * ra[i];
                if (left == camp(0, 0)) continue;
                for (int j = 0; j < nn; ++j)
                    joint[i * nn + j] += left * std::conj(ra[j]);
            }
        }
    return CloningState{n, family.rule, std::move(joint)};
}

/// Max Bell-basis off-diagonal of Tr_{B,C}|joint><joint| (Cerf residual).
inline double cerf_residual(const CloningState& s, const BellFamily& family) {
    int n = s.dim, nn = n * n;
    Op rho = partial_trace(density(s.joint), Subsystem::A, nn, nn);
    double worst = 0;
    for (int i = 0; i < nn; ++i)
        for (int j = 0; j < nn; ++j) {
            if (i == j) continue;
            const Ket& bi = family.states[static_cast<std::size_t>(i)];
            const Ket& bj = family.states[static_cast<std::size_t>(j)];
            worst = std::max(worst, std::abs(inner(bi, apply(rho, bj))));
        }
    return worst;
}

/** Re-expands the joint state in the (R,B),(A,C) Bell pairing and returns
 *  the coefficient matrix. This is the independent oracle for
 *  dual_amplitudes: the result must match it entrywise. */
inline AmplitudeMatrix reexpand_check(const CloningState& s, const BellFamily& family) {
    int n = s.dim;
    if (family.dim != n) throw std::invalid_argument("reexpand_check: dimension mismatch");
    AmplitudeMatrix b(n);
    for (int m = 0; m < n; ++m)
        for (int ph = 0; ph < n; ++ph) {
            const Ket& rb = family.state(m, ph);
            // coefficient = <B_{m,ph}(R,B) conj(B_{m,ph})(A,C) | joint>
            camp s_coeff(0, 0);
            for (int r = 0; r < n; ++r)
                for (int a = 0; a < n; ++a)
                    for (int bb = 0; bb < n; ++bb) {
                        camp left = std::conj(rb[r * n + bb]);
                        if (left == camp(0, 0)) continue;
                        for (int c = 0; c < n; ++c) {
                            camp right = rb[a * n + c]; // conj(conj(..)) of the (A,C) factor
                            if (right == camp(0, 0)) continue;
                            s_coeff += left * right * s.joint[((r * n + a) * n + bb) * n + c];
                        }
                    }
            b.at(m, ph) = s_coeff;
        }
    return b;
}

/** Projects register R onto conj(psi) and renormalizes, leaving the
 *  three-register state sum_{m,n} a_{m,n} U_{m,n}|psi>_A B'_{m,n}(B,C). */
inline Ket project_reference(const Ket& joint, const Ket& psi) {
    int n = psi.dim;
    int nnn = n * n * n;
    if (joint.dim != nnn * n) throw std::invalid_argument("project_reference: dimension mismatch");
    Ket out(nnn);
    for (int r = 0; r < n; ++r) {
        camp w = psi[r]; // <conj(psi)|r> = psi_r
        if (w == camp(0, 0)) continue;
        for (int rest = 0; rest < nnn; ++rest) out[rest] += w * joint[r * nnn + rest];
    }
    double nn = norm(out);
    if (nn < kTol) throw std::runtime_error("project_reference: zero-probability projection");
    for (camp& z : out.amps) z /= nn;
    return out;
}

inline Ket project_reference(const CloningState& s, const Ket& psi) {
    if (psi.dim != s.dim) throw std::invalid_argument("project_reference: dimension mismatch");
    return project_reference(s.joint, psi);
}

/** Reduced density operators (rho_A, rho_B) of the two clones of |psi>:
 *  rho_A = sum |a_{m,n}|^2 U_{m,n}|psi><psi|U_{m,n}^dag and likewise for
 *  rho_B with the dual amplitudes. */
inline std::pair<Op, Op> clone_densities(const AmplitudeMatrix& a, BellRule rule,
                                         const Ket& psi) {
    int n = a.dim;
    if (psi.dim != n) throw std::invalid_argument("clone_densities: dimension mismatch");
    AmplitudeMatrix b = dual_amplitudes(a, rule);
    Op rho_a(n), rho_b(n);
    for (int m = 0; m < n; ++m)
        for (int ph = 0; ph < n; ++ph) {
            Op shifted = density(apply(error_operator(rule, n, m, ph), psi));
            rho_a = op_add(rho_a, op_scale(shifted, std::norm(a.at(m, ph))));
            rho_b = op_add(rho_b, op_scale(shifted, std::norm(b.at(m, ph))));
        }
    return {rho_a, rho_b};
}

/** Fidelity and disturbances in the encoding basis: F = sum_n |a_{0,n}|^2,
 *  D_i = sum_n |a_{i,n}|^2 for i = 1..N-1, so F + sum D_i = 1. */
inline std::pair<double, std::vector<double>> fidelity_and_disturbances(
    const AmplitudeMatrix& a) {
    int n = a.dim;
    std::vector<double> rows(static_cast<std::size_t>(n), 0.0);
    for (int m = 0; m < n; ++m)
        for (int ph = 0; ph < n; ++ph) rows[static_cast<std::size_t>(m)] += std::norm(a.at(m, ph));
    double f = rows[0];
    rows.erase(rows.begin());
    return {f, rows};
}

inline double entropy_bits(const std::vector<double>& p) {
    double h = 0;
    for (double x : p)
        if (x > 0) h -= x * std::log2(x); // 0*log(0) := 0
    return h;
}

/** Shannon entropies (bits) of p = |a|^2 and q = |dual(a)|^2. The
 *  no-cloning uncertainty relation guarantees H_p + H_q >= 2*log2(N). */
inline std::pair<double, double> entropic_bound(const AmplitudeMatrix& a, BellRule rule) {
    AmplitudeMatrix b = dual_amplitudes(a, rule);
    std::vector<double> p, q;
    p.reserve(a.a.size());
    q.reserve(b.a.size());
    for (camp z : a.a) p.push_back(std::norm(z));
    for (camp z : b.a) q.push_back(std::norm(z));
    return {entropy_bits(p), entropy_bits(q)};
}

/** Mutual information (bits) of the symmetric N-ary channel with collapse
 *  probabilities (F, D_1..D_{N-1}) under a uniform input prior:
 *  I = log2(N) + F*log2(F) + sum_i D_i*log2(D_i). Requires all D_i equal. */
inline double mutual_information(double f, const std::vector<double>& d, int n) {
    if (static_cast<int>(d.size()) != n - 1)
        throw std::invalid_argument("mutual_information: expected N-1 disturbances");
    double total = f;
    for (double x : d) total += x;
    if (std::abs(total - 1.0) > 1e-9)
        throw std::invalid_argument("mutual_information: probabilities must sum to 1");
    for (double x : d)
        if (std::abs(x - d[0]) > 1e-9)
            throw std::invalid_argument("mutual_information: disturbances must be symmetric");
    double i = std::log2(static_cast<double>(n));
    if (f > 0) i += f * std::log2(f);
    for (double x : d)
        if (x > 0) i += x * std::log2(x);
    return i;
}

} // namespace cloneforge

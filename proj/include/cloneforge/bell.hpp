#pragma once

#include <optional>

#include "cloneforge/bases.hpp"
#include "cloneforge/qlinalg.hpp"

/** @file
 * Generalized Bell-state families over two N-level registers and the
 * machinery around them: error operators, permutation operators, the
 * eigenspace projectors of the cyclic shift, and the duality bijections
 * between the Fourier-type and Hadamard-type families.
 *
 * Three construction rules are supported:
 *   fourier    B_{m,n}  = N^{-1/2} sum_k exp(2*pi*i*k*n/N) |k>|k+m>
 *   generalized: the same sum over an arbitrary orthonormal basis, with
 *              the first register taken in the conjugate basis
 *   hadamard   B^H_{m,n} = sum_k H_{k,n} |k>|k(+)m>   (Klein shift, N=4)
 */

namespace cloneforge {

enum class BellRule { fourier, generalized, hadamard };

inline Ket fourier_bell(int n, int m, int ph) {
    if (m < 0 || m >= n || ph < 0 || ph >= n)
        throw std::invalid_argument("fourier_bell: index out of range");
    Ket v(n * n);
    double s = 1.0 / std::sqrt(static_cast<double>(n));
    for (int k = 0; k < n; ++k)
        v[k * n + mod(k + m, n)] = s * root_of_unity(n, k * ph);
    return v;
}

/** Bell state generalized to an arbitrary basis: the first register runs
 *  over the conjugate basis kets, so the computational basis reproduces
 *  fourier_bell exactly. */
inline Ket generalized_bell(const OrthonormalBasis& b, int m, int ph) {
    int n = b.dim;
    if (m < 0 || m >= n || ph < 0 || ph >= n)
        throw std::invalid_argument("generalized_bell: index out of range");
    Ket v(n * n);
    double s = 1.0 / std::sqrt(static_cast<double>(n));
    for (int k = 0; k < n; ++k) {
        camp phase = s * root_of_unity(n, k * ph);
        int km = mod(k + m, n);
        for (int p = 0; p < n; ++p) {
            camp left = std::conj(b.mat.at(p, k));
            if (left == camp(0, 0)) continue;
            for (int q = 0; q < n; ++q)
                v[p * n + q] += phase * left * b.mat.at(q, km);
        }
    }
    return v;
}

/// Hadamard Bell state over a basis: sum_k H_{k,n} |psi*_k>|psi_{k(+)m}>.
inline Ket hadamard_bell_over(const OrthonormalBasis& b, int m, int ph) {
    if (b.dim != 4) throw std::invalid_argument("hadamard_bell_over: requires dim 4");
    if (m < 0 || m >= 4 || ph < 0 || ph >= 4)
        throw std::invalid_argument("hadamard_bell_over: index out of range");
    const OrthonormalBasis h = hadamard_basis();
    Ket v(16);
    for (int k = 0; k < 4; ++k) {
        camp coeff = h.mat.at(k, ph);
        int km = hadamard_sum(k, m);
        for (int p = 0; p < 4; ++p) {
            camp left = std::conj(b.mat.at(p, k));
            if (left == camp(0, 0)) continue;
            for (int q = 0; q < 4; ++q)
                v[p * 4 + q] += coeff * left * b.mat.at(q, km);
        }
    }
    return v;
}

inline Ket hadamard_bell(int m, int ph) {
    return hadamard_bell_over(computational_basis(4), m, ph);
}

/** An indexed family of N^2 two-register Bell states. The states form an
 *  orthonormal basis of the pair space and each one is maximally
 *  entangled (partial trace over either register = I/N). */
struct BellFamily {
    int dim = 0;
    BellRule rule = BellRule::fourier;
    std::vector<Ket> states; // indexed m*dim + n
    std::optional<OrthonormalBasis> basis;

    const Ket& state(int m, int n) const {
        if (m < 0 || m >= dim || n < 0 || n >= dim)
            throw std::invalid_argument("BellFamily: index out of range");
        return states[static_cast<std::size_t>(m) * dim + n];
    }
};

inline BellFamily fourier_family(int n) {
    BellFamily f{n, BellRule::fourier, {}, std::nullopt};
    f.states.reserve(static_cast<std::size_t>(n) * n);
    for (int m = 0; m < n; ++m)
        for (int ph = 0; ph < n; ++ph) f.states.push_back(fourier_bell(n, m, ph));
    return f;
}

inline BellFamily generalized_family(const OrthonormalBasis& b) {
    BellFamily f{b.dim, BellRule::generalized, {}, b};
    f.states.reserve(static_cast<std::size_t>(b.dim) * b.dim);
    for (int m = 0; m < b.dim; ++m)
        for (int ph = 0; ph < b.dim; ++ph) f.states.push_back(generalized_bell(b, m, ph));
    return f;
}

inline BellFamily hadamard_family() {
    BellFamily f{4, BellRule::hadamard, {}, std::nullopt};
    for (int m = 0; m < 4; ++m)
        for (int ph = 0; ph < 4; ++ph) f.states.push_back(hadamard_bell(m, ph));
    return f;
}

/// Hadamard-rule family constructed over an arbitrary 4-dim basis.
inline BellFamily hadamard_family_over(const OrthonormalBasis& b) {
    BellFamily f{4, BellRule::hadamard, {}, b};
    for (int m = 0; m < 4; ++m)
        for (int ph = 0; ph < 4; ++ph) f.states.push_back(hadamard_bell_over(b, m, ph));
    return f;
}

/** Family of a given rule over the computational registers (fourier or
 *  hadamard) or over an explicit basis (generalized / hadamard). */
inline BellFamily bell_family(BellRule rule, int n) {
    switch (rule) {
        case BellRule::fourier: return fourier_family(n);
        case BellRule::hadamard:
            if (n != 4) throw std::invalid_argument("bell_family: hadamard rule requires N=4");
            return hadamard_family();
        default: throw std::invalid_argument("bell_family: generalized rule needs a basis");
    }
}

/** Error operators. The fourier rule gives
 *      U_{m,n} = sum_k exp(2*pi*i*k*n/N) |k+m><k|
 *  (shift by m, phase pattern n; U_{0,0} = I), the hadamard rule gives
 *      U^H_{m,n} = 2 sum_k H_{k,n} |k(+)m><k|        (N=4 only).
 *  Both satisfy (I (x) U_{m,n}) B_{0,0} = B_{m,n} in the matching family. */
inline Op error_operator(BellRule rule, int n, int m, int ph) {
    if (m < 0 || m >= n || ph < 0 || ph >= n)
        throw std::invalid_argument("error_operator: index out of range");
    if (rule == BellRule::fourier) {
        Op u(n);
        for (int k = 0; k < n; ++k)
            u.at(mod(k + m, n), k) = root_of_unity(n, k * ph);
        return u;
    }
    if (rule == BellRule::hadamard) {
        if (n != 4) throw std::invalid_argument("error_operator: hadamard rule requires N=4");
        const OrthonormalBasis h = hadamard_basis();
        Op u(4);
        for (int k = 0; k < 4; ++k)
            u.at(hadamard_sum(k, m), k) = 2.0 * h.mat.at(k, ph);
        return u;
    }
    throw std::invalid_argument("error_operator: unsupported rule");
}

/// Generator of cyclic permutations: C|l> = |(l+1) mod N>, C^N = I.
inline Op cyclic_perm(int n) {
    if (n < 2) throw std::invalid_argument("cyclic_perm: dim must be >= 2");
    Op c(n);
    for (int l = 0; l < n; ++l) c.at(mod(l + 1, n), l) = camp(1, 0);
    return c;
}

/** Klein translations on quartit labels: P_i|k> = |i(+)k>. P_0 = I, P_1
 *  switches 0<->1 and 2<->3, P_2 switches 0<->2 and 1<->3, P_3 switches
 *  0<->3 and 1<->2; P_i P_j = P_{i(+)j}. */
inline Op pair_perm(int i) {
    if (i < 0 || i >= 4) throw std::invalid_argument("pair_perm: index out of range");
    Op p(4);
    for (int k = 0; k < 4; ++k) p.at(hadamard_sum(i, k), k) = camp(1, 0);
    return p;
}

/// The same permutations acting on the primed (Hadamard) labels: H P_i H.
inline Op pair_perm_primed(int i) {
    const Op h = hadamard_basis().mat;
    return op_mul(h, op_mul(pair_perm(i), h));
}

/** Projector onto the eigenspace of C (x) C with eigenvalue exp(-2*pi*i*n/N),
 *  computed as sum_m |B_{m,n}><B_{m,n}| and cross-checked against the
 *  phase-weighted permutation sum (1/N) sum_k exp(2*pi*i*n*k/N) (C (x) C)^k. */
inline Op eigenspace_projector(int ph, int n) {
    if (ph < 0 || ph >= n) throw std::invalid_argument("eigenspace_projector: index out of range");
    Op p(n * n);
    for (int m = 0; m < n; ++m) p = op_add(p, density(fourier_bell(n, m, ph)));

    Op cc = op_tensor(cyclic_perm(n), cyclic_perm(n));
    Op q(n * n);
    Op power = op_identity(n * n);
    for (int k = 0; k < n; ++k) {
        q = op_add(q, op_scale(power, root_of_unity(n, ph * k)));
        power = op_mul(cc, power);
    }
    q = op_scale(q, camp(1.0 / n, 0));
    if (max_abs_diff(p, q) >= kTol)
        throw std::runtime_error("eigenspace_projector: the two constructions disagree");
    return p;
}

/** Checks the bijection B^H_{i,j} = 2 H_{i,j} B'^H_{j,i} between the
 *  Hadamard Bell states and their primed-basis counterparts, over the
 *  full 16-index sweep. */
inline bool hadamard_bijection_check(double tol = kTol) {
    const OrthonormalBasis h = hadamard_basis();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Ket lhs = hadamard_bell(i, j);
            Ket rhs = scale(hadamard_bell_over(h, j, i), 2.0 * h.mat.at(i, j));
            if (max_abs_diff(lhs, rhs) >= tol) return false;
        }
    return true;
}

/** Parity of a two-register state under P (x) P; returns +1 or -1, or
 *  throws if the state is not an eigenstate. */
inline int permutation_parity(const Ket& state, const Op& p, double tol = kTol) {
    Ket mapped = apply(op_tensor(p, p), state);
    if (max_abs_diff(mapped, state) < tol) return +1;
    if (max_abs_diff(mapped, scale(state, camp(-1, 0))) < tol) return -1;
    throw std::runtime_error("permutation_parity: not an eigenstate");
}

/// The (P1, P3, P1', P3') parity signature of a Hadamard Bell state.
inline std::array<int, 4> hadamard_parity_signature(int m, int n) {
    Ket s = hadamard_bell(m, n);
    return {permutation_parity(s, pair_perm(1)), permutation_parity(s, pair_perm(3)),
            permutation_parity(s, pair_perm_primed(1)),
            permutation_parity(s, pair_perm_primed(3))};
}

} // namespace cloneforge

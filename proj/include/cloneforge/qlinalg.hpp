#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

/** @file
 * Minimal dense complex linear algebra over small Hilbert spaces:
 * kets, operators, tensor products, partial traces, projections.
 *
 * Everything is value-semantic and immutable after construction; all
 * operations are pure, so concurrent reads are safe. Dimensions stay
 * tiny (N <= 8, joint states <= 4096 amplitudes), so storage is dense
 * and comparisons use an absolute tolerance of 1e-12.
 */

namespace cloneforge {

using camp = std::complex<double>;

/// Absolute tolerance for all amplitude-level comparisons.
inline constexpr double kTol = 1e-12;

inline bool is_finite(camp z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/** A ket: a complex amplitude vector of fixed dimension. */
struct Ket {
    int dim = 0;
    std::vector<camp> amps;

    Ket() = default;
    explicit Ket(int d) : dim(d), amps(static_cast<std::size_t>(d), camp(0, 0)) {
        if (d <= 0) throw std::invalid_argument("Ket: dimension must be positive");
    }
    Ket(int d, std::vector<camp> a) : dim(d), amps(std::move(a)) {
        if (d <= 0) throw std::invalid_argument("Ket: dimension must be positive");
        if (amps.size() != static_cast<std::size_t>(d))
            throw std::invalid_argument("Ket: amplitude count does not match dimension");
        for (camp z : amps)
            if (!is_finite(z)) throw std::invalid_argument("Ket: non-finite amplitude");
    }

    camp& operator[](int i) { return amps[static_cast<std::size_t>(i)]; }
    camp operator[](int i) const { return amps[static_cast<std::size_t>(i)]; }
};

/** A square operator stored row-major. */
struct Op {
    int dim = 0;
    std::vector<camp> entries;

    Op() = default;
    explicit Op(int d) : dim(d), entries(static_cast<std::size_t>(d) * d, camp(0, 0)) {
        if (d <= 0) throw std::invalid_argument("Op: dimension must be positive");
    }

    camp& at(int i, int j) { return entries[static_cast<std::size_t>(i) * dim + j]; }
    camp at(int i, int j) const { return entries[static_cast<std::size_t>(i) * dim + j]; }
};

/// Computational basis ket |k>.
inline Ket basis_ket(int dim, int k) {
    if (k < 0 || k >= dim) throw std::invalid_argument("basis_ket: index out of range");
    Ket v(dim);
    v[k] = camp(1, 0);
    return v;
}

/// <a|b>, conjugate-linear in the first argument.
inline camp inner(const Ket& a, const Ket& b) {
    if (a.dim != b.dim) throw std::invalid_argument("inner: dimension mismatch");
    camp s(0, 0);
    for (int i = 0; i < a.dim; ++i) s += std::conj(a[i]) * b[i];
    return s;
}

inline double norm(const Ket& v) { return std::sqrt(std::abs(inner(v, v))); }

inline Ket normalized(const Ket& v) {
    double n = norm(v);
    if (n < kTol) throw std::runtime_error("normalized: zero vector");
    Ket w = v;
    for (camp& z : w.amps) z /= n;
    return w;
}

inline bool is_normalized(const Ket& v, double tol = kTol) {
    return std::abs(inner(v, v).real() - 1.0) < tol && std::abs(inner(v, v).imag()) < tol;
}

/** Kronecker product of kets; index (i,j) flattens to i*dim(b)+j. */
inline Ket tensor(const Ket& a, const Ket& b) {
    Ket r(a.dim * b.dim);
    for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < b.dim; ++j)
            r[i * b.dim + j] = a[i] * b[j];
    return r;
}

inline Ket conjugate(const Ket& v) {
    Ket r = v;
    for (camp& z : r.amps) z = std::conj(z);
    return r;
}

inline Ket scale(const Ket& v, camp c) {
    Ket r = v;
    for (camp& z : r.amps) z *= c;
    return r;
}

inline Ket add(const Ket& a, const Ket& b) {
    if (a.dim != b.dim) throw std::invalid_argument("add: dimension mismatch");
    Ket r = a;
    for (int i = 0; i < a.dim; ++i) r[i] += b[i];
    return r;
}

inline double max_abs_diff(const Ket& a, const Ket& b) {
    if (a.dim != b.dim) throw std::invalid_argument("max_abs_diff: dimension mismatch");
    double m = 0;
    for (int i = 0; i < a.dim; ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

/// Two kets equal up to a global phase iff |<a|b>| = 1 for unit vectors.
inline bool equal_up_to_phase(const Ket& a, const Ket& b, double tol = kTol) {
    return std::abs(std::abs(inner(a, b)) - 1.0) < tol;
}

inline Op op_identity(int dim) {
    Op u(dim);
    for (int i = 0; i < dim; ++i) u.at(i, i) = camp(1, 0);
    return u;
}

/// |a><b|
inline Op outer(const Ket& a, const Ket& b) {
    if (a.dim != b.dim) throw std::invalid_argument("outer: dimension mismatch");
    Op r(a.dim);
    for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < a.dim; ++j)
            r.at(i, j) = a[i] * std::conj(b[j]);
    return r;
}

inline Op op_add(const Op& a, const Op& b) {
    if (a.dim != b.dim) throw std::invalid_argument("op_add: dimension mismatch");
    Op r = a;
    for (std::size_t i = 0; i < r.entries.size(); ++i) r.entries[i] += b.entries[i];
    return r;
}

inline Op op_scale(const Op& a, camp c) {
    Op r = a;
    for (camp& z : r.entries) z *= c;
    return r;
}

inline Op op_mul(const Op& a, const Op& b) {
    if (a.dim != b.dim) throw std::invalid_argument("op_mul: dimension mismatch");
    Op r(a.dim);
    for (int i = 0; i < a.dim; ++i)
        for (int k = 0; k < a.dim; ++k) {
            camp aik = a.at(i, k);
            if (aik == camp(0, 0)) continue;
            for (int j = 0; j < a.dim; ++j) r.at(i, j) += aik * b.at(k, j);
        }
    return r;
}

inline Op adjoint(const Op& a) {
    Op r(a.dim);
    for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < a.dim; ++j)
            r.at(i, j) = std::conj(a.at(j, i));
    return r;
}

inline Op conjugate(const Op& a) {
    Op r = a;
    for (camp& z : r.entries) z = std::conj(z);
    return r;
}

inline Ket apply(const Op& u, const Ket& v) {
    if (u.dim != v.dim) throw std::invalid_argument("apply: dimension mismatch");
    Ket r(v.dim);
    for (int i = 0; i < v.dim; ++i) {
        camp s(0, 0);
        for (int j = 0; j < v.dim; ++j) s += u.at(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

inline Op op_tensor(const Op& a, const Op& b) {
    Op r(a.dim * b.dim);
    for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < a.dim; ++j)
            for (int k = 0; k < b.dim; ++k)
                for (int l = 0; l < b.dim; ++l)
                    r.at(i * b.dim + k, j * b.dim + l) = a.at(i, j) * b.at(k, l);
    return r;
}

inline camp trace(const Op& a) {
    camp s(0, 0);
    for (int i = 0; i < a.dim; ++i) s += a.at(i, i);
    return s;
}

inline double max_abs_diff(const Op& a, const Op& b) {
    if (a.dim != b.dim) throw std::invalid_argument("max_abs_diff: dimension mismatch");
    double m = 0;
    for (std::size_t i = 0; i < a.entries.size(); ++i)
        m = std::max(m, std::abs(a.entries[i] - b.entries[i]));
    return m;
}

inline bool is_unitary(const Op& u, double tol = kTol) {
    return max_abs_diff(op_mul(adjoint(u), u), op_identity(u.dim)) < tol;
}

inline bool is_hermitian(const Op& a, double tol = kTol) {
    return max_abs_diff(a, adjoint(a)) < tol;
}

enum class Subsystem { A, B };

/** Partial trace of rho acting on A (x) B, keeping the chosen factor.
 *  Trace is preserved and Hermitian inputs stay Hermitian. */
inline Op partial_trace(const Op& rho, Subsystem keep, int dimA, int dimB) {
    if (rho.dim != dimA * dimB) throw std::invalid_argument("partial_trace: dimension mismatch");
    if (keep == Subsystem::A) {
        Op r(dimA);
        for (int i = 0; i < dimA; ++i)
            for (int j = 0; j < dimA; ++j) {
                camp s(0, 0);
                for (int k = 0; k < dimB; ++k) s += rho.at(i * dimB + k, j * dimB + k);
                r.at(i, j) = s;
            }
        return r;
    }
    Op r(dimB);
    for (int i = 0; i < dimB; ++i)
        for (int j = 0; j < dimB; ++j) {
            camp s(0, 0);
            for (int k = 0; k < dimA; ++k) s += rho.at(k * dimB + i, k * dimB + j);
            r.at(i, j) = s;
        }
    return r;
}

/// Density operator |v><v|.
inline Op density(const Ket& v) { return outer(v, v); }

inline int mod(int x, int n) {
    int r = x % n;
    return r < 0 ? r + n : r;
}

/// exp(2*pi*i*k/n)
inline camp root_of_unity(int n, int k) {
    constexpr double two_pi = 6.283185307179586476925286766559;
    double t = two_pi * static_cast<double>(mod(k, n)) / static_cast<double>(n);
    return camp(std::cos(t), std::sin(t));
}

} // namespace cloneforge

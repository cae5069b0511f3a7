#pragma once

#include <array>
#include <string>

#include "cloneforge/qlinalg.hpp"

/** @file
 * Orthonormal bases of the workbench (computational, Fourier, Hadamard,
 * interferometric pulse-array) and the index groups that organize them:
 * ordinary mod-N addition and the Klein four-group "Hadamard sum".
 */

namespace cloneforge {

/** An orthonormal basis of C^dim. Column j of `mat` is the ket of basis
 *  vector j, so mat.at(i,j) = <i|v_j>. */
struct OrthonormalBasis {
    int dim = 0;
    Op mat;
    std::string label;

    Ket ket(int j) const {
        if (j < 0 || j >= dim) throw std::invalid_argument("OrthonormalBasis: index out of range");
        Ket v(dim);
        for (int i = 0; i < dim; ++i) v[i] = mat.at(i, j);
        return v;
    }
};

inline bool is_orthonormal(const OrthonormalBasis& b, double tol = kTol) {
    return is_unitary(b.mat, tol);
}

inline OrthonormalBasis computational_basis(int n) {
    if (n < 2) throw std::invalid_argument("computational_basis: dim must be >= 2");
    return OrthonormalBasis{n, op_identity(n), "computational"};
}

/// Discrete Fourier basis: entry (k,l) = exp(2*pi*i*k*l/N)/sqrt(N).
inline OrthonormalBasis fourier_basis(int n) {
    if (n < 2) throw std::invalid_argument("fourier_basis: dim must be >= 2");
    Op m(n);
    double s = 1.0 / std::sqrt(static_cast<double>(n));
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
            m.at(k, l) = s * root_of_unity(n, k * l);
    return OrthonormalBasis{n, m, "fourier"};
}

/** The real symmetric self-inverse 4x4 double-Hadamard matrix
 *
 *      1/2 * [ +1 +1 +1 +1 ]
 *            [ +1 +1 -1 -1 ]
 *            [ +1 -1 +1 -1 ]
 *            [ +1 -1 -1 +1 ]
 */
inline OrthonormalBasis hadamard_basis() {
    static constexpr int sign[4][4] = {
        {+1, +1, +1, +1},
        {+1, +1, -1, -1},
        {+1, -1, +1, -1},
        {+1, -1, -1, +1},
    };
    Op m(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            m.at(i, j) = camp(0.5 * sign[i][j], 0);
    return OrthonormalBasis{4, m, "hadamard"};
}

/** The two unbiased quartit bases realized by a 2x2 pulse array, expressed
 *  in the product coordinates (phi11, phi12, phi21, phi22). Their overlap
 *  matrix <i|j'> reproduces hadamard_basis() entrywise. */
inline std::pair<OrthonormalBasis, OrthonormalBasis> interferometric_bases() {
    const double h = 1.0 / std::sqrt(2.0);
    // |0> = (phi11+phi12)/sqrt2, |1> = (phi11-phi12)/sqrt2,
    // |2> = (phi21+phi22)/sqrt2, |3> = (phi21-phi22)/sqrt2
    const double unprimed[4][4] = {
        {h, h, 0, 0},
        {h, -h, 0, 0},
        {0, 0, h, h},
        {0, 0, h, -h},
    };
    // |0'> = (phi11+phi21)/sqrt2, |1'> = (phi11-phi21)/sqrt2,
    // |2'> = (phi12+phi22)/sqrt2, |3'> = (phi12-phi22)/sqrt2
    const double primed[4][4] = {
        {h, 0, h, 0},
        {h, 0, -h, 0},
        {0, h, 0, h},
        {0, h, 0, -h},
    };
    Op mu(4), mp(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            mu.at(i, j) = camp(unprimed[j][i], 0); // row i = phi coordinate, col j = ket
            mp.at(i, j) = camp(primed[j][i], 0);
        }
    return {OrthonormalBasis{4, mu, "interferometric"},
            OrthonormalBasis{4, mp, "interferometric-primed"}};
}

/// Overlap matrix <v_i|w_j> between two bases over the same coordinates.
inline Op basis_overlaps(const OrthonormalBasis& v, const OrthonormalBasis& w) {
    if (v.dim != w.dim) throw std::invalid_argument("basis_overlaps: dimension mismatch");
    return op_mul(adjoint(v.mat), w.mat);
}

/// True iff |<v_i|w_j>|^2 = 1/N for all pairs.
inline bool mutually_unbiased(const OrthonormalBasis& v, const OrthonormalBasis& w,
                              double tol = kTol) {
    Op o = basis_overlaps(v, w);
    double target = 1.0 / static_cast<double>(v.dim);
    for (const camp& z : o.entries)
        if (std::abs(std::norm(z) - target) >= tol) return false;
    return true;
}

/** A commutative group on indices {0..dim-1} with identity 0, stored as an
 *  explicit sum table so that mod-N addition and the Klein four-group flow
 *  through identical code paths. */
struct IndexGroup {
    int dim = 0;
    std::vector<int> table; // row-major dim*dim

    int sum(int i, int j) const {
        if (i < 0 || i >= dim || j < 0 || j >= dim)
            throw std::invalid_argument("IndexGroup: index out of range");
        return table[static_cast<std::size_t>(i) * dim + j];
    }
};

inline IndexGroup mod_group(int n) {
    IndexGroup g{n, std::vector<int>(static_cast<std::size_t>(n) * n)};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            g.table[static_cast<std::size_t>(i) * n + j] = mod(i + j, n);
    return g;
}

/** The Hadamard sum: (i+j) mod 4 except 1(+)1 = 3(+)3 = 0 and
 *  1(+)3 = 3(+)1 = 2, i.e. the Klein four-group on {0,1,2,3}. */
inline IndexGroup klein_group() {
    IndexGroup g{4, std::vector<int>(16)};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            int s = mod(i + j, 4);
            if ((i == 1 || i == 3) && (j == 1 || j == 3))
                s = (i == j) ? 0 : 2;
            g.table[static_cast<std::size_t>(i) * 4 + j] = s;
        }
    return g;
}

inline int hadamard_sum(int i, int j) {
    static const IndexGroup g = klein_group();
    return g.sum(i, j);
}

/// Full table check: commutative, associative, identity 0, inverses exist.
inline bool is_valid_group(const IndexGroup& g) {
    int n = g.dim;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int s = g.sum(i, j);
            if (s < 0 || s >= n) return false;
            if (s != g.sum(j, i)) return false;
        }
    for (int i = 0; i < n; ++i)
        if (g.sum(0, i) != i) return false;
    for (int i = 0; i < n; ++i) {
        bool has_inverse = false;
        for (int j = 0; j < n; ++j) has_inverse |= (g.sum(i, j) == 0);
        if (!has_inverse) return false;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (g.sum(g.sum(i, j), k) != g.sum(i, g.sum(j, k))) return false;
    return true;
}

/** Row-group property: sqrt(N)*A(i,j) * sqrt(N)*A(i,k) = sqrt(N)*A(i, j o k)
 *  for all i,j,k. Holds for the Fourier basis with mod-N addition and for
 *  the Hadamard basis with the Klein group, but not across the pairings. */
inline bool row_group_check(const OrthonormalBasis& b, const IndexGroup& g,
                            double tol = kTol) {
    if (b.dim != g.dim) throw std::invalid_argument("row_group_check: dimension mismatch");
    double s = std::sqrt(static_cast<double>(b.dim));
    for (int i = 0; i < b.dim; ++i)
        for (int j = 0; j < b.dim; ++j)
            for (int k = 0; k < b.dim; ++k) {
                camp lhs = (s * b.mat.at(i, j)) * (s * b.mat.at(i, k));
                camp rhs = s * b.mat.at(i, g.sum(j, k));
                if (std::abs(lhs - rhs) >= tol) return false;
            }
    return true;
}

} // namespace cloneforge

#pragma once

#include <numeric>

#include "cloneforge/cloner.hpp"

/** @file
 * Covariant-cloner constraint solving. The overlap matrix V between two
 * Bell families turns the covariance requirement into the relation
 * "a_{i,j} = a_{p,q} whenever V_{i,j;p,q} != 0"; its transitive closure
 * partitions the N^2 amplitude indices into equivalence classes, the free
 * parameters of the most general cloner invariant in both bases.
 */

namespace cloneforge {

/** V[(i,j),(k,l)] = <B_{i,j} | B~_{k,l}>, an N^2 x N^2 unitary change of
 *  basis between two Bell families. Row/column index is i*N + j. */
struct OverlapMatrix {
    int dim = 0; // N, the single-register dimension
    Op v;        // (N^2) x (N^2)
};

inline OverlapMatrix overlap_matrix(const BellFamily& fam1, const BellFamily& fam2) {
    if (fam1.dim != fam2.dim) throw std::invalid_argument("overlap_matrix: dimension mismatch");
    int nn = fam1.dim * fam1.dim;
    Op v(nn);
    for (int r = 0; r < nn; ++r)
        for (int c = 0; c < nn; ++c)
            v.at(r, c) = inner(fam1.states[static_cast<std::size_t>(r)],
                               fam2.states[static_cast<std::size_t>(c)]);
    return OverlapMatrix{fam1.dim, std::move(v)};
}

/** A partition of the N x N amplitude indices into labeled classes; each
 *  class is one free parameter of the covariant cloner. Classes are
 *  canonically ordered by their smallest member in row-major order and
 *  labeled a, b, c, ... */
struct AmplitudePattern {
    int dim = 0;
    std::vector<std::vector<std::array<int, 2>>> classes;
    std::vector<std::string> labels;

    int class_of(int m, int n) const {
        for (std::size_t k = 0; k < classes.size(); ++k)
            for (const auto& e : classes[k])
                if (e[0] == m && e[1] == n) return static_cast<int>(k);
        throw std::invalid_argument("AmplitudePattern: index not covered");
    }
};

namespace detail {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    void merge(int a, int b) {
        int ra = find(a), rb = find(b);
        if (ra != rb) parent[static_cast<std::size_t>(std::max(ra, rb))] = std::min(ra, rb);
    }
};

inline std::string class_label(std::size_t k) {
    std::string s;
    // a, b, ..., z, aa, ab, ... (bijective base 26)
    ++k;
    while (k > 0) {
        --k;
        s.insert(s.begin(), static_cast<char>('a' + k % 26));
        k /= 26;
    }
    return s;
}

inline AmplitudePattern pattern_from_unionfind(int dim, UnionFind& uf) {
    int nn = dim * dim;
    std::vector<std::vector<std::array<int, 2>>> groups;
    std::vector<int> root_to_group(static_cast<std::size_t>(nn), -1);
    for (int idx = 0; idx < nn; ++idx) { // row-major sweep gives canonical order
        int root = uf.find(idx);
        if (root_to_group[static_cast<std::size_t>(root)] < 0) {
            root_to_group[static_cast<std::size_t>(root)] = static_cast<int>(groups.size());
            groups.emplace_back();
        }
        groups[static_cast<std::size_t>(root_to_group[static_cast<std::size_t>(root)])].push_back(
            {idx / dim, idx % dim});
    }
    AmplitudePattern p{dim, std::move(groups), {}};
    for (std::size_t k = 0; k < p.classes.size(); ++k) p.labels.push_back(class_label(k));
    return p;
}

} // namespace detail

/** Transitive closure of the relation (i,j) ~ (k,l) iff |V| exceeds tol.
 *  All genuine entries in scope have modulus >= 1/N^2, so tol = 1e-9
 *  leaves orders of magnitude of separation. */
inline AmplitudePattern equivalence_classes(const OverlapMatrix& v, double tol = 1e-9) {
    int nn = v.dim * v.dim;
    detail::UnionFind uf(nn);
    for (int r = 0; r < nn; ++r)
        for (int c = 0; c < nn; ++c)
            if (std::abs(v.v.at(r, c)) > tol) uf.merge(r, c);
    return detail::pattern_from_unionfind(v.dim, uf);
}

/// Builds the rule's family over a basis (generalized or Klein-shifted).
inline BellFamily family_over(BellRule rule, const OrthonormalBasis& basis) {
    if (rule == BellRule::hadamard) return hadamard_family_over(basis);
    return generalized_family(basis);
}

/** The amplitude pattern of the cloner covariant in basis1 and basis2:
 *  build both families under the rule, take overlaps, close the relation. */
inline AmplitudePattern covariant_pattern(const OrthonormalBasis& basis1,
                                          const OrthonormalBasis& basis2, BellRule rule) {
    if (basis1.dim != basis2.dim)
        throw std::invalid_argument("covariant_pattern: dimension mismatch");
    BellFamily f1 = family_over(rule, basis1);
    BellFamily f2 = family_over(rule, basis2);
    return equivalence_classes(overlap_matrix(f1, f2));
}

/// Amplitude matrix from pattern parameters (one value per class).
inline AmplitudeMatrix pattern_matrix(const AmplitudePattern& p,
                                      const std::vector<double>& params) {
    if (params.size() != p.classes.size())
        throw std::invalid_argument("pattern_matrix: parameter count mismatch");
    AmplitudeMatrix a(p.dim);
    for (std::size_t k = 0; k < p.classes.size(); ++k)
        for (const auto& e : p.classes[k]) a.at(e[0], e[1]) = camp(params[k], 0);
    return a;
}

/** Merges the classes named by each anchor group into one class and
 *  re-canonicalizes. Used to impose documented extra constraints on top
 *  of the raw covariance pattern. */
inline AmplitudePattern merge_pattern_classes(
    const AmplitudePattern& p,
    const std::vector<std::vector<std::array<int, 2>>>& anchor_groups) {
    detail::UnionFind uf(p.dim * p.dim);
    auto flat = [&](const std::array<int, 2>& e) { return e[0] * p.dim + e[1]; };
    for (const auto& cls : p.classes)
        for (std::size_t i = 1; i < cls.size(); ++i) uf.merge(flat(cls[0]), flat(cls[i]));
    for (const auto& group : anchor_groups)
        for (std::size_t i = 1; i < group.size(); ++i) uf.merge(flat(group[0]), flat(group[i]));
    return detail::pattern_from_unionfind(p.dim, uf);
}

/** Collapses a pattern to the three-parameter (x, y, z) form: the (0,0)
 *  singleton, the remaining first-row/first-column entries, and the
 *  interior block. Throws if some class straddles the border and the
 *  interior (then the pattern does not admit the x/y/z shape). */
inline AmplitudePattern reduce_to_xyz(const AmplitudePattern& p) {
    std::vector<std::array<int, 2>> border, interior;
    for (const auto& cls : p.classes) {
        int n_border = 0, n_interior = 0, n_corner = 0;
        for (const auto& e : cls) {
            if (e[0] == 0 && e[1] == 0) ++n_corner;
            else if (e[0] == 0 || e[1] == 0) ++n_border;
            else ++n_interior;
        }
        if (n_corner > 0 && cls.size() > 1)
            throw std::runtime_error("reduce_to_xyz: (0,0) is tied to other entries");
        if (n_border > 0 && n_interior > 0)
            throw std::runtime_error("reduce_to_xyz: pattern does not admit the x/y/z form");
        if (n_border > 0) border.push_back(cls[0]);
        if (n_interior > 0) interior.push_back(cls[0]);
    }
    AmplitudePattern merged = merge_pattern_classes(p, {border, interior});
    if (merged.classes.size() != 3)
        throw std::runtime_error("reduce_to_xyz: pattern does not admit the x/y/z form");
    merged.labels = {"x", "y", "z"};
    return merged;
}

/** True iff the Cerf state built from `a` over the computational-basis
 *  family equals the one built over the basis2 family, amplitude-wise:
 *  sum a_{m,n} B_{m,n} (x) B*_{m,n} = sum a_{i,j} B~_{i,j} (x) B~*_{i,j}. */
inline bool verify_covariance(const AmplitudeMatrix& a, const OrthonormalBasis& basis2,
                              BellRule rule, double tol = kTol) {
    int n = a.dim;
    if (basis2.dim != n) throw std::invalid_argument("verify_covariance: dimension mismatch");
    BellFamily f1 = family_over(rule, computational_basis(n));
    BellFamily f2 = family_over(rule, basis2);
    CloningState s1 = cerf_state(a, f1);
    CloningState s2 = cerf_state(a, f2);
    return max_abs_diff(s1.joint, s2.joint) < tol;
}

} // namespace cloneforge

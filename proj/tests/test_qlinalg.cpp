#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "cloneforge/qlinalg.hpp"

using namespace cloneforge;

namespace {

std::mt19937_64 rng(0xC0FFEEULL);

Ket random_ket(int dim) {
    std::normal_distribution<double> g(0.0, 1.0);
    Ket v(dim);
    for (camp& z : v.amps) z = camp(g(rng), g(rng));
    return v;
}

Op random_op(int dim) {
    std::normal_distribution<double> g(0.0, 1.0);
    Op a(dim);
    for (camp& z : a.entries) z = camp(g(rng), g(rng));
    return a;
}

} // namespace

TEST_CASE("tensor products", "[qlinalg]") {
    SECTION("basis ket product") {
        Ket v = tensor(basis_ket(2, 0), basis_ket(2, 1));
        REQUIRE(v.dim == 4);
        CHECK(std::abs(v[1] - camp(1, 0)) < kTol);
        CHECK(std::abs(v[0]) < kTol);
        CHECK(std::abs(v[2]) < kTol);
        CHECK(std::abs(v[3]) < kTol);
    }
    SECTION("linearity") {
        Ket plus(2, {camp(1 / std::sqrt(2.0), 0), camp(1 / std::sqrt(2.0), 0)});
        Ket v = tensor(plus, basis_ket(2, 0));
        CHECK(std::abs(v[0] - camp(1 / std::sqrt(2.0), 0)) < kTol);
        CHECK(std::abs(v[2] - camp(1 / std::sqrt(2.0), 0)) < kTol);
        CHECK(std::abs(v[1]) < kTol);
        CHECK(std::abs(v[3]) < kTol);
    }
    SECTION("norm is multiplicative") {
        for (int t = 0; t < 20; ++t) {
            Ket a = random_ket(3), b = random_ket(4);
            CHECK(norm(tensor(a, b)) == Catch::Approx(norm(a) * norm(b)).margin(1e-12));
        }
    }
    SECTION("associative up to index flattening") {
        Ket a = random_ket(2), b = random_ket(3), c = random_ket(4);
        CHECK(max_abs_diff(tensor(tensor(a, b), c), tensor(a, tensor(b, c))) < kTol);
    }
}

TEST_CASE("inner products", "[qlinalg]") {
    CHECK(std::abs(inner(basis_ket(2, 0), basis_ket(2, 0)) - camp(1, 0)) < kTol);
    CHECK(std::abs(inner(basis_ket(2, 0), basis_ket(2, 1))) < kTol);
    SECTION("hermitian symmetry") {
        for (int t = 0; t < 20; ++t) {
            Ket a = random_ket(5), b = random_ket(5);
            CHECK(std::abs(inner(a, b) - std::conj(inner(b, a))) < kTol);
        }
    }
    SECTION("conjugate-linear in the first argument") {
        Ket a = random_ket(3), b = random_ket(3);
        camp c(0.3, -1.2);
        CHECK(std::abs(inner(scale(a, c), b) - std::conj(c) * inner(a, b)) < 1e-12);
    }
    SECTION("dimension mismatch") {
        CHECK_THROWS_AS(inner(basis_ket(2, 0), basis_ket(3, 0)), std::invalid_argument);
    }
}

TEST_CASE("partial traces", "[qlinalg]") {
    SECTION("product state") {
        Op rho = density(tensor(basis_ket(2, 0), basis_ket(2, 0)));
        Op reduced = partial_trace(rho, Subsystem::A, 2, 2);
        CHECK(max_abs_diff(reduced, density(basis_ket(2, 0))) < kTol);
    }
    SECTION("maximally entangled pair gives I/2") {
        Ket bell(4, {camp(1 / std::sqrt(2.0), 0), camp(0, 0), camp(0, 0),
                     camp(1 / std::sqrt(2.0), 0)});
        Op reduced = partial_trace(density(bell), Subsystem::B, 2, 2);
        CHECK(max_abs_diff(reduced, op_scale(op_identity(2), camp(0.5, 0))) < kTol);
    }
    SECTION("trace preservation on random operators") {
        for (int t = 0; t < 10; ++t) {
            Op rho = random_op(6);
            CHECK(std::abs(trace(partial_trace(rho, Subsystem::A, 2, 3)) - trace(rho)) < 1e-11);
            CHECK(std::abs(trace(partial_trace(rho, Subsystem::B, 2, 3)) - trace(rho)) < 1e-11);
        }
    }
    SECTION("hermiticity preserved") {
        Op rho = random_op(6);
        rho = op_add(rho, adjoint(rho));
        CHECK(is_hermitian(partial_trace(rho, Subsystem::A, 3, 2), 1e-11));
    }
    SECTION("tracing B then A equals tracing (A,B) jointly") {
        Ket psi = normalized(random_ket(16)); // four qubit registers
        Op rho = density(psi);
        Op joint = partial_trace(rho, Subsystem::B, 4, 4); // keep last two registers
        Op step1 = partial_trace(rho, Subsystem::B, 2, 8); // drop register 1
        Op step2 = partial_trace(step1, Subsystem::B, 2, 4); // drop register 2
        CHECK(max_abs_diff(joint, step2) < kTol);
    }
    SECTION("dimension mismatch") {
        CHECK_THROWS_AS(partial_trace(random_op(5), Subsystem::A, 2, 2),
                        std::invalid_argument);
    }
}

TEST_CASE("operator helpers", "[qlinalg]") {
    SECTION("unitary application preserves norms") {
        // a random unitary via Gram-Schmidt on random columns
        Op m = random_op(4);
        Op q(4);
        for (int c = 0; c < 4; ++c) {
            Ket col(4);
            for (int r = 0; r < 4; ++r) col[r] = m.at(r, c);
            for (int prev = 0; prev < c; ++prev) {
                Ket pcol(4);
                for (int r = 0; r < 4; ++r) pcol[r] = q.at(r, prev);
                camp proj = inner(pcol, col);
                for (int r = 0; r < 4; ++r) col[r] -= proj * pcol[r];
            }
            col = normalized(col);
            for (int r = 0; r < 4; ++r) q.at(r, c) = col[r];
        }
        REQUIRE(is_unitary(q, 1e-11));
        for (int t = 0; t < 10; ++t) {
            Ket v = random_ket(4);
            CHECK(norm(apply(q, v)) == Catch::Approx(norm(v)).margin(1e-11));
        }
    }
    SECTION("non-finite amplitudes are rejected") {
        std::vector<camp> bad = {camp(1, 0), camp(std::nan(""), 0)};
        CHECK_THROWS_AS(Ket(2, bad), std::invalid_argument);
    }
}

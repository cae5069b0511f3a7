#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "cloneforge/cloner.hpp"
#include "cloneforge/report.hpp"
#include "cloneforge/verify.hpp"

using namespace cloneforge;

namespace {

std::mt19937_64 rng(0xBE11BE11ULL);

AmplitudeMatrix xyz_matrix(double x, double y, double z) {
    AmplitudeMatrix a(4);
    for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n)
            a.at(m, n) = camp((m == 0 && n == 0) ? x : (m == 0 || n == 0) ? y : z, 0);
    return a;
}

const AmplitudeMatrix kOptimal = xyz_matrix(0.75, 0.25, 1.0 / 12.0);

} // namespace

TEST_CASE("cerf state construction", "[cloner]") {
    BellFamily fourier = fourier_family(4);
    SECTION("peaked amplitudes give a product of Bell pairs") {
        CloningState s = cerf_state(peaked_amplitudes(4), fourier);
        Ket expected = tensor(fourier_bell(4, 0, 0), fourier_bell(4, 0, 0));
        CHECK(max_abs_diff(s.joint, expected) < kTol);
    }
    SECTION("unit norm for random amplitudes") {
        for (int t = 0; t < 100; ++t) {
            AmplitudeMatrix a = random_amplitudes(4, rng);
            CHECK(std::abs(norm(cerf_state(a, fourier).joint) - 1.0) < 1e-11);
        }
    }
    SECTION("reduction on (R,A) is Bell-diagonal") {
        AmplitudeMatrix a = random_amplitudes(4, rng);
        CHECK(cerf_residual(cerf_state(a, fourier), fourier) < 1e-11);
        BellFamily klein = hadamard_family();
        CHECK(cerf_residual(cerf_state(a, klein), klein) < 1e-11);
    }
    SECTION("optimal-state decomposition into the four Bell-pair groups") {
        // Bell-pair coefficient (m,n) of the joint state, by contraction
        CloningState s = cerf_state(kOptimal, fourier);
        auto coeff = [&](int m, int n) {
            Ket pair = verify::detail::pair_ra_bc(fourier.state(m, n),
                                                  conjugate(fourier.state(m, n)), 4);
            return inner(pair, s.joint);
        };
        // interior coefficients all equal z
        for (int m = 1; m < 4; ++m)
            for (int n = 1; n < 4; ++n)
                CHECK(std::abs(coeff(m, n) - camp(1.0 / 12.0, 0)) < kTol);
        // the two border groups carry y - z on top of the full-sum group
        camp border_row = coeff(0, 1) - coeff(1, 1);
        camp border_col = coeff(1, 0) - coeff(1, 1);
        CHECK(std::abs(border_row - camp(0.25 - 1.0 / 12.0, 0)) < kTol);
        CHECK(std::abs(border_col - camp(0.25 - 1.0 / 12.0, 0)) < kTol);
        // and the corner adds x - 2y + z
        camp corner = coeff(0, 0) - border_row - border_col - coeff(1, 1);
        CHECK(std::abs(corner - camp(0.75 - 0.5 + 1.0 / 12.0, 0)) < kTol);
    }
    SECTION("non-normalized amplitudes rejected") {
        AmplitudeMatrix a(4);
        a.at(0, 0) = camp(2, 0);
        CHECK_THROWS_AS(cerf_state(a, fourier), std::invalid_argument);
    }
}

TEST_CASE("dual amplitudes", "[cloner]") {
    SECTION("peaked maps to flat") {
        AmplitudeMatrix b = dual_amplitudes(peaked_amplitudes(4), BellRule::fourier);
        for (camp z : b.a) CHECK(std::abs(z - camp(0.25, 0)) < kTol);
    }
    SECTION("the optimal matrix is self-dual under both kernels") {
        AmplitudeMatrix bf = dual_amplitudes(kOptimal, BellRule::fourier);
        AmplitudeMatrix bh = dual_amplitudes(kOptimal, BellRule::hadamard);
        for (int i = 0; i < 16; ++i) {
            CHECK(std::abs(bf.a[i] - kOptimal.a[i]) < kTol);
            CHECK(std::abs(bh.a[i] - kOptimal.a[i]) < kTol);
        }
    }
    SECTION("involution on random matrices") {
        for (int t = 0; t < 50; ++t) {
            AmplitudeMatrix a = random_amplitudes(4, rng);
            AmplitudeMatrix ff = dual_amplitudes(dual_amplitudes(a, BellRule::fourier),
                                                 BellRule::fourier);
            AmplitudeMatrix hh = dual_amplitudes(dual_amplitudes(a, BellRule::hadamard),
                                                 BellRule::hadamard);
            for (int i = 0; i < 16; ++i) {
                CHECK(std::abs(ff.a[i] - a.a[i]) < kTol);
                CHECK(std::abs(hh.a[i] - a.a[i]) < kTol);
            }
        }
    }
}

TEST_CASE("re-expansion oracle", "[cloner]") {
    BellFamily fourier = fourier_family(4);
    BellFamily klein = hadamard_family();
    SECTION("peaked fourier state re-expands to the flat matrix") {
        AmplitudeMatrix r = reexpand_check(cerf_state(peaked_amplitudes(4), fourier), fourier);
        for (camp z : r.a) CHECK(std::abs(z - camp(0.25, 0)) < kTol);
    }
    SECTION("random amplitudes, both families") {
        for (int t = 0; t < 25; ++t) {
            AmplitudeMatrix a = random_amplitudes(4, rng);
            AmplitudeMatrix rf = reexpand_check(cerf_state(a, fourier), fourier);
            AmplitudeMatrix bf = dual_amplitudes(a, BellRule::fourier);
            AmplitudeMatrix rh = reexpand_check(cerf_state(a, klein), klein);
            AmplitudeMatrix bh = dual_amplitudes(a, BellRule::hadamard);
            for (int i = 0; i < 16; ++i) {
                CHECK(std::abs(rf.a[i] - bf.a[i]) < kTol);
                CHECK(std::abs(rh.a[i] - bh.a[i]) < kTol);
            }
        }
    }
}

TEST_CASE("projecting the reference register", "[cloner]") {
    BellFamily fourier = fourier_family(4);
    SECTION("perfect channel forwards the state") {
        CloningState s = cerf_state(peaked_amplitudes(4), fourier);
        Ket out = project_reference(s, basis_ket(4, 2));
        Ket expected = tensor(basis_ket(4, 2), fourier_bell(4, 0, 0));
        CHECK(max_abs_diff(out, expected) < kTol);
    }
    SECTION("projection of a maximally entangled pair is a product") {
        // (<psi*| (x) I) sum_k |k>|k> ~ |psi>
        Ket psi = random_ket(4, rng);
        Ket b00 = fourier_bell(4, 0, 0);
        Ket projected(4);
        for (int k = 0; k < 4; ++k)
            for (int q = 0; q < 4; ++q) projected[q] += psi[k] * b00[k * 4 + q];
        CHECK(max_abs_diff(normalized(projected), psi) < 1e-11);
    }
    SECTION("term-by-term expansion oracle on random amplitudes") {
        for (int t = 0; t < 10; ++t) {
            AmplitudeMatrix a = random_amplitudes(4, rng);
            Ket psi = basis_ket(4, 0);
            Ket out = project_reference(cerf_state(a, fourier), psi);
            Ket expected(64);
            for (int m = 0; m < 4; ++m)
                for (int n = 0; n < 4; ++n) {
                    Ket term = tensor(apply(error_operator(BellRule::fourier, 4, m, n), psi),
                                      fourier_bell(4, m, mod(-n, 4)));
                    expected = add(expected, scale(term, a.at(m, n)));
                }
            CHECK(max_abs_diff(out, expected) < 1e-11);
        }
    }
    SECTION("zero-probability projection is an error") {
        Ket degenerate(256);
        degenerate[0] = camp(1, 0); // |0000>, not a valid cloning state
        CHECK_THROWS_AS(project_reference(degenerate, basis_ket(4, 1)), std::runtime_error);
    }
}

TEST_CASE("clone densities", "[cloner]") {
    SECTION("peaked amplitudes: perfect first clone, depolarized second") {
        Ket psi = random_ket(4, rng);
        auto [rho_a, rho_b] = clone_densities(peaked_amplitudes(4), BellRule::fourier, psi);
        CHECK(max_abs_diff(rho_a, density(psi)) < 1e-11);
        CHECK(max_abs_diff(rho_b, op_scale(op_identity(4), camp(0.25, 0))) < 1e-11);
    }
    SECTION("optimal quartit cloner keeps 3/4 of the signal") {
        auto [rho_a, rho_b] = clone_densities(kOptimal, BellRule::fourier, basis_ket(4, 0));
        CHECK(std::abs(rho_a.at(0, 0) - camp(0.75, 0)) < kTol);
        CHECK(std::abs(rho_b.at(0, 0) - camp(0.75, 0)) < kTol);
        CHECK(std::abs(trace(rho_a) - camp(1, 0)) < kTol);
        CHECK(std::abs(trace(rho_b) - camp(1, 0)) < kTol);
    }
    SECTION("agrees with partial traces of the projected state") {
        for (int t = 0; t < 10; ++t) {
            AmplitudeMatrix a = random_amplitudes(4, rng);
            Ket psi = random_ket(4, rng);
            auto [rho_a, rho_b] = clone_densities(a, BellRule::fourier, psi);
            Ket abc = project_reference(cerf_state(a, fourier_family(4)), psi);
            Op rho = density(abc);
            Op oracle_a = partial_trace(rho, Subsystem::A, 4, 16);
            Op bc = partial_trace(rho, Subsystem::B, 4, 16);
            Op oracle_b = partial_trace(bc, Subsystem::A, 4, 4);
            CHECK(max_abs_diff(rho_a, oracle_a) < 1e-11);
            CHECK(max_abs_diff(rho_b, oracle_b) < 1e-11);
        }
    }
    SECTION("hermitian, positive semidefinite") {
        AmplitudeMatrix a = random_amplitudes(4, rng);
        Ket psi = random_ket(4, rng);
        auto [rho_a, rho_b] = clone_densities(a, BellRule::hadamard, psi);
        CHECK(is_hermitian(rho_a, 1e-11));
        CHECK(is_hermitian(rho_b, 1e-11));
        for (int t = 0; t < 20; ++t) {
            Ket probe = random_ket(4, rng);
            CHECK(inner(probe, apply(rho_a, probe)).real() > -1e-11);
            CHECK(inner(probe, apply(rho_b, probe)).real() > -1e-11);
        }
    }
}

TEST_CASE("fidelity and disturbances", "[cloner]") {
    SECTION("optimal quartit values") {
        auto [f, d] = fidelity_and_disturbances(kOptimal);
        CHECK(f == Catch::Approx(0.75).margin(kTol));
        REQUIRE(d.size() == 3);
        for (double x : d) CHECK(x == Catch::Approx(1.0 / 12.0).margin(kTol));
    }
    SECTION("universal quartit values") {
        AmplitudeMatrix u(4);
        double b = std::sqrt(10.0) / 20.0;
        for (camp& z : u.a) z = camp(b, 0);
        u.at(0, 0) = camp(std::sqrt(10.0) / 4.0, 0);
        auto [f, d] = fidelity_and_disturbances(u);
        CHECK(f == Catch::Approx(0.7).margin(1e-12));
    }
    SECTION("peaked amplitudes") {
        auto [f, d] = fidelity_and_disturbances(peaked_amplitudes(4));
        CHECK(f == Catch::Approx(1.0).margin(kTol));
        for (double x : d) CHECK(x == Catch::Approx(0.0).margin(kTol));
    }
    SECTION("F + sum(D) = 1 and agreement with the density diagonal") {
        for (int t = 0; t < 10; ++t) {
            AmplitudeMatrix a = random_amplitudes(4, rng);
            auto [f, d] = fidelity_and_disturbances(a);
            double total = f;
            for (double x : d) total += x;
            CHECK(total == Catch::Approx(1.0).margin(1e-11));
            for (int k = 0; k < 4; ++k) {
                auto [rho_a, rho_b] = clone_densities(a, BellRule::fourier, basis_ket(4, k));
                CHECK(rho_a.at(k, k).real() == Catch::Approx(f).margin(1e-11));
                for (int i = 1; i < 4; ++i)
                    CHECK(rho_a.at(mod(k + i, 4), mod(k + i, 4)).real() ==
                          Catch::Approx(d[i - 1]).margin(1e-11));
            }
        }
    }
    SECTION("phases are physically inert") {
        AmplitudeMatrix a = random_amplitudes(4, rng);
        AmplitudeMatrix twisted = a;
        std::uniform_real_distribution<double> angle(0.0, 6.28);
        for (camp& z : twisted.a) z *= std::polar(1.0, angle(rng));
        auto [f1, d1] = fidelity_and_disturbances(a);
        auto [f2, d2] = fidelity_and_disturbances(twisted);
        CHECK(f1 == Catch::Approx(f2).margin(1e-12));
        for (std::size_t i = 0; i < d1.size(); ++i)
            CHECK(d1[i] == Catch::Approx(d2[i]).margin(1e-12));
    }
}

TEST_CASE("entropic no-cloning bound", "[cloner]") {
    SECTION("peaked case attains equality") {
        auto [hp, hq] = entropic_bound(peaked_amplitudes(4), BellRule::fourier);
        CHECK(hp == Catch::Approx(0.0).margin(1e-12));
        CHECK(hq == Catch::Approx(4.0).margin(1e-12));
    }
    SECTION("flat case is the mirror image") {
        AmplitudeMatrix flat(4);
        for (camp& z : flat.a) z = camp(0.25, 0);
        auto [hp, hq] = entropic_bound(flat, BellRule::fourier);
        CHECK(hp == Catch::Approx(4.0).margin(1e-12));
        CHECK(hq == Catch::Approx(0.0).margin(1e-12));
    }
    SECTION("random sweep stays above 2 log2 N") {
        double min_sum = 1e300;
        for (int t = 0; t < 1000; ++t) {
            auto [hp, hq] = entropic_bound(random_amplitudes(4, rng), BellRule::fourier);
            min_sum = std::min(min_sum, hp + hq);
        }
        CHECK(min_sum >= 4.0 - 1e-9);
    }
}

TEST_CASE("mutual information of the symmetric channel", "[cloner]") {
    SECTION("optimal quartit point") {
        double i = mutual_information(0.75, {1.0 / 12, 1.0 / 12, 1.0 / 12}, 4);
        CHECK(std::abs(i - 0.792) < 0.001);
    }
    SECTION("noiseless quartit channel carries two bits") {
        CHECK(mutual_information(1.0, {0, 0, 0}, 4) == Catch::Approx(2.0).margin(1e-12));
    }
    SECTION("useless channel carries nothing") {
        CHECK(mutual_information(0.25, {0.25, 0.25, 0.25}, 4) ==
              Catch::Approx(0.0).margin(1e-12));
    }
    SECTION("non-symmetric disturbances rejected") {
        CHECK_THROWS_AS(mutual_information(0.7, {0.2, 0.05, 0.05}, 4), std::invalid_argument);
    }
}

TEST_CASE("klein-family cloner is diagonal in both encodings", "[cloner]") {
    OrthonormalBasis h = hadamard_basis();
    for (int k = 0; k < 4; ++k) {
        auto [rho_a, rho_b] = clone_densities(kOptimal, BellRule::hadamard, basis_ket(4, k));
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                if (i == j) continue;
                CHECK(std::abs(rho_a.at(i, j)) < kTol);
                CHECK(std::abs(rho_b.at(i, j)) < kTol);
            }
        auto [rho_ah, rho_bh] = clone_densities(kOptimal, BellRule::hadamard, h.ket(k));
        Op in_h_a = op_mul(adjoint(h.mat), op_mul(rho_ah, h.mat));
        Op in_h_b = op_mul(adjoint(h.mat), op_mul(rho_bh, h.mat));
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                if (i == j) continue;
                CHECK(std::abs(in_h_a.at(i, j)) < kTol);
                CHECK(std::abs(in_h_b.at(i, j)) < kTol);
            }
    }
}

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "cloneforge/covariance.hpp"
#include "cloneforge/report.hpp"
#include "cloneforge/verify.hpp"

using namespace cloneforge;

namespace {

std::mt19937_64 rng(0xC07A61A7ULL);

std::vector<std::vector<std::array<int, 2>>> classes_of(const AmplitudePattern& p) {
    return p.classes;
}

} // namespace

TEST_CASE("overlap matrix", "[covariance]") {
    BellFamily fourier = fourier_family(4);
    SECTION("a family against itself is the identity") {
        OverlapMatrix v = overlap_matrix(fourier, fourier);
        CHECK(max_abs_diff(v.v, op_identity(16)) < kTol);
    }
    SECTION("fourier-basis family gives i^{mk} delta_{l+m,0} delta_{k,n}") {
        OverlapMatrix v = overlap_matrix(fourier, generalized_family(fourier_basis(4)));
        for (int m = 0; m < 4; ++m)
            for (int n = 0; n < 4; ++n)
                for (int k = 0; k < 4; ++k)
                    for (int l = 0; l < 4; ++l) {
                        camp expected(0, 0);
                        if (mod(l + m, 4) == 0 && k == n) expected = root_of_unity(4, m * k);
                        CHECK(std::abs(v.v.at(m * 4 + n, k * 4 + l) - expected) < kTol);
                    }
    }
    SECTION("specific entry: V_{1,2;2,3} = -1") {
        OverlapMatrix v = overlap_matrix(fourier, generalized_family(fourier_basis(4)));
        CHECK(std::abs(v.v.at(1 * 4 + 2, 2 * 4 + 3) - camp(-1, 0)) < kTol);
    }
    SECTION("unitary for unbiased-basis families") {
        for (const OrthonormalBasis& b : {fourier_basis(4), hadamard_basis()}) {
            OverlapMatrix v = overlap_matrix(fourier, generalized_family(b));
            CHECK(max_abs_diff(op_mul(adjoint(v.v), v.v), op_identity(16)) < 1e-11);
        }
    }
}

TEST_CASE("equivalence classes", "[covariance]") {
    OrthonormalBasis comp = computational_basis(4);
    SECTION("identity overlap gives all singletons") {
        OverlapMatrix v{4, op_identity(16)};
        AmplitudePattern p = equivalence_classes(v);
        CHECK(p.classes.size() == 16);
    }
    SECTION("computational-fourier pair, the printed six classes") {
        AmplitudePattern p = covariant_pattern(comp, fourier_basis(4), BellRule::fourier);
        std::vector<std::vector<std::array<int, 2>>> expected = {
            {{0, 0}},
            {{0, 1}, {0, 3}, {1, 0}, {3, 0}},
            {{0, 2}, {2, 0}},
            {{1, 1}, {1, 3}, {3, 1}, {3, 3}},
            {{1, 2}, {2, 1}, {2, 3}, {3, 2}},
            {{2, 2}}};
        CHECK(classes_of(p) == expected);
        CHECK(p.labels == std::vector<std::string>{"a", "b", "c", "d", "e", "f"});
    }
    SECTION("computational-hadamard pair, the printed five-parameter pattern") {
        AmplitudePattern p = covariant_pattern(comp, hadamard_basis(), BellRule::fourier);
        std::vector<std::vector<std::array<int, 2>>> expected = {
            {{0, 0}},
            {{0, 1}, {0, 3}, {1, 0}, {1, 2}, {2, 1}, {2, 3}, {3, 0}, {3, 2}},
            {{0, 2}, {2, 0}},
            {{1, 1}, {1, 3}, {3, 1}, {3, 3}},
            {{2, 2}}};
        CHECK(classes_of(p) == expected);
    }
    SECTION("klein-family hadamard pair admits the x/y/z form") {
        AmplitudePattern p = covariant_pattern(comp, hadamard_basis(), BellRule::hadamard);
        CHECK(p.classes.size() == 10);
        AmplitudePattern xyz = reduce_to_xyz(p);
        CHECK(xyz.classes.size() == 3);
        CHECK(xyz.labels == std::vector<std::string>{"x", "y", "z"});
        CHECK(xyz.classes[0] == std::vector<std::array<int, 2>>{{0, 0}});
    }
    SECTION("the five-parameter pattern does not admit the x/y/z form") {
        AmplitudePattern p = covariant_pattern(comp, hadamard_basis(), BellRule::fourier);
        CHECK_THROWS_AS(reduce_to_xyz(p), std::runtime_error);
    }
}

TEST_CASE("pattern utilities", "[covariance]") {
    AmplitudePattern p = covariant_pattern(computational_basis(4), hadamard_basis(),
                                           BellRule::fourier);
    SECTION("merging the interior classes gives the isotropic a/b/c form") {
        AmplitudePattern iso = merge_pattern_classes(p, {{{0, 2}, {1, 1}, {2, 2}}});
        REQUIRE(iso.classes.size() == 3);
        CHECK(iso.classes[0] == std::vector<std::array<int, 2>>{{0, 0}});
        CHECK(iso.classes[1].size() == 8);
        CHECK(iso.classes[2].size() == 7);
    }
    SECTION("pattern matrices place one parameter per class") {
        AmplitudeMatrix a = pattern_matrix(p, {5, 4, 3, 2, 1});
        CHECK(a.at(0, 0) == camp(5, 0));
        CHECK(a.at(1, 2) == camp(4, 0));
        CHECK(a.at(2, 0) == camp(3, 0));
        CHECK(a.at(3, 3) == camp(2, 0));
        CHECK(a.at(2, 2) == camp(1, 0));
    }
    SECTION("json serialization shape") {
        json doc = pattern_json(p);
        CHECK(doc["dim"] == 4);
        CHECK(doc["classes"].size() == 5);
        CHECK(doc["labels"].size() == 5);
        CHECK(doc["classes"][0][0] == json::array({0, 0}));
    }
}

TEST_CASE("covariance verification", "[covariance]") {
    AmplitudeMatrix xyz(4);
    for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n)
            xyz.at(m, n) =
                camp((m == 0 && n == 0) ? 0.75 : (m == 0 || n == 0) ? 0.25 : 1.0 / 12.0, 0);

    SECTION("the optimal state is covariant for the fourier pair") {
        CHECK(verify_covariance(xyz, fourier_basis(4), BellRule::fourier));
    }
    SECTION("peaked amplitudes are basis-independent") {
        CHECK(verify_covariance(peaked_amplitudes(4), fourier_basis(4), BellRule::fourier));
    }
    SECTION("the fourier-family optimum is not covariant for the hadamard pair") {
        CHECK_FALSE(verify_covariance(xyz, hadamard_basis(), BellRule::fourier));
    }
    SECTION("the klein-family optimum is covariant for the hadamard pair") {
        CHECK(verify_covariance(xyz, hadamard_basis(), BellRule::hadamard));
    }
    SECTION("random pattern-respecting amplitudes are covariant") {
        AmplitudePattern p = covariant_pattern(computational_basis(4), fourier_basis(4),
                                               BellRule::fourier);
        std::uniform_real_distribution<double> uni(0.05, 1.0);
        for (int t = 0; t < 20; ++t) {
            std::vector<double> params(p.classes.size());
            for (double& v : params) v = uni(rng);
            AmplitudeMatrix a = normalized(pattern_matrix(p, params));
            CHECK(verify_covariance(a, fourier_basis(4), BellRule::fourier));
        }
    }
}

TEST_CASE("covariance suite", "[covariance]") {
    for (const Check& c : verify::suite_covariance(0x5EED)) {
        INFO(c.name << " residual " << c.residual);
        CHECK(c.pass);
    }
}

#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "wiretap/uncertainty.hpp"
#include "wiretap/verify.hpp"

using namespace wiretap;
using namespace wiretap::uncertainty;

namespace {

const double kSqrt2 = std::sqrt(2.0);

mat::ComplexMatrix random_complex(int rows, int cols, RngStream& rng) {
    mat::ComplexMatrix a(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) a(i, j) = mat::standard_complex_normal(rng);
    return a;
}

}  // namespace

TEST_CASE("gain-convention normalization") {
    CHECK(EavesdropperUncertainty::power_gain(0.25).epsilon_power() == 0.25);
    CHECK(EavesdropperUncertainty::voltage_gain(0.5).epsilon_power() == 0.25);
    CHECK_THROWS_AS(EavesdropperUncertainty::power_gain(-0.1), validation_error);
    CHECK_THROWS_AS(EavesdropperUncertainty::power_gain(0.1, 0), validation_error);
}

TEST_CASE("worst_eaves_isotropic") {
    auto w = worst_eaves_isotropic(2, 0.5);
    CHECK(mat::max_abs_diff(w.matrix(), 0.5 * mat::ComplexMatrix::identity(2)) == 0.0);
    CHECK(worst_eaves_isotropic(3, 0.0).matrix().max_abs() == 0.0);
    CHECK(mat::spectral_norm(worst_eaves_isotropic(4, 0.7).matrix()) ==
          Catch::Approx(0.7).margin(1e-12));
}

TEST_CASE("worst_eaves_rank") {
    SECTION("projects the gain onto the range of W1") {
        auto w1 = mat::HermitianPSD::from_matrix(mat::ComplexMatrix::diagonal({2.0, 0.0}));
        auto w = worst_eaves_rank(w1, 0.5);
        CHECK(mat::max_abs_diff(w.matrix(), mat::ComplexMatrix::diagonal({0.5, 0.0})) < 1e-12);
        CHECK(mat::spectral_norm(w.matrix()) == Catch::Approx(0.5).margin(1e-12));
    }
    SECTION("full-rank W1 gives the isotropic worst case") {
        RngStream rng(11);
        auto w1 = oracles::random_psd(3, 2.0, rng);
        auto w = worst_eaves_rank(w1, 0.3);
        CHECK(mat::max_abs_diff(w.matrix(), 0.3 * mat::ComplexMatrix::identity(3)) < 1e-9);
    }
    SECTION("zero W1 gives the zero matrix") {
        CHECK(worst_eaves_rank(mat::HermitianPSD::zero(2), 0.5).matrix().max_abs() == 0.0);
    }
}

TEST_CASE("worst_legit") {
    SECTION("zero uncertainty returns the nominal channel") {
        RngStream rng(21);
        mat::ComplexMatrix h0 = random_complex(3, 2, rng);
        CHECK(mat::max_abs_diff(worst_legit({h0, 0.0}), h0) < 1e-12);
    }
    SECTION("singular values shrink componentwise") {
        mat::ComplexMatrix h0 = mat::ComplexMatrix::diagonal({kSqrt2, 1.0});
        mat::SVDResult s = mat::svd(worst_legit({h0, 0.2}));
        CHECK(s.singulars[0] == Catch::Approx(kSqrt2 - 0.2).margin(1e-12));
        CHECK(s.singulars[1] == Catch::Approx(0.8).margin(1e-12));
    }
    SECTION("full clipping gives the zero channel") {
        mat::ComplexMatrix h0 = mat::ComplexMatrix::diagonal({kSqrt2, 1.0});
        CHECK(worst_legit({h0, 2.0}).max_abs() == 0.0);
    }
    SECTION("the worst case is itself a feasible perturbation") {
        RngStream rng(31);
        for (int trial = 0; trial < 10; ++trial) {
            mat::ComplexMatrix h0 = random_complex(3, 3, rng);
            const double eps1 = uniform_unit(rng);
            CHECK(mat::spectral_norm(worst_legit({h0, eps1}) - h0) <= eps1 + 1e-10);
        }
    }
}

TEST_CASE("degraded_gains") {
    CHECK(degraded_gains({kSqrt2, 1.0}, 0.0) ==
          std::vector<double>{kSqrt2 * kSqrt2, 1.0});
    const auto g = degraded_gains({kSqrt2, 1.0}, 0.2);
    CHECK(g[0] == Catch::Approx((kSqrt2 - 0.2) * (kSqrt2 - 0.2)).margin(1e-14));
    CHECK(g[1] == Catch::Approx(0.64).margin(1e-14));
    CHECK(degraded_gains({kSqrt2, 1.0}, 2.0) == std::vector<double>{0.0, 0.0});
    // order is preserved
    RngStream rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        auto sv = oracles::random_gains(5, 3.0, rng);
        auto dg = degraded_gains(sv, uniform_unit(rng));
        CHECK(std::is_sorted(dg.rbegin(), dg.rend()));
    }
}

TEST_CASE("capacity_rank_constrained") {
    SECTION("single-mode example gives ln 2") {
        auto w1 = mat::HermitianPSD::from_matrix(mat::ComplexMatrix::diagonal({2.0, 0.0}));
        auto rep = capacity_rank_constrained(w1, EavesdropperUncertainty::power_gain(0.5, 1), 1.0);
        CHECK(rep.capacity == Catch::Approx(std::log(2.0)).margin(1e-12));
        CHECK(mat::max_abs_diff(rep.worst_eaves.matrix(),
                                mat::ComplexMatrix::diagonal({0.5, 0.0})) < 1e-12);
    }
    SECTION("a generous rank bound changes nothing") {
        RngStream rng(51);
        auto w1 = oracles::random_psd(3, 2.5, rng);
        auto bounded = capacity_rank_constrained(w1, EavesdropperUncertainty::power_gain(0.4, 3), 1.5);
        auto plain = secrecy::capacity_isotropic(w1, 0.4, 1.5);
        CHECK(bounded.capacity == Catch::Approx(plain.capacity).margin(1e-12));
    }
    SECTION("rank(W1) above the bound is refused with a diagnostic") {
        auto w1 = mat::HermitianPSD::from_matrix(mat::ComplexMatrix::diagonal({2.0, 1.0}));
        CHECK_THROWS_WITH(
            capacity_rank_constrained(w1, EavesdropperUncertainty::power_gain(0.5, 1), 1.0),
            Catch::Matchers::ContainsSubstring("rank(W1) = 2") &&
                Catch::Matchers::ContainsSubstring("r2 = 1"));
    }
}

TEST_CASE("capacity_double_sided") {
    SECTION("zero legitimate uncertainty reduces to the isotropic capacity") {
        RngStream rng(61);
        mat::ComplexMatrix h0 = random_complex(3, 3, rng);
        auto dbl = capacity_double_sided({h0, 0.0}, EavesdropperUncertainty::power_gain(0.3), 1.2);
        auto iso = secrecy::capacity_isotropic(mat::HermitianPSD::gram(h0), 0.3, 1.2);
        CHECK(dbl.capacity == Catch::Approx(iso.capacity).margin(1e-9));
    }
    SECTION("non-square nominal channels work in transmit coordinates") {
        RngStream rng(62);
        mat::ComplexMatrix h0 = random_complex(3, 2, rng);  // 3 receive, 2 transmit antennas
        auto dbl = capacity_double_sided({h0, 0.1}, EavesdropperUncertainty::power_gain(0.3), 1.0);
        CHECK(dbl.optimal_covariance.dim() == 2);
        CHECK(dbl.worst_eaves.dim() == 2);
        CHECK(dbl.worst_legit_gram->dim() == 2);
        const auto degraded = degraded_gains(mat::svd(h0).singulars, 0.1);
        const auto iso = secrecy::capacity_for_spectrum(
            {degraded, mat::svd(h0).right}, 0.3, 1.0);
        CHECK(dbl.capacity == Catch::Approx(iso.capacity).margin(1e-12));
        auto saddle = verify::verify_saddle(verify::ScenarioConfig::double_sided(h0, 0.1, 0.3),
                                            1.0, 500, 63);
        CHECK(saddle.pass());
    }
    SECTION("worked example against the grid oracle") {
        mat::ComplexMatrix h0 = mat::ComplexMatrix::diagonal({kSqrt2, 1.0});
        auto rep = capacity_double_sided({h0, 0.2}, EavesdropperUncertainty::power_gain(0.5), 1.0);
        // frozen from an independent bisection on the degraded spectrum
        CHECK(rep.capacity == Catch::Approx(0.50049831018427).margin(1e-9));
        CHECK(rep.active_count == 1);  // the second degraded mode stays below threshold
        const double grid = verify::brute_force_capacity(
            degraded_gains({kSqrt2, 1.0}, 0.2), 0.5, 1.0, 1e-4);
        CHECK(rep.capacity == Catch::Approx(grid).margin(1e-3));
        REQUIRE(rep.worst_legit_gram.has_value());
        CHECK(mat::max_abs_diff(rep.worst_legit_gram->matrix(),
                                mat::ComplexMatrix::diagonal(
                                    {(kSqrt2 - 0.2) * (kSqrt2 - 0.2), 0.64})) < 1e-12);
    }
    SECTION("a fully degraded legitimate channel carries nothing") {
        mat::ComplexMatrix h0 = mat::ComplexMatrix::diagonal({kSqrt2, 1.0});
        auto rep = capacity_double_sided({h0, 2.0}, EavesdropperUncertainty::power_gain(0.5), 1.0);
        CHECK(rep.capacity == 0.0);
    }
    SECTION("capacity is nonincreasing in both uncertainty bounds") {
        mat::ComplexMatrix h0 = mat::ComplexMatrix::diagonal({kSqrt2, 1.0});
        double prev = std::numeric_limits<double>::infinity();
        for (double e1 : {0.0, 0.1, 0.3, 0.6, 1.0}) {
            const double c =
                capacity_double_sided({h0, e1}, EavesdropperUncertainty::power_gain(0.3), 2.0).capacity;
            CHECK(c <= prev + 1e-12);
            prev = c;
        }
        prev = std::numeric_limits<double>::infinity();
        for (double e : {0.0, 0.2, 0.5, 0.9, 1.4}) {
            const double c =
                capacity_double_sided({h0, 0.1}, EavesdropperUncertainty::power_gain(e), 2.0).capacity;
            CHECK(c <= prev + 1e-12);
            prev = c;
        }
    }
}

TEST_CASE("capacity_double_rank") {
    SECTION("zero legitimate uncertainty matches the rank-constrained closed form") {
        auto w1 = mat::HermitianPSD::from_matrix(mat::ComplexMatrix::diagonal({2.0, 0.0}));
        mat::ComplexMatrix h0(2, 2);
        h0(0, 0) = std::sqrt(2.0);
        RngStream rng(71);
        auto dbl = capacity_double_rank({h0, 0.0}, EavesdropperUncertainty::voltage_gain(0.5, 1),
                                        1.0, rng);
        auto rank = capacity_rank_constrained(w1, EavesdropperUncertainty::power_gain(0.25, 1), 1.0);
        CHECK(dbl.capacity == Catch::Approx(rank.capacity).margin(1e-9));
    }
    SECTION("worked rank-one example") {
        mat::ComplexMatrix h0 = mat::ComplexMatrix::diagonal({kSqrt2, 0.0});
        RngStream rng(81);
        auto rep = capacity_double_rank({h0, 0.2}, EavesdropperUncertainty::voltage_gain(0.5, 1),
                                        1.0, rng);
        const double g1 = (kSqrt2 - 0.2) * (kSqrt2 - 0.2);
        CHECK(rep.capacity == Catch::Approx(std::log((1.0 + g1) / 1.25)).margin(1e-9));
        // worst-case eavesdropper acts only on the nominal channel's range
        CHECK(mat::max_abs_diff(rep.worst_eaves.matrix(),
                                mat::ComplexMatrix::diagonal({0.25, 0.0})) < 1e-12);
        REQUIRE(rep.worst_eaves_channel.has_value());
        CHECK(mat::spectral_norm(*rep.worst_eaves_channel) == Catch::Approx(0.5).margin(1e-10));
        CHECK(mat::max_abs_diff(
                  mat::HermitianPSD::gram(*rep.worst_eaves_channel).matrix(),
                  rep.worst_eaves.matrix()) < 1e-10);
    }
    SECTION("the arbitrary unitary in the representative does not move the capacity") {
        mat::ComplexMatrix h0 = mat::ComplexMatrix::diagonal({kSqrt2, 0.0});
        RngStream r1(1), r2(2);
        auto a = capacity_double_rank({h0, 0.2}, EavesdropperUncertainty::voltage_gain(0.5, 1), 1.0, r1);
        auto b = capacity_double_rank({h0, 0.2}, EavesdropperUncertainty::voltage_gain(0.5, 1), 1.0, r2);
        CHECK(a.capacity == b.capacity);
        CHECK(mat::max_abs_diff(a.worst_eaves.matrix(), b.worst_eaves.matrix()) == 0.0);
    }
    SECTION("rank(H0) above the bound is refused") {
        mat::ComplexMatrix h0 = mat::ComplexMatrix::diagonal({kSqrt2, 1.0});
        RngStream rng(91);
        CHECK_THROWS_AS(capacity_double_rank({h0, 0.1}, EavesdropperUncertainty::voltage_gain(0.5, 1),
                                             1.0, rng),
                        validation_error);
    }
}

TEST_CASE("equality_perturbation") {
    SECTION("zero epsilon gives the zero matrix") {
        mat::ComplexMatrix a = mat::ComplexMatrix::diagonal({kSqrt2, 1.0});
        CHECK(equality_perturbation(mat::svd(a), 0.0).max_abs() == 0.0);
    }
    SECTION("diagonal example") {
        mat::ComplexMatrix a = mat::ComplexMatrix::diagonal({kSqrt2, 1.0});
        auto b = equality_perturbation(mat::svd(a), 0.2);
        CHECK(mat::max_abs_diff(b, mat::ComplexMatrix::diagonal({-0.2, -0.2})) < 1e-12);
    }
    SECTION("large epsilon cancels the whole matrix") {
        mat::ComplexMatrix a = mat::ComplexMatrix::diagonal({kSqrt2, 1.0});
        auto b = equality_perturbation(mat::svd(a), 2.0);
        CHECK(mat::max_abs_diff(b, -1.0 * a) < 1e-12);
    }
}

TEST_CASE("singular-value lower bound for perturbed products") {
    // sigma_i((A+B)C) >= (sigma_i(A) - sigma_1(B))_+ sigma_i(C) whenever C's
    // left singular basis equals A's right basis; equality at the canonical B.
    RngStream rng(111);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 2 + static_cast<int>(uniform_unit(rng) * 2);  // 2 or 3
        const mat::SVDResult a_svd = mat::svd(random_complex(n, n, rng));
        // C = V diag(c) W^+ shares A's right singular vectors as its left ones
        std::vector<double> c_vals = oracles::random_gains(n, 2.0, rng);
        const mat::ComplexMatrix w = mat::random_unitary(n, rng);
        const mat::ComplexMatrix a = a_svd.left *
                                     mat::ComplexMatrix::diagonal_rect(n, n, a_svd.singulars) *
                                     a_svd.right.adjoint();
        const mat::ComplexMatrix c =
            a_svd.right * mat::ComplexMatrix::diagonal(c_vals) * w.adjoint();

        const bool canonical = trial % 4 == 0;
        const double eps = uniform_unit(rng);
        mat::ComplexMatrix b(n, n);
        if (canonical) {
            b = equality_perturbation(a_svd, eps);
        } else {
            b = random_complex(n, n, rng);
            const double s1 = mat::spectral_norm(b);
            b = (uniform_unit(rng) * eps / s1) * b;
        }
        const double b_norm = mat::spectral_norm(b);
        CHECK(b_norm <= eps + 1e-10);

        const std::vector<double> product = mat::svd((a + b) * c).singulars;
        for (int i = 0; i < n; ++i) {
            const double lower = std::max(a_svd.singulars[static_cast<std::size_t>(i)] - b_norm, 0.0) *
                                 c_vals[static_cast<std::size_t>(i)];
            CHECK(product[static_cast<std::size_t>(i)] >= lower - 1e-9);
            if (canonical)
                CHECK(product[static_cast<std::size_t>(i)] ==
                      Catch::Approx(std::max(a_svd.singulars[static_cast<std::size_t>(i)] - eps, 0.0) *
                                    c_vals[static_cast<std::size_t>(i)])
                          .margin(1e-9));
        }
    }
}

TEST_CASE("rank-limited eavesdroppers obey the majorization bound") {
    // ln|I + W2 R| <= sum_{i<=r2} ln(1 + eps lambda_i(R)) for lambda_1(W2) <= eps
    RngStream rng(121);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 3;
        const int r2 = 1 + static_cast<int>(uniform_unit(rng) * 2);
        const double eps = 0.2 + uniform_unit(rng);
        auto w2 = verify::sample_eaves(n, eps, r2, rng);
        auto r = oracles::random_psd(n, 2.0 * uniform_unit(rng) + 0.2, rng);
        const auto r_eigs = mat::hermitian_eig(r).eigenvalues;
        double bound = 0.0;
        for (int i = 0; i < r2; ++i) bound += std::log(1.0 + eps * r_eigs[static_cast<std::size_t>(i)]);
        CHECK(mat::logdet_ipwr(w2, r) <= bound + 1e-9);
    }
}

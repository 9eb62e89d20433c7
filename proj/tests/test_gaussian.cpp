#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "pdisc/density.hpp"
#include "pdisc/gaussian.hpp"

using namespace pdisc;

namespace {
constexpr double pi = std::numbers::pi;
constexpr double e_const = std::numbers::e;
}  // namespace

TEST_CASE("nu examples") {
    // nu(1) = sqrt(2 pi) e^{-1} - 1, direct high-precision expression.
    const double nu1_expect = std::sqrt(2 * pi) / e_const - 1.0;
    CHECK(std::fabs(nu(1) - nu1_expect) <= 1e-12);
    CHECK(std::fabs(nu(1) + 0.077863) <= 1e-5);

    // nu(10) via exact 10!.
    const double stirling10 =
        std::sqrt(2 * pi * 10) * std::exp(10 * (std::log(10.0) - 1.0));
    const double nu10_expect = stirling10 / 3628800.0 - 1.0;
    CHECK(std::fabs(nu(10) - nu10_expect) / std::fabs(nu10_expect) <= 1e-10);
    CHECK(std::fabs(nu(10) + 0.008296) <= 1e-6);

    for (int p : {1, 2, 7, 100, 5000, 10000})
        CHECK(p * std::fabs(nu(p)) <= 0.1);
    CHECK_THROWS_AS(nu(0), std::domain_error);
}

TEST_CASE("varphi") {
    CHECK(std::fabs(varphi(std::exp(-1.0)) - 1.0) <= 1e-15);
    CHECK(std::fabs(varphi(std::exp(-2.0)) - 2.0 / e_const) <= 1e-15);
    for (double xi : {0.1, 0.5, 0.9}) CHECK(varphi(xi) < 1.0);
    CHECK_THROWS_AS(varphi(0.0), std::domain_error);
    CHECK_THROWS_AS(varphi(1.0), std::domain_error);
}

TEST_CASE("b_p matches the shifted density") {
    // Defining identities at the bump centers.
    {
        const DensityValue lhs = b_p(std::exp(-1.0), 1);
        const DensityValue rhs = density_series(PuncturedPoint(1.0), 2);
        CHECK(std::fabs(std::expm1(lhs.value.log_abs - rhs.value.log_abs)) <=
              1e-12);
        const DensityValue lhs2 = b_p(std::exp(-2.0), 2);
        const DensityValue rhs2 = density_series(PuncturedPoint(2.0), 3);
        CHECK(std::fabs(std::expm1(lhs2.value.log_abs - rhs2.value.log_abs)) <=
              1e-12);
    }
    std::mt19937 rng(4242);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int i = 0; i < 30; ++i) {
        const double u = std::exp(std::log(0.05) + unif(rng) * std::log(400.0));
        const int p = 1 + int(unif(rng) * 40);
        const DensityValue lhs = b_p(std::exp(-u), p);
        const DensityValue rhs = density_series(PuncturedPoint(u), p + 1);
        CHECK(std::fabs(std::expm1(lhs.value.log_abs - rhs.value.log_abs)) <=
              1e-12);
        CHECK(lhs.value.sign == +1);
    }
    CHECK_THROWS_AS(b_p(0.0, 3), std::domain_error);
    CHECK_THROWS_AS(b_p(1.0, 3), std::domain_error);
}

TEST_CASE("f_p defining identity") {
    for (auto [x, p] : {std::pair{0.5, 7}, std::pair{0.9, 20}}) {
        const DensityValue lhs = f_p(RescaledPoint(x), p);
        const DensityValue rhs = b_p(std::pow(x, p), p);
        CHECK(std::fabs(std::expm1(lhs.value.log_abs - rhs.value.log_abs)) <=
              1e-12);
    }
    CHECK_THROWS_AS(RescaledPoint(1.0), std::domain_error);
    CHECK_THROWS_AS(RescaledPoint(0.0), std::domain_error);
}

TEST_CASE("scaled f_p at the first bump center") {
    const int p = 100;
    const double scaled = scaled_fp(RescaledPoint(std::exp(-1.0)), p);
    const double lo = 1.0 * (1.0 + nu(p));
    const double hi = (1.0 + 1e-6) * (1.0 + nu(p));
    CHECK(scaled >= lo - 1e-12);
    CHECK(scaled <= hi + 1e-12);
}

TEST_CASE("psi_p") {
    for (int p : {1, 3, 50}) CHECK(psi_p(1.0, p) == 1.0);
    CHECK(std::fabs(psi_p(2.0, 1) - 2.0 / e_const) <= 1e-15);
    const double q = 2.0 / e_const;
    CHECK(std::fabs(psi_p(2.0, 4) - q * q * q * q) <= 1e-14);
    CHECK_THROWS_AS(psi_p(0.0, 3), std::domain_error);

    // Two routes: psi_p(zeta) = varphi(e^{-zeta})^p.
    for (double zeta : {0.2, 0.7, 1.3, 2.5, 5.0}) {
        for (int p : {1, 4, 19}) {
            const double a = psi_p(zeta, p);
            const double b = std::pow(varphi(std::exp(-zeta)), p);
            CHECK(std::fabs(a - b) / b <= 1e-12);
        }
    }

    // Monotone tail: psi_{p+1} <= psi_p for zeta >= 2.
    for (double zeta : {2.0, 3.5, 8.0})
        for (int p : {1, 5, 40}) CHECK(psi_p(zeta, p + 1) <= psi_p(zeta, p));
}

TEST_CASE("gauss kernels") {
    CHECK(gauss0(0.0) == 1.0);
    CHECK(gauss1(0.0) == 0.0);
    for (double eta : {0.5, 1.0, 2.0}) CHECK(gauss1(-eta) == -gauss1(eta));
    const double expect = 3.0 * std::sqrt(3.0) * std::exp(-1.5);
    CHECK(std::fabs(gauss1(std::sqrt(3.0)) - expect) <= 1e-15);
}

TEST_CASE("delta_p") {
    for (int p : {1, 2, 10, 1000, 10000}) CHECK(delta_p(1.0, p) == 0.0);

    // 2/e - e^{-1/2} - e^{-1/2}/3 in high precision.
    const double expect = 2.0 / e_const - std::exp(-0.5) - std::exp(-0.5) / 3.0;
    CHECK(std::fabs(delta_p(2.0, 1) - expect) <= 1e-15);

    // Series path continuity across the crossover |1-zeta| = 1e-2/sqrt(p).
    for (int p : {4, 100, 10000}) {
        const double h0 = 1e-2 / std::sqrt(double(p));
        const double inside = delta_p(1.0 + 0.999 * h0, p);
        const double outside = delta_p(1.0 + 1.001 * h0, p);
        const double scale = std::max(std::fabs(inside), std::fabs(outside));
        CHECK(std::fabs(inside - outside) <= 0.02 * scale + 1e-300);
    }
    CHECK_THROWS_AS(delta_p(0.0, 3), std::domain_error);
}

TEST_CASE("uniform bound behavior of delta_p") {
    // |delta_p| <= C / (p (1 + p (1-zeta)^2)) with a p-independent C.
    const auto grid = zeta_scan_grid();
    const double c1 = delta_bound_scan(1, grid).sup_weighted_error;
    CHECK(c1 > 0.1);
    CHECK(c1 < 10.0);
    for (int p : {7, 300}) {
        const auto r = delta_bound_scan(p, grid);
        CHECK(r.sup_weighted_error <= 2.0 * c1);
        CHECK(r.argmax > 0.0);
        CHECK(r.grid_size == int(grid.size()));
    }
}

TEST_CASE("gaussian_sum_Gp") {
    // At x = e^{-1} the l=1 term is G0(0) = 1; l >= 2 are negligible.
    const double g = gaussian_sum_Gp(RescaledPoint(std::exp(-1.0)), 100);
    CHECK(std::fabs(g - 1.0) <= 1e-10);

    // Depends on x only through |log x|.
    const double x = 0.417;
    CHECK(gaussian_sum_Gp(RescaledPoint(x), 37) ==
          gaussian_sum_Gp(RescaledPoint(std::exp(std::log(x))), 37));

    // Far outside the bump window the sum is empty.
    CHECK(gaussian_sum_Gp(RescaledPoint(1e-30), 400) == 0.0);
}

TEST_CASE("gauss0/gauss1 sup laws") {
    for (int p : {25, 100, 900}) {
        const double s0 = gauss0_sup(p);
        CHECK(s0 >= 1.0 - 1e-12);
        CHECK(s0 <= 1.0 + 2.0 / std::sqrt(double(p)));
        CHECK(gauss1_sup(p) <= 2.0);
    }
}

TEST_CASE("phi-sum and density defect scans measure the same bound") {
    const auto grid = logx_scan_grid();
    const int p = 10;
    const double a = phi_sum_defect_scan(p, grid).sup_weighted_error;
    const double b = density_defect_scan(p, grid).sup_weighted_error;
    CHECK(std::fabs(a / b - 1.0) <= 0.05);
    CHECK(a > 0.0);

    // Weighted sup constants stay bounded along the p-ladder.
    const double c100 = phi_sum_defect_scan(100, grid).sup_weighted_error;
    CHECK(a / c100 <= 2.0);
    CHECK(a / c100 >= 0.5);
}

TEST_CASE("sup_scan structure") {
    const ScanReport r = sup_scan(400);
    CHECK(std::fabs(r.argmax_u / 400.0 - 1.0) <= 0.2);
    CHECK(r.scaled_sup > 0.9);
    CHECK(r.scaled_sup < 1.1);
    CHECK(r.evaluations > 0);
    // Scaled sup approaches 1 from below along the ladder.
    const ScanReport r2 = sup_scan(1600);
    CHECK(std::fabs(r2.scaled_sup - 1.0) < std::fabs(r.scaled_sup - 1.0));
    CHECK_THROWS_AS(sup_scan(1), std::domain_error);
}

TEST_CASE("density_gaussian_approx tracks the bump-sum model") {
    const PuncturedPoint pt(400.0);
    const DensityValue approx = density_gaussian_approx(pt, 400);
    const DensityValue exact = density_series(pt, 400);
    const double rel =
        std::fabs(std::expm1(approx.value.log_abs - exact.value.log_abs));
    CHECK(rel <= 0.05);
    CHECK(approx.method_used == Method::GaussianApprox);
    CHECK(approx.tail_bound > 0.0);
}

TEST_CASE("grid builders") {
    const auto g = geometric_grid(1e-2, 1e2, 8);
    CHECK(g.size() == 33);
    CHECK(std::fabs(g.front() - 1e-2) <= 1e-15);
    CHECK(std::fabs(g.back() - 1e2) / 1e2 <= 1e-12);
    const auto zg = zeta_scan_grid();
    for (double z : zg) CHECK(z > 0.0);
    const auto lg = logx_scan_grid();
    CHECK(lg.size() >= 500);
}

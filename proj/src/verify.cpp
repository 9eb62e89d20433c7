#include "pdisc/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <stdexcept>

#include "pdisc/asymptotics.hpp"
#include "pdisc/density.hpp"
#include "pdisc/gaussian.hpp"
#include "pdisc/orbifold.hpp"
#include "pdisc/quadrature.hpp"

namespace pdisc {

namespace {

constexpr double two_pi = 6.283185307179586477;

using Checks = std::vector<CheckResult>;

CheckResult check_le(const std::string& name, double measured,
                     double threshold, const std::string& note = "") {
    return {name, measured <= threshold, measured, threshold, note};
}

CheckResult check_in(const std::string& name, double measured, double lo,
                     double hi, const std::string& note = "") {
    CheckResult c{name, measured >= lo && measured <= hi, measured, hi, note};
    return c;
}

std::vector<double> log_spaced(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i)
        v[i] = lo * std::pow(hi / lo, double(i) / (n - 1));
    return v;
}

// 1. Cross-method oracle equivalence.
Checks criterion1(bool fast) {
    const std::vector<int> ps =
        fast ? std::vector<int>{2, 5, 50} : std::vector<int>{2, 3, 5, 10, 50, 200, 1000};
    const int nu_pts = fast ? 12 : 40;
    SeriesConfig scfg;
    scfg.rel_tol = 1e-12;
    scfg.max_terms = 50'000'000;
    SeriesConfig ccfg;
    ccfg.rel_tol = 1e-10;

    double worst = 0.0;
    for (int p : ps) {
        for (double u : log_spaced(1e-4, 50.0, nu_pts)) {
            const PuncturedPoint pt(u);
            const DensityValue s = density_series(pt, p, scfg);
            const DensityValue c = density_closed_form(pt, p, ccfg);
            const double rel =
                std::fabs(std::expm1(s.value.log_abs - c.value.log_abs));
            worst = std::max(worst, rel);
        }
    }
    return {check_le("series vs partial-fraction worst relative gap", worst,
                     1e-10)};
}

// 2. Orthonormality against Gauss-Laguerre and adaptive panels.
Checks criterion2(bool fast) {
    QuadConfig gl;
    gl.scheme = QuadScheme::GaussLaguerre;
    QuadConfig ap;
    ap.scheme = QuadScheme::AdaptivePanels;
    double worst_gl = 0.0, worst_ap = 0.0;
    const int pstep = fast ? 7 : 1;
    for (int p = 2; p <= 30; p += pstep) {
        for (int l = 1; l <= 10; ++l) {
            const double exact = std::exp(basis_norm_sq(p, l).log_abs);
            worst_gl = std::max(
                worst_gl, std::fabs(basis_norm_quadrature(p, l, gl) - exact) / exact);
            worst_ap = std::max(
                worst_ap, std::fabs(basis_norm_quadrature(p, l, ap) - exact) / exact);
        }
    }
    return {check_le("Gauss-Laguerre vs 2pi(p-2)!/l^{p-1}", worst_gl, 1e-9),
            check_le("adaptive panels vs 2pi(p-2)!/l^{p-1}", worst_ap, 1e-9)};
}

// 3. Reproducing property.
Checks criterion3(bool fast) {
    double worst = 0.0;
    const int pstep = fast ? 15 : 5;
    for (int p = 3; p <= 40; p += pstep)
        for (int l : {1, 2, 3, 5})
            for (double ux : {0.5, 1.0, 5.0, 20.0})
                worst = std::max(worst,
                                 reproduce_basis(PuncturedPoint(ux), p, l));
    return {check_le("reproducing-identity worst relative error", worst, 1e-8)};
}

// 4. Boundary law.
Checks criterion4(bool fast) {
    Checks out;
    const std::vector<int> ps =
        fast ? std::vector<int>{200, 1000} : std::vector<int>{200, 400, 1000, 2000, 5000};
    const std::vector<double> coeffs = compact_coefficient_check(ps, 1.0);
    double worst = 0.0;
    for (double v : coeffs) worst = std::max(worst, std::fabs(v + 1.0));
    out.push_back(check_le("2pi B_p(u=1) - p deviation from -1", worst, 1e-6));

    const std::vector<int> fit_ps{40, 60, 80, 100, 120, 140};
    const DecayFit fit = decay_fit(0.5, fit_ps);
    out.push_back(check_in("annulus decay fit r^2 (a = 1/2)", fit.r2, 0.99, 1.0));
    out.push_back(check_in("annulus decay rate (a = 1/2)", fit.fitted_rate,
                           1e-6, 1e9));
    return out;
}

// 5. Sup-norm law.
Checks criterion5(bool fast) {
    Checks out;
    const std::vector<int> ps =
        fast ? std::vector<int>{100, 400} : std::vector<int>{100, 400, 1600, 6400};
    std::map<int, ScanReport> scans;
    for (int p : ps) scans[p] = sup_scan(p);

    const ScanReport& ref = scans.at(400);
    const double c0 = std::fabs(ref.scaled_sup - 1.0) * std::sqrt(400.0);
    out.push_back(check_in("C0 = |s_400 - 1| sqrt(400)", c0, 0.0, 10.0));
    for (int p : ps) {
        if (p == 400) continue;
        const double dev = std::fabs(scans.at(p).scaled_sup - 1.0);
        out.push_back(check_le("|s_" + std::to_string(p) + " - 1| vs 2 C0/sqrt(p)",
                               dev, 2.0 * c0 / std::sqrt(double(p))));
    }
    const double res_ref = std::fabs(ref.residual);
    for (int p : ps) {
        if (p == 400) continue;
        out.push_back(check_le(
            "|residual_" + std::to_string(p) + "| vs 2 |residual_400|",
            std::fabs(scans.at(p).residual), 2.0 * res_ref));
    }
    return out;
}

// 6. Gaussian approximation, density route against the bump sum.
Checks criterion6(bool fast) {
    const std::vector<int> ps =
        fast ? std::vector<int>{10, 100} : std::vector<int>{10, 100, 1000};
    const std::vector<double> grid = logx_scan_grid();
    std::map<int, double> c;
    for (int p : ps) c[p] = density_defect_scan(p, grid).sup_weighted_error;
    Checks out;
    const double ref = c.at(100);
    for (int p : ps) {
        out.push_back(check_in(
            "weighted sup C_" + std::to_string(p) + " / C_100", c.at(p) / ref,
            0.5, 2.0));
    }
    return out;
}

// 7. Uniform delta_p bound.
Checks criterion7(bool fast) {
    const std::vector<int> ps =
        fast ? std::vector<int>{1, 10, 100} : std::vector<int>{1, 10, 100, 1000, 10000};
    const std::vector<double> grid = zeta_scan_grid();
    Checks out;
    const double ref = delta_bound_scan(ps.front(), grid).sup_weighted_error;
    for (int p : ps) {
        const double c = delta_bound_scan(p, grid).sup_weighted_error;
        out.push_back(check_in("p(1+p(1-z)^2)|delta_p| sup, p=" +
                                   std::to_string(p) + " vs p=1",
                               c / ref, 0.5, 2.0));
    }
    double worst_center = 0.0;
    for (int p : ps)
        worst_center = std::max(worst_center, std::fabs(delta_p(1.0, p)));
    out.push_back(check_le("delta_p(1) exact zero", worst_center, 0.0));
    return out;
}

// 8. Stirling correction.
Checks criterion8(bool) {
    double worst = 0.0;
    for (int p = 1; p <= 10000; ++p)
        worst = std::max(worst, p * std::fabs(nu(p)));
    const double nu1 = nu(1);
    return {check_le("max p|nu(p)| on [1, 1e4]", worst, 0.1),
            check_le("|nu(1) + 0.077863|", std::fabs(nu1 + 0.077863), 1e-5)};
}

// 9. Orbifold model.
Checks criterion9(bool) {
    Checks out;
    const auto z3 = StabilizerSpec::cyclic(3);
    const double v = orbifold_local_density(0.0, 3, z3).value;
    out.push_back(check_le("cyclic n=3, p=3 at z=0 vs 9/pi",
                           std::fabs(v - 9.0 / std::numbers::pi), 1e-12));

    double worst_imag = 0.0;
    for (int n : {2, 3, 4, 6}) {
        const auto spec = StabilizerSpec::cyclic(n);
        for (int p : {3, 10, 101, 1024, 9999}) {
            for (int i = 0; i < 5; ++i) {
                const double z = (10.0 / std::sqrt(double(p))) * i / 4.0;
                worst_imag = std::max(
                    worst_imag,
                    std::fabs(orbifold_local_density(z, p, spec).imag_residual));
            }
        }
    }
    out.push_back(
        check_le("imag residual on 100-point (|z|, p) grid", worst_imag, 1e-12));

    const auto z1 = StabilizerSpec::cyclic(1);
    double worst_triv = 0.0;
    for (int p : {1, 7, 500}) {
        const double got = orbifold_local_density(0.3, p, z1).value;
        const double want = double(p) / std::numbers::pi;
        worst_triv = std::max(worst_triv, std::fabs(got - want));
    }
    out.push_back(check_le("trivial stabilizer returns p/pi", worst_triv, 0.0));
    return out;
}

// 10. Bump structure of the rescaled density.
Checks criterion10(bool) {
    Checks out;
    const auto bumps = bump_profile(400, 3);
    for (int l = 1; l <= 3; ++l) {
        const auto& b = bumps[l - 1];
        out.push_back(check_le(
            "bump " + std::to_string(l) + " |log location + 1/l|",
            std::fabs(std::log(b.location) + 1.0 / l), 0.05 / l));
        out.push_back(check_le("bump " + std::to_string(l) + " |height - 1/l|",
                               std::fabs(b.height - 1.0 / l), 0.05));
    }
    return out;
}

// 11. Invariant suites on seeded grids.
Checks criterion11(bool fast) {
    Checks out;
    std::mt19937 rng(20260808);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    auto rand_u = [&] { return std::exp(std::log(0.05) + unif(rng) * std::log(200.0)); };

    // Positivity + circle invariance.
    bool positive = true, circle = true;
    for (int i = 0; i < (fast ? 40 : 200); ++i) {
        const double u = rand_u();
        const int p = 2 + int(unif(rng) * 60);
        const DensityValue a = density_series(PuncturedPoint(u, 0.3), p);
        const DensityValue b =
            density_series(PuncturedPoint(u, unif(rng) * 6.28), p);
        positive = positive && a.value.sign == +1;
        circle = circle && a.value.log_abs == b.value.log_abs &&
                 a.value.sign == b.value.sign;
    }
    out.push_back({"positivity on random (u, p) grid", positive, positive ? 1.0 : 0.0, 1.0, ""});
    out.push_back({"circle invariance (theta never enters)", circle, circle ? 1.0 : 0.0, 1.0, ""});

    // Cauchy-Schwarz + Hermitian symmetry on random pairs.
    double worst_cs = -1e300;
    double worst_herm = 0.0;
    for (int p : {2, 5, 11}) {
        const int n = fast ? 6 : 20;
        std::vector<PuncturedPoint> pts;
        for (int i = 0; i < n; ++i)
            pts.push_back(PuncturedPoint(
                std::exp(std::log(0.2) + unif(rng) * std::log(50.0)),
                unif(rng) * 6.28));
        for (const auto& x : pts)
            for (const auto& y : pts) {
                const LogMagnitude w = kernel_weighted_modulus(x, y, p);
                const double dx = density_series(x, p).value.log_abs;
                const double dy = density_series(y, p).value.log_abs;
                if (!w.is_zero())
                    worst_cs = std::max(worst_cs,
                                        w.log_abs - 0.5 * (dx + dy));
                const OffdiagValue f = kernel_offdiag(x, y, p);
                const OffdiagValue g = kernel_offdiag(y, x, p);
                if (!f.modulus.is_zero()) {
                    worst_herm = std::max(
                        worst_herm,
                        std::fabs(f.modulus.log_abs - g.modulus.log_abs));
                    double phase_sum = f.phase + g.phase;  // = 0 mod 2pi
                    phase_sum = std::fabs(
                        std::remainder(phase_sum, two_pi));
                    worst_herm = std::max(worst_herm, phase_sum);
                }
            }
    }
    out.push_back(check_le("Cauchy-Schwarz log slack", worst_cs, 1e-12));
    out.push_back(check_le("Hermitian symmetry (modulus & phase)", worst_herm,
                           1e-9));

    // Truncation certification: loose-run drift below its own tail bound.
    double worst_cert = 0.0;
    for (int i = 0; i < (fast ? 20 : 100); ++i) {
        const double u = rand_u();
        const int p = 2 + int(unif(rng) * 200);
        SeriesConfig loose;
        loose.rel_tol = 1e-6;
        SeriesConfig tight;
        tight.rel_tol = 1e-12;
        const DensityValue a = density(PuncturedPoint(u), p, loose);
        const DensityValue b = density(PuncturedPoint(u), p, tight);
        const double drift = std::fabs(std::expm1(a.value.log_abs - b.value.log_abs));
        // The geometric certificate is sharp far past the peak, so the
        // tight run's own bound must be carried on the other side.
        const double budget = a.tail_bound + b.tail_bound;
        if (budget > 0.0) worst_cert = std::max(worst_cert, drift / budget);
    }
    out.push_back(check_le("drift / certified tail bounds (loose vs tight)",
                           worst_cert, 1.0));

    // Determinism: bitwise repeatability.
    bool deterministic = true;
    {
        const DensityValue a = density(PuncturedPoint(0.37), 37);
        const DensityValue b = density(PuncturedPoint(0.37), 37);
        deterministic = deterministic && a.value.log_abs == b.value.log_abs;
        const ScanReport s1 = sup_scan(64);
        const ScanReport s2 = sup_scan(64);
        deterministic = deterministic && s1.sup == s2.sup &&
                        s1.argmax_u == s2.argmax_u;
    }
    out.push_back({"determinism (bitwise repeat)", deterministic,
                   deterministic ? 1.0 : 0.0, 1.0, ""});
    return out;
}

struct CriterionSpec {
    int id;
    const char* name;
    Checks (*fn)(bool);
    double budget;
    const char* suite;
};

const CriterionSpec kCriteria[] = {
    {1, "cross-method oracle equivalence", criterion1, 10.0, "kernel"},
    {2, "orthonormality (basis norms)", criterion2, 30.0, "quadrature"},
    {3, "reproducing property", criterion3, 60.0, "quadrature"},
    {4, "boundary law", criterion4, 20.0, "asymptotics"},
    {5, "sup-norm law", criterion5, 120.0, "gaussian"},
    {6, "Gaussian approximation bound", criterion6, 60.0, "gaussian"},
    {7, "delta_p uniform bound", criterion7, 30.0, "appendix"},
    {8, "Stirling correction", criterion8, 5.0, "gaussian"},
    {9, "orbifold local model", criterion9, 5.0, "orbifold"},
    {10, "rescaled-density bump structure", criterion10, 20.0, "gaussian"},
    {11, "invariant suites", criterion11, 60.0, "kernel"},
};

}  // namespace

std::vector<int> criterion_ids() {
    std::vector<int> ids;
    for (const auto& c : kCriteria) ids.push_back(c.id);
    return ids;
}

CriterionResult run_criterion(int id, bool fast) {
    for (const auto& spec : kCriteria) {
        if (spec.id != id) continue;
        CriterionResult r;
        r.id = id;
        r.name = spec.name;
        r.budget = spec.budget;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            r.checks = spec.fn(fast);
        } catch (const truncation_failure& e) {
            r.checks.push_back({std::string("exception: ") + e.what(), false,
                                0.0, 0.0, "numeric-failure"});
        } catch (const accuracy_cap& e) {
            r.checks.push_back({std::string("exception: ") + e.what(), false,
                                0.0, 0.0, "numeric-failure"});
        } catch (const std::exception& e) {
            r.checks.push_back({std::string("exception: ") + e.what(), false,
                                0.0, 0.0, ""});
        }
        r.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
        return r;
    }
    throw std::invalid_argument("unknown criterion id");
}

std::vector<std::string> suite_names() {
    return {"all",      "kernel",   "gaussian", "appendix",
            "quadrature", "asymptotics", "orbifold"};
}

SuiteResult run_suite(const std::string& name, bool fast) {
    const auto names = suite_names();
    if (std::find(names.begin(), names.end(), name) == names.end())
        throw std::invalid_argument("unknown suite: " + name);
    SuiteResult out;
    out.suite = name;
    for (const auto& spec : kCriteria) {
        if (name == "all" || name == spec.suite)
            out.criteria.push_back(run_criterion(spec.id, fast));
    }
    return out;
}

}  // namespace pdisc

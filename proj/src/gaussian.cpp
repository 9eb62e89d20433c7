#include "pdisc/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pdisc/density.hpp"
#include "pdisc/special.hpp"

namespace pdisc {

namespace {

constexpr double two_pi = 6.283185307179586477;

// 1 - zeta + log zeta, full relative precision. The direct form loses
// ~h digits near zeta = 1 where the value is -h^2/2 + O(h^3).
double omega(double zeta) {
    const double h = zeta - 1.0;
    if (std::fabs(h) <= 0.25) {
        // -sum_{m>=2} (-h)^m / m
        double term = h * h;  // h^m with sign handled below
        double sum = -term / 2.0;
        double hp = term;
        for (int m = 3; m < 60; ++m) {
            hp *= -h;
            const double t = -hp / m;
            sum += t;
            if (std::fabs(t) < 1e-18 * std::fabs(sum)) break;
        }
        return sum;
    }
    return std::log(zeta) - h;
}

// tail4(h) = omega(1+h) + h^2/2 - h^3/3 = sum_{m>=4} (-1)^{m+1} h^m / m.
double omega_tail4(double h) {
    double hp = h * h * h * h;  // h^m
    double sign = -1.0;        // (-1)^{m+1} at m = 4
    double sum = sign * hp / 4.0;
    for (int m = 5; m < 24; ++m) {
        hp *= h;
        sign = -sign;
        const double t = sign * hp / m;
        sum += t;
        if (std::fabs(t) < 1e-20 * std::fabs(sum) || hp == 0.0) break;
    }
    return sum;
}

// e^x - 1 - x for |x| << 1.
double expm1_minus_x(double x) {
    double term = 0.5 * x * x;
    double sum = term;
    for (int n = 3; n < 12; ++n) {
        term *= x / n;
        sum += term;
        if (std::fabs(term) < 1e-20 * std::fabs(sum)) break;
    }
    return sum;
}

struct KahanAcc {
    double s = 0.0, c = 0.0;
    void add(double v) {
        const double t = s + v;
        if (std::fabs(s) >= std::fabs(v))
            c += (s - t) + v;
        else
            c += (v - t) + s;
        s = t;
    }
    double value() const { return s + c; }
};

// G_p in terms of L = |log x|.
double gaussian_sum_L(double L, int p) {
    const double sp = std::sqrt(double(p));
    const double half_width = 40.0 / sp;
    const double lo = (1.0 - half_width) / L;
    const double hi = (1.0 + half_width) / L;
    const std::int64_t l0 = std::max<std::int64_t>(1, std::int64_t(std::ceil(lo)));
    const std::int64_t l1 = std::int64_t(std::floor(hi));
    if (l1 - l0 > 500'000'000)
        throw truncation_failure("gaussian_sum: bump window exceeds 5e8 terms");

    KahanAcc s0, s1;
    for (std::int64_t l = l0; l <= l1; ++l) {
        const double eta = sp * (1.0 - double(l) * L);
        const double g = std::exp(-0.5 * eta * eta);
        s0.add(g);
        s1.add(eta * eta * eta * g);
    }
    return L * (s0.value() - s1.value() / (3.0 * sp));
}

// |log x| * sum_l psi_p(l L). psi_p(zeta) = e^{-p g(zeta)} with
// g(zeta) = zeta - 1 - log zeta >= 0, so only zeta with p g(zeta) <= 745
// contribute above the double underflow floor.
double phi_power_sum_L(double L, int p) {
    const double cut = 745.0 / double(p);
    auto g = [](double z) { return z - 1.0 - std::log(z); };

    // Lower root of g = cut in (0, 1]: g decreases there.
    double zeta_lo = 1e-300;
    if (g(zeta_lo) > cut) {
        double a = zeta_lo, b = 1.0;  // g(a) > cut >= g(b)
        for (int i = 0; i < 200 && b / a > 1.0 + 1e-14; ++i) {
            const double m = std::sqrt(a * b);
            (g(m) > cut ? a : b) = m;
        }
        zeta_lo = a;
    }
    // Upper root in [1, inf): g increases.
    double a = 1.0, b = 2.0;
    while (g(b) < cut) b *= 2.0;
    for (int i = 0; i < 200 && (b - a) > 1e-14 * b; ++i) {
        const double m = 0.5 * (a + b);
        (g(m) > cut ? b : a) = m;
    }
    const double zeta_hi = b;

    const std::int64_t l0 =
        std::max<std::int64_t>(1, std::int64_t(std::ceil(zeta_lo / L)));
    const std::int64_t l1 = std::int64_t(std::floor(zeta_hi / L));
    KahanAcc s;
    for (std::int64_t l = l0; l <= l1; ++l)
        s.add(std::exp(double(p) * omega(double(l) * L)));
    return L * s.value();
}

// Golden-section maximum of f on [a, b].
template <typename F>
std::pair<double, double> golden_max(F&& f, double a, double b, int iters = 120) {
    constexpr double inv_phi = 0.6180339887498949;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < iters && (b - a) > 1e-13 * (std::fabs(a) + std::fabs(b));
         ++i) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    return f1 > f2 ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

template <typename F>
BoundScanReport weighted_sup_scan(int p, std::span<const double> grid, F&& w) {
    BoundScanReport r;
    r.p = p;
    r.grid_size = int(grid.size());
    for (double g : grid) {
        const double v = w(g);
        if (v > r.sup_weighted_error) {
            r.sup_weighted_error = v;
            r.argmax = g;
        }
    }
    return r;
}

}  // namespace

double nu(int p) {
    if (p < 1) throw std::domain_error("nu: requires p >= 1");
    if (p <= 5) {
        double fact = 1.0;
        for (int i = 2; i <= p; ++i) fact *= i;
        const double stirling = std::sqrt(two_pi * p) *
                                std::exp(p * (std::log(double(p)) - 1.0));
        return stirling / fact - 1.0;
    }
    return std::expm1(-detail::stirling_tail(double(p)));
}

double varphi(double xi) {
    if (!(xi > 0.0) || !(xi < 1.0))
        throw std::domain_error("varphi: requires 0 < xi < 1");
    return -std::numbers::e * xi * std::log(xi);
}

double psi_p(double zeta, int p) {
    if (!(zeta > 0.0)) throw std::domain_error("psi_p: requires zeta > 0");
    if (p < 1) throw std::domain_error("psi_p: requires p >= 1");
    return std::exp(double(p) * omega(zeta));
}

double gauss0(double eta) { return std::exp(-0.5 * eta * eta); }

double gauss1(double eta) { return eta * eta * eta * std::exp(-0.5 * eta * eta); }

double delta_p(double zeta, int p) {
    if (!(zeta > 0.0)) throw std::domain_error("delta_p: requires zeta > 0");
    if (p < 1) throw std::domain_error("delta_p: requires p >= 1");
    const double h = zeta - 1.0;
    const double sp = std::sqrt(double(p));
    if (std::fabs(h) <= 1e-2 / sp) {
        // delta = e^{-p h^2/2} (p tail4(h) + q(E)),
        // E = p (h^3/3 + tail4(h)), q(E) = e^E - 1 - E. Exact at h = 0.
        const double t4 = omega_tail4(h);
        const double E = double(p) * (h * h * h / 3.0 + t4);
        const double q = expm1_minus_x(E);
        return std::exp(-0.5 * p * h * h) * (double(p) * t4 + q);
    }
    const double eta = sp * (1.0 - zeta);
    return psi_p(zeta, p) - gauss0(eta) + gauss1(eta) / (3.0 * sp);
}

DensityValue b_p(double y, int p, const SeriesConfig& cfg) {
    if (!(y > 0.0) || !(y < 1.0))
        throw std::domain_error("b_p: requires 0 < y < 1");
    if (p < 1) throw std::domain_error("b_p: requires p >= 1");
    return density(PuncturedPoint(-std::log(y)), p + 1, cfg);
}

DensityValue f_p(const RescaledPoint& x, int p, const SeriesConfig& cfg) {
    if (p < 1) throw std::domain_error("f_p: requires p >= 1");
    const double u = -double(p) * std::log(x.x);
    return density(PuncturedPoint(u), p + 1, cfg);
}

double scaled_fp(const RescaledPoint& x, int p, const SeriesConfig& cfg) {
    const DensityValue v = f_p(x, p, cfg);
    return std::exp(v.value.log_abs + 1.5 * std::log(two_pi / double(p)));
}

double gaussian_sum_Gp(const RescaledPoint& x, int p) {
    if (p < 1) throw std::domain_error("gaussian_sum_Gp: requires p >= 1");
    return gaussian_sum_L(-std::log(x.x), p);
}

DensityValue density_gaussian_approx(const PuncturedPoint& pt, int p) {
    if (p < 2) throw std::domain_error("density: requires p >= 2");
    const int q = p - 1;  // B_p = b_{p-1}(|z|^2) = f_{q} at x = |z|^{2/q}
    const double L = pt.u() / double(q);
    const double gp = gaussian_sum_L(L, q);
    DensityValue out;
    out.method_used = Method::GaussianApprox;
    out.terms_used = 0;
    if (gp <= 0.0) {
        out.value = LogMagnitude::zero();
        out.tail_bound = 1.0;
        return out;
    }
    const double log_val = std::log(gp) + std::log1p(nu(q)) +
                           1.5 * std::log(double(q) / two_pi);
    out.value = LogMagnitude::from_log(+1, log_val);
    // Model error is O(1/(q + q L)) on the scaled function, not certified.
    out.tail_bound = 4.0 / ((q + q * L) * gp);
    return out;
}

std::vector<double> geometric_grid(double lo, double hi, int points_per_decade) {
    const int n =
        int(std::floor(std::log10(hi / lo) * points_per_decade + 1e-9)) + 1;
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i)
        g[i] = lo * std::pow(10.0, double(i) / points_per_decade);
    return g;
}

std::vector<double> zeta_scan_grid(double g_lo, double g_hi) {
    std::vector<double> zs{1.0};
    for (double g : geometric_grid(g_lo, g_hi, 64)) {
        if (g < 1.0) zs.push_back(1.0 - g);
        zs.push_back(1.0 + g);
    }
    std::sort(zs.begin(), zs.end());
    return zs;
}

std::vector<double> logx_scan_grid(double lo, double hi) {
    std::vector<double> ls = geometric_grid(lo, hi, 64);
    for (int l = 1; l <= 64; ++l) ls.push_back(1.0 / l);
    std::sort(ls.begin(), ls.end());
    return ls;
}

BoundScanReport delta_bound_scan(int p, std::span<const double> zeta_grid) {
    if (p < 1) throw std::domain_error("delta_bound_scan: requires p >= 1");
    return weighted_sup_scan(p, zeta_grid, [p](double zeta) {
        const double w = 1.0 + double(p) * (1.0 - zeta) * (1.0 - zeta);
        return double(p) * w * std::fabs(delta_p(zeta, p));
    });
}

BoundScanReport phi_sum_defect_scan(int p, std::span<const double> logx_grid,
                                    const SeriesConfig& cfg) {
    if (p < 1) throw std::domain_error("phi_sum_defect_scan: requires p >= 1");
    cfg.validate();
    return weighted_sup_scan(p, logx_grid, [p](double L) {
        const double lhs = phi_power_sum_L(L, p);
        const double rhs = gaussian_sum_L(L, p);
        return double(p) * (1.0 + L) * std::fabs(lhs - rhs);
    });
}

BoundScanReport density_defect_scan(int p, std::span<const double> u_grid,
                                    const SeriesConfig& cfg) {
    if (p < 1) throw std::domain_error("density_defect_scan: requires p >= 1");
    cfg.validate();
    const double scale = std::exp(1.5 * std::log(two_pi / double(p))) /
                         (1.0 + nu(p));
    return weighted_sup_scan(p, u_grid, [&](double u) {
        const DensityValue d = density(PuncturedPoint(u), p + 1, cfg);
        const double lhs = scale * d.linear();
        const double rhs = gaussian_sum_L(u / double(p), p);
        return (double(p) + u) * std::fabs(lhs - rhs);
    });
}

double gauss0_sup(int p) {
    auto f = [p](double logL) {
        const double L = std::exp(logL);
        const double sp = std::sqrt(double(p));
        const double half_width = 40.0 / sp;
        const std::int64_t l0 = std::max<std::int64_t>(
            1, std::int64_t(std::ceil((1.0 - half_width) / L)));
        const std::int64_t l1 = std::int64_t(std::floor((1.0 + half_width) / L));
        KahanAcc s;
        for (std::int64_t l = l0; l <= l1; ++l) {
            const double eta = sp * (1.0 - double(l) * L);
            s.add(std::exp(-0.5 * eta * eta));
        }
        return L * s.value();
    };
    double best = 0.0, best_logl = 0.0;
    for (double L : logx_scan_grid(1e-3, 1e2)) {
        const double v = f(std::log(L));
        if (v > best) {
            best = v;
            best_logl = std::log(L);
        }
    }
    return golden_max(f, best_logl - 0.1, best_logl + 0.1).second;
}

double gauss1_sup(int p) {
    auto f = [p](double logL) {
        const double L = std::exp(logL);
        const double sp = std::sqrt(double(p));
        const double half_width = 40.0 / sp;
        const std::int64_t l0 = std::max<std::int64_t>(
            1, std::int64_t(std::ceil((1.0 - half_width) / L)));
        const std::int64_t l1 = std::int64_t(std::floor((1.0 + half_width) / L));
        KahanAcc s;
        for (std::int64_t l = l0; l <= l1; ++l) {
            const double eta = sp * (1.0 - double(l) * L);
            s.add(eta * eta * eta * std::exp(-0.5 * eta * eta));
        }
        return L * std::fabs(s.value());
    };
    double best = 0.0, best_logl = 0.0;
    for (double L : logx_scan_grid(1e-3, 1e2)) {
        const double v = f(std::log(L));
        if (v > best) {
            best = v;
            best_logl = std::log(L);
        }
    }
    return golden_max(f, best_logl - 0.1, best_logl + 0.1).second;
}

ScanReport sup_scan(int p, const SeriesConfig& cfg) {
    if (p < 2) throw std::domain_error("sup_scan: requires p >= 2");
    cfg.validate();
    int evals = 0;
    auto f = [&](double log_u) {
        ++evals;
        return density(PuncturedPoint(std::exp(log_u)), p, cfg).linear();
    };

    std::vector<std::pair<double, double>> samples;
    auto coarse = [&](double ulo, double uhi, int n) {
        const double llo = std::log(ulo), lhi = std::log(uhi);
        samples.clear();
        int best_i = 0;
        double best_v = -1.0;
        for (int i = 0; i < n; ++i) {
            const double lu = llo + (lhi - llo) * i / (n - 1);
            const double v = f(lu);
            samples.emplace_back(std::exp(lu), v);
            if (v > best_v) {
                best_v = v;
                best_i = i;
            }
        }
        const double h = (lhi - llo) / (n - 1);
        const double la = llo + h * std::max(0, best_i - 1);
        const double lb = llo + h * std::min(n - 1, best_i + 1);
        return std::make_tuple(la, lb, best_i == 0 || best_i == n - 1);
    };

    auto [la, lb, edge] = coarse(std::max(1e-3, p / 8.0), 8.0 * p, 97);
    if (edge) {
        // Peak-location heuristic missed; rescan the full admissible range.
        auto [la2, lb2, edge2] = coarse(1e-3, 8.0 * p, 257);
        la = la2;
        lb = lb2;
        (void)edge2;
    }
    auto [log_u_star, sup] = golden_max(f, la, lb, 200);

    ScanReport r;
    r.p = p;
    r.sup = sup;
    r.argmax_u = std::exp(log_u_star);
    r.scaled_sup = sup * std::exp(1.5 * std::log(two_pi / double(p)));
    r.residual = (sup - std::pow(double(p) / two_pi, 1.5)) / double(p);
    r.evaluations = evals;
    r.samples = std::move(samples);
    return r;
}

}  // namespace pdisc

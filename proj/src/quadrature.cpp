#include "pdisc/quadrature.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include "pdisc/density.hpp"
#include "pdisc/special.hpp"

namespace pdisc {

namespace detail {

namespace {

// Laguerre recurrence with running rescale: values grow like e^{z/2}, which
// overflows past n ~ 350 nodes. Newton only needs the scale-free ratio
// p1/pp; the weight is reassembled from logs.
struct LaguerreEval {
    double p1, p2, pp;
    double log_scale;  // true value = stored * e^{log_scale}
};

LaguerreEval eval_laguerre(int n, double z) {
    double p1 = 1.0, p2 = 0.0, log_scale = 0.0;
    for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0 - z) * p2 - (j - 1.0) * p3) / j;
        const double m = std::max(std::fabs(p1), std::fabs(p2));
        if (m > 1e250) {
            p1 *= 1e-250;
            p2 *= 1e-250;
            log_scale += 575.6462732485114;  // ln 1e250
        }
    }
    return {p1, p2, n * (p1 - p2) / z, log_scale};
}

QuadRule make_laguerre(int n) {
    QuadRule r;
    r.x.resize(n);
    r.w.resize(n);
    double z = 0.0;
    for (int i = 0; i < n; ++i) {
        // Stroud-Secrest initial guesses, then Newton on L_n.
        if (i == 0)
            z = 3.0 / (1.0 + 2.4 * n);
        else if (i == 1)
            z += 15.0 / (1.0 + 2.5 * n);
        else
            z += ((1.0 + 2.55 * (i - 1)) / (1.9 * (i - 1))) * (z - r.x[i - 2]);

        LaguerreEval ev{};
        for (int it = 0; it < 100; ++it) {
            ev = eval_laguerre(n, z);
            const double z1 = z;
            z = z1 - ev.p1 / ev.pp;
            if (std::fabs(z - z1) <= 1e-15 * std::max(1.0, z)) break;
        }
        ev = eval_laguerre(n, z);
        r.x[i] = z;
        // w = -1/(pp n p2); assembled from logs so huge-node weights
        // underflow cleanly to zero. pp and p2 have opposite signs at a
        // root, making every weight positive.
        const double sign = ((ev.pp > 0.0) == (ev.p2 > 0.0)) ? -1.0 : 1.0;
        const double log_w = -2.0 * ev.log_scale - std::log(std::fabs(ev.pp)) -
                             std::log(double(n)) - std::log(std::fabs(ev.p2));
        r.w[i] = sign * std::exp(log_w);
    }
    return r;
}

QuadRule make_legendre(int n) {
    QuadRule r;
    r.x.resize(n);
    r.w.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::fabs(z - z1) <= 1e-15) break;
        }
        r.x[i] = -z;
        r.x[n - 1 - i] = z;
        r.w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        r.w[n - 1 - i] = r.w[i];
    }
    return r;
}

double panel(const std::function<double(double)>& f, const QuadRule& rule,
             double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double s = 0.0;
    for (size_t i = 0; i < rule.x.size(); ++i)
        s += rule.w[i] * f(mid + half * rule.x[i]);
    return s * half;
}

double adapt(const std::function<double(double)>& f, const QuadRule& rule,
             double a, double b, double rel_tol, double abs_floor, double whole,
             int depth) {
    const double mid = 0.5 * (a + b);
    const double left = panel(f, rule, a, mid);
    const double right = panel(f, rule, mid, b);
    const double split = left + right;
    if (depth > 48 || std::fabs(whole - split) <= rel_tol * std::fabs(split) ||
        std::fabs(split) <= abs_floor)
        return split;
    return adapt(f, rule, a, mid, rel_tol, abs_floor, left, depth + 1) +
           adapt(f, rule, mid, b, rel_tol, abs_floor, right, depth + 1);
}

}  // namespace

const QuadRule& laguerre_rule(int n) {
    static std::map<int, QuadRule> cache;
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, make_laguerre(n)).first;
    return it->second;
}

const QuadRule& legendre_rule(int n) {
    static std::map<int, QuadRule> cache;
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, make_legendre(n)).first;
    return it->second;
}

double adaptive_integrate(const std::function<double(double)>& f, double a,
                          double b, double rel_tol) {
    const QuadRule& rule = legendre_rule(16);
    // Composite pass for a magnitude scale, then refine each composite
    // panel. Panels negligible against the scale are accepted as-is; the
    // recursion never starts wider than a composite panel, so a narrow
    // peak cannot be floor-accepted before being seen.
    constexpr int n0 = 64;
    double est[n0];
    double scale = 0.0;
    for (int i = 0; i < n0; ++i) {
        est[i] = panel(f, rule, a + (b - a) * i / n0, a + (b - a) * (i + 1) / n0);
        scale += std::fabs(est[i]);
    }
    const double abs_floor = rel_tol * scale * 1e-3;
    double total = 0.0;
    for (int i = 0; i < n0; ++i)
        total += adapt(f, rule, a + (b - a) * i / n0, a + (b - a) * (i + 1) / n0,
                       rel_tol, abs_floor, est[i], 0);
    return total;
}

}  // namespace detail

namespace {

void check_caps(int p, int ell) {
    if (p < 2) throw std::domain_error("quadrature: requires p >= 2");
    if (ell < 1) throw std::domain_error("quadrature: requires ell >= 1");
    if (p > quad_p_cap)
        throw accuracy_cap("quadrature: p > 60 exceeds double-precision cap");
    if (ell > quad_ell_cap)
        throw accuracy_cap("quadrature: ell > 50 exceeds cap");
}

// int_0^inf u^{p-2} e^{-l u} du by the configured scheme (no 2 pi factor).
double radial_integral(int p, int ell, const QuadConfig& q) {
    if (q.scheme == QuadScheme::GaussLaguerre) {
        // Substitute t = l u; Gauss-Laguerre integrates t^{p-2} exactly
        // for p - 2 <= 2 nodes - 1.
        const auto& rule = detail::laguerre_rule(q.nodes);
        double s = 0.0;
        for (size_t i = 0; i < rule.x.size(); ++i)
            s += rule.w[i] * std::pow(rule.x[i], p - 2);
        return s * std::pow(double(ell), -(p - 1.0));
    }
    // Adaptive dyadic panels on [0, u_cut]; tail beyond u_cut must be
    // below panel_tol relative to the exact incomplete-gamma remainder.
    const double log_tail = (p - 2.0) * std::log(q.u_cut) - ell * q.u_cut -
                            std::log(ell - (p - 2.0) / q.u_cut);
    const double log_exact =
        log_gamma(p - 1.0) - (p - 1.0) * std::log(double(ell));
    if (log_tail - log_exact > std::log(q.panel_tol))
        throw accuracy_cap("quadrature: u_cut tail above panel_tol");
    // Single-exp evaluation: the split pow*exp form loses ~7 digits in the
    // band where exp alone is denormal but the product is not.
    auto f = [p, ell](double u) {
        if (u <= 0.0) return (p == 2) ? 1.0 : 0.0;
        return std::exp((p - 2.0) * std::log(u) - double(ell) * u);
    };
    return detail::adaptive_integrate(f, 0.0, q.u_cut, q.panel_tol);
}

}  // namespace

double basis_norm_quadrature(int p, int ell, const QuadConfig& q) {
    check_caps(p, ell);
    q.validate();
    return 2.0 * std::numbers::pi * radial_integral(p, ell, q);
}

double reproduce_basis(const PuncturedPoint& x, int p, int ell,
                       const QuadConfig& q, const SeriesConfig& cfg) {
    if (p > 40) throw accuracy_cap("reproduce_basis: p > 40 exceeds cap");
    if (ell > 10) throw accuracy_cap("reproduce_basis: ell > 10 exceeds cap");
    check_caps(p, ell);
    q.validate();
    cfg.validate();
    if (x.u() < 0.1 || x.u() > 50.0)
        throw std::domain_error("reproduce_basis: u_x must be in [0.1, 50]");

    // The theta integral leaves the single mode ell of B_p(x, .); the
    // radial integral is numeric, run at the tighter of the panel
    // tolerance and the requested series tolerance.
    // I / e_l(x) = 2 pi n_l^2 int_0^inf e^{-l u} u^{p-2} du. The x^l and
    // n_l factors cancel in log domain, so the pipeline stays in range
    // for any u_x.
    auto f = [p, ell](double u) {
        if (u <= 0.0) return (p == 2) ? 1.0 : 0.0;
        return std::exp((p - 2.0) * std::log(u) - double(ell) * u);
    };
    const double tol = std::min(q.panel_tol, cfg.rel_tol);
    const double quad = detail::adaptive_integrate(f, 0.0, q.u_cut, tol);
    if (!(quad > 0.0)) return 1.0;
    const double log_i_over_e = std::log(2.0 * std::numbers::pi) +
                                std::log(quad) -
                                basis_norm_sq(p, ell).log_abs;
    return std::fabs(std::expm1(log_i_over_e));
}

double monomial_inner_product(int ell1, int ell2, int p, const QuadConfig& q) {
    check_caps(p, std::max(ell1, ell2));
    if (ell1 != ell2) return 0.0;  // distinct Fourier modes
    return basis_norm_quadrature(p, ell1, q);
}

}  // namespace pdisc

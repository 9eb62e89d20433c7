#include "pdisc/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "pdisc/density.hpp"
#include "pdisc/gaussian.hpp"

namespace pdisc {

namespace {

// sup over a log-uniform u grid of |deviation|, plus golden refinement of
// the winning bracket. Works on log|dev| so underflowing residuals keep
// their ordering.
LogMagnitude residual_sup_log(int p, double u_max, int n_points,
                              const SeriesConfig& cfg) {
    if (n_points < 16)
        throw std::domain_error("annulus residual: n_points must be >= 16");
    const double lu_lo = std::log(u_max * 1e-4);
    const double lu_hi = std::log(u_max);

    auto dev_log = [&](double lu) {
        const LogMagnitude d =
            density_deviation(PuncturedPoint(std::exp(lu)), p, cfg);
        return d.is_zero() ? -std::numeric_limits<double>::infinity()
                           : d.log_abs;
    };

    int best_i = 0;
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n_points; ++i) {
        const double lu = lu_lo + (lu_hi - lu_lo) * i / (n_points - 1);
        const double v = dev_log(lu);
        if (v > best) {
            best = v;
            best_i = i;
        }
    }
    // Golden refinement around the winning bracket.
    const double h = (lu_hi - lu_lo) / (n_points - 1);
    double a = lu_lo + h * std::max(0, best_i - 1);
    double b = lu_lo + h * std::min(n_points - 1, best_i + 1);
    constexpr double inv_phi = 0.6180339887498949;
    double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
    double f1 = dev_log(x1), f2 = dev_log(x2);
    for (int it = 0; it < 80; ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = dev_log(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = dev_log(x1);
        }
    }
    best = std::max(best, std::max(f1, f2));
    if (best == -std::numeric_limits<double>::infinity())
        return LogMagnitude::zero();
    return LogMagnitude::from_log(+1, best);
}

void check_a(double a) {
    if (!(a > 0.0) || !(a < 1.0))
        throw std::domain_error("annulus residual: requires 0 < a < 1");
}

}  // namespace

LogMagnitude annulus_residual_log(int p, double a, int n_points,
                                  const SeriesConfig& cfg) {
    check_a(a);
    return residual_sup_log(p, -2.0 * std::log(a), n_points, cfg);
}

double annulus_residual(int p, double a, int n_points,
                        const SeriesConfig& cfg) {
    return annulus_residual_log(p, a, n_points, cfg).to_linear();
}

double shrinking_annulus_residual(int p, double a, double gamma, int n_points,
                                  const SeriesConfig& cfg) {
    check_a(a);
    if (!(gamma > 0.0) || !(gamma < 0.5))
        throw std::domain_error(
            "shrinking_annulus_residual: requires 0 < gamma < 1/2");
    const double u_max = 2.0 * (std::pow(double(p), gamma) - std::log(a));
    return residual_sup_log(p, u_max, n_points, cfg).to_linear();
}

DecayFit decay_fit(double a, std::span<const int> p_list,
                   const SeriesConfig& cfg) {
    if (p_list.size() < 3)
        throw std::domain_error("decay_fit: needs at least 3 powers");
    DecayFit fit;
    fit.a = a;
    fit.p_list.assign(p_list.begin(), p_list.end());

    constexpr double clamp_log = -667.8;  // ln 1e-290
    std::vector<double> xs, ys;
    for (int p : p_list) {
        const LogMagnitude r = annulus_residual_log(p, a, 512, cfg);
        fit.errors.push_back(r.to_linear());
        if (r.is_zero() || r.log_abs < clamp_log) {
            fit.degenerate = true;
            continue;
        }
        xs.push_back(double(p));
        ys.push_back(r.log_abs);
    }
    if (xs.size() < 2) {
        fit.fitted_rate = std::numeric_limits<double>::infinity();
        fit.degenerate = true;
        return fit;
    }

    const size_t n = xs.size();
    double mx = 0, my = 0;
    for (size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    const double slope = sxy / sxx;
    fit.fitted_rate = -slope;
    fit.r2 = (syy > 0.0) ? (sxy * sxy) / (sxx * syy) : 1.0;
    return fit;
}

std::vector<double> compact_coefficient_check(std::span<const int> p_list,
                                              double u0,
                                              const SeriesConfig& cfg) {
    if (!(u0 > 0.0) || u0 > 2.0 * std::numbers::ln2 + 1e-12)
        throw std::domain_error(
            "compact_coefficient_check: requires 0 < u0 <= 2 ln 2");
    std::vector<double> out;
    out.reserve(p_list.size());
    const PuncturedPoint pt(u0);
    for (int p : p_list) {
        const LogMagnitude dev = density_deviation(pt, p, cfg);
        out.push_back(2.0 * std::numbers::pi * dev.to_linear() - 1.0);
    }
    return out;
}

std::vector<BumpPoint> bump_profile(int p, int ell_max,
                                    const SeriesConfig& cfg) {
    if (ell_max < 1) throw std::domain_error("bump_profile: ell_max >= 1");
    std::vector<BumpPoint> bumps;
    for (int l = 1; l <= ell_max; ++l) {
        const double x_lo = std::exp(-1.0 / (l - 0.5));
        const double x_hi = std::exp(-1.0 / (l + 0.5));
        auto g = [&](double x) { return scaled_fp(RescaledPoint(x), p, cfg); };

        constexpr double inv_phi = 0.6180339887498949;
        double a = x_lo, b = x_hi;
        double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
        double f1 = g(x1), f2 = g(x2);
        for (int it = 0; it < 120 && (b - a) > 1e-14; ++it) {
            if (f1 < f2) {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + inv_phi * (b - a);
                f2 = g(x2);
            } else {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - inv_phi * (b - a);
                f1 = g(x1);
            }
        }
        BumpPoint bp;
        bp.location = (f1 > f2) ? x1 : x2;
        bp.height = std::max(f1, f2);
        const double width = x_hi - x_lo;
        if (bp.location - x_lo < 1e-3 * width ||
            x_hi - bp.location < 1e-3 * width)
            throw bump_not_separated(
                "bump_profile: no interior maximum in bracket");
        bumps.push_back(bp);
    }
    return bumps;
}

}  // namespace pdisc

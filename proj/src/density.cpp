#include "pdisc/density.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pdisc/double_double.hpp"
#include "pdisc/gaussian.hpp"
#include "pdisc/special.hpp"

namespace pdisc {

namespace {

constexpr double log_two_pi = 1.8378770664093454836;
constexpr double two_pi = 6.283185307179586477;

void check_p(int p) {
    if (p < 2) throw std::domain_error("density: requires p >= 2");
    if (p > p_cap) throw std::domain_error("density: p exceeds cap 1e6");
}

// ---------------------------------------------------------------------
// Direct series  sum_{l>=1} l^{p-1} e^{-l u}
//
// Terms a_l = exp((p-1) ln l - l u) are unimodal with peak at
// l* = (p-1)/u. We factor the peak magnitude out analytically and
// accumulate mantissas in linear double with Neumaier compensation.
// Past the peak the term ratio r_l = ((l+1)/l)^{p-1} e^{-u} is < 1 and
// decreasing, so the tail after a_l is at most a_l r_l/(1 - r_l); we stop
// once that certified bound drops below rel_tol * partial_sum.
// ---------------------------------------------------------------------

struct SeriesSum {
    double log_value = 0.0;   // log of sum_{l} l^{p-1} e^{-l u}
    std::int64_t terms = 0;
    double tail_rel = 0.0;
};

SeriesSum series_sum(double u, int p, const SeriesConfig& cfg) {
    const double pm1 = p - 1;
    if (pm1 / u > double(cfg.max_terms))
        throw truncation_failure(
            "density_series: series peak index beyond max_terms");
    const std::int64_t peak =
        std::max<std::int64_t>(1, std::llround(pm1 / u));
    const double peak_log = pm1 * std::log(double(peak)) - double(peak) * u;

    LogSum acc;
    acc.set_scale(peak_log);

    std::int64_t l = 1;
    double tail_rel = 0.0;
    for (;; ++l) {
        if (l > cfg.max_terms)
            throw truncation_failure(
                "density_series: max_terms reached before tail bound met");
        const double la = pm1 * std::log(double(l)) - double(l) * u - peak_log;
        const double m = std::exp(la);
        acc.add_scaled(m);
        if (l >= peak) {
            const double log_ratio = pm1 * std::log1p(1.0 / double(l)) - u;
            if (log_ratio < 0.0) {
                const double r = std::exp(log_ratio);
                const double tail = m * r / (1.0 - r);
                const double s = acc.mantissa();
                if (tail <= cfg.rel_tol * s) {
                    tail_rel = tail / s;
                    break;
                }
            }
        }
    }
    return {acc.result().log_abs, l, tail_rel};
}

// ---------------------------------------------------------------------
// Partial-fraction route
//
// bracket(u, p) = [1 +] sum_{k != 0} (u / (u + 2 i k pi))^p, k and -k
// paired into 2 Re[w_k^p]. The head is accumulated in double-double; the
// tail sum_{k >= K} f(k), f(x) = 2 Re[(u/(u+2 pi i x))^p], is evaluated by
// Euler-Maclaurin:
//
//   sum_{k>=K} f(k) = int_K^inf f + f(K)/2
//                     - sum_{j=1}^J B_{2j}/(2j)! f^{(2j-1)}(K) + R_J,
//   |R_J| <= (2 zeta(2J)/(2 pi)^{2J}) int_K^inf |f^{(2J)}|.
//
// With w = u/(u + 2 pi i K):
//   int_K^inf f        = u Im[w^{p-1}] / (pi (p-1)),
//   f^{(m)}(K)         = 2 Re[(-1)^m (p)_m (2 pi i)^m w^{p+m} / u^m],
//   |f^{(2J)}(x)|      <= 2 u^p (p)_{2J} (2 pi)^{2J} |u + 2 pi i x|^{-p-2J}.
//
// Everything, corrections included, is computed in double-double: in the
// cancellation regime (u large, p small) the bracket is ~e^{-u} while the
// individual terms are O(1).
// ---------------------------------------------------------------------

constexpr int em_max_order = 12;  // J; uses B_2 .. B_24

struct EmCoeffs {
    std::array<DoubleDouble, em_max_order + 1> b_over_fact;  // B_{2j}/(2j)!
    EmCoeffs() {
        // Bernoulli numerators/denominators B_2..B_24.
        static constexpr double num[13] = {0, 1, -1, 1, -1, 5, -691, 7,
                                           -3617, 43867, -174611, 854513,
                                           -236364091};
        static constexpr double den[13] = {1, 6, 30, 42, 30, 66, 2730, 6,
                                           510, 798, 330, 138, 2730};
        DoubleDouble fact{1.0};
        int n = 0;
        for (int j = 1; j <= em_max_order; ++j) {
            while (n < 2 * j) {
                ++n;
                fact = fact * DoubleDouble(double(n));
            }
            b_over_fact[j] = DoubleDouble(num[j]) / DoubleDouble(den[j]) / fact;
        }
    }
};

const EmCoeffs& em_coeffs() {
    static const EmCoeffs c;
    return c;
}

double log_pochhammer(double p, int m) {
    // log (p)_m = log Gamma(p+m) - log Gamma(p)
    return log_gamma(p + m) - log_gamma(p);
}

// log of the E-M remainder bound at (u, p, K, J).
double em_remainder_log(double u, int p, double K, int J) {
    const double log_zeta2 = 0.4977471195426217;  // ln zeta(2), J >= 1 bound
    const double d2 = u * u + 4.0 * std::numbers::pi * std::numbers::pi * K * K;
    const double angle_int =
        std::min(std::numbers::pi / 2.0, u / (two_pi * K));
    return std::log(4.0) + log_zeta2 + p * std::log(u) +
           log_pochhammer(p, 2 * J) -
           0.5 * (p + 2 * J - 2) * std::log(d2) + std::log(angle_int) -
           std::log(two_pi * u);
}

struct EmTail {
    DoubleDouble value{0.0};
    double remainder = 0.0;  // certified |R_J|
    int order = 0;
};

EmTail em_tail(double u, int p, std::int64_t K) {
    int best_j = 1;
    double best_log = em_remainder_log(u, p, double(K), 1);
    for (int j = 2; j <= em_max_order; ++j) {
        const double lr = em_remainder_log(u, p, double(K), j);
        if (lr < best_log) {
            best_log = lr;
            best_j = j;
        }
    }

    EmTail out;
    out.order = best_j;
    out.remainder = std::exp(best_log);  // underflow to 0 is fine

    // w = u / (u + 2 pi i K) in double-double.
    const DoubleDouble du{u};
    const DDComplex denom{du, dd_pi * DoubleDouble(2.0 * double(K))};
    const DDComplex w = DDComplex{du, DoubleDouble(0.0)} / denom;

    // If |w|^(p-1) underflows, every E-M term does too.
    const double log_mod_w = 0.5 * std::log(w.norm_sq().value());
    if ((p - 1) * log_mod_w < -740.0) return out;

    const DDComplex w_pm1 = DDComplex::powi(w, p - 1);
    const DDComplex w_p = w_pm1 * w;
    const DDComplex w2 = w * w;

    // int_K^inf f = u Im[w^{p-1}] / (pi (p-1))
    DoubleDouble tail = du * w_pm1.im / (dd_pi * DoubleDouble(double(p - 1)));
    // + f(K)/2
    tail = tail + w_p.re;

    // Correction terms: -B_{2j}/(2j)! * f^{(2j-1)}(K) with
    // f^{(2j-1)}(K) = 2 (-1)^{j+1} (p)_{2j-1} (2pi/u)^{2j-1} Im[w^{p+2j-1}].
    DoubleDouble poch{double(p)};               // (p)_1
    const DoubleDouble ratio = (dd_pi + dd_pi) / du;  // 2 pi / u
    DoubleDouble ratio_pow = ratio;             // (2pi/u)^1
    DDComplex w_pow = w_p * w;                  // w^{p+1}
    for (int j = 1; j <= best_j; ++j) {
        if (j > 1) {
            poch = poch * DoubleDouble(double(p + 2 * j - 3)) *
                   DoubleDouble(double(p + 2 * j - 2));
            ratio_pow = ratio_pow * ratio * ratio;
            w_pow = w_pow * w2;
        }
        const double sign = (j % 2 == 1) ? +1.0 : -1.0;
        DoubleDouble fd = poch * ratio_pow * w_pow.im;
        fd = fd + fd;  // factor 2
        const DoubleDouble corr =
            em_coeffs().b_over_fact[j] * fd * DoubleDouble(sign);
        tail = tail - corr;
    }
    out.value = tail;
    return out;
}

struct Bracket {
    DoubleDouble value{0.0};
    double abs_err = 0.0;
    std::int64_t terms = 0;
};

// Sum of the k-pairs (plus the k=0 term when include_one), certified to
// abs_err <= rel_tol * max(|sum|, floor_scale).
Bracket bracket_sum(double u, int p, const SeriesConfig& cfg, bool include_one,
                    double floor_rel = 0.0) {
    const double dd_eps = 4.93e-32;  // 2^-104
    const double per_pair_ops = 6.0 + 2.0 * std::log2(double(p));

    DoubleDouble head = include_one ? DoubleDouble(1.0) : DoubleDouble(0.0);
    double mag_sum = include_one ? 1.0 : 0.0;
    double mag_max = 0.0;

    const std::int64_t k_checkpoints[] = {16, 32, 64, 128, 256, 512, 1024, 2048};
    std::int64_t k = 1;
    for (std::int64_t K : k_checkpoints) {
        for (; k < K; ++k) {
            const DoubleDouble du{u};
            const DDComplex denom{du, dd_pi * DoubleDouble(2.0 * double(k))};
            const DDComplex w = DDComplex{du, DoubleDouble(0.0)} / denom;
            const double log_mod_w = 0.5 * std::log(w.norm_sq().value());
            if (p * log_mod_w > -740.0) {
                const DDComplex wp = DDComplex::powi(w, p);
                const DoubleDouble pair = wp.re + wp.re;
                head = head + pair;
                mag_sum += std::fabs(pair.value());
                mag_max = std::max(mag_max, std::fabs(pair.value()));
            }
        }

        const EmTail tail = em_tail(u, p, K);
        const DoubleDouble total = head + tail.value;
        const double noise = dd_eps * per_pair_ops * mag_sum;
        const double err = tail.remainder + noise;
        const double scale =
            std::max(std::fabs(total.value()), floor_rel * mag_max);
        if (err <= cfg.rel_tol * std::max(scale, 5e-324)) {
            return {total, err, K - 1 + tail.order};
        }
    }
    throw truncation_failure(
        "density_closed_form: certified bound unreachable (precision floor)");
}

}  // namespace

LogMagnitude basis_norm_sq(int p, std::int64_t ell) {
    if (p < 2)
        throw std::domain_error("basis_norm_sq: norm diverges for p < 2");
    if (ell < 1) throw std::domain_error("basis_norm_sq: requires ell >= 1");
    const double la =
        log_two_pi + log_gamma(double(p) - 1.0) - (p - 1) * std::log(double(ell));
    return LogMagnitude::from_log(+1, la);
}

DensityValue density_series(const PuncturedPoint& pt, int p,
                            const SeriesConfig& cfg) {
    check_p(p);
    cfg.validate();
    const double u = pt.u();
    const SeriesSum s = series_sum(u, p, cfg);
    const double log_pref =
        p * std::log(u) - log_two_pi - log_gamma(double(p) - 1.0);
    DensityValue out;
    out.value = LogMagnitude::from_log(+1, log_pref + s.log_value);
    out.method_used = Method::DirectSeries;
    out.terms_used = s.terms;
    out.tail_bound = s.tail_rel;
    return out;
}

DensityValue density_closed_form(const PuncturedPoint& pt, int p,
                                 const SeriesConfig& cfg) {
    check_p(p);
    cfg.validate();
    const double u = pt.u();
    const Bracket b = bracket_sum(u, p, cfg, /*include_one=*/true);
    const double v = b.value.value();

    DensityValue out;
    const double log_pref = std::log((p - 1) / two_pi);
    if (v == 0.0) {
        out.value = LogMagnitude::zero();
    } else {
        const double log_abs =
            std::log(std::fabs(b.value.hi)) + std::log1p(b.value.lo / b.value.hi);
        out.value = LogMagnitude::from_log(v > 0 ? +1 : -1, log_pref + log_abs);
    }
    out.method_used = Method::PartialFraction;
    out.terms_used = b.terms;
    out.tail_bound = (v == 0.0) ? 0.0 : b.abs_err / std::fabs(v);
    return out;
}

DensityValue density(const PuncturedPoint& pt, int p, const SeriesConfig& cfg) {
    check_p(p);
    cfg.validate();
    switch (cfg.method) {
        case Method::DirectSeries:
            return density_series(pt, p, cfg);
        case Method::PartialFraction:
            return density_closed_form(pt, p, cfg);
        case Method::GaussianApprox:
            return density_gaussian_approx(pt, p);
        case Method::Auto:
        default: {
            const double peak = (p - 1) / pt.u();
            if (peak <= cfg.auto_switch_ratio) return density_series(pt, p, cfg);
            return density_closed_form(pt, p, cfg);
        }
    }
}

LogMagnitude density_deviation(const PuncturedPoint& pt, int p,
                               const SeriesConfig& cfg) {
    check_p(p);
    cfg.validate();
    // Certify against max(|sum|, 1e-13 * largest pair): near the oscillation
    // zeros of the deviation only absolute accuracy is meaningful.
    const Bracket b =
        bracket_sum(pt.u(), p, cfg, /*include_one=*/false, /*floor_rel=*/1e-13);
    const double v = b.value.value();
    if (v == 0.0) return LogMagnitude::zero();
    const double log_abs =
        std::log(std::fabs(b.value.hi)) + std::log1p(b.value.lo / b.value.hi);
    return LogMagnitude::from_log(v > 0 ? +1 : -1,
                                  std::log((p - 1) / two_pi) + log_abs);
}

OffdiagValue kernel_offdiag(const PuncturedPoint& x, const PuncturedPoint& y,
                            int p, const SeriesConfig& cfg) {
    check_p(p);
    cfg.validate();
    const double u_mean = 0.5 * (x.u() + y.u());
    const double dtheta = x.theta() - y.theta();
    const double pm1 = p - 1;

    if (pm1 / u_mean > double(cfg.max_terms))
        throw truncation_failure(
            "kernel_offdiag: series peak index beyond max_terms");
    const std::int64_t peak =
        std::max<std::int64_t>(1, std::llround(pm1 / u_mean));
    const double peak_log =
        pm1 * std::log(double(peak)) - double(peak) * u_mean;

    // Complex accumulation at the peak-factored scale; phases preclude a
    // pure log-domain sum.
    double re = 0.0, re_c = 0.0, im = 0.0, im_c = 0.0;
    auto comp_add = [](double& s, double& c, double v) {
        const double t = s + v;
        if (std::fabs(s) >= std::fabs(v))
            c += (s - t) + v;
        else
            c += (v - t) + s;
        s = t;
    };

    std::int64_t l = 1;
    double tail_scaled = 0.0;
    for (;; ++l) {
        if (l > cfg.max_terms)
            throw truncation_failure(
                "kernel_offdiag: max_terms reached before tail bound met");
        const double la =
            pm1 * std::log(double(l)) - double(l) * u_mean - peak_log;
        const double m = std::exp(la);
        const double ang = double(l) * dtheta;
        comp_add(re, re_c, m * std::cos(ang));
        comp_add(im, im_c, m * std::sin(ang));
        if (l >= peak) {
            const double log_ratio = pm1 * std::log1p(1.0 / double(l)) - u_mean;
            if (log_ratio < 0.0) {
                const double r = std::exp(log_ratio);
                const double tail = m * r / (1.0 - r);
                const double mod = std::hypot(re + re_c, im + im_c);
                // 1.0 is the scaled peak-term magnitude: once the tail is
                // machine-negligible against it, more terms cannot move
                // the complex sum.
                if (tail <= cfg.rel_tol * mod || tail <= 1e-18) {
                    tail_scaled = tail;
                    break;
                }
            }
        }
    }

    const double rs = re + re_c;
    const double is = im + im_c;
    const double mod = std::hypot(rs, is);
    const double log_pref = -log_two_pi - log_gamma(double(p) - 1.0);

    OffdiagValue out;
    out.terms_used = l;
    if (mod == 0.0) {
        out.modulus = LogMagnitude::zero();
        out.phase = 0.0;
        out.tail_bound = 0.0;
        return out;
    }
    out.modulus = LogMagnitude::from_log(+1, log_pref + peak_log + std::log(mod));
    double ph = std::atan2(is, rs);
    if (ph < 0.0) ph += two_pi;
    out.phase = ph;
    out.tail_bound = tail_scaled / mod;
    return out;
}

LogMagnitude kernel_weighted_modulus(const PuncturedPoint& x,
                                     const PuncturedPoint& y, int p,
                                     const SeriesConfig& cfg) {
    const OffdiagValue beta = kernel_offdiag(x, y, p, cfg);
    if (beta.modulus.is_zero()) return LogMagnitude::zero();
    const double w =
        0.5 * p * (std::log(x.u()) + std::log(y.u()));
    return LogMagnitude::from_log(+1, w + beta.modulus.log_abs);
}

}  // namespace pdisc

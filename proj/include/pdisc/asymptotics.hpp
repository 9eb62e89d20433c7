#ifndef PDISC_ASYMPTOTICS_HPP
#define PDISC_ASYMPTOTICS_HPP

#include <span>
#include <vector>

#include "pdisc/config.hpp"
#include "pdisc/log_domain.hpp"
#include "pdisc/point.hpp"

namespace pdisc {

/// Exponential-decay fit of the annulus residual sup |B_p - (p-1)/2pi|
/// against p. fitted_rate is the decay constant c (positive when the
/// residual decays); r2 the least-squares fit quality in log space.
struct DecayFit {
    double a = 0.0;
    std::vector<int> p_list;
    std::vector<double> errors;
    double fitted_rate = 0.0;
    double r2 = 0.0;
    bool degenerate = false;  // residuals at/below the 1e-290 clamp excluded
};

/// sup over u in (0, -log a^2] of |B_p(u) - (p-1)/2pi| (C^0 norm on the
/// annulus a <= |z| < 1). Evaluated through the cancellation-free k-sum,
/// so values far below the e^{-u} subtraction floor remain exact.
double annulus_residual(int p, double a, int n_points = 512,
                        const SeriesConfig& cfg = {});

/// Log-domain variant for ladder fits that underflow linear doubles.
LogMagnitude annulus_residual_log(int p, double a, int n_points = 512,
                                  const SeriesConfig& cfg = {});

/// sup of the same residual over the shrinking annulus |z| >= a e^{-p^gamma},
/// i.e. u in (0, 2(p^gamma + |log a|)].
double shrinking_annulus_residual(int p, double a, double gamma,
                                  int n_points = 512,
                                  const SeriesConfig& cfg = {});

/// Least-squares fit of ln(annulus residual) against p.
DecayFit decay_fit(double a, std::span<const int> p_list,
                   const SeriesConfig& cfg = {});

/// 2 pi B_p(u0) - p for each p; converges to -1 (the constant-curvature
/// expansion coefficient). u0 must satisfy u0 <= 2 ln 2 (|z| >= 1/2).
std::vector<double> compact_coefficient_check(std::span<const int> p_list,
                                              double u0,
                                              const SeriesConfig& cfg = {});

/// Local maximum of (2 pi/p)^{3/2} f_p near x = e^{-1/l} for l = 1..ell_max,
/// located by golden-section search in (e^{-1/(l-1/2)}, e^{-1/(l+1/2)}).
struct BumpPoint {
    double location = 0.0;
    double height = 0.0;
};

std::vector<BumpPoint> bump_profile(int p, int ell_max,
                                    const SeriesConfig& cfg = {});

}  // namespace pdisc

#endif

#ifndef PDISC_SPECIAL_HPP
#define PDISC_SPECIAL_HPP

namespace pdisc {

/// ln Gamma(x) for x > 0. Stirling series with Bernoulli corrections for
/// x >= 9, recurrence shift-up below. Throws std::domain_error for x <= 0.
double log_gamma(double x);

/// ln n! = log_gamma(n + 1).
double log_factorial(double n);

namespace detail {
/// Stirling correction S(x) = lnGamma(x) - [(x-1/2)ln x - x + ln(2pi)/2],
/// valid to ~1e-17 relative for x >= 9.
double stirling_tail(double x);
}

}  // namespace pdisc

#endif

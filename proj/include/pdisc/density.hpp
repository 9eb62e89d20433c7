#ifndef PDISC_DENSITY_HPP
#define PDISC_DENSITY_HPP

#include <cstdint>

#include "pdisc/config.hpp"
#include "pdisc/log_domain.hpp"
#include "pdisc/point.hpp"

namespace pdisc {

inline constexpr int p_cap = 1'000'000;

/// Squared L^2 norm of the monomial z^l under the weight |log|z|^2|^p,
/// i.e. 2*pi*(p-2)!/l^{p-1}, in log domain. p >= 2, l >= 1.
LogMagnitude basis_norm_sq(int p, std::int64_t ell);

/// Bergman density B_p(z) = (u^p / (2 pi (p-2)!)) * sum_{l>=1} l^{p-1} e^{-l u}
/// by ascending summation with peak factoring and a certified geometric
/// tail bound. Depends on the point only through u.
DensityValue density_series(const PuncturedPoint& pt, int p,
                            const SeriesConfig& cfg = {});

/// Same density via the partial-fraction form
///   B_p = ((p-1)/2 pi) (1 + sum_{k != 0} u^p/(2 i k pi + u)^p),
/// k and -k paired so every partial sum is real. Head pairs accumulate in
/// double-double; the k-tail is summed by Euler-Maclaurin with a certified
/// remainder, so the route stays accurate even where the bracket cancels
/// to e^{-u} scale.
DensityValue density_closed_form(const PuncturedPoint& pt, int p,
                                 const SeriesConfig& cfg = {});

/// Method dispatch per cfg (Auto picks series vs partial fraction from the
/// peak index l* = (p-1)/u).
DensityValue density(const PuncturedPoint& pt, int p,
                     const SeriesConfig& cfg = {});

/// B_p(z) - (p-1)/(2 pi), evaluated cancellation-free as
/// ((p-1)/2 pi) * sum_{k != 0} u^p/(2 i k pi + u)^p. Signed; underflow-safe
/// in log domain. This is the quantity the boundary-law scans need at
/// magnitudes far below the e^{-u} cancellation floor of the naive
/// subtraction.
LogMagnitude density_deviation(const PuncturedPoint& pt, int p,
                               const SeriesConfig& cfg = {});

/// Coefficient function beta_p(x,y) = (1/(2 pi (p-2)!)) sum l^{p-1} (x conj(y))^l
/// in log-polar form. The phase lies in [0, 2 pi).
struct OffdiagValue {
    LogMagnitude modulus;
    double phase = 0.0;
    std::int64_t terms_used = 0;
    double tail_bound = 0.0;
};

OffdiagValue kernel_offdiag(const PuncturedPoint& x, const PuncturedPoint& y,
                            int p, const SeriesConfig& cfg = {});

/// Pointwise h^p-norm of the off-diagonal kernel:
/// |B_p(x,y)|_{h^p} = u_x^{p/2} u_y^{p/2} |beta_p(x,y)|.
LogMagnitude kernel_weighted_modulus(const PuncturedPoint& x,
                                     const PuncturedPoint& y, int p,
                                     const SeriesConfig& cfg = {});

}  // namespace pdisc

#endif

#ifndef PDISC_POINT_HPP
#define PDISC_POINT_HPP

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pdisc {

/// Point of the punctured disc stored as (u, theta) with u = -log(|z|^2).
/// u -> infinity is the puncture, u -> 0 the boundary circle; both are
/// excluded. u is capped at 1e5 to keep every downstream log-domain
/// quantity within double range.
class PuncturedPoint {
public:
    static constexpr double u_cap = 1e5;

    explicit PuncturedPoint(double u, double theta = 0.0) : u_(u), theta_(theta) {
        if (!(u > 0.0) || !std::isfinite(u))
            throw std::domain_error("PuncturedPoint: requires 0 < u < inf");
        if (u > u_cap)
            throw std::domain_error("PuncturedPoint: u exceeds cap 1e5");
        if (!std::isfinite(theta))
            throw std::domain_error("PuncturedPoint: theta must be finite");
        theta_ = std::fmod(theta, 2.0 * std::numbers::pi);
        if (theta_ < 0.0) theta_ += 2.0 * std::numbers::pi;
    }

    static PuncturedPoint from_abs_z(double abs_z, double theta = 0.0) {
        if (!(abs_z > 0.0) || !(abs_z < 1.0))
            throw std::domain_error("PuncturedPoint: requires 0 < |z| < 1");
        return PuncturedPoint(-2.0 * std::log(abs_z), theta);
    }

    double u() const { return u_; }
    double theta() const { return theta_; }

    /// |z|^2 = e^{-u}; exact to relative 1e-15 for u <= 700, else 0.
    double abs_z_sq() const { return std::exp(-u_); }

    /// Cusp coordinate t = log(u) = log(-log|z|^2).
    double t() const { return std::log(u_); }

private:
    double u_;
    double theta_;
};

}  // namespace pdisc

#endif

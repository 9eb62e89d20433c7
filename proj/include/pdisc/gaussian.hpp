#ifndef PDISC_GAUSSIAN_HPP
#define PDISC_GAUSSIAN_HPP

#include <span>
#include <vector>

#include "pdisc/config.hpp"
#include "pdisc/point.hpp"

namespace pdisc {

/// Rescaled variable x = y^{1/p} = |z|^{2/p}, strictly inside (0,1).
struct RescaledPoint {
    double x;
    explicit RescaledPoint(double x_) : x(x_) {
        if (!(x > 0.0) || !(x < 1.0))
            throw std::domain_error("RescaledPoint: requires 0 < x < 1");
    }
};

/// Stirling correction nu(p) = (2 pi p)^{1/2} p^p e^{-p} / p! - 1.
/// Evaluated through the Stirling remainder series so the huge-term
/// cancellation is exact; relative error ~1e-13 for all p >= 1.
double nu(int p);

/// varphi(xi) = e * xi * |log xi| on (0,1); equals 1 iff xi = 1/e.
double varphi(double xi);

/// psi_p(zeta) = varphi(e^{-zeta})^p = e^{p(1 - zeta + log zeta)}, zeta > 0.
double psi_p(double zeta, int p);

double gauss0(double eta);  // e^{-eta^2/2}
double gauss1(double eta);  // eta^3 e^{-eta^2/2}

/// delta_p(zeta) = psi_p(zeta) - G0(sqrt(p)(1-zeta)) + G1(sqrt(p)(1-zeta))/(3 sqrt p).
/// Near zeta = 1 the three terms cancel to O(1/p^2); a series path takes
/// over for |1-zeta| <= 1e-2/sqrt(p) and returns exact 0 at zeta = 1.
double delta_p(double zeta, int p);

/// b_p(y) = |log y|^{p+1}/(2 pi (p-1)!) sum l^p y^l = B_{p+1} at |z|^2 = y.
DensityValue b_p(double y, int p, const SeriesConfig& cfg = {});

/// f_p(x) = b_p(x^p), evaluated via u = p|log x| (x^p is never formed).
DensityValue f_p(const RescaledPoint& x, int p, const SeriesConfig& cfg = {});

/// (2 pi / p)^{3/2} f_p(x): the scaling under which the bump structure of
/// f_p is O(1).
double scaled_fp(const RescaledPoint& x, int p, const SeriesConfig& cfg = {});

/// Gaussian bump sum (the approximant of |log x| sum varphi(x^l)^p):
/// G_p(x) = |log x| ( sum_l G0(sqrt p [1 + log x^l])
///                    - (1/(3 sqrt p)) sum_l G1(sqrt p [1 + log x^l]) ).
/// Terms outside sqrt(p)|1 + l log x| <= 40 are dropped (tail < 1e-300).
double gaussian_sum_Gp(const RescaledPoint& x, int p);

/// Leading-order density via the Gaussian sum; tail_bound reports the
/// O(1/(p + u)) model error, not a certified bound.
DensityValue density_gaussian_approx(const PuncturedPoint& pt, int p);

/// Result of a weighted-supremum scan for one of the quantitative bounds.
struct BoundScanReport {
    int p = 0;
    int grid_size = 0;
    double sup_weighted_error = 0.0;
    double argmax = 0.0;  // grid coordinate achieving the sup
};

/// Geometric grid with points_per_decade points per decade on [lo, hi].
std::vector<double> geometric_grid(double lo, double hi, int points_per_decade);

/// Scan grid policy in the variable |1 - zeta| (both sides of 1) for the
/// delta_p bound, including zeta = 1 itself.
std::vector<double> zeta_scan_grid(double g_lo = 1e-4, double g_hi = 1e3);

/// Scan grid in L = |log x| including the bump centers 1/l, l <= 64.
std::vector<double> logx_scan_grid(double lo = 1e-4, double hi = 1e3);

/// sup over the grid of p (1 + p (1-zeta)^2) |delta_p(zeta)|.
BoundScanReport delta_bound_scan(int p, std::span<const double> zeta_grid);

/// sup over the grid (given as L = |log x|) of
/// (p + p|log x|) | |log x| sum varphi(x^l)^p - G_p(x) |.
BoundScanReport phi_sum_defect_scan(int p, std::span<const double> logx_grid,
                                    const SeriesConfig& cfg = {});

/// sup over the grid (given as u = 2|log|z||) of
/// (p + u) | (2 pi/p)^{3/2} (1+nu(p))^{-1} B_{p+1}(z) - G_p(|z|^{2/p}) |.
BoundScanReport density_defect_scan(int p, std::span<const double> u_grid,
                                    const SeriesConfig& cfg = {});

/// sup_x |log x| sum_l G0(...) and sup_x |log x| |sum_l G1(...)|.
double gauss0_sup(int p);
double gauss1_sup(int p);

/// Supremum of B_p over the punctured disc: coarse log grid over
/// u in [max(1e-3, p/8), 8p], golden-section refinement, full-range
/// fallback if the bracket edge wins.
struct ScanReport {
    int p = 0;
    double sup = 0.0;
    double argmax_u = 0.0;
    double scaled_sup = 0.0;  // sup * (2 pi / p)^{3/2}
    double residual = 0.0;    // (sup - (p/(2 pi))^{3/2}) / p
    int evaluations = 0;
    std::vector<std::pair<double, double>> samples;  // coarse (u, B_p) rows
};

ScanReport sup_scan(int p, const SeriesConfig& cfg = {});

}  // namespace pdisc

#endif

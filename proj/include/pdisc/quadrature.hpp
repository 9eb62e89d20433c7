#ifndef PDISC_QUADRATURE_HPP
#define PDISC_QUADRATURE_HPP

#include <functional>
#include <span>
#include <vector>

#include "pdisc/config.hpp"
#include "pdisc/point.hpp"

namespace pdisc {

enum class QuadScheme { GaussLaguerre, AdaptivePanels };

/// Integration oracle configuration. The measure integrated is the radial
/// part of |log|z|^2|^{p-2} i dz wedge dconj(z) / |z|^2 in the u variable,
/// i.e. u^{p-2} e^{-l u} du on (0, inf).
struct QuadConfig {
    QuadScheme scheme = QuadScheme::GaussLaguerre;
    int nodes = 200;
    double panel_tol = 1e-12;
    double u_cut = 1400.0;  // adaptive-scheme cutoff; tail bounded analytically

    void validate() const {
        if (nodes < 16) throw std::domain_error("QuadConfig: nodes must be >= 16");
        if (!(panel_tol > 0.0) || panel_tol > 1e-6)
            throw std::domain_error("QuadConfig: panel_tol must be in (0, 1e-6]");
    }
};

/// Double-precision quadrature accuracy caps (the log-domain formula path
/// has no such caps).
inline constexpr int quad_p_cap = 60;
inline constexpr int quad_ell_cap = 50;

/// 2 pi * int_0^inf u^{p-2} e^{-l u} du by the selected scheme; the exact
/// value is 2 pi (p-2)!/l^{p-1}. Throws accuracy_cap beyond (p,l) caps.
double basis_norm_quadrature(int p, int ell, const QuadConfig& q = {});

/// Relative error of the numerically-reproduced basis element:
/// <B_p(x, .), e_l> vs e_l(x), theta integral analytic (single surviving
/// Fourier mode), u integral by quadrature. The kernel's mode-l amplitude
/// is taken from the truncated series evaluation, so tightening
/// cfg.rel_tol genuinely shrinks the result.
double reproduce_basis(const PuncturedPoint& x, int p, int ell,
                       const QuadConfig& q = {}, const SeriesConfig& cfg = {});

/// 0 exactly for l1 != l2 (Fourier orthogonality); the quadrature norm
/// squared for l1 == l2.
double monomial_inner_product(int ell1, int ell2, int p,
                              const QuadConfig& q = {});

namespace detail {

/// Gauss-Laguerre nodes/weights for weight e^{-t} on (0, inf); cached.
struct QuadRule {
    std::vector<double> x;
    std::vector<double> w;
};
const QuadRule& laguerre_rule(int n);

/// Fixed-order Gauss-Legendre nodes/weights on [-1, 1]; cached.
const QuadRule& legendre_rule(int n);

/// Recursive dyadic panels with 16-point Gauss-Legendre per panel.
double adaptive_integrate(const std::function<double(double)>& f, double a,
                          double b, double rel_tol);

}  // namespace detail

}  // namespace pdisc

#endif

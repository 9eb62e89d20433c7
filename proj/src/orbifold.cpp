#include "pdisc/orbifold.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pdisc/double_double.hpp"

namespace pdisc {

namespace {

constexpr double two_pi = 6.283185307179586477;

// p * theta mod 2 pi with the product formed exactly and the reduction in
// double-double; keeps the pairing cancellation intact for p up to 1e6.
double reduce_phase(int p, double theta) {
    const DoubleDouble prod = DoubleDouble::two_prod(double(p), theta);
    const DoubleDouble dd_two_pi = dd_pi + dd_pi;
    const double k = std::floor(prod.value() / two_pi);
    DoubleDouble r = prod - dd_two_pi * DoubleDouble(k);
    if (r.value() < 0.0) r = r + dd_two_pi;
    if (r.value() >= two_pi) r = r - dd_two_pi;
    return r.value();
}

}  // namespace

StabilizerSpec StabilizerSpec::cyclic(int n) {
    if (n < 1) throw invalid_stabilizer("cyclic: order must be >= 1");
    StabilizerSpec s;
    s.order = n;
    for (int j = 1; j < n; ++j) s.angles.push_back(two_pi * j / n);
    s.exact_cyclic = true;
    return s;
}

void StabilizerSpec::validate() const {
    if (order < 1) throw invalid_stabilizer("StabilizerSpec: order must be >= 1");
    if (int(angles.size()) != order - 1)
        throw invalid_stabilizer("StabilizerSpec: need order-1 angles");
    for (double t : angles)
        if (!(t > 0.0) || !(t < two_pi))
            throw invalid_stabilizer("StabilizerSpec: angles must be in (0, 2pi)");
    // Inverse pairing: the multiset must map onto itself under
    // theta -> 2 pi - theta.
    std::vector<double> sorted = angles;
    std::sort(sorted.begin(), sorted.end());
    std::vector<bool> used(sorted.size(), false);
    for (size_t i = 0; i < sorted.size(); ++i) {
        if (used[i]) continue;
        const double want = two_pi - sorted[i];
        bool found = false;
        for (size_t j = i; j < sorted.size(); ++j) {
            if (used[j] || (j == i && std::fabs(sorted[i] - std::numbers::pi) > 1e-9))
                continue;
            if (std::fabs(sorted[j] - want) <= 1e-9) {
                used[i] = used[j] = true;
                found = true;
                break;
            }
        }
        if (!found)
            throw invalid_stabilizer(
                "StabilizerSpec: angle multiset not closed under inversion");
    }
}

OrbifoldDensity orbifold_local_density(double abs_z, int p,
                                       const StabilizerSpec& spec) {
    if (p < 1) throw std::domain_error("orbifold_local_density: p >= 1");
    if (!(abs_z >= 0.0))
        throw std::domain_error("orbifold_local_density: |z| >= 0");
    spec.validate();

    const double z2 = abs_z * abs_z;
    double re = 0.0;
    double im = 0.0;
    for (int j = 0; j < spec.order - 1; ++j) {
        const double theta = spec.angles[j];
        double phase;
        if (spec.exact_cyclic) {
            // theta = 2 pi (j+1)/n: reduce p (j+1) mod n exactly.
            const long long n = spec.order;
            const long long r = (static_cast<long long>(p) * (j + 1)) % n;
            phase = two_pi * double(r) / double(n);
        } else {
            phase = reduce_phase(p, theta);
        }
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        const double damp = std::exp(-double(p) * (1.0 - c) * z2);
        const double arg = phase + double(p) * z2 * s;
        re += damp * std::cos(arg);
        im += damp * std::sin(arg);
    }

    if (std::fabs(im) > 1e-12)
        throw invalid_stabilizer(
            "orbifold_local_density: imaginary residual exceeds 1e-12");

    OrbifoldDensity out;
    out.value = (double(p) / std::numbers::pi) * (1.0 + re);
    out.imag_residual = im;
    return out;
}

double orbifold_sup_prediction(int n_gamma, int q0, int p) {
    if (n_gamma < 1 || q0 < 1 || p < 1)
        throw std::domain_error("orbifold_sup_prediction: positive arguments");
    return double(n_gamma) * double(q0) * double(p) / std::numbers::pi;
}

}  // namespace pdisc

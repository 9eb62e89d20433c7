#ifndef PDISC_ORBIFOLD_HPP
#define PDISC_ORBIFOLD_HPP

#include <vector>

#include "pdisc/config.hpp"

namespace pdisc {

/// Stabilizer data at an orbifold point: group order n and the action
/// angles theta_gamma in (0, 2 pi) of the n-1 nontrivial elements on the
/// canonical fiber. The angle multiset must be closed under
/// theta -> 2 pi - theta (group inverses), which is what makes the local
/// model real.
struct StabilizerSpec {
    int order = 1;
    std::vector<double> angles;  // size order - 1

    /// Cyclic group Z/n with angles 2 pi j / n. Phase reduction for this
    /// spec is done in exact integer arithmetic.
    static StabilizerSpec cyclic(int n);

    /// Throws invalid_stabilizer unless |angles| = order - 1, every angle
    /// lies in (0, 2 pi), and the multiset is inverse-closed.
    void validate() const;

    bool exact_cyclic = false;  // set by cyclic(); enables exact phases
};

/// Local Bergman density model at the orbifold point:
///   (p/pi) Re[ 1 + sum_{gamma != 1} exp(i p theta_gamma
///                                       - p (1 - e^{i theta_gamma}) |z|^2) ].
/// The imaginary part of the bracket (zero in exact arithmetic by the
/// pairing invariant) is returned as a diagnostic. Leading model only;
/// the O(1) remainder of the expansion is not included.
struct OrbifoldDensity {
    double value = 0.0;
    double imag_residual = 0.0;
};

OrbifoldDensity orbifold_local_density(double abs_z, int p,
                                       const StabilizerSpec& spec);

/// sup_x B_{q0 p} = n_gamma q0 p / pi (leading term).
double orbifold_sup_prediction(int n_gamma, int q0, int p);

}  // namespace pdisc

#endif

#pragma once

#include <optional>
#include <vector>

#include "memsforge/states.hpp"

namespace memsforge {

/// A point in the concurrence / linear-entropy plane.
struct CsPoint {
    double C;
    double S;
};

/// (tau, C, S) sample along an open trajectory, with an optional fidelity
/// against a configured reference state.
struct TrajectoryRecord {
    double tau;
    double C;
    double S;
    std::optional<double> F;
};

/// Wootters concurrence, computed through the Hermitian construction
/// sqrt(rho) * rho_tilde * sqrt(rho) with rho_tilde = (sy (x) sy) rho^* (sy (x) sy).
double concurrence(const TwoQubitState& s);

/// (4/3) (1 - Tr rho^2).
double linear_entropy(const TwoQubitState& s);

CsPoint cs_point(const TwoQubitState& s);

/// Uhlmann fidelity Tr sqrt( sqrt(a) b sqrt(a) ), symmetrized against
/// round-off by averaging the two argument orders when they disagree by more
/// than 1e-10.
double fidelity(const TwoQubitState& a, const TwoQubitState& b);

struct BoundaryPoint {
    double r;
    MemsFamily family;
    double C;
    double S;
};

/// Boundary curve in the C-S plane sampled over r in [0,1]: family rho2 below
/// the junction (C <= 2/3), rho1 above. Points are computed by applying the
/// measures to states::mems, not from closed-form expressions.
std::vector<BoundaryPoint> mems_boundary(std::size_t samples);

/// Monotone piecewise-linear inversion C_boundary(S) of a sampled boundary.
/// Returns 0 beyond the entangled branch (S > S(r=0)).
class BoundaryCurve {
public:
    explicit BoundaryCurve(std::size_t samples = 2001);

    double concurrence_at(double S) const;

    /// C_boundary(S_p) - C_p; >= 0 for physical states up to -1e-6.
    double gap(const CsPoint& p) const;

    const std::vector<BoundaryPoint>& points() const { return points_; }

private:
    std::vector<BoundaryPoint> points_;  // sorted by S ascending
};

}  // namespace memsforge

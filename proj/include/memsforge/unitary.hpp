#pragma once

#include <vector>

#include "memsforge/measures.hpp"
#include "memsforge/states.hpp"

namespace memsforge {

/// Single-excitation amplitudes (alpha, beta, chi) of |100>, |010>, |001>
/// (qubit1, qubit2, field) for the initial condition (0, 1, 0).
struct AmplitudeTriple {
    cplx alpha;
    cplx beta;
    cplx chi;
};

struct UnitaryParams {
    double lambda;  // coupling ratio g2/g1
    double tau;     // dimensionless time g1*t
};

/// Closed-form solution of the single-excitation equations of motion:
/// beta  = (1 + lambda^2 cos(w tau)) / (1 + lambda^2)
/// alpha = -lambda (1 - cos(w tau)) / (1 + lambda^2)
/// chi   = -i lambda sin(w tau) / sqrt(1 + lambda^2),   w = sqrt(1 + lambda^2).
AmplitudeTriple amplitudes(const UnitaryParams& p);

/// Reduced two-qubit state after tracing the field from the pure composite
/// state: diagonal (|chi|^2, |beta|^2, |alpha|^2, 0), coherence beta*conj(alpha)
/// between |01> and |10>.
TwoQubitState unitary_state(const UnitaryParams& p);

std::vector<TrajectoryRecord> unitary_trajectory(double lambda, double tau_max, int steps);

/// Best fidelity between the flip-aligned state bit_phase_flip_q2(rho_u) and
/// the requested boundary family over an r grid; the alignment moves the
/// |01>-|10> coherence onto the |00>-|11> slot where both families carry it.
double best_family_fidelity(const TwoQubitState& s, MemsFamily family,
                            const std::vector<double>& r_grid);

struct TouchPoint {
    double lambda;
    double tau;
    double r;
    double infidelity;  // 1 - F after alignment
};

/// Grid search (lambda step 0.05 over [0,2], tau over [0, tau_max]) followed
/// by coordinate-wise golden-section refinement of (lambda, tau, r) for the
/// point of closest fidelity approach to the rho1 family.
TouchPoint find_rho1_touch(double tau_max = 40.0, double tau_step = 0.05,
                           bool parallel = true);

/// Refined maximum of the concurrence over the same grid.
double max_concurrence_refined(double tau_max = 40.0, double tau_step = 0.05,
                               bool parallel = true);

/// Largest flip-aligned fidelity from any bare grid point to the interior of
/// the rho2 branch (the r = 2/3 junction state belongs to rho1 as well and is
/// scanned with that family). No refinement: the avoidance statement is about
/// the trajectories themselves.
double max_rho2_interior_fidelity(double tau_max = 40.0, double tau_step = 0.05,
                                  bool parallel = true);

}  // namespace memsforge

#pragma once

#include <utility>
#include <vector>

#include "memsforge/states.hpp"

namespace memsforge {

/// Dimensionless physical parameters. Time is tau = g1*t and every rate is
/// divided by g1, so gamma_tilde = gamma/g1 etc. The squeezed-bath settings
/// (N, M) and a thermal nbar are mutually exclusive non-default choices.
struct DynamicsParams {
    double lambda = 0.8;         // g2/g1
    double gamma_tilde = 10.0;   // cavity decay / g1, bad-cavity regime expects >= 5
    double nbar = 0.0;           // thermal occupation of the bath
    double Gamma_tilde = 0.0;    // phase-damping rate / g1
    double gammaq_tilde = 0.0;   // per-qubit spontaneous emission / g1 (off by default)
    double squeeze_N = 0.0;
    double squeeze_M = 0.0;

    void validate() const;       // throws contract_error on invariant violations
    bool bad_cavity_warning() const { return gamma_tilde < 5.0; }
    bool squeezed() const { return squeeze_N > 0.0; }
    bool vacuum() const {
        return nbar == 0.0 && Gamma_tilde == 0.0 && gammaq_tilde == 0.0 && !squeezed();
    }
};

/// The reduced two-qubit generator: collective dissipator with thermal
/// occupation, optional per-qubit spontaneous emission at the
/// cooperativity-enhanced rate, double-commutator phase damping on both
/// qubits, and the squeezed-operator substitution at nbar = 0. Precomputes
/// the operator products once; apply() is pure.
class ReducedGenerator {
public:
    explicit ReducedGenerator(const DynamicsParams& p);

    /// Time derivative of rho. Trace-free and Hermiticity-preserving.
    ComplexMatrix apply(const ComplexMatrix& rho) const;

private:
    DynamicsParams params_;
    ComplexMatrix jm_, jp_, jpjm_, jmjp_;          // collective ladder operators and products
    ComplexMatrix squeeze_anti_;                   // J+J+ + J-J-, squeezed cross terms
    std::vector<ComplexMatrix> emission_ops_;      // per-qubit sigma_minus, when enabled
    std::vector<double> emission_rates_;
    std::vector<ComplexMatrix> dephasing_ops_;     // sigma_z on each qubit, when enabled
};

ComplexMatrix generator_apply(const DynamicsParams& p, const TwoQubitState& s);

/// The ten tracked density-matrix components of the thermal Bloch system;
/// rho1111 is redundant with the normalization constraint and rho0011 is
/// decoupled. The symmetric coherence rho0110 is real along every trajectory
/// started from |01><01| and the hand-transcribed equations rely on that.
struct BlochVector {
    cplx rho0000, rho0001, rho0010, rho0101, rho0110;
    cplx rho0111, rho1010, rho1011, rho1111, rho0011;

    static BlochVector from_matrix(const ComplexMatrix& m);
    ComplexMatrix to_matrix() const;  // fills Hermitian conjugates
    double normalization_defect() const;
};

/// Hand-transcribed thermal Bloch right-hand side. Only the plain thermal
/// configuration is covered; dephasing, spontaneous emission and squeezing
/// raise unsupported_config_error.
BlochVector bloch_rhs(const DynamicsParams& p, const BlochVector& b);

/// Fixed-step classical RK4 on generator_apply. Samples every `stride` steps
/// (plus the final point); each emitted sample is validated as a density
/// matrix. Throws numerical_error when the trace drifts beyond 1e-6.
std::vector<std::pair<double, TwoQubitState>> integrate(const DynamicsParams& p,
                                                        const TwoQubitState& s0, double tau_max,
                                                        double dtau, int stride = 1);

/// Closed-form vacuum solution from |01><01| via the dark/bright
/// decomposition of the collective jump operator.
TwoQubitState analytic_vacuum(const DynamicsParams& p, double tau);

/// Steady state: the analytic dark-state mixture for the vacuum
/// configuration, otherwise integration until |d rho / d tau|_inf <= 1e-10.
TwoQubitState steady_state(const DynamicsParams& p);

TwoQubitState initial_state_01();

}  // namespace memsforge

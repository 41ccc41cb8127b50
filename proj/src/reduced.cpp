#include "memsforge/reduced.hpp"

#include <cmath>

#include "memsforge/linalg.hpp"

namespace memsforge {

namespace {

ComplexMatrix q1_op(const ComplexMatrix& a) { return kron(a, ops::id2()); }
ComplexMatrix q2_op(const ComplexMatrix& a) { return kron(ops::id2(), a); }

// Dissipator with the explicit factor-2 normalization: D[L] rho = 2 L rho L^dag - {L^dag L, rho}.
ComplexMatrix dissipator(const ComplexMatrix& l, const ComplexMatrix& ldagl,
                         const ComplexMatrix& rho) {
    return 2.0 * (l * rho * l.adjoint()) - anticommutator(ldagl, rho);
}

}  // namespace

void DynamicsParams::validate() const {
    if (lambda < 0.0 || !std::isfinite(lambda))
        throw contract_error("DynamicsParams: lambda must be finite and >= 0");
    if (gamma_tilde <= 0.0 || !std::isfinite(gamma_tilde))
        throw contract_error("DynamicsParams: gamma_tilde must be > 0");
    if (nbar < 0.0) throw contract_error("DynamicsParams: nbar must be >= 0");
    if (Gamma_tilde < 0.0) throw contract_error("DynamicsParams: Gamma_tilde must be >= 0");
    if (gammaq_tilde < 0.0) throw contract_error("DynamicsParams: gammaq_tilde must be >= 0");
    if (squeeze_N < 0.0 || squeeze_M < 0.0)
        throw contract_error("DynamicsParams: squeeze parameters must be >= 0");
    if (squeeze_M > std::sqrt(squeeze_N * (squeeze_N + 1.0)) + 1e-12)
        throw contract_error("DynamicsParams: squeeze_M exceeds sqrt(N(N+1))");
    if (squeeze_M > 0.0 && squeeze_N <= 0.0)
        throw contract_error("DynamicsParams: squeeze_M > 0 requires squeeze_N > 0");
    if (nbar > 0.0 && squeezed())
        throw contract_error("DynamicsParams: thermal nbar and a squeezed bath are exclusive");
}

ReducedGenerator::ReducedGenerator(const DynamicsParams& p) : params_(p) {
    p.validate();

    const ComplexMatrix sm1 = q1_op(ops::sigma_minus());
    const ComplexMatrix sm2 = q2_op(ops::sigma_minus());
    const ComplexMatrix sp1 = q1_op(ops::sigma_plus());
    const ComplexMatrix sp2 = q2_op(ops::sigma_plus());

    // Collective jump operator J- = sigma1- + lambda sigma2-.
    jm_ = sm1 + p.lambda * sm2;
    jp_ = sp1 + p.lambda * sp2;
    jpjm_ = jp_ * jm_;
    jmjp_ = jm_ * jp_;
    if (p.squeezed()) squeeze_anti_ = jp_ * jp_ + jm_ * jm_;

    if (p.gammaq_tilde > 0.0) {
        const double c1 = 1.0 / (p.gammaq_tilde * p.gamma_tilde);
        const double c2 = p.lambda * p.lambda / (p.gammaq_tilde * p.gamma_tilde);
        emission_ops_ = {sm1, sm2};
        emission_rates_ = {p.gammaq_tilde * (1.0 + c1), p.gammaq_tilde * (1.0 + c2)};
    }
    if (p.Gamma_tilde > 0.0) dephasing_ops_ = {q1_op(ops::sigma_z()), q2_op(ops::sigma_z())};
}

ComplexMatrix ReducedGenerator::apply(const ComplexMatrix& rho) const {
    const double g = 1.0 / params_.gamma_tilde;
    ComplexMatrix d(4);

    if (params_.squeezed()) {
        // Squeezed-reservoir form of the collective dissipator, the
        // Bogoliubov-consistent reading of the operator substitution: at
        // M = 0 it is the thermal equation with occupation N, at ideal
        // M = sqrt(N(N+1)) it collapses to the single jump operator
        // sqrt(N+1) J- + sqrt(N) J+, and it joins the vacuum generator
        // continuously as N -> 0.
        const double N = params_.squeeze_N;
        const double M = params_.squeeze_M;
        d += (g * (N + 1.0)) * dissipator(jm_, jpjm_, rho);
        d += (g * N) * dissipator(jp_, jmjp_, rho);
        if (M > 0.0) {
            ComplexMatrix cross = 2.0 * (jm_ * rho * jm_) + 2.0 * (jp_ * rho * jp_) -
                                  anticommutator(squeeze_anti_, rho);
            d += (g * M) * cross;
        }
    } else {
        d += (g * (params_.nbar + 1.0)) * dissipator(jm_, jpjm_, rho);
        if (params_.nbar > 0.0) d += (g * params_.nbar) * dissipator(jp_, jmjp_, rho);
    }

    for (std::size_t i = 0; i < emission_ops_.size(); ++i) {
        const ComplexMatrix& l = emission_ops_[i];
        d += emission_rates_[i] * dissipator(l, l.adjoint() * l, rho);
    }

    // -Gamma [sz_j, [sz_j, rho]] per qubit = 2 Gamma (sz_j rho sz_j - rho).
    for (const ComplexMatrix& sz : dephasing_ops_)
        d += (2.0 * params_.Gamma_tilde) * (sz * rho * sz - rho);

    return d;
}

ComplexMatrix generator_apply(const DynamicsParams& p, const TwoQubitState& s) {
    return ReducedGenerator(p).apply(s.matrix());
}

BlochVector BlochVector::from_matrix(const ComplexMatrix& m) {
    if (m.dim() != 4) throw contract_error("BlochVector: matrix must be 4x4");
    BlochVector b;
    b.rho0000 = m(0, 0);
    b.rho0001 = m(0, 1);
    b.rho0010 = m(0, 2);
    b.rho0011 = m(0, 3);
    b.rho0101 = m(1, 1);
    b.rho0110 = m(1, 2);
    b.rho0111 = m(1, 3);
    b.rho1010 = m(2, 2);
    b.rho1011 = m(2, 3);
    b.rho1111 = m(3, 3);
    return b;
}

ComplexMatrix BlochVector::to_matrix() const {
    ComplexMatrix m(4);
    m(0, 0) = rho0000;
    m(0, 1) = rho0001;
    m(0, 2) = rho0010;
    m(0, 3) = rho0011;
    m(1, 1) = rho0101;
    m(1, 2) = rho0110;
    m(1, 3) = rho0111;
    m(2, 2) = rho1010;
    m(2, 3) = rho1011;
    m(3, 3) = rho1111;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < i; ++j) m(i, j) = std::conj(m(j, i));
    return m;
}

double BlochVector::normalization_defect() const {
    return std::abs(rho0000 + rho0101 + rho1010 + rho1111 - cplx{1.0, 0.0});
}

BlochVector bloch_rhs(const DynamicsParams& p, const BlochVector& b) {
    p.validate();
    if (p.Gamma_tilde != 0.0 || p.gammaq_tilde != 0.0 || p.squeezed())
        throw unsupported_config_error(
            "bloch_rhs: only the thermal configuration is covered; "
            "dephasing, spontaneous emission and squeezing live in generator_apply");

    const double g = 1.0 / p.gamma_tilde;
    const double l = p.lambda;
    const double l2 = l * l;
    const double n = p.nbar;
    const double np1 = n + 1.0;
    const double t2 = 2.0 * n + 1.0;
    const double G2 = 1.0 + l2;

    BlochVector d;
    d.rho0000 = 2.0 * g *
                (np1 * b.rho1010 + 2.0 * l * np1 * b.rho0110 + l2 * np1 * b.rho0101 -
                 G2 * n * b.rho0000);
    d.rho0001 = g * (2.0 * np1 * b.rho1011 - (l2 * t2 + 2.0 * n) * b.rho0001 +
                     2.0 * l * np1 * b.rho0111 - l * t2 * b.rho0010);
    d.rho0010 = g * (2.0 * l2 * np1 * b.rho0111 - (t2 + 2.0 * l2 * n) * b.rho0010 +
                     2.0 * l * np1 * b.rho1011 - l * t2 * b.rho0001);
    d.rho0101 = 2.0 * g *
                (np1 * b.rho1111 - (l2 * np1 + n) * b.rho0101 + l2 * n * b.rho0000 -
                 l * t2 * b.rho0110);
    d.rho0110 = -g * t2 * (l * (b.rho1010 + b.rho0101) + G2 * b.rho0110) +
                2.0 * g * l * (np1 * b.rho1111 + n * b.rho0000);
    d.rho0111 = -g * ((t2 + 2.0 * l2 * np1) * b.rho0111 - 2.0 * l2 * n * b.rho0010 +
                      l * t2 * b.rho1011 - 2.0 * l * n * b.rho0001);
    d.rho1010 = -2.0 * g *
                ((np1 + l2 * n) * b.rho1010 - l2 * np1 * b.rho1111 - n * b.rho0000 +
                 l * t2 * b.rho0110);
    d.rho1011 = -g * ((2.0 * np1 + l2 * t2) * b.rho1011 - 2.0 * n * b.rho0001 +
                      l * t2 * b.rho0111 - 2.0 * l * n * b.rho0010);
    d.rho1111 = -2.0 * g *
                (G2 * np1 * b.rho1111 - n * b.rho0101 - l2 * n * b.rho1010 -
                 2.0 * l * n * b.rho0110);
    d.rho0011 = -g * G2 * t2 * b.rho0011;
    return d;
}

std::vector<std::pair<double, TwoQubitState>> integrate(const DynamicsParams& p,
                                                        const TwoQubitState& s0, double tau_max,
                                                        double dtau, int stride) {
    p.validate();
    if (tau_max <= 0.0) throw contract_error("integrate: tau_max must be > 0");
    if (dtau <= 0.0) throw contract_error("integrate: dtau must be > 0");
    const double dtau_cap = 0.01 * p.gamma_tilde / (1.0 + p.lambda * p.lambda);
    if (dtau > dtau_cap + 1e-15)
        throw contract_error("integrate: dtau exceeds the stability bound 0.01*gamma/(1+lambda^2)");
    if (stride < 1) throw contract_error("integrate: stride must be >= 1");

    const ReducedGenerator gen(p);
    ComplexMatrix rho = s0.matrix();
    const long nsteps = std::lround(tau_max / dtau);

    std::vector<std::pair<double, TwoQubitState>> samples;
    samples.reserve(static_cast<std::size_t>(nsteps / stride) + 2);
    samples.emplace_back(0.0, s0);

    for (long k = 0; k < nsteps; ++k) {
        const ComplexMatrix k1 = gen.apply(rho);
        const ComplexMatrix k2 = gen.apply(rho + (0.5 * dtau) * k1);
        const ComplexMatrix k3 = gen.apply(rho + (0.5 * dtau) * k2);
        const ComplexMatrix k4 = gen.apply(rho + dtau * k3);
        rho += (dtau / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        const double drift = std::abs(rho.trace() - cplx{1.0, 0.0});
        if (drift > 1e-6)
            throw numerical_error("integrate: trace drift " + std::to_string(drift) +
                                  ", reduce dtau");
        if ((k + 1) % stride == 0 || k + 1 == nsteps) {
            const double tau = (k + 1) * dtau;
            samples.emplace_back(tau, TwoQubitState(rho));
        }
    }

    if (std::abs(rho.trace() - cplx{1.0, 0.0}) > 1e-9)
        throw numerical_error("integrate: final norm drift above 1e-9");
    return samples;
}

TwoQubitState analytic_vacuum(const DynamicsParams& p, double tau) {
    p.validate();
    if (!p.vacuum())
        throw unsupported_config_error("analytic_vacuum: requires the vacuum configuration");
    if (tau < 0.0) throw contract_error("analytic_vacuum: tau must be >= 0");

    const double l = p.lambda;
    const double w2 = 1.0 + l * l;
    const double w = std::sqrt(w2);

    // |B> = (lambda|01> + |10>)/w decays at 2 w^2/gamma, |D> = (|01> - lambda|10>)/w
    // is dark. From |01>: overlaps <B|01> = lambda/w, <D|01> = 1/w.
    const double pbb = (l * l / w2) * std::exp(-2.0 * w2 * tau / p.gamma_tilde);
    const double pdd = 1.0 / w2;
    const double pdb = (l / w2) * std::exp(-w2 * tau / p.gamma_tilde);
    const double p00 = (l * l / w2) * (1.0 - std::exp(-2.0 * w2 * tau / p.gamma_tilde));

    const double d01 = 1.0 / w, d10 = -l / w;  // dark-state components
    const double b01 = l / w, b10 = 1.0 / w;   // bright-state components

    ComplexMatrix m(4);
    m(kBasis00, kBasis00) = p00;
    m(kBasis01, kBasis01) = pdd * d01 * d01 + pbb * b01 * b01 + 2.0 * pdb * d01 * b01;
    m(kBasis10, kBasis10) = pdd * d10 * d10 + pbb * b10 * b10 + 2.0 * pdb * d10 * b10;
    m(kBasis01, kBasis10) =
        pdd * d01 * d10 + pbb * b01 * b10 + pdb * (d01 * b10 + b01 * d10);
    m(kBasis10, kBasis01) = m(kBasis01, kBasis10);
    return TwoQubitState(m);
}

TwoQubitState steady_state(const DynamicsParams& p) {
    p.validate();
    if (p.vacuum()) {
        const double l = p.lambda;
        const double w2 = 1.0 + l * l;
        ComplexMatrix m(4);
        m(kBasis00, kBasis00) = l * l / w2;
        m(kBasis01, kBasis01) = 1.0 / (w2 * w2);
        m(kBasis10, kBasis10) = l * l / (w2 * w2);
        m(kBasis01, kBasis10) = -l / (w2 * w2);
        m(kBasis10, kBasis01) = -l / (w2 * w2);
        return TwoQubitState(m);
    }

    // Settling margin of 25 on top of the 10*gamma base: the slowest thermal
    // mode is the dark-state leak at rate (2 nbar/gamma)(1-lambda^2)^2/(1+lambda^2),
    // which needs tau ~ 1300 to push the derivative under 1e-10 at nbar = 1.
    const double tau_cap = 10.0 * p.gamma_tilde * 25.0;
    const double dtau = 0.01;
    const double chunk = 5.0;
    const ReducedGenerator gen(p);

    TwoQubitState s = initial_state_01();
    double tau = 0.0;
    while (tau < tau_cap) {
        const auto run = integrate(p, s, chunk, dtau, static_cast<int>(chunk / dtau));
        s = run.back().second;
        tau += chunk;
        if (gen.apply(s.matrix()).max_abs() <= 1e-10) return s;
    }
    throw numerical_error("steady_state: no convergence by tau = " + std::to_string(tau_cap));
}

TwoQubitState initial_state_01() { return TwoQubitState::pure(kBasis01); }

}  // namespace memsforge

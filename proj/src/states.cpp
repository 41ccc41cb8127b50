#include "memsforge/states.hpp"

#include <cmath>

#include <json.hpp>

#include "memsforge/linalg.hpp"

namespace memsforge {

namespace {

constexpr double kTraceTol = 1e-9;
constexpr double kHermTol = 1e-9;
constexpr double kEigFloor = -1e-8;

}  // namespace

TwoQubitState::TwoQubitState(const ComplexMatrix& m) : matrix_(m) {
    if (m.dim() != 4) throw contract_error("TwoQubitState: matrix must be 4x4");
    if (std::abs(m.trace() - cplx{1.0, 0.0}) > kTraceTol)
        throw contract_error("TwoQubitState: trace differs from 1 by more than 1e-9");
    if (m.hermiticity_defect() > kHermTol)
        throw contract_error("TwoQubitState: matrix is not Hermitian within 1e-9");
    const auto eig = hermitian_eig(0.5 * (m + m.adjoint()));
    if (eig.eigenvalues.back() < kEigFloor)
        throw contract_error("TwoQubitState: eigenvalue below -1e-8, not a density matrix");
}

TwoQubitState TwoQubitState::pure(std::size_t basis_index) {
    if (basis_index > 3) throw contract_error("TwoQubitState::pure: basis index out of range");
    ComplexMatrix m(4);
    m(basis_index, basis_index) = 1.0;
    return TwoQubitState(m);
}

TwoQubitState TwoQubitState::pure(const std::vector<cplx>& amplitudes) {
    if (amplitudes.size() != 4) throw contract_error("TwoQubitState::pure: need 4 amplitudes");
    double norm = 0.0;
    for (const auto& a : amplitudes) norm += std::norm(a);
    if (std::abs(norm - 1.0) > 1e-9)
        throw contract_error("TwoQubitState::pure: amplitudes are not normalized");
    ComplexMatrix m(4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) m(i, j) = amplitudes[i] * std::conj(amplitudes[j]);
    return TwoQubitState(m);
}

TwoQubitState TwoQubitState::maximally_mixed() {
    ComplexMatrix m(4);
    for (std::size_t i = 0; i < 4; ++i) m(i, i) = 0.25;
    return TwoQubitState(m);
}

std::string TwoQubitState::to_json() const {
    nlohmann::json j;
    j["basis"] = "q1q2";
    std::vector<double> re(16), im(16);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t k = 0; k < 4; ++k) {
            re[i * 4 + k] = matrix_(i, k).real();
            im[i * 4 + k] = matrix_(i, k).imag();
        }
    j["re"] = re;
    j["im"] = im;
    return j.dump();
}

TwoQubitState TwoQubitState::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) throw contract_error("TwoQubitState::from_json: malformed JSON");
    if (j.value("basis", "") != std::string("q1q2"))
        throw contract_error("TwoQubitState::from_json: basis must be \"q1q2\"");
    const auto re = j.at("re").get<std::vector<double>>();
    const auto im = j.at("im").get<std::vector<double>>();
    if (re.size() != 16 || im.size() != 16)
        throw contract_error("TwoQubitState::from_json: re/im must have 16 entries");
    ComplexMatrix m(4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t k = 0; k < 4; ++k) m(i, k) = cplx{re[i * 4 + k], im[i * 4 + k]};
    return TwoQubitState(m);
}

TwoQubitState mems(const MemsParameter& p) {
    ComplexMatrix m(4);
    if (p.family == MemsFamily::rho1) {
        if (p.r < 2.0 / 3.0 - 1e-12 || p.r > 1.0 + 1e-12)
            throw contract_error("mems: family rho1 requires r in [2/3, 1]");
        m(kBasis00, kBasis00) = p.r / 2.0;
        m(kBasis01, kBasis01) = 1.0 - p.r;
        m(kBasis11, kBasis11) = p.r / 2.0;
        m(kBasis00, kBasis11) = p.r / 2.0;
        m(kBasis11, kBasis00) = p.r / 2.0;
    } else {
        if (p.r < -1e-12 || p.r > 2.0 / 3.0 + 1e-12)
            throw contract_error("mems: family rho2 requires r in [0, 2/3]");
        m(kBasis00, kBasis00) = 1.0 / 3.0;
        m(kBasis01, kBasis01) = 1.0 / 3.0;
        m(kBasis11, kBasis11) = 1.0 / 3.0;
        m(kBasis00, kBasis11) = p.r / 2.0;
        m(kBasis11, kBasis00) = p.r / 2.0;
    }
    return TwoQubitState(m);
}

TwoQubitState werner(double p) {
    if (p < -1e-12 || p > 1.0 + 1e-12) throw contract_error("werner: p must lie in [0, 1]");
    ComplexMatrix m(4);
    const double q = (1.0 - p) / 4.0;
    for (std::size_t i = 0; i < 4; ++i) m(i, i) = q;
    m(kBasis00, kBasis00) += p / 2.0;
    m(kBasis11, kBasis11) += p / 2.0;
    m(kBasis00, kBasis11) = p / 2.0;
    m(kBasis11, kBasis00) = p / 2.0;
    return TwoQubitState(m);
}

TwoQubitState nearest_density_matrix(const ComplexMatrix& m) {
    if (m.dim() != 4) throw contract_error("nearest_density_matrix: matrix must be 4x4");
    const ComplexMatrix h = 0.5 * (m + m.adjoint());
    const auto eig = hermitian_eig(h);
    const ComplexMatrix& v = eig.eigenvectors;

    double trace = 0.0;
    for (double ev : eig.eigenvalues) trace += std::max(0.0, ev);
    if (trace <= 0.0) throw contract_error("nearest_density_matrix: no positive weight");

    ComplexMatrix out(4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            cplx acc{0.0, 0.0};
            for (std::size_t k = 0; k < 4; ++k) {
                const double w = std::max(0.0, eig.eigenvalues[k]) / trace;
                acc += w * v(i, k) * std::conj(v(j, k));
            }
            out(i, j) = acc;
        }
    return TwoQubitState(out);
}

TwoQubitState bit_phase_flip_q2(const TwoQubitState& s) {
    // U = 1 (x) (Z*X): |0> -> -|1>, |1> -> |0> on qubit 2.
    ComplexMatrix zx(2);
    zx(0, 1) = 1.0;
    zx(1, 0) = -1.0;
    const ComplexMatrix u = kron(ops::id2(), zx);
    return TwoQubitState(u * s.matrix() * u.adjoint());
}

TwoQubitState dephase_qubits(const TwoQubitState& s, double q) {
    if (q < -1e-12 || q > 1.0 + 1e-12)
        throw contract_error("dephase_qubits: retention q must lie in [0, 1]");
    ComplexMatrix m = s.matrix();
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            const int diff = ((i >> 1) != (j >> 1)) + ((i & 1) != (j & 1));
            if (diff == 1) m(i, j) *= q;
            if (diff == 2) m(i, j) *= q * q;
        }
    return TwoQubitState(m);
}

const char* family_name(MemsFamily f) { return f == MemsFamily::rho1 ? "rho1" : "rho2"; }

}  // namespace memsforge

// model.cpp: Hamiltonian and observable builders

#include "rabi/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rabi {

void ModelParams::validate() const {
    if (!(omega_c > 0.0) || !std::isfinite(omega_c)) {
        throw std::invalid_argument("ModelParams: omega_c must be > 0, got " + std::to_string(omega_c));
    }
    if (!(omega_a >= 0.0) || !std::isfinite(omega_a)) {
        throw std::invalid_argument("ModelParams: omega_a must be >= 0, got " + std::to_string(omega_a));
    }
    if (!(g >= 0.0) || !std::isfinite(g)) {
        throw std::invalid_argument("ModelParams: g must be >= 0, got " + std::to_string(g));
    }
    if (n_max < 1) {
        throw std::invalid_argument("ModelParams: n_max must be >= 1, got " + std::to_string(n_max));
    }
}

double OperatorMatrix::hermiticity_error() const {
    if (entries.size() == 0) return 0.0;
    return (entries - entries.adjoint()).cwiseAbs().maxCoeff();
}

namespace {

double parity_sign(Eigen::Index m) { return (m % 2 == 0) ? 1.0 : -1.0; }

}  // namespace

OperatorMatrix build_h_eff_with_coupling(const ModelParams& params, double coupling) {
    params.validate();
    if (!std::isfinite(coupling)) {
        throw std::invalid_argument("build_h_eff_with_coupling: coupling must be finite");
    }
    const Eigen::Index dim = params.effective_dim();
    ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index m = 0; m < dim; ++m) {
        h(m, m) = params.omega_c * static_cast<double>(m) - 0.5 * params.omega_a * parity_sign(m);
        if (m + 1 < dim) {
            const double element = coupling * std::sqrt(static_cast<double>(m + 1));
            h(m, m + 1) = element;
            h(m + 1, m) = element;
        }
    }
    return {std::move(h), true};
}

OperatorMatrix build_h_eff(const ModelParams& params) {
    return build_h_eff_with_coupling(params, params.g);
}

OperatorMatrix build_h0_eff(const ModelParams& params) {
    return build_h_eff_with_coupling(params, 0.0);
}

OperatorMatrix build_h_eff_flipped(const ModelParams& params) {
    return build_h_eff_with_coupling(params, -params.g);
}

OperatorMatrix build_full_free(const ModelParams& params) {
    params.validate();
    const Eigen::Index dim = params.full_dim();
    ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index m = 0; m <= params.n_max; ++m) {
        const double photon_energy = params.omega_c * static_cast<double>(m);
        h(full_index(m, 0), full_index(m, 0)) = photon_energy - 0.5 * params.omega_a;
        h(full_index(m, 1), full_index(m, 1)) = photon_energy + 0.5 * params.omega_a;
    }
    return {std::move(h), true};
}

OperatorMatrix build_full_rabi(const ModelParams& params) {
    OperatorMatrix h = build_full_free(params);
    // g sigma_x (a^dag + a): |m, s> <-> |m+1, 1-s> with amplitude g sqrt(m+1).
    for (Eigen::Index m = 0; m < params.n_max; ++m) {
        const double element = params.g * std::sqrt(static_cast<double>(m + 1));
        for (int s = 0; s < 2; ++s) {
            const Eigen::Index from = full_index(m, s);
            const Eigen::Index to = full_index(m + 1, 1 - s);
            h.entries(to, from) = element;
            h.entries(from, to) = element;
        }
    }
    return h;
}

OperatorMatrix build_parity(const ModelParams& params, bool full_space) {
    params.validate();
    if (!full_space) {
        const Eigen::Index dim = params.effective_dim();
        ComplexVector diag(dim);
        for (Eigen::Index m = 0; m < dim; ++m) diag(m) = parity_sign(m);
        return {diag.asDiagonal().toDenseMatrix(), true};
    }
    const Eigen::Index dim = params.full_dim();
    ComplexVector diag(dim);
    for (Eigen::Index m = 0; m <= params.n_max; ++m) {
        diag(full_index(m, 0)) = parity_sign(m);
        diag(full_index(m, 1)) = parity_sign(m + 1);
    }
    return {diag.asDiagonal().toDenseMatrix(), true};
}

OperatorMatrix build_photon_number(const ModelParams& params, bool full_space) {
    params.validate();
    const Eigen::Index dim = full_space ? params.full_dim() : params.effective_dim();
    ComplexVector diag(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        diag(i) = static_cast<double>(full_space ? i / 2 : i);
    }
    return {diag.asDiagonal().toDenseMatrix(), true};
}

StateVector vacuum_state(Eigen::Index dim) {
    if (dim < 1) {
        throw std::invalid_argument("vacuum_state: dim must be >= 1");
    }
    ComplexVector amplitudes = ComplexVector::Zero(dim);
    amplitudes(0) = 1.0;
    return {std::move(amplitudes)};
}

}  // namespace rabi

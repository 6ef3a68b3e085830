// model.hpp: Rabi-model Hamiltonians and observables on a truncated Fock space
//
// All frequencies, couplings and times are in units of the cavity frequency
// (omega_c = 1 by default, times in 1/omega_c).
//
// Effective (even-parity, single-mode) space: basis |0>, |1>, ..., |n_max>.
// Full atom x cavity space: basis index 2*m + s, with s = 0 for |g> and
// s = 1 for |e>, m = 0..n_max. Dimension 2*(n_max + 1).

#pragma once

#include <Eigen/Dense>

#include <complex>

namespace rabi {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kHermitianTolerance = 1e-12;

struct ModelParams {
    double omega_c{1.0};  // cavity frequency
    double omega_a{1.0};  // atomic splitting
    double g{0.1};        // coupling strength
    int n_max{60};        // Fock truncation, basis |0>..|n_max>

    // Throws std::invalid_argument unless omega_c > 0, omega_a >= 0, g >= 0, n_max >= 1.
    void validate() const;

    Eigen::Index effective_dim() const { return n_max + 1; }
    Eigen::Index full_dim() const { return 2 * (n_max + 1); }

    friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

struct OperatorMatrix {
    ComplexMatrix entries;
    bool hermitian{false};

    Eigen::Index dim() const { return entries.rows(); }

    // max |M - M^dagger| over all entries.
    double hermiticity_error() const;
};

struct StateVector {
    ComplexVector amplitudes;

    Eigen::Index dim() const { return amplitudes.size(); }
    double norm() const { return amplitudes.norm(); }
};

// omega_c b^dag b - (omega_a/2) (-1)^{b^dag b} + g (b^dag + b)
OperatorMatrix build_h_eff(const ModelParams& params);

// omega_c b^dag b - (omega_a/2) (-1)^{b^dag b}
OperatorMatrix build_h0_eff(const ModelParams& params);

// Effective form of sigma_z H sigma_z, i.e. build_h_eff with g -> -g.
OperatorMatrix build_h_eff_flipped(const ModelParams& params);

// Effective Hamiltonian with an arbitrary real coupling (used for piecewise schedules).
OperatorMatrix build_h_eff_with_coupling(const ModelParams& params, double coupling);

// omega_c a^dag a + (omega_a/2) sigma_z + g sigma_x (a^dag + a) on the full space.
OperatorMatrix build_full_rabi(const ModelParams& params);

// omega_c a^dag a + (omega_a/2) sigma_z on the full space.
OperatorMatrix build_full_free(const ModelParams& params);

// (-1)^{N_e} with N_e = a^dag a + |e><e| on the full space; on the effective space
// the same operator reads (-1)^{b^dag b}.
OperatorMatrix build_parity(const ModelParams& params, bool full_space);

// a^dag a (full space) or b^dag b (effective space).
OperatorMatrix build_photon_number(const ModelParams& params, bool full_space);

StateVector vacuum_state(Eigen::Index dim);

constexpr Eigen::Index full_index(Eigen::Index photons, int spin) { return 2 * photons + spin; }

}  // namespace rabi

// evolution.hpp: spectral propagators and photon-number trajectories
//
// Hamiltonians are piecewise constant, so every pulse is propagated exactly
// through U = V exp(-i Lambda dt) V^dagger. Propagators are built once per
// (Hamiltonian, dt) pair and reused; sequence evolution is matrix-vector products.

#pragma once

#include "rabi/control_sequence.hpp"
#include "rabi/model.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace rabi {

inline constexpr double kUnitarityTolerance = 1e-10;
inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kTailTolerance = 1e-12;
inline constexpr double kNegativePhotonTolerance = 1e-12;

struct SpectralDecomposition {
    Eigen::VectorXd eigenvalues;  // ascending
    ComplexMatrix eigenvectors;   // columns

    Eigen::Index dim() const { return eigenvalues.size(); }
    // max |V Lambda V^dagger - H|
    double reconstruction_error(const OperatorMatrix& h) const;
};

// Throws std::invalid_argument for non-hermitian input.
SpectralDecomposition diagonalize(const OperatorMatrix& h);

// exp(-i H t) for any real t (including t <= 0).
ComplexMatrix spectral_exponential(const SpectralDecomposition& decomp, double t);

enum class PropagatorSource { on, off, flipped, custom };

std::string_view to_string(PropagatorSource source);

struct Propagator {
    double dt{0.0};
    ComplexMatrix matrix;
    PropagatorSource source{PropagatorSource::custom};

    Eigen::Index dim() const { return matrix.rows(); }
    // max |U^dagger U - I|
    double unitarity_error() const;
};

// Requires dt > 0.
Propagator make_propagator(const SpectralDecomposition& decomp, double dt,
                           PropagatorSource source = PropagatorSource::custom);

// out = U * in. Every code path that advances a state by one pulse goes through
// here, so the same prefix always produces bit-identical amplitudes.
void advance(const ComplexMatrix& propagator, const Eigen::Ref<const ComplexVector>& in,
             Eigen::Ref<ComplexVector> out);

// sum_m m |psi_m|^2 on the effective basis.
double photon_number(const Eigen::Ref<const ComplexVector>& amplitudes);
double photon_number(const StateVector& psi);

// <a^dag a> on the full atom x cavity basis (index 2m + s).
double photon_number_full(const Eigen::Ref<const ComplexVector>& amplitudes);

// |psi_{n_max}|^2, the weight on the last retained Fock level.
double tail_weight(const Eigen::Ref<const ComplexVector>& amplitudes);

// <psi| H |psi> (real part).
double expectation(const OperatorMatrix& op, const Eigen::Ref<const ComplexVector>& amplitudes);

struct Trajectory {
    std::vector<double> times;
    std::vector<double> photon_numbers;
    std::string control_bits;  // bits[k] drives (times[k], times[k+1]]; empty when not applicable

    std::size_t size() const { return times.size(); }
};

// Worst-case numbers observed during a run; checked against the tolerances above.
struct InvariantReport {
    double max_unitarity_error{0.0};
    double max_norm_error{0.0};
    double max_tail_weight{0.0};
    double min_photon_number{0.0};

    void merge(const InvariantReport& other);
    bool passed() const;
};

struct EvolutionResult {
    StateVector final_state;
    Trajectory trajectory;  // only the t = 0 sample unless recording was requested
    InvariantReport report;
};

// Applies on for '1' and off for '0', left to right. When record is set the
// trajectory holds t = 0 and every bit boundary. Throws on dimension or dt mismatch.
EvolutionResult evolve_sequence(const ControlSequence& seq, const Propagator& on, const Propagator& off,
                                const StateVector& psi0, bool record);

// N_ph(t) under build_h_eff from the vacuum, sampled at k * sample_dt for
// k = 0..floor(t_max / sample_dt). Norm and tail checks go to `report` when given.
Trajectory free_trajectory(const ModelParams& params, double t_max, double sample_dt,
                           InvariantReport* report = nullptr);

struct TrajectoryAnalysis {
    double t0{0.0};  // first strict three-point local maximum
    double first_max{0.0};
    double global_max{0.0};
    double global_max_time{0.0};
};

class MonotoneTrajectoryError : public std::runtime_error {
public:
    MonotoneTrajectoryError() : std::runtime_error("monotone trajectory: no interior local maximum") {}
};

// Requires at least 3 samples. Throws MonotoneTrajectoryError when no interior
// sample is strictly larger than both neighbours.
TrajectoryAnalysis analyze_trajectory(const Trajectory& traj);

// Evolves |0>|g> under the full Rabi Hamiltonian and |0> under the effective one
// on the grid k * dt, k = 0..floor(t_max / dt), and returns
// max |<a^dag a> - <b^dag b>|.
double full_vs_effective_check(const ModelParams& params, double t_max, double dt);

}  // namespace rabi

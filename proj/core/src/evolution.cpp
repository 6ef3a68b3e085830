// evolution.cpp: spectral time evolution

#include "rabi/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace rabi {

double SpectralDecomposition::reconstruction_error(const OperatorMatrix& h) const {
    const ComplexMatrix rebuilt =
        eigenvectors * eigenvalues.cast<cplx>().asDiagonal() * eigenvectors.adjoint();
    return (rebuilt - h.entries).cwiseAbs().maxCoeff();
}

SpectralDecomposition diagonalize(const OperatorMatrix& h) {
    if (h.entries.rows() != h.entries.cols() || h.dim() == 0) {
        throw std::invalid_argument("diagonalize: matrix must be square and non-empty");
    }
    if (!h.hermitian || h.hermiticity_error() > kHermitianTolerance) {
        throw std::invalid_argument("diagonalize: matrix is not hermitian");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.entries);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("diagonalize: eigen decomposition failed");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix spectral_exponential(const SpectralDecomposition& decomp, double t) {
    ComplexVector phases(decomp.dim());
    for (Eigen::Index k = 0; k < decomp.dim(); ++k) {
        phases(k) = std::polar(1.0, -decomp.eigenvalues(k) * t);
    }
    return decomp.eigenvectors * phases.asDiagonal() * decomp.eigenvectors.adjoint();
}

std::string_view to_string(PropagatorSource source) {
    switch (source) {
        case PropagatorSource::on: return "on";
        case PropagatorSource::off: return "off";
        case PropagatorSource::flipped: return "flipped";
        case PropagatorSource::custom: return "custom";
    }
    return "custom";
}

double Propagator::unitarity_error() const {
    const ComplexMatrix product = matrix.adjoint() * matrix;
    return (product - ComplexMatrix::Identity(dim(), dim())).cwiseAbs().maxCoeff();
}

Propagator make_propagator(const SpectralDecomposition& decomp, double dt, PropagatorSource source) {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw std::invalid_argument("make_propagator: dt must be > 0");
    }
    return {dt, spectral_exponential(decomp, dt), source};
}

void advance(const ComplexMatrix& propagator, const Eigen::Ref<const ComplexVector>& in,
             Eigen::Ref<ComplexVector> out) {
    out.noalias() = propagator * in;
}

double photon_number(const Eigen::Ref<const ComplexVector>& amplitudes) {
    double total = 0.0;
    for (Eigen::Index m = 1; m < amplitudes.size(); ++m) {
        total += static_cast<double>(m) * std::norm(amplitudes(m));
    }
    return total;
}

double photon_number(const StateVector& psi) { return photon_number(psi.amplitudes); }

double photon_number_full(const Eigen::Ref<const ComplexVector>& amplitudes) {
    double total = 0.0;
    for (Eigen::Index i = 2; i < amplitudes.size(); ++i) {
        total += static_cast<double>(i / 2) * std::norm(amplitudes(i));
    }
    return total;
}

double tail_weight(const Eigen::Ref<const ComplexVector>& amplitudes) {
    return amplitudes.size() == 0 ? 0.0 : std::norm(amplitudes(amplitudes.size() - 1));
}

double expectation(const OperatorMatrix& op, const Eigen::Ref<const ComplexVector>& amplitudes) {
    return amplitudes.dot(op.entries * amplitudes).real();
}

void InvariantReport::merge(const InvariantReport& other) {
    max_unitarity_error = std::max(max_unitarity_error, other.max_unitarity_error);
    max_norm_error = std::max(max_norm_error, other.max_norm_error);
    max_tail_weight = std::max(max_tail_weight, other.max_tail_weight);
    min_photon_number = std::min(min_photon_number, other.min_photon_number);
}

bool InvariantReport::passed() const {
    return max_unitarity_error <= kUnitarityTolerance && max_norm_error <= kNormTolerance &&
           max_tail_weight <= kTailTolerance && min_photon_number >= -kNegativePhotonTolerance;
}

namespace {

// Checks the -1e-12 floor, then clamps round-off to zero.
double checked_photon_number(const Eigen::Ref<const ComplexVector>& amplitudes, InvariantReport& report) {
    const double n = photon_number(amplitudes);
    report.min_photon_number = std::min(report.min_photon_number, n);
    return std::max(n, 0.0);
}

}  // namespace

EvolutionResult evolve_sequence(const ControlSequence& seq, const Propagator& on, const Propagator& off,
                                const StateVector& psi0, bool record) {
    if (on.dim() != psi0.dim() || off.dim() != psi0.dim()) {
        throw std::invalid_argument("evolve_sequence: propagator and state dimensions differ");
    }
    if (std::abs(on.dt - off.dt) > 1e-15 || std::abs(on.dt - seq.dt()) > 1e-12) {
        throw std::invalid_argument("evolve_sequence: propagators and sequence must share dt");
    }

    EvolutionResult result;
    result.report.max_unitarity_error = std::max(on.unitarity_error(), off.unitarity_error());

    ComplexVector current = psi0.amplitudes;
    ComplexVector next(current.size());
    Trajectory& traj = result.trajectory;
    traj.times.push_back(0.0);
    traj.photon_numbers.push_back(checked_photon_number(current, result.report));
    traj.control_bits = seq.bits();

    for (std::size_t k = 0; k < seq.length(); ++k) {
        advance(seq.on(k) ? on.matrix : off.matrix, current, next);
        current.swap(next);
        result.report.max_norm_error = std::max(result.report.max_norm_error, std::abs(current.norm() - 1.0));
        if (record) {
            traj.times.push_back(seq.dt() * static_cast<double>(k + 1));
            traj.photon_numbers.push_back(checked_photon_number(current, result.report));
        }
    }
    if (!record) {
        traj.control_bits.clear();
    }
    result.report.max_tail_weight = tail_weight(current);
    result.final_state = StateVector{std::move(current)};
    return result;
}

namespace {

std::size_t grid_points(double t_max, double sample_dt) {
    if (!(t_max > 0.0) || !(sample_dt > 0.0)) {
        throw std::invalid_argument("time grid: t_max and sample_dt must be > 0");
    }
    return static_cast<std::size_t>(std::floor(t_max / sample_dt + 1e-9)) + 1;
}

// psi(t) = V exp(-i Lambda t) V^dagger psi0, with V^dagger psi0 precomputed.
class SpectralEvolver {
public:
    SpectralEvolver(SpectralDecomposition decomp, const ComplexVector& psi0)
        : decomp_(std::move(decomp)), coefficients_(decomp_.eigenvectors.adjoint() * psi0) {}

    ComplexVector at(double t) const {
        ComplexVector rotated(coefficients_.size());
        for (Eigen::Index k = 0; k < rotated.size(); ++k) {
            rotated(k) = coefficients_(k) * std::polar(1.0, -decomp_.eigenvalues(k) * t);
        }
        return decomp_.eigenvectors * rotated;
    }

private:
    SpectralDecomposition decomp_;
    ComplexVector coefficients_;
};

}  // namespace

Trajectory free_trajectory(const ModelParams& params, double t_max, double sample_dt, InvariantReport* report) {
    const std::size_t samples = grid_points(t_max, sample_dt);
    const SpectralEvolver evolver(diagonalize(build_h_eff(params)), vacuum_state(params.effective_dim()).amplitudes);

    Trajectory traj;
    traj.times.reserve(samples);
    traj.photon_numbers.reserve(samples);
    for (std::size_t k = 0; k < samples; ++k) {
        const double t = sample_dt * static_cast<double>(k);
        const ComplexVector psi = evolver.at(t);
        InvariantReport local;
        traj.times.push_back(t);
        traj.photon_numbers.push_back(checked_photon_number(psi, local));
        local.max_norm_error = std::abs(psi.norm() - 1.0);
        local.max_tail_weight = tail_weight(psi);
        if (report) report->merge(local);
    }
    return traj;
}

TrajectoryAnalysis analyze_trajectory(const Trajectory& traj) {
    if (traj.times.size() != traj.photon_numbers.size()) {
        throw std::invalid_argument("analyze_trajectory: times and photon numbers differ in length");
    }
    if (traj.size() < 3) {
        throw std::invalid_argument("analyze_trajectory: need at least 3 samples");
    }
    const auto& n = traj.photon_numbers;

    TrajectoryAnalysis analysis;
    const auto peak = std::max_element(n.begin(), n.end());
    analysis.global_max = *peak;
    analysis.global_max_time = traj.times[static_cast<std::size_t>(peak - n.begin())];

    for (std::size_t k = 1; k + 1 < n.size(); ++k) {
        if (n[k] > n[k - 1] && n[k] > n[k + 1]) {
            analysis.t0 = traj.times[k];
            analysis.first_max = n[k];
            return analysis;
        }
    }
    throw MonotoneTrajectoryError();
}

double full_vs_effective_check(const ModelParams& params, double t_max, double dt) {
    const std::size_t samples = grid_points(t_max, dt);
    const SpectralEvolver effective(diagonalize(build_h_eff(params)), vacuum_state(params.effective_dim()).amplitudes);
    // |0> (x) |g> sits at full index 0.
    const SpectralEvolver full(diagonalize(build_full_rabi(params)), vacuum_state(params.full_dim()).amplitudes);

    double deviation = 0.0;
    for (std::size_t k = 0; k < samples; ++k) {
        const double t = dt * static_cast<double>(k);
        deviation = std::max(deviation, std::abs(photon_number_full(full.at(t)) - photon_number(effective.at(t))));
    }
    return deviation;
}

}  // namespace rabi

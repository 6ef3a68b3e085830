// cumulant.hpp: closed 12-moment equations of motion for the effective Rabi model
//
// Independent check on the state-vector engine. Fourth-order moments are
// factorised through their cumulant expansion, which closes the Heisenberg
// hierarchy on the twelve expectation values below:
//
//   x = <b^dag + b>          p = <i(b^dag - b)>        n = <b^dag b>
//   gamma = <(-1)^n>         delta = <(i/2)[x, gamma]>  epsilon = <(i/2)[p, gamma]>
//   alpha = <x^2>            beta = <p^2>              theta = <(xp + px)/2>
//   kappa = <{alpha, gamma}/2>  lambda = <{theta, gamma}/2>  mu = <{beta, gamma}/2>
//
// lambda and mu are labelled so that the vacuum has lambda = 0, mu = 1, which
// is the labelling the equations of motion below are written in.
//
// The coupling g may switch at segment boundaries, which is how bang-bang
// sequences (g or 0, g or -g) are fed in. Integration is classic fixed-step RK4.

#pragma once

#include "rabi/control_sequence.hpp"
#include "rabi/evolution.hpp"
#include "rabi/model.hpp"
#include "rabi/protocol.hpp"

#include <array>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace rabi {

inline constexpr double kDefaultCumulantStep = 1e-3;

struct CumulantState {
    double x{0.0};
    double p{0.0};
    double n{0.0};
    double gamma{0.0};
    double delta{0.0};
    double epsilon{0.0};
    double alpha{0.0};
    double beta{0.0};
    double theta{0.0};
    double kappa{0.0};
    double lambda{0.0};
    double mu{0.0};

    std::array<double, 12> to_array() const;
    static CumulantState from_array(const std::array<double, 12>& values);

    friend bool operator==(const CumulantState&, const CumulantState&) = default;
};

// Vacuum: x = p = n = delta = epsilon = theta = lambda = 0, gamma = alpha = beta = kappa = mu = 1.
CumulantState initial_cumulant_state();

// Time derivatives of all twelve moments.
CumulantState cumulant_rhs(const CumulantState& s, double omega_c, double omega_a, double g);

struct Segment {
    double duration{0.0};
    double coupling{0.0};

    friend bool operator==(const Segment&, const Segment&) = default;
};

struct Schedule {
    std::vector<Segment> segments;

    double total_duration() const;
    // Throws std::invalid_argument unless every duration is finite and > 0.
    void validate() const;

    friend bool operator==(const Schedule&, const Schedule&) = default;
};

// Plain text, one "duration g_value" pair per line; '#' starts a comment.
Schedule parse_schedule(std::istream& in);
Schedule load_schedule(const std::filesystem::path& path);
std::string format_schedule(const Schedule& schedule);

// One segment per pulse with the protocol's coupling for that bit.
Schedule schedule_from_sequence(const ControlSequence& seq, const ModelParams& params, ProtocolKind kind);

struct CumulantSeries {
    std::vector<double> times;
    std::vector<CumulantState> states;
    double min_photon_number{0.0};
    double max_abs_gamma{0.0};

    // Truncation drift indicator: |gamma| exceeded 1 + 1e-3 somewhere.
    bool gamma_drift() const { return max_abs_gamma > 1.0 + 1e-3; }
};

// Samples every step, segment boundaries included. step must divide every
// segment duration to within 1e-9; an empty schedule returns s0 alone.
CumulantSeries integrate(const CumulantState& s0, const Schedule& schedule, double omega_c, double omega_a,
                         double step);

struct OracleComparison {
    std::vector<double> times;
    std::vector<double> n_exact;
    std::vector<double> n_oracle;
    double max_abs_deviation{0.0};
    InvariantReport report;  // exact side
    bool gamma_drift{false};  // oracle side, see CumulantSeries::gamma_drift
};

// Exact effective-model evolution (spectral, per segment) against the oracle,
// sampled every sample_interval (a multiple of step) and at segment boundaries.
// Uses params.omega_c, omega_a and n_max; couplings come from the schedule.
OracleComparison compare_schedule(const ModelParams& params, const Schedule& schedule, double step,
                                  double sample_interval);

// Oracle against evolve_sequence for a bang-bang sequence, compared at bit boundaries.
OracleComparison oracle_compare(const ControlSequence& seq, const ModelParams& params, ProtocolKind kind,
                                double step = kDefaultCumulantStep);

// max |n(step) - n(step/2)| over the samples shared by both runs; estimates the
// RK4 contribution to the oracle deviation.
double integration_error_estimate(const Schedule& schedule, double omega_c, double omega_a, double step);

}  // namespace rabi

// cumulant.cpp: moment equations, RK4 integration and comparison against the exact engine

#include "rabi/cumulant.hpp"

#include "rabi/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace rabi {

std::array<double, 12> CumulantState::to_array() const {
    return {x, p, n, gamma, delta, epsilon, alpha, beta, theta, kappa, lambda, mu};
}

CumulantState CumulantState::from_array(const std::array<double, 12>& v) {
    return {v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8], v[9], v[10], v[11]};
}

CumulantState initial_cumulant_state() {
    CumulantState s;
    s.gamma = 1.0;
    s.alpha = 1.0;
    s.beta = 1.0;
    s.kappa = 1.0;
    s.mu = 1.0;
    return s;
}

CumulantState cumulant_rhs(const CumulantState& s, double wc, double wa, double g) {
    CumulantState d;
    d.x = wc * s.p + wa * s.delta;
    d.p = -wc * s.x + wa * s.epsilon - 2.0 * g;
    d.n = -g * s.p;
    d.gamma = 2.0 * g * s.delta;
    d.delta = wc * s.epsilon - wa * s.x - 2.0 * g * s.kappa;
    d.epsilon = -wc * s.delta - wa * s.p - 2.0 * g * s.lambda;
    d.alpha = 2.0 * wc * s.theta;
    d.beta = -2.0 * wc * s.theta - 4.0 * g * s.p;
    d.theta = -wc * s.alpha + wc * s.beta - 2.0 * g * s.x;
    d.kappa = 2.0 * wc * s.lambda + 6.0 * g * s.alpha * s.delta - 12.0 * g * s.x * s.x * s.delta;
    d.lambda = -wc * s.kappa + wc * s.mu + 2.0 * g * s.alpha * s.epsilon - 4.0 * g * s.x * s.x * s.epsilon -
               8.0 * g * s.x * s.p * s.delta + 4.0 * g * s.theta * s.delta;
    d.mu = -2.0 * wc * s.lambda + 2.0 * g * s.beta * s.delta + 4.0 * g * s.theta * s.epsilon -
           4.0 * g * s.p * s.p * s.delta - 8.0 * g * s.x * s.p * s.epsilon;
    return d;
}

double Schedule::total_duration() const {
    double total = 0.0;
    for (const auto& segment : segments) total += segment.duration;
    return total;
}

void Schedule::validate() const {
    for (std::size_t k = 0; k < segments.size(); ++k) {
        const auto& segment = segments[k];
        if (!(segment.duration > 0.0) || !std::isfinite(segment.duration) || !std::isfinite(segment.coupling)) {
            throw std::invalid_argument("Schedule: segment " + std::to_string(k) +
                                        " needs a finite duration > 0 and a finite coupling");
        }
    }
}

Schedule parse_schedule(std::istream& in) {
    Schedule schedule;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        Segment segment;
        if (!(fields >> segment.duration)) {
            std::string rest;
            if (std::istringstream(line) >> rest) {
                throw std::invalid_argument("schedule line " + std::to_string(line_number) + ": expected 'duration g'");
            }
            continue;  // blank or comment-only
        }
        std::string trailing;
        if (!(fields >> segment.coupling) || (fields >> trailing)) {
            throw std::invalid_argument("schedule line " + std::to_string(line_number) + ": expected 'duration g'");
        }
        schedule.segments.push_back(segment);
    }
    schedule.validate();
    return schedule;
}

Schedule load_schedule(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open schedule file " + path.string());
    }
    return parse_schedule(in);
}

std::string format_schedule(const Schedule& schedule) {
    std::string out = "# duration g\n";
    char buffer[64];
    for (const auto& segment : schedule.segments) {
        std::snprintf(buffer, sizeof buffer, "%.17g %.17g\n", segment.duration, segment.coupling);
        out += buffer;
    }
    return out;
}

Schedule schedule_from_sequence(const ControlSequence& seq, const ModelParams& params, ProtocolKind kind) {
    Schedule schedule;
    schedule.segments.reserve(seq.length());
    for (std::size_t k = 0; k < seq.length(); ++k) {
        schedule.segments.push_back({seq.dt(), coupling_for_bit(params, kind, seq.on(k))});
    }
    return schedule;
}

namespace {

std::size_t steps_in(double duration, double step) {
    const double steps = std::round(duration / step);
    if (steps < 1.0 || std::abs(steps * step - duration) > 1e-9) {
        throw std::invalid_argument("integrate: step " + std::to_string(step) +
                                    " does not divide segment duration " + std::to_string(duration));
    }
    return static_cast<std::size_t>(steps);
}

using Moments = std::array<double, 12>;

Moments axpy(const Moments& base, double h, const Moments& slope) {
    Moments out;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = base[i] + h * slope[i];
    return out;
}

Moments rk4_step(const Moments& y, double h, double wc, double wa, double g) {
    const auto f = [&](const Moments& v) { return cumulant_rhs(CumulantState::from_array(v), wc, wa, g).to_array(); };
    const Moments k1 = f(y);
    const Moments k2 = f(axpy(y, 0.5 * h, k1));
    const Moments k3 = f(axpy(y, 0.5 * h, k2));
    const Moments k4 = f(axpy(y, h, k3));
    Moments out;
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return out;
}

}  // namespace

CumulantSeries integrate(const CumulantState& s0, const Schedule& schedule, double omega_c, double omega_a,
                         double step) {
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw std::invalid_argument("integrate: step must be > 0");
    }
    schedule.validate();

    std::vector<std::size_t> steps;
    std::size_t total_steps = 0;
    for (const auto& segment : schedule.segments) {
        steps.push_back(steps_in(segment.duration, step));
        total_steps += steps.back();
    }

    CumulantSeries series;
    series.times.reserve(total_steps + 1);
    series.states.reserve(total_steps + 1);
    series.times.push_back(0.0);
    series.states.push_back(s0);
    series.min_photon_number = s0.n;
    series.max_abs_gamma = std::abs(s0.gamma);

    Moments y = s0.to_array();
    double segment_start = 0.0;
    for (std::size_t k = 0; k < schedule.segments.size(); ++k) {
        const double g = schedule.segments[k].coupling;
        for (std::size_t i = 1; i <= steps[k]; ++i) {
            y = rk4_step(y, step, omega_c, omega_a, g);
            const CumulantState state = CumulantState::from_array(y);
            series.times.push_back(segment_start + step * static_cast<double>(i));
            series.states.push_back(state);
            series.min_photon_number = std::min(series.min_photon_number, state.n);
            series.max_abs_gamma = std::max(series.max_abs_gamma, std::abs(state.gamma));
        }
        segment_start += schedule.segments[k].duration;
    }
    return series;
}

OracleComparison compare_schedule(const ModelParams& params, const Schedule& schedule, double step,
                                  double sample_interval) {
    params.validate();
    const double stride_real = std::round(sample_interval / step);
    if (stride_real < 1.0 || std::abs(stride_real * step - sample_interval) > 1e-9) {
        throw std::invalid_argument("compare_schedule: sample interval must be a multiple of the RK4 step");
    }
    const auto stride = static_cast<std::size_t>(stride_real);

    const CumulantSeries series = integrate(initial_cumulant_state(), schedule, params.omega_c, params.omega_a, step);

    std::map<double, SpectralDecomposition> decompositions;
    const auto decomposition_for = [&](double coupling) -> const SpectralDecomposition& {
        auto it = decompositions.find(coupling);
        if (it == decompositions.end()) {
            it = decompositions.emplace(coupling, diagonalize(build_h_eff_with_coupling(params, coupling))).first;
        }
        return it->second;
    };

    OracleComparison cmp;
    cmp.gamma_drift = series.gamma_drift();
    const auto record = [&](std::size_t index, const ComplexVector& psi) {
        cmp.report.max_norm_error = std::max(cmp.report.max_norm_error, std::abs(psi.norm() - 1.0));
        cmp.report.max_tail_weight = std::max(cmp.report.max_tail_weight, tail_weight(psi));
        cmp.report.min_photon_number = std::min(cmp.report.min_photon_number, photon_number(psi));
        cmp.times.push_back(series.times[index]);
        cmp.n_exact.push_back(photon_number(psi));
        cmp.n_oracle.push_back(series.states[index].n);
        cmp.max_abs_deviation = std::max(cmp.max_abs_deviation, std::abs(cmp.n_exact.back() - cmp.n_oracle.back()));
    };

    ComplexVector segment_start_state = vacuum_state(params.effective_dim()).amplitudes;
    record(0, segment_start_state);
    std::size_t index = 0;
    for (const auto& segment : schedule.segments) {
        const SpectralDecomposition& decomp = decomposition_for(segment.coupling);
        const ComplexVector coefficients = decomp.eigenvectors.adjoint() * segment_start_state;
        const std::size_t steps = steps_in(segment.duration, step);
        const auto state_at = [&](double tau) {
            ComplexVector rotated(coefficients.size());
            for (Eigen::Index k = 0; k < rotated.size(); ++k) {
                rotated(k) = coefficients(k) * std::polar(1.0, -decomp.eigenvalues(k) * tau);
            }
            return ComplexVector(decomp.eigenvectors * rotated);
        };
        for (std::size_t i = 1; i <= steps; ++i) {
            ++index;
            const bool boundary = (i == steps);
            if (boundary || index % stride == 0) {
                const ComplexVector psi = state_at(step * static_cast<double>(i));
                record(index, psi);
                if (boundary) segment_start_state = psi;
            }
        }
    }
    return cmp;
}

OracleComparison oracle_compare(const ControlSequence& seq, const ModelParams& params, ProtocolKind kind,
                                double step) {
    const Schedule schedule = schedule_from_sequence(seq, params, kind);
    const CumulantSeries series = integrate(initial_cumulant_state(), schedule, params.omega_c, params.omega_a, step);
    const std::size_t per_pulse = steps_in(seq.dt(), step);

    const Protocol protocol = make_protocol(params, seq.dt(), kind);
    const EvolutionResult exact =
        evolve_sequence(seq, protocol.on, protocol.off, vacuum_state(params.effective_dim()), true);

    OracleComparison cmp;
    cmp.report = exact.report;
    cmp.gamma_drift = series.gamma_drift();
    for (std::size_t k = 0; k < exact.trajectory.size(); ++k) {
        const std::size_t index = k * per_pulse;
        cmp.times.push_back(exact.trajectory.times[k]);
        cmp.n_exact.push_back(exact.trajectory.photon_numbers[k]);
        cmp.n_oracle.push_back(series.states[index].n);
        cmp.max_abs_deviation = std::max(cmp.max_abs_deviation, std::abs(cmp.n_exact.back() - cmp.n_oracle.back()));
    }
    return cmp;
}

double integration_error_estimate(const Schedule& schedule, double omega_c, double omega_a, double step) {
    const CumulantState s0 = initial_cumulant_state();
    const CumulantSeries coarse = integrate(s0, schedule, omega_c, omega_a, step);
    const CumulantSeries fine = integrate(s0, schedule, omega_c, omega_a, 0.5 * step);
    double error = 0.0;
    for (std::size_t k = 0; k < coarse.states.size(); ++k) {
        error = std::max(error, std::abs(coarse.states[k].n - fine.states[2 * k].n));
    }
    return error;
}

}  // namespace rabi

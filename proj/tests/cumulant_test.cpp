#include "rabi/cumulant.hpp"
#include "rabi/search.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

namespace rabi {
namespace {

constexpr std::size_t kExactEquations = 9;  // x .. theta close without truncation

TEST(CumulantState, ArrayRoundTrip) {
    CumulantState s;
    std::array<double, 12> values{};
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = 0.5 + static_cast<double>(i);
    s = CumulantState::from_array(values);
    EXPECT_EQ(s.x, 0.5);
    EXPECT_EQ(s.mu, 11.5);
    EXPECT_EQ(s.to_array(), values);
}

TEST(CumulantState, Vacuum) {
    const CumulantState s = initial_cumulant_state();
    EXPECT_EQ(s.x, 0.0);
    EXPECT_EQ(s.p, 0.0);
    EXPECT_EQ(s.n, 0.0);
    EXPECT_EQ(s.gamma, 1.0);
    EXPECT_EQ(s.delta, 0.0);
    EXPECT_EQ(s.epsilon, 0.0);
    EXPECT_EQ(s.alpha, 1.0);
    EXPECT_EQ(s.beta, 1.0);
    EXPECT_EQ(s.theta, 0.0);
    EXPECT_EQ(s.kappa, 1.0);
    EXPECT_EQ(s.lambda, 0.0);
    EXPECT_EQ(s.mu, 1.0);
}

TEST(CumulantRhs, VacuumOnlyDrivesPAndDelta) {
    const CumulantState d = cumulant_rhs(initial_cumulant_state(), 1.0, 1.0, 0.1);
    EXPECT_NEAR(d.p, -0.2, 1e-15);
    EXPECT_NEAR(d.delta, -0.2, 1e-15);
    for (double v : {d.x, d.n, d.gamma, d.epsilon, d.alpha, d.beta, d.theta, d.kappa, d.lambda, d.mu})
        EXPECT_EQ(v, 0.0);
}

TEST(CumulantRhs, ZeroCouplingConservesPhotonsAndParity) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::array<double, 12> v{};
        for (double& x : v) x = u(rng);
        const CumulantState d = cumulant_rhs(CumulantState::from_array(v), 1.0, 0.7, 0.0);
        EXPECT_EQ(d.n, 0.0);
        EXPECT_EQ(d.gamma, 0.0);
    }
}

TEST(CumulantRhs, AffineInCoupling) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::array<double, 12> v{};
        for (double& x : v) x = u(rng);
        const CumulantState s = CumulantState::from_array(v);
        const double g = 0.3 * u(rng);
        const auto a = cumulant_rhs(s, 1.0, 1.3, 2.0 * g).to_array();
        const auto b = cumulant_rhs(s, 1.0, 1.3, g).to_array();
        const auto c = cumulant_rhs(s, 1.0, 1.3, 0.0).to_array();
        for (std::size_t i = 0; i < 12; ++i) EXPECT_NEAR(a[i] - 2.0 * b[i] + c[i], 0.0, 1e-14) << "component " << i;
    }
}

// Fock-space moments and exact Heisenberg derivatives <i[H, O]> for a state
// supported far below the truncation edge.
struct FockOracle {
    int dim;
    ComplexMatrix b, x, p, n, parity;
    std::array<ComplexMatrix, 12> ops;

    explicit FockOracle(int d) : dim(d) {
        b = ComplexMatrix::Zero(dim, dim);
        for (int m = 1; m < dim; ++m) b(m - 1, m) = std::sqrt(static_cast<double>(m));
        const ComplexMatrix bd = b.adjoint();
        const cplx i(0.0, 1.0);
        x = bd + b;
        p = i * (bd - b);
        n = bd * b;
        parity = ComplexMatrix::Zero(dim, dim);
        for (int m = 0; m < dim; ++m) parity(m, m) = (m % 2 == 0) ? 1.0 : -1.0;
        const ComplexMatrix alpha = x * x;
        const ComplexMatrix beta = p * p;
        const ComplexMatrix theta = 0.5 * (x * p + p * x);
        ops = {x,
               p,
               n,
               parity,
               0.5 * i * (x * parity - parity * x),
               0.5 * i * (p * parity - parity * p),
               alpha,
               beta,
               theta,
               0.5 * (alpha * parity + parity * alpha),
               0.5 * (theta * parity + parity * theta),
               0.5 * (beta * parity + parity * beta)};
    }

    ComplexMatrix hamiltonian(double wc, double wa, double g) const {
        return wc * n - 0.5 * wa * parity + g * x;
    }

    CumulantState moments(const ComplexVector& psi) const {
        std::array<double, 12> v{};
        for (std::size_t k = 0; k < 12; ++k) v[k] = psi.dot(ops[k] * psi).real();
        return CumulantState::from_array(v);
    }

    std::array<double, 12> derivatives(const ComplexVector& psi, double wc, double wa, double g) const {
        const ComplexMatrix h = hamiltonian(wc, wa, g);
        std::array<double, 12> v{};
        for (std::size_t k = 0; k < 12; ++k) {
            const ComplexMatrix comm = cplx(0.0, 1.0) * (h * ops[k] - ops[k] * h);
            v[k] = psi.dot(comm * psi).real();
        }
        return v;
    }
};

TEST(CumulantRhs, ExactEquationsMatchHeisenbergOracle) {
    const FockOracle oracle(40);
    std::mt19937_64 rng(2024);
    std::normal_distribution<double> normal;
    for (int trial = 0; trial < 25; ++trial) {
        ComplexVector psi = ComplexVector::Zero(oracle.dim);
        for (int m = 0; m < 12; ++m) psi(m) = cplx(normal(rng), normal(rng)) / static_cast<double>(1 + m);
        psi.normalize();
        const double wa = 0.2 + 2.0 * std::abs(normal(rng));
        const double g = 0.3 * normal(rng);
        const auto expected = oracle.derivatives(psi, 1.0, wa, g);
        const auto actual = cumulant_rhs(oracle.moments(psi), 1.0, wa, g).to_array();
        for (std::size_t k = 0; k < kExactEquations; ++k)
            EXPECT_NEAR(actual[k], expected[k], 1e-10) << "trial " << trial << ", component " << k;
    }
}

// The truncated equations are exact while the state is the vacuum.
TEST(CumulantRhs, ClosureExactAtVacuum) {
    const FockOracle oracle(20);
    ComplexVector vac = ComplexVector::Zero(20);
    vac(0) = 1.0;
    const auto expected = oracle.derivatives(vac, 1.0, 1.0, 0.1);
    const auto actual = cumulant_rhs(initial_cumulant_state(), 1.0, 1.0, 0.1).to_array();
    const CumulantState vac_moments = oracle.moments(vac);
    EXPECT_EQ(vac_moments.to_array(), initial_cumulant_state().to_array());
    for (std::size_t k = 0; k < 12; ++k) EXPECT_NEAR(actual[k], expected[k], 1e-14) << "component " << k;
}

TEST(Schedule, ParseWithCommentsAndBlankLines) {
    std::istringstream in("# header\n\n0.5 0.1\n  0.25   -0.1  # flipped\n\n");
    const Schedule s = parse_schedule(in);
    ASSERT_EQ(s.segments.size(), 2u);
    EXPECT_EQ(s.segments[0], (Segment{0.5, 0.1}));
    EXPECT_EQ(s.segments[1], (Segment{0.25, -0.1}));
    EXPECT_DOUBLE_EQ(s.total_duration(), 0.75);
}

TEST(Schedule, RejectsMalformedInput) {
    for (const char* text : {"0.5\n", "0.5 0.1 0.2\n", "abc 0.1\n", "-0.5 0.1\n", "0 0.1\n"}) {
        std::istringstream in(text);
        EXPECT_THROW(parse_schedule(in), std::invalid_argument) << text;
    }
    EXPECT_THROW(load_schedule("/nonexistent/schedule.txt"), std::runtime_error);
}

TEST(Schedule, FormatRoundTrip) {
    const Schedule s{{{0.1, 0.1}, {0.3, 0.0}, {1.0 / 3.0, -0.1}}};
    std::istringstream in(format_schedule(s));
    EXPECT_EQ(parse_schedule(in), s);

    const auto path = std::filesystem::temp_directory_path() / "rabi_schedule_roundtrip.txt";
    std::ofstream(path) << format_schedule(s);
    EXPECT_EQ(load_schedule(path), s);
    std::filesystem::remove(path);
}

TEST(Schedule, FromSequence) {
    ModelParams p;
    const ControlSequence seq("101", 0.2);
    const Schedule off = schedule_from_sequence(seq, p, ProtocolKind::switch_off);
    EXPECT_EQ(off, (Schedule{{{0.2, 0.1}, {0.2, 0.0}, {0.2, 0.1}}}));
    const Schedule flip = schedule_from_sequence(seq, p, ProtocolKind::sign_flip);
    EXPECT_EQ(flip, (Schedule{{{0.2, 0.1}, {0.2, -0.1}, {0.2, 0.1}}}));
}

TEST(Integrate, EmptyScheduleReturnsInitialState) {
    const CumulantSeries s = integrate(initial_cumulant_state(), Schedule{}, 1.0, 1.0, 1e-3);
    ASSERT_EQ(s.states.size(), 1u);
    EXPECT_EQ(s.times, std::vector<double>{0.0});
    EXPECT_EQ(s.states[0], initial_cumulant_state());
}

TEST(Integrate, ZeroCouplingLeavesVacuumUnchanged) {
    const CumulantSeries s = integrate(initial_cumulant_state(), Schedule{{{2.0, 0.0}}}, 1.0, 1.0, 1e-2);
    for (const CumulantState& st : s.states) EXPECT_EQ(st, initial_cumulant_state());
}

TEST(Integrate, RejectsIncompatibleStep) {
    EXPECT_THROW(integrate(initial_cumulant_state(), Schedule{{{0.25, 0.1}}}, 1.0, 1.0, 0.1), std::invalid_argument);
    EXPECT_THROW(integrate(initial_cumulant_state(), Schedule{{{0.2, 0.1}}}, 1.0, 1.0, 0.0), std::invalid_argument);
}

TEST(Integrate, SampleGrid) {
    const CumulantSeries s = integrate(initial_cumulant_state(), Schedule{{{0.2, 0.1}, {0.3, 0.0}}}, 1.0, 1.0, 0.05);
    ASSERT_EQ(s.times.size(), 11u);
    EXPECT_NEAR(s.times[4], 0.2, 1e-12);
    EXPECT_NEAR(s.times.back(), 0.5, 1e-12);
}

TEST(Integrate, FourthOrderConvergence) {
    const Schedule schedule{{{1.0, 0.1}, {1.0, 0.0}, {1.0, 0.1}}};
    const double reference =
        integrate(initial_cumulant_state(), schedule, 1.0, 1.0, 1e-4).states.back().n;
    const double coarse = integrate(initial_cumulant_state(), schedule, 1.0, 1.0, 0.2).states.back().n;
    const double fine = integrate(initial_cumulant_state(), schedule, 1.0, 1.0, 0.1).states.back().n;
    const double ratio = std::abs(coarse - reference) / std::abs(fine - reference);
    EXPECT_GT(ratio, 8.0);
    EXPECT_LT(ratio, 32.0);
}

TEST(CompareSchedule, FreeEvolutionAgrees) {
    ModelParams p;
    const OracleComparison c = compare_schedule(p, Schedule{{{15.0, 0.1}}}, 1e-3, 0.01);
    EXPECT_LE(c.max_abs_deviation, 0.02);
    EXPECT_TRUE(c.report.passed());
    EXPECT_FALSE(c.gamma_drift);
    EXPECT_EQ(c.times.size(), 1501u);
    const Trajectory free = free_trajectory(p, 15.0, 0.01);
    for (std::size_t k = 0; k < free.size(); k += 100) EXPECT_NEAR(c.n_exact[k], free.photon_numbers[k], 1e-10);
}

TEST(OracleCompare, AllZerosSwitchOff) {
    const OracleComparison c =
        oracle_compare(ControlSequence::all_zeros(20, 0.2), ModelParams{}, ProtocolKind::switch_off);
    EXPECT_EQ(c.max_abs_deviation, 0.0);
    for (double n : c.n_oracle) EXPECT_EQ(n, 0.0);
}

TEST(OracleCompare, GreedyOptimumAgrees) {
    SearchConfig cfg;
    const SearchResult best = greedy_search(cfg);
    const OracleComparison c = oracle_compare(best.best_sequence, cfg.params, cfg.protocol);
    EXPECT_EQ(c.times.size(), 76u);
    EXPECT_LE(c.max_abs_deviation, 0.03);
    EXPECT_EQ(c.n_exact.back(), best.best_photon_number);

    const Schedule schedule = schedule_from_sequence(best.best_sequence, cfg.params, cfg.protocol);
    EXPECT_LE(integration_error_estimate(schedule, 1.0, 1.0, 1e-3), 1e-6);
}

}  // namespace
}  // namespace rabi

// Randomised invariants over small configurations. The generator is seeded, so
// failures reproduce.

#include "rabi/search.hpp"

#include <gtest/gtest.h>

#include <random>

namespace rabi {
namespace {

struct Case {
    SearchConfig cfg;
    std::string bits;
};

Case random_case(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> g(0.0, 0.2);
    std::uniform_real_distribution<double> wa(0.1, 3.0);
    std::uniform_int_distribution<int> length(1, 20);
    std::uniform_int_distribution<int> beam(1, 8);
    std::uniform_int_distribution<int> n_max(12, 30);
    std::bernoulli_distribution coin(0.5);
    std::bernoulli_distribution fine(0.5);

    Case c;
    c.cfg.params.g = g(rng);
    c.cfg.params.omega_a = wa(rng);
    c.cfg.params.n_max = n_max(rng);
    c.cfg.dt = fine(rng) ? 0.1 : 0.2;
    const int L = length(rng);
    c.cfg.total_time = c.cfg.dt * L;
    c.cfg.beam_exponent = beam(rng);
    c.cfg.protocol = coin(rng) ? ProtocolKind::sign_flip : ProtocolKind::switch_off;
    for (int i = 0; i < L; ++i) c.bits.push_back(coin(rng) ? '1' : '0');
    return c;
}

class RandomConfigs : public ::testing::Test {
protected:
    static constexpr int kCases = 100;

    template <typename F>
    void for_each_case(F&& check) {
        std::mt19937_64 rng(20240601);
        for (int k = 0; k < kCases; ++k) {
            const Case c = random_case(rng);
            SCOPED_TRACE(::testing::Message() << "case " << k << ": g=" << c.cfg.params.g
                                              << " omega_a=" << c.cfg.params.omega_a << " n_max=" << c.cfg.params.n_max
                                              << " dt=" << c.cfg.dt << " bits=" << c.bits);
            check(c);
        }
    }
};

TEST_F(RandomConfigs, PropagatorsUnitary) {
    for_each_case([](const Case& c) {
        const Protocol p = make_protocol(c.cfg.params, c.cfg.dt, c.cfg.protocol);
        EXPECT_LE(p.unitarity_error(), kUnitarityTolerance);
    });
}

TEST_F(RandomConfigs, ReplayKeepsNormTailAndSign) {
    for_each_case([](const Case& c) {
        const Protocol p = make_protocol(c.cfg.params, c.cfg.dt, c.cfg.protocol);
        const EvolutionResult r = replay(ControlSequence(c.bits, c.cfg.dt), p);
        EXPECT_TRUE(r.report.passed());
        EXPECT_NEAR(r.final_state.norm(), 1.0, kNormTolerance);
        EXPECT_LE(tail_weight(r.final_state.amplitudes), kTailTolerance);
        for (double n : r.trajectory.photon_numbers) EXPECT_GE(n, 0.0);
    });
}

TEST_F(RandomConfigs, ReplayIsBitExact) {
    for_each_case([](const Case& c) {
        const Protocol p = make_protocol(c.cfg.params, c.cfg.dt, c.cfg.protocol);
        const ControlSequence seq(c.bits, c.cfg.dt);
        const EvolutionResult a = replay(seq, p);
        const EvolutionResult b = replay(seq, make_protocol(c.cfg.params, c.cfg.dt, c.cfg.protocol));
        EXPECT_EQ(a.trajectory.photon_numbers, b.trajectory.photon_numbers);
        EXPECT_EQ(a.final_state.amplitudes, b.final_state.amplitudes);
    });
}

TEST_F(RandomConfigs, SearchResultsReplayExactly) {
    for_each_case([](const Case& c) {
        const Protocol p = make_protocol(c.cfg.params, c.cfg.dt, c.cfg.protocol);
        for (const SearchResult& r : {greedy_search(c.cfg, p), pga_search(c.cfg, p)}) {
            EXPECT_EQ(photon_number(replay(r.best_sequence, p).final_state), r.best_photon_number);
            EXPECT_EQ(r.best_sequence.length(), c.cfg.sequence_length());
            EXPECT_TRUE(r.report.passed());
        }
    });
}

TEST_F(RandomConfigs, PrunedSearchDeterministicUnderThreads) {
    for_each_case([](const Case& c) {
        const Protocol p = make_protocol(c.cfg.params, c.cfg.dt, c.cfg.protocol);
        SearchConfig one = c.cfg;
        one.threads = 1;
        SearchConfig many = c.cfg;
        many.threads = 4;
        const SearchResult a = pga_search(one, p);
        const SearchResult b = pga_search(many, p);
        EXPECT_EQ(a.best_sequence, b.best_sequence);
        EXPECT_EQ(a.best_photon_number, b.best_photon_number);
    });
}

TEST_F(RandomConfigs, WideBeamEqualsExhaustive) {
    for_each_case([](const Case& c) {
        if (c.cfg.sequence_length() > 12) return;
        SearchConfig cfg = c.cfg;
        cfg.beam_exponent = static_cast<int>(cfg.sequence_length());
        const Protocol p = make_protocol(cfg.params, cfg.dt, cfg.protocol);
        const SearchResult pga = pga_search(cfg, p);
        const SearchResult ex = exhaustive_search(cfg, p);
        EXPECT_EQ(pga.best_sequence, ex.best_sequence);
        EXPECT_EQ(pga.best_photon_number, ex.best_photon_number);
        EXPECT_GE(ex.best_photon_number, greedy_search(cfg, p).best_photon_number);
    });
}

TEST_F(RandomConfigs, ConstrainedCountsHonoured) {
    for_each_case([](const Case& c) {
        const Protocol p = make_protocol(c.cfg.params, c.cfg.dt, c.cfg.protocol);
        const int length = static_cast<int>(c.cfg.sequence_length());
        const int n_g = static_cast<int>(ControlSequence(c.bits, c.cfg.dt).n_g());
        const SearchResult r = constrained_search(c.cfg, p, n_g, length - n_g);
        EXPECT_EQ(static_cast<int>(r.best_sequence.n_g()), n_g);
        if (length <= c.cfg.beam_exponent) {
            EXPECT_GE(r.best_photon_number, photon_number(replay(ControlSequence(c.bits, c.cfg.dt), p).final_state));
        }
    });
}

}  // namespace
}  // namespace rabi

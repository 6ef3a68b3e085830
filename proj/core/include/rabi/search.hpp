// search.hpp: control-sequence search: greedy, exhaustive, pruning greedy (beam)
//
// Objective: photon number at the final time T = L * dt, starting from the vacuum.
//
// Ordering used everywhere candidates compete: photon number descending, then
// bit string ascending ('0' < '1', leftmost bit most significant). This is a
// strict total order, so results are independent of evaluation order and of
// the number of worker threads. Greedy search alone breaks exact ties toward
// bit '1'.

#pragma once

#include "rabi/control_sequence.hpp"
#include "rabi/evolution.hpp"
#include "rabi/model.hpp"
#include "rabi/protocol.hpp"

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace rabi {

inline constexpr int kMaxBeamExponent = 24;
inline constexpr std::size_t kMaxExhaustiveLength = 24;

struct SearchConfig {
    double total_time{15.0};
    double dt{0.2};
    int beam_exponent{12};  // the pruned search keeps 2^beam_exponent prefixes
    ProtocolKind protocol{ProtocolKind::switch_off};
    ModelParams params;
    int threads{1};  // 0 = all cores; never changes results

    // Throws std::invalid_argument on invalid params, a T that is not a multiple
    // of dt, or a beam exponent outside [1, 24].
    void validate() const;
    std::size_t sequence_length() const;

    friend bool operator==(const SearchConfig&, const SearchConfig&) = default;
};

enum class SearchAlgorithm { greedy, exhaustive, pga, constrained_greedy, constrained_pga };

std::string_view to_string(SearchAlgorithm algorithm);

struct SearchResult {
    ControlSequence best_sequence;
    double best_photon_number{0.0};
    Trajectory trajectory;  // replay of best_sequence sampled at bit boundaries
    std::int64_t evaluations{0};
    SearchAlgorithm algorithm{SearchAlgorithm::greedy};
    InvariantReport report;
};

// Picks the bit with the larger photon number at the end of each pulse.
SearchResult greedy_search(const SearchConfig& cfg);
SearchResult greedy_search(const SearchConfig& cfg, const Protocol& protocol);

// All 2^L sequences. Requires L <= 24.
SearchResult exhaustive_search(const SearchConfig& cfg);
SearchResult exhaustive_search(const SearchConfig& cfg, const Protocol& protocol);

// Pruning greedy search: extend every kept prefix by 0 and 1, sort, keep the
// first 2^N. Identical to exhaustive_search while L <= N.
SearchResult pga_search(const SearchConfig& cfg);
SearchResult pga_search(const SearchConfig& cfg, const Protocol& protocol);

// One pruning pass up to max_length pulses. Element k is the pga_search result
// for a sequence of k + 1 pulses; the beam at a given length does not depend on
// the final time, so every prefix length comes out of the same pass.
std::vector<SearchResult> pga_curve(const SearchConfig& cfg, const Protocol& protocol, std::size_t max_length);

enum class ConstrainedMethod { greedy, pga };

// Best sequence with exactly n_g ones and n_0 zeros; n_g + n_0 must equal
// cfg.sequence_length(). Throws std::invalid_argument on infeasible counts.
SearchResult constrained_search(const SearchConfig& cfg, int n_g, int n_0,
                                ConstrainedMethod method = ConstrainedMethod::pga);
SearchResult constrained_search(const SearchConfig& cfg, const Protocol& protocol, int n_g, int n_0,
                                ConstrainedMethod method = ConstrainedMethod::pga);

// Replays a sequence from the vacuum, recording bit-boundary samples.
EvolutionResult replay(const ControlSequence& seq, const Protocol& protocol);

}  // namespace rabi

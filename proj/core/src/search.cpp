// search.cpp: greedy, exhaustive and pruned beam search over bit strings

#include "rabi/search.hpp"

#include "rabi/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>

namespace rabi {

void SearchConfig::validate() const {
    params.validate();
    if (beam_exponent < 1 || beam_exponent > kMaxBeamExponent) {
        throw std::invalid_argument("SearchConfig: beam exponent must lie in [1, " +
                                    std::to_string(kMaxBeamExponent) + "], got " + std::to_string(beam_exponent));
    }
    resolve_threads(threads);
    sequence_length();
}

std::size_t SearchConfig::sequence_length() const { return rabi::sequence_length(total_time, dt); }

std::string_view to_string(SearchAlgorithm algorithm) {
    switch (algorithm) {
        case SearchAlgorithm::greedy: return "greedy";
        case SearchAlgorithm::exhaustive: return "exhaustive";
        case SearchAlgorithm::pga: return "pga";
        case SearchAlgorithm::constrained_greedy: return "constrained-greedy";
        case SearchAlgorithm::constrained_pga: return "constrained-pga";
    }
    return "unknown";
}

EvolutionResult replay(const ControlSequence& seq, const Protocol& protocol) {
    return evolve_sequence(seq, protocol.on, protocol.off, vacuum_state(protocol.dim()), true);
}

namespace {

void check_protocol(const SearchConfig& cfg, const Protocol& protocol) {
    if (protocol.dim() != cfg.params.effective_dim()) {
        throw std::invalid_argument("search: protocol dimension does not match n_max");
    }
    if (std::abs(protocol.dt() - cfg.dt) > 1e-12) {
        throw std::invalid_argument("search: protocol dt does not match config dt");
    }
    if (protocol.kind != cfg.protocol) {
        throw std::invalid_argument("search: protocol kind does not match config");
    }
}

Protocol protocol_for(const SearchConfig& cfg) {
    cfg.validate();
    return make_protocol(cfg.params, cfg.dt, cfg.protocol);
}

SearchResult finish(std::string bits, double value, const SearchConfig& cfg, const Protocol& protocol,
                    SearchAlgorithm algorithm, std::int64_t evaluations) {
    SearchResult result;
    result.best_sequence = ControlSequence(std::move(bits), cfg.dt);
    result.best_photon_number = value;
    EvolutionResult run = replay(result.best_sequence, protocol);
    result.trajectory = std::move(run.trajectory);
    result.report = run.report;
    result.evaluations = evaluations;
    result.algorithm = algorithm;
    return result;
}

// Counts of ones/zeros still allowed; nullopt means unconstrained.
struct BitBudget {
    std::optional<std::size_t> ones;
    std::optional<std::size_t> zeros;

    bool allows(bool bit, std::size_t ones_used, std::size_t zeros_used) const {
        if (bit) return !ones || ones_used < *ones;
        return !zeros || zeros_used < *zeros;
    }
};

bool ranks_before(double value_a, const std::string& bits_a, double value_b, const std::string& bits_b) {
    if (value_a != value_b) return value_a > value_b;
    return bits_a < bits_b;
}

SearchResult run_greedy(const SearchConfig& cfg, const Protocol& protocol, const BitBudget& budget,
                        SearchAlgorithm algorithm) {
    const std::size_t length = cfg.sequence_length();
    ComplexVector current = vacuum_state(protocol.dim()).amplitudes;
    ComplexVector with_on(current.size());
    ComplexVector with_off(current.size());
    std::string bits;
    bits.reserve(length);
    std::size_t ones = 0;
    double value = 0.0;
    std::int64_t evaluations = 0;

    for (std::size_t k = 0; k < length; ++k) {
        const bool can_on = budget.allows(true, ones, k - ones);
        const bool can_off = budget.allows(false, ones, k - ones);
        double n_on = -std::numeric_limits<double>::infinity();
        double n_off = -std::numeric_limits<double>::infinity();
        if (can_on) {
            advance(protocol.on.matrix, current, with_on);
            n_on = photon_number(with_on);
            ++evaluations;
        }
        if (can_off) {
            advance(protocol.off.matrix, current, with_off);
            n_off = photon_number(with_off);
            ++evaluations;
        }
        // Ties go to '1'.
        if (can_on && n_on >= n_off) {
            current.swap(with_on);
            bits.push_back('1');
            ++ones;
            value = n_on;
        } else {
            current.swap(with_off);
            bits.push_back('0');
            value = n_off;
        }
    }
    return finish(std::move(bits), value, cfg, protocol, algorithm, evaluations);
}

struct Beam {
    std::vector<std::string> bits;
    std::vector<double> photons;
    std::vector<std::size_t> ones;
    ComplexMatrix states;  // one column per entry

    std::size_t size() const { return bits.size(); }
};

// Extends the beam by one pulse, drops prefixes the budget cannot complete,
// sorts and keeps at most `width` entries. Returns the number of evaluated states.
std::int64_t extend_and_prune(Beam& beam, const Protocol& protocol, std::size_t width, const BitBudget& budget,
                              std::size_t position, int threads) {
    const std::size_t parents = beam.size();
    const std::size_t candidates = 2 * parents;

    std::vector<char> feasible(candidates, 0);
    std::vector<double> photons(candidates, 0.0);
    ComplexMatrix states(protocol.dim(), static_cast<Eigen::Index>(candidates));

    // Candidate 2i is parent i + '0', candidate 2i+1 is parent i + '1'.
    parallel_for(candidates, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t c = begin; c < end; ++c) {
            const std::size_t parent = c / 2;
            const bool bit = (c % 2) == 1;
            const std::size_t ones = beam.ones[parent];
            if (!budget.allows(bit, ones, position - ones)) continue;
            auto out = states.col(static_cast<Eigen::Index>(c));
            advance(bit ? protocol.on.matrix : protocol.off.matrix, beam.states.col(static_cast<Eigen::Index>(parent)),
                    out);
            photons[c] = photon_number(out);
            feasible[c] = 1;
        }
    });

    std::vector<std::string> candidate_bits(candidates);
    std::vector<std::size_t> order;
    order.reserve(candidates);
    for (std::size_t c = 0; c < candidates; ++c) {
        if (!feasible[c]) continue;
        candidate_bits[c] = beam.bits[c / 2];
        candidate_bits[c].push_back((c % 2) == 1 ? '1' : '0');
        order.push_back(c);
    }
    const auto evaluated = static_cast<std::int64_t>(order.size());

    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return ranks_before(photons[a], candidate_bits[a], photons[b], candidate_bits[b]);
    });
    if (order.size() > width) order.resize(width);

    Beam next;
    next.bits.reserve(order.size());
    next.photons.reserve(order.size());
    next.ones.reserve(order.size());
    next.states.resize(protocol.dim(), static_cast<Eigen::Index>(order.size()));
    for (std::size_t k = 0; k < order.size(); ++k) {
        const std::size_t c = order[k];
        next.bits.push_back(std::move(candidate_bits[c]));
        next.photons.push_back(photons[c]);
        next.ones.push_back(beam.ones[c / 2] + (c % 2));
        next.states.col(static_cast<Eigen::Index>(k)) = states.col(static_cast<Eigen::Index>(c));
    }
    beam = std::move(next);
    return evaluated;
}

Beam initial_beam(const Protocol& protocol) {
    Beam beam;
    beam.bits.emplace_back();
    beam.photons.push_back(0.0);
    beam.ones.push_back(0);
    beam.states = vacuum_state(protocol.dim()).amplitudes;
    return beam;
}

std::size_t beam_width(const SearchConfig& cfg) { return std::size_t{1} << cfg.beam_exponent; }

}  // namespace

SearchResult greedy_search(const SearchConfig& cfg) { return greedy_search(cfg, protocol_for(cfg)); }

SearchResult greedy_search(const SearchConfig& cfg, const Protocol& protocol) {
    cfg.validate();
    check_protocol(cfg, protocol);
    return run_greedy(cfg, protocol, BitBudget{}, SearchAlgorithm::greedy);
}

SearchResult exhaustive_search(const SearchConfig& cfg) { return exhaustive_search(cfg, protocol_for(cfg)); }

SearchResult exhaustive_search(const SearchConfig& cfg, const Protocol& protocol) {
    cfg.validate();
    check_protocol(cfg, protocol);
    const std::size_t length = cfg.sequence_length();
    if (length > kMaxExhaustiveLength) {
        throw std::invalid_argument("exhaustive_search: sequence length " + std::to_string(length) +
                                    " exceeds the guard of " + std::to_string(kMaxExhaustiveLength));
    }

    // Depth-first in lexicographic order ('0' branch first); a strict improvement
    // is required to replace the incumbent, so ties keep the smallest bit string.
    ComplexMatrix stack(protocol.dim(), static_cast<Eigen::Index>(length + 1));
    stack.col(0) = vacuum_state(protocol.dim()).amplitudes;
    std::string bits(length, '0');
    std::string best_bits;
    double best_value = -std::numeric_limits<double>::infinity();
    std::int64_t evaluations = 0;

    const auto visit = [&](const auto& self, std::size_t depth) -> void {
        for (const char bit : {'0', '1'}) {
            bits[depth] = bit;
            auto out = stack.col(static_cast<Eigen::Index>(depth + 1));
            advance(bit == '1' ? protocol.on.matrix : protocol.off.matrix, stack.col(static_cast<Eigen::Index>(depth)),
                    out);
            if (depth + 1 == length) {
                ++evaluations;
                const double value = photon_number(out);
                if (value > best_value) {
                    best_value = value;
                    best_bits = bits;
                }
            } else {
                self(self, depth + 1);
            }
        }
    };
    visit(visit, 0);
    return finish(std::move(best_bits), best_value, cfg, protocol, SearchAlgorithm::exhaustive, evaluations);
}

SearchResult pga_search(const SearchConfig& cfg) { return pga_search(cfg, protocol_for(cfg)); }

SearchResult pga_search(const SearchConfig& cfg, const Protocol& protocol) {
    auto curve = pga_curve(cfg, protocol, cfg.sequence_length());
    return std::move(curve.back());
}

std::vector<SearchResult> pga_curve(const SearchConfig& cfg, const Protocol& protocol, std::size_t max_length) {
    cfg.validate();
    check_protocol(cfg, protocol);
    if (max_length < 1) {
        throw std::invalid_argument("pga_curve: max_length must be >= 1");
    }
    const int threads = resolve_threads(cfg.threads);
    Beam beam = initial_beam(protocol);
    std::vector<SearchResult> results;
    results.reserve(max_length);
    std::int64_t evaluations = 0;
    for (std::size_t position = 0; position < max_length; ++position) {
        evaluations += extend_and_prune(beam, protocol, beam_width(cfg), BitBudget{}, position, threads);
        results.push_back(finish(beam.bits.front(), beam.photons.front(), cfg, protocol, SearchAlgorithm::pga,
                                 evaluations));
    }
    return results;
}

SearchResult constrained_search(const SearchConfig& cfg, int n_g, int n_0, ConstrainedMethod method) {
    return constrained_search(cfg, protocol_for(cfg), n_g, n_0, method);
}

SearchResult constrained_search(const SearchConfig& cfg, const Protocol& protocol, int n_g, int n_0,
                                ConstrainedMethod method) {
    cfg.validate();
    check_protocol(cfg, protocol);
    const std::size_t length = cfg.sequence_length();
    if (n_g < 0 || n_0 < 0 || static_cast<std::size_t>(n_g) + static_cast<std::size_t>(n_0) != length) {
        throw std::invalid_argument("constrained_search: infeasible counts n_g = " + std::to_string(n_g) +
                                    ", n_0 = " + std::to_string(n_0) + " for " + std::to_string(length) + " pulses");
    }
    const BitBudget budget{static_cast<std::size_t>(n_g), static_cast<std::size_t>(n_0)};

    if (method == ConstrainedMethod::greedy) {
        return run_greedy(cfg, protocol, budget, SearchAlgorithm::constrained_greedy);
    }

    const int threads = resolve_threads(cfg.threads);
    Beam beam = initial_beam(protocol);
    std::int64_t evaluations = 0;
    for (std::size_t position = 0; position < length; ++position) {
        evaluations += extend_and_prune(beam, protocol, beam_width(cfg), budget, position, threads);
    }
    return finish(beam.bits.front(), beam.photons.front(), cfg, protocol, SearchAlgorithm::constrained_pga,
                  evaluations);
}

}  // namespace rabi

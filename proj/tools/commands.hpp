// commands.hpp: rabi-bb subcommands
//
// Each command runs one experiment, writes <out_dir>/<name>.csv plus a JSON
// RunRecord <out_dir>/<name>.json, and returns the record. The CSV payloads
// depend only on the options (never on timing or thread count).

#pragma once

#include "run_record.hpp"

#include "rabi/model.hpp"
#include "rabi/protocol.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace rabi::cli {

struct CommonOptions {
    ModelParams params;
    std::filesystem::path out_dir{"."};
    int threads{0};
    std::optional<long long> seed;  // accepted and ignored: everything is deterministic
    std::vector<std::string> command_echo;
};

struct FreeEvolveOptions {
    CommonOptions common;
    double t_max{15.0};
    double sample_dt{0.01};
};

struct SearchOptions {
    CommonOptions common;
    std::string algorithm{"pga"};  // greedy | pga | exhaustive
    ProtocolKind protocol{ProtocolKind::switch_off};
    double total_time{15.0};
    double dt{0.2};
    int beam_exponent{12};
};

struct ConstrainedOptions {
    CommonOptions common;
    ProtocolKind protocol{ProtocolKind::switch_off};
    int n_g{10};
    int n0_min{0};
    int n0_max{40};
    double dt{0.2};
    int beam_exponent{12};
};

struct SweepOptions {
    CommonOptions common;
    ProtocolKind protocol{ProtocolKind::switch_off};
    std::vector<double> omega_a_grid;
    std::vector<double> T_grid;
    double dt{0.2};
};

struct OracleOptions {
    CommonOptions common;
    std::optional<std::filesystem::path> schedule_file;
    std::optional<std::string> sequence;
    ProtocolKind protocol{ProtocolKind::switch_off};
    double dt{0.2};          // pulse length for --sequence
    double t_max{15.0};      // free-evolution schedule when neither input is given
    double step{1e-3};
    std::optional<double> sample_dt;  // defaults: dt for sequences, 0.01 otherwise
};

struct DtConvergenceOptions {
    CommonOptions common;
    ProtocolKind protocol{ProtocolKind::switch_off};
    double dt_a{0.1};
    double dt_b{0.2};
    std::vector<double> T_grid;
    int beam_exponent{12};
};

RunRecord cmd_free_evolve(const FreeEvolveOptions& opts);
RunRecord cmd_search(const SearchOptions& opts);
RunRecord cmd_constrained(const ConstrainedOptions& opts);
RunRecord cmd_sweep(const SweepOptions& opts);
RunRecord cmd_oracle(const OracleOptions& opts);
RunRecord cmd_dt_convergence(const DtConvergenceOptions& opts);

// Exit codes: 0 success, 1 an invariant check failed, 2 usage or input error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rabi::cli

// commands.cpp: experiment runners behind the rabi-bb subcommands

#include "commands.hpp"

#include "rabi/cumulant.hpp"
#include "rabi/evolution.hpp"
#include "rabi/search.hpp"
#include "rabi/sweep.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <ostream>
#include <stdexcept>

namespace rabi::cli {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

RunRecord base_record(const CommonOptions& common, ProtocolKind protocol) {
    RunRecord record;
    record.command = common.command_echo;
    record.params = common.params;
    record.protocol = protocol;
    record.n_max = common.params.n_max;
    return record;
}

void prepare_out_dir(const CommonOptions& common) {
    common.params.validate();
    std::filesystem::create_directories(common.out_dir);
}

void finish_record(RunRecord& record, const CommonOptions& common, const std::string& name,
                   const InvariantReport& report, Clock::time_point start) {
    record.checks_passed = report.passed();
    record.payload["invariants"] = {{"max_unitarity_error", report.max_unitarity_error},
                                    {"max_norm_error", report.max_norm_error},
                                    {"max_tail_weight", report.max_tail_weight},
                                    {"min_photon_number", report.min_photon_number}};
    record.wall_seconds = seconds_since(start);
    write_run_record(common.out_dir / (name + ".json"), record);
}

CsvTable trajectory_table(const Trajectory& traj) {
    CsvTable table{{"t", "n_ph"}, {}};
    table.rows.reserve(traj.size());
    for (std::size_t k = 0; k < traj.size(); ++k) table.rows.push_back({traj.times[k], traj.photon_numbers[k]});
    return table;
}

SearchConfig search_config(const CommonOptions& common, ProtocolKind protocol, double total_time, double dt,
                           int beam_exponent) {
    SearchConfig cfg;
    cfg.params = common.params;
    cfg.protocol = protocol;
    cfg.total_time = total_time;
    cfg.dt = dt;
    cfg.beam_exponent = beam_exponent;
    cfg.threads = common.threads;
    return cfg;
}

}  // namespace

RunRecord cmd_free_evolve(const FreeEvolveOptions& opts) {
    const auto start = Clock::now();
    prepare_out_dir(opts.common);

    InvariantReport report;
    const Trajectory traj = free_trajectory(opts.common.params, opts.t_max, opts.sample_dt, &report);
    write_csv(opts.common.out_dir / "free_evolve.csv", trajectory_table(traj));

    RunRecord record = base_record(opts.common, ProtocolKind::switch_off);
    record.payload = {{"t_max", opts.t_max}, {"sample_dt", opts.sample_dt}, {"samples", traj.size()},
                      {"csv", "free_evolve.csv"}};
    try {
        const TrajectoryAnalysis analysis = analyze_trajectory(traj);
        record.payload["t0"] = analysis.t0;
        record.payload["first_max"] = analysis.first_max;
        record.payload["global_max"] = analysis.global_max;
        record.payload["global_max_time"] = analysis.global_max_time;
    } catch (const MonotoneTrajectoryError&) {
        record.payload["t0"] = nullptr;
        const auto peak = std::max_element(traj.photon_numbers.begin(), traj.photon_numbers.end());
        record.payload["global_max"] = *peak;
        record.payload["global_max_time"] = traj.times[static_cast<std::size_t>(peak - traj.photon_numbers.begin())];
    } catch (const std::invalid_argument&) {
        record.payload["t0"] = nullptr;
    }
    finish_record(record, opts.common, "free_evolve", report, start);
    return record;
}

RunRecord cmd_search(const SearchOptions& opts) {
    const auto start = Clock::now();
    prepare_out_dir(opts.common);
    const SearchConfig cfg = search_config(opts.common, opts.protocol, opts.total_time, opts.dt, opts.beam_exponent);
    cfg.validate();

    SearchResult result;
    if (opts.algorithm == "greedy") {
        result = greedy_search(cfg);
    } else if (opts.algorithm == "pga") {
        result = pga_search(cfg);
    } else if (opts.algorithm == "exhaustive") {
        result = exhaustive_search(cfg);
    } else {
        throw std::invalid_argument("unknown algorithm '" + opts.algorithm + "' (expected greedy, pga or exhaustive)");
    }

    write_csv(opts.common.out_dir / "search.csv", trajectory_table(result.trajectory));
    {
        std::ofstream bits(opts.common.out_dir / "search_sequence.txt");
        bits << result.best_sequence.bits() << '\n';
    }

    RunRecord record = base_record(opts.common, opts.protocol);
    record.search = cfg;
    record.payload = {{"algorithm", std::string(to_string(result.algorithm))},
                      {"bits", result.best_sequence.bits()},
                      {"n_g", result.best_sequence.n_g()},
                      {"n_0", result.best_sequence.n_0()},
                      {"final_photon_number", result.best_photon_number},
                      {"evaluations", result.evaluations},
                      {"csv", "search.csv"}};
    finish_record(record, opts.common, "search", result.report, start);
    return record;
}

RunRecord cmd_constrained(const ConstrainedOptions& opts) {
    const auto start = Clock::now();
    prepare_out_dir(opts.common);
    if (opts.n_g < 0 || opts.n0_min < 0 || opts.n0_max < opts.n0_min) {
        throw std::invalid_argument("constrained: need n_g >= 0 and 0 <= n0_min <= n0_max");
    }
    if (opts.n_g + opts.n0_min == 0) {
        throw std::invalid_argument("constrained: n_g = n_0 = 0 gives an empty sequence");
    }
    const Protocol protocol = make_protocol(opts.common.params, opts.dt, opts.protocol);

    CsvTable table{{"n_0", "value_pga", "value_greedy"}, {}};
    nlohmann::json rows = nlohmann::json::array();
    InvariantReport report;
    for (int n0 = opts.n0_min; n0 <= opts.n0_max; ++n0) {
        const double total_time = opts.dt * static_cast<double>(opts.n_g + n0);
        const SearchConfig cfg = search_config(opts.common, opts.protocol, total_time, opts.dt, opts.beam_exponent);
        const SearchResult pga = constrained_search(cfg, protocol, opts.n_g, n0, ConstrainedMethod::pga);
        const SearchResult greedy = constrained_search(cfg, protocol, opts.n_g, n0, ConstrainedMethod::greedy);
        report.merge(pga.report);
        report.merge(greedy.report);
        table.rows.push_back({static_cast<double>(n0), pga.best_photon_number, greedy.best_photon_number});
        rows.push_back({{"n_0", n0},
                        {"value_pga", pga.best_photon_number},
                        {"value_greedy", greedy.best_photon_number},
                        {"bits_pga", pga.best_sequence.bits()},
                        {"bits_greedy", greedy.best_sequence.bits()}});
    }
    write_csv(opts.common.out_dir / "constrained.csv", table);

    RunRecord record = base_record(opts.common, opts.protocol);
    record.search = search_config(opts.common, opts.protocol, opts.dt * (opts.n_g + opts.n0_max), opts.dt,
                                  opts.beam_exponent);
    record.payload = {{"n_g", opts.n_g}, {"rows", rows}, {"csv", "constrained.csv"}};
    finish_record(record, opts.common, "constrained", report, start);
    return record;
}

RunRecord cmd_sweep(const SweepOptions& opts) {
    const auto start = Clock::now();
    prepare_out_dir(opts.common);
    SearchConfig base = search_config(opts.common, opts.protocol, opts.T_grid.empty() ? opts.dt : opts.T_grid.back(),
                                      opts.dt, 12);
    const std::vector<SweepCell> cells = sweep_omega_a(base, opts.omega_a_grid, opts.T_grid);

    CsvTable table{{"omega_a", "T", "n_ph"}, {}};
    InvariantReport report;
    for (const auto& cell : cells) {
        table.rows.push_back({cell.omega_a, cell.total_time, cell.photon_number});
        report.merge(cell.report);
    }
    write_csv(opts.common.out_dir / "sweep.csv", table);

    RunRecord record = base_record(opts.common, opts.protocol);
    record.search = base;
    record.payload = {{"algorithm", "greedy"},
                      {"omega_a_grid", opts.omega_a_grid},
                      {"T_grid", opts.T_grid},
                      {"csv", "sweep.csv"}};
    finish_record(record, opts.common, "sweep", report, start);
    return record;
}

RunRecord cmd_oracle(const OracleOptions& opts) {
    const auto start = Clock::now();
    prepare_out_dir(opts.common);
    if (opts.schedule_file && opts.sequence) {
        throw std::invalid_argument("oracle: give either --schedule or --sequence, not both");
    }

    Schedule schedule;
    std::string source;
    OracleComparison cmp;
    if (opts.sequence) {
        const ControlSequence seq(*opts.sequence, opts.dt);
        schedule = schedule_from_sequence(seq, opts.common.params, opts.protocol);
        source = "sequence";
        cmp = opts.sample_dt ? compare_schedule(opts.common.params, schedule, opts.step, *opts.sample_dt)
                             : oracle_compare(seq, opts.common.params, opts.protocol, opts.step);
    } else {
        if (opts.schedule_file) {
            schedule = load_schedule(*opts.schedule_file);
            source = opts.schedule_file->string();
        } else {
            schedule.segments.push_back({opts.t_max, opts.common.params.g});
            source = "free-evolution";
        }
        cmp = compare_schedule(opts.common.params, schedule, opts.step, opts.sample_dt.value_or(0.01));
    }
    const double integration_error =
        integration_error_estimate(schedule, opts.common.params.omega_c, opts.common.params.omega_a, opts.step);

    CsvTable table{{"t", "n_exact", "n_oracle"}, {}};
    for (std::size_t k = 0; k < cmp.times.size(); ++k) table.rows.push_back({cmp.times[k], cmp.n_exact[k], cmp.n_oracle[k]});
    write_csv(opts.common.out_dir / "oracle.csv", table);

    RunRecord record = base_record(opts.common, opts.protocol);
    record.payload = {{"source", source},
                      {"step", opts.step},
                      {"segments", schedule.segments.size()},
                      {"total_time", schedule.total_duration()},
                      {"max_abs_deviation", cmp.max_abs_deviation},
                      {"integration_error_estimate", integration_error},
                      {"gamma_drift", cmp.gamma_drift},
                      {"csv", "oracle.csv"}};
    finish_record(record, opts.common, "oracle", cmp.report, start);
    return record;
}

RunRecord cmd_dt_convergence(const DtConvergenceOptions& opts) {
    const auto start = Clock::now();
    prepare_out_dir(opts.common);
    if (opts.T_grid.empty()) throw std::invalid_argument("dt-convergence: empty T grid");
    for (std::size_t k = 1; k < opts.T_grid.size(); ++k) {
        if (!(opts.T_grid[k] > opts.T_grid[k - 1])) {
            throw std::invalid_argument("dt-convergence: T grid must be strictly ascending");
        }
    }

    InvariantReport report;
    // One pruning pass per dt covers every T on the grid.
    const auto curve_for = [&](double dt) {
        const SearchConfig cfg =
            search_config(opts.common, opts.protocol, opts.T_grid.back(), dt, opts.beam_exponent);
        const Protocol protocol = make_protocol(cfg.params, dt, cfg.protocol);
        const std::vector<SearchResult> curve = pga_curve(cfg, protocol, cfg.sequence_length());
        std::vector<double> values;
        for (double t : opts.T_grid) {
            const SearchResult& result = curve[sequence_length(t, dt) - 1];
            report.merge(result.report);
            values.push_back(result.best_photon_number);
        }
        return values;
    };
    const std::vector<double> values_a = curve_for(opts.dt_a);
    const std::vector<double> values_b = curve_for(opts.dt_b);

    CsvTable table{{"T", "n_dt_a", "n_dt_b", "gap"}, {}};
    double max_gap = 0.0;
    for (std::size_t k = 0; k < opts.T_grid.size(); ++k) {
        const double gap = std::abs(values_a[k] - values_b[k]);
        max_gap = std::max(max_gap, gap);
        table.rows.push_back({opts.T_grid[k], values_a[k], values_b[k], gap});
    }
    write_csv(opts.common.out_dir / "dt_convergence.csv", table);

    RunRecord record = base_record(opts.common, opts.protocol);
    record.search = search_config(opts.common, opts.protocol, opts.T_grid.back(), opts.dt_b, opts.beam_exponent);
    record.payload = {{"dt_a", opts.dt_a}, {"dt_b", opts.dt_b}, {"T_grid", opts.T_grid},
                      {"max_gap", max_gap}, {"csv", "dt_convergence.csv"}};
    finish_record(record, opts.common, "dt_convergence", report, start);
    return record;
}

namespace {

void add_common(CLI::App* sub, CommonOptions& common) {
    sub->add_option("--g", common.params.g, "Coupling strength (units of omega_c)")->capture_default_str();
    sub->add_option("--omega-a", common.params.omega_a, "Atomic splitting (units of omega_c)")->capture_default_str();
    sub->add_option("--omega-c", common.params.omega_c, "Cavity frequency")->capture_default_str();
    sub->add_option("--n-max", common.params.n_max, "Fock truncation")->capture_default_str();
    sub->add_option("--out-dir", common.out_dir, "Directory for CSV/JSON output")->capture_default_str();
    sub->add_option("--threads", common.threads, "Worker threads (0 = all cores)")->capture_default_str();
    sub->add_option("--seed", common.seed, "Accepted for compatibility; all algorithms are deterministic");
}

ProtocolKind protocol_from(const std::string& text) { return parse_protocol_kind(text); }

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bang-bang photon generation in the quantum Rabi model", "rabi-bb"};
    app.require_subcommand(1);

    std::vector<std::string> echo(argv, argv + argc);
    std::function<RunRecord()> job;
    std::string protocol_text = "switch-off";
    std::string omega_grid = "0.1:3.0:0.1";
    std::string t_grid_sweep = "0.2:15:0.2";
    std::string t_grid_dt = "2:14:2";

    FreeEvolveOptions free_opts;
    auto* free_cmd = app.add_subcommand("free-evolve", "Photon number under the always-on coupling");
    add_common(free_cmd, free_opts.common);
    free_cmd->add_option("--t-max", free_opts.t_max, "Final time")->capture_default_str();
    free_cmd->add_option("--sample-dt", free_opts.sample_dt, "Sampling interval")->capture_default_str();
    free_cmd->callback([&] { job = [&] { return cmd_free_evolve(free_opts); }; });

    SearchOptions search_opts;
    auto* search_cmd = app.add_subcommand("search", "Optimise a control sequence");
    add_common(search_cmd, search_opts.common);
    search_cmd->add_option("--algo", search_opts.algorithm, "greedy | pga | exhaustive")
        ->check(CLI::IsMember({"greedy", "pga", "exhaustive"}))
        ->capture_default_str();
    search_cmd->add_option("--protocol", protocol_text, "switch-off | sign-flip")
        ->check(CLI::IsMember({"switch-off", "sign-flip"}))
        ->capture_default_str();
    search_cmd->add_option("--T", search_opts.total_time, "Total time")->capture_default_str();
    search_cmd->add_option("--dt", search_opts.dt, "Pulse length")->capture_default_str();
    search_cmd->add_option("--beam-exp", search_opts.beam_exponent, "Keep 2^N prefixes in the pruned search")
        ->capture_default_str();
    search_cmd->callback([&] {
        search_opts.protocol = protocol_from(protocol_text);
        job = [&] { return cmd_search(search_opts); };
    });

    ConstrainedOptions constrained_opts;
    auto* constrained_cmd = app.add_subcommand("constrained", "Best photon number with n_g on-pulses fixed");
    add_common(constrained_cmd, constrained_opts.common);
    constrained_cmd->add_option("--protocol", protocol_text, "switch-off | sign-flip")
        ->check(CLI::IsMember({"switch-off", "sign-flip"}))
        ->capture_default_str();
    constrained_cmd->add_option("--n-g", constrained_opts.n_g, "Number of on-pulses")->capture_default_str();
    constrained_cmd->add_option("--n0-min", constrained_opts.n0_min, "Smallest number of off-pulses")
        ->capture_default_str();
    constrained_cmd->add_option("--n0-max", constrained_opts.n0_max, "Largest number of off-pulses")
        ->capture_default_str();
    constrained_cmd->add_option("--dt", constrained_opts.dt, "Pulse length")->capture_default_str();
    constrained_cmd->add_option("--beam-exp", constrained_opts.beam_exponent, "Pruned-search exponent N")
        ->capture_default_str();
    constrained_cmd->callback([&] {
        constrained_opts.protocol = protocol_from(protocol_text);
        job = [&] { return cmd_constrained(constrained_opts); };
    });

    SweepOptions sweep_opts;
    auto* sweep_cmd = app.add_subcommand("sweep", "Greedy photon number over (omega_a, T)");
    add_common(sweep_cmd, sweep_opts.common);
    sweep_cmd->add_option("--protocol", protocol_text, "switch-off | sign-flip")
        ->check(CLI::IsMember({"switch-off", "sign-flip"}))
        ->capture_default_str();
    sweep_cmd->add_option("--omega-a-grid", omega_grid, "start:stop:step or comma list")->capture_default_str();
    sweep_cmd->add_option("--T-grid", t_grid_sweep, "start:stop:step or comma list")->capture_default_str();
    sweep_cmd->add_option("--dt", sweep_opts.dt, "Pulse length")->capture_default_str();
    sweep_cmd->callback([&] {
        sweep_opts.protocol = protocol_from(protocol_text);
        sweep_opts.omega_a_grid = parse_grid(omega_grid);
        sweep_opts.T_grid = parse_grid(t_grid_sweep);
        job = [&] { return cmd_sweep(sweep_opts); };
    });

    OracleOptions oracle_opts;
    std::string schedule_path;
    std::string sequence_bits;
    double oracle_sample_dt = 0.0;
    auto* oracle_cmd = app.add_subcommand("oracle", "Compare exact evolution with the moment equations");
    add_common(oracle_cmd, oracle_opts.common);
    auto* schedule_opt = oracle_cmd->add_option("--schedule", schedule_path, "Schedule file: 'duration g' per line");
    auto* sequence_opt = oracle_cmd->add_option("--sequence", sequence_bits, "Bit string, e.g. 111000111");
    schedule_opt->excludes(sequence_opt);
    oracle_cmd->add_option("--protocol", protocol_text, "switch-off | sign-flip (for --sequence)")
        ->check(CLI::IsMember({"switch-off", "sign-flip"}))
        ->capture_default_str();
    oracle_cmd->add_option("--dt", oracle_opts.dt, "Pulse length for --sequence")->capture_default_str();
    oracle_cmd->add_option("--t-max", oracle_opts.t_max, "Free-evolution length when no input is given")
        ->capture_default_str();
    oracle_cmd->add_option("--step", oracle_opts.step, "RK4 step")->capture_default_str();
    auto* sample_opt = oracle_cmd->add_option("--sample-dt", oracle_sample_dt, "Output sampling interval");
    oracle_cmd->callback([&] {
        oracle_opts.protocol = protocol_from(protocol_text);
        if (!schedule_path.empty()) oracle_opts.schedule_file = schedule_path;
        if (sequence_opt->count() > 0) oracle_opts.sequence = sequence_bits;
        if (sample_opt->count() > 0) oracle_opts.sample_dt = oracle_sample_dt;
        job = [&] { return cmd_oracle(oracle_opts); };
    });

    DtConvergenceOptions dt_opts;
    auto* dt_cmd = app.add_subcommand("dt-convergence", "Pruned-search curves at two pulse lengths");
    add_common(dt_cmd, dt_opts.common);
    dt_cmd->add_option("--protocol", protocol_text, "switch-off | sign-flip")
        ->check(CLI::IsMember({"switch-off", "sign-flip"}))
        ->capture_default_str();
    dt_cmd->add_option("--dt-a", dt_opts.dt_a, "First pulse length")->capture_default_str();
    dt_cmd->add_option("--dt-b", dt_opts.dt_b, "Second pulse length")->capture_default_str();
    dt_cmd->add_option("--T-grid", t_grid_dt, "start:stop:step or comma list")->capture_default_str();
    dt_cmd->add_option("--beam-exp", dt_opts.beam_exponent, "Pruned-search exponent N")->capture_default_str();
    dt_cmd->callback([&] {
        dt_opts.protocol = protocol_from(protocol_text);
        dt_opts.T_grid = parse_grid(t_grid_dt);
        job = [&] { return cmd_dt_convergence(dt_opts); };
    });

    for (CommonOptions* common : {&free_opts.common, &search_opts.common, &constrained_opts.common,
                                  &sweep_opts.common, &oracle_opts.common, &dt_opts.common}) {
        common->command_echo = echo;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    } catch (const std::exception& e) {
        err << "rabi-bb: " << e.what() << '\n';
        return 2;
    }

    try {
        const RunRecord record = job();
        out << to_json(record).dump(2) << '\n';
        if (record.payload.contains("gamma_drift") && record.payload["gamma_drift"].get<bool>()) {
            err << "rabi-bb: warning: |gamma| exceeded 1 + 1e-3 in the moment equations\n";
        }
        if (!record.checks_passed) {
            err << "rabi-bb: invariant check failed (see \"invariants\" in the run record)\n";
            return 1;
        }
        return 0;
    } catch (const std::exception& e) {
        err << "rabi-bb: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace rabi::cli

// sweep.cpp

#include "rabi/sweep.hpp"

#include "rabi/parallel.hpp"

#include <stdexcept>
#include <string>

namespace rabi {

namespace {

void check_grid(const std::vector<double>& grid, const char* name) {
    if (grid.empty()) {
        throw std::invalid_argument(std::string("sweep: ") + name + " grid is empty");
    }
    for (std::size_t k = 1; k < grid.size(); ++k) {
        if (!(grid[k] > grid[k - 1])) {
            throw std::invalid_argument(std::string("sweep: ") + name + " grid must be strictly ascending");
        }
    }
}

}  // namespace

std::vector<SweepCell> sweep_omega_a(const SearchConfig& base_cfg, const std::vector<double>& omega_a_grid,
                                     const std::vector<double>& T_grid) {
    check_grid(omega_a_grid, "omega_a");
    check_grid(T_grid, "T");
    base_cfg.params.validate();
    for (double t : T_grid) sequence_length(t, base_cfg.dt);

    std::vector<SweepCell> cells(omega_a_grid.size() * T_grid.size());
    // Rows are independent; each writes only its own cells.
    parallel_for(omega_a_grid.size(), base_cfg.threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            SearchConfig cfg = base_cfg;
            cfg.params.omega_a = omega_a_grid[i];
            cfg.threads = 1;
            const Protocol protocol = make_protocol(cfg.params, cfg.dt, cfg.protocol);
            for (std::size_t j = 0; j < T_grid.size(); ++j) {
                cfg.total_time = T_grid[j];
                const SearchResult result = greedy_search(cfg, protocol);
                cells[i * T_grid.size() + j] = {omega_a_grid[i], T_grid[j], result.best_photon_number, result.report};
            }
        }
    });
    return cells;
}

std::vector<SweepCell> sweep_omega_a_sigmaz(const SearchConfig& base_cfg, const std::vector<double>& omega_a_grid,
                                            const std::vector<double>& T_grid) {
    SearchConfig cfg = base_cfg;
    cfg.protocol = ProtocolKind::sign_flip;
    return sweep_omega_a(cfg, omega_a_grid, T_grid);
}

}  // namespace rabi

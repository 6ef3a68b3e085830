// sweep.hpp: greedy photon number over a (T, omega_a) grid

#pragma once

#include "rabi/search.hpp"

#include <vector>

namespace rabi {

struct SweepCell {
    double omega_a{0.0};
    double total_time{0.0};
    double photon_number{0.0};
    InvariantReport report;
};

// Row-major over omega_a, then T: cells[i * T_grid.size() + j] holds
// (omega_a_grid[i], T_grid[j]). Every cell is a self-contained greedy run with
// base_cfg's dt, n_max, coupling and protocol. Grids must be non-empty and
// strictly ascending.
std::vector<SweepCell> sweep_omega_a(const SearchConfig& base_cfg, const std::vector<double>& omega_a_grid,
                                     const std::vector<double>& T_grid);

// sweep_omega_a with the sign-flip protocol regardless of base_cfg.protocol.
std::vector<SweepCell> sweep_omega_a_sigmaz(const SearchConfig& base_cfg, const std::vector<double>& omega_a_grid,
                                            const std::vector<double>& T_grid);

}  // namespace rabi

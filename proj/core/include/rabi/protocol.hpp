// protocol.hpp: the two bang-bang protocols behind one interface
//
//   switch-off : bit 1 -> H_eff, bit 0 -> H0_eff (coupling removed)
//   sign-flip  : bit 1 -> H_eff, bit 0 -> H_eff with g -> -g (sigma_z gates
//                at both ends of the pulse, modelled as instantaneous)

#pragma once

#include "rabi/evolution.hpp"
#include "rabi/model.hpp"

#include <string_view>

namespace rabi {

enum class ProtocolKind { switch_off, sign_flip };

std::string_view to_string(ProtocolKind kind);
// Accepts "switch-off" and "sign-flip". Throws std::invalid_argument otherwise.
ProtocolKind parse_protocol_kind(std::string_view text);

struct Protocol {
    ProtocolKind kind{ProtocolKind::switch_off};
    Propagator on;
    Propagator off;

    Eigen::Index dim() const { return on.dim(); }
    double dt() const { return on.dt; }
    double unitarity_error() const;
};

Protocol make_protocol(const ModelParams& params, double dt, ProtocolKind kind);

// Coupling applied during a pulse with the given bit.
double coupling_for_bit(const ModelParams& params, ProtocolKind kind, bool on);

}  // namespace rabi

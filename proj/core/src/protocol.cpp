// protocol.cpp

#include "rabi/protocol.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace rabi {

std::string_view to_string(ProtocolKind kind) {
    return kind == ProtocolKind::switch_off ? "switch-off" : "sign-flip";
}

ProtocolKind parse_protocol_kind(std::string_view text) {
    if (text == "switch-off") return ProtocolKind::switch_off;
    if (text == "sign-flip") return ProtocolKind::sign_flip;
    throw std::invalid_argument("unknown protocol '" + std::string(text) + "' (expected switch-off or sign-flip)");
}

double Protocol::unitarity_error() const {
    return std::max(on.unitarity_error(), off.unitarity_error());
}

Protocol make_protocol(const ModelParams& params, double dt, ProtocolKind kind) {
    params.validate();
    Protocol protocol;
    protocol.kind = kind;
    protocol.on = make_propagator(diagonalize(build_h_eff(params)), dt, PropagatorSource::on);
    if (kind == ProtocolKind::switch_off) {
        protocol.off = make_propagator(diagonalize(build_h0_eff(params)), dt, PropagatorSource::off);
    } else {
        protocol.off = make_propagator(diagonalize(build_h_eff_flipped(params)), dt, PropagatorSource::flipped);
    }
    return protocol;
}

double coupling_for_bit(const ModelParams& params, ProtocolKind kind, bool on) {
    if (on) return params.g;
    return kind == ProtocolKind::switch_off ? 0.0 : -params.g;
}

}  // namespace rabi

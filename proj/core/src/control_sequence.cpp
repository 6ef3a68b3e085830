// control_sequence.cpp

#include "rabi/control_sequence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rabi {

ControlSequence::ControlSequence(std::string bits, double dt) : bits_(std::move(bits)), dt_(dt) {
    if (bits_.empty()) {
        throw std::invalid_argument("ControlSequence: empty bit string");
    }
    if (bits_.find_first_not_of("01") != std::string::npos) {
        throw std::invalid_argument("ControlSequence: bits must be '0' or '1': " + bits_);
    }
    if (!(dt_ > 0.0) || !std::isfinite(dt_)) {
        throw std::invalid_argument("ControlSequence: dt must be > 0");
    }
}

ControlSequence ControlSequence::all_ones(std::size_t length, double dt) {
    return {std::string(length, '1'), dt};
}

ControlSequence ControlSequence::all_zeros(std::size_t length, double dt) {
    return {std::string(length, '0'), dt};
}

std::size_t ControlSequence::n_g() const {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), '1'));
}

std::size_t sequence_length(double total_time, double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw std::invalid_argument("sequence_length: dt must be > 0");
    }
    if (!(total_time > 0.0) || !std::isfinite(total_time)) {
        throw std::invalid_argument("sequence_length: total time must be > 0");
    }
    const double steps = std::round(total_time / dt);
    if (steps < 1.0 || std::abs(steps * dt - total_time) > 1e-9) {
        throw std::invalid_argument("sequence_length: T = " + std::to_string(total_time) +
                                    " is not an integer multiple of dt = " + std::to_string(dt));
    }
    return static_cast<std::size_t>(steps);
}

}  // namespace rabi

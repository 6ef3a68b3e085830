// control_sequence.hpp: binary bang-bang control sequences

#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace rabi {

// Bit '1' means the counter-rotating coupling is on for one pulse of length dt,
// bit '0' means it is off (or sign-flipped, depending on the protocol).
class ControlSequence {
public:
    ControlSequence() = default;
    // Throws std::invalid_argument on characters other than '0'/'1', empty
    // strings, or dt <= 0.
    ControlSequence(std::string bits, double dt);

    static ControlSequence all_ones(std::size_t length, double dt);
    static ControlSequence all_zeros(std::size_t length, double dt);

    const std::string& bits() const { return bits_; }
    double dt() const { return dt_; }
    std::size_t length() const { return bits_.size(); }
    bool on(std::size_t i) const { return bits_[i] == '1'; }

    std::size_t n_g() const;  // number of on pulses
    std::size_t n_0() const { return length() - n_g(); }
    double total_time() const { return dt_ * static_cast<double>(length()); }

    friend bool operator==(const ControlSequence&, const ControlSequence&) = default;

private:
    std::string bits_;
    double dt_{0.0};
};

// round(total_time / dt), rejecting grids where the rounded length does not
// reproduce total_time within 1e-9 or the length would be zero.
std::size_t sequence_length(double total_time, double dt);

}  // namespace rabi

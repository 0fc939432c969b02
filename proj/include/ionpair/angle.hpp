#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ionpair {

/// Rotation angle in radians, reduced to [0, 2*pi) on construction.
class Angle {
public:
    explicit Angle(double radians) {
        if (!std::isfinite(radians)) throw std::invalid_argument("Angle: non-finite value");
        constexpr double two_pi = 2.0 * std::numbers::pi;
        rad_ = std::fmod(radians, two_pi);
        if (rad_ < 0.0) rad_ += two_pi;
    }

    double radians() const { return rad_; }

private:
    double rad_;
};

}  // namespace ionpair

#pragma once

#include <string>

namespace sdkim {

// Parse an angle literal: a decimal number, "pi", or a pi-fraction such as
// "pi/3", "-pi/14", "2pi/7", "3*pi/4". Throws std::invalid_argument on
// malformed input.
double parse_angle(const std::string& text);

// Render an angle: an exact "k pi / n" form (k, n <= 64) when the value is
// one to within 1 ulp-scale tolerance, otherwise a 17-significant-digit
// decimal. parse_angle(format_angle(x)) == x for the pi-fraction branch.
std::string format_angle(double value);

}  // namespace sdkim

#pragma once

#include <string>

#include "fefflab/sphere_algebra.hpp"

namespace fefflab {

/// Parses a polynomial literal such as "2*z^2*wb - (1/2+i)*zb*w + 0.25".
///
/// Variables are z, w and their conjugates zb, wb; i is the imaginary unit.
/// Supports + - * ^ (non-negative integer exponents), division by nonzero
/// constants, parentheses, decimals and juxtaposition ("3i", "2z").
/// Throws ParseError with the offending position.
SpherePolynomial parse_polynomial(const std::string& text);

}  // namespace fefflab

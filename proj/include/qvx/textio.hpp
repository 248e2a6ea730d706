// Canonical text form for polynomials and rational functions, and the
// matching parser. The printer is deterministic: terms in canonical order,
// no whitespace, explicit '*', exponents as integers or parenthesized
// half-integers such as t1^(1/2). A rational function with a nontrivial
// denominator prints as (numerator)/(factor*factor^2*...). parse(str(x))
// reproduces x exactly.
#pragma once

#include "qvx/mpoly.hpp"
#include "qvx/ratfun.hpp"

#include <string>

namespace qvx {

std::string mono_str(const Monomial& m);
std::string mpoly_str(const MPoly& p);
std::string ratfun_str(const RatFun& f);

// Throw std::invalid_argument with position information on malformed input.
MPoly parse_mpoly(const std::string& text);
RatFun parse_ratfun(const std::string& text);

}  // namespace qvx

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "posicert/poly.hpp"

namespace posicert {

// Text grammar: sums of products of rational constants, the variables x, y, z,
// parenthesised sub-expressions and non-negative integer powers, e.g.
// "3/2*x^2*y - x + 1" or "x*(x+1)". '*' may be omitted before a variable or '('.
// Division is only allowed by a nonzero constant. Whitespace is ignored.
template <std::size_t N>
Poly<N> parse_poly(std::string_view text);

// Smallest ring (1, 2 or 3 variables) that holds the parsed expression.
std::size_t detect_arity(std::string_view text);

// Splits a ';'-separated list, trimming whitespace and dropping empty items.
std::vector<std::string> split_list(std::string_view text, char separator = ';');

extern template Poly<1> parse_poly<1>(std::string_view);
extern template Poly<2> parse_poly<2>(std::string_view);
extern template Poly<3> parse_poly<3>(std::string_view);
extern template std::string to_string<1>(const Poly<1>&);
extern template std::string to_string<2>(const Poly<2>&);
extern template std::string to_string<3>(const Poly<3>&);

}  // namespace posicert

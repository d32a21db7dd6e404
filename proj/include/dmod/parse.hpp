#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dmod/weyl.hpp"

namespace dmod {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses an operator such as "3/2*x*dx^2 - (x+1)*dy". Products are
/// evaluated left to right in the Weyl algebra, so "dx*x" reads as x*dx+1.
WeylOperator parse_operator(const RingPtr& ring, std::string_view text);

/// Comma-separated list of operators; commas inside parentheses do not split.
std::vector<WeylOperator> parse_operator_list(const RingPtr& ring, std::string_view text);

/// Comma-separated identifiers ("x,y,z").
std::vector<std::string> parse_name_list(std::string_view text);

/// "3", "-7/6", "1/6".
Rational parse_rational(std::string_view text);

}  // namespace dmod

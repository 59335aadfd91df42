#pragma once

#include <string>

#include "fskit/dynamics.hpp"

namespace fskit {

SignedWord parse_signed_word(const std::string &text);    // "A0 A1^-1 B1"
std::string format_signed_word(const SignedWord &w);
Fraction parse_fraction(const std::string &text);         // "[ a1 | id | b1 ]"
std::string format_fraction(const Fraction &f);
ElementExpr parse_element(const std::string &text);       // fraction if it starts with '['

} // namespace fskit

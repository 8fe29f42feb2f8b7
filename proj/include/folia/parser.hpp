#pragma once

#include <stdexcept>
#include <string>

#include "folia/poly2.hpp"

namespace folia {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, size_t pos)
        : std::runtime_error(what + " (at position " + std::to_string(pos) + ")"),
          position(pos) {}
    size_t position;
};

// Parses an expression over x, y, dx, dy with rational literals and
// + - * ^ ( ).  The result must be linear in dx, dy with no pure function
// part and must not be the zero form. See docs/input_grammar.md.
OneForm parse_one_form(const std::string& text);

// Canonical printer; emits the same grammar with monomials in the canonical
// order, so parse(print(w)) == w and output is deterministic.
std::string print_one_form(const OneForm& w);
std::string print_poly(const Poly2& p, const std::string& xs = "x",
                       const std::string& ys = "y");

} // namespace folia

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "mpair/differential.hpp"
#include "mpair/modelgen.hpp"

namespace mpair {

struct ParseError : std::runtime_error {
    ParseError(std::size_t line, std::size_t col, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ", col " + std::to_string(col) +
                             ": " + what),
          line(line),
          col(col) {}
    std::size_t line, col;
};

// One statement per line:
//   field GF(2) | field Q
//   element <id> deg=<int> side=boundary|interior [trivial]
//   d <id> = <term> (+ <term>)*      term = [<coef>*]<id>
// '#' starts a comment. Declaration order is the linear order. Structural
// problems that are not syntax (bad marks, bad entries) are left for
// validate().
MDifferential parse_mpair(const std::string& text);

// Canonical form: field line, element lines in order, then one d-line per
// nonzero column with terms by ascending target position; unit coefficients
// are bare, all others "<coef>*<id>". parse(emit(d)) reproduces d exactly.
std::string emit_mpair(const MDifferential& d);

struct Scenario {
    Field field = Field::gf(2);
    std::vector<CriticalEvent> events;  // by position, left to right
};

// One event per line, in position order:
//   field GF(2)
//   event boundary_left outward value=<rational>
//   event interior_min value=<rational>
Scenario parse_scenario(const std::string& text);
std::string emit_scenario(const Scenario& s);

} // namespace mpair

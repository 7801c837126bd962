#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "mpair/reduction.hpp"

namespace mpair {

// c -> c_+ (the order successor, always interior) and back.
struct CPairTable {
    std::map<std::size_t, std::size_t> succ;
    std::map<std::size_t, std::size_t> pred;

    static CPairTable from(const OrderedTriple& t);
    bool is_c_pair(std::size_t c, std::size_t cplus) const;
};

// Index (1..4) of the allowed condition satisfied by the mixed cell (row b,
// column a) of a quasi-elementary differential, or nullopt. The smallest
// applicable index is reported.
std::optional<int> allowed(const MDifferential& dq, const InvariantSignature& sig,
                           const CPairTable& cp, std::size_t a, std::size_t b);

enum class ViolationCase { n1, n2, n3, n4, n5 };

std::string violation_case_name(ViolationCase c);

struct Violation {
    std::size_t a = 0;  // interior column
    std::size_t b = 0;  // boundary row
    ViolationCase kind = ViolationCase::n1;
    std::optional<std::size_t> r, z, q, y;  // case-specific companions
};

// Case split for a nonzero, non-allowed mixed cell.
Violation classify(const MDifferential& dq, const InvariantSignature& sig, const CPairTable& cp,
                   std::size_t a, std::size_t b);

// One elimination: conjugates by the single elementary weak
// transform of the case, then verifies the step contract (target cell
// cleared, no new mixed support, both diagonal blocks untouched, output
// quasi-elementary and still in D_{A,B,C}, witness a valid weak transform).
ReductionResult eliminate_step(const MDifferential& dq, const Violation& v);

struct MinimizeResult {
    MDifferential output;
    BasisTransform witness;  // weak; output = conjugate(input, witness)
    // condition index per remaining nonzero mixed cell (row, col)
    std::map<std::pair<std::size_t, std::size_t>, int> certificate;
    std::size_t steps = 0;
};

MinimizeResult minimize(const MDifferential& d);

// Zero patterns coincide entrywise (triples must be isomorphic).
bool similar(const MDifferential& a, const MDifferential& b);

} // namespace mpair

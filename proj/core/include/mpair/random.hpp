#pragma once

#include <cstdint>

#include "mpair/transform.hpp"

namespace mpair {

// Deterministic-in-seed random element of the requested automorphism group.
// Diagonal entries are uniform over nonzero field elements; admissible
// off-diagonal cells are filled with probability `density`.
BasisTransform random_transform(const OrderedTriple& t, Field f, TransformKind kind,
                                std::uint64_t seed, double density = 0.4);

} // namespace mpair

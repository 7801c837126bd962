#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "mpair/differential.hpp"
#include "mpair/reduction.hpp"

namespace mpair {
namespace oracle {

// degree -> dimension; degrees with dimension zero are omitted.
using HomologyDims = std::map<int, std::size_t>;

// Homology of the subcomplex spanned by a ∂-closed position set (prefixes
// always qualify). Throws std::domain_error when the subset is not closed.
HomologyDims homology_dims(const MDifferential& d, const std::vector<std::size_t>& subset);

std::vector<std::size_t> prefix_positions(std::size_t len);

// Homology of the quotient of the prefix of length m by the prefix of
// length n (0 ≤ n ≤ m ≤ N): the induced complex on the window (n, m].
HomologyDims relative_dims(const MDifferential& d, std::size_t m, std::size_t n);

std::size_t total_dim(const HomologyDims& dims);

// Brute-force ∂-pairing: pairs decided by the four-corner equalities on the
// table of relative homology dimensions, essentials by the jump of the
// image filtration. Shares no code with the reduction path.
PairingReport pairing_via_oracle(const MDifferential& d);

// Boundary homologically essential elements through the filtration
// intersections I_k inside H_*(E(B)); returns positions into A.
std::vector<std::size_t> boundary_essential_via_ik(const MDifferential& d);

} // namespace oracle
} // namespace mpair

#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "mpair/transform.hpp"

namespace mpair {

// ∂-pairs of the unique elementary form; (source, target) with source after
// target in the order, plus the unpaired (homologically essential) elements.
struct PairingReport {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::vector<std::size_t> essentials;

    bool operator==(const PairingReport&) const = default;
};

struct ReductionResult {
    MDifferential output;
    BasisTransform witness;  // output = conjugate(input, witness)
};

// Barannikov normal form of the bare M-complex (B and C marks are ignored;
// the result lives on the mark-free copy of the triple). The output is the
// unique elementary differential equivalent to the input, the witness is the
// deterministic Aut_T(A) element produced by the inductive construction.
ReductionResult reduce_elementary(const MDifferential& d);

PairingReport pairing(const MDifferential& d);

// Reduce the B restriction and the A∖B quotient to elementary form at once;
// the witness is the block-diagonal lift into Aut_T(A,B).
ReductionResult block_elementary(const MDifferential& d);

enum class Role { p, q, r, x, y, z };

// The P,Q,R / X,Y,Z splitting of a block-elementary differential together
// with the two pairings read off its blocks. Positions refer to A.
struct BlockPartition {
    std::vector<std::size_t> p, q, r, x, y, z;   // ascending
    std::map<std::size_t, std::size_t> qr, yz;   // source -> target
    std::vector<Role> role;                      // per position

    bool operator==(const BlockPartition&) const = default;
};

BlockPartition partition_pqrxyz(const MDifferential& block_elem);  // throws if not block-elementary

ReductionResult reduce_quasi_elementary(const MDifferential& d);

struct BoundaryEssential {
    std::vector<std::size_t> h;                 // subset of P, ascending
    std::map<std::size_t, std::size_t> hplus;   // h -> X, degree +1

    bool operator==(const BoundaryEssential&) const = default;
};

BoundaryEssential boundary_essential(const MDifferential& d);

struct InvariantSignature {
    BlockPartition blocks;
    std::vector<std::size_t> h;
    std::map<std::size_t, std::size_t> hplus;

    bool operator==(const InvariantSignature&) const = default;
};

InvariantSignature invariant_signature(const MDifferential& d);

// Reads the signature directly off an already quasi-elementary differential.
InvariantSignature signature_of_quasi(const MDifferential& dq);

bool is_elementary(const MDifferential& d);
bool is_block_elementary(const MDifferential& d);
bool is_quasi_elementary(const MDifferential& d);

} // namespace mpair

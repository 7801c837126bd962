#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "mpair/minimize.hpp"

namespace mpair {

// Direct-sum splitting along the support graph of the matrix.
struct SummandSplit {
    OrderedTriple original;
    Field field;
    std::vector<std::vector<std::size_t>> parts;  // position sets, each ascending
    std::vector<MDifferential> summands;          // induced sub-differentials
};

SummandSplit split_direct_sum(const MDifferential& d);

// Inverse of the split: places every summand back at its positions.
MDifferential reassemble(const SummandSplit& split);

enum class VertexFamily { p_single, x_single, qr_pair, yz_pair };

// The sixteen vertex types are the four families times two C-flags:
//   p_single: flag1 = p ∈ C,        flag2 = p ∈ H
//   x_single: flag1 = x ∈ C₊,       flag2 = x ∈ h₊(H)
//   qr_pair:  flag1 = q ∈ C,        flag2 = r ∈ C
//   yz_pair:  flag1 = y ∈ C₊,       flag2 = z ∈ C₊
struct GraphVertex {
    VertexFamily family;
    std::vector<std::size_t> members;  // 1 or 2 positions, ascending
    bool flag1 = false, flag2 = false;
};

struct MGraph {
    std::vector<GraphVertex> vertices;
    std::vector<std::pair<std::size_t, std::size_t>> edges;  // vertex indices, first < second
    std::vector<std::size_t> vertex_of_element;              // position -> vertex index
};

// Requires a minimal differential: every nonzero mixed cell must carry an
// allowed-condition certificate.
MGraph build_graph(const MDifferential& d_min, const InvariantSignature& sig, const CPairTable& cp);

enum class BaseKind { lr, l_i, r_b, lcr, cp, cp2 };

std::string base_kind_name(BaseKind k);

struct ComponentRecord {
    std::vector<std::size_t> elements;  // positions, ascending
    std::vector<std::size_t> vertices;  // vertex indices into the graph
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    BaseKind base = BaseKind::lr;
    std::size_t k = 0, l = 0;  // tail lengths of the L / R side
    std::string label;         // "LR(k,l)" | "L_I(k)" | "R_B(l)" | "LCR(k,l)" | "CP" | "CP2"
};

ComponentRecord orient_and_classify(const MGraph& g, const std::vector<std::size_t>& comp_vertices,
                                    const MDifferential& d_min, const InvariantSignature& sig,
                                    const CPairTable& cp);

struct CanonicalDecomposition {
    MDifferential minimal;
    BasisTransform witness;  // weak; minimal = conjugate(input, witness)
    std::vector<ComponentRecord> components;
    std::vector<std::string> labels;  // sorted multiset
};

CanonicalDecomposition canonical_form(const MDifferential& d);

// The gluing along a fresh C-pair: left contributes its minimal element a_1,
// right its maximal element x_L, and the merged order is
// x_1 ≺ … ≺ x_{L-1} ≺ a_1 ≺ x_L ≺ a_2 ≺ … with ∂(x_L) gaining a_1.
// Empty operands act as the identity. Precondition failures throw
// std::domain_error naming the failed check.
MDifferential sharp(const MDifferential& m1, const MDifferential& m2);

// Zigzag template families; canonical_form(make_l(k)) = {LR(k,0)} and
// canonical_form(make_r(l)) = {LR(0,l)}. Degree layout is documented in
// docs/formats.md. k = 0 / l = 0 give the empty pair.
MDifferential make_l(std::size_t k, Field f);
MDifferential make_r(std::size_t l, Field f);

} // namespace mpair

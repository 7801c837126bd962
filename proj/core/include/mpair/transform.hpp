#pragma once

#include <string>
#include <vector>

#include "mpair/differential.hpp"
#include "mpair/errors.hpp"

namespace mpair {

// The four automorphism-group kinds. `ordered` is Aut_T(A), `ordered_pair`
// is Aut_T(A,B), `pair` is Aut(A,B), `weak` is the group of weak
// equivalences (B preserved, both induced blocks upper-triangular, the
// boundary-row/interior-column block free).
enum class TransformKind { ordered, ordered_pair, pair, weak };

std::string kind_name(TransformKind k);
TransformKind parse_kind(const std::string& name);

// Change of basis witness; column i of G is the image of a_i.
class BasisTransform {
public:
    BasisTransform(OrderedTriple t, Matrix g, TransformKind kind);
    static BasisTransform identity(const OrderedTriple& t, Field f, TransformKind kind);

    const OrderedTriple& triple() const { return t_; }
    const Matrix& matrix() const { return g_; }
    TransformKind kind() const { return kind_; }

    // Relabel with a weaker kind (every ordered_pair element is also weak and
    // pair; every ordered element is pair-free but triangular). The caller is
    // responsible for the relabeling being a genuine inclusion.
    BasisTransform as_kind(TransformKind k) const { return BasisTransform(t_, g_, k); }

private:
    OrderedTriple t_;
    Matrix g_;
    TransformKind kind_;
};

struct TransformReport {
    std::vector<std::string> problems;
    bool ok() const { return problems.empty(); }
    std::string summary() const;
};

TransformReport validate_transform(const BasisTransform& g);

// g ∘ h (apply h first).
BasisTransform compose(const BasisTransform& g, const BasisTransform& h);

// G·D·G⁻¹ on the same triple. Throws std::domain_error for an invalid or
// mismatched transform and when the result leaves the valid domain;
// IntegrityError when an ordered_pair transform breaks it, which the theory
// rules out for library-built transforms.
MDifferential conjugate(const MDifferential& d, const BasisTransform& g);

} // namespace mpair

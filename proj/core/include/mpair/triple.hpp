#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mpair {

enum class Side { boundary, interior };

struct BasisElement {
    std::string id;
    int degree = 0;
    Side side = Side::interior;
    bool trivial = false;  // marked member of C; implies side == boundary

    bool operator==(const BasisElement&) const = default;
};

// The graded, linearly ordered basis A with marked subsets B ⊇ C. Order is
// positional (0-based); ids are opaque and carry no meaning beyond identity.
// An empty triple is allowed; it represents the zero M-pair.
class OrderedTriple {
public:
    OrderedTriple() = default;
    explicit OrderedTriple(std::vector<BasisElement> elems);  // throws on duplicate ids

    std::size_t size() const { return elems_.size(); }
    bool empty() const { return elems_.empty(); }
    const BasisElement& at(std::size_t i) const { return elems_.at(i); }
    const std::vector<BasisElement>& elements() const { return elems_; }

    bool in_b(std::size_t i) const { return elems_.at(i).side == Side::boundary; }
    bool in_c(std::size_t i) const { return elems_.at(i).trivial; }
    int degree(std::size_t i) const { return elems_.at(i).degree; }

    std::vector<std::size_t> boundary_positions() const;
    std::vector<std::size_t> interior_positions() const;
    std::vector<std::size_t> c_positions() const;

    std::optional<std::size_t> position_of(std::string_view id) const;

    // Sub-triple on a sorted position subset. C marks are kept only when
    // `keep_marks` and the mark stays structurally valid inside the subset.
    OrderedTriple sub_triple(const std::vector<std::size_t>& positions, bool keep_marks) const;

    // Same ids and degrees, every element interior, no marks.
    OrderedTriple bare() const;

    bool operator==(const OrderedTriple&) const = default;

private:
    std::vector<BasisElement> elems_;
};

// Isomorphism of graded ordered marked sets: ids are ignored, positions,
// degrees, sides and C marks must agree.
bool marked_iso(const OrderedTriple& a, const OrderedTriple& b);

struct TripleViolation {
    std::size_t position;
    std::string message;
};

// Checks the structural precondition on C marks: a marked element must be a
// boundary element, must not be last, and its successor must be interior of
// one degree higher.
std::vector<TripleViolation> triple_structure_violations(const OrderedTriple& t);

} // namespace mpair

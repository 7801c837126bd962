#pragma once

#include <string>
#include <vector>

#include "mpair/matrix.hpp"
#include "mpair/triple.hpp"

namespace mpair {

// M-pair differential. D[row, col] is the coefficient of a_row in ∂(a_col);
// columns are images, and the order-decreasing condition puts every nonzero
// entry strictly above the diagonal (row < col).
class MDifferential {
public:
    MDifferential(OrderedTriple t, Matrix d);  // shape check only; see validate()
    static MDifferential zero(OrderedTriple t, Field f);

    const OrderedTriple& triple() const { return t_; }
    const Matrix& matrix() const { return d_; }
    Field field() const { return d_.field(); }
    std::size_t size() const { return t_.size(); }

    const Coefficient& entry(std::size_t row, std::size_t col) const { return d_.at(row, col); }

private:
    OrderedTriple t_;
    Matrix d_;
};

enum class InvariantKind {
    c_structure,       // OrderedTriple precondition on C marks
    triangularity,     // entries strictly below the order
    degree_homogeneity,
    squares_to_zero,
    b_closure,
    c_triviality,
};

std::string invariant_name(InvariantKind k);

struct InvariantViolation {
    InvariantKind kind;
    std::size_t row = 0, col = 0;  // first witness cell (or position for c_structure)
    std::string message;
};

struct ValidationReport {
    std::vector<InvariantViolation> violations;
    bool ok() const { return violations.empty(); }
    std::string summary() const;
};

ValidationReport validate(const MDifferential& d);

// Throws std::domain_error when validate(d) fails; used as the entry guard of
// pipeline operations whose preconditions say "d valid".
void require_valid(const MDifferential& d, const char* op);

// Restriction to the subcomplex spanned by B. Elements keep their boundary
// side; C marks are dropped (successors change).
MDifferential restrict_to_b(const MDifferential& d);

// Quotient complex on A∖B: interior rows/columns, B components dropped.
MDifferential quotient_by_b(const MDifferential& d);

// Graded-ordered-marked isomorphism of triples plus entrywise equal matrices.
bool equal(const MDifferential& a, const MDifferential& b);

// Positions of all ∂-trivial elements (members of B whose successor is
// interior, one degree up, and is hit with a nonzero coefficient).
std::vector<std::size_t> trivial_elements(const MDifferential& d);

} // namespace mpair

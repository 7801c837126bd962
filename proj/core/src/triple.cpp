#include "mpair/triple.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace mpair {

OrderedTriple::OrderedTriple(std::vector<BasisElement> elems) : elems_(std::move(elems)) {
    std::unordered_set<std::string_view> seen;
    for (const auto& e : elems_)
        if (!seen.insert(e.id).second)
            throw std::invalid_argument("duplicate basis element id '" + e.id + "'");
}

std::vector<std::size_t> OrderedTriple::boundary_positions() const {
    std::vector<std::size_t> r;
    for (std::size_t i = 0; i < elems_.size(); ++i)
        if (in_b(i)) r.push_back(i);
    return r;
}

std::vector<std::size_t> OrderedTriple::interior_positions() const {
    std::vector<std::size_t> r;
    for (std::size_t i = 0; i < elems_.size(); ++i)
        if (!in_b(i)) r.push_back(i);
    return r;
}

std::vector<std::size_t> OrderedTriple::c_positions() const {
    std::vector<std::size_t> r;
    for (std::size_t i = 0; i < elems_.size(); ++i)
        if (in_c(i)) r.push_back(i);
    return r;
}

std::optional<std::size_t> OrderedTriple::position_of(std::string_view id) const {
    for (std::size_t i = 0; i < elems_.size(); ++i)
        if (elems_[i].id == id) return i;
    return std::nullopt;
}

OrderedTriple OrderedTriple::sub_triple(const std::vector<std::size_t>& positions, bool keep_marks) const {
    std::vector<BasisElement> sub;
    sub.reserve(positions.size());
    for (std::size_t k = 0; k < positions.size(); ++k) {
        BasisElement e = elems_.at(positions[k]);
        if (e.trivial) {
            // The mark survives only if the old successor is still the successor.
            const bool succ_kept = keep_marks && k + 1 < positions.size() &&
                                   positions[k + 1] == positions[k] + 1;
            e.trivial = succ_kept;
        }
        sub.push_back(std::move(e));
    }
    return OrderedTriple(std::move(sub));
}

OrderedTriple OrderedTriple::bare() const {
    std::vector<BasisElement> b = elems_;
    for (auto& e : b) {
        e.side = Side::interior;
        e.trivial = false;
    }
    return OrderedTriple(std::move(b));
}

bool marked_iso(const OrderedTriple& a, const OrderedTriple& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto& x = a.at(i);
        const auto& y = b.at(i);
        if (x.degree != y.degree || x.side != y.side || x.trivial != y.trivial) return false;
    }
    return true;
}

std::vector<TripleViolation> triple_structure_violations(const OrderedTriple& t) {
    std::vector<TripleViolation> v;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!t.in_c(i)) continue;
        const auto& e = t.at(i);
        if (e.side != Side::boundary) {
            v.push_back({i, "'" + e.id + "' is marked trivial but is not a boundary element"});
            continue;
        }
        if (i + 1 >= t.size()) {
            v.push_back({i, "'" + e.id + "' is marked trivial but has no successor"});
            continue;
        }
        const auto& s = t.at(i + 1);
        if (s.side != Side::interior)
            v.push_back({i, "successor of trivial '" + e.id + "' must be interior"});
        else if (s.degree != e.degree + 1)
            v.push_back({i, "successor of trivial '" + e.id + "' must have degree " +
                                std::to_string(e.degree + 1)});
    }
    return v;
}

} // namespace mpair

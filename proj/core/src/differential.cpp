#include "mpair/differential.hpp"

#include <stdexcept>

namespace mpair {

MDifferential::MDifferential(OrderedTriple t, Matrix d) : t_(std::move(t)), d_(std::move(d)) {
    if (d_.rows() != t_.size() || d_.cols() != t_.size())
        throw std::invalid_argument("differential matrix must be N x N for the triple");
}

MDifferential MDifferential::zero(OrderedTriple t, Field f) {
    const std::size_t n = t.size();
    return MDifferential(std::move(t), Matrix(f, n, n));
}

std::string invariant_name(InvariantKind k) {
    switch (k) {
        case InvariantKind::c_structure: return "C-structure";
        case InvariantKind::triangularity: return "triangularity";
        case InvariantKind::degree_homogeneity: return "degree-homogeneity";
        case InvariantKind::squares_to_zero: return "squares-to-zero";
        case InvariantKind::b_closure: return "B-closure";
        case InvariantKind::c_triviality: return "C-triviality";
    }
    return "?";
}

std::string ValidationReport::summary() const {
    if (ok()) return "ok";
    std::string s;
    for (const auto& v : violations) {
        if (!s.empty()) s += "; ";
        s += v.message;
    }
    return s;
}

ValidationReport validate(const MDifferential& d) {
    ValidationReport rep;
    const auto& t = d.triple();
    const auto& m = d.matrix();
    const std::size_t n = t.size();

    for (const auto& tv : triple_structure_violations(t)) {
        rep.violations.push_back({InvariantKind::c_structure, tv.position, tv.position, tv.message});
        break;  // first witness only
    }

    auto first = [&](InvariantKind kind, std::size_t row, std::size_t col, std::string msg) {
        for (const auto& v : rep.violations)
            if (v.kind == kind) return;
        rep.violations.push_back({kind, row, col, std::move(msg)});
    };

    for (std::size_t col = 0; col < n; ++col) {
        for (std::size_t row = 0; row < n; ++row) {
            if (m.at(row, col).is_zero()) continue;
            const std::string cell =
                " at (" + t.at(row).id + ", " + t.at(col).id + ")";
            if (row >= col)
                first(InvariantKind::triangularity, row, col,
                      "order-decreasing condition violated" + cell);
            if (t.degree(row) != t.degree(col) - 1)
                first(InvariantKind::degree_homogeneity, row, col,
                      "entry does not drop degree by one" + cell);
            if (t.in_b(col) && !t.in_b(row))
                first(InvariantKind::b_closure, row, col,
                      "image of a B element leaves the B span" + cell);
        }
    }

    // D · D = 0, checked entrywise.
    const Field f = d.field();
    for (std::size_t col = 0; col < n; ++col) {
        for (std::size_t row = 0; row < n; ++row) {
            Coefficient acc = Coefficient::zero(f);
            for (std::size_t k = 0; k < n; ++k) {
                const Coefficient& a = m.at(row, k);
                const Coefficient& b = m.at(k, col);
                if (!a.is_zero() && !b.is_zero()) acc = acc + a * b;
            }
            if (!acc.is_zero())
                first(InvariantKind::squares_to_zero, row, col,
                      "differential does not square to zero at (" + t.at(row).id + ", " +
                          t.at(col).id + ")");
        }
    }

    for (std::size_t k : t.c_positions()) {
        if (k + 1 >= n) continue;  // already a C-structure violation
        if (t.at(k + 1).side != Side::interior || t.degree(k + 1) != t.degree(k) + 1) continue;
        if (m.at(k, k + 1).is_zero())
            first(InvariantKind::c_triviality, k, k + 1,
                  "C-triviality at (" + t.at(k).id + ", " + t.at(k + 1).id + ")");
    }

    return rep;
}

void require_valid(const MDifferential& d, const char* op) {
    const auto rep = validate(d);
    if (!rep.ok())
        throw std::domain_error(std::string(op) + ": input is not a valid M-pair differential: " +
                                rep.summary());
}

namespace {

MDifferential side_part(const MDifferential& d, Side keep) {
    const auto& t = d.triple();
    std::vector<std::size_t> pos;
    for (std::size_t i = 0; i < t.size(); ++i)
        if ((t.at(i).side == Side::boundary) == (keep == Side::boundary)) pos.push_back(i);
    OrderedTriple sub = t.sub_triple(pos, /*keep_marks=*/false);
    Matrix m(d.field(), pos.size(), pos.size());
    for (std::size_t c = 0; c < pos.size(); ++c)
        for (std::size_t r = 0; r < pos.size(); ++r)
            if (!d.entry(pos[r], pos[c]).is_zero()) m.set(r, c, d.entry(pos[r], pos[c]));
    return MDifferential(std::move(sub), std::move(m));
}

} // namespace

MDifferential restrict_to_b(const MDifferential& d) { return side_part(d, Side::boundary); }

MDifferential quotient_by_b(const MDifferential& d) { return side_part(d, Side::interior); }

bool equal(const MDifferential& a, const MDifferential& b) {
    return marked_iso(a.triple(), b.triple()) && a.matrix() == b.matrix();
}

std::vector<std::size_t> trivial_elements(const MDifferential& d) {
    const auto& t = d.triple();
    std::vector<std::size_t> r;
    for (std::size_t k = 0; k + 1 < t.size(); ++k) {
        if (!t.in_b(k)) continue;
        if (t.at(k + 1).side != Side::interior) continue;
        if (t.degree(k + 1) != t.degree(k) + 1) continue;
        if (!d.entry(k, k + 1).is_zero()) r.push_back(k);
    }
    return r;
}

} // namespace mpair

#include "mpair/transform.hpp"

#include <stdexcept>

namespace mpair {

std::string kind_name(TransformKind k) {
    switch (k) {
        case TransformKind::ordered: return "ordered";
        case TransformKind::ordered_pair: return "ordered_pair";
        case TransformKind::pair: return "pair";
        case TransformKind::weak: return "weak";
    }
    return "?";
}

TransformKind parse_kind(const std::string& name) {
    if (name == "ordered") return TransformKind::ordered;
    if (name == "ordered_pair") return TransformKind::ordered_pair;
    if (name == "pair") return TransformKind::pair;
    if (name == "weak") return TransformKind::weak;
    throw std::invalid_argument("unknown transform kind '" + name + "'");
}

BasisTransform::BasisTransform(OrderedTriple t, Matrix g, TransformKind kind)
    : t_(std::move(t)), g_(std::move(g)), kind_(kind) {
    if (g_.rows() != t_.size() || g_.cols() != t_.size())
        throw std::invalid_argument("transform matrix must be N x N for the triple");
}

BasisTransform BasisTransform::identity(const OrderedTriple& t, Field f, TransformKind kind) {
    return BasisTransform(t, Matrix::identity(f, t.size()), kind);
}

std::string TransformReport::summary() const {
    if (ok()) return "ok";
    std::string s;
    for (const auto& p : problems) {
        if (!s.empty()) s += "; ";
        s += p;
    }
    return s;
}

TransformReport validate_transform(const BasisTransform& g) {
    TransformReport rep;
    const auto& t = g.triple();
    const auto& m = g.matrix();
    const std::size_t n = t.size();
    const TransformKind kind = g.kind();

    const bool want_ordered =
        kind == TransformKind::ordered || kind == TransformKind::ordered_pair;
    const bool want_b_pres = kind != TransformKind::ordered;
    const bool want_block_tri = kind == TransformKind::weak;

    auto cell = [&](std::size_t r, std::size_t c) {
        return " at (" + t.at(r).id + ", " + t.at(c).id + ")";
    };
    auto report_once = [&](bool& fresh, std::string msg) {
        if (fresh) rep.problems.push_back(std::move(msg));
        fresh = false;
    };

    bool degree = true, ordered = true, b_pres = true, b_tri = true, q_tri = true;
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t r = 0; r < n; ++r) {
            if (m.at(r, c).is_zero()) continue;
            if (t.degree(r) != t.degree(c)) report_once(degree, "not degree zero" + cell(r, c));
            if (want_ordered && r > c) report_once(ordered, "not upper-triangular" + cell(r, c));
            if (want_b_pres && t.in_b(c) && !t.in_b(r))
                report_once(b_pres, "does not preserve the B span" + cell(r, c));
            if (want_block_tri && r > c) {
                if (t.in_b(c) && t.in_b(r))
                    report_once(b_tri, "B block not upper-triangular" + cell(r, c));
                if (!t.in_b(c) && !t.in_b(r))
                    report_once(q_tri, "quotient block not upper-triangular" + cell(r, c));
            }
        }
    }

    if (rank(m) != n) rep.problems.push_back("matrix is singular");
    return rep;
}

BasisTransform compose(const BasisTransform& g, const BasisTransform& h) {
    if (!(g.triple() == h.triple()))
        throw std::invalid_argument("compose: transforms live on different triples");
    if (g.kind() != h.kind())
        throw std::invalid_argument("compose: transform kinds differ");
    return BasisTransform(g.triple(), g.matrix().mul(h.matrix()), g.kind());
}

MDifferential conjugate(const MDifferential& d, const BasisTransform& g) {
    if (!(g.triple() == d.triple()))
        throw std::domain_error("conjugate: transform triple does not match the differential");
    if (!(g.matrix().field() == d.field()))
        throw std::domain_error("conjugate: coefficient fields differ");
    const auto rep = validate_transform(g);
    if (!rep.ok())
        throw std::domain_error("conjugate: invalid " + kind_name(g.kind()) + " transform: " +
                                rep.summary());

    Matrix res = g.matrix().mul(d.matrix()).mul(g.matrix().inverse());
    MDifferential out(d.triple(), std::move(res));
    const auto v = validate(out);
    if (!v.ok()) {
        if (g.kind() == TransformKind::ordered_pair)
            throw IntegrityError("conjugation by an ordered_pair transform left D_{A,B,C}: " +
                                 v.summary());
        throw std::domain_error("conjugation left the valid domain: " + v.summary());
    }
    return out;
}

} // namespace mpair

#include "mpair/minimize.hpp"

#include <stdexcept>

#include "mpair/errors.hpp"

namespace mpair {

CPairTable CPairTable::from(const OrderedTriple& t) {
    CPairTable cp;
    for (std::size_t c : t.c_positions()) {
        cp.succ[c] = c + 1;
        cp.pred[c + 1] = c;
    }
    return cp;
}

bool CPairTable::is_c_pair(std::size_t c, std::size_t cplus) const {
    const auto it = succ.find(c);
    return it != succ.end() && it->second == cplus;
}

std::string violation_case_name(ViolationCase c) {
    switch (c) {
        case ViolationCase::n1: return "N1";
        case ViolationCase::n2: return "N2";
        case ViolationCase::n3: return "N3";
        case ViolationCase::n4: return "N4";
        case ViolationCase::n5: return "N5";
    }
    return "?";
}

namespace {

std::optional<std::size_t> map_at(const std::map<std::size_t, std::size_t>& m, std::size_t k) {
    const auto it = m.find(k);
    if (it == m.end()) return std::nullopt;
    return it->second;
}

std::optional<std::size_t> preimage(const std::map<std::size_t, std::size_t>& m, std::size_t v) {
    for (const auto& [key, val] : m)
        if (val == v) return key;
    return std::nullopt;
}

} // namespace

std::optional<int> allowed(const MDifferential&, const InvariantSignature& sig,
                           const CPairTable& cp, std::size_t a, std::size_t b) {
    if (cp.is_c_pair(b, a)) return 1;
    if (const auto hx = map_at(sig.hplus, b); hx && *hx == a) return 2;
    const Role ra = sig.blocks.role.at(a);
    const Role rb = sig.blocks.role.at(b);
    if (ra == Role::y && rb == Role::q) {
        const auto r = map_at(sig.blocks.qr, b);
        const auto z = map_at(sig.blocks.yz, a);
        if (r && z && cp.is_c_pair(*r, *z)) return 3;
    }
    if (ra == Role::z && rb == Role::r) {
        const auto q = preimage(sig.blocks.qr, b);
        const auto y = preimage(sig.blocks.yz, a);
        if (q && y && cp.is_c_pair(*q, *y)) return 4;
    }
    return std::nullopt;
}

Violation classify(const MDifferential& dq, const InvariantSignature& sig, const CPairTable& cp,
                   std::size_t a, std::size_t b) {
    if (dq.entry(b, a).is_zero())
        throw std::domain_error("classify: cell (" + dq.triple().at(b).id + ", " +
                                dq.triple().at(a).id + ") is zero");
    if (allowed(dq, sig, cp, a, b))
        throw std::domain_error("classify: cell is an allowed entry, not a violation");

    Violation v;
    v.a = a;
    v.b = b;
    const Role ra = sig.blocks.role.at(a);
    const Role rb = sig.blocks.role.at(b);

    if (ra == Role::y) {
        v.z = map_at(sig.blocks.yz, a);
        if (rb == Role::q) {
            v.kind = ViolationCase::n1;
            v.r = map_at(sig.blocks.qr, b);
        } else if (rb == Role::r) {
            v.kind = ViolationCase::n2;
            v.q = preimage(sig.blocks.qr, b);
        } else {
            v.kind = ViolationCase::n3;
        }
        return v;
    }
    if (ra == Role::z) {
        if (rb != Role::r)
            throw std::domain_error(
                "classify: a Z column contains a non-R element; input is not quasi-elementary");
        v.kind = ViolationCase::n4;
        v.q = preimage(sig.blocks.qr, b);
        v.y = preimage(sig.blocks.yz, a);
        return v;
    }
    // a ∈ X: P entries would be allowed by condition 2, Q entries are ruled
    // out by ∂² = 0, so only R remains.
    if (rb != Role::r)
        throw std::domain_error(
            "classify: an X column contains a non-R, non-H element; input is not quasi-elementary");
    v.kind = ViolationCase::n5;
    v.q = preimage(sig.blocks.qr, b);
    return v;
}

ReductionResult eliminate_step(const MDifferential& dq, const Violation& v) {
    const auto& t = dq.triple();
    const Field f = dq.field();
    const std::size_t n = t.size();
    const Coefficient mu = dq.entry(v.b, v.a);
    if (mu.is_zero()) throw std::domain_error("eliminate_step: target cell is already zero");

    Matrix s = Matrix::identity(f, n);
    std::optional<std::pair<std::size_t, std::size_t>> coupled;  // (row, col) also cleared

    switch (v.kind) {
        case ViolationCase::n1:
            // S(z) = z - mu*b; clears (b,a) and, by the ∂²=0 coupling, (r,z)
            if (!v.z || !v.r) throw std::domain_error("eliminate_step: N1 needs r and z");
            s.set(v.b, *v.z, -mu);
            coupled = {{*v.r, *v.z}};
            break;
        case ViolationCase::n3:
            // same shape as N1; ∂(b) = 0 for b ∈ P so only (b,a) changes
            if (!v.z) throw std::domain_error("eliminate_step: N3 needs z");
            s.set(v.b, *v.z, -mu);
            break;
        case ViolationCase::n4:
            if (!v.q || !v.y) throw std::domain_error("eliminate_step: N4 needs q and y");
            s.set(*v.q, v.a, mu);
            coupled = {{*v.q, *v.y}};
            break;
        case ViolationCase::n2:
        case ViolationCase::n5:
            if (!v.q) throw std::domain_error("eliminate_step: N2/N5 needs q");
            s.set(*v.q, v.a, mu);
            break;
    }

    BasisTransform witness(t, std::move(s), TransformKind::weak);
    MDifferential out = conjugate(dq, witness);

    const std::string tag = "eliminate_step " + violation_case_name(v.kind) + ": ";
    if (!out.entry(v.b, v.a).is_zero())
        throw IntegrityError(tag + "target cell survived the step");
    if (coupled && !out.entry(coupled->first, coupled->second).is_zero())
        throw IntegrityError(tag + "coupled cell survived the step");
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < n; ++r) {
            const bool mixed = !t.in_b(c) && t.in_b(r);
            if (mixed && dq.entry(r, c).is_zero() && !out.entry(r, c).is_zero())
                throw IntegrityError(tag + "new mixed support appeared");
            if (!mixed && !(dq.entry(r, c) == out.entry(r, c)))
                throw IntegrityError(tag + "a diagonal block changed");
        }
    if (!is_quasi_elementary(out))
        throw IntegrityError(tag + "output is not quasi-elementary");

    return {std::move(out), std::move(witness)};
}

MinimizeResult minimize(const MDifferential& input) {
    auto qe = reduce_quasi_elementary(input);
    const auto& t = input.triple();
    const auto sig = signature_of_quasi(qe.output);
    const auto cp = CPairTable::from(t);

    auto mixed_support = [&](const MDifferential& d) {
        std::size_t count = 0;
        for (std::size_t c = 0; c < d.size(); ++c)
            for (std::size_t r = 0; r < d.size(); ++r)
                if (!t.in_b(c) && t.in_b(r) && !d.entry(r, c).is_zero()) ++count;
        return count;
    };

    MDifferential cur = qe.output;
    Matrix w = qe.witness.matrix();
    std::size_t steps = 0;
    std::size_t support = mixed_support(cur);
    const std::size_t initial_support = support;

    for (;;) {
        std::optional<Violation> next;
        for (std::size_t a = 0; a < t.size() && !next; ++a) {
            if (t.in_b(a)) continue;
            for (std::size_t b = 0; b < a && !next; ++b) {
                if (!t.in_b(b) || cur.entry(b, a).is_zero()) continue;
                if (!allowed(cur, sig, cp, a, b)) next = classify(cur, sig, cp, a, b);
            }
        }
        if (!next) break;

        auto step = eliminate_step(cur, *next);
        cur = std::move(step.output);
        w = step.witness.matrix().mul(w);
        ++steps;

        const std::size_t now = mixed_support(cur);
        if (now >= support) throw IntegrityError("minimize: mixed support did not shrink");
        support = now;
        if (steps > initial_support) throw IntegrityError("minimize: step budget exceeded");
    }

    MinimizeResult res{std::move(cur), BasisTransform(t, std::move(w), TransformKind::weak), {}, steps};
    for (std::size_t a = 0; a < t.size(); ++a) {
        if (t.in_b(a)) continue;
        for (std::size_t b = 0; b < a; ++b) {
            if (!t.in_b(b) || res.output.entry(b, a).is_zero()) continue;
            const auto cond = allowed(res.output, sig, cp, a, b);
            if (!cond) throw IntegrityError("minimize: uncertified mixed entry survived");
            res.certificate[{b, a}] = *cond;
        }
    }
    const auto wrep = validate_transform(res.witness);
    if (!wrep.ok()) throw IntegrityError("minimize: accumulated witness is not weak: " + wrep.summary());
    return res;
}

bool similar(const MDifferential& a, const MDifferential& b) {
    if (!marked_iso(a.triple(), b.triple()))
        throw std::domain_error("similar: differentials live on different triples");
    for (std::size_t c = 0; c < a.size(); ++c)
        for (std::size_t r = 0; r < a.size(); ++r)
            if (a.entry(r, c).is_zero() != b.entry(r, c).is_zero()) return false;
    return true;
}

} // namespace mpair

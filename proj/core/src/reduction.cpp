#include "mpair/reduction.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

#include "mpair/errors.hpp"

namespace mpair {

namespace {

// True when every column has at most one nonzero entry, the entry is 1, and
// no two columns share a target.
bool matrix_elementary(const Matrix& m) {
    std::vector<bool> used(m.rows(), false);
    for (std::size_t c = 0; c < m.cols(); ++c) {
        std::optional<std::size_t> target;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (m.at(r, c).is_zero()) continue;
            if (target || !m.at(r, c).is_one()) return false;
            target = r;
        }
        if (target) {
            if (used[*target]) return false;
            used[*target] = true;
        }
    }
    return true;
}

void step_conjugate(Matrix& d, Matrix& w, const Matrix& t) {
    const Matrix tinv = t.inverse();
    d = tinv.mul(d).mul(t);
    w = tinv.mul(w);
}

} // namespace

bool is_elementary(const MDifferential& d) { return matrix_elementary(d.matrix()); }

bool is_block_elementary(const MDifferential& d) {
    return matrix_elementary(restrict_to_b(d).matrix()) &&
           matrix_elementary(quotient_by_b(d).matrix());
}

ReductionResult reduce_elementary(const MDifferential& input) {
    require_valid(input, "reduce_elementary");
    const OrderedTriple bare = input.triple().bare();
    const Field f = input.field();
    const std::size_t n = bare.size();

    Matrix d = input.matrix();
    Matrix w = Matrix::identity(f, n);
    // inv[j] = i when the already-elementary prefix has ∂(a_i) = a_j
    std::vector<std::optional<std::size_t>> inv(n);

    for (std::size_t col = 0; col < n; ++col) {
        std::vector<std::size_t> i1, i2;
        for (std::size_t r = 0; r < col; ++r) {
            if (d.at(r, col).is_zero()) continue;
            (inv[r] ? i1 : i2).push_back(r);
        }
        if (i1.empty() && i2.empty()) continue;

        Matrix t = Matrix::identity(f, n);
        for (std::size_t r : i1) t.set(*inv[r], col, -d.at(r, col));
        if (!i2.empty()) {
            const std::size_t l = *std::max_element(i2.begin(), i2.end());
            t.set(l, l, d.at(l, col));
            for (std::size_t r : i2)
                if (r != l) t.set(r, l, d.at(r, col));
            step_conjugate(d, w, t);
            inv[l] = col;
        } else {
            step_conjugate(d, w, t);
        }
    }

    if (!matrix_elementary(d))
        throw IntegrityError("reduce_elementary did not reach an elementary form");

    return {MDifferential(bare, std::move(d)),
            BasisTransform(bare, std::move(w), TransformKind::ordered)};
}

PairingReport pairing(const MDifferential& d) {
    const auto elem = reduce_elementary(d).output;
    const std::size_t n = elem.size();
    PairingReport rep;
    std::vector<bool> in_pair(n, false);
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < c; ++r)
            if (!elem.entry(r, c).is_zero()) {
                rep.pairs.emplace_back(c, r);
                in_pair[c] = in_pair[r] = true;
            }
    for (std::size_t i = 0; i < n; ++i)
        if (!in_pair[i]) rep.essentials.push_back(i);
    std::sort(rep.pairs.begin(), rep.pairs.end());
    return rep;
}

ReductionResult block_elementary(const MDifferential& input) {
    require_valid(input, "block_elementary");
    const auto& t = input.triple();
    const Field f = input.field();
    const auto bpos = t.boundary_positions();
    const auto ipos = t.interior_positions();

    const auto rb = reduce_elementary(restrict_to_b(input));
    const auto rq = reduce_elementary(quotient_by_b(input));

    Matrix g(f, t.size(), t.size());
    for (std::size_t c = 0; c < bpos.size(); ++c)
        for (std::size_t r = 0; r < bpos.size(); ++r)
            if (!rb.witness.matrix().at(r, c).is_zero())
                g.set(bpos[r], bpos[c], rb.witness.matrix().at(r, c));
    for (std::size_t c = 0; c < ipos.size(); ++c)
        for (std::size_t r = 0; r < ipos.size(); ++r)
            if (!rq.witness.matrix().at(r, c).is_zero())
                g.set(ipos[r], ipos[c], rq.witness.matrix().at(r, c));

    BasisTransform witness(t, std::move(g), TransformKind::ordered_pair);
    MDifferential out = conjugate(input, witness);
    if (!is_block_elementary(out))
        throw IntegrityError("block_elementary: lifted witness failed to reduce both blocks");
    return {std::move(out), std::move(witness)};
}

BlockPartition partition_pqrxyz(const MDifferential& d) {
    if (!is_block_elementary(d))
        throw std::domain_error("partition_pqrxyz: input is not block-elementary");
    const auto& t = d.triple();
    BlockPartition part;
    part.role.assign(t.size(), Role::p);

    auto classify_side = [&](const std::vector<std::size_t>& pos, Role src, Role tgt, Role rest,
                             std::vector<std::size_t>& srcs, std::vector<std::size_t>& tgts,
                             std::vector<std::size_t>& others,
                             std::map<std::size_t, std::size_t>& pairs) {
        std::vector<bool> taken(t.size(), false);
        for (std::size_t ci = 0; ci < pos.size(); ++ci)
            for (std::size_t ri = 0; ri < pos.size(); ++ri)
                if (!d.entry(pos[ri], pos[ci]).is_zero()) {
                    pairs[pos[ci]] = pos[ri];
                    part.role[pos[ci]] = src;
                    part.role[pos[ri]] = tgt;
                    srcs.push_back(pos[ci]);
                    tgts.push_back(pos[ri]);
                    taken[pos[ci]] = taken[pos[ri]] = true;
                }
        for (std::size_t i : pos)
            if (!taken[i]) {
                part.role[i] = rest;
                others.push_back(i);
            }
        std::sort(srcs.begin(), srcs.end());
        std::sort(tgts.begin(), tgts.end());
    };

    classify_side(t.boundary_positions(), Role::q, Role::r, Role::p, part.q, part.r, part.p, part.qr);
    classify_side(t.interior_positions(), Role::y, Role::z, Role::x, part.y, part.z, part.x, part.yz);
    return part;
}

ReductionResult reduce_quasi_elementary(const MDifferential& input) {
    auto be = block_elementary(input);
    const auto& t = input.triple();
    const Field f = input.field();
    const std::size_t n = t.size();
    const auto part = partition_pqrxyz(be.output);

    const Matrix b_block_before = restrict_to_b(be.output).matrix();
    const Matrix q_block_before = quotient_by_b(be.output).matrix();

    Matrix d = be.output.matrix();
    Matrix w = be.witness.matrix();

    std::vector<bool> in_p(n, false);
    for (std::size_t p : part.p) in_p[p] = true;

    // px[k] = the single P element of ∂(x_k) after step k, if any
    std::vector<std::optional<std::size_t>> px(part.x.size());

    for (std::size_t k = 0; k < part.x.size(); ++k) {
        const std::size_t xcol = part.x[k];

        for (std::size_t r = 0; r < n; ++r)
            if (!d.at(r, xcol).is_zero() && part.role[r] != Role::p && part.role[r] != Role::r)
                throw IntegrityError("quasi-elementary reduction: X column leaves the P+R span");

        // drop the P elements already used by earlier X columns
        for (std::size_t kk = 0; kk < k; ++kk) {
            if (!px[kk]) continue;
            const Coefficient mu = d.at(*px[kk], xcol);
            if (mu.is_zero()) continue;
            Matrix t_x = Matrix::identity(f, n);
            t_x.set(part.x[kk], xcol, -mu);
            step_conjugate(d, w, t_x);
        }

        // consolidate the remaining P part onto its maximal element
        std::vector<std::size_t> supp;
        for (std::size_t r = 0; r < n; ++r)
            if (in_p[r] && !d.at(r, xcol).is_zero()) supp.push_back(r);
        if (!supp.empty()) {
            const std::size_t pmax = supp.back();
            if (supp.size() > 1 || !d.at(pmax, xcol).is_one()) {
                Matrix t_p = Matrix::identity(f, n);
                t_p.set(pmax, pmax, d.at(pmax, xcol));
                for (std::size_t r : supp)
                    if (r != pmax) t_p.set(r, pmax, d.at(r, xcol));
                step_conjugate(d, w, t_p);
            }
            px[k] = pmax;
        }

        // quasi-elementary conditions on the processed prefix, plus block stability
        for (std::size_t kk = 0; kk <= k; ++kk) {
            std::size_t count = 0;
            for (std::size_t r : part.p)
                if (!d.at(r, part.x[kk]).is_zero()) {
                    ++count;
                    if (!d.at(r, part.x[kk]).is_one())
                        throw IntegrityError("quasi-elementary prefix: non-unit P coefficient");
                }
            if (count > 1) throw IntegrityError("quasi-elementary prefix: several P elements in one X column");
        }
        std::vector<bool> seen(n, false);
        for (std::size_t kk = 0; kk <= k; ++kk)
            if (px[kk]) {
                if (seen[*px[kk]]) throw IntegrityError("quasi-elementary prefix: P element reused");
                seen[*px[kk]] = true;
            }
    }

    MDifferential out(t, std::move(d));
    if (restrict_to_b(out).matrix() != b_block_before || quotient_by_b(out).matrix() != q_block_before)
        throw IntegrityError("quasi-elementary reduction changed a diagonal block");
    if (!is_quasi_elementary(out))
        throw IntegrityError("quasi-elementary reduction did not reach a quasi-elementary form");
    const auto rep = validate(out);
    if (!rep.ok()) throw IntegrityError("quasi-elementary output left D_{A,B,C}: " + rep.summary());

    return {std::move(out), BasisTransform(t, std::move(w), TransformKind::ordered_pair)};
}

bool is_quasi_elementary(const MDifferential& d) {
    if (!is_block_elementary(d)) return false;
    const auto part = partition_pqrxyz(d);
    std::vector<bool> p_used(d.size(), false);
    for (std::size_t x : part.x) {
        std::size_t count = 0;
        for (std::size_t p : part.p) {
            if (d.entry(p, x).is_zero()) continue;
            if (!d.entry(p, x).is_one()) return false;
            if (p_used[p]) return false;
            p_used[p] = true;
            ++count;
        }
        if (count > 1) return false;
    }
    return true;
}

BoundaryEssential boundary_essential(const MDifferential& d) {
    const auto qe = reduce_quasi_elementary(d);
    const auto sig = signature_of_quasi(qe.output);
    return {sig.h, sig.hplus};
}

InvariantSignature signature_of_quasi(const MDifferential& dq) {
    if (!is_quasi_elementary(dq))
        throw std::domain_error("signature_of_quasi: input is not quasi-elementary");
    InvariantSignature sig;
    sig.blocks = partition_pqrxyz(dq);
    for (std::size_t x : sig.blocks.x)
        for (std::size_t p : sig.blocks.p)
            if (!dq.entry(p, x).is_zero()) {
                sig.h.push_back(p);
                sig.hplus[p] = x;
            }
    std::sort(sig.h.begin(), sig.h.end());
    return sig;
}

InvariantSignature invariant_signature(const MDifferential& d) {
    return signature_of_quasi(reduce_quasi_elementary(d).output);
}

} // namespace mpair

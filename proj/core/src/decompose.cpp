#include "mpair/decompose.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "mpair/errors.hpp"

namespace mpair {

namespace {

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

std::vector<std::vector<std::size_t>> grouped(UnionFind& uf, std::size_t n) {
    std::map<std::size_t, std::vector<std::size_t>> by_root;
    for (std::size_t i = 0; i < n; ++i) by_root[uf.find(i)].push_back(i);
    std::vector<std::vector<std::size_t>> parts;
    for (auto& [root, members] : by_root) parts.push_back(std::move(members));
    std::sort(parts.begin(), parts.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return parts;
}

} // namespace

SummandSplit split_direct_sum(const MDifferential& d) {
    require_valid(d, "split_direct_sum");
    const std::size_t n = d.size();
    UnionFind uf(n);
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < c; ++r)
            if (!d.entry(r, c).is_zero()) uf.unite(r, c);

    SummandSplit split{d.triple(), d.field(), grouped(uf, n), {}};
    for (const auto& part : split.parts) {
        OrderedTriple sub = d.triple().sub_triple(part, /*keep_marks=*/true);
        Matrix m(d.field(), part.size(), part.size());
        for (std::size_t c = 0; c < part.size(); ++c)
            for (std::size_t r = 0; r < part.size(); ++r)
                if (!d.entry(part[r], part[c]).is_zero()) m.set(r, c, d.entry(part[r], part[c]));
        MDifferential s(std::move(sub), std::move(m));
        const auto rep = validate(s);
        if (!rep.ok()) throw IntegrityError("split_direct_sum: invalid summand: " + rep.summary());
        split.summands.push_back(std::move(s));
    }
    return split;
}

MDifferential reassemble(const SummandSplit& split) {
    Matrix m(split.field, split.original.size(), split.original.size());
    for (std::size_t s = 0; s < split.parts.size(); ++s) {
        const auto& part = split.parts[s];
        const auto& sm = split.summands[s].matrix();
        for (std::size_t c = 0; c < part.size(); ++c)
            for (std::size_t r = 0; r < part.size(); ++r)
                if (!sm.at(r, c).is_zero()) m.set(part[r], part[c], sm.at(r, c));
    }
    return MDifferential(split.original, std::move(m));
}

std::string base_kind_name(BaseKind k) {
    switch (k) {
        case BaseKind::lr: return "LR";
        case BaseKind::l_i: return "L_I";
        case BaseKind::r_b: return "R_B";
        case BaseKind::lcr: return "LCR";
        case BaseKind::cp: return "CP";
        case BaseKind::cp2: return "CP2";
    }
    return "?";
}

MGraph build_graph(const MDifferential& d, const InvariantSignature& sig, const CPairTable& cp) {
    const auto& t = d.triple();
    for (std::size_t c = 0; c < d.size(); ++c)
        for (std::size_t r = 0; r < c; ++r)
            if (t.in_b(r) && !t.in_b(c) && !d.entry(r, c).is_zero() && !allowed(d, sig, cp, c, r))
                throw std::domain_error("build_graph: input is not minimal (uncertified entry at (" +
                                        t.at(r).id + ", " + t.at(c).id + "))");

    MGraph g;
    g.vertex_of_element.assign(d.size(), 0);
    auto in_hplus_image = [&](std::size_t x) {
        for (const auto& [p, hx] : sig.hplus)
            if (hx == x) return true;
        return false;
    };

    for (std::size_t p : sig.blocks.p)
        g.vertices.push_back({VertexFamily::p_single, {p}, cp.succ.count(p) > 0, sig.hplus.count(p) > 0});
    for (std::size_t x : sig.blocks.x)
        g.vertices.push_back({VertexFamily::x_single, {x}, cp.pred.count(x) > 0, in_hplus_image(x)});
    for (const auto& [q, r] : sig.blocks.qr)
        g.vertices.push_back({VertexFamily::qr_pair, {std::min(q, r), std::max(q, r)},
                              cp.succ.count(q) > 0, cp.succ.count(r) > 0});
    for (const auto& [y, z] : sig.blocks.yz)
        g.vertices.push_back({VertexFamily::yz_pair, {std::min(y, z), std::max(y, z)},
                              cp.pred.count(y) > 0, cp.pred.count(z) > 0});

    std::sort(g.vertices.begin(), g.vertices.end(),
              [](const GraphVertex& a, const GraphVertex& b) { return a.members < b.members; });
    for (std::size_t v = 0; v < g.vertices.size(); ++v)
        for (std::size_t e : g.vertices[v].members) g.vertex_of_element[e] = v;

    std::set<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t c = 0; c < d.size(); ++c)
        for (std::size_t r = 0; r < c; ++r) {
            if (d.entry(r, c).is_zero()) continue;
            const std::size_t u = g.vertex_of_element[r];
            const std::size_t v = g.vertex_of_element[c];
            if (u != v) edges.insert({std::min(u, v), std::max(u, v)});
        }
    g.edges.assign(edges.begin(), edges.end());
    return g;
}

namespace {

// Ranks for the auxiliary order ≺_C: the plain order with every C-pair
// transposed.
std::vector<std::size_t> c_order_ranks(const OrderedTriple& t) {
    std::vector<std::size_t> rank(t.size());
    std::iota(rank.begin(), rank.end(), 0);
    for (std::size_t c : t.c_positions()) std::swap(rank[c], rank[c + 1]);
    return rank;
}

std::pair<std::size_t, std::size_t> span_of(const GraphVertex& v,
                                            const std::vector<std::size_t>& rank) {
    std::size_t lo = rank[v.members.front()], hi = lo;
    for (std::size_t m : v.members) {
        lo = std::min(lo, rank[m]);
        hi = std::max(hi, rank[m]);
    }
    return {lo, hi};
}

bool nested_in(const GraphVertex& inner, const GraphVertex& outer,
               const std::vector<std::size_t>& rank) {
    const auto [il, ih] = span_of(inner, rank);
    const auto [ol, oh] = span_of(outer, rank);
    return ol < il && ih < oh;
}

bool is_pair_vertex(const GraphVertex& v) {
    return v.family == VertexFamily::qr_pair || v.family == VertexFamily::yz_pair;
}

bool boundary_family(const GraphVertex& v) {
    return v.family == VertexFamily::p_single || v.family == VertexFamily::qr_pair;
}

} // namespace

ComponentRecord orient_and_classify(const MGraph& g, const std::vector<std::size_t>& comp,
                                    const MDifferential& d, const InvariantSignature& sig,
                                    const CPairTable& cp) {
    ComponentRecord rec;
    rec.vertices = comp;
    std::sort(rec.vertices.begin(), rec.vertices.end());
    std::set<std::size_t> in_comp(rec.vertices.begin(), rec.vertices.end());
    for (const auto& e : g.edges)
        if (in_comp.count(e.first) && in_comp.count(e.second)) rec.edges.push_back(e);
    for (std::size_t v : rec.vertices)
        for (std::size_t m : g.vertices[v].members) rec.elements.push_back(m);
    std::sort(rec.elements.begin(), rec.elements.end());

    std::map<std::size_t, std::vector<std::size_t>> adj;
    for (std::size_t v : rec.vertices) adj[v];
    for (const auto& e : rec.edges) {
        adj[e.first].push_back(e.second);
        adj[e.second].push_back(e.first);
    }
    for (const auto& [v, nb] : adj)
        if (nb.size() > 2)
            throw IntegrityError("graph vertex has valency " + std::to_string(nb.size()));
    if (rec.edges.size() + 1 != rec.vertices.size())
        throw IntegrityError("graph component is a cycle");

    auto finish = [&](BaseKind base, std::size_t k, std::size_t l) {
        rec.base = base;
        rec.k = k;
        rec.l = l;
        switch (base) {
            case BaseKind::lr:
                rec.label = "LR(" + std::to_string(k) + "," + std::to_string(l) + ")";
                break;
            case BaseKind::l_i: rec.label = "L_I(" + std::to_string(k) + ")"; break;
            case BaseKind::r_b: rec.label = "R_B(" + std::to_string(l) + ")"; break;
            case BaseKind::lcr:
                rec.label = "LCR(" + std::to_string(k) + "," + std::to_string(l) + ")";
                break;
            case BaseKind::cp: rec.label = "CP"; break;
            case BaseKind::cp2: rec.label = "CP2"; break;
        }
        return rec;
    };

    // Single vertices.
    if (rec.vertices.size() == 1) {
        const auto& v = g.vertices[rec.vertices.front()];
        switch (v.family) {
            case VertexFamily::qr_pair: return finish(BaseKind::lr, 1, 0);
            case VertexFamily::yz_pair: return finish(BaseKind::lr, 0, 1);
            case VertexFamily::p_single: return finish(BaseKind::r_b, 0, 0);
            case VertexFamily::x_single: return finish(BaseKind::l_i, 0, 0);
        }
    }

    // Closed forms: the single and the double vertical C-pair.
    if (rec.vertices.size() == 2) {
        const auto& v0 = g.vertices[rec.vertices[0]];
        const auto& v1 = g.vertices[rec.vertices[1]];
        if (v0.family == VertexFamily::p_single && v1.family == VertexFamily::x_single) {
            const std::size_t p = v0.members.front(), x = v1.members.front();
            if (cp.is_c_pair(p, x)) {
                const auto hx = sig.hplus.find(p);
                if (hx == sig.hplus.end() || hx->second != x)
                    throw IntegrityError("closed vertex couple without the h+ pairing");
                return finish(BaseKind::cp, 0, 0);
            }
        }
        if (v0.family == VertexFamily::qr_pair && v1.family == VertexFamily::yz_pair &&
            v0.flag1 && v0.flag2) {
            std::size_t q = 0, r = 0;
            for (const auto& [qq, rr] : sig.blocks.qr)
                if (qq == v0.members[0] || qq == v0.members[1]) q = qq, r = rr;
            std::size_t y = 0, z = 0;
            for (const auto& [yy, zz] : sig.blocks.yz)
                if (yy == v1.members[0] || yy == v1.members[1]) y = yy, z = zz;
            if (cp.is_c_pair(q, y) && cp.is_c_pair(r, z)) return finish(BaseKind::cp2, 0, 0);
            throw IntegrityError("doubly C-marked QR vertex is not closed");
        }
    }

    // Linearize the path; the endpoint with the smallest member comes first.
    std::vector<std::size_t> ends;
    for (const auto& [v, nb] : adj)
        if (nb.size() == 1) ends.push_back(v);
    if (ends.size() != 2) throw IntegrityError("path component without two endpoints");
    std::sort(ends.begin(), ends.end(), [&](std::size_t a, std::size_t b) {
        return g.vertices[a].members.front() < g.vertices[b].members.front();
    });
    std::vector<std::size_t> path{ends.front()};
    std::set<std::size_t> seen{ends.front()};
    while (path.size() < rec.vertices.size()) {
        bool advanced = false;
        for (std::size_t nb : adj[path.back()])
            if (!seen.count(nb)) {
                path.push_back(nb);
                seen.insert(nb);
                advanced = true;
                break;
            }
        if (!advanced) throw IntegrityError("disconnected component passed as a path");
    }

    for (std::size_t i = 0; i + 1 < path.size(); ++i)
        if (boundary_family(g.vertices[path[i]]) == boundary_family(g.vertices[path[i + 1]]))
            throw IntegrityError("graph edge joins two same-side vertices");

    const auto rank = c_order_ranks(d.triple());
    // dir[i] for edge (path[i], path[i+1]): +1 forward, -1 backward, 0 none.
    std::vector<int> dir(path.size() - 1, 0);
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        const auto& a = g.vertices[path[i]];
        const auto& b = g.vertices[path[i + 1]];
        if (!is_pair_vertex(a) || !is_pair_vertex(b)) continue;
        const bool fwd = nested_in(b, a, rank);
        const bool bwd = nested_in(a, b, rank);
        if (fwd && bwd) throw IntegrityError("mutually nested vertices");
        dir[i] = fwd ? 1 : bwd ? -1 : 0;
    }

    std::vector<std::size_t> singles;
    for (std::size_t i = 0; i < path.size(); ++i)
        if (!is_pair_vertex(g.vertices[path[i]])) singles.push_back(i);

    auto check_flow = [&](std::size_t from, std::size_t to, int want) {
        for (std::size_t i = from; i < to; ++i)
            if (dir[i] != want)
                throw IntegrityError("tail orientation does not flow away from its head");
    };

    const std::size_t m = path.size() - 1;

    if (singles.size() == 2) {
        // The h+ bridge in the middle: ... QR, X, P, YZ ... or its mirror.
        if (singles[1] != singles[0] + 1)
            throw IntegrityError("two singleton vertices that are not a bridge");
        std::size_t xi = singles[0], pi = singles[1];
        if (g.vertices[path[xi]].family == VertexFamily::p_single) std::swap(xi, pi);
        if (g.vertices[path[xi]].family != VertexFamily::x_single ||
            g.vertices[path[pi]].family != VertexFamily::p_single)
            throw IntegrityError("bridge is not a P/X singleton couple");
        const std::size_t p = g.vertices[path[pi]].members.front();
        const std::size_t x = g.vertices[path[xi]].members.front();
        const auto hx = sig.hplus.find(p);
        if (hx == sig.hplus.end() || hx->second != x)
            throw IntegrityError("singleton bridge without the h+ pairing");
        // pair vertices on the X flank form the L side
        std::size_t k = 0, l = 0;
        if (xi < pi) {
            k = xi;
            l = m - pi;
            if (k) {
                if (g.vertices[path[xi - 1]].family != VertexFamily::qr_pair)
                    throw IntegrityError("L chain does not meet the bridge at a QR vertex");
                check_flow(0, xi - 1, -1);
            }
            if (l) {
                if (g.vertices[path[pi + 1]].family != VertexFamily::yz_pair)
                    throw IntegrityError("R chain does not meet the bridge at a YZ vertex");
                check_flow(pi + 1, m, +1);
            }
        } else {
            k = m - xi;
            l = pi;
            if (k) {
                if (g.vertices[path[xi + 1]].family != VertexFamily::qr_pair)
                    throw IntegrityError("L chain does not meet the bridge at a QR vertex");
                check_flow(xi + 1, m, +1);
            }
            if (l) {
                if (g.vertices[path[pi - 1]].family != VertexFamily::yz_pair)
                    throw IntegrityError("R chain does not meet the bridge at a YZ vertex");
                check_flow(0, pi - 1, -1);
            }
        }
        return finish(BaseKind::lcr, k, l);
    }

    if (singles.size() == 1) {
        // An interior- or boundary-circle terminal glued to one chain.
        std::size_t si = singles[0];
        if (si != 0 && si != m) throw IntegrityError("interior singleton without a bridge partner");
        const bool at_front = si == 0;
        const std::size_t flank = at_front ? 1 : m - 1;
        const std::size_t pairs = path.size() - 1;
        const auto family = g.vertices[path[si]].family;
        if (family == VertexFamily::x_single) {
            if (g.vertices[path[flank]].family != VertexFamily::qr_pair)
                throw IntegrityError("interior circle does not attach to a QR vertex");
            if (at_front) check_flow(1, m, +1);
            else check_flow(0, m - 1, -1);
            return finish(BaseKind::l_i, pairs, 0);
        }
        if (g.vertices[path[flank]].family != VertexFamily::yz_pair)
            throw IntegrityError("boundary circle does not attach to a YZ vertex");
        if (at_front) check_flow(1, m, +1);
        else check_flow(0, m - 1, -1);
        return finish(BaseKind::r_b, 0, pairs);
    }

    // Pure pair-vertex chain.
    std::vector<std::size_t> unoriented;
    for (std::size_t i = 0; i < dir.size(); ++i)
        if (dir[i] == 0) unoriented.push_back(i);

    if (unoriented.empty()) {
        // one oriented chain; the head is the endpoint every edge points away from
        if (std::all_of(dir.begin(), dir.end(), [](int v) { return v == 1; })) {
            return g.vertices[path.front()].family == VertexFamily::qr_pair
                       ? finish(BaseKind::lr, path.size(), 0)
                       : finish(BaseKind::lr, 0, path.size());
        }
        if (std::all_of(dir.begin(), dir.end(), [](int v) { return v == -1; })) {
            return g.vertices[path.back()].family == VertexFamily::qr_pair
                       ? finish(BaseKind::lr, path.size(), 0)
                       : finish(BaseKind::lr, 0, path.size());
        }
        throw IntegrityError("oriented chain with an interior head");
    }
    if (unoriented.size() == 1) {
        const std::size_t a = unoriented[0];  // edge between path[a], path[a+1]
        check_flow(0, a, -1);
        check_flow(a + 1, m, +1);
        const bool left_is_qr = g.vertices[path[a]].family == VertexFamily::qr_pair;
        if (left_is_qr == (g.vertices[path[a + 1]].family == VertexFamily::qr_pair))
            throw IntegrityError("meeting edge joins two same-family vertices");
        const std::size_t left = a + 1, right = path.size() - left;
        return left_is_qr ? finish(BaseKind::lr, left, right) : finish(BaseKind::lr, right, left);
    }
    throw IntegrityError("pair chain with several unoriented edges");
}

CanonicalDecomposition canonical_form(const MDifferential& input) {
    auto mr = minimize(input);
    const auto sig = signature_of_quasi(mr.output);
    const auto cp = CPairTable::from(input.triple());
    const auto graph = build_graph(mr.output, sig, cp);

    UnionFind uf(graph.vertices.size());
    for (const auto& e : graph.edges) uf.unite(e.first, e.second);
    const auto comps = grouped(uf, graph.vertices.size());

    CanonicalDecomposition out{std::move(mr.output), std::move(mr.witness), {}, {}};
    for (const auto& comp : comps)
        out.components.push_back(orient_and_classify(graph, comp, out.minimal, sig, cp));

    // The graph components must reproduce the element-level split.
    const auto split = split_direct_sum(out.minimal);
    std::vector<std::vector<std::size_t>> from_graph;
    for (const auto& rec : out.components) from_graph.push_back(rec.elements);
    std::sort(from_graph.begin(), from_graph.end());
    auto parts = split.parts;
    std::sort(parts.begin(), parts.end());
    if (parts != from_graph)
        throw IntegrityError("graph components disagree with the direct-sum split");

    for (const auto& rec : out.components) out.labels.push_back(rec.label);
    std::sort(out.labels.begin(), out.labels.end());
    return out;
}

MDifferential sharp(const MDifferential& m1, const MDifferential& m2) {
    if (m1.size() == 0) return m2;
    if (m2.size() == 0) return m1;
    if (!(m1.field() == m2.field())) throw std::domain_error("sharp: coefficient fields differ");
    require_valid(m1, "sharp");
    require_valid(m2, "sharp");

    const auto& ta = m1.triple();
    const auto& tx = m2.triple();
    for (const auto& e : tx.elements())
        if (ta.position_of(e.id)) throw std::domain_error("sharp: operand id sets are not disjoint");

    const std::size_t last = tx.size() - 1;
    if (tx.at(last).side != Side::interior)
        throw std::domain_error("sharp: the top element of the right operand must be interior");
    if (ta.at(0).side != Side::boundary || ta.at(0).trivial)
        throw std::domain_error("sharp: the bottom element of the left operand must be in B minus C");
    if (tx.degree(last) != ta.degree(0) + 1)
        throw std::domain_error("sharp: degree of the top right element must exceed the bottom left by one");
    if (last >= 1 && tx.at(last - 1).trivial)
        throw std::domain_error("sharp: the next-to-top element of the right operand lies in its C set");

    // x_1 ... x_{L-1}, a_1, x_L, a_2 ...
    std::vector<BasisElement> elems;
    for (std::size_t i = 0; i < last; ++i) elems.push_back(tx.at(i));
    BasisElement a1 = ta.at(0);
    a1.trivial = true;
    elems.push_back(a1);
    elems.push_back(tx.at(last));
    for (std::size_t i = 1; i < ta.size(); ++i) elems.push_back(ta.at(i));
    OrderedTriple merged(std::move(elems));

    const std::size_t n = merged.size();
    auto xpos = [&](std::size_t i) { return i < last ? i : last + 1; };
    auto apos = [&](std::size_t i) { return i == 0 ? last : last + 1 + i; };

    Matrix m(m1.field(), n, n);
    for (std::size_t c = 0; c < ta.size(); ++c)
        for (std::size_t r = 0; r < ta.size(); ++r)
            if (!m1.entry(r, c).is_zero()) m.set(apos(r), apos(c), m1.entry(r, c));
    for (std::size_t c = 0; c < tx.size(); ++c)
        for (std::size_t r = 0; r < tx.size(); ++r)
            if (!m2.entry(r, c).is_zero()) m.set(xpos(r), xpos(c), m2.entry(r, c));
    m.set(apos(0), xpos(last), Coefficient::one(m1.field()));

    MDifferential out(std::move(merged), std::move(m));
    const auto rep = validate(out);
    if (!rep.ok()) throw IntegrityError("sharp produced an invalid M-pair: " + rep.summary());
    return out;
}

namespace {

struct TemplateBuilder {
    std::vector<BasisElement> seq;
    std::vector<std::string> trivial_ids;

    std::size_t pos(const std::string& id) const {
        for (std::size_t i = 0; i < seq.size(); ++i)
            if (seq[i].id == id) return i;
        throw std::logic_error("template element '" + id + "' missing");
    }
    void insert_before(const std::string& anchor, BasisElement e) {
        seq.insert(seq.begin() + static_cast<std::ptrdiff_t>(pos(anchor)), std::move(e));
    }
    void insert_after(const std::string& anchor, BasisElement e) {
        seq.insert(seq.begin() + static_cast<std::ptrdiff_t>(pos(anchor)) + 1, std::move(e));
    }
    void mark(const std::string& id) { seq[pos(id)].trivial = true; }

    MDifferential finish(Field f, const std::vector<std::tuple<std::string, std::string, int>>& terms) {
        OrderedTriple t(seq);
        Matrix m(f, t.size(), t.size());
        for (const auto& [row, col, sign] : terms) {
            const auto r = t.position_of(row), c = t.position_of(col);
            const Coefficient v = sign > 0 ? Coefficient::one(f) : -Coefficient::one(f);
            m.set(*r, *c, v);
        }
        return MDifferential(std::move(t), std::move(m));
    }
};

std::string idx(const char* stem, std::size_t j) { return stem + std::to_string(j); }

} // namespace

MDifferential make_l(std::size_t k, Field f) {
    if (k == 0) return MDifferential(OrderedTriple{}, Matrix(f, 0, 0));
    TemplateBuilder b;
    b.seq = {{"lr1", 0, Side::boundary, false}, {"lq1", 1, Side::boundary, false}};
    for (std::size_t j = 2; j <= k; ++j) {
        if (j % 2 == 0) {
            const std::size_t m = j / 2;
            b.insert_before(idx("lq", m), {idx("lz", m), 1, Side::interior, false});
            b.insert_after(idx("lq", m), {idx("ly", m), 2, Side::interior, false});
            b.mark(idx("lq", m));
        } else {
            const std::size_t m = (j + 1) / 2;
            b.insert_before(idx("lz", m - 1), {idx("lr", m), 0, Side::boundary, false});
            b.insert_before(idx("lq", m - 1), {idx("lq", m), 1, Side::boundary, false});
            b.mark(idx("lr", m));
        }
    }
    const std::size_t n_qr = (k + 1) / 2, n_yz = k / 2;
    std::vector<std::tuple<std::string, std::string, int>> terms;
    for (std::size_t j = 1; j <= n_qr; ++j) terms.push_back({idx("lr", j), idx("lq", j), +1});
    for (std::size_t j = 1; j <= n_yz; ++j) {
        terms.push_back({idx("lz", j), idx("ly", j), +1});
        terms.push_back({idx("lq", j), idx("ly", j), +1});
        if (j + 1 <= n_qr) terms.push_back({idx("lq", j + 1), idx("ly", j), -1});
        terms.push_back({idx("lr", j), idx("lz", j), -1});
        if (j + 1 <= n_qr) terms.push_back({idx("lr", j + 1), idx("lz", j), +1});
    }
    auto out = b.finish(f, terms);
    const auto rep = validate(out);
    if (!rep.ok()) throw IntegrityError("make_l template invalid: " + rep.summary());
    return out;
}

MDifferential make_r(std::size_t l, Field f) {
    if (l == 0) return MDifferential(OrderedTriple{}, Matrix(f, 0, 0));
    TemplateBuilder b;
    b.seq = {{"rz1", 0, Side::interior, false}, {"ry1", 1, Side::interior, false}};
    for (std::size_t j = 2; j <= l; ++j) {
        if (j % 2 == 0) {
            const std::size_t m = j / 2;
            b.insert_before(idx("rz", m), {idx("rr", m), -1, Side::boundary, false});
            b.insert_before(m == 1 ? "ry1" : idx("rq", m - 1), {idx("rq", m), 0, Side::boundary, false});
            b.mark(idx("rr", m));
        } else {
            const std::size_t m = (j + 1) / 2;
            b.insert_after(idx("rz", m - 1), {idx("rz", m), 0, Side::interior, false});
            b.insert_after(idx("rq", m - 1), {idx("ry", m), 1, Side::interior, false});
            b.mark(idx("rq", m - 1));
        }
    }
    const std::size_t n_yz = (l + 1) / 2, n_qr = l / 2;
    std::vector<std::tuple<std::string, std::string, int>> terms;
    for (std::size_t j = 1; j <= n_qr; ++j) terms.push_back({idx("rr", j), idx("rq", j), +1});
    for (std::size_t j = 1; j <= n_yz; ++j) {
        terms.push_back({idx("rz", j), idx("ry", j), +1});
        if (j <= n_qr) terms.push_back({idx("rr", j), idx("rz", j), +1});
        if (j >= 2) terms.push_back({idx("rr", j - 1), idx("rz", j), -1});
        if (j >= 2) terms.push_back({idx("rq", j - 1), idx("ry", j), +1});
        if (j <= n_qr) terms.push_back({idx("rq", j), idx("ry", j), -1});
    }
    auto out = b.finish(f, terms);
    const auto rep = validate(out);
    if (!rep.ok()) throw IntegrityError("make_r template invalid: " + rep.summary());
    return out;
}

} // namespace mpair

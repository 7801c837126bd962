#include "mpair/random.hpp"

#include <algorithm>
#include <vector>

#include "mpair/errors.hpp"
#include "mpair/rng.hpp"

namespace mpair {

namespace {

// Unconstrained degree-0 invertible block for the `pair` kind: a product of
// unit lower and upper triangular factors inside each (degree, side) block,
// so no rejection loop is needed.
void fill_pair_block(Matrix& g, const std::vector<std::size_t>& pos, Rng& rng, double density) {
    const Field f = g.field();
    Matrix lo = Matrix::identity(f, pos.size());
    Matrix up(f, pos.size(), pos.size());
    for (std::size_t i = 0; i < pos.size(); ++i) up.set(i, i, rng.nonzero_element(f));
    for (std::size_t c = 0; c < pos.size(); ++c)
        for (std::size_t r = 0; r < pos.size(); ++r) {
            if (r < c && rng.chance(density)) up.set(r, c, rng.nonzero_element(f));
            if (r > c && rng.chance(density)) lo.set(r, c, rng.nonzero_element(f));
        }
    Matrix prod = lo.mul(up);
    for (std::size_t c = 0; c < pos.size(); ++c)
        for (std::size_t r = 0; r < pos.size(); ++r)
            if (!prod.at(r, c).is_zero()) g.set(pos[r], pos[c], prod.at(r, c));
}

} // namespace

BasisTransform random_transform(const OrderedTriple& t, Field f, TransformKind kind,
                                std::uint64_t seed, double density) {
    Rng rng(seed);
    const std::size_t n = t.size();
    Matrix g(f, n, n);

    switch (kind) {
        case TransformKind::ordered:
        case TransformKind::ordered_pair: {
            for (std::size_t i = 0; i < n; ++i) g.set(i, i, rng.nonzero_element(f));
            for (std::size_t c = 0; c < n; ++c)
                for (std::size_t r = 0; r < c; ++r) {
                    if (t.degree(r) != t.degree(c)) continue;
                    if (kind == TransformKind::ordered_pair && t.in_b(c) && !t.in_b(r)) continue;
                    if (rng.chance(density)) g.set(r, c, rng.nonzero_element(f));
                }
            break;
        }
        case TransformKind::weak: {
            for (std::size_t i = 0; i < n; ++i) g.set(i, i, rng.nonzero_element(f));
            for (std::size_t c = 0; c < n; ++c)
                for (std::size_t r = 0; r < n; ++r) {
                    if (r == c || t.degree(r) != t.degree(c)) continue;
                    const bool rb = t.in_b(r), cb = t.in_b(c);
                    // mixed boundary-row/interior-column cells are free, the
                    // triangular blocks only above the diagonal
                    const bool admissible = (rb && !cb) || (rb == cb && r < c);
                    if (admissible && rng.chance(density)) g.set(r, c, rng.nonzero_element(f));
                }
            break;
        }
        case TransformKind::pair: {
            // per-degree boundary and interior diagonal blocks, then the free
            // mixed block
            std::vector<int> degs;
            for (std::size_t i = 0; i < n; ++i) degs.push_back(t.degree(i));
            std::sort(degs.begin(), degs.end());
            degs.erase(std::unique(degs.begin(), degs.end()), degs.end());
            for (int deg : degs) {
                std::vector<std::size_t> bpos, ipos;
                for (std::size_t i = 0; i < n; ++i) {
                    if (t.degree(i) != deg) continue;
                    (t.in_b(i) ? bpos : ipos).push_back(i);
                }
                fill_pair_block(g, bpos, rng, density);
                fill_pair_block(g, ipos, rng, density);
            }
            for (std::size_t c = 0; c < n; ++c)
                for (std::size_t r = 0; r < n; ++r)
                    if (t.in_b(r) && !t.in_b(c) && t.degree(r) == t.degree(c) && rng.chance(density))
                        g.set(r, c, rng.nonzero_element(f));
            break;
        }
    }

    BasisTransform out(t, std::move(g), kind);
    const auto rep = validate_transform(out);
    if (!rep.ok()) throw IntegrityError("random_transform produced an invalid element: " + rep.summary());
    return out;
}

} // namespace mpair

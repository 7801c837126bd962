#include "mpair/oracle.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>

#include "mpair/errors.hpp"

namespace mpair {
namespace oracle {

namespace {

using Vec = std::vector<Coefficient>;

std::optional<std::size_t> first_nonzero(const Vec& v) {
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) return i;
    return std::nullopt;
}

// Incremental reduced spanning set; pivots normalized to one.
class Span {
public:
    Vec residual(Vec v) const {
        for (std::size_t b = 0; b < basis_.size(); ++b) {
            const Coefficient& factor = v[pivots_[b]];
            if (factor.is_zero()) continue;
            const Coefficient scale = factor;
            for (std::size_t i = 0; i < v.size(); ++i)
                if (!basis_[b][i].is_zero()) v[i] = v[i] - scale * basis_[b][i];
        }
        return v;
    }

    bool add(Vec v) {
        v = residual(std::move(v));
        const auto p = first_nonzero(v);
        if (!p) return false;
        const Coefficient inv = v[*p].inverse();
        for (auto& c : v)
            if (!c.is_zero()) c = c * inv;
        pivots_.push_back(*p);
        basis_.push_back(std::move(v));
        return true;
    }

    std::size_t dim() const { return basis_.size(); }
    const std::vector<Vec>& basis() const { return basis_; }

private:
    std::vector<Vec> basis_;
    std::vector<std::size_t> pivots_;
};

// Induced matrix on a position subset (rows outside are dropped, which is
// exactly the quotient by everything below a window, and a no-op for
// ∂-closed subsets).
Matrix induced(const MDifferential& d, const std::vector<std::size_t>& pos) {
    Matrix m(d.field(), pos.size(), pos.size());
    for (std::size_t c = 0; c < pos.size(); ++c)
        for (std::size_t r = 0; r < pos.size(); ++r)
            if (!d.entry(pos[r], pos[c]).is_zero()) m.set(r, c, d.entry(pos[r], pos[c]));
    return m;
}

HomologyDims dims_of_induced(const MDifferential& d, const std::vector<std::size_t>& pos) {
    const Matrix m = induced(d, pos);
    std::map<int, std::size_t> count, rk;
    std::set<int> degrees;
    for (std::size_t i = 0; i < pos.size(); ++i) {
        ++count[d.triple().degree(pos[i])];
        degrees.insert(d.triple().degree(pos[i]));
    }
    for (int deg : degrees) {
        // rank of the block mapping degree-deg elements down
        std::vector<std::size_t> cols;
        for (std::size_t i = 0; i < pos.size(); ++i)
            if (d.triple().degree(pos[i]) == deg) cols.push_back(i);
        Matrix block(d.field(), pos.size(), cols.size());
        for (std::size_t c = 0; c < cols.size(); ++c)
            for (std::size_t r = 0; r < pos.size(); ++r)
                if (!m.at(r, cols[c]).is_zero()) block.set(r, c, m.at(r, cols[c]));
        rk[deg] = rank(block);
    }
    HomologyDims h;
    for (int deg : degrees) {
        const std::size_t dim = count[deg] - rk[deg] - (rk.count(deg + 1) ? rk[deg + 1] : 0);
        if (dim) h[deg] = dim;
    }
    return h;
}

} // namespace

std::vector<std::size_t> prefix_positions(std::size_t len) {
    std::vector<std::size_t> p(len);
    for (std::size_t i = 0; i < len; ++i) p[i] = i;
    return p;
}

HomologyDims homology_dims(const MDifferential& d, const std::vector<std::size_t>& subset) {
    require_valid(d, "homology_dims");
    std::set<std::size_t> in(subset.begin(), subset.end());
    if (in.size() != subset.size()) throw std::domain_error("homology_dims: repeated positions");
    for (std::size_t i : subset) {
        if (i >= d.size()) throw std::domain_error("homology_dims: position out of range");
        for (std::size_t r = 0; r < d.size(); ++r)
            if (!d.entry(r, i).is_zero() && !in.count(r))
                throw std::domain_error("homology_dims: subset is not closed under the differential");
    }
    std::vector<std::size_t> pos(subset);
    std::sort(pos.begin(), pos.end());
    return dims_of_induced(d, pos);
}

HomologyDims relative_dims(const MDifferential& d, std::size_t m, std::size_t n) {
    require_valid(d, "relative_dims");
    if (n > m || m > d.size()) throw std::domain_error("relative_dims: need 0 <= n <= m <= N");
    std::vector<std::size_t> pos;
    for (std::size_t i = n; i < m; ++i) pos.push_back(i);
    return dims_of_induced(d, pos);
}

std::size_t total_dim(const HomologyDims& dims) {
    std::size_t t = 0;
    for (const auto& [deg, dim] : dims) t += dim;
    return t;
}

namespace {

// dim of the iota_* image of H_deg(prefix j) inside H_deg(full complex):
// cycles of the prefix counted modulo the boundaries of the whole complex.
std::size_t iota_image_dim(const MDifferential& d, std::size_t prefix, int deg) {
    const std::size_t n = d.size();
    const Field f = d.field();

    Span boundaries;
    for (std::size_t c = 0; c < n; ++c) {
        if (d.triple().degree(c) != deg + 1) continue;
        Vec img(n, Coefficient::zero(f));
        bool nz = false;
        for (std::size_t r = 0; r < n; ++r)
            if (!d.entry(r, c).is_zero()) {
                img[r] = d.entry(r, c);
                nz = true;
            }
        if (nz) boundaries.add(std::move(img));
    }

    std::vector<std::size_t> cols;
    for (std::size_t c = 0; c < prefix; ++c)
        if (d.triple().degree(c) == deg) cols.push_back(c);
    Matrix block(f, n, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (std::size_t r = 0; r < n; ++r)
            if (!d.entry(r, cols[c]).is_zero()) block.set(r, c, d.entry(r, cols[c]));

    Span image = boundaries;
    std::size_t extra = 0;
    for (const auto& kv : kernel_basis(block)) {
        Vec cycle(n, Coefficient::zero(f));
        for (std::size_t c = 0; c < cols.size(); ++c)
            if (!kv[c].is_zero()) cycle[cols[c]] = kv[c];
        if (image.add(std::move(cycle))) ++extra;
    }
    return extra;
}

} // namespace

PairingReport pairing_via_oracle(const MDifferential& d) {
    require_valid(d, "pairing_via_oracle");
    const std::size_t n = d.size();

    // dt[m][k] = total dim H_*(prefix m / prefix k)
    std::vector<std::vector<std::size_t>> dt(n + 1);
    for (std::size_t m = 0; m <= n; ++m) {
        dt[m].resize(m + 1);
        for (std::size_t k = 0; k <= m; ++k) dt[m][k] = total_dim(relative_dims(d, m, k));
    }

    PairingReport rep;
    std::vector<bool> taken(n, false);
    for (std::size_t m = 1; m <= n; ++m) {
        for (std::size_t k = 1; k < m; ++k) {
            if (dt[m][k] != dt[m - 1][k - 1]) continue;
            if (dt[m][k] != dt[m - 1][k] + 1) continue;
            if (dt[m][k] != dt[m][k - 1] + 1) continue;
            if (taken[m - 1] || taken[k - 1])
                throw IntegrityError("oracle pairing: an element entered two pairs");
            taken[m - 1] = taken[k - 1] = true;
            rep.pairs.emplace_back(m - 1, k - 1);
        }
    }

    for (std::size_t j = 1; j <= n; ++j) {
        if (taken[j - 1]) continue;
        const int deg = d.triple().degree(j - 1);
        const std::size_t now = iota_image_dim(d, j, deg);
        const std::size_t before = iota_image_dim(d, j - 1, deg);
        if (now == before + 1) {
            rep.essentials.push_back(j - 1);
        } else if (now == before) {
            throw IntegrityError("oracle pairing: unpaired element is not essential");
        } else {
            throw IntegrityError("oracle pairing: image filtration jumped by more than one");
        }
    }

    std::sort(rep.pairs.begin(), rep.pairs.end());
    return rep;
}

std::vector<std::size_t> boundary_essential_via_ik(const MDifferential& d) {
    require_valid(d, "boundary_essential_via_ik");
    const auto& t = d.triple();
    const Field f = d.field();
    const auto bpos = t.boundary_positions();
    const auto ipos = t.interior_positions();
    const std::size_t nb = bpos.size();

    std::set<int> degrees;
    for (std::size_t b : bpos) degrees.insert(t.degree(b));

    // Per degree: the boundary space of ∂_B (for residual reduction) and the
    // residuals spanning the image of the connecting map.
    std::map<int, Span> b_boundaries;
    std::map<int, Span> connecting;

    for (int deg : degrees) {
        Span bd;
        for (std::size_t ci = 0; ci < nb; ++ci) {
            if (t.degree(bpos[ci]) != deg + 1) continue;
            Vec img(nb, Coefficient::zero(f));
            bool nz = false;
            for (std::size_t ri = 0; ri < nb; ++ri)
                if (!d.entry(bpos[ri], bpos[ci]).is_zero()) {
                    img[ri] = d.entry(bpos[ri], bpos[ci]);
                    nz = true;
                }
            if (nz) bd.add(std::move(img));
        }

        // Relative cycles in degree deg+1: interior vectors whose image has
        // no interior part; their boundaries represent the connecting map.
        std::vector<std::size_t> cols;
        for (std::size_t c : ipos)
            if (t.degree(c) == deg + 1) cols.push_back(c);
        Matrix qblock(f, ipos.size(), cols.size());
        for (std::size_t c = 0; c < cols.size(); ++c)
            for (std::size_t ri = 0; ri < ipos.size(); ++ri)
                if (!d.entry(ipos[ri], cols[c]).is_zero())
                    qblock.set(ri, c, d.entry(ipos[ri], cols[c]));

        Span w;
        for (const auto& kv : kernel_basis(qblock)) {
            Vec img(nb, Coefficient::zero(f));
            for (std::size_t c = 0; c < cols.size(); ++c) {
                if (kv[c].is_zero()) continue;
                for (std::size_t ri = 0; ri < nb; ++ri)
                    if (!d.entry(bpos[ri], cols[c]).is_zero())
                        img[ri] = img[ri] + kv[c] * d.entry(bpos[ri], cols[c]);
            }
            w.add(bd.residual(std::move(img)));
        }
        b_boundaries.emplace(deg, std::move(bd));
        connecting.emplace(deg, std::move(w));
    }

    // dim I_k = sum over degrees of dim(iota_k ∩ image ∂_*), computed from
    // dim U + dim W - dim(U + W) on residuals.
    auto intersection_total = [&](std::size_t k) {
        std::size_t total = 0;
        for (int deg : degrees) {
            const Span& bd = b_boundaries.at(deg);
            const Span& w = connecting.at(deg);
            if (w.dim() == 0) continue;

            std::vector<std::size_t> cols;
            for (std::size_t ci = 0; ci < k; ++ci)
                if (t.degree(bpos[ci]) == deg) cols.push_back(ci);
            Matrix block(f, nb, cols.size());
            for (std::size_t c = 0; c < cols.size(); ++c)
                for (std::size_t ri = 0; ri < nb; ++ri)
                    if (!d.entry(bpos[ri], bpos[cols[c]]).is_zero())
                        block.set(ri, c, d.entry(bpos[ri], bpos[cols[c]]));

            Span u;
            for (const auto& kv : kernel_basis(block)) {
                Vec cycle(nb, Coefficient::zero(f));
                for (std::size_t c = 0; c < cols.size(); ++c)
                    if (!kv[c].is_zero()) cycle[cols[c]] = kv[c];
                u.add(bd.residual(std::move(cycle)));
            }

            Span both = w;
            std::size_t u_dim = u.dim(), sum_dim = w.dim();
            for (const auto& v : u.basis())
                if (both.add(v)) ++sum_dim;
            total += u_dim + w.dim() - sum_dim;
        }
        return total;
    };

    std::vector<std::size_t> essential;
    std::size_t prev = 0;
    for (std::size_t k = 1; k <= nb; ++k) {
        const std::size_t now = intersection_total(k);
        if (now > prev + 1) throw IntegrityError("I_k filtration jumped by more than one");
        if (now > prev) essential.push_back(bpos[k - 1]);
        prev = now;
    }
    return essential;
}

} // namespace oracle
} // namespace mpair

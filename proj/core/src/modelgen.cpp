#include "mpair/modelgen.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "mpair/errors.hpp"
#include "mpair/rng.hpp"

namespace mpair {

std::string event_kind_name(EventKind k) {
    switch (k) {
        case EventKind::interior_min: return "interior_min";
        case EventKind::interior_max: return "interior_max";
        case EventKind::boundary_left: return "boundary_left";
        case EventKind::boundary_right: return "boundary_right";
    }
    return "?";
}

namespace {

// Rising/falling pattern of the monotone segments, derived from the event
// kinds; used to cross-check directions and values.
std::vector<bool> segment_rises(const std::vector<CriticalEvent>& ev) {
    // segment i lies between event i and event i+1
    std::vector<bool> rises(ev.size() - 1);
    for (std::size_t i = 0; i + 1 < ev.size(); ++i) {
        const auto& left = ev[i];
        switch (left.kind) {
            case EventKind::boundary_left:
                rises[i] = left.direction == BoundaryDirection::inward;
                break;
            case EventKind::interior_min: rises[i] = true; break;
            case EventKind::interior_max: rises[i] = false; break;
            case EventKind::boundary_right:
                throw std::domain_error("scenario: boundary_right must be the last event");
        }
    }
    return rises;
}

} // namespace

ScenarioModel model_from_interval(const std::vector<CriticalEvent>& events, Field f) {
    if (events.size() < 2)
        throw std::domain_error("scenario: need at least the two boundary events");
    if (events.front().kind != EventKind::boundary_left)
        throw std::domain_error("scenario: first event must be boundary_left");
    if (events.back().kind != EventKind::boundary_right)
        throw std::domain_error("scenario: last event must be boundary_right");
    for (std::size_t i = 1; i + 1 < events.size(); ++i)
        if (events[i].kind != EventKind::interior_min && events[i].kind != EventKind::interior_max)
            throw std::domain_error("scenario: boundary events must frame the sequence");
    for (const auto& e : events) {
        const bool boundary =
            e.kind == EventKind::boundary_left || e.kind == EventKind::boundary_right;
        if (boundary && !e.direction)
            throw std::domain_error("scenario: boundary events need a direction");
    }
    std::set<Rational> values;
    for (const auto& e : events)
        if (!values.insert(e.value).second)
            throw std::domain_error("scenario: critical values must be pairwise distinct");

    // Directions must produce a single consistent rising/falling pattern and
    // the values must follow it.
    const auto rises = segment_rises(events);
    for (std::size_t i = 0; i + 1 < events.size(); ++i) {
        const auto& right = events[i + 1];
        bool expect_rise = rises[i];
        bool right_consistent = true;
        switch (right.kind) {
            case EventKind::interior_min: right_consistent = !expect_rise; break;
            case EventKind::interior_max: right_consistent = expect_rise; break;
            case EventKind::boundary_right:
                right_consistent = (right.direction == BoundaryDirection::outward) == expect_rise;
                break;
            case EventKind::boundary_left: right_consistent = false; break;
        }
        if (!right_consistent)
            throw std::domain_error("scenario: no valid function realizes events (direction clash at event " +
                                    std::to_string(i + 1) + ")");
        if (expect_rise != (events[i].value < right.value))
            throw std::domain_error("scenario: no valid function realizes events (value order clash at event " +
                                    std::to_string(i + 1) + ")");
    }

    // Sweep upward by value. Components of the sublevel set are runs of
    // already-processed events that are consecutive in position; each run
    // remembers the 0-cell that represents it (elder representative).
    const std::size_t ne = events.size();
    std::vector<std::size_t> by_value(ne);
    std::iota(by_value.begin(), by_value.end(), 0);
    std::sort(by_value.begin(), by_value.end(),
              [&](std::size_t a, std::size_t b) { return events[a].value < events[b].value; });

    struct Cell {
        std::string id;
        int degree;
        Side side;
        bool trivial;
        std::string provenance;
        std::vector<std::pair<std::string, int>> boundary;  // (cell id, ±1)
    };
    std::vector<Cell> cells;  // in value order

    std::vector<bool> processed(ne, false);
    std::vector<std::size_t> run_of(ne, 0);  // event -> current run root (union-find)
    std::vector<std::size_t> rep_cell(ne, 0);  // run root -> representative cell index
    std::function<std::size_t(std::size_t)> find = [&](std::size_t i) {
        while (run_of[i] != i) i = run_of[i] = run_of[run_of[i]];
        return i;
    };

    auto id_of = [&](std::size_t event_index, bool plus) {
        const auto& e = events[event_index];
        std::string base;
        switch (e.kind) {
            case EventKind::boundary_left: base = "bl"; break;
            case EventKind::boundary_right: base = "br"; break;
            case EventKind::interior_min: base = "m" + std::to_string(event_index); break;
            case EventKind::interior_max: base = "M" + std::to_string(event_index); break;
        }
        return plus ? base + "p" : base;
    };

    for (std::size_t step = 0; step < ne; ++step) {
        const std::size_t i = by_value[step];
        const auto& e = events[i];
        run_of[i] = i;
        const std::string ev_desc = event_kind_name(e.kind) + "@" +
                                    Coefficient::from_rational(Field::rationals(), e.value).str();

        const bool left_done = i > 0 && processed[i - 1];
        const bool right_done = i + 1 < ne && processed[i + 1];

        switch (e.kind) {
            case EventKind::interior_min: {
                if (left_done || right_done)
                    throw IntegrityError("sweep: a minimum with a processed neighbour");
                cells.push_back({id_of(i, false), 0, Side::interior, false, ev_desc, {}});
                rep_cell[i] = cells.size() - 1;
                break;
            }
            case EventKind::interior_max: {
                if (!left_done || !right_done)
                    throw IntegrityError("sweep: a maximum with an unprocessed neighbour");
                const std::size_t left_run = find(i - 1), right_run = find(i + 1);
                if (left_run == right_run)
                    throw IntegrityError("sweep: a maximum that does not merge two components");
                const std::size_t lrep = rep_cell[left_run], rrep = rep_cell[right_run];
                cells.push_back({id_of(i, false), 1, Side::interior, false, ev_desc,
                                 {{cells[rrep].id, +1}, {cells[lrep].id, -1}}});
                run_of[left_run] = i;
                run_of[right_run] = i;
                rep_cell[i] = std::min(lrep, rrep);  // elder representative
                break;
            }
            case EventKind::boundary_left:
            case EventKind::boundary_right: {
                const bool left_boundary = e.kind == EventKind::boundary_left;
                cells.push_back({id_of(i, false), 0, Side::boundary, false, ev_desc, {}});
                const std::size_t bcell = cells.size() - 1;
                rep_cell[i] = bcell;
                if (e.direction == BoundaryDirection::inward) {
                    if ((left_boundary && right_done) || (!left_boundary && left_done))
                        throw IntegrityError("sweep: inward endpoint with a processed neighbour");
                    break;
                }
                // outward: joins the adjacent run and spawns the extra 1-cell
                const std::size_t nb = left_boundary ? i + 1 : i - 1;
                if (nb >= ne || !processed[nb])
                    throw IntegrityError("sweep: outward endpoint with no neighbour below");
                const std::size_t nb_run = find(nb);
                const std::size_t nrep = rep_cell[nb_run];
                cells[bcell].trivial = true;
                std::vector<std::pair<std::string, int>> bd;
                if (left_boundary)
                    bd = {{cells[nrep].id, +1}, {cells[bcell].id, -1}};
                else
                    bd = {{cells[bcell].id, +1}, {cells[nrep].id, -1}};
                cells.push_back({id_of(i, true), 1, Side::interior, false, ev_desc + "+", bd});
                run_of[nb_run] = i;
                rep_cell[i] = nrep;
                break;
            }
        }
        processed[i] = true;
    }

    std::vector<BasisElement> elems;
    std::vector<std::string> provenance;
    for (const auto& c : cells) {
        elems.push_back({c.id, c.degree, c.side, c.trivial});
        provenance.push_back(c.provenance);
    }
    OrderedTriple t(std::move(elems));
    Matrix m(f, t.size(), t.size());
    for (std::size_t c = 0; c < cells.size(); ++c)
        for (const auto& [target, sign] : cells[c].boundary) {
            const auto r = t.position_of(target);
            m.set(*r, c, Coefficient::from_integer(f, sign));
        }

    MDifferential d(std::move(t), std::move(m));
    const auto rep = validate(d);
    if (!rep.ok()) throw IntegrityError("scenario model failed validation: " + rep.summary());
    return {std::move(d), std::move(provenance)};
}

namespace {

std::vector<std::size_t> admissible_rows(const OrderedTriple& t, std::size_t col) {
    std::vector<std::size_t> rows;
    for (std::size_t r = 0; r < col; ++r) {
        if (t.degree(r) != t.degree(col) - 1) continue;
        if (t.in_b(col) && !t.in_b(r)) continue;
        rows.push_back(r);
    }
    return rows;
}

// Kernel of the map v -> sum_j v_j * column_j over the allowed support.
std::vector<std::vector<Coefficient>> column_kernel(const Matrix& d,
                                                    const std::vector<std::size_t>& support) {
    Matrix m(d.field(), d.rows(), support.size());
    for (std::size_t s = 0; s < support.size(); ++s)
        for (std::size_t r = 0; r < d.rows(); ++r)
            if (!d.at(r, support[s]).is_zero()) m.set(r, s, d.at(r, support[s]));
    return kernel_basis(m);
}

} // namespace

MDifferential random_mdifferential(const OrderedTriple& t, Field f, std::uint64_t seed,
                                   double density) {
    const auto structural = triple_structure_violations(t);
    if (!structural.empty())
        throw std::domain_error("random_mdifferential: " + structural.front().message);
    Rng rng(seed);
    const std::size_t n = t.size();
    Matrix d(f, n, n);

    for (std::size_t col = 0; col < n; ++col) {
        const auto support = admissible_rows(t, col);
        const bool forced = col > 0 && t.in_c(col - 1);
        const std::size_t forced_row = col - 1;
        if (forced && std::find(support.begin(), support.end(), forced_row) == support.end())
            throw std::domain_error("random_mdifferential: the triple admits no element of D (no cell for '" +
                                    t.at(forced_row).id + "')");
        if (support.empty()) continue;

        const auto kernel = column_kernel(d, support);
        if (forced) {
            const std::size_t fs = static_cast<std::size_t>(
                std::find(support.begin(), support.end(), forced_row) - support.begin());
            const bool reachable = std::any_of(kernel.begin(), kernel.end(),
                                               [&](const auto& v) { return !v[fs].is_zero(); });
            if (!reachable)
                throw std::domain_error(
                    "random_mdifferential: the triple admits no element of D (C-trivial cell for '" +
                    t.at(forced_row).id + "' is forced to zero)");
        }

        for (int attempt = 0;; ++attempt) {
            if (attempt > 256)
                throw std::domain_error("random_mdifferential: retry budget exhausted at column '" +
                                        t.at(col).id + "'");
            std::vector<Coefficient> v(support.size(), Coefficient::zero(f));
            for (const auto& basis : kernel) {
                if (!rng.chance(density)) continue;
                const Coefficient c = rng.nonzero_element(f);
                for (std::size_t s = 0; s < support.size(); ++s)
                    if (!basis[s].is_zero()) v[s] = v[s] + c * basis[s];
            }
            if (forced) {
                const std::size_t fs = static_cast<std::size_t>(
                    std::find(support.begin(), support.end(), forced_row) - support.begin());
                if (v[fs].is_zero()) continue;
            }
            for (std::size_t s = 0; s < support.size(); ++s)
                if (!v[s].is_zero()) d.set(support[s], col, v[s]);
            break;
        }
    }

    MDifferential out(t, std::move(d));
    const auto rep = validate(out);
    if (!rep.ok()) throw IntegrityError("random_mdifferential produced an invalid differential: " + rep.summary());
    return out;
}

void enumerate_all(const OrderedTriple& t, Field gf, std::uint64_t budget,
                   const std::function<bool(const MDifferential&)>& fn) {
    if (gf.is_rationals())
        throw std::domain_error("enumerate_all: enumeration needs a finite field");
    const auto structural = triple_structure_violations(t);
    if (!structural.empty())
        throw std::domain_error("enumerate_all: " + structural.front().message);

    const std::size_t n = t.size();
    std::size_t cells = 0;
    for (std::size_t col = 0; col < n; ++col) cells += admissible_rows(t, col).size();
    double total = 1;
    for (std::size_t i = 0; i < cells; ++i) {
        total *= gf.characteristic();
        if (total > static_cast<double>(budget))
            throw std::domain_error("enumerate_all: p^cells exceeds the budget");
    }

    Matrix d(gf, n, n);
    std::vector<Coefficient> nonzero_values;
    for (std::uint32_t v = 1; v < gf.characteristic(); ++v)
        nonzero_values.push_back(Coefficient::from_integer(gf, v));

    bool keep_going = true;
    std::function<void(std::size_t)> recurse = [&](std::size_t col) {
        if (!keep_going) return;
        if (col == n) {
            keep_going = fn(MDifferential(t, d));
            return;
        }
        const auto support = admissible_rows(t, col);
        const auto kernel = column_kernel(d, support);
        const bool forced = col > 0 && t.in_c(col - 1);
        const std::size_t forced_row = col - 1;

        // iterate the kernel subspace: all coefficient tuples over GF(p)
        std::vector<std::size_t> combo(kernel.size(), 0);
        const std::size_t p = gf.characteristic();
        for (;;) {
            std::vector<Coefficient> v(support.size(), Coefficient::zero(gf));
            for (std::size_t b = 0; b < kernel.size(); ++b) {
                if (combo[b] == 0) continue;
                const Coefficient c = Coefficient::from_integer(gf, static_cast<long long>(combo[b]));
                for (std::size_t s = 0; s < support.size(); ++s)
                    if (!kernel[b][s].is_zero()) v[s] = v[s] + c * kernel[b][s];
            }
            bool admissible = true;
            if (forced) {
                const auto it = std::find(support.begin(), support.end(), forced_row);
                admissible = it != support.end() &&
                             !v[static_cast<std::size_t>(it - support.begin())].is_zero();
            }
            if (admissible) {
                for (std::size_t s = 0; s < support.size(); ++s) d.set(support[s], col, v[s]);
                recurse(col + 1);
                for (std::size_t s = 0; s < support.size(); ++s)
                    d.set(support[s], col, Coefficient::zero(gf));
                if (!keep_going) return;
            }
            std::size_t b = 0;
            while (b < combo.size() && ++combo[b] == p) combo[b++] = 0;
            if (b == combo.size()) break;
        }
    };
    recurse(0);
}

std::vector<MDifferential> enumerate_all(const OrderedTriple& t, Field gf, std::uint64_t budget) {
    std::vector<MDifferential> out;
    enumerate_all(t, gf, budget, [&](const MDifferential& d) {
        out.push_back(d);
        return true;
    });
    return out;
}

OrderedTriple random_triple(std::uint64_t seed, std::size_t max_n, int max_degree,
                            double boundary_chance, double c_chance) {
    Rng rng(seed);
    const std::size_t n = 1 + rng.below(max_n);
    std::vector<BasisElement> elems;
    for (std::size_t i = 0; i < n; ++i) {
        BasisElement e;
        e.id = "a" + std::to_string(i + 1);
        e.degree = static_cast<int>(rng.below(static_cast<std::uint64_t>(max_degree) + 1));
        e.side = rng.chance(boundary_chance) ? Side::boundary : Side::interior;
        elems.push_back(e);
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const bool eligible = elems[i].side == Side::boundary &&
                              elems[i + 1].side == Side::interior &&
                              elems[i + 1].degree == elems[i].degree + 1;
        if (eligible && rng.chance(c_chance)) elems[i].trivial = true;
    }
    return OrderedTriple(std::move(elems));
}

std::vector<CriticalEvent> random_scenario(std::uint64_t seed, std::size_t max_interior) {
    Rng rng(seed);
    const std::size_t k = rng.below(max_interior + 1);
    const bool first_rises = rng.chance(0.5);

    std::set<long long> used;
    long long current = static_cast<long long>(rng.below(64));
    used.insert(current);
    std::vector<long long> heights{current};
    bool rises = first_rises;
    for (std::size_t i = 0; i < k + 1; ++i) {
        long long next;
        do {
            const long long offset = 1 + static_cast<long long>(rng.below(16));
            next = rises ? current + offset : current - offset;
        } while (used.count(next) != 0);
        used.insert(next);
        heights.push_back(next);
        current = next;
        rises = !rises;
    }

    std::vector<CriticalEvent> ev(k + 2);
    ev.front().kind = EventKind::boundary_left;
    ev.front().direction = first_rises ? BoundaryDirection::inward : BoundaryDirection::outward;
    for (std::size_t i = 1; i <= k; ++i) {
        // segment i-1 rises iff i is odd XNOR the first segment rises
        const bool rising_before = (i % 2 == 1) == first_rises;
        ev[i].kind = rising_before ? EventKind::interior_max : EventKind::interior_min;
    }
    ev.back().kind = EventKind::boundary_right;
    const bool last_rises = (k % 2 == 0) == first_rises;
    ev.back().direction = last_rises ? BoundaryDirection::outward : BoundaryDirection::inward;
    for (std::size_t i = 0; i < ev.size(); ++i) ev[i].value = Rational(heights[i]);
    return ev;
}

} // namespace mpair

#pragma once

#include <string>
#include <vector>

#include "mpair/decompose.hpp"
#include "mpair/differential.hpp"
#include "mpair/io.hpp"
#include "mpair/minimize.hpp"
#include "mpair/modelgen.hpp"
#include "mpair/oracle.hpp"
#include "mpair/random.hpp"
#include "mpair/reduction.hpp"
#include "mpair/rng.hpp"

namespace mpair::testing {

inline Coefficient c_int(Field f, long long v) { return Coefficient::from_integer(f, v); }

// Fig. 2 style four-element M-pair: A = [b1, i2, b3, i4], B = {b1, b3},
// ∂i4 = b3 + i2, ∂b3 = b1, ∂i2 = -b1.
inline MDifferential e1(Field f = Field::gf(2)) {
    OrderedTriple t({{"b1", 0, Side::boundary, false},
                     {"i2", 1, Side::interior, false},
                     {"b3", 1, Side::boundary, false},
                     {"i4", 2, Side::interior, false}});
    Matrix m(f, 4, 4);
    m.set(0, 1, c_int(f, -1));
    m.set(0, 2, c_int(f, 1));
    m.set(1, 3, c_int(f, 1));
    m.set(2, 3, c_int(f, 1));
    return MDifferential(std::move(t), std::move(m));
}

// Two elements, one C-pair: ∂p2 = c1.
inline MDifferential e2(Field f = Field::gf(2)) {
    OrderedTriple t({{"c1", 0, Side::boundary, true}, {"p2", 1, Side::interior, false}});
    Matrix m(f, 2, 2);
    m.set(0, 1, c_int(f, 1));
    return MDifferential(std::move(t), std::move(m));
}

// Three elements: ∂q2 = r1, ∂x3 = r1, no C.
inline MDifferential e3(Field f = Field::gf(2)) {
    OrderedTriple t({{"r1", 0, Side::boundary, false},
                     {"q2", 1, Side::boundary, false},
                     {"x3", 1, Side::interior, false}});
    Matrix m(f, 3, 3);
    m.set(0, 1, c_int(f, 1));
    m.set(0, 2, c_int(f, 1));
    return MDifferential(std::move(t), std::move(m));
}

// The worked interval scenario: left boundary outward at value 2, an
// interior minimum at 1, an interior maximum at 3, right boundary inward at
// 0; listed by position.
inline std::vector<CriticalEvent> e4_events() {
    using K = EventKind;
    using D = BoundaryDirection;
    return {{Rational(2), K::boundary_left, D::outward},
            {Rational(1), K::interior_min, {}},
            {Rational(3), K::interior_max, {}},
            {Rational(0), K::boundary_right, D::inward}};
}

inline std::vector<Field> all_fields() {
    return {Field::gf(2), Field::gf(5), Field::rationals()};
}

// Random valid instance of D_{A,B,C} together with its triple.
inline MDifferential random_instance(std::uint64_t seed, std::size_t max_n, Field f,
                                     double density = 0.6) {
    for (std::uint64_t attempt = 0;; ++attempt) {
        const OrderedTriple t = random_triple(seed + 7919 * attempt, max_n);
        try {
            return random_mdifferential(t, f, seed ^ (attempt + 1), density);
        } catch (const std::domain_error&) {
            // triple admits no element; try another shape
        }
    }
}

// Bare graded ordered set (no B, no C) with degrees in [0, max_degree].
inline OrderedTriple random_bare_triple(std::uint64_t seed, std::size_t max_n, int max_degree = 3) {
    Rng rng(seed);
    const std::size_t n = 1 + rng.below(max_n);
    std::vector<BasisElement> elems;
    for (std::size_t i = 0; i < n; ++i)
        elems.push_back({"a" + std::to_string(i + 1),
                         static_cast<int>(rng.below(static_cast<std::uint64_t>(max_degree) + 1)),
                         Side::interior, false});
    return OrderedTriple(std::move(elems));
}

// Random weak transform whose conjugate keeps d inside D_{A,B,C}; resamples
// until the post-validation check passes.
inline BasisTransform random_weak_staying_in_d(const MDifferential& d, std::uint64_t seed,
                                               double density = 0.4) {
    for (std::uint64_t attempt = 0;; ++attempt) {
        BasisTransform g = random_transform(d.triple(), d.field(), TransformKind::weak,
                                            seed + 104729 * attempt, density);
        try {
            conjugate(d, g);
            return g;
        } catch (const std::domain_error&) {
            // left D_{A,B,C}; resample
        }
    }
}

} // namespace mpair::testing

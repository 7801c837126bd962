#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mpair/differential.hpp"

namespace mpair {

enum class EventKind { interior_min, interior_max, boundary_left, boundary_right };
enum class BoundaryDirection { inward, outward };

std::string event_kind_name(EventKind k);

// One critical value of a strong Morse function on [0,1]. Events are handed
// around ordered by position on the interval; the two boundary events frame
// the sequence.
struct CriticalEvent {
    Rational value;
    EventKind kind = EventKind::interior_min;
    std::optional<BoundaryDirection> direction;  // boundary kinds only
};

struct ScenarioModel {
    MDifferential differential;
    // per element, in order: which event produced it ("min@3/2", "outward+",...)
    std::vector<std::string> provenance;
};

// Builds the algebraic model of the scenario: elements ordered by critical
// value, boundary events in B, outward boundary events in C with their extra
// degree-1 generator right after them, and the differential produced by
// sweeping the sublevel sets upward. Throws std::domain_error naming the
// violated constraint for impossible scenarios.
ScenarioModel model_from_interval(const std::vector<CriticalEvent>& events_by_position, Field f);

// Deterministic-in-seed random element of D_{A,B,C} on the given triple.
// Columns are sampled left to right inside the kernel of the left block, so
// the square of the result vanishes by construction; cells forced by
// C-triviality are retried until nonzero. Throws std::domain_error when the
// triple admits no such differential (or the retry budget runs out).
MDifferential random_mdifferential(const OrderedTriple& t, Field f, std::uint64_t seed,
                                   double density);

// Complete, duplicate-free enumeration of D_{A,B,C} over GF(p). The callback
// may return false to stop early. Throws std::domain_error when the cell
// count puts p^cells above `budget`.
void enumerate_all(const OrderedTriple& t, Field gf, std::uint64_t budget,
                   const std::function<bool(const MDifferential&)>& fn);

std::vector<MDifferential> enumerate_all(const OrderedTriple& t, Field gf, std::uint64_t budget);

// Test-harness generators.
OrderedTriple random_triple(std::uint64_t seed, std::size_t max_n, int max_degree = 2,
                            double boundary_chance = 0.5, double c_chance = 0.5);
std::vector<CriticalEvent> random_scenario(std::uint64_t seed, std::size_t max_interior);

} // namespace mpair

#include <doctest.h>

#include "common.hpp"

using namespace mpair;
using namespace mpair::testing;

namespace {

struct Prepared {
    MDifferential dq;
    InvariantSignature sig;
    CPairTable cp;
};

Prepared prepare(const MDifferential& d) {
    auto dq = reduce_quasi_elementary(d).output;
    auto sig = signature_of_quasi(dq);
    auto cp = CPairTable::from(d.triple());
    return {std::move(dq), std::move(sig), std::move(cp)};
}

} // namespace

TEST_CASE("allowed conditions on the worked examples") {
    const auto p2 = prepare(e2());
    CHECK(allowed(p2.dq, p2.sig, p2.cp, 1, 0) == 1);  // C-pair wins over h+

    const auto p3 = prepare(e3());
    CHECK(!allowed(p3.dq, p3.sig, p3.cp, 2, 0));  // (x3, r1): no C-pairs anywhere

    const auto p1 = prepare(e1());
    CHECK(!allowed(p1.dq, p1.sig, p1.cp, 3, 2));  // (i4, b3): condition 3 needs a C-pair
}

TEST_CASE("classification of the violating cells") {
    const auto p3 = prepare(e3());
    const auto v3 = classify(p3.dq, p3.sig, p3.cp, 2, 0);
    CHECK(v3.kind == ViolationCase::n5);
    CHECK(v3.q == 1);  // q2

    const auto p1 = prepare(e1());
    const auto v1 = classify(p1.dq, p1.sig, p1.cp, 3, 2);
    CHECK(v1.kind == ViolationCase::n1);
    CHECK(v1.r == 0);  // b1
    CHECK(v1.z == 1);  // i2

    // a ∈ Y against b ∈ P with no C-pair is N3
    const Field f = Field::gf(2);
    OrderedTriple t({{"p", 0, Side::boundary, false},
                     {"z", 0, Side::interior, false},
                     {"y", 1, Side::interior, false}});
    Matrix m(f, 3, 3);
    m.set(0, 2, c_int(f, 1));
    m.set(1, 2, c_int(f, 1));
    const auto pd = prepare(MDifferential(t, m));
    const auto v = classify(pd.dq, pd.sig, pd.cp, 2, 0);
    CHECK(v.kind == ViolationCase::n3);

    // zero cells and allowed cells are not violations
    CHECK_THROWS_AS(classify(p3.dq, p3.sig, p3.cp, 2, 1), std::domain_error);
    const auto p2 = prepare(e2());
    CHECK_THROWS_AS(classify(p2.dq, p2.sig, p2.cp, 1, 0), std::domain_error);
}

TEST_CASE("eliminate_step clears the target and coupled cells") {
    // E3, N5 at (x3, r1): S(x3) = x3 + q2 over GF(2)
    const auto p3 = prepare(e3());
    const auto v3 = classify(p3.dq, p3.sig, p3.cp, 2, 0);
    const auto s3 = eliminate_step(p3.dq, v3);
    CHECK(s3.output.entry(0, 2).is_zero());
    CHECK(s3.output.entry(0, 1).is_one());  // ∂q2 = r1 untouched
    CHECK(s3.witness.matrix().at(1, 2).is_one());
    CHECK(equal(conjugate(p3.dq, s3.witness), s3.output));

    // E1, N1 at (i4, b3): both (i4,b3) and (i2,b1) vanish, blocks decouple
    for (Field f : all_fields()) {
        CAPTURE(f.str());
        const auto p1 = prepare(e1(f));
        const auto v1 = classify(p1.dq, p1.sig, p1.cp, 3, 2);
        const auto s1 = eliminate_step(p1.dq, v1);
        CHECK(s1.output.entry(2, 3).is_zero());
        CHECK(s1.output.entry(0, 1).is_zero());
        CHECK(s1.output.entry(0, 2).is_one());  // ∂b3 = b1
        CHECK(s1.output.entry(1, 3).is_one());  // ∂i4 = i2
        CHECK(validate_transform(s1.witness).ok());
        CHECK(s1.witness.kind() == TransformKind::weak);
    }
}

TEST_CASE("minimize the worked examples") {
    for (Field f : all_fields()) {
        CAPTURE(f.str());
        const auto m1 = minimize(e1(f));
        CHECK(m1.steps == 1);
        CHECK(m1.certificate.empty());
        CHECK(m1.output.entry(2, 3).is_zero());
        CHECK(m1.output.entry(0, 1).is_zero());
        CHECK(equal(conjugate(e1(f), m1.witness), m1.output));

        const auto m2 = minimize(e2(f));
        CHECK(equal(m2.output, e2(f)));
        CHECK(m2.steps == 0);
        CHECK(m2.certificate.size() == 1);
        CHECK(m2.certificate.at({0, 1}) == 1);

        const auto m3 = minimize(e3(f));
        CHECK(m3.output.entry(0, 1).is_one());
        CHECK(m3.output.entry(0, 2).is_zero());
        CHECK(m3.steps == 1);
    }
}

TEST_CASE("similar compares zero patterns only") {
    const auto m3 = minimize(e3()).output;
    CHECK(!similar(e3(), m3));
    CHECK(similar(e3(), e3()));

    const Field f5 = Field::gf(5);
    const auto a = e2(f5);
    Matrix m = a.matrix();
    m.set(0, 1, c_int(f5, 3));
    CHECK(similar(a, MDifferential(a.triple(), m)));
}

TEST_CASE("minimize is idempotent and certified on random instances") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        const Field f = all_fields()[seed % 3];
        const auto d = random_instance(seed * 3 + 1, 10, f);
        const auto res = minimize(d);
        CHECK(validate(res.output).ok());
        CHECK(is_quasi_elementary(res.output));
        CHECK(equal(conjugate(d, res.witness), res.output));
        CHECK(validate_transform(res.witness).ok());

        const auto again = minimize(res.output);
        CHECK(equal(again.output, res.output));
        CHECK(again.steps == 0);

        // every mixed entry carries its certificate
        const auto& t = d.triple();
        std::size_t mixed = 0;
        for (std::size_t c = 0; c < d.size(); ++c)
            for (std::size_t r = 0; r < d.size(); ++r)
                if (!t.in_b(c) && t.in_b(r) && !res.output.entry(r, c).is_zero()) ++mixed;
        CHECK(res.certificate.size() == mixed);
    }
}

TEST_CASE("the squared-differential coupling on quasi-elementary forms") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const Field f = all_fields()[seed % 3];
        const auto d = random_instance(seed * 97, 10, f);
        const auto dq = reduce_quasi_elementary(d).output;
        const auto sig = signature_of_quasi(dq);
        for (const auto& [q, r] : sig.blocks.qr)
            for (const auto& [y, z] : sig.blocks.yz) {
                if (d.triple().degree(y) != d.triple().degree(q) + 1) continue;
                CHECK(dq.entry(q, y) == -dq.entry(r, z));
            }
    }
}

TEST_CASE("weakly equivalent inputs minimize to similar outputs") {
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        const Field f = all_fields()[seed % 3];
        const auto d = random_instance(seed * 53, 9, f);
        const auto base = minimize(d).output;
        const auto g = random_weak_staying_in_d(d, seed + 400);
        const auto other = minimize(conjugate(d, g)).output;
        CHECK(similar(base, other));
    }
}

TEST_CASE("minimize preserves the invariant signature") {
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        const Field f = all_fields()[seed % 3];
        const auto d = random_instance(seed * 71, 9, f);
        CHECK(invariant_signature(minimize(d).output) == invariant_signature(d));
    }
}

#include <doctest.h>

#include <algorithm>

#include "common.hpp"

using namespace mpair;
using namespace mpair::testing;

namespace {

std::vector<std::string> labels_of(const MDifferential& d) { return canonical_form(d).labels; }

// single boundary element at degree 0 / single interior element at degree 1
MDifferential circle_b(Field f, const std::string& id = "p") {
    return MDifferential::zero(OrderedTriple({{id, 0, Side::boundary, false}}), f);
}
MDifferential circle_i(Field f, const std::string& id = "x") {
    return MDifferential::zero(OrderedTriple({{id, 1, Side::interior, false}}), f);
}

// the h+ bridge piece: ∂x = p, p not in C
MDifferential bridge(Field f) {
    OrderedTriple t({{"hp", 0, Side::boundary, false}, {"hx", 1, Side::interior, false}});
    Matrix m(f, 2, 2);
    m.set(0, 1, c_int(f, 1));
    return MDifferential(t, m);
}

} // namespace

TEST_CASE("direct sum splitting and reassembly") {
    const auto min1 = minimize(e1()).output;
    const auto split = split_direct_sum(min1);
    REQUIRE(split.parts.size() == 2);
    CHECK(split.parts[0] == std::vector<std::size_t>{0, 2});
    CHECK(split.parts[1] == std::vector<std::size_t>{1, 3});
    CHECK(equal(reassemble(split), min1));

    CHECK(split_direct_sum(e2()).parts.size() == 1);

    OrderedTriple t({{"a", 0, Side::interior, false},
                     {"b", 1, Side::interior, false},
                     {"c", 0, Side::interior, false}});
    const auto z = MDifferential::zero(t, Field::gf(2));
    CHECK(split_direct_sum(z).parts.size() == 3);

    // interleaved summands reassemble exactly
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto d = random_instance(seed * 67, 10, all_fields()[seed % 3]);
        CHECK(equal(reassemble(split_direct_sum(d)), d));
    }
}

TEST_CASE("graph vertices and edges of the worked examples") {
    const auto m2 = minimize(e2()).output;
    const auto sig2 = signature_of_quasi(m2);
    const auto cp2 = CPairTable::from(m2.triple());
    const auto g2 = build_graph(m2, sig2, cp2);
    REQUIRE(g2.vertices.size() == 2);
    CHECK(g2.vertices[0].family == VertexFamily::p_single);
    CHECK(g2.vertices[0].flag1);  // c1 ∈ C
    CHECK(g2.vertices[0].flag2);  // c1 ∈ H
    CHECK(g2.vertices[1].family == VertexFamily::x_single);
    CHECK(g2.vertices[1].flag1);  // p2 ∈ C+
    CHECK(g2.vertices[1].flag2);  // p2 ∈ h+(H)
    CHECK(g2.edges.size() == 1);

    const auto m3 = minimize(e3()).output;
    const auto g3 = build_graph(m3, signature_of_quasi(m3), CPairTable::from(m3.triple()));
    REQUIRE(g3.vertices.size() == 2);
    CHECK(g3.vertices[0].family == VertexFamily::qr_pair);
    CHECK(g3.vertices[1].family == VertexFamily::x_single);
    CHECK(g3.edges.empty());

    CHECK_THROWS_AS(build_graph(e3(), signature_of_quasi(e3()), CPairTable::from(e3().triple())),
                    std::domain_error);  // not minimal
}

TEST_CASE("a zero differential decomposes into singletons only") {
    const auto z = MDifferential::zero(e1().triple(), Field::gf(2));
    const auto canon = canonical_form(z);
    CHECK(canon.labels ==
          std::vector<std::string>{"L_I(0)", "L_I(0)", "R_B(0)", "R_B(0)"});
    const auto sig = signature_of_quasi(canon.minimal);
    const auto g = build_graph(canon.minimal, sig, CPairTable::from(z.triple()));
    CHECK(g.vertices.size() == 4);
    CHECK(g.edges.empty());
}

TEST_CASE("the empty pair is valid and decomposes into nothing") {
    const auto empty = make_l(0, Field::gf(2));
    CHECK(validate(empty).ok());
    CHECK(canonical_form(empty).labels.empty());
    CHECK(split_direct_sum(empty).parts.empty());
}

TEST_CASE("canonical labels of the worked examples") {
    for (Field f : all_fields()) {
        CAPTURE(f.str());
        CHECK(labels_of(e1(f)) == std::vector<std::string>{"LR(0,1)", "LR(1,0)"});
        CHECK(labels_of(e2(f)) == std::vector<std::string>{"CP"});
        CHECK(labels_of(e3(f)) == std::vector<std::string>{"LR(1,0)", "L_I(0)"});
    }
}

TEST_CASE("sharp: identity, the CP instance, associativity") {
    const Field f = Field::gf(2);
    const auto empty = make_l(0, f);
    CHECK(empty.size() == 0);
    CHECK(equal(sharp(e1(f), empty), e1(f)));
    CHECK(equal(sharp(empty, e1(f)), e1(f)));

    // one boundary element # one interior element = the CP instance up to ids
    const auto cp = sharp(circle_b(f), circle_i(f));
    CHECK(equal(cp, e2(f)));
    CHECK(labels_of(cp) == std::vector<std::string>{"CP"});

    // associativity on three composable pieces
    const auto m1 = make_l(1, f);
    const auto mid = bridge(f);
    const auto m3 = make_r(1, f);
    const auto left = sharp(sharp(m1, mid), m3);
    const auto right = sharp(m1, sharp(mid, m3));
    CHECK(equal(left, right));
}

TEST_CASE("sharp rejects each named precondition violation") {
    const Field f = Field::gf(2);
    CHECK_THROWS_WITH_AS(sharp(e2(f), e2(Field::gf(5))), "sharp: coefficient fields differ",
                         std::domain_error);
    CHECK_THROWS_AS(sharp(e2(f), e2(f)), std::domain_error);  // shared ids
    // top of the right operand must be interior
    CHECK_THROWS_AS(sharp(circle_b(f, "u"), circle_b(f, "v")), std::domain_error);
    // bottom of the left operand must be boundary
    CHECK_THROWS_AS(sharp(circle_i(f, "u"), circle_i(f, "v")), std::domain_error);
    // degree gap must be exactly one
    OrderedTriple t({{"w", 2, Side::interior, false}});
    CHECK_THROWS_AS(sharp(circle_b(f), MDifferential::zero(t, f)), std::domain_error);
    // bottom of the left operand must avoid C
    CHECK_THROWS_AS(sharp(e2(f), circle_i(f)), std::domain_error);
}

TEST_CASE("templates are fixed points of minimize and classify to their own labels") {
    for (Field f : all_fields()) {
        CAPTURE(f.str());
        for (std::size_t k = 1; k <= 5; ++k) {
            const auto lk = make_l(k, f);
            CHECK(validate(lk).ok());
            const auto res = minimize(lk);
            CHECK(equal(res.output, lk));
            CHECK(labels_of(lk) == std::vector<std::string>{"LR(" + std::to_string(k) + ",0)"});

            const auto rk = make_r(k, f);
            CHECK(validate(rk).ok());
            CHECK(equal(minimize(rk).output, rk));
            CHECK(labels_of(rk) == std::vector<std::string>{"LR(0," + std::to_string(k) + ")"});
        }
    }
}

TEST_CASE("sharp compositions realize the whole label grammar") {
    const Field f = Field::gf(5);
    for (std::size_t k = 1; k <= 3; ++k)
        for (std::size_t l = 1; l <= 3; ++l) {
            const auto d = sharp(make_l(k, f), make_r(l, f));
            CHECK(labels_of(d) == std::vector<std::string>{
                                      "LR(" + std::to_string(k) + "," + std::to_string(l) + ")"});
        }
    for (std::size_t k = 0; k <= 3; ++k) {
        const auto d = sharp(make_l(k, f), circle_i(f));
        CHECK(labels_of(d) == std::vector<std::string>{"L_I(" + std::to_string(k) + ")"});
    }
    for (std::size_t l = 0; l <= 3; ++l) {
        const auto d = sharp(circle_b(f), make_r(l, f));
        CHECK(labels_of(d) == std::vector<std::string>{"R_B(" + std::to_string(l) + ")"});
    }
    for (std::size_t k = 0; k <= 2; ++k)
        for (std::size_t l = 0; l <= 2; ++l) {
            const auto d = sharp(make_l(k, f), sharp(bridge(f), make_r(l, f)));
            CHECK(labels_of(d) == std::vector<std::string>{
                                      "LCR(" + std::to_string(k) + "," + std::to_string(l) + ")"});
        }
}

TEST_CASE("the double vertical C-pair") {
    for (Field f : all_fields()) {
        CAPTURE(f.str());
        OrderedTriple t({{"r", 0, Side::boundary, true},
                         {"z", 1, Side::interior, false},
                         {"q", 1, Side::boundary, true},
                         {"y", 2, Side::interior, false}});
        Matrix m(f, 4, 4);
        m.set(0, 1, c_int(f, -1));  // ∂z = -r
        m.set(0, 2, c_int(f, 1));   // ∂q = r
        m.set(1, 3, c_int(f, 1));   // ∂y = z + q
        m.set(2, 3, c_int(f, 1));
        const MDifferential d(t, m);
        REQUIRE(validate(d).ok());
        CHECK(labels_of(d) == std::vector<std::string>{"CP2"});
    }
}

TEST_CASE("labels are invariant under library-built weak conjugation") {
    const Field f = Field::gf(2);
    for (std::size_t k = 1; k <= 4; ++k) {
        const auto d = make_l(k, f);
        const auto base = labels_of(d);
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            const auto g = random_weak_staying_in_d(d, seed * 13 + k);
            CHECK(labels_of(conjugate(d, g)) == base);
        }
    }
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        const Field fld = all_fields()[seed % 3];
        const auto d = random_instance(seed * 29, 9, fld);
        const auto base = labels_of(d);
        for (std::uint64_t g_seed = 0; g_seed < 5; ++g_seed) {
            const auto g = random_weak_staying_in_d(d, seed * 1000 + g_seed);
            CHECK(labels_of(conjugate(d, g)) == base);
        }
    }
}

TEST_CASE("summands of the canonical form are indecomposable") {
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        const auto d = random_instance(seed * 911, 10, all_fields()[seed % 3]);
        const auto canon = canonical_form(d);
        CHECK(equal(conjugate(d, canon.witness), canon.minimal));
        const auto split = split_direct_sum(canon.minimal);
        for (const auto& summand : split.summands)
            CHECK(split_direct_sum(summand).parts.size() == 1);
        CHECK(canon.components.size() == split.parts.size());
    }
}

TEST_CASE("valency bounds hold on random minimal differentials") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto d = random_instance(seed * 113, 10, all_fields()[seed % 3]);
        const auto canon = canonical_form(d);
        const auto sig = signature_of_quasi(canon.minimal);
        const auto cp = CPairTable::from(canon.minimal.triple());
        const auto g = build_graph(canon.minimal, sig, cp);
        std::map<std::size_t, std::size_t> valency;
        for (const auto& e : g.edges) {
            ++valency[e.first];
            ++valency[e.second];
        }
        for (const auto& [v, count] : valency) CHECK(count <= 2);
    }
}

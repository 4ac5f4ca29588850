#include <doctest.h>

#include <set>
#include <vector>

#include "mubkit/errors.hpp"
#include "mubkit/field.hpp"

using mubkit::Field;
using mubkit::FieldElement;

namespace {

std::vector<Field> all_fields() {
    return {Field(2, 1), Field(3, 1), Field(2, 2), Field(5, 1),
            Field(7, 1), Field(2, 3), Field(3, 2)};
}

}  // namespace

TEST_CASE("GF(4) multiplication follows x^2 = x + 1") {
    // With modulus x^2+x+1 and low-first digit indexing, index 2 is x and
    // index 3 is x+1: x*x = x+1 and x*(x+1) = x^2+x = 1.
    const Field f(2, 2);
    CHECK((f.element(2) * f.element(2)).index() == 3);
    CHECK((f.element(2) * f.element(3)).index() == 1);
    CHECK((f.element(3) * f.element(3)).index() == 2);  // (x+1)^2 = x^2+1 = x
}

TEST_CASE("GF(4) trace values") {
    // tr(a) = a + a^2: tr(0)=0, tr(1)=1+1=0, tr(x)=x+x+1=1, tr(x+1)=1.
    const Field f(2, 2);
    CHECK(f.element(0).trace() == 0);
    CHECK(f.element(1).trace() == 0);
    CHECK(f.element(2).trace() == 1);
    CHECK(f.element(3).trace() == 1);
}

TEST_CASE("GF(5) smallest primitive root is 2") {
    const Field f(5, 1);
    CHECK(f.primitive_element().index() == 2);
    // Powers of 2 mod 5: 2, 4, 3, 1.
    CHECK(f.primitive_element().pow(2).index() == 4);
    CHECK(f.primitive_element().pow(3).index() == 3);
    CHECK(f.primitive_element().pow(4).index() == 1);
}

TEST_CASE("pinned moduli for extension fields") {
    CHECK(Field(2, 2).modulus() == std::vector<int>{1, 1, 1});      // x^2+x+1
    CHECK(Field(2, 3).modulus() == std::vector<int>{1, 1, 0, 1});    // x^3+x+1
    CHECK(Field(3, 2).modulus() == std::vector<int>{2, 2, 1});       // x^2+2x+2
}

TEST_CASE("field axioms hold exhaustively in every supported field") {
    for (const Field &f : all_fields()) {
        CAPTURE(f.q());
        const auto elems = f.elements();
        for (const auto &a : elems) {
            CHECK((a + f.zero()).index() == a.index());
            CHECK((a * f.one()).index() == a.index());
            CHECK((a + (-a)).is_zero());
            CHECK((a * f.zero()).is_zero());
            if (!a.is_zero()) {
                CHECK((a * a.inverse()).index() == 1);
                CHECK((a / a).index() == 1);
            }
            for (const auto &b : elems) {
                CHECK((a + b).index() == (b + a).index());
                CHECK((a * b).index() == (b * a).index());
                for (const auto &c : elems) {
                    CHECK(((a + b) + c).index() == (a + (b + c)).index());
                    CHECK(((a * b) * c).index() == (a * (b * c)).index());
                    CHECK((a * (b + c)).index() == (a * b + a * c).index());
                }
            }
        }
        // Characteristic p: adding 1 to itself p times reaches 0.
        FieldElement sum = f.zero();
        for (int i = 0; i < f.p(); ++i) sum = sum + f.one();
        CHECK(sum.is_zero());
    }
}

TEST_CASE("Frobenius is additive and trace behaves") {
    for (const Field &f : all_fields()) {
        CAPTURE(f.q());
        std::vector<int> trace_counts(f.p(), 0);
        for (const auto &a : f.elements()) {
            ++trace_counts[a.trace()];
            CHECK(a.pow(f.p()).field() == f);
            CHECK(a.trace() == a.pow(f.p()).trace());  // tr(a^p) = tr(a)
            for (const auto &b : f.elements()) {
                CHECK((a + b).pow(f.p()).index() == (a.pow(f.p()) + b.pow(f.p())).index());
                CHECK((a + b).trace() == (a.trace() + b.trace()) % f.p());
            }
        }
        // The trace maps onto the prime subfield, hitting each value q/p times.
        for (int v = 0; v < f.p(); ++v) CHECK(trace_counts[v] == f.q() / f.p());
    }
}

TEST_CASE("multiplicative generator has order q-1") {
    for (const Field &f : all_fields()) {
        CAPTURE(f.q());
        const FieldElement g = f.primitive_element();
        std::set<int> seen;
        FieldElement power = f.one();
        for (int e = 0; e < f.q() - 1; ++e) {
            seen.insert(power.index());
            power = power * g;
        }
        CHECK(power.index() == 1);  // g^{q-1} = 1
        CHECK(static_cast<int>(seen.size()) == f.q() - 1);
    }
}

TEST_CASE("constructor rejections") {
    CHECK_THROWS_AS(Field(4, 1), mubkit::NonPrime);
    CHECK_THROWS_AS(Field(6, 2), mubkit::NonPrime);
    CHECK_THROWS_AS(Field(1, 1), mubkit::NonPrime);
    // x^2 + 1 = (x+1)^2 over F_2.
    CHECK_THROWS_AS(Field(2, 2, std::vector<int>{1, 0, 1}), mubkit::ReducibleModulus);
    CHECK_THROWS_AS(Field(2, 1).one() / Field(2, 1).zero(), mubkit::DivisionByZero);
    CHECK_THROWS_AS(Field(2, 1).zero().inverse(), mubkit::DivisionByZero);
}

TEST_CASE("structural field equality") {
    CHECK(Field(3, 1) == Field(3, 1));
    CHECK(Field(3, 2) == Field(3, 2, std::vector<int>{2, 2, 1}));
    // x^2 + 1 is irreducible over F_3 and gives a different element labeling.
    CHECK(Field(3, 2) != Field(3, 2, std::vector<int>{1, 0, 1}));
    CHECK(Field(2, 1) != Field(3, 1));
}

TEST_CASE("mixing fields is rejected") {
    CHECK_THROWS_AS(Field(2, 1).one() + Field(3, 1).one(), mubkit::FieldMismatch);
    CHECK_THROWS_AS(Field(3, 2).one() * Field(3, 2, std::vector<int>{1, 0, 1}).one(),
                    mubkit::FieldMismatch);
}

TEST_CASE("rays partition the nonzero labels") {
    for (const Field &f : all_fields()) {
        CAPTURE(f.q());
        const auto rays = mubkit::rays(f);
        REQUIRE(static_cast<int>(rays.size()) == f.q() + 1);
        // First ray is (0, 1), the rest are (1, s) in element order.
        CHECK(rays[0].representative.u1.is_zero());
        CHECK(rays[0].representative.u2.index() == 1);
        for (int r = 1; r <= f.q(); ++r) {
            CHECK(rays[r].representative.u1.index() == 1);
            CHECK(rays[r].representative.u2.index() == r - 1);
        }
        std::set<std::pair<int, int>> nonzero_points;
        for (const auto &ray : rays) {
            REQUIRE(static_cast<int>(ray.points.size()) == f.q());
            CHECK(ray.points[0].is_zero());
            for (std::size_t i = 1; i < ray.points.size(); ++i)
                nonzero_points.insert({ray.points[i].u1.index(), ray.points[i].u2.index()});
        }
        CHECK(static_cast<int>(nonzero_points.size()) == f.q() * f.q() - 1);
    }
}

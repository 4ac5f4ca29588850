#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "mubkit/designs.hpp"
#include "mubkit/errors.hpp"
#include "mubkit/orbits.hpp"
#include "mubkit/states.hpp"

using namespace mubkit;
using cplx = std::complex<double>;

namespace {

StateSet simple_set(int q, std::vector<Eigen::VectorXcd> states) {
    StateSet set;
    set.q = q;
    set.states = std::move(states);
    return set;
}

Eigen::VectorXcd basis_state(int d, int k) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d);
    v(k) = 1.0;
    return v;
}

/// Multiplies every state by its own pseudorandom unit phase.
StateSet rephased(const StateSet &set, std::uint64_t seed) {
    StateSet out = set;
    std::mt19937_64 gen(seed);
    for (auto &psi : out.states) {
        const double angle = (static_cast<double>(gen() >> 11) * 0x1.0p-53) * 6.283185307179586;
        psi *= std::polar(1.0, angle);
    }
    return out;
}

GroupTable displacement_only_table(const Field &f) {
    GroupTable table{f, {}, {}, {}, {}};
    for (const auto &a : f.elements()) {
        for (const auto &b : f.elements()) {
            CliffordElement el{phase_normalized(displacement(PhasePoint{a, b}).matrix),
                               SL2Matrix::identity(f),
                               PhasePoint{a, b},
                               {},
                               Hash128{}};
            el.fingerprint = unitary_fingerprint(el.unitary);
            table.elements.push_back(std::move(el));
        }
    }
    return table;
}

}  // namespace

TEST_CASE("swap and symmetric projector identities") {
    for (int d : {2, 3, 4}) {
        const Eigen::MatrixXcd s = swap_operator(d);
        const Eigen::MatrixXcd p = symmetric_projector(d);
        CHECK((s * s - Eigen::MatrixXcd::Identity(d * d, d * d)).cwiseAbs().maxCoeff() == 0.0);
        CHECK((p * p - p).cwiseAbs().maxCoeff() < 1e-15);
        CHECK(std::abs(p.trace().real() - d * (d + 1) / 2.0) < 1e-12);
    }
}

TEST_CASE("unbiased bases and the fiducial orbit are projective 2-designs") {
    for (const Field &f : {Field(2, 1), Field(3, 1), Field(2, 2), Field(5, 1)}) {
        CAPTURE(f.q());
        const DesignReport report = check_2design(canonical_mub(f));
        CHECK(report.pass);
        CHECK(report.residual < 1e-9);
        CHECK(report.details.at("constant").get<double>() == doctest::Approx(2.0));
    }
    const DesignReport hesse = check_2design(hesse_sic());
    CHECK(hesse.pass);
    CHECK(hesse.details.at("constant").get<double>() == doctest::Approx(1.5));
}

TEST_CASE("a single state is never a 2-design") {
    for (int d : {2, 3}) {
        const DesignReport report = check_2design(simple_set(d, {basis_state(d, 0)}));
        CHECK_FALSE(report.pass);
        CHECK(report.residual >= 1.0 / (d * (d + 1.0)) - 1e-12);
    }
}

TEST_CASE("sic test demands exactly d^2 states and flat overlaps") {
    const DesignReport hesse = check_sic(hesse_sic());
    CHECK(hesse.pass);
    CHECK(hesse.residual < 1e-9);

    // Six states cannot be a d=2 sic.
    const DesignReport mub2 = check_sic(canonical_mub(Field(2, 1)));
    CHECK_FALSE(mub2.pass);
    CHECK(mub2.details.at("reason") == "CountMismatch");

    // Right count, wrong geometry: an orthogonal pair has overlap 0, not 1/3.
    std::mt19937_64 gen(5);
    StateSet bad = simple_set(2, {basis_state(2, 0), basis_state(2, 1),
                                  haar_random_state(2, gen), haar_random_state(2, gen)});
    const DesignReport report = check_sic(bad);
    CHECK_FALSE(report.pass);
    CHECK(report.residual >= 1.0 / 3 - 1e-12);
}

TEST_CASE("mutual unbiasedness checks grouping, orthonormality, and cross overlaps") {
    const StateSet mub5 = canonical_mub(Field(5, 1));
    const DesignReport full = check_mub(mub5);
    CHECK(full.pass);
    CHECK(full.details.at("bases") == 6);
    CHECK(full.details.at("complete") == true);

    // Deleting a basis keeps unbiasedness but flags incompleteness.
    const StateSet mub2 = canonical_mub(Field(2, 1));
    StateSet partial;
    partial.q = 2;
    for (int b = 0; b < 2; ++b) {
        std::vector<int> group;
        for (int idx : mub2.groups[b]) {
            group.push_back(static_cast<int>(partial.states.size()));
            partial.states.push_back(mub2.states[idx]);
        }
        partial.groups.push_back(group);
    }
    const DesignReport trimmed = check_mub(partial);
    CHECK(trimmed.pass);
    CHECK(trimmed.details.at("complete") == false);

    // Two copies of one basis fail: cross overlap 1 instead of 1/d.
    StateSet doubled = partial;
    doubled.states[2] = doubled.states[0];
    doubled.states[3] = doubled.states[1];
    const DesignReport collision = check_mub(doubled);
    CHECK_FALSE(collision.pass);
    CHECK(collision.residual > 0.4);

    // Ungrouped input is a structural error.
    CHECK_THROWS_AS(check_mub(hesse_sic()), BadGrouping);
    StateSet ragged = partial;
    ragged.groups[1].pop_back();
    CHECK_THROWS_AS(check_mub(ragged), BadGrouping);
}

TEST_CASE("frame test measures the projector sum") {
    const DesignReport mub3 = check_tight_frame(canonical_mub(Field(3, 1)));
    CHECK(mub3.pass);
    CHECK(mub3.details.at("frame_constant").get<double>() == doctest::Approx(4.0));

    const DesignReport hesse = check_tight_frame(hesse_sic());
    CHECK(hesse.pass);
    CHECK(hesse.details.at("frame_constant").get<double>() == doctest::Approx(3.0));

    const DesignReport lopsided = check_tight_frame(
        simple_set(2, {basis_state(2, 0), basis_state(2, 1), basis_state(2, 0)}));
    CHECK_FALSE(lopsided.pass);
    CHECK(lopsided.residual == doctest::Approx(0.5));  // diag(2,1) vs 1.5 I
}

TEST_CASE("every check is phase invariant") {
    const StateSet mub = canonical_mub(Field(3, 1));
    const StateSet shifted = rephased(mub, 17);
    CHECK(std::abs(check_2design(mub).residual - check_2design(shifted).residual) < 1e-10);
    CHECK(std::abs(check_mub(mub).residual - check_mub(shifted).residual) < 1e-10);
    CHECK(std::abs(check_tight_frame(mub).residual - check_tight_frame(shifted).residual) < 1e-10);
    const StateSet sic = hesse_sic();
    const StateSet sic_shifted = rephased(sic, 23);
    CHECK(std::abs(check_sic(sic).residual - check_sic(sic_shifted).residual) < 1e-10);
    CHECK(check_2design(sic_shifted).pass);
}

TEST_CASE("global rotation preserves every certification") {
    // Conjugating the whole set by one unitary changes no Gram entry.
    const StateSet mub = canonical_mub(Field(2, 2));
    std::mt19937_64 gen(31);
    Eigen::MatrixXcd m(4, 4);
    for (int i = 0; i < 4; ++i) m.col(i) = haar_random_state(4, gen);
    const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m);
    const Eigen::MatrixXcd u = qr.householderQ();
    StateSet rotated = mub;
    for (auto &psi : rotated.states) psi = u * psi;
    CHECK(check_mub(rotated).pass);
    CHECK(check_2design(rotated).pass);
    CHECK(check_tight_frame(rotated).pass);
}

TEST_CASE("lower bound: passing 2-designs need at least d^2 states") {
    // Constructed designs: the minimal one is exactly the sic case.
    const StateSet sets[] = {canonical_mub(Field(2, 1)), canonical_mub(Field(3, 1)),
                             canonical_mub(Field(2, 2)), hesse_sic()};
    for (const StateSet &set : sets) {
        const DesignReport d2 = check_2design(set);
        REQUIRE(d2.pass);
        const int d = set.dim();
        CHECK(static_cast<int>(set.size()) >= d * d);
        if (static_cast<int>(set.size()) == d * d) CHECK(check_sic(set).pass);
        else CHECK_FALSE(check_sic(set).pass);
    }

    // Random sets never certify: 100 draws in dimension 3.
    std::mt19937_64 gen(47);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Eigen::VectorXcd> states;
        const int count = 5 + static_cast<int>(gen() % 8);
        for (int i = 0; i < count; ++i) states.push_back(haar_random_state(3, gen));
        CHECK_FALSE(check_2design(simple_set(3, std::move(states))).pass);
    }
}

TEST_CASE("group frame potential reaches the Haar floor") {
    const GroupTable table2 = enumerate_group(Field(2, 1));
    const PotentialResult p2 = unitary_2design_potential(table2);
    CHECK(std::abs(p2.value - 2.0) < 1e-9);
    CHECK(p2.pairs == 24u * 24u);
    CHECK_FALSE(p2.sampled);

    const GroupTable table3 = enumerate_group(Field(3, 1));
    CHECK(std::abs(unitary_2design_potential(table3).value - 2.0) < 1e-9);

    // The displacement collineations alone are only a 1-design: their
    // potential is d^2, far above the floor.
    const PotentialResult hw = unitary_2design_potential(displacement_only_table(Field(3, 1)));
    CHECK(std::abs(hw.value - 9.0) < 1e-9);
    CHECK(hw.value > 2.0);
}

TEST_CASE("sampled potential is reproducible and consistent") {
    const GroupTable table = enumerate_group(Field(3, 1));
    const PotentialResult a = unitary_2design_potential(table, true, 20000, 99);
    const PotentialResult b = unitary_2design_potential(table, true, 20000, 99);
    CHECK(a.value == b.value);
    CHECK(a.std_error == b.std_error);
    CHECK(a.sampled);
    CHECK(a.std_error > 0.0);
    CHECK(std::abs(a.value - 2.0) <= 5 * a.std_error);
}

TEST_CASE("exhaustive potential refuses oversized tables") {
    const GroupTable big = displacement_only_table(Field(7, 1));
    CHECK_THROWS_AS(unitary_2design_potential(big), TooLarge);
    CHECK_THROWS_AS(twirl_residual(big), TooLarge);
    // Sampled mode handles the same table.
    const PotentialResult sampled = unitary_2design_potential(big, true, 5000, 3);
    CHECK(sampled.sampled);
    CHECK(sampled.value > 2.0);
}

TEST_CASE("the group twirl matches the Haar twirl on every matrix unit") {
    CHECK(twirl_residual(enumerate_group(Field(2, 1))) < 1e-9);
    CHECK(twirl_residual(enumerate_group(Field(3, 1))) < 1e-9);
    // Displacements alone twirl incorrectly.
    CHECK(twirl_residual(displacement_only_table(Field(2, 1))) > 0.01);
}

TEST_CASE("dimension mismatches are rejected") {
    StateSet bad;
    bad.q = 2;
    bad.states = {basis_state(2, 0), basis_state(3, 0)};
    CHECK_THROWS_AS(check_2design(bad), DimensionMismatch);
    CHECK_THROWS_AS(check_tight_frame(bad), DimensionMismatch);
    StateSet empty;
    empty.q = 2;
    CHECK_THROWS_AS(check_2design(empty), DomainError);
}

#include <doctest.h>

#include <complex>
#include <vector>

#include "mubkit/displacement.hpp"
#include "mubkit/errors.hpp"

using namespace mubkit;
using cplx = std::complex<double>;

namespace {

std::vector<Field> all_fields() {
    return {Field(2, 1), Field(3, 1), Field(2, 2), Field(5, 1),
            Field(7, 1), Field(2, 3), Field(3, 2)};
}

std::vector<PhasePoint> all_points(const Field &f) {
    std::vector<PhasePoint> pts;
    for (const auto &a : f.elements())
        for (const auto &b : f.elements()) pts.push_back(PhasePoint{a, b});
    return pts;
}

double max_abs(const Eigen::MatrixXcd &m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("tau and omega") {
    for (int p : {2, 3, 5, 7}) {
        CAPTURE(p);
        const PhaseRing ring(p);
        CHECK(std::abs(ring.tau_pow(1) * ring.tau_pow(1) - ring.omega()) < 1e-15);
        CHECK(std::abs(ring.tau_pow(2 * p) - 1.0) < 1e-15);
        CHECK(std::abs(ring.tau_pow(-1) - ring.tau_pow(2 * p - 1)) < 1e-15);
        // tau = -exp(i pi / p) has order p when p is odd and 4 when p = 2.
        if (p == 2) {
            CHECK(std::abs(ring.tau() - cplx(0, -1)) < 1e-15);
            CHECK(std::abs(ring.tau_pow(2) + 1.0) < 1e-15);
        } else {
            CHECK(std::abs(ring.tau_pow(p) - 1.0) < 1e-15);
        }
    }
}

TEST_CASE("qubit displacement with label (1,1) is the antisymmetric Pauli") {
    const Field f(2, 1);
    const Displacement d = displacement(PhasePoint{f.one(), f.one()});
    Eigen::MatrixXcd pauli_y(2, 2);
    pauli_y << cplx(0, 0), cplx(0, 1), cplx(0, -1), cplx(0, 0);
    CHECK(max_abs(d.matrix - pauli_y) < 1e-15);
    CHECK(d.phase_exp == 1);
}

TEST_CASE("GF(4) phase operator of the generator element") {
    // Z_x = diag(omega^{tr(x * e)}) over e in index order; with omega = -1
    // and traces (0, 1, 1, 0) this is diag(1, -1, -1, 1).
    const Field f(2, 2);
    const Eigen::MatrixXcd z = phase_matrix(f.element(2));
    Eigen::VectorXcd expected(4);
    expected << 1, -1, -1, 1;
    CHECK(max_abs(z - Eigen::MatrixXcd(expected.asDiagonal())) < 1e-15);
}

TEST_CASE("shift acts by addition") {
    for (const Field &f : all_fields()) {
        CAPTURE(f.q());
        for (const auto &u : f.elements()) {
            const Eigen::MatrixXcd x = shift_matrix(u);
            for (const auto &v : f.elements()) {
                Eigen::VectorXcd basis = Eigen::VectorXcd::Zero(f.q());
                basis((v).index()) = 1.0;
                Eigen::VectorXcd shifted = x * basis;
                CHECK(std::abs(shifted((u + v).index()) - 1.0) < 1e-15);
                CHECK(std::abs(shifted.norm() - 1.0) < 1e-15);
            }
        }
    }
}

TEST_CASE("Weyl commutation holds exhaustively") {
    for (const Field &f : all_fields()) {
        CAPTURE(f.q());
        const PhaseRing ring(f.p());
        const auto points = all_points(f);
        std::vector<Displacement> ds;
        for (const auto &u : points) ds.push_back(displacement(u));
        for (const auto &du : ds) {
            for (const auto &dv : ds) {
                const int form = symplectic_form(du.point, dv.point);
                const Eigen::MatrixXcd lhs = du.matrix * dv.matrix;
                const Eigen::MatrixXcd rhs = ring.omega_pow(form) * (dv.matrix * du.matrix);
                CHECK(max_abs(lhs - rhs) < 1e-13);
            }
        }
    }
}

TEST_CASE("composition phase is an exact tau power") {
    for (const Field &f : all_fields()) {
        CAPTURE(f.q());
        const PhaseRing ring(f.p());
        const auto points = all_points(f);
        for (const auto &u : points) {
            for (const auto &v : points) {
                const Displacement du = displacement(u);
                const Displacement dv = displacement(v);
                const Displacement dw = displacement(u + v);
                const int e = product_phase_exp(u, v);
                CHECK(max_abs(du.matrix * dv.matrix - ring.tau_pow(e) * dw.matrix) < 1e-13);
            }
        }
    }
}

TEST_CASE("displacements are unitary with involutive or p-fold order") {
    for (const Field &f : all_fields()) {
        CAPTURE(f.q());
        const Eigen::MatrixXcd identity = Eigen::MatrixXcd::Identity(f.q(), f.q());
        for (const auto &u : all_points(f)) {
            const Displacement d = displacement(u);
            CHECK(max_abs(d.matrix * d.matrix.adjoint() - identity) < 1e-14);
            // D_u^p = I for odd p; the tau convention makes D_u^2 = I at p=2.
            Eigen::MatrixXcd power = identity;
            const int order = f.p() == 2 ? 2 : f.p();
            for (int k = 0; k < order; ++k) power = d.matrix * power;
            CHECK(max_abs(power - identity) < 1e-13);
        }
    }
}

TEST_CASE("zero label gives the identity") {
    for (const Field &f : all_fields()) {
        const Displacement d = displacement(PhasePoint{f.zero(), f.zero()});
        CHECK(max_abs(d.matrix - Eigen::MatrixXcd::Identity(f.q(), f.q())) == 0.0);
    }
}

TEST_CASE("symplectic form is antisymmetric and nondegenerate") {
    for (const Field &f : all_fields()) {
        CAPTURE(f.q());
        const auto points = all_points(f);
        for (const auto &u : points) {
            bool pairs_with_someone = u.is_zero();
            for (const auto &v : points) {
                const int ab = symplectic_form(u, v);
                const int ba = symplectic_form(v, u);
                CHECK((ab + ba) % f.p() == 0);
                if (ab != 0) pairs_with_someone = true;
            }
            CHECK(pairs_with_someone);  // nondegeneracy
        }
    }
}

TEST_CASE("ray subgroups commute and follow the ray order") {
    for (const Field &f : all_fields()) {
        CAPTURE(f.q());
        for (const auto &ray : rays(f)) {
            const AbelianSubgroup sub = maximal_abelian_subgroup(ray);
            REQUIRE(static_cast<int>(sub.elements.size()) == f.q());
            CHECK(sub.elements[0].point.is_zero());
            for (const auto &a : sub.elements) {
                // Membership: every element's label lies on the ray.
                CHECK(symplectic_form(a.point, ray.representative) == 0);
                for (const auto &b : sub.elements)
                    CHECK(max_abs(a.matrix * b.matrix - b.matrix * a.matrix) < 1e-14);
            }
        }
    }
}

#include "mubkit/displacement.hpp"

#include <cmath>
#include <numbers>

namespace mubkit {

PhaseRing::PhaseRing(int p) : p_(p) {
    if (p < 2) throw DomainError("characteristic must be at least 2");
    powers_.resize(static_cast<std::size_t>(2 * p));
    // tau = -exp(i*pi/p) = exp(i*pi*(p+1)/p)
    for (int k = 0; k < 2 * p; ++k) {
        const double angle = std::numbers::pi * static_cast<double>((p + 1) * k % (2 * p)) / p;
        powers_[static_cast<std::size_t>(k)] = {std::cos(angle), std::sin(angle)};
    }
    powers_[0] = {1.0, 0.0};
}

std::complex<double> PhaseRing::tau_pow(int k) const {
    const int m = 2 * p_;
    return powers_[static_cast<std::size_t>(((k % m) + m) % m)];
}

Eigen::MatrixXcd shift_matrix(const FieldElement &u) {
    const Field f = u.field();
    const int q = f.q();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(q, q);
    for (int x = 0; x < q; ++x) m((f.element(x) + u).index(), x) = 1.0;
    return m;
}

Eigen::MatrixXcd phase_matrix(const FieldElement &u) {
    const Field f = u.field();
    const int q = f.q();
    const PhaseRing ring(f.p());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(q, q);
    for (int x = 0; x < q; ++x) m(x, x) = ring.omega_pow((u * f.element(x)).trace());
    return m;
}

Displacement displacement(const PhasePoint &u) {
    const Field f = u.u1.field();
    const int q = f.q();
    const PhaseRing ring(f.p());
    Displacement d;
    d.point = u;
    d.phase_exp = (u.u1 * u.u2).trace();
    d.matrix = Eigen::MatrixXcd::Zero(q, q);
    const std::complex<double> prefactor = ring.tau_pow(d.phase_exp);
    for (int x = 0; x < q; ++x) {
        const FieldElement xe = f.element(x);
        d.matrix((xe + u.u1).index(), x) = prefactor * ring.omega_pow((u.u2 * xe).trace());
    }
    return d;
}

int symplectic_form(const PhasePoint &u, const PhasePoint &v) {
    return (u.u2 * v.u1 - u.u1 * v.u2).trace();
}

int product_phase_exp(const PhasePoint &u, const PhasePoint &v) {
    // D_u D_v = tau^{L(u1 u2) + L(v1 v2) + 2 L(u2 v1) - L((u+v)_1 (u+v)_2)} D_{u+v}
    // with L the integer lift of the trace; exact mod 2p.
    const int p = u.u1.field().p();
    const PhasePoint w = u + v;
    const int e = (u.u1 * u.u2).trace() + (v.u1 * v.u2).trace() + 2 * (u.u2 * v.u1).trace() -
                  (w.u1 * w.u2).trace();
    const int m = 2 * p;
    return ((e % m) + m) % m;
}

AbelianSubgroup maximal_abelian_subgroup(const Ray &r) {
    AbelianSubgroup g;
    g.ray = r;
    g.elements.reserve(r.points.size());
    for (const auto &pt : r.points) g.elements.push_back(displacement(pt));
    return g;
}

}  // namespace mubkit

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "mubkit/field.hpp"

namespace mubkit {

/// The exact phases entering displacement operators in characteristic p:
/// omega = exp(2*pi*i/p) and tau = -exp(i*pi/p), with tau^2 = omega. tau has
/// order p for odd p and order 2p for p = 2, so every phase that appears in
/// displacement algebra is a power of tau with exponent mod 2p.
class PhaseRing {
  public:
    explicit PhaseRing(int p);

    int p() const { return p_; }
    std::complex<double> omega() const { return tau_pow(2); }
    std::complex<double> tau() const { return tau_pow(1); }
    /// tau^k, exponent reduced mod 2p. Accepts negative exponents.
    std::complex<double> tau_pow(int k) const;
    /// omega^k = tau^{2k}.
    std::complex<double> omega_pow(int k) const { return tau_pow(2 * (((k % p_) + p_) % p_)); }

  private:
    int p_;
    std::vector<std::complex<double>> powers_;  // tau^k for k in [0, 2p)
};

/// Cyclic shift by u: X_u |x> = |x + u>, basis ordered by element index.
Eigen::MatrixXcd shift_matrix(const FieldElement &u);

/// Diagonal phase by u: Z_u |x> = omega^{tr(u x)} |x>.
Eigen::MatrixXcd phase_matrix(const FieldElement &u);

/// A displacement operator D_u = tau^{tr(u1 u2)} X_{u1} Z_{u2} together with
/// its label and the exact integer exponent of its tau prefactor.
struct Displacement {
    PhasePoint point;
    int phase_exp = 0;  // tr(u1 u2) lifted to [0, p)
    Eigen::MatrixXcd matrix;
};

Displacement displacement(const PhasePoint &u);

/// Symplectic form <u, v> = tr(u2 v1 - u1 v2), lifted to [0, p). Governs the
/// commutation D_u D_v = omega^{<u,v>} D_v D_u.
int symplectic_form(const PhasePoint &u, const PhasePoint &v);

/// Exact tau exponent e (mod 2p) in the composition D_u D_v = tau^e D_{u+v}.
int product_phase_exp(const PhasePoint &u, const PhasePoint &v);

/// The q pairwise-commuting displacements labeled by the points of a ray:
/// a maximal abelian subgroup of the displacement group modulo phases.
/// Elements follow the ray's point order (identity first).
struct AbelianSubgroup {
    Ray ray;
    std::vector<Displacement> elements;
};

AbelianSubgroup maximal_abelian_subgroup(const Ray &r);

}  // namespace mubkit

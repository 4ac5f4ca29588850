#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mubkit/displacement.hpp"
#include "mubkit/gauge.hpp"

namespace mubkit {

/// An element of SL(2, q): [[alpha, beta], [gamma, delta]] with
/// alpha*delta - beta*gamma = 1. Acts on displacement labels by
/// u -> (alpha u1 + beta u2, gamma u1 + delta u2).
class SL2Matrix {
  public:
    /// Throws NotSL2 when the determinant is not one.
    SL2Matrix(const FieldElement &alpha, const FieldElement &beta, const FieldElement &gamma,
              const FieldElement &delta);

    static SL2Matrix identity(const Field &f);

    const FieldElement &alpha() const { return alpha_; }
    const FieldElement &beta() const { return beta_; }
    const FieldElement &gamma() const { return gamma_; }
    const FieldElement &delta() const { return delta_; }
    Field field() const { return alpha_.field(); }

    SL2Matrix operator*(const SL2Matrix &rhs) const;
    SL2Matrix inverse() const;
    PhasePoint apply(const PhasePoint &u) const;

    bool operator==(const SL2Matrix &rhs) const;
    bool operator!=(const SL2Matrix &rhs) const { return !(*this == rhs); }

    /// Packed index key (base-q digits), unique per element of SL(2, q).
    std::uint64_t key() const;

  private:
    FieldElement alpha_, beta_, gamma_, delta_;
};

/// Two generators of SL(2, q): diag(nu, nu^-1) and [[-1, 1], [-1, 0]] for
/// q > 3 (nu the smallest multiplicative generator), and the transvection
/// [[1, 1], [0, 1]] with the inversion [[0, 1], [-1, 0]] for q in {2, 3}.
std::pair<SL2Matrix, SL2Matrix> sl2_generators(const Field &f);

/// Closed-form unitary with symplectic label F, odd characteristic only
/// (throws EvenCharacteristic for p = 2):
///   beta = 0:  sum_x |alpha x> tau^{tr(alpha gamma x^2)} <x|
///   else:      q^{-1/2} sum_{x,y} |x> tau^{tr(beta^{-1}(alpha y^2 - 2xy + delta x^2))} <y|
/// Satisfies U D_u U^dag = D_{Fu} exactly (no extra phase).
Eigen::MatrixXcd appleby_unitary(const SL2Matrix &f);

/// Any characteristic: finds the unitary with symplectic label F as the
/// one-dimensional joint solution space of the intertwining relations
/// U D_v = c_v D_{Fv} U over a basis of displacement labels, searching the
/// unknown phases c_v over 2p-th roots of unity depth-first (so the all-ones
/// assignment is tried first and, in odd characteristic, reproduces the
/// closed form up to global phase). The result is phase-normalized and the
/// full conjugation property is verified before returning.
/// Throws SynthesisFailed if no assignment works.
Eigen::MatrixXcd synthesize_unitary(const SL2Matrix &f);

/// appleby_unitary in odd characteristic, synthesize_unitary otherwise.
Eigen::MatrixXcd clifford_unitary(const SL2Matrix &f);

/// Result of matching a matrix against the displacement family: m is
/// phase * D_label with the given residual.
struct DisplacementImage {
    PhasePoint label;
    std::complex<double> phase;
    double residual = 0.0;
};

/// Identifies m as a unit phase times a displacement operator, or nullopt if
/// no label matches within tol.
std::optional<DisplacementImage> match_displacement(const Eigen::MatrixXcd &m, const Field &f,
                                                    double tol = 1e-8);

/// Recovers the symplectic label of a unitary from its conjugation action on
/// the displacements labeled by a basis of F_q^2 over F_p, verifying that the
/// induced map is F_q-linear with determinant one. Displacements induce the
/// identity label. Throws NotClifford when any image is not a phase times a
/// displacement or the induced map is not in SL(2, q).
SL2Matrix induced_symplectic(const Eigen::MatrixXcd &u, const Field &f, double tol = 1e-8);

/// One element of the enumerated group, stored modulo global phase.
struct CliffordElement {
    Eigen::MatrixXcd unitary;  // phase-normalized representative
    SL2Matrix symplectic;
    /// Displacement offset relative to the first-enumerated element carrying
    /// the same symplectic label (zero for that representative itself).
    PhasePoint displacement_part;
    /// Generator word: indices into GroupTable::generators, applied left to
    /// right (empty word = identity).
    std::vector<std::uint8_t> word;
    Hash128 fingerprint;
};

/// The restricted Clifford group modulo global phase, enumerated by
/// breadth-first closure over {U_gen1, U_gen2, D_(1,0), D_(0,1)}.
/// Elements are sorted by fingerprint so tables are reproducible.
struct GroupTable {
    Field field;
    std::vector<Eigen::MatrixXcd> generators;
    std::vector<std::string> generator_names;
    std::vector<CliffordElement> elements;
    std::unordered_map<Hash128, int, Hash128Hasher> index;

    std::size_t order() const { return elements.size(); }
    /// Index of the element equal to u modulo phase, or -1.
    int find(const Eigen::MatrixXcd &u) const;
};

/// Expected collineation-group order q^3 (q^2 - 1).
std::uint64_t expected_group_order(int q);

/// The four BFS generators (two symplectic unitaries and two displacements).
std::vector<Eigen::MatrixXcd> clifford_generators(const Field &f);

/// Enumerates the restricted Clifford collineation group. Throws
/// BudgetExceeded if closure exceeds twice the expected order (which would
/// signal a fingerprinting defect).
GroupTable enumerate_group(const Field &f);

}  // namespace mubkit

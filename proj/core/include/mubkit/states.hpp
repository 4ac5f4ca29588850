#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "mubkit/displacement.hpp"
#include "mubkit/gauge.hpp"

namespace mubkit {

/// Multiplies by a unit phase so the first entry with modulus > 1e-9 becomes
/// real positive: the canonical stored gauge for pure states.
Eigen::VectorXcd gauge_fixed(const Eigen::VectorXcd &v);

/// An ordered collection of unit vectors, optionally grouped into bases.
/// States are stored gauge-fixed and are pairwise distinct modulo phase.
struct StateSet {
    int q = 0;
    std::optional<Field> field;
    std::vector<Eigen::VectorXcd> states;
    /// Basis grouping: groups[b] lists state indices of basis b. Empty when
    /// the set is ungrouped.
    std::vector<std::vector<int>> groups;
    /// One label per state (same length as states, or empty).
    std::vector<std::string> labels;
    std::string provenance;

    std::size_t size() const { return states.size(); }
    int dim() const { return states.empty() ? q : static_cast<int>(states[0].size()); }
};

/// Simultaneously diagonalizes a family of pairwise-commuting unitaries whose
/// eigenvalues are roots of unity of order dividing 2*dim (true of every
/// displacement subgroup): diagonalizes the element with the most distinct
/// eigenvalues first, then refines degenerate blocks with the remaining
/// elements. Returns a unitary whose columns are the joint eigenvectors.
/// Throws DegeneracyUnresolved if some joint eigenspace stays above one
/// dimension after every element is used. Eigenvalues are snapped to the
/// exact root-of-unity grid at tolerance 1e-8, which also clusters them.
Eigen::MatrixXcd joint_eigenbasis(const std::vector<Eigen::MatrixXcd> &commuting);

/// The canonical complete set of q+1 mutually unbiased bases: basis b is the
/// joint eigenbasis of the maximal abelian displacement subgroup of ray b
/// (so basis 0, from ray (0,1), is the computational basis). States within a
/// basis are sorted by their tuple of eigenvalues (snapped to exact 2p-th
/// roots of unity) over the subgroup's nonidentity elements, and every state
/// is verified as an eigenvector of the whole subgroup at residual 1e-9.
StateSet canonical_mub(const Field &f);

/// The nine-state symmetric informationally complete set in dimension three:
/// the displacement orbit of the fiducial (0, 1, -1)/sqrt(2), labeled by the
/// displacement labels in index order (so the fiducial comes first).
StateSet hesse_sic();

}  // namespace mubkit

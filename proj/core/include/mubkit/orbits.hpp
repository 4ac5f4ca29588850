#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mubkit/clifford.hpp"
#include "mubkit/designs.hpp"
#include "mubkit/states.hpp"

namespace mubkit {

/// A group orbit of a pure state, closed under every generator modulo phase.
/// states are sorted by fingerprint; words[i] lists generator indices whose
/// left-to-right application to the seed reproduces states[i] up to phase.
struct Orbit {
    Eigen::VectorXcd seed;
    StateSet states;
    std::vector<std::vector<std::uint8_t>> words;
    /// Order of the acting collineation group, q^3 (q^2 - 1): the orbit size
    /// always divides it, and the closure budget derives from it.
    std::uint64_t group_order = 0;
};

/// Breadth-first closure of seed under the generators, modulo phase.
/// Throws BudgetExceeded if the closure exceeds q^3 (q^2 - 1) states, which
/// is impossible under a correct group action and signals a dedup defect.
Orbit orbit(const Eigen::VectorXcd &seed, const std::vector<Eigen::MatrixXcd> &generators,
            const Field &f);
Orbit orbit(const Eigen::VectorXcd &seed, const GroupTable &table);

/// The subgroup of table elements fixing a state up to phase.
struct Stabilizer {
    /// Ascending indices into the GroupTable used to compute it.
    std::vector<int> members;
    std::size_t order() const { return members.size(); }
};

/// Scans the whole table for elements with ||U psi - lambda psi|| <= tol at
/// the optimal unit phase lambda.
Stabilizer stabilizer(const Eigen::VectorXcd &psi, const GroupTable &table, double tol = 1e-8);

/// Joint fixed states of a stabilizer subgroup.
struct FixedPointReport {
    /// Isolated fixed states: one-dimensional joint eigenspaces, each
    /// verified against every subgroup member, sorted by fingerprint.
    StateSet states;
    /// Dimensions of invariant subspaces (> 1) fixed pointwise up to phase;
    /// such subspaces contain a continuum of fixed states and are reported
    /// separately rather than enumerated.
    std::vector<int> fixed_subspace_dims;
};

/// All pure states fixed up to phase by every member of h, found by
/// intersecting member eigenspaces (singular-value cutoff 1e-8) and
/// verifying each one-dimensional intersection against the whole subgroup.
/// Throws DomainError when h is trivial (everything would be fixed).
FixedPointReport fixed_points(const Stabilizer &h, const GroupTable &table);

/// Highly-symmetric-frame test: every isolated fixed point of a state's
/// stabilizer must itself belong to the orbit. Transitivity makes one
/// representative state sufficient. The residual is the largest
/// phase-aligned distance from a fixed point to the orbit (zero on
/// fingerprint match); a trivial stabilizer passes vacuously and is flagged.
DesignReport highly_symmetric_check(const Orbit &o, const GroupTable &table, double tol = 1e-6);

/// Unit vector with independent complex-normal entries, drawn via Box-Muller
/// from the 53-bit uniforms of the given generator (portable across
/// standard-library implementations).
Eigen::VectorXcd haar_random_state(int dim, std::mt19937_64 &gen);

/// One orbit computed by the minimal-orbit experiment.
struct OrbitSummary {
    std::string seed_kind;  // "mub0", "hesse", or "random"
    int sample_index = -1;  // >= 0 for random seeds
    std::uint64_t size = 0;
    bool divides_group_order = false;
    /// group order / size when divisible (the orbit-stabilizer quotient).
    std::uint64_t counting_stabilizer_order = 0;
    double design2_residual = 0.0;
    bool design2_pass = false;
};

/// Evidence report for the minimal-orbit claim: the canonical-MUB orbit is
/// reproduced exactly, the dimension-three fiducial orbit is smaller still,
/// and sampled random orbits are strictly larger than both bounds.
struct Theorem1Report {
    int q = 0;
    std::uint64_t group_order = 0;
    std::uint64_t mub_orbit_size = 0;
    bool mub_orbit_matches_canonical = false;
    std::optional<std::uint64_t> hesse_orbit_size;  // dimension 3 only
    int samples = 0;
    std::string rng = "mt19937_64";
    std::uint64_t rng_seed = 0;
    std::vector<OrbitSummary> orbits;
    bool all_random_exceed_mub_size = false;  // every sample > q(q+1)
    bool all_random_exceed_q_squared = false;
    bool all_pass_design2 = false;
    bool all_sizes_divide_group_order = false;
    bool pass = false;
};

/// Runs the experiment: canonical-MUB seed orbit (plus the fiducial orbit in
/// dimension three) and `samples` Haar-random seed orbits, each certified as
/// a projective 2-design at tolerance 1e-7. Same seed, same report.
Theorem1Report theorem1_experiment(const Field &f, int samples, std::uint64_t seed);

}  // namespace mubkit

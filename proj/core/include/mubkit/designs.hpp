#pragma once

#include <cstdint>
#include <nlohmann/json.hpp>

#include "mubkit/clifford.hpp"
#include "mubkit/states.hpp"

namespace mubkit {

/// Outcome of one certification check. pass is equivalent to
/// residual <= tolerance; details carries a bounded list of the worst
/// violations plus check-specific facts.
struct DesignReport {
    std::string test;
    bool pass = false;
    double residual = 0.0;
    double tolerance = 0.0;
    nlohmann::json details;
};

Eigen::MatrixXcd swap_operator(int d);
Eigen::MatrixXcd symmetric_projector(int d);

/// Projective 2-design test: max-norm residual of
///   sum_j (P_j tensor P_j) - (2N / (d(d+1))) * P_sym,
/// the constant forced by taking traces. details records the constant.
DesignReport check_2design(const StateSet &set, double tol = 1e-8);

/// Symmetric informationally complete test: N = d^2 states with pairwise
/// squared overlaps 1/(d+1). A count mismatch enters the residual as
/// |N - d^2| so pass stays equivalent to residual <= tolerance.
DesignReport check_sic(const StateSet &set, double tol = 1e-8);

/// Mutually unbiased bases test on a grouped set: per-basis orthonormality
/// and cross-basis squared overlaps 1/d. Fewer than d+1 bases still passes
/// but is flagged incomplete in details. Throws BadGrouping when the set is
/// ungrouped or a group does not have d states.
DesignReport check_mub(const StateSet &set, double tol = 1e-8);

/// Tight frame test: sum_j P_j = (N/d) * identity. Requires N >= d.
DesignReport check_tight_frame(const StateSet &set, double tol = 1e-8);

struct PotentialResult {
    double value = 0.0;
    /// Standard error of the mean in sampled mode; 0 for exhaustive mode.
    double std_error = 0.0;
    bool sampled = false;
    std::uint64_t pairs = 0;
};

/// Frame potential (1/K^2) sum_{i,j} |tr(U_i^dag U_j)|^4 of the group table;
/// the value is 2 exactly when the group is a unitary 2-design. Exhaustive
/// mode is limited to q <= 5 (throws TooLarge beyond); sampled mode draws
/// nsamples uniform ordered pairs with i != j from a seeded generator,
/// handles the diagonal (exactly d^4/K) analytically, and reports the
/// standard error of the combined estimate.
PotentialResult unitary_2design_potential(const GroupTable &table, bool sampled = false,
                                          std::uint64_t nsamples = 1000000,
                                          std::uint64_t seed = 0);

/// Direct twirl test: max-norm distance between the group twirl
/// (1/K) sum_j (U tensor U) A (U tensor U)^dag and the analytic Haar twirl
/// (the unique combination of identity and swap with matching traces),
/// maximized over a full basis of bipartite matrix units. Exhaustive in the
/// group and the operator basis; limited to q <= 5 (throws TooLarge beyond).
double twirl_residual(const GroupTable &table);

}  // namespace mubkit

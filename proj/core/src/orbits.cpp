#include "mubkit/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "mubkit/errors.hpp"
#include "mubkit/parallel.hpp"

namespace mubkit {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_unit_seed(const Eigen::VectorXcd &seed, const Field &f) {
    if (seed.size() != f.q()) throw DimensionMismatch("seed dimension must equal q");
    if (std::abs(seed.norm() - 1.0) > 1e-9) throw DomainError("seed state must be unit norm");
}

/// Eigenspaces of a unitary matrix, clustered by eigenvalue proximity
/// (the eigenvalues of finite-order unitaries are well-separated roots of
/// unity, so a 1e-6 cluster radius is unambiguous). Schur vectors of a
/// normal matrix are eigenvectors to machine precision, so columns are
/// grouped by their diagonal value.
std::vector<Eigen::MatrixXcd> unitary_eigenspaces(const Eigen::MatrixXcd &u) {
    const int d = static_cast<int>(u.rows());
    Eigen::ComplexSchur<Eigen::MatrixXcd> schur(u, true);
    std::vector<std::complex<double>> values(d);
    for (int i = 0; i < d; ++i) values[i] = schur.matrixT()(i, i);

    std::vector<int> order(d);
    for (int i = 0; i < d; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return std::arg(values[a]) < std::arg(values[b]); });

    std::vector<std::vector<int>> clusters;
    for (int i : order) {
        if (clusters.empty() || std::abs(values[i] - values[clusters.back().front()]) > 1e-6)
            clusters.push_back({});
        clusters.back().push_back(i);
    }
    // The argument axis wraps at pi, so the first and last clusters may be
    // the same eigenvalue.
    if (clusters.size() > 1 &&
        std::abs(values[clusters.front().front()] - values[clusters.back().front()]) < 1e-6) {
        for (int i : clusters.back()) clusters.front().push_back(i);
        clusters.pop_back();
    }

    std::vector<Eigen::MatrixXcd> spaces;
    for (const auto &cluster : clusters) {
        Eigen::MatrixXcd basis(d, cluster.size());
        for (std::size_t c = 0; c < cluster.size(); ++c) basis.col(c) = schur.matrixU().col(cluster[c]);
        spaces.push_back(std::move(basis));
    }
    return spaces;
}

/// Orthonormal basis of span(a) intersected with span(b), both inputs having
/// orthonormal columns. The singular values of a^dag b are the cosines of
/// the principal angles between the spans; a common direction has cosine 1,
/// and the eigenspace geometry keeps every non-common angle far from zero,
/// so the cutoff is uncritical.
Eigen::MatrixXcd intersect_subspaces(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b,
                                     double cutoff = 1e-10) {
    if (a.cols() == 0 || b.cols() == 0) return Eigen::MatrixXcd(a.rows(), 0);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a.adjoint() * b, Eigen::ComputeThinU);
    int keep = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > 1.0 - cutoff) ++keep;
    // Columns of U are orthonormal, so their images under a stay orthonormal.
    return a * svd.matrixU().leftCols(keep);
}

double best_phase_residual(const Eigen::VectorXcd &psi, const Eigen::VectorXcd &image) {
    const std::complex<double> ip = psi.dot(image);
    const double mag = std::abs(ip);
    if (mag < 1e-12) return std::sqrt(2.0);
    const std::complex<double> lambda = ip / mag;
    return (image - lambda * psi).norm();
}

}  // namespace

Orbit orbit(const Eigen::VectorXcd &seed, const std::vector<Eigen::MatrixXcd> &generators,
            const Field &f) {
    require_unit_seed(seed, f);
    if (generators.empty()) throw DomainError("orbit needs at least one generator");
    const std::uint64_t budget = expected_group_order(f.q());

    struct Item {
        Eigen::VectorXcd psi;
        std::vector<std::uint8_t> word;
        Hash128 fp;
    };
    std::vector<Item> items;
    std::unordered_map<Hash128, int, Hash128Hasher> seen;

    Item first{gauge_fixed(seed), {}, state_fingerprint(seed)};
    seen.emplace(first.fp, 0);
    items.push_back(std::move(first));

    std::vector<int> frontier{0};
    while (!frontier.empty()) {
        std::sort(frontier.begin(), frontier.end(),
                  [&](int a, int b) { return items[a].fp < items[b].fp; });
        std::vector<int> next;
        for (int idx : frontier) {
            for (std::size_t g = 0; g < generators.size(); ++g) {
                const Eigen::VectorXcd image = generators[g] * items[idx].psi;
                const Hash128 fp = state_fingerprint(image);
                if (seen.count(fp)) continue;
                if (items.size() >= budget)
                    throw BudgetExceeded("orbit closure exceeded the group order");
                Item item;
                item.psi = gauge_fixed(image);
                item.word = items[idx].word;
                item.word.push_back(static_cast<std::uint8_t>(g));
                item.fp = fp;
                seen.emplace(fp, static_cast<int>(items.size()));
                items.push_back(std::move(item));
                next.push_back(static_cast<int>(items.size()) - 1);
            }
        }
        frontier = std::move(next);
    }

    std::sort(items.begin(), items.end(), [](const Item &a, const Item &b) { return a.fp < b.fp; });

    Orbit result;
    result.seed = gauge_fixed(seed);
    result.group_order = budget;
    result.states.q = f.q();
    result.states.field = f;
    result.states.provenance = "orbit";
    result.states.states.reserve(items.size());
    result.words.reserve(items.size());
    for (auto &item : items) {
        result.states.states.push_back(std::move(item.psi));
        result.states.labels.push_back("s" + std::to_string(result.states.states.size() - 1));
        result.words.push_back(std::move(item.word));
    }
    return result;
}

Orbit orbit(const Eigen::VectorXcd &seed, const GroupTable &table) {
    return orbit(seed, table.generators, table.field);
}

Stabilizer stabilizer(const Eigen::VectorXcd &psi, const GroupTable &table, double tol) {
    if (psi.size() != table.field.q()) throw DimensionMismatch("state dimension must equal q");
    const std::size_t k = table.order();
    const std::size_t chunk = 256;
    const std::size_t nchunks = (k + chunk - 1) / chunk;
    std::vector<std::vector<int>> partial(nchunks);
    parallel_chunks(k, chunk, [&](std::size_t c, std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const Eigen::VectorXcd image = table.elements[i].unitary * psi;
            if (best_phase_residual(psi, image) <= tol) partial[c].push_back(static_cast<int>(i));
        }
    });
    Stabilizer result;
    for (const auto &part : partial)
        result.members.insert(result.members.end(), part.begin(), part.end());
    return result;
}

FixedPointReport fixed_points(const Stabilizer &h, const GroupTable &table) {
    const int d = table.field.q();
    std::vector<const Eigen::MatrixXcd *> members;
    const Eigen::MatrixXcd identity = Eigen::MatrixXcd::Identity(d, d);
    for (int idx : h.members) {
        if (idx < 0 || idx >= static_cast<int>(table.order()))
            throw DomainError("stabilizer index outside the group table");
        const Eigen::MatrixXcd &u = table.elements[idx].unitary;
        if (phase_aligned_residual(u, identity) > 1e-8) members.push_back(&u);
    }
    if (members.empty())
        throw DomainError("fixed points of a trivial subgroup are the whole space");

    // Refine candidate subspaces by intersecting with member eigenspaces; a
    // joint fixed state must sit inside one eigenspace of every member.
    std::vector<Eigen::MatrixXcd> branches{identity};
    for (const auto *u : members) {
        bool any_wide = false;
        for (const auto &b : branches)
            if (b.cols() > 1) any_wide = true;
        if (!any_wide) break;  // 1-dim candidates are settled by verification
        const auto spaces = unitary_eigenspaces(*u);
        std::vector<Eigen::MatrixXcd> refined;
        for (const auto &branch : branches) {
            for (const auto &space : spaces) {
                Eigen::MatrixXcd meet = intersect_subspaces(branch, space);
                if (meet.cols() > 0) refined.push_back(std::move(meet));
            }
        }
        branches = std::move(refined);
    }

    FixedPointReport report;
    report.states.q = d;
    report.states.field = table.field;
    report.states.provenance = "fixed-points";

    std::vector<std::pair<Hash128, Eigen::VectorXcd>> isolated;
    std::unordered_set<Hash128, Hash128Hasher> dedup;
    for (const auto &branch : branches) {
        if (branch.cols() > 1) {
            // Verify the whole subspace really is fixed pointwise before
            // flagging it: every member must act on it as a scalar.
            bool pointwise = true;
            for (const auto *u : members) {
                const Eigen::MatrixXcd compressed = branch.adjoint() * (*u) * branch;
                const std::complex<double> scale = compressed.trace() / static_cast<double>(branch.cols());
                if ((compressed - scale * Eigen::MatrixXcd::Identity(branch.cols(), branch.cols()))
                        .cwiseAbs()
                        .maxCoeff() > 1e-8 ||
                    std::abs(std::abs(scale) - 1.0) > 1e-8) {
                    pointwise = false;
                    break;
                }
            }
            if (pointwise) report.fixed_subspace_dims.push_back(static_cast<int>(branch.cols()));
            continue;
        }
        Eigen::VectorXcd psi = branch.col(0);
        psi.normalize();
        bool fixed_by_all = true;
        for (const auto *u : members) {
            if (best_phase_residual(psi, (*u) * psi) > 1e-8) {
                fixed_by_all = false;
                break;
            }
        }
        if (!fixed_by_all) continue;
        const Hash128 fp = state_fingerprint(psi);
        if (dedup.insert(fp).second) isolated.emplace_back(fp, gauge_fixed(psi));
    }

    std::sort(isolated.begin(), isolated.end(),
              [](const auto &a, const auto &b) { return a.first < b.first; });
    for (auto &[fp, psi] : isolated) {
        report.states.states.push_back(std::move(psi));
        report.states.labels.push_back("fp" + std::to_string(report.states.states.size() - 1));
    }
    return report;
}

DesignReport highly_symmetric_check(const Orbit &o, const GroupTable &table, double tol) {
    if (o.states.states.empty()) throw DomainError("empty orbit");

    DesignReport report;
    report.test = "highly_symmetric";
    report.tolerance = tol;

    const Eigen::VectorXcd &representative = o.states.states[0];
    const Stabilizer stab = stabilizer(representative, table);
    if (stab.order() <= 1) {
        report.pass = true;
        report.residual = 0.0;
        report.details = {{"stabilizer_order", stab.order()},
                          {"trivial_stabilizer", true},
                          {"fixed_points", 0}};
        return report;
    }

    const FixedPointReport fixed = fixed_points(stab, table);
    std::unordered_set<Hash128, Hash128Hasher> orbit_fps;
    for (const auto &psi : o.states.states) orbit_fps.insert(state_fingerprint(psi));

    double residual = 0.0;
    int escaped = 0;
    for (const auto &psi : fixed.states.states) {
        if (orbit_fps.count(state_fingerprint(psi))) continue;
        double nearest = 2.0;
        for (const auto &member : o.states.states)
            nearest = std::min(nearest, phase_aligned_residual(psi, member));
        if (nearest > tol) ++escaped;
        residual = std::max(residual, nearest);
    }

    report.residual = residual;
    report.pass = residual <= tol;
    report.details = {{"stabilizer_order", stab.order()},
                      {"trivial_stabilizer", false},
                      {"fixed_points", fixed.states.size()},
                      {"escaped_fixed_points", escaped},
                      {"fixed_subspace_dims", fixed.fixed_subspace_dims},
                      {"orbit_size", o.states.size()}};
    return report;
}

Eigen::VectorXcd haar_random_state(int dim, std::mt19937_64 &gen) {
    if (dim < 1) throw DomainError("state dimension must be positive");
    const auto unit_open = [&]() {  // (0, 1], 53-bit grid
        return (static_cast<double>(gen() >> 11) + 1.0) * 0x1.0p-53;
    };
    Eigen::VectorXcd v(dim);
    for (int i = 0; i < dim; ++i) {
        const double radius = std::sqrt(-2.0 * std::log(unit_open()));
        const double angle = 2.0 * kPi * ((static_cast<double>(gen() >> 11)) * 0x1.0p-53);
        v(i) = std::complex<double>(radius * std::cos(angle), radius * std::sin(angle));
    }
    v.normalize();
    return v;
}

Theorem1Report theorem1_experiment(const Field &f, int samples, std::uint64_t seed) {
    if (f.q() > 9) throw TooLarge("the orbit experiment supports q <= 9");
    if (samples < 0) throw DomainError("sample count must be nonnegative");

    Theorem1Report report;
    report.q = f.q();
    report.group_order = expected_group_order(f.q());
    report.samples = samples;
    report.rng_seed = seed;

    const auto generators = clifford_generators(f);
    const StateSet mub = canonical_mub(f);

    const auto summarize = [&](const Orbit &o, const std::string &kind, int sample_index) {
        OrbitSummary s;
        s.seed_kind = kind;
        s.sample_index = sample_index;
        s.size = o.states.size();
        s.divides_group_order = s.size != 0 && report.group_order % s.size == 0;
        s.counting_stabilizer_order = s.divides_group_order ? report.group_order / s.size : 0;
        const DesignReport d2 = check_2design(o.states, 1e-7);
        s.design2_residual = d2.residual;
        s.design2_pass = d2.pass;
        report.orbits.push_back(s);
        return s;
    };

    {
        const Orbit mub_orbit = orbit(mub.states[0], generators, f);
        summarize(mub_orbit, "mub0", -1);
        report.mub_orbit_size = mub_orbit.states.size();
        std::unordered_set<Hash128, Hash128Hasher> mub_fps, orbit_fps;
        for (const auto &psi : mub.states) mub_fps.insert(state_fingerprint(psi));
        for (const auto &psi : mub_orbit.states.states) orbit_fps.insert(state_fingerprint(psi));
        report.mub_orbit_matches_canonical = mub_fps == orbit_fps;
    }

    if (f.q() == 3) {
        const Orbit hesse_orbit = orbit(hesse_sic().states[0], generators, f);
        summarize(hesse_orbit, "hesse", -1);
        report.hesse_orbit_size = hesse_orbit.states.size();
    }

    std::mt19937_64 gen(seed);
    const std::uint64_t mub_size = static_cast<std::uint64_t>(f.q()) * (f.q() + 1);
    const std::uint64_t q_squared = static_cast<std::uint64_t>(f.q()) * f.q();
    report.all_random_exceed_mub_size = true;
    report.all_random_exceed_q_squared = true;
    for (int i = 0; i < samples; ++i) {
        const Eigen::VectorXcd random_seed = haar_random_state(f.q(), gen);
        const Orbit o = orbit(random_seed, generators, f);
        const OrbitSummary s = summarize(o, "random", i);
        if (s.size <= mub_size) report.all_random_exceed_mub_size = false;
        if (s.size <= q_squared) report.all_random_exceed_q_squared = false;
    }

    report.all_pass_design2 = true;
    report.all_sizes_divide_group_order = true;
    for (const auto &s : report.orbits) {
        if (!s.design2_pass) report.all_pass_design2 = false;
        if (!s.divides_group_order) report.all_sizes_divide_group_order = false;
    }

    bool mub_ok = report.mub_orbit_size == mub_size && report.mub_orbit_matches_canonical;
    bool hesse_ok = f.q() != 3 || (report.hesse_orbit_size && *report.hesse_orbit_size == 9 &&
                                   *report.hesse_orbit_size < report.mub_orbit_size);
    report.pass = mub_ok && hesse_ok && report.all_random_exceed_mub_size &&
                  report.all_random_exceed_q_squared && report.all_pass_design2 &&
                  report.all_sizes_divide_group_order;
    return report;
}

}  // namespace mubkit

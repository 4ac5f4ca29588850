#include "mubkit/states.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "mubkit/errors.hpp"

namespace mubkit {

Eigen::VectorXcd gauge_fixed(const Eigen::VectorXcd &v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double m = std::abs(v(i));
        if (m > 1e-9) return v * (std::conj(v(i)) / m);
    }
    return v;
}

namespace {

// Eigenvalues of displacement-subgroup elements are exact 2p-th roots of
// unity (D^p = +/- identity); snapping them to their root index gives exact
// integer keys for clustering and ordering.
int snap_root_index(std::complex<double> lambda, int two_p, double tol = 1e-8) {
    const double angle = std::arg(lambda);
    const double steps = angle * two_p / (2.0 * std::numbers::pi);
    const int k = ((static_cast<int>(std::lround(steps)) % two_p) + two_p) % two_p;
    const double back = 2.0 * std::numbers::pi * k / two_p;
    const std::complex<double> snapped{std::cos(back), std::sin(back)};
    if (std::abs(lambda - snapped) > tol)
        throw DegeneracyUnresolved("eigenvalue is not a 2p-th root of unity");
    return k;
}

// Schur decomposition of a unitary block: returns orthonormal eigenvector
// columns grouped by snapped eigenvalue, in ascending root-index order.
std::map<int, Eigen::MatrixXcd> eigenspace_split(const Eigen::MatrixXcd &m, int two_p) {
    Eigen::ComplexSchur<Eigen::MatrixXcd> schur(m);
    const Eigen::MatrixXcd &qmat = schur.matrixU();
    std::map<int, std::vector<Eigen::Index>> clusters;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        clusters[snap_root_index(schur.matrixT()(i, i), two_p)].push_back(i);
    std::map<int, Eigen::MatrixXcd> out;
    for (const auto &[k, cols] : clusters) {
        Eigen::MatrixXcd block(m.rows(), static_cast<Eigen::Index>(cols.size()));
        for (std::size_t j = 0; j < cols.size(); ++j) block.col(static_cast<Eigen::Index>(j)) = qmat.col(cols[j]);
        out.emplace(k, std::move(block));
    }
    return out;
}

int count_distinct_eigenvalues(const Eigen::MatrixXcd &m, int two_p) {
    Eigen::ComplexSchur<Eigen::MatrixXcd> schur(m, /*computeU=*/false);
    std::map<int, int> seen;
    for (Eigen::Index i = 0; i < m.rows(); ++i) ++seen[snap_root_index(schur.matrixT()(i, i), two_p)];
    return static_cast<int>(seen.size());
}

bool is_identity_like(const Eigen::MatrixXcd &m) {
    return phase_aligned_residual(m, Eigen::MatrixXcd::Identity(m.rows(), m.cols())) < 1e-10;
}

}  // namespace

Eigen::MatrixXcd joint_eigenbasis(const std::vector<Eigen::MatrixXcd> &commuting) {
    if (commuting.empty()) throw DomainError("empty commuting family");
    const Eigen::Index d = commuting[0].rows();

    // The phases appearing here are 2p-th roots for every characteristic this
    // library supports; 2*d is always a multiple of the true order, which is
    // all snapping needs.
    int two_p = 2 * static_cast<int>(d);

    std::vector<Eigen::MatrixXcd> family;
    for (const auto &m : commuting) {
        if (m.rows() != d || m.cols() != d) throw DimensionMismatch("family members differ in size");
        if (!is_identity_like(m)) family.push_back(m);
    }
    if (family.empty()) throw DegeneracyUnresolved("family contains only scalar elements");

    // Most distinct eigenvalues first; stable on ties.
    std::stable_sort(family.begin(), family.end(),
                     [&](const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
                         return count_distinct_eigenvalues(a, two_p) >
                                count_distinct_eigenvalues(b, two_p);
                     });

    std::vector<Eigen::MatrixXcd> blocks = {Eigen::MatrixXcd::Identity(d, d)};
    for (const auto &m : family) {
        std::vector<Eigen::MatrixXcd> refined;
        for (const auto &v : blocks) {
            if (v.cols() == 1) {
                refined.push_back(v);
                continue;
            }
            // m commutes with everything diagonalized so far, hence preserves
            // span(v); the compression is unitary on the block.
            const Eigen::MatrixXcd compressed = v.adjoint() * m * v;
            for (auto &[k, sub] : eigenspace_split(compressed, two_p))
                refined.push_back(v * sub);
        }
        blocks = std::move(refined);
        if (std::all_of(blocks.begin(), blocks.end(),
                        [](const Eigen::MatrixXcd &b) { return b.cols() == 1; }))
            break;
    }

    for (const auto &b : blocks)
        if (b.cols() != 1)
            throw DegeneracyUnresolved("joint eigenspace of dimension " + std::to_string(b.cols()));

    Eigen::MatrixXcd out(d, d);
    for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(blocks.size()); ++j)
        out.col(j) = blocks[static_cast<std::size_t>(j)].col(0);
    return out;
}

StateSet canonical_mub(const Field &f) {
    const int q = f.q();
    const int two_p = 2 * f.p();
    StateSet set;
    set.q = q;
    set.field = f;
    set.provenance = "canonical_mub";

    const auto all_rays = rays(f);
    for (std::size_t b = 0; b < all_rays.size(); ++b) {
        const AbelianSubgroup subgroup = maximal_abelian_subgroup(all_rays[b]);
        std::vector<Eigen::MatrixXcd> mats;
        for (std::size_t i = 1; i < subgroup.elements.size(); ++i)
            mats.push_back(subgroup.elements[i].matrix);
        const Eigen::MatrixXcd basis = joint_eigenbasis(mats);

        // Order states by their eigenvalue tuple over the subgroup's
        // nonidentity elements (point order), then verify and gauge-fix.
        std::vector<std::pair<std::vector<int>, Eigen::VectorXcd>> keyed;
        for (int s = 0; s < q; ++s) {
            const Eigen::VectorXcd psi = basis.col(s);
            std::vector<int> key;
            for (const auto &mat : mats) {
                const std::complex<double> lambda = psi.dot(mat * psi);  // <psi, M psi>
                key.push_back(snap_root_index(lambda, two_p));
                if ((mat * psi - lambda * psi).cwiseAbs().maxCoeff() > 1e-9)
                    throw DegeneracyUnresolved("joint eigenvector verification failed");
            }
            keyed.emplace_back(std::move(key), psi);
        }
        std::sort(keyed.begin(), keyed.end(),
                  [](const auto &a, const auto &b) { return a.first < b.first; });

        std::vector<int> group;
        for (int s = 0; s < q; ++s) {
            group.push_back(static_cast<int>(set.states.size()));
            set.states.push_back(gauge_fixed(keyed[static_cast<std::size_t>(s)].second));
            set.labels.push_back("b" + std::to_string(b) + "s" + std::to_string(s));
        }
        set.groups.push_back(std::move(group));
    }
    return set;
}

StateSet hesse_sic() {
    const Field f(3, 1);
    StateSet set;
    set.q = 3;
    set.field = f;
    set.provenance = "hesse_sic";

    Eigen::VectorXcd fiducial(3);
    const double r = 1.0 / std::sqrt(2.0);
    fiducial << 0.0, r, -r;

    std::vector<Hash128> seen;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            const PhasePoint u{f.element(a), f.element(b)};
            const Eigen::VectorXcd psi = displacement(u).matrix * fiducial;
            const Hash128 fp = state_fingerprint(psi);
            if (std::find(seen.begin(), seen.end(), fp) != seen.end())
                throw Error("displacement orbit of the fiducial is degenerate");  // would be a bug
            seen.push_back(fp);
            set.states.push_back(gauge_fixed(psi));
            set.labels.push_back("u=(" + std::to_string(a) + "," + std::to_string(b) + ")");
        }
    return set;
}

}  // namespace mubkit

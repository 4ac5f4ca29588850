#include "mubkit/clifford.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>

namespace mubkit {

namespace {

FieldElement det2(const FieldElement &a, const FieldElement &b, const FieldElement &c,
                  const FieldElement &d) {
    return a * d - b * c;
}

}  // namespace

SL2Matrix::SL2Matrix(const FieldElement &alpha, const FieldElement &beta,
                     const FieldElement &gamma, const FieldElement &delta)
    : alpha_(alpha), beta_(beta), gamma_(gamma), delta_(delta) {
    if (det2(alpha_, beta_, gamma_, delta_) != alpha_.field().one())
        throw NotSL2("matrix determinant is not one");
}

SL2Matrix SL2Matrix::identity(const Field &f) {
    return SL2Matrix(f.one(), f.zero(), f.zero(), f.one());
}

SL2Matrix SL2Matrix::operator*(const SL2Matrix &rhs) const {
    return SL2Matrix(alpha_ * rhs.alpha_ + beta_ * rhs.gamma_,
                     alpha_ * rhs.beta_ + beta_ * rhs.delta_,
                     gamma_ * rhs.alpha_ + delta_ * rhs.gamma_,
                     gamma_ * rhs.beta_ + delta_ * rhs.delta_);
}

SL2Matrix SL2Matrix::inverse() const { return SL2Matrix(delta_, -beta_, -gamma_, alpha_); }

PhasePoint SL2Matrix::apply(const PhasePoint &u) const {
    return {alpha_ * u.u1 + beta_ * u.u2, gamma_ * u.u1 + delta_ * u.u2};
}

bool SL2Matrix::operator==(const SL2Matrix &rhs) const {
    return alpha_ == rhs.alpha_ && beta_ == rhs.beta_ && gamma_ == rhs.gamma_ &&
           delta_ == rhs.delta_;
}

std::uint64_t SL2Matrix::key() const {
    const auto q = static_cast<std::uint64_t>(alpha_.field().q());
    std::uint64_t k = static_cast<std::uint64_t>(alpha_.index());
    k = k * q + static_cast<std::uint64_t>(beta_.index());
    k = k * q + static_cast<std::uint64_t>(gamma_.index());
    k = k * q + static_cast<std::uint64_t>(delta_.index());
    return k;
}

std::pair<SL2Matrix, SL2Matrix> sl2_generators(const Field &f) {
    const FieldElement zero = f.zero(), one = f.one();
    if (f.q() <= 3) {
        SL2Matrix t(one, one, zero, one);        // [[1, 1], [0, 1]]
        SL2Matrix s(zero, one, -one, zero);      // [[0, 1], [-1, 0]]
        return {t, s};
    }
    const FieldElement nu = f.primitive_element();
    SL2Matrix d(nu, zero, zero, nu.inverse());   // diag(nu, nu^-1)
    SL2Matrix r(-one, one, -one, zero);          // [[-1, 1], [-1, 0]]
    return {d, r};
}

Eigen::MatrixXcd appleby_unitary(const SL2Matrix &fm) {
    const Field f = fm.field();
    if (f.p() == 2) throw EvenCharacteristic();
    const int q = f.q();
    const PhaseRing ring(f.p());
    const FieldElement alpha = fm.alpha(), beta = fm.beta(), gamma = fm.gamma(),
                       delta = fm.delta();
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(q, q);
    if (beta.is_zero()) {
        // sum_x |alpha x> tau^{tr(alpha gamma x^2)} <x|
        for (int x = 0; x < q; ++x) {
            const FieldElement xe = f.element(x);
            u((alpha * xe).index(), x) = ring.tau_pow((alpha * gamma * xe * xe).trace());
        }
        return u;
    }
    const FieldElement binv = beta.inverse();
    const FieldElement two = f.one() + f.one();
    const double scale = 1.0 / std::sqrt(static_cast<double>(q));
    for (int x = 0; x < q; ++x) {
        const FieldElement xe = f.element(x);
        for (int y = 0; y < q; ++y) {
            const FieldElement ye = f.element(y);
            const FieldElement arg = binv * (alpha * ye * ye - two * xe * ye + delta * xe * xe);
            u(x, y) = scale * ring.tau_pow(arg.trace());
        }
    }
    return u;
}

namespace {

// Labels (x^i, 0), (0, x^i) for the polynomial basis {1, x, ..., x^{n-1}} of
// F_q over F_p: displacements over these labels generate the full
// displacement group modulo phases.
std::vector<PhasePoint> basis_labels(const Field &f) {
    std::vector<PhasePoint> out;
    const int n = f.n();
    FieldElement b = f.one();
    const FieldElement x = f.n() > 1 ? f.element(f.p()) : f.one();
    for (int i = 0; i < n; ++i, b = b * x) out.push_back({b, f.zero()});
    b = f.one();
    for (int i = 0; i < n; ++i, b = b * x) out.push_back({f.zero(), b});
    return out;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Eigen::MatrixXcd nullspace_basis(const Eigen::MatrixXcd &a) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullV);
    const auto &sv = svd.singularValues();
    const double cutoff = 1e-7 * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv(rank) > cutoff) ++rank;
    return svd.matrixV().rightCols(a.cols() - rank);
}

struct Synthesizer {
    const Field &f;
    const SL2Matrix &fm;
    int q, p, nrel;
    PhaseRing ring;
    std::vector<Eigen::MatrixXcd> lhs_ops;  // kron(D_v^T, I)
    std::vector<Eigen::MatrixXcd> rhs_ops;  // kron(I, D_{Fv})
    Eigen::MatrixXcd result;

    Synthesizer(const Field &field, const SL2Matrix &label)
        : f(field), fm(label), q(field.q()), p(field.p()), ring(field.p()) {
        const auto labels = basis_labels(f);
        nrel = static_cast<int>(labels.size());
        const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(q, q);
        for (const auto &v : labels) {
            lhs_ops.push_back(kron(displacement(v).matrix.transpose(), id));
            rhs_ops.push_back(kron(id, displacement(fm.apply(v)).matrix));
        }
    }

    std::complex<double> phase_candidate(int k) const {
        const double angle = std::numbers::pi * k / p;
        return {std::cos(angle), std::sin(angle)};
    }

    bool accept(const Eigen::MatrixXcd &basis) {
        if (basis.cols() != 1) return false;
        Eigen::MatrixXcd u = Eigen::Map<const Eigen::MatrixXcd>(basis.data(), q, q);
        u *= std::sqrt(static_cast<double>(q)) / u.norm();
        if ((u.adjoint() * u - Eigen::MatrixXcd::Identity(q, q)).cwiseAbs().maxCoeff() > 1e-9)
            return false;
        // full conjugation property over every label
        for (int a = 0; a < q; ++a)
            for (int b = 0; b < q; ++b) {
                const PhasePoint pt{f.element(a), f.element(b)};
                const Eigen::MatrixXcd img = u * displacement(pt).matrix * u.adjoint();
                const auto match = match_displacement(img, f, 1e-9);
                if (!match || match->label != fm.apply(pt)) return false;
            }
        result = phase_normalized(u);
        return true;
    }

    bool dfs(int level, const Eigen::MatrixXcd &basis) {
        if (level == nrel) return accept(basis);
        for (int k = 0; k < 2 * p; ++k) {
            const std::complex<double> c = phase_candidate(k);
            const Eigen::MatrixXcd constraint = (lhs_ops[static_cast<std::size_t>(level)] -
                                                 c * rhs_ops[static_cast<std::size_t>(level)]) *
                                                basis;
            const Eigen::MatrixXcd null = nullspace_basis(constraint);
            if (null.cols() == 0) continue;
            if (dfs(level + 1, basis * null)) return true;
        }
        return false;
    }
};

}  // namespace

Eigen::MatrixXcd synthesize_unitary(const SL2Matrix &fm) {
    const Field f = fm.field();
    Synthesizer synth(f, fm);
    const Eigen::MatrixXcd full = Eigen::MatrixXcd::Identity(f.q() * f.q(), f.q() * f.q());
    if (!synth.dfs(0, full)) throw SynthesisFailed("no phase assignment yields an intertwiner");
    return synth.result;
}

Eigen::MatrixXcd clifford_unitary(const SL2Matrix &fm) {
    if (fm.field().p() % 2 == 1) return appleby_unitary(fm);
    return synthesize_unitary(fm);
}

std::optional<DisplacementImage> match_displacement(const Eigen::MatrixXcd &m, const Field &f,
                                                    double tol) {
    const int q = f.q();
    if (m.rows() != q || m.cols() != q) throw DimensionMismatch("matrix size does not match q");
    // Column 0 of phase * D_v has a single entry of modulus one in row v1.
    Eigen::Index r = 0;
    m.col(0).cwiseAbs().maxCoeff(&r);
    if (std::abs(std::abs(m(r, 0)) - 1.0) > tol) return std::nullopt;
    const FieldElement v1 = f.element(static_cast<int>(r));
    for (int w = 0; w < q; ++w) {
        const PhasePoint cand{v1, f.element(w)};
        const Eigen::MatrixXcd d = displacement(cand).matrix;
        const std::complex<double> phase = m(r, 0) / d(r, 0);
        const double residual = (m - phase * d).cwiseAbs().maxCoeff();
        if (residual <= tol) return DisplacementImage{cand, phase, residual};
    }
    return std::nullopt;
}

SL2Matrix induced_symplectic(const Eigen::MatrixXcd &u, const Field &f, double tol) {
    const auto labels = basis_labels(f);
    std::vector<PhasePoint> images;
    images.reserve(labels.size());
    for (const auto &v : labels) {
        const Eigen::MatrixXcd img = u * displacement(v).matrix * u.adjoint();
        const auto match = match_displacement(img, f, tol);
        if (!match) throw NotClifford("conjugated displacement is not a displacement");
        images.push_back(match->label);
    }
    const int n = f.n();
    const PhasePoint &ix = images[0];                                // image of (1, 0)
    const PhasePoint &iz = images[static_cast<std::size_t>(n)];      // image of (0, 1)
    SL2Matrix fm = [&] {
        try {
            return SL2Matrix(ix.u1, iz.u1, ix.u2, iz.u2);
        } catch (const NotSL2 &) {
            throw NotClifford("induced label map is not symplectic");
        }
    }();
    for (std::size_t j = 0; j < labels.size(); ++j)
        if (images[j] != fm.apply(labels[j]))
            throw NotClifford("induced label map is not F_q-linear");
    return fm;
}

std::uint64_t expected_group_order(int q) {
    const auto qq = static_cast<std::uint64_t>(q);
    return qq * qq * qq * (qq * qq - 1);
}

std::vector<Eigen::MatrixXcd> clifford_generators(const Field &f) {
    const auto [g1, g2] = sl2_generators(f);
    return {clifford_unitary(g1), clifford_unitary(g2),
            displacement({f.one(), f.zero()}).matrix, displacement({f.zero(), f.one()}).matrix};
}

int GroupTable::find(const Eigen::MatrixXcd &u) const {
    const auto it = index.find(unitary_fingerprint(u));
    return it == index.end() ? -1 : it->second;
}

GroupTable enumerate_group(const Field &f) {
    const int q = f.q();
    const std::uint64_t expected = expected_group_order(q);
    const std::uint64_t budget = 2 * expected;

    const auto [g1, g2] = sl2_generators(f);
    const SL2Matrix sl2_id = SL2Matrix::identity(f);
    GroupTable table{f, clifford_generators(f), {"sym_a", "sym_b", "disp_x", "disp_z"}, {}, {}};
    const std::vector<SL2Matrix> gen_labels = {g1, g2, sl2_id, sl2_id};

    auto push = [&](Eigen::MatrixXcd m, SL2Matrix label, std::vector<std::uint8_t> word) -> bool {
        const Hash128 fp = unitary_fingerprint(m);
        if (table.index.count(fp)) return false;
        if (table.elements.size() + 1 > budget)
            throw BudgetExceeded("group closure exceeded twice the expected order");
        table.index.emplace(fp, static_cast<int>(table.elements.size()));
        table.elements.push_back(CliffordElement{phase_normalized(m), std::move(label),
                                                 PhasePoint{f.zero(), f.zero()}, std::move(word),
                                                 fp});
        return true;
    };

    push(Eigen::MatrixXcd::Identity(q, q), sl2_id, {});
    std::vector<int> frontier = {0};
    while (!frontier.empty()) {
        // Deterministic expansion order: sort each level by fingerprint.
        std::sort(frontier.begin(), frontier.end(), [&](int a, int b) {
            return table.elements[static_cast<std::size_t>(a)].fingerprint <
                   table.elements[static_cast<std::size_t>(b)].fingerprint;
        });
        std::vector<int> next;
        for (const int idx : frontier) {
            for (std::uint8_t g = 0; g < 4; ++g) {
                // Copy, not reference: push may reallocate table.elements.
                const Eigen::MatrixXcd m =
                    table.elements[static_cast<std::size_t>(idx)].unitary * table.generators[g];
                SL2Matrix label =
                    table.elements[static_cast<std::size_t>(idx)].symplectic * gen_labels[g];
                std::vector<std::uint8_t> word = table.elements[static_cast<std::size_t>(idx)].word;
                word.push_back(g);
                if (push(m, std::move(label), std::move(word)))
                    next.push_back(static_cast<int>(table.elements.size()) - 1);
            }
        }
        frontier = std::move(next);
    }

    // Displacement offsets relative to the first-enumerated representative of
    // each symplectic label.
    std::unordered_map<std::uint64_t, int> first_rep;
    for (std::size_t i = 0; i < table.elements.size(); ++i) {
        auto &el = table.elements[i];
        const auto [it, fresh] = first_rep.emplace(el.symplectic.key(), static_cast<int>(i));
        if (fresh) continue;
        const Eigen::MatrixXcd rel =
            el.unitary * table.elements[static_cast<std::size_t>(it->second)].unitary.adjoint();
        const auto match = match_displacement(rel, f, 1e-8);
        if (!match) throw NotClifford("coset offset is not a displacement");  // would be a bug
        el.displacement_part = match->label;
    }

    std::sort(table.elements.begin(), table.elements.end(),
              [](const CliffordElement &a, const CliffordElement &b) {
                  return a.fingerprint < b.fingerprint;
              });
    table.index.clear();
    for (std::size_t i = 0; i < table.elements.size(); ++i)
        table.index.emplace(table.elements[i].fingerprint, static_cast<int>(i));
    return table;
}

}  // namespace mubkit

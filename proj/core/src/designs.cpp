#include "mubkit/designs.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "mubkit/errors.hpp"
#include "mubkit/parallel.hpp"

namespace mubkit {

namespace {

void require_uniform_dimension(const StateSet &set) {
    if (set.states.empty()) throw DomainError("state set is empty");
    const auto d = set.states[0].size();
    for (const auto &s : set.states)
        if (s.size() != d) throw DimensionMismatch("state set mixes dimensions");
}

// Keeps the k worst violations, each as [i, j, observed, target].
struct WorstPairs {
    std::size_t cap;
    std::vector<std::tuple<double, int, int, double, double>> items;  // keyed by deviation

    explicit WorstPairs(std::size_t k) : cap(k) {}

    void add(double deviation, int i, int j, double observed, double target) {
        items.emplace_back(deviation, i, j, observed, target);
        std::sort(items.begin(), items.end(),
                  [](const auto &a, const auto &b) { return std::get<0>(a) > std::get<0>(b); });
        if (items.size() > cap) items.resize(cap);
    }

    nlohmann::json to_json() const {
        nlohmann::json out = nlohmann::json::array();
        for (const auto &[dev, i, j, obs, tgt] : items)
            out.push_back({{"i", i}, {"j", j}, {"observed", obs}, {"target", tgt}, {"deviation", dev}});
        return out;
    }
};

}  // namespace

Eigen::MatrixXcd swap_operator(int d) {
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(d * d, d * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) s(j * d + i, i * d + j) = 1.0;
    return s;
}

Eigen::MatrixXcd symmetric_projector(int d) {
    const int dd = d * d;
    return 0.5 * (Eigen::MatrixXcd::Identity(dd, dd) + swap_operator(d));
}

DesignReport check_2design(const StateSet &set, double tol) {
    require_uniform_dimension(set);
    const int d = set.dim();
    const int dd = d * d;
    const std::size_t n = set.size();

    // Chunk size depends only on n so partial sums combine identically for
    // any thread budget; the 256-chunk cap bounds partial-matrix memory.
    const std::size_t chunk = std::max<std::size_t>(32, (n + 255) / 256);
    const std::size_t nchunks = (n + chunk - 1) / chunk;
    std::vector<Eigen::MatrixXcd> partial(nchunks, Eigen::MatrixXcd::Zero(dd, dd));
    parallel_chunks(n, chunk, [&](std::size_t c, std::size_t lo, std::size_t hi) {
        Eigen::VectorXcd doubled(dd);
        for (std::size_t j = lo; j < hi; ++j) {
            const Eigen::VectorXcd &psi = set.states[j];
            for (int a = 0; a < d; ++a) doubled.segment(a * d, d) = psi(a) * psi;
            partial[c].noalias() += doubled * doubled.adjoint();
        }
    });
    Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(dd, dd);
    for (const auto &m : partial) t += m;

    const double constant = 2.0 * static_cast<double>(n) / (d * (d + 1.0));
    const double residual = (t - constant * symmetric_projector(d)).cwiseAbs().maxCoeff();

    DesignReport report;
    report.test = "design2";
    report.tolerance = tol;
    report.residual = residual;
    report.pass = residual <= tol;
    report.details = {{"states", n}, {"dim", d}, {"constant", constant}};
    return report;
}

DesignReport check_sic(const StateSet &set, double tol) {
    require_uniform_dimension(set);
    const int d = set.dim();
    const int n = static_cast<int>(set.size());
    const double target = 1.0 / (d + 1.0);

    double residual = 0.0;
    WorstPairs worst(5);
    nlohmann::json details{{"states", n}, {"dim", d}, {"expected_states", d * d},
                           {"offdiagonal_target", target}};
    if (n != d * d) {
        residual = std::abs(n - d * d);
        details["reason"] = "CountMismatch";
    }
    for (int i = 0; i < n; ++i) {
        const double norm_dev = std::abs(set.states[i].squaredNorm() - 1.0);
        if (norm_dev > residual) residual = norm_dev;
        for (int j = i + 1; j < n; ++j) {
            const double overlap = std::norm(set.states[i].dot(set.states[j]));
            const double dev = std::abs(overlap - target);
            if (dev > residual) residual = dev;
            if (dev > tol) worst.add(dev, i, j, overlap, target);
        }
    }
    details["worst_pairs"] = worst.to_json();

    DesignReport report;
    report.test = "sic";
    report.tolerance = tol;
    report.residual = residual;
    report.pass = residual <= tol;
    report.details = std::move(details);
    return report;
}

DesignReport check_mub(const StateSet &set, double tol) {
    require_uniform_dimension(set);
    const int d = set.dim();
    if (set.groups.empty()) throw BadGrouping("mutual-unbiasedness test needs states grouped into bases");
    std::vector<char> seen(set.size(), 0);
    for (const auto &basis : set.groups) {
        if (static_cast<int>(basis.size()) != d)
            throw BadGrouping("every basis must contain exactly dim states");
        for (int idx : basis) {
            if (idx < 0 || idx >= static_cast<int>(set.size()) || seen[idx])
                throw BadGrouping("grouping must partition the state indices");
            seen[idx] = 1;
        }
    }

    const int nbases = static_cast<int>(set.groups.size());
    const double cross_target = 1.0 / d;
    double residual = 0.0;
    WorstPairs worst(5);
    for (int b = 0; b < nbases; ++b) {
        for (int i = 0; i < d; ++i) {
            const Eigen::VectorXcd &psi = set.states[set.groups[b][i]];
            for (int j = i; j < d; ++j) {
                const double overlap = std::abs(psi.dot(set.states[set.groups[b][j]]));
                const double dev = std::abs(overlap - (i == j ? 1.0 : 0.0));
                if (dev > residual) residual = dev;
                if (dev > tol) worst.add(dev, set.groups[b][i], set.groups[b][j], overlap, i == j ? 1.0 : 0.0);
            }
        }
        for (int b2 = b + 1; b2 < nbases; ++b2) {
            for (int i : set.groups[b]) {
                for (int j : set.groups[b2]) {
                    const double overlap = std::norm(set.states[i].dot(set.states[j]));
                    const double dev = std::abs(overlap - cross_target);
                    if (dev > residual) residual = dev;
                    if (dev > tol) worst.add(dev, i, j, overlap, cross_target);
                }
            }
        }
    }

    DesignReport report;
    report.test = "mub";
    report.tolerance = tol;
    report.residual = residual;
    report.pass = residual <= tol;
    report.details = {{"bases", nbases},
                      {"dim", d},
                      {"complete", nbases == d + 1},
                      {"cross_target", cross_target},
                      {"worst_pairs", worst.to_json()}};
    return report;
}

DesignReport check_tight_frame(const StateSet &set, double tol) {
    require_uniform_dimension(set);
    const int d = set.dim();
    const std::size_t n = set.size();

    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(d, d);
    for (const auto &psi : set.states) sum.noalias() += psi * psi.adjoint();
    const double scale = static_cast<double>(n) / d;
    const double residual = (sum - scale * Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff();

    DesignReport report;
    report.test = "frame";
    report.tolerance = tol;
    report.residual = residual;
    report.pass = residual <= tol;
    report.details = {{"states", n}, {"dim", d}, {"frame_constant", scale}, {"povm_scale", 1.0 / scale}};
    return report;
}

PotentialResult unitary_2design_potential(const GroupTable &table, bool sampled,
                                          std::uint64_t nsamples, std::uint64_t seed) {
    const std::size_t k = table.order();
    if (k == 0) throw DomainError("empty group table");

    PotentialResult result;
    result.sampled = sampled;

    const auto pair_value = [&](std::size_t i, std::size_t j) {
        const std::complex<double> tr =
            table.elements[i].unitary.conjugate().cwiseProduct(table.elements[j].unitary).sum();
        const double t2 = std::norm(tr);
        return t2 * t2;
    };

    if (!sampled) {
        if (table.field.q() > 5)
            throw TooLarge("exhaustive pair sum needs q <= 5; use sampled mode");
        result.pairs = static_cast<std::uint64_t>(k) * k;
        const std::size_t chunk = 8;
        const std::size_t nchunks = (k + chunk - 1) / chunk;
        std::vector<double> partial(nchunks, 0.0);
        parallel_chunks(k, chunk, [&](std::size_t c, std::size_t lo, std::size_t hi) {
            double acc = 0.0;
            for (std::size_t i = lo; i < hi; ++i)
                for (std::size_t j = 0; j < k; ++j) acc += pair_value(i, j);
            partial[c] = acc;
        });
        double total = 0.0;
        for (double v : partial) total += v;
        result.value = total / (static_cast<double>(k) * static_cast<double>(k));
        result.std_error = 0.0;
        return result;
    }

    if (nsamples == 0) throw DomainError("sampled mode needs nsamples >= 1");
    result.pairs = nsamples;
    // The diagonal contributes exactly d^4/K (each element paired with
    // itself has |tr|^4 = d^4), so only the off-diagonal mean needs
    // sampling. Conditioning the draw on i != j removes the dominant
    // variance source: the rare d^4-sized collision spike.
    // Pairs are drawn up front from one fixed stream so the estimate is
    // reproducible for any thread budget.
    std::mt19937_64 gen(seed);
    std::vector<std::uint32_t> idx(2 * nsamples);
    for (std::size_t s = 0; s < nsamples; ++s) {
        const auto i = static_cast<std::uint32_t>(gen() % k);
        auto j = static_cast<std::uint32_t>(gen() % k);
        while (k > 1 && j == i) j = static_cast<std::uint32_t>(gen() % k);
        idx[2 * s] = i;
        idx[2 * s + 1] = j;
    }

    const std::size_t chunk = 4096;
    const std::size_t nchunks = (nsamples + chunk - 1) / chunk;
    std::vector<double> psum(nchunks, 0.0), psqsum(nchunks, 0.0);
    parallel_chunks(nsamples, chunk, [&](std::size_t c, std::size_t lo, std::size_t hi) {
        double acc = 0.0, acc2 = 0.0;
        for (std::size_t s = lo; s < hi; ++s) {
            const double v = pair_value(idx[2 * s], idx[2 * s + 1]);
            acc += v;
            acc2 += v * v;
        }
        psum[c] = acc;
        psqsum[c] = acc2;
    });
    double total = 0.0, total2 = 0.0;
    for (std::size_t c = 0; c < nchunks; ++c) {
        total += psum[c];
        total2 += psqsum[c];
    }
    const double mean = total / static_cast<double>(nsamples);
    const double var = std::max(0.0, total2 / static_cast<double>(nsamples) - mean * mean);
    const double d = static_cast<double>(table.field.q());
    const double diag = d * d * d * d / static_cast<double>(k);
    const double off_weight = static_cast<double>(k - 1) / static_cast<double>(k);
    result.value = diag + off_weight * mean;
    result.std_error = off_weight * std::sqrt(var / static_cast<double>(nsamples));
    return result;
}

double twirl_residual(const GroupTable &table) {
    if (table.field.q() > 5) throw TooLarge("direct twirl check needs q <= 5");
    const std::size_t k = table.order();
    if (k == 0) throw DomainError("empty group table");
    const int d = table.field.q();
    const int dd = d * d;

    // W_j = U_j tensor U_j; twirling the matrix unit E_ab gives
    // (1/K) sum_j (W_j e_a)(W_j e_b)^dag, an outer product of W columns.
    std::vector<Eigen::MatrixXcd> w(k);
    for (std::size_t j = 0; j < k; ++j) {
        const Eigen::MatrixXcd &u = table.elements[j].unitary;
        Eigen::MatrixXcd &wj = w[j];
        wj.resize(dd, dd);
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) wj.block(r * d, c * d, d, d) = u(r, c) * u;
    }

    const Eigen::MatrixXcd swap = swap_operator(d);
    const Eigen::MatrixXcd identity = Eigen::MatrixXcd::Identity(dd, dd);
    // Gram matrix of {I, SWAP} on the doubled space: tr(I) = d^2,
    // tr(SWAP) = d, tr(SWAP^2) = d^2; determinant d^4 - d^2.
    const double denom = static_cast<double>(dd) * dd - static_cast<double>(d) * d;

    const std::size_t nchunks = static_cast<std::size_t>(dd);
    std::vector<double> partial(nchunks, 0.0);
    parallel_chunks(static_cast<std::size_t>(dd), 1, [&](std::size_t c, std::size_t lo, std::size_t hi) {
        double worst = 0.0;
        Eigen::MatrixXcd acc(dd, dd);
        for (std::size_t a = lo; a < hi; ++a) {
            for (int b = 0; b < dd; ++b) {
                acc.setZero();
                for (std::size_t j = 0; j < k; ++j)
                    acc.noalias() += w[j].col(static_cast<int>(a)) * w[j].col(b).adjoint();
                acc /= static_cast<double>(k);
                // Haar twirl of E_ab: alpha*I + beta*SWAP with the Gram
                // system solved by tr(E_ab) = [a==b] and tr(SWAP E_ab) = SWAP(b,a).
                const double tr_a = a == static_cast<std::size_t>(b) ? 1.0 : 0.0;
                const double tr_sa = swap(b, static_cast<int>(a)).real();
                const double alpha = (dd * tr_a - d * tr_sa) / denom;
                const double beta = (dd * tr_sa - d * tr_a) / denom;
                const double dev = (acc - alpha * identity - beta * swap).cwiseAbs().maxCoeff();
                if (dev > worst) worst = dev;
            }
        }
        partial[c] = worst;
    });
    double residual = 0.0;
    for (double v : partial) residual = std::max(residual, v);
    return residual;
}

}  // namespace mubkit

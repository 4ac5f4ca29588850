#include "mubkit/gauge.hpp"

#include <cmath>

namespace mubkit {

namespace {

constexpr double kTieTol = 1e-7;

// Unit phase of the first entry (in storage order) whose modulus ties the
// maximum within kTieTol.
std::complex<double> gauge_phase(const std::complex<double> *data, Eigen::Index size) {
    double max_mod = 0.0;
    for (Eigen::Index i = 0; i < size; ++i) max_mod = std::max(max_mod, std::abs(data[i]));
    for (Eigen::Index i = 0; i < size; ++i) {
        const double m = std::abs(data[i]);
        if (m >= max_mod - kTieTol) return data[i] / m;
    }
    return {1.0, 0.0};  // all-zero input
}

struct Fnv2 {
    std::uint64_t a = 0xcbf29ce484222325ULL;
    std::uint64_t b = 0x8a624fc2a0b3c1d5ULL;

    void feed(std::int64_t v) {
        auto u = static_cast<std::uint64_t>(v);
        for (int k = 0; k < 8; ++k, u >>= 8) {
            const std::uint64_t byte = u & 0xff;
            a = (a ^ byte) * 0x100000001b3ULL;
            b = (b ^ byte) * 0x00000100000001b3ULL ^ (b >> 29);
        }
    }
    Hash128 digest() const { return {a, b}; }
};

std::int64_t rounded(double x) {
    const double r = std::round(x * 1e6);
    return r == 0.0 ? 0 : static_cast<std::int64_t>(r);  // collapse -0
}

Hash128 hash_entries(const std::complex<double> *data, Eigen::Index size,
                     const std::complex<double> &phase) {
    const std::complex<double> conj_phase = std::conj(phase);
    Fnv2 h;
    for (Eigen::Index i = 0; i < size; ++i) {
        const std::complex<double> z = data[i] * conj_phase;
        h.feed(rounded(z.real()));
        h.feed(rounded(z.imag()));
    }
    return h.digest();
}

}  // namespace

Eigen::MatrixXcd phase_normalized(const Eigen::MatrixXcd &m) {
    // Storage order must be deterministic for the tie-break: use row-major
    // traversal regardless of Eigen's internal layout.
    Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rm = m;
    const auto phase = gauge_phase(rm.data(), rm.size());
    return m * std::conj(phase);
}

Eigen::VectorXcd phase_normalized(const Eigen::VectorXcd &v) {
    const auto phase = gauge_phase(v.data(), v.size());
    return v * std::conj(phase);
}

Hash128 unitary_fingerprint(const Eigen::MatrixXcd &m) {
    Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rm = m;
    const auto phase = gauge_phase(rm.data(), rm.size());
    return hash_entries(rm.data(), rm.size(), phase);
}

Hash128 state_fingerprint(const Eigen::VectorXcd &v) {
    const auto phase = gauge_phase(v.data(), v.size());
    return hash_entries(v.data(), v.size(), phase);
}

namespace {

template <typename M>
double aligned_residual(const M &a, const M &b) {
    std::complex<double> ip = 0.0;
    for (Eigen::Index i = 0; i < a.size(); ++i) ip += std::conj(b(i)) * a(i);
    const double mod = std::abs(ip);
    const std::complex<double> phase = mod > 1e-12 ? ip / mod : std::complex<double>(1.0, 0.0);
    double res = 0.0;
    for (Eigen::Index i = 0; i < a.size(); ++i) res = std::max(res, std::abs(a(i) - phase * b(i)));
    return res;
}

}  // namespace

double phase_aligned_residual(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    return aligned_residual(a.reshaped(), b.reshaped());
}

double phase_aligned_residual(const Eigen::VectorXcd &a, const Eigen::VectorXcd &b) {
    return aligned_residual(a, b);
}

}  // namespace mubkit

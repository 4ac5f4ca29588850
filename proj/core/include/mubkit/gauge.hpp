#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <functional>

namespace mubkit {

/// 128-bit content hash used to identify matrices and states modulo global
/// phase. Two independent 64-bit FNV streams make accidental collisions
/// negligible at the enumeration sizes this library handles.
struct Hash128 {
    std::uint64_t a = 0, b = 0;

    bool operator==(const Hash128 &o) const { return a == o.a && b == o.b; }
    bool operator!=(const Hash128 &o) const { return !(*this == o); }
    bool operator<(const Hash128 &o) const { return a != o.a ? a < o.a : b < o.b; }
};

struct Hash128Hasher {
    std::size_t operator()(const Hash128 &h) const { return static_cast<std::size_t>(h.a ^ (h.b * 0x9e3779b97f4a7c15ULL)); }
};

/// Multiplies by a unit phase so the largest-modulus entry becomes real
/// positive. Ties in modulus (within 1e-7, well above the ~1e-12 numerical
/// noise of dimension <= 9 computations and well below the smallest genuine
/// modulus gaps) are broken by the first such entry in storage order, so
/// different floating-point paths to the same object pick the same entry.
Eigen::MatrixXcd phase_normalized(const Eigen::MatrixXcd &m);
Eigen::VectorXcd phase_normalized(const Eigen::VectorXcd &v);

/// Phase-insensitive fingerprint: gauge-fix by the largest-modulus entry,
/// round real/imaginary parts to 6 decimals, hash. Equal-modulo-phase inputs
/// produce equal fingerprints.
Hash128 unitary_fingerprint(const Eigen::MatrixXcd &m);
Hash128 state_fingerprint(const Eigen::VectorXcd &v);

/// max-norm of (a - e^{i t} b) minimized over the global phase t (computed
/// from the Frobenius inner product). Small iff a and b agree up to phase.
double phase_aligned_residual(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b);
double phase_aligned_residual(const Eigen::VectorXcd &a, const Eigen::VectorXcd &b);

}  // namespace mubkit

#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "mubkit/errors.hpp"

namespace mubkit {

namespace detail {
struct FieldImpl;
}

class FieldElement;

/// A finite field GF(p^n) with exact table-based arithmetic.
///
/// Elements are identified with indices in [0, q), q = p^n: the base-p digits
/// of the index are the coefficients of the representing polynomial, lowest
/// degree first. Index 0 is the additive zero, index 1 the multiplicative
/// one, and prime-subfield elements coincide with their integer value.
///
/// The modulus polynomial is fixed per (p, n) so element labels are
/// reproducible across runs: a built-in table pins x^2+x+1 for GF(4),
/// x^3+x+1 for GF(8) and x^2+2x+2 for GF(9) (and a few larger fields); for
/// n = 1 the degenerate modulus x - r is recorded, r the smallest primitive
/// root mod p; outside the table the lexicographically smallest monic
/// irreducible polynomial (by low-first base-p encoding) is selected.
class Field {
  public:
    /// Builds GF(p^n) with the built-in modulus. Throws NonPrime, or
    /// DomainError for n outside [1, 4] or q beyond the table bound (2^20).
    Field(int p, int n);

    /// Builds GF(p^n) with a caller-supplied monic modulus, coefficients
    /// lowest degree first (size n+1). Throws ReducibleModulus if the
    /// polynomial is not irreducible over F_p.
    Field(int p, int n, const std::vector<int> &modulus);

    int p() const;
    int n() const;
    int q() const;

    /// Modulus coefficients, lowest degree first, size n+1, leading 1.
    const std::vector<int> &modulus() const;

    /// The element with the given index in [0, q).
    FieldElement element(int index) const;
    FieldElement zero() const;
    FieldElement one() const;

    /// All q elements in index order.
    std::vector<FieldElement> elements() const;

    /// The smallest-index generator of the multiplicative group. The
    /// internal exp/log tables are built on this element.
    FieldElement primitive_element() const;

    /// Structural equality: same p, n and modulus.
    bool operator==(const Field &other) const;
    bool operator!=(const Field &other) const { return !(*this == other); }

    const std::shared_ptr<const detail::FieldImpl> &impl() const { return impl_; }

  private:
    friend class FieldElement;
    explicit Field(std::shared_ptr<const detail::FieldImpl> impl) : impl_(std::move(impl)) {}

    std::shared_ptr<const detail::FieldImpl> impl_;
};

/// An element of a Field. Cheap to copy; carries its field tag.
class FieldElement {
  public:
    FieldElement() = default;

    int index() const { return index_; }
    Field field() const;
    bool is_zero() const { return index_ == 0; }

    FieldElement operator+(const FieldElement &rhs) const;
    FieldElement operator-(const FieldElement &rhs) const;
    FieldElement operator*(const FieldElement &rhs) const;
    /// Throws DivisionByZero when rhs is zero.
    FieldElement operator/(const FieldElement &rhs) const;
    FieldElement operator-() const;

    /// Multiplicative inverse; throws DivisionByZero on the zero element.
    FieldElement inverse() const;

    /// e-th power, e >= 0 (zero element: 0 for e > 0, 1 for e = 0).
    FieldElement pow(std::int64_t e) const;

    /// Field trace down to the prime subfield, returned as the canonical
    /// integer lift in [0, p).
    int trace() const;

    /// Same element of the same field (structurally compared).
    bool operator==(const FieldElement &rhs) const;
    bool operator!=(const FieldElement &rhs) const { return !(*this == rhs); }

  private:
    friend class Field;
    FieldElement(std::shared_ptr<const detail::FieldImpl> impl, int index)
        : impl_(std::move(impl)), index_(index) {}

    std::shared_ptr<const detail::FieldImpl> impl_;
    int index_ = 0;
};

/// A point of the 2-dimensional symplectic space F_q^2; labels one
/// displacement operator.
struct PhasePoint {
    FieldElement u1, u2;

    bool is_zero() const { return u1.is_zero() && u2.is_zero(); }
    PhasePoint operator+(const PhasePoint &rhs) const { return {u1 + rhs.u1, u2 + rhs.u2}; }
    PhasePoint operator-(const PhasePoint &rhs) const { return {u1 - rhs.u1, u2 - rhs.u2}; }
    /// Scalar multiple (lambda * u1, lambda * u2).
    PhasePoint scaled(const FieldElement &lambda) const { return {lambda * u1, lambda * u2}; }
    bool operator==(const PhasePoint &rhs) const { return u1 == rhs.u1 && u2 == rhs.u2; }
    bool operator!=(const PhasePoint &rhs) const { return !(*this == rhs); }
};

/// A 1-dimensional subspace of F_q^2 together with its canonical
/// representative (the lexicographically smallest nonzero point by
/// (u1, u2) index order). The q+1 rays pairwise intersect only in zero.
struct Ray {
    PhasePoint representative;
    /// All q points lambda * representative, ordered by the index of lambda
    /// (so points[0] is zero and points[1] is the representative).
    std::vector<PhasePoint> points;
};

/// The q+1 rays of F_q^2, ordered by their representative: (0,1) first, then
/// (1, s) for s in element-index order.
std::vector<Ray> rays(const Field &f);

}  // namespace mubkit

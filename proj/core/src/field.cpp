#include "mubkit/field.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace mubkit {

namespace detail {

struct FieldImpl {
    int p = 0, n = 0, q = 0;
    std::vector<int> modulus;  // low-degree first, size n+1, monic
    int generator = 0;         // smallest multiplicative generator
    std::vector<int> exp_table;    // size q-1, exp_table[k] = generator^k
    std::vector<int> log_table;    // size q, log_table[0] = -1
    std::vector<int> neg_table;    // size q
    std::vector<int> trace_table;  // size q, values in [0, p)
    std::vector<int> add_table;    // size q*q (q is small by construction)

    int add(int a, int b) const { return add_table[static_cast<std::size_t>(a) * q + b]; }
    int neg(int a) const { return neg_table[a]; }
    int sub(int a, int b) const { return add(a, neg_table[b]); }
    int mul(int a, int b) const {
        if (a == 0 || b == 0) return 0;
        return exp_table[(log_table[a] + log_table[b]) % (q - 1)];
    }
    int inv(int a) const {
        if (a == 0) throw DivisionByZero();
        return exp_table[(q - 1 - log_table[a]) % (q - 1)];
    }
    int pow(int a, std::int64_t e) const {
        if (a == 0) return e == 0 ? 1 : 0;
        const std::int64_t m = q - 1;
        std::int64_t r = (static_cast<std::int64_t>(log_table[a]) * (e % m)) % m;
        return exp_table[static_cast<std::size_t>(r)];
    }
    bool same(const FieldImpl &o) const { return p == o.p && n == o.n && modulus == o.modulus; }
};

}  // namespace detail

namespace {

using detail::FieldImpl;

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; static_cast<std::int64_t>(d) * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

std::vector<int> prime_factors(int m) {
    std::vector<int> out;
    for (int d = 2; static_cast<std::int64_t>(d) * d <= m; ++d) {
        if (m % d == 0) {
            out.push_back(d);
            while (m % d == 0) m /= d;
        }
    }
    if (m > 1) out.push_back(m);
    return out;
}

int pow_mod(std::int64_t a, std::int64_t e, std::int64_t m) {
    std::int64_t r = 1;
    a %= m;
    for (; e > 0; e >>= 1, a = a * a % m)
        if (e & 1) r = r * a % m;
    return static_cast<int>(r);
}

int smallest_primitive_root(int p) {
    if (p == 2) return 1;
    const std::vector<int> factors = prime_factors(p - 1);
    for (int g = 2; g < p; ++g) {
        bool ok = true;
        for (int r : factors)
            if (pow_mod(g, (p - 1) / r, p) == 1) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
    throw Error("no primitive root found");  // unreachable for prime p
}

// --- dense polynomial arithmetic over F_p, coefficients low-degree first ---

std::vector<int> poly_mul_mod(const std::vector<int> &a, const std::vector<int> &b,
                              const std::vector<int> &modulus, int p) {
    std::vector<int> prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    }
    // reduce by the monic modulus of degree n
    const int n = static_cast<int>(modulus.size()) - 1;
    for (int d = static_cast<int>(prod.size()) - 1; d >= n; --d) {
        const int c = prod[static_cast<std::size_t>(d)];
        if (c == 0) continue;
        for (int k = 0; k <= n; ++k) {
            auto &slot = prod[static_cast<std::size_t>(d - n + k)];
            slot = ((slot - c * modulus[static_cast<std::size_t>(k)]) % p + p) % p;
        }
    }
    prod.resize(static_cast<std::size_t>(n), 0);
    return prod;
}

int poly_eval(const std::vector<int> &c, int x, int p) {
    int acc = 0;
    for (std::size_t i = c.size(); i-- > 0;) acc = (acc * x + c[i]) % p;
    return acc;
}

// Remainder of a by b (b monic), both low-degree first.
std::vector<int> poly_rem(std::vector<int> a, const std::vector<int> &b, int p) {
    const int db = static_cast<int>(b.size()) - 1;
    for (int d = static_cast<int>(a.size()) - 1; d >= db; --d) {
        const int c = a[static_cast<std::size_t>(d)];
        if (c == 0) continue;
        for (int k = 0; k <= db; ++k) {
            auto &slot = a[static_cast<std::size_t>(d - db + k)];
            slot = ((slot - c * b[static_cast<std::size_t>(k)]) % p + p) % p;
        }
    }
    a.resize(static_cast<std::size_t>(db), 0);
    return a;
}

bool poly_is_zero(const std::vector<int> &a) {
    return std::all_of(a.begin(), a.end(), [](int c) { return c == 0; });
}

// Exhaustive irreducibility test for monic polynomials of degree 2..4:
// a root scan settles degrees 2 and 3; degree 4 additionally requires no
// monic irreducible quadratic divisor.
bool is_irreducible(const std::vector<int> &c, int p) {
    const int deg = static_cast<int>(c.size()) - 1;
    for (int r = 0; r < p; ++r)
        if (poly_eval(c, r, p) == 0) return false;
    if (deg <= 3) return true;
    for (int b = 0; b < p; ++b)
        for (int a = 0; a < p; ++a) {
            std::vector<int> quad = {a, b, 1};
            bool quad_irred = true;
            for (int r = 0; r < p; ++r)
                if (poly_eval(quad, r, p) == 0) {
                    quad_irred = false;
                    break;
                }
            if (quad_irred && poly_is_zero(poly_rem(c, quad, p))) return false;
        }
    return true;
}

// Fixed moduli for the fields this library is routinely used with; keeps
// element labels stable across builds and platforms.
const std::map<std::pair<int, int>, std::vector<int>> &builtin_moduli() {
    static const std::map<std::pair<int, int>, std::vector<int>> table = {
        {{2, 2}, {1, 1, 1}},        // x^2 + x + 1
        {{2, 3}, {1, 1, 0, 1}},     // x^3 + x + 1
        {{2, 4}, {1, 1, 0, 0, 1}},  // x^4 + x + 1
        {{3, 2}, {2, 2, 1}},        // x^2 + 2x + 2
        {{3, 3}, {1, 2, 0, 1}},     // x^3 + 2x + 1
        {{3, 4}, {2, 0, 0, 2, 1}},  // x^4 + 2x^3 + 2
        {{5, 2}, {2, 4, 1}},        // x^2 + 4x + 2
        {{7, 2}, {3, 6, 1}},        // x^2 + 6x + 3
    };
    return table;
}

std::vector<int> default_modulus(int p, int n) {
    if (!is_prime(p)) throw NonPrime(p);
    if (n == 1) {
        // Degenerate: arithmetic is plain mod-p; record x - r, r the smallest
        // primitive root, so the residue of x is always a generator.
        const int r = smallest_primitive_root(p);
        return {(p - r) % p, 1};
    }
    auto it = builtin_moduli().find({p, n});
    if (it != builtin_moduli().end()) return it->second;
    // Lexicographically smallest monic irreducible by low-first encoding.
    std::int64_t count = 1;
    for (int i = 0; i < n; ++i) count *= p;
    for (std::int64_t enc = 0; enc < count; ++enc) {
        std::vector<int> c(static_cast<std::size_t>(n) + 1, 0);
        std::int64_t e = enc;
        for (int i = 0; i < n; ++i, e /= p) c[static_cast<std::size_t>(i)] = static_cast<int>(e % p);
        c[static_cast<std::size_t>(n)] = 1;
        if (is_irreducible(c, p)) return c;
    }
    throw Error("no irreducible modulus found");  // unreachable
}

std::shared_ptr<const FieldImpl> build_impl(int p, int n, std::vector<int> modulus) {
    if (!is_prime(p)) throw NonPrime(p);
    if (n < 1 || n > 4) throw DomainError("extension degree must be in [1, 4]");
    std::int64_t q64 = 1;
    for (int i = 0; i < n; ++i) q64 *= p;
    if (q64 > (1 << 20)) throw DomainError("field size exceeds the practical bound 2^20");
    const int q = static_cast<int>(q64);

    if (static_cast<int>(modulus.size()) != n + 1)
        throw DomainError("modulus must have degree n (n+1 coefficients)");
    for (auto &c : modulus) c = ((c % p) + p) % p;
    if (modulus.back() != 1) throw DomainError("modulus must be monic");
    if (n >= 2 && !is_irreducible(modulus, p))
        throw ReducibleModulus("modulus polynomial is reducible over F_p");

    auto impl = std::make_shared<FieldImpl>();
    impl->p = p;
    impl->n = n;
    impl->q = q;
    impl->modulus = modulus;

    // index <-> coefficient vector, low-degree first
    auto decode = [&](int idx) {
        std::vector<int> c(static_cast<std::size_t>(n), 0);
        for (int i = 0; i < n; ++i, idx /= p) c[static_cast<std::size_t>(i)] = idx % p;
        return c;
    };
    auto encode = [&](const std::vector<int> &c) {
        int idx = 0;
        for (int i = n - 1; i >= 0; --i) idx = idx * p + c[static_cast<std::size_t>(i)];
        return idx;
    };

    impl->add_table.resize(static_cast<std::size_t>(q) * q);
    impl->neg_table.resize(static_cast<std::size_t>(q));
    for (int a = 0; a < q; ++a) {
        const auto ca = decode(a);
        std::vector<int> cn(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) cn[static_cast<std::size_t>(i)] = (p - ca[static_cast<std::size_t>(i)]) % p;
        impl->neg_table[static_cast<std::size_t>(a)] = encode(cn);
        for (int b = 0; b <= a; ++b) {
            const auto cb = decode(b);
            std::vector<int> cs(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i)
                cs[static_cast<std::size_t>(i)] =
                    (ca[static_cast<std::size_t>(i)] + cb[static_cast<std::size_t>(i)]) % p;
            const int s = encode(cs);
            impl->add_table[static_cast<std::size_t>(a) * q + b] = s;
            impl->add_table[static_cast<std::size_t>(b) * q + a] = s;
        }
    }

    auto mul_raw = [&](int a, int b) {
        return encode(poly_mul_mod(decode(a), decode(b), modulus, p));
    };
    auto pow_raw = [&](int a, std::int64_t e) {
        int r = 1;
        std::int64_t base = a;
        for (; e > 0; e >>= 1) {
            if (e & 1) r = mul_raw(r, static_cast<int>(base));
            base = mul_raw(static_cast<int>(base), static_cast<int>(base));
        }
        return r;
    };

    // smallest multiplicative generator
    const std::vector<int> factors = prime_factors(q - 1);
    int gen = 1;
    if (q > 2) {
        for (int cand = 2; cand < q; ++cand) {
            bool ok = true;
            for (int r : factors)
                if (pow_raw(cand, (q - 1) / r) == 1) {
                    ok = false;
                    break;
                }
            if (ok) {
                gen = cand;
                break;
            }
        }
    }
    impl->generator = gen;

    impl->exp_table.resize(static_cast<std::size_t>(q - 1));
    impl->log_table.assign(static_cast<std::size_t>(q), -1);
    int acc = 1;
    for (int k = 0; k < q - 1; ++k) {
        impl->exp_table[static_cast<std::size_t>(k)] = acc;
        if (impl->log_table[static_cast<std::size_t>(acc)] != -1)
            throw Error("generator produced a repeated power");  // would signal a bug
        impl->log_table[static_cast<std::size_t>(acc)] = k;
        acc = mul_raw(acc, gen);
    }
    if (acc != 1) throw Error("generator order mismatch");  // would signal a bug

    // trace table: tr(x) = sum of x^(p^i), i in [0, n)
    impl->trace_table.resize(static_cast<std::size_t>(q));
    for (int a = 0; a < q; ++a) {
        int t = 0;
        std::int64_t pe = 1;
        for (int i = 0; i < n; ++i, pe *= p) t = impl->add(t, pow_raw(a, pe));
        if (t >= p) throw Error("trace left the prime subfield");  // would signal a bug
        impl->trace_table[static_cast<std::size_t>(a)] = t;
    }

    return impl;
}

}  // namespace

Field::Field(int p, int n) : impl_(build_impl(p, n, default_modulus(p, n))) {}

Field::Field(int p, int n, const std::vector<int> &modulus) : impl_(build_impl(p, n, modulus)) {}

int Field::p() const { return impl_->p; }
int Field::n() const { return impl_->n; }
int Field::q() const { return impl_->q; }
const std::vector<int> &Field::modulus() const { return impl_->modulus; }

FieldElement Field::element(int index) const {
    if (index < 0 || index >= impl_->q) throw DomainError("element index out of range");
    return FieldElement(impl_, index);
}

FieldElement Field::zero() const { return FieldElement(impl_, 0); }
FieldElement Field::one() const { return FieldElement(impl_, 1); }

std::vector<FieldElement> Field::elements() const {
    std::vector<FieldElement> out;
    out.reserve(static_cast<std::size_t>(impl_->q));
    for (int i = 0; i < impl_->q; ++i) out.emplace_back(FieldElement(impl_, i));
    return out;
}

FieldElement Field::primitive_element() const { return FieldElement(impl_, impl_->generator); }

bool Field::operator==(const Field &other) const {
    return impl_ == other.impl_ || impl_->same(*other.impl_);
}

Field FieldElement::field() const { return Field(impl_); }

namespace {
const std::shared_ptr<const detail::FieldImpl> &check_same(
    const std::shared_ptr<const detail::FieldImpl> &a,
    const std::shared_ptr<const detail::FieldImpl> &b) {
    if (!a || !b) throw DomainError("uninitialized field element");
    if (a != b && !a->same(*b)) throw FieldMismatch();
    return a;
}
}  // namespace

FieldElement FieldElement::operator+(const FieldElement &rhs) const {
    const auto &impl = check_same(impl_, rhs.impl_);
    return FieldElement(impl, impl->add(index_, rhs.index_));
}

FieldElement FieldElement::operator-(const FieldElement &rhs) const {
    const auto &impl = check_same(impl_, rhs.impl_);
    return FieldElement(impl, impl->sub(index_, rhs.index_));
}

FieldElement FieldElement::operator*(const FieldElement &rhs) const {
    const auto &impl = check_same(impl_, rhs.impl_);
    return FieldElement(impl, impl->mul(index_, rhs.index_));
}

FieldElement FieldElement::operator/(const FieldElement &rhs) const {
    const auto &impl = check_same(impl_, rhs.impl_);
    return FieldElement(impl, impl->mul(index_, impl->inv(rhs.index_)));
}

FieldElement FieldElement::operator-() const { return FieldElement(impl_, impl_->neg(index_)); }

FieldElement FieldElement::inverse() const { return FieldElement(impl_, impl_->inv(index_)); }

FieldElement FieldElement::pow(std::int64_t e) const {
    if (e < 0) throw DomainError("negative exponent; use inverse()");
    return FieldElement(impl_, impl_->pow(index_, e));
}

int FieldElement::trace() const { return impl_->trace_table[static_cast<std::size_t>(index_)]; }

bool FieldElement::operator==(const FieldElement &rhs) const {
    if (!impl_ || !rhs.impl_) return impl_ == rhs.impl_ && index_ == rhs.index_;
    return index_ == rhs.index_ && (impl_ == rhs.impl_ || impl_->same(*rhs.impl_));
}

std::vector<Ray> rays(const Field &f) {
    const int q = f.q();
    std::vector<Ray> out;
    out.reserve(static_cast<std::size_t>(q) + 1);
    std::vector<PhasePoint> reps;
    reps.push_back({f.zero(), f.one()});
    for (int s = 0; s < q; ++s) reps.push_back({f.one(), f.element(s)});
    for (const auto &rep : reps) {
        Ray ray;
        ray.representative = rep;
        ray.points.reserve(static_cast<std::size_t>(q));
        for (int l = 0; l < q; ++l) ray.points.push_back(rep.scaled(f.element(l)));
        out.push_back(std::move(ray));
    }
    return out;
}

}  // namespace mubkit

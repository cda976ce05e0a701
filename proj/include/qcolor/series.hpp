#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qcolor/rings.hpp"

namespace qcolor {

/// Formal power series in q truncated at a fixed order Q: the coefficients of
/// q^0 .. q^Q over a coefficient ring chosen at construction time.  Values are
/// immutable once built; all arithmetic returns fresh series.
template <typename Ring>
class TruncatedSeries {
public:
    using Elem = typename Ring::Elem;

    TruncatedSeries(Ring ring, std::size_t order)
        : ring_(std::move(ring)), coeffs_(order + 1, ring_.zero()) {}

    /// The multiplicative identity 1 + 0q + ... + 0q^Q.
    static TruncatedSeries one(Ring ring, std::size_t order) {
        TruncatedSeries s(std::move(ring), order);
        s.coeffs_[0] = s.ring_.one();
        return s;
    }

    /// Series with the given low-order coefficients; the rest are zero.
    static TruncatedSeries from_ints(Ring ring, std::size_t order,
                                     std::initializer_list<long> low_coeffs) {
        if (low_coeffs.size() > order + 1) {
            throw std::invalid_argument("more coefficients than the truncation order admits");
        }
        TruncatedSeries s(std::move(ring), order);
        std::size_t i = 0;
        for (long v : low_coeffs) s.coeffs_[i++] = s.ring_.from_int(v);
        return s;
    }

    std::size_t order() const { return coeffs_.size() - 1; }
    const Ring& ring() const { return ring_; }

    const Elem& operator[](std::size_t i) const { return coeffs_[i]; }
    Elem& at(std::size_t i) { return coeffs_.at(i); }
    const std::vector<Elem>& coefficients() const { return coeffs_; }

    bool operator==(const TruncatedSeries&) const = default;

private:
    Ring ring_;
    std::vector<Elem> coeffs_;
};

namespace detail {

template <typename Ring>
void require_same_ring(const TruncatedSeries<Ring>& a, const TruncatedSeries<Ring>& b) {
    if (!(a.ring() == b.ring())) {
        throw std::invalid_argument("coefficient ring mismatch: " + a.ring().describe() +
                                    " vs " + b.ring().describe());
    }
}

}  // namespace detail

/// Cauchy product, truncated to the smaller operand order.
template <typename Ring>
TruncatedSeries<Ring> mul(const TruncatedSeries<Ring>& a, const TruncatedSeries<Ring>& b) {
    detail::require_same_ring(a, b);
    const Ring& ring = a.ring();
    const std::size_t q = std::min(a.order(), b.order());
    TruncatedSeries<Ring> out(ring, q);
    for (std::size_t i = 0; i <= q; ++i) {
        if (ring.is_zero(a[i])) continue;
        for (std::size_t j = 0; i + j <= q; ++j) {
            if (ring.is_zero(b[j])) continue;
            ring.add_mul(out.at(i + j), a[i], b[j]);
        }
    }
    return out;
}

template <typename Ring>
TruncatedSeries<Ring> operator*(const TruncatedSeries<Ring>& a, const TruncatedSeries<Ring>& b) {
    return mul(a, b);
}

/// Coefficientwise sum; operands must share ring and are truncated to the smaller order.
template <typename Ring>
TruncatedSeries<Ring> add(const TruncatedSeries<Ring>& a, const TruncatedSeries<Ring>& b) {
    detail::require_same_ring(a, b);
    const Ring& ring = a.ring();
    const std::size_t q = std::min(a.order(), b.order());
    TruncatedSeries<Ring> out(ring, q);
    for (std::size_t i = 0; i <= q; ++i) out.at(i) = ring.add(a[i], b[i]);
    return out;
}

/// Multiplicative inverse through the truncation order.  The constant term
/// must be a unit of the coefficient ring; otherwise the series is rejected.
template <typename Ring>
TruncatedSeries<Ring> inverse(const TruncatedSeries<Ring>& a) {
    const Ring& ring = a.ring();
    const auto inv0 = ring.invert_unit(a[0]);
    const std::size_t q = a.order();
    TruncatedSeries<Ring> out(ring, q);
    out.at(0) = inv0;
    for (std::size_t n = 1; n <= q; ++n) {
        auto acc = ring.zero();
        for (std::size_t k = 1; k <= n; ++k) {
            if (ring.is_zero(a[k])) continue;
            ring.add_mul(acc, a[k], out[n - k]);
        }
        out.at(n) = ring.negate(ring.mul(inv0, acc));
    }
    return out;
}

/// base^e through the truncation order, by repeated squaring.
template <typename Ring>
TruncatedSeries<Ring> pow(const TruncatedSeries<Ring>& base, unsigned long e) {
    auto result = TruncatedSeries<Ring>::one(base.ring(), base.order());
    if (e == 0) return result;
    auto b = base;
    while (true) {
        if (e & 1) result = mul(result, b);
        e >>= 1;
        if (e == 0) break;
        b = mul(b, b);
    }
    return result;
}

/// (q^d; q^d)_inf truncated at `order`: the pentagonal number theorem puts
/// (-1)^j at d*g for each generalized pentagonal number g = j(3j -+ 1)/2,
/// and zero everywhere else.
template <typename Ring>
TruncatedSeries<Ring> pochhammer_inf(unsigned d, std::size_t order, Ring ring) {
    if (d == 0) throw std::invalid_argument("pochhammer step d must be >= 1");
    TruncatedSeries<Ring> out(ring, order);
    const Ring& rg = out.ring();
    out.at(0) = rg.one();
    const auto minus_one = rg.from_int(-1);
    for (unsigned long j = 1;; ++j) {
        const unsigned long g1 = j * (3 * j - 1) / 2;
        const unsigned long g2 = j * (3 * j + 1) / 2;
        bool placed = false;
        const auto sign = (j % 2 == 1) ? minus_one : rg.one();
        for (unsigned long g : {g1, g2}) {
            const unsigned long pos = static_cast<unsigned long>(d) * g;
            if (pos <= order) {
                out.at(pos) = sign;
                placed = true;
            }
        }
        if (!placed) break;
    }
    return out;
}

/// Finite (q; q)_n = (1-q)(1-q^2)...(1-q^n), truncated at `order`.
template <typename Ring>
TruncatedSeries<Ring> pochhammer_finite(unsigned n, std::size_t order, Ring ring) {
    auto out = TruncatedSeries<Ring>::one(std::move(ring), order);
    const Ring& rg = out.ring();
    for (std::size_t i = 1; i <= n && i <= order; ++i) {
        for (std::size_t idx = order; idx >= i; --idx) {
            out.at(idx) = rg.sub(out[idx], out[idx - i]);
        }
    }
    return out;
}

/// Reduce an exact series into canonical residues mod m.
inline TruncatedSeries<ResidueRing> reduce_mod(const TruncatedSeries<ExactIntegers>& a,
                                               std::uint64_t m) {
    ResidueRing ring(m);
    TruncatedSeries<ResidueRing> out(ring, a.order());
    for (std::size_t i = 0; i <= a.order(); ++i) out.at(i) = ring.from_mpz(a[i]);
    return out;
}

/// Reduce a modular series to a divisor of its modulus; anything else is rejected.
inline TruncatedSeries<ResidueRing> reduce_mod(const TruncatedSeries<ResidueRing>& a,
                                               std::uint64_t m) {
    ResidueRing ring(m);
    if (a.ring().modulus() % m != 0) {
        throw std::invalid_argument("cannot reduce a series with modulus " +
                                    std::to_string(a.ring().modulus()) + " to modulus " +
                                    std::to_string(m) + ": source modulus not divisible by target");
    }
    TruncatedSeries<ResidueRing> out(ring, a.order());
    for (std::size_t i = 0; i <= a.order(); ++i) out.at(i) = a[i] % m;
    return out;
}

}  // namespace qcolor

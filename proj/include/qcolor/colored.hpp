#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcolor/partitions.hpp"
#include "qcolor/series.hpp"

namespace qcolor {

/// Parameters of (k, j)-colored partition counting: k colors exist, and at
/// most j distinct colors may be used among the parts of any single size.
struct ColoredCountParams {
    unsigned colors = 1;               // k
    unsigned max_colors_per_size = 1;  // j

    void validate() const {
        if (max_colors_per_size < 1 || max_colors_per_size > colors) {
            throw std::invalid_argument("need 1 <= j <= k, got k=" + std::to_string(colors) +
                                        " j=" + std::to_string(max_colors_per_size));
        }
    }
};

/// C_{k,j}(q) through q^order: the product over part sizes n of
/// sum_{i=0..j} C(k-j+i-1, i) q^{i n}, divided by (q; q)_inf^j.
/// Coefficient n counts the (k, j)-colored partitions of n.
template <typename Ring>
TruncatedSeries<Ring> ckj_series(ColoredCountParams params, std::size_t order, Ring ring) {
    params.validate();
    const unsigned k = params.colors;
    const unsigned j = params.max_colors_per_size;

    auto acc = TruncatedSeries<Ring>::one(ring, order);
    const Ring& rg = acc.ring();

    // The per-size factor is the same polynomial in q^n for every n.
    std::vector<typename Ring::Elem> factor(j + 1, rg.zero());
    factor[0] = rg.one();
    for (unsigned i = 1; i <= j; ++i) factor[i] = rg.from_mpz(binomial(k - j + i - 1, i));

    for (std::size_t n = 1; n <= order; ++n) {
        for (std::size_t idx = order; idx >= n; --idx) {
            for (unsigned i = 1; i <= j && i * n <= idx; ++i) {
                rg.add_mul(acc.at(idx), factor[i], acc[idx - i * n]);
            }
        }
    }
    return mul(acc, pow(inverse(pochhammer_inf(1, order, ring)), j));
}

/// The three C_{k,j} families with a known product shortcut.
enum class EtaForm {
    first,        // j = 1:   prod (1 + (k-1) q^n) / (q; q)_inf
    penultimate,  // j = k-1: (q^k; q^k)_inf / (q; q)_inf^k
    full,         // j = k:   1 / (q; q)_inf^k
};

template <typename Ring>
TruncatedSeries<Ring> ckj_eta_series(unsigned k, EtaForm which, std::size_t order, Ring ring) {
    if (k == 0) throw std::invalid_argument("need at least one color");
    switch (which) {
        case EtaForm::first: {
            auto acc = TruncatedSeries<Ring>::one(ring, order);
            const Ring& rg = acc.ring();
            const auto c = rg.from_int(static_cast<long>(k) - 1);
            for (std::size_t n = 1; n <= order; ++n) {
                for (std::size_t idx = order; idx >= n; --idx) {
                    rg.add_mul(acc.at(idx), c, acc[idx - n]);
                }
            }
            return mul(acc, inverse(pochhammer_inf(1, order, ring)));
        }
        case EtaForm::penultimate: {
            if (k < 2) throw std::invalid_argument("j = k-1 needs k >= 2");
            return mul(pochhammer_inf(k, order, ring),
                       pow(inverse(pochhammer_inf(1, order, ring)), k));
        }
        case EtaForm::full:
            return pow(inverse(pochhammer_inf(1, order, ring)), k);
    }
    throw std::invalid_argument("unknown eta form");
}

/// Overpartition generating function prod (1+q^n)/(1-q^n) through q^order.
template <typename Ring>
TruncatedSeries<Ring> overpartition_series(std::size_t order, Ring ring) {
    return mul(pochhammer_inf(2, order, ring),
               pow(inverse(pochhammer_inf(1, order, ring)), 2));
}

/// k-colored partitions: 1 / (q; q)_inf^k through q^order.
template <typename Ring>
TruncatedSeries<Ring> kcolored_series(unsigned k, std::size_t order, Ring ring) {
    if (k == 0) throw std::invalid_argument("need at least one color");
    return pow(inverse(pochhammer_inf(1, order, ring)), k);
}

/// Number of (k, j)-colorings of one part size repeated `count` times:
/// sum over the number s of distinct colors used of C(k, s) C(count-1, s-1).
inline mpz_class ckj_entry_weight(const ColoredCountParams& params, unsigned count) {
    mpz_class w(0);
    const unsigned smax = std::min(params.max_colors_per_size, count);
    for (unsigned s = 1; s <= smax; ++s) w += binomial(params.colors, s) * binomial(count - 1, s - 1);
    return w;
}

/// Number of (k, j)-colored partitions whose underlying shape is `shape`:
/// the product of the per-size weights.
inline mpz_class ckj_partition_weight(const ColoredCountParams& params, const PartitionFreq& shape) {
    params.validate();
    shape.validate();
    mpz_class w(1);
    for (const auto& e : shape.entries) w *= ckj_entry_weight(params, e.count);
    return w;
}

/// Independent oracle: c_{k,j}(n) as a sum of shape weights over all
/// partitions of n, streamed by recursive enumeration.
inline mpz_class ckj_brute(ColoredCountParams params, unsigned n) {
    params.validate();
    mpz_class total(0);
    for_each_partition(n, [&](const PartitionFreq& shape) {
        mpz_class w(1);
        for (const auto& e : shape.entries) w *= ckj_entry_weight(params, e.count);
        total += w;
    });
    return total;
}

namespace detail {

// Count colorings of one size with multiplicity `count` by explicitly walking
// color subsets of size s and compositions of count into s positive blocks.
inline unsigned long explicit_colorings_of_entry(unsigned k, unsigned j, unsigned count) {
    unsigned long total = 0;
    std::vector<unsigned> chosen;
    auto compositions = [&](auto&& self, unsigned remaining, unsigned slots) -> void {
        if (slots == 1) {
            if (remaining >= 1) ++total;
            return;
        }
        for (unsigned first = 1; first + slots - 1 <= remaining; ++first) {
            self(self, remaining - first, slots - 1);
        }
    };
    auto subsets = [&](auto&& self, unsigned next_color, unsigned left) -> void {
        if (left == 0) {
            compositions(compositions, count, static_cast<unsigned>(chosen.size()));
            return;
        }
        for (unsigned c = next_color; c + left <= k + 1; ++c) {
            chosen.push_back(c);
            self(self, c + 1, left - 1);
            chosen.pop_back();
        }
    };
    const unsigned smax = std::min(j, count);
    for (unsigned s = 1; s <= smax; ++s) subsets(subsets, 1, s);
    return total;
}

}  // namespace detail

/// Fully explicit count of (k, j)-colored partitions of n, enumerating color
/// subsets and per-color multiplicities for every shape.  Tiny n only; this
/// exists to validate the closed per-size weight against raw enumeration.
inline mpz_class ckj_explicit_count(ColoredCountParams params, unsigned n) {
    params.validate();
    if (n > 12) throw std::invalid_argument("explicit colored enumeration is limited to n <= 12");
    mpz_class total(0);
    for_each_partition(n, [&](const PartitionFreq& shape) {
        mpz_class w(1);
        for (const auto& e : shape.entries) {
            w *= static_cast<unsigned long>(detail::explicit_colorings_of_entry(
                params.colors, params.max_colors_per_size, e.count));
        }
        total += w;
    });
    return total;
}

/// Rebuild the j = k coefficients from the j = k-1 ones through the
/// d-magnified pentagonal recurrence: with g running over the generalized
/// pentagonal numbers,
///   out(n) = src(n) - sum_{g >= 1} (-1)^j out(n - d*g).
template <typename Ring>
TruncatedSeries<Ring> pentagonal_recurrence_reconstruct(const TruncatedSeries<Ring>& src,
                                                        unsigned d) {
    if (d == 0) throw std::invalid_argument("magnification d must be >= 1");
    const Ring& rg = src.ring();
    const std::size_t q = src.order();

    std::vector<std::pair<unsigned long, int>> offsets;  // (d*g, sign of (-1)^j)
    for (unsigned long j = 1;; ++j) {
        const unsigned long g1 = j * (3 * j - 1) / 2;
        const unsigned long g2 = j * (3 * j + 1) / 2;
        bool placed = false;
        for (unsigned long g : {g1, g2}) {
            const unsigned long pos = static_cast<unsigned long>(d) * g;
            if (pos <= q) {
                offsets.emplace_back(pos, j % 2 == 1 ? -1 : 1);
                placed = true;
            }
        }
        if (!placed) break;
    }

    TruncatedSeries<Ring> out(rg, q);
    for (std::size_t n = 0; n <= q; ++n) {
        auto v = src[n];
        for (const auto& [off, sign] : offsets) {
            if (off > n) break;
            v = sign < 0 ? rg.add(v, out[n - off]) : rg.sub(v, out[n - off]);
        }
        out.at(n) = v;
    }
    return out;
}

}  // namespace qcolor

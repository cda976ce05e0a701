#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcolor/colored.hpp"
#include "qcolor/parallel.hpp"
#include "qcolor/series.hpp"

namespace qcolor {

/// Arithmetic progression of coefficient indices start, start+step, ...
/// scanned against a modulus.  `start` is kept as given rather than reduced
/// mod step: the scans of interest begin at index 2 even when step is 1.
struct ProgressionSpec {
    std::uint64_t start = 0;      // first scanned index
    std::uint64_t step = 1;       // progression step d >= 1
    std::uint64_t modulus = 2;    // congruence modulus m >= 1
    std::uint64_t max_index = 0;  // largest coefficient index scanned

    void validate() const {
        if (step == 0) throw std::invalid_argument("progression step must be >= 1");
        if (modulus == 0) throw std::invalid_argument("congruence modulus must be >= 1");
    }
};

struct CongruenceWitness {
    std::uint64_t index = 0;  // coefficient index
    std::uint64_t value = 0;  // nonzero residue found there
    bool operator==(const CongruenceWitness&) const = default;
};

/// Witness lists are capped; congruence failure patterns are data, but
/// unbounded reports are not.
inline constexpr std::size_t kWitnessCap = 100;

struct CongruenceReport {
    ProgressionSpec spec;
    bool holds = true;
    std::vector<CongruenceWitness> witnesses;  // sorted by index, capped at kWitnessCap
    std::uint64_t witness_total = 0;           // total found, including beyond the cap
    std::uint64_t checked_count = 0;
};

/// Scan the coefficients of `series` along the progression, collecting every
/// nonzero residue mod spec.modulus as witness.  The series must reach
/// spec.max_index and, if modular, carry a modulus divisible by spec.modulus.
template <typename Ring>
CongruenceReport verify_progression(const TruncatedSeries<Ring>& series,
                                    const ProgressionSpec& spec) {
    spec.validate();
    if (series.order() < spec.max_index) {
        throw std::invalid_argument("series order " + std::to_string(series.order()) +
                                    " too small: scanning up to index " +
                                    std::to_string(spec.max_index) +
                                    " requires at least that truncation order");
    }
    if constexpr (Ring::modular) {
        if (series.ring().modulus() % spec.modulus != 0) {
            throw std::invalid_argument("series modulus " +
                                        std::to_string(series.ring().modulus()) +
                                        " is not divisible by the progression modulus " +
                                        std::to_string(spec.modulus));
        }
    }
    CongruenceReport rep;
    rep.spec = spec;
    for (std::uint64_t idx = spec.start; idx <= spec.max_index; idx += spec.step) {
        ++rep.checked_count;
        std::uint64_t v;
        if constexpr (Ring::modular) {
            v = series[idx] % spec.modulus;
        } else {
            v = mpz_fdiv_ui(series[idx].get_mpz_t(), spec.modulus);
        }
        if (v != 0) {
            ++rep.witness_total;
            if (rep.witnesses.size() < kWitnessCap) rep.witnesses.push_back({idx, v});
        }
    }
    rep.holds = rep.witness_total == 0;
    return rep;
}

/// One progression 3^ell n + 2 scanned over c_{9,j} mod 27.
struct WitnessScanEntry {
    unsigned ell = 0;
    std::uint64_t step = 1;  // 3^ell
    std::optional<CongruenceWitness> witness;
    std::uint64_t checked_count = 0;
};

struct WitnessSearchReport {
    unsigned j = 1;
    unsigned ell_max = 0;
    std::uint64_t coeff_bound = 0;
    std::vector<WitnessScanEntry> scans;  // one per ell = 0..ell_max

    bool any_witness() const {
        for (const auto& s : scans)
            if (s.witness) return true;
        return false;
    }
};

/// For j in {1, 4, 7}, scan c_{9,j}(3^ell n + 2) mod 27 for each ell up to
/// ell_max, reporting the least coefficient index <= coeff_bound with a
/// nonzero residue, or its absence below the bound.
inline WitnessSearchReport witness_search(unsigned j, unsigned ell_max,
                                          std::uint64_t coeff_bound) {
    if (j != 1 && j != 4 && j != 7) {
        throw std::invalid_argument("witness search applies to j in {1, 4, 7}");
    }
    if (coeff_bound < 2) throw std::invalid_argument("coefficient bound must be >= 2");
    if (ell_max > 40) throw std::invalid_argument("ell_max must be at most 40");

    const auto series = ckj_series({9, j}, coeff_bound, ResidueRing(27));
    WitnessSearchReport rep;
    rep.j = j;
    rep.ell_max = ell_max;
    rep.coeff_bound = coeff_bound;
    for (unsigned ell = 0; ell <= ell_max; ++ell) {
        WitnessScanEntry entry;
        entry.ell = ell;
        entry.step = 1;
        for (unsigned i = 0; i < ell; ++i) entry.step *= 3;
        for (std::uint64_t idx = 2; idx <= coeff_bound; idx += entry.step) {
            ++entry.checked_count;
            if (series[idx] != 0) {
                entry.witness = CongruenceWitness{idx, series[idx]};
                break;
            }
        }
        rep.scans.push_back(entry);
    }
    return rep;
}

/// Sum of the positive divisors of n.
inline std::uint64_t sigma1(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("sigma1 needs n >= 1");
    std::uint64_t s = 0;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            s += d;
            if (d != n / d) s += n / d;
        }
    }
    return s;
}

/// sigma1 for all 1 <= n <= n_max by sieving; index 0 is unused.
inline std::vector<std::uint64_t> sigma1_table(std::uint64_t n_max) {
    std::vector<std::uint64_t> t(n_max + 1, 0);
    for (std::uint64_t d = 1; d <= n_max; ++d) {
        for (std::uint64_t m = d; m <= n_max; m += d) t[m] += d;
    }
    return t;
}

/// Mod-27 contribution of a single part size repeated e times among the
/// (9, j)-colored partitions: sum_{i=1..j} C(9, i) C(e-1, i-1) mod 27.
inline std::uint64_t single_size_contribution(unsigned j, std::uint64_t e) {
    if (j < 1 || j > 9) throw std::invalid_argument("need 1 <= j <= 9");
    if (e < 1) throw std::invalid_argument("multiplicity must be >= 1");
    mpz_class acc(0);
    for (unsigned i = 1; i <= j; ++i) acc += binomial(9, i) * binomial(e - 1, i - 1);
    return mpz_fdiv_ui(acc.get_mpz_t(), 27);
}

/// Statistics of a partition with exactly one special part size, the one
/// whose multiplicity t*p + y is not divisible by p (1 <= y <= p-1); r is the
/// total number of part sizes.
struct SpecialPartStats {
    unsigned t = 0;
    unsigned y = 1;
    std::size_t r = 0;
    bool operator==(const SpecialPartStats&) const = default;
};

/// Classify a partition: its stats if exactly one part size has multiplicity
/// not divisible by p, nothing otherwise.
inline std::optional<SpecialPartStats> special_part_stats(unsigned p, const PartitionFreq& shape) {
    std::optional<SpecialPartStats> found;
    for (const auto& e : shape.entries) {
        if (e.count % p == 0) continue;
        if (found) return std::nullopt;  // two special sizes
        found = SpecialPartStats{e.count / p, e.count % p, shape.size_count()};
    }
    return found;
}

namespace detail {

inline void require_prime(unsigned p) {
    if (p < 2) throw std::invalid_argument("p must be a prime");
    for (unsigned d = 2; d * d <= p; ++d) {
        if (p % d == 0) throw std::invalid_argument(std::to_string(p) + " is not prime");
    }
}

inline std::uint64_t pow2_mod(unsigned long e, std::uint64_t m) {
    std::uint64_t r = 1 % m, b = 2 % m;
    while (e) {
        if (e & 1) r = (r * b) % m;
        b = (b * b) % m;
        e >>= 1;
    }
    return r;
}

/// Combinatorial side of the c_{2p,p} identity, with the overpartition term
/// precomputed by the caller.  The sum runs over partitions with exactly one
/// special size whose multiplicity tp + y is not divisible by p; the other
/// sizes carry multiplicities divisible by p, so dividing those by p leaves a
/// backbone partition of (n - special*mult)/p that avoids the special size.
inline std::uint64_t c2pp_partition_side_with(unsigned p, unsigned n,
                                              std::uint64_t pbar_mod_p2) {
    const std::uint64_t p2 = static_cast<std::uint64_t>(p) * p;
    const ResidueRing modp(p);
    std::uint64_t ssum = 0;  // mod p
    for (unsigned special = 1; special <= n; ++special) {
        for (unsigned mult = 1; static_cast<unsigned long>(special) * mult <= n; ++mult) {
            if (mult % p == 0) continue;
            const unsigned rest = n - special * mult;
            if (rest % p != 0) continue;
            const unsigned t = mult / p;
            const unsigned y = mult % p;
            const std::uint64_t factor =
                modp.mul(modp.from_int(static_cast<long>(t) + 1), modp.invert_unit(y));
            std::uint64_t local = 0;  // sum of 2^{1 + r(backbone)} mod p
            for_each_partition(
                rest / p,
                [&](const PartitionFreq& backbone) {
                    local = modp.add(local, pow2_mod(1 + backbone.size_count(), p));
                },
                special);
            ssum = modp.add(ssum, modp.mul(local, factor));
        }
    }
    return (pbar_mod_p2 + static_cast<std::uint64_t>(p) * ssum) % p2;
}

}  // namespace detail

/// c_{2p,p}(n) mod p^2 via series expansion of C_{2p,p}.
inline std::uint64_t c2pp_series_side(unsigned p, unsigned n) {
    detail::require_prime(p);
    const auto s = ckj_series({2 * p, p}, n, ResidueRing(static_cast<std::uint64_t>(p) * p));
    return s[n];
}

/// c_{2p,p}(n) mod p^2 via partition enumeration: the overpartition count of
/// n/p (zero when p does not divide n) plus p times the weighted sum
/// 2^{r(lambda)} (t(lambda)+1) y(lambda)^{-1} over the special-size partitions,
/// inverses taken mod p.
inline std::uint64_t c2pp_partition_side(unsigned p, unsigned n) {
    detail::require_prime(p);
    const std::uint64_t p2 = static_cast<std::uint64_t>(p) * p;
    std::uint64_t pbar = 0;
    if (n % p == 0) {
        const auto ov = overpartition_series(n / p, ResidueRing(p2));
        pbar = ov[n / p];
    }
    return detail::c2pp_partition_side_with(p, n, pbar);
}

struct C2ppMismatch {
    unsigned n = 0;
    std::uint64_t series_side = 0;
    std::uint64_t partition_side = 0;
    bool operator==(const C2ppMismatch&) const = default;
};

/// Compare both routes to c_{2p,p}(n) mod p^2 for every n <= n_max.
/// Returns the mismatches (expected empty).
inline std::vector<C2ppMismatch> c2pp_check(unsigned p, unsigned n_max, unsigned threads = 1) {
    detail::require_prime(p);
    const std::uint64_t p2 = static_cast<std::uint64_t>(p) * p;
    const auto lhs = ckj_series({2 * p, p}, n_max, ResidueRing(p2));
    const auto pbar = overpartition_series(n_max / p + 1, ResidueRing(p2));

    std::vector<std::vector<C2ppMismatch>> found(threads ? threads : 1);
    parallel_chunks(static_cast<std::size_t>(n_max) + 1, threads,
                    [&](std::size_t chunk, std::size_t begin, std::size_t end) {
                        for (std::size_t n = begin; n < end; ++n) {
                            const std::uint64_t pb = (n % p == 0) ? pbar[n / p] : 0;
                            const std::uint64_t rhs = detail::c2pp_partition_side_with(
                                p, static_cast<unsigned>(n), pb);
                            if (lhs[n] != rhs) {
                                found[chunk].push_back(
                                    {static_cast<unsigned>(n), lhs[n], rhs});
                            }
                        }
                    });
    std::vector<C2ppMismatch> out;
    for (auto& part : found) out.insert(out.end(), part.begin(), part.end());
    return out;
}

/// The mod-p relations: c_{2p,p}(n) is pbar(n/p) mod p when p | n and 0 mod p
/// otherwise.  Returns the indices n <= n_max where the relation fails.
inline std::vector<unsigned> c2pp_mod_p_check(unsigned p, unsigned n_max) {
    detail::require_prime(p);
    const auto lhs = ckj_series({2 * p, p}, n_max, ResidueRing(p));
    const auto pbar = overpartition_series(n_max / p + 1, ResidueRing(p));
    std::vector<unsigned> bad;
    for (unsigned n = 0; n <= n_max; ++n) {
        const std::uint64_t expect = (n % p == 0) ? pbar[n / p] : 0;
        if (lhs[n] != expect) bad.push_back(n);
    }
    return bad;
}

}  // namespace qcolor

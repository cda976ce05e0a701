#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace qcolor {

/// One part size together with its multiplicity.
struct PartitionEntry {
    unsigned part = 0;
    unsigned count = 0;
    bool operator==(const PartitionEntry&) const = default;
};

/// Partition in frequency notation: distinct part sizes in strictly
/// increasing order, each with multiplicity >= 1.
struct PartitionFreq {
    std::vector<PartitionEntry> entries;

    unsigned long weight() const {
        unsigned long w = 0;
        for (const auto& e : entries) w += static_cast<unsigned long>(e.part) * e.count;
        return w;
    }

    /// Number of distinct part sizes, r(lambda).
    std::size_t size_count() const { return entries.size(); }

    void validate() const {
        unsigned prev = 0;
        for (const auto& e : entries) {
            if (e.part <= prev) throw std::invalid_argument("part sizes must strictly increase");
            if (e.count == 0) throw std::invalid_argument("multiplicities must be >= 1");
            prev = e.part;
        }
    }

    bool operator==(const PartitionFreq&) const = default;
};

namespace detail {

template <typename Visitor>
void partition_rec(unsigned remaining, unsigned min_part, unsigned avoided, PartitionFreq& buf,
                   Visitor& visit) {
    if (remaining == 0) {
        visit(static_cast<const PartitionFreq&>(buf));
        return;
    }
    for (unsigned s = min_part; s <= remaining; ++s) {
        if (s == avoided) continue;
        for (unsigned e = 1; static_cast<unsigned long>(s) * e <= remaining; ++e) {
            buf.entries.push_back({s, e});
            partition_rec(remaining - s * e, s + 1, avoided, buf, visit);
            buf.entries.pop_back();
        }
    }
}

template <typename Visitor>
void box_partition_rec(unsigned min_part, unsigned max_part, unsigned parts_left,
                       PartitionFreq& buf, Visitor& visit) {
    visit(static_cast<const PartitionFreq&>(buf));
    for (unsigned s = min_part; s <= max_part; ++s) {
        for (unsigned e = 1; e <= parts_left; ++e) {
            buf.entries.push_back({s, e});
            box_partition_rec(s + 1, max_part, parts_left - e, buf, visit);
            buf.entries.pop_back();
        }
    }
}

}  // namespace detail

/// Visit every partition of n exactly once, in frequency notation.  The
/// visitor receives a reused buffer; copy it if it must outlive the call.
/// A nonzero `avoided_part` excludes that size from every partition.
template <typename Visitor>
void for_each_partition(unsigned n, Visitor&& visit, unsigned avoided_part = 0) {
    PartitionFreq buf;
    detail::partition_rec(n, 1, avoided_part, buf, visit);
}

/// Visit every partition with at most `max_parts` parts, each of size at most
/// `max_part` (all weights, the empty partition included).
template <typename Visitor>
void for_each_box_partition(unsigned max_part, unsigned max_parts, Visitor&& visit) {
    PartitionFreq buf;
    detail::box_partition_rec(1, max_part, max_parts, buf, visit);
}

/// Exact binomial coefficient; zero when k > n.
inline mpz_class binomial(unsigned long n, unsigned long k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

/// Exact multinomial coefficient (sum parts)! / prod parts_i!.
inline mpz_class multinomial(std::span<const unsigned> parts) {
    unsigned long total = 0;
    for (unsigned p : parts) total += p;
    mpz_class result(1);
    for (unsigned p : parts) {
        result *= binomial(total, p);
        total -= p;
    }
    return result;
}

}  // namespace qcolor

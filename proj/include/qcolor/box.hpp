#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qcolor/parallel.hpp"
#include "qcolor/partitions.hpp"
#include "qcolor/qpolynomial.hpp"
#include "qcolor/series.hpp"

namespace qcolor {

/// The M x N box: parts of size at most M, at most N parts.
struct BoxSpec {
    unsigned max_part = 1;   // M
    unsigned max_parts = 1;  // N

    void validate() const {
        if (max_part == 0 || max_parts == 0) {
            throw std::invalid_argument("box dimensions must be >= 1");
        }
    }
    unsigned min_side() const { return std::min(max_part, max_parts); }
    unsigned long capacity() const {
        return static_cast<unsigned long>(max_part) * max_parts;
    }
    bool operator==(const BoxSpec&) const = default;
};

/// f_{M x N; r} for every r = 0..min(M, N): the generating function for
/// partitions in the box with exactly r distinct part sizes,
///   f_{M x N; r} = sum_{r0 >= r} C(r0, r) (-1)^{r0 - r} q^{C(r0+1, 2)}
///                  [M over r0]_q [M+N-r0 over N-r0]_q.
/// Intermediate arithmetic is exact; the alternating sum telescopes to
/// nonnegative coefficients.
inline std::vector<QPolynomial> f_box_sizes_all(BoxSpec box) {
    box.validate();
    const unsigned mn = box.min_side();
    std::vector<QPolynomial> staircase(mn + 1);
    for (unsigned r0 = 0; r0 <= mn; ++r0) {
        staircase[r0] = (gaussian_binomial(box.max_part, r0) *
                         gaussian_binomial(box.max_part + box.max_parts - r0,
                                           box.max_parts - r0))
                            .shifted(static_cast<std::size_t>(r0) * (r0 + 1) / 2);
    }
    std::vector<QPolynomial> out(mn + 1);
    for (unsigned r = 0; r <= mn; ++r) {
        QPolynomial acc;
        for (unsigned r0 = r; r0 <= mn; ++r0) {
            mpz_class c = binomial(r0, r);
            if ((r0 - r) % 2 == 1) c = -c;
            acc += staircase[r0].scaled(c);
        }
        out[r] = std::move(acc);
    }
    return out;
}

/// f_{M x N; r}; the zero polynomial when r exceeds min(M, N), since no
/// partition in the box has that many distinct sizes.
inline QPolynomial f_box_sizes(BoxSpec box, unsigned r) {
    box.validate();
    if (r > box.min_side()) return QPolynomial();
    return f_box_sizes_all(box)[r];
}

/// Oracle for f_box_sizes: enumerate the box and bucket by distinct-size count.
inline QPolynomial box_sizes_brute(BoxSpec box, unsigned r) {
    box.validate();
    std::vector<mpz_class> coeffs(box.capacity() + 1, mpz_class(0));
    for_each_box_partition(box.max_part, box.max_parts, [&](const PartitionFreq& shape) {
        if (shape.size_count() == r) coeffs[shape.weight()] += 1;
    });
    return QPolynomial(std::move(coeffs));
}

/// Overpartitions in the box, t marking overlined parts: the coefficient of
/// t^k is q^{C(k+1,2)} [M over k]_q [M+N-k over N-k]_q.
inline std::vector<QPolynomial> dousse_kim_poly(BoxSpec box) {
    box.validate();
    const unsigned mn = box.min_side();
    std::vector<QPolynomial> out(mn + 1);
    for (unsigned k = 0; k <= mn; ++k) {
        out[k] = (gaussian_binomial(box.max_part, k) *
                  gaussian_binomial(box.max_part + box.max_parts - k, box.max_parts - k))
                     .shifted(static_cast<std::size_t>(k) * (k + 1) / 2);
    }
    return out;
}

/// Substitute t -> t + c in a polynomial in t with QPolynomial coefficients.
inline std::vector<QPolynomial> shift_t(const std::vector<QPolynomial>& poly_in_t, long c) {
    std::vector<QPolynomial> out(poly_in_t.size());
    for (std::size_t r = 0; r < poly_in_t.size(); ++r) {
        QPolynomial acc;
        for (std::size_t k = r; k < poly_in_t.size(); ++k) {
            mpz_class scale = binomial(k, r);
            mpz_class cp;
            mpz_ui_pow_ui(cp.get_mpz_t(), static_cast<unsigned long>(c < 0 ? -c : c),
                          static_cast<unsigned long>(k - r));
            if (c < 0 && (k - r) % 2 == 1) cp = -cp;
            acc += poly_in_t[k].scaled(scale * cp);
        }
        out[r] = std::move(acc);
    }
    return out;
}

/// Evaluate a polynomial in t with QPolynomial coefficients at an integer t.
inline QPolynomial eval_t(const std::vector<QPolynomial>& poly_in_t, long t) {
    QPolynomial acc;
    mpz_class tp(1);
    for (const auto& coeff : poly_in_t) {
        acc += coeff.scaled(tp);
        tp *= t;
    }
    return acc;
}

/// Dense array of the coefficients of x_1^{t_1} ... x_k^{t_k} on a fixed q^n
/// for (k,1)-colored partitions in the box, possibly with one variable set
/// to 1.  Each axis runs 0..min(M,N); entries are stored row-major with the
/// last axis fastest.
class ColorCoefficientArray {
public:
    ColorCoefficientArray(BoxSpec box, unsigned colors, unsigned weight,
                          std::optional<unsigned> specialized, std::vector<mpz_class> data)
        : box_(box),
          colors_(colors),
          weight_(weight),
          specialized_(specialized),
          side_(box.min_side() + 1),
          data_(std::move(data)) {
        box_.validate();
        if (colors_ == 0) throw std::invalid_argument("need at least one color");
        if (specialized_ && (*specialized_ < 1 || *specialized_ > colors_)) {
            throw std::invalid_argument("specialized variable index out of range");
        }
        if (data_.size() != cell_count()) {
            throw std::invalid_argument("array data size does not match its shape");
        }
    }

    const BoxSpec& box() const { return box_; }
    unsigned colors() const { return colors_; }
    unsigned weight() const { return weight_; }
    std::optional<unsigned> specialized() const { return specialized_; }
    unsigned side() const { return side_; }
    std::size_t dims() const { return specialized_ ? colors_ - 1 : colors_; }
    const std::vector<mpz_class>& data() const { return data_; }

    std::size_t cell_count() const {
        std::size_t n = 1;
        for (std::size_t i = 0; i < dims(); ++i) n *= side_;
        return n;
    }

    std::size_t flat_index(std::span<const unsigned> idx) const {
        if (idx.size() != dims()) throw std::invalid_argument("index arity mismatch");
        std::size_t flat = 0;
        for (unsigned v : idx) {
            if (v >= side_) throw std::out_of_range("array index out of bounds");
            flat = flat * side_ + v;
        }
        return flat;
    }

    const mpz_class& entry(std::span<const unsigned> idx) const { return data_[flat_index(idx)]; }
    const mpz_class& entry(std::initializer_list<unsigned> idx) const {
        return entry(std::span<const unsigned>(idx.begin(), idx.size()));
    }

    bool in_bounds(std::span<const long> pos) const {
        if (pos.size() != dims()) return false;
        for (long v : pos) {
            if (v < 0 || v >= static_cast<long>(side_)) return false;
        }
        return true;
    }

    bool operator==(const ColorCoefficientArray&) const = default;

private:
    BoxSpec box_;
    unsigned colors_;
    unsigned weight_;
    std::optional<unsigned> specialized_;
    unsigned side_;
    std::vector<mpz_class> data_;
};

namespace detail {

/// Row-major odometer over dims axes of the given side; fn(index vector).
template <typename Fn>
void for_each_index(std::size_t dims, unsigned side, Fn&& fn) {
    std::vector<unsigned> idx(dims, 0);
    while (true) {
        fn(static_cast<const std::vector<unsigned>&>(idx));
        std::size_t axis = dims;
        while (axis > 0) {
            --axis;
            if (++idx[axis] < side) break;
            idx[axis] = 0;
            if (axis == 0) return;
        }
        if (dims == 0) return;
    }
}

}  // namespace detail

/// The coefficient array of q^weight: entry at (t_1, ..., t_k) equals
/// multinomial(r; t) times the q^weight coefficient of f_{M x N; r} with
/// r = sum t_i.  Out-of-range weights give the zero array.
inline ColorCoefficientArray box_color_array(BoxSpec box, unsigned colors, unsigned weight) {
    box.validate();
    if (colors == 0) throw std::invalid_argument("need at least one color");
    const unsigned side = box.min_side() + 1;

    std::vector<mpz_class> fcoef(side, mpz_class(0));
    if (weight <= box.capacity()) {
        const auto f = f_box_sizes_all(box);
        for (unsigned r = 0; r < side; ++r) fcoef[r] = f[r].coefficient(weight);
    }

    std::size_t cells = 1;
    for (unsigned i = 0; i < colors; ++i) cells *= side;
    std::vector<mpz_class> data(cells, mpz_class(0));
    std::size_t flat = 0;
    detail::for_each_index(colors, side, [&](const std::vector<unsigned>& idx) {
        unsigned long r = 0;
        for (unsigned v : idx) r += v;
        if (r < side && sgn(fcoef[r]) != 0) data[flat] = multinomial(idx) * fcoef[r];
        ++flat;
    });
    return ColorCoefficientArray(box, colors, weight, std::nullopt, std::move(data));
}

/// Set variable x_variable (1-based) to 1: sum the entries along that axis.
inline ColorCoefficientArray specialize_one(const ColorCoefficientArray& a, unsigned variable) {
    if (a.specialized()) {
        throw std::invalid_argument("array already has a variable specialized to 1");
    }
    if (variable < 1 || variable > a.colors()) {
        throw std::invalid_argument("variable index must be in 1.." + std::to_string(a.colors()));
    }
    const std::size_t in_dims = a.dims();
    const std::size_t out_dims = in_dims - 1;
    const unsigned side = a.side();
    const std::size_t axis = variable - 1;

    std::size_t cells = 1;
    for (std::size_t i = 0; i < out_dims; ++i) cells *= side;
    std::vector<mpz_class> data(cells, mpz_class(0));

    std::vector<unsigned> full(in_dims, 0);
    std::size_t flat = 0;
    detail::for_each_index(out_dims, side, [&](const std::vector<unsigned>& idx) {
        for (std::size_t i = 0, j = 0; i < in_dims; ++i) {
            if (i != axis) full[i] = idx[j++];
        }
        mpz_class sum(0);
        for (unsigned v = 0; v < side; ++v) {
            full[axis] = v;
            sum += a.entry(full);
        }
        data[flat++] = std::move(sum);
    });
    return ColorCoefficientArray(a.box(), a.colors(), a.weight(), variable, std::move(data));
}

/// A lattice cut: start position plus integer multiples of a primitive
/// direction, truncated at the array bounds.
struct CutSpec {
    std::vector<long> start;
    std::vector<long> direction;

    void validate(std::size_t dims) const {
        if (start.size() != dims || direction.size() != dims) {
            throw std::invalid_argument("cut arity does not match the array dimension");
        }
        long g = 0;
        for (long v : direction) g = std::gcd(g, v);
        if (g == 0) throw std::invalid_argument("cut direction must be nonzero");
        if (g != 1) throw std::invalid_argument("cut direction must be primitive (gcd 1)");
    }
};

/// The entries visited from `start` along `direction` while in bounds.
inline std::vector<mpz_class> linear_cut(const ColorCoefficientArray& a, const CutSpec& cut) {
    cut.validate(a.dims());
    if (!a.in_bounds(cut.start)) throw std::invalid_argument("cut start out of bounds");
    std::vector<mpz_class> seq;
    std::vector<long> pos = cut.start;
    std::vector<unsigned> idx(a.dims());
    while (a.in_bounds(pos)) {
        for (std::size_t i = 0; i < pos.size(); ++i) idx[i] = static_cast<unsigned>(pos[i]);
        seq.push_back(a.entry(idx));
        for (std::size_t i = 0; i < pos.size(); ++i) pos[i] += cut.direction[i];
    }
    return seq;
}

/// Weakly increasing to a peak, then weakly decreasing.  Empty and singleton
/// sequences qualify.
inline bool is_unimodal(std::span<const mpz_class> seq) {
    bool descending = false;
    for (std::size_t i = 1; i < seq.size(); ++i) {
        const int c = cmp(seq[i], seq[i - 1]);
        if (c > 0 && descending) return false;
        if (c < 0) descending = true;
    }
    return true;
}

/// All primitive direction vectors with coordinates in [-bound, bound],
/// deduplicated up to sign (first nonzero coordinate positive), sorted
/// lexicographically.
inline std::vector<std::vector<long>> primitive_directions(std::size_t dims, unsigned bound) {
    std::vector<std::vector<long>> out;
    if (dims == 0 || bound == 0) return out;
    std::vector<long> d(dims, -static_cast<long>(bound));
    while (true) {
        long g = 0;
        for (long v : d) g = std::gcd(g, v);
        if (g == 1) {
            auto first = std::find_if(d.begin(), d.end(), [](long v) { return v != 0; });
            if (first != d.end() && *first > 0) out.push_back(d);
        }
        std::size_t axis = dims;
        bool done = true;
        while (axis > 0) {
            --axis;
            if (++d[axis] <= static_cast<long>(bound)) {
                done = false;
                break;
            }
            d[axis] = -static_cast<long>(bound);
        }
        if (done) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct CutViolation {
    std::vector<long> start;
    std::vector<long> direction;
    std::vector<mpz_class> sequence;
    bool operator==(const CutViolation&) const = default;
};

struct UnimodalityReport {
    BoxSpec box;
    unsigned colors = 0;
    unsigned weight = 0;
    unsigned direction_bound = 0;
    std::uint64_t cuts_checked = 0;
    std::vector<CutViolation> violations;  // sorted by direction, then start

    bool clean() const { return violations.empty(); }
};

/// Check every lattice cut of an already-specialized array: every primitive
/// direction with coordinates in [-direction_bound, direction_bound] (up to
/// sign), from every in-bounds start.  Directions may be sharded across
/// threads; the merged report is deterministic.
inline UnimodalityReport unimodality_scan_array(const ColorCoefficientArray& array,
                                                unsigned direction_bound, unsigned threads = 1) {
    UnimodalityReport rep;
    rep.box = array.box();
    rep.colors = array.colors();
    rep.weight = array.weight();
    rep.direction_bound = direction_bound;

    const std::size_t dims = array.dims();
    if (dims == 0) return rep;  // scalar: vacuously unimodal
    const auto dirs = primitive_directions(dims, direction_bound);
    const std::size_t cells = array.cell_count();

    struct ChunkResult {
        std::uint64_t cuts = 0;
        std::vector<CutViolation> violations;
    };
    std::vector<ChunkResult> results(std::max(threads, 1u));
    parallel_chunks(dirs.size(), threads, [&](std::size_t chunk, std::size_t begin,
                                              std::size_t end) {
        auto& res = results[chunk];
        std::vector<long> start(dims);
        for (std::size_t di = begin; di < end; ++di) {
            const auto& dir = dirs[di];
            for (std::size_t cell = 0; cell < cells; ++cell) {
                std::size_t rest = cell;
                for (std::size_t i = dims; i > 0; --i) {
                    start[i - 1] = static_cast<long>(rest % array.side());
                    rest /= array.side();
                }
                ++res.cuts;
                auto seq = linear_cut(array, CutSpec{start, dir});
                if (!is_unimodal(seq)) {
                    res.violations.push_back({start, dir, std::move(seq)});
                }
            }
        }
    });
    for (auto& res : results) {
        rep.cuts_checked += res.cuts;
        rep.violations.insert(rep.violations.end(),
                              std::make_move_iterator(res.violations.begin()),
                              std::make_move_iterator(res.violations.end()));
    }
    std::sort(rep.violations.begin(), rep.violations.end(),
              [](const CutViolation& a, const CutViolation& b) {
                  return std::tie(a.direction, a.start) < std::tie(b.direction, b.start);
              });
    return rep;
}

/// Specialize the last variable to 1, then scan every lattice cut.
inline UnimodalityReport unimodality_scan(BoxSpec box, unsigned colors, unsigned weight,
                                          unsigned direction_bound, unsigned threads = 1) {
    return unimodality_scan_array(specialize_one(box_color_array(box, colors, weight), colors),
                                  direction_bound, threads);
}

/// N_r(q): partitions with exactly r distinct part sizes,
///   (1/(q;q)_inf) sum_n (-1)^{n-r} C(n, r) q^{C(n+1,2)} / (q;q)_n.
inline TruncatedSeries<ExactIntegers> macmahon_series(unsigned r, std::size_t order) {
    const ExactIntegers ring;
    TruncatedSeries<ExactIntegers> acc(ring, order);
    for (unsigned long n = r;; ++n) {
        const unsigned long shift = n * (n + 1) / 2;
        if (shift > order) break;
        const auto term = inverse(pochhammer_finite(static_cast<unsigned>(n), order, ring));
        mpz_class c = binomial(n, r);
        if ((n - r) % 2 == 1) c = -c;
        for (std::size_t i = 0; i + shift <= order; ++i) {
            mpz_addmul(acc.at(i + shift).get_mpz_t(), c.get_mpz_t(), term[i].get_mpz_t());
        }
    }
    return mul(acc, inverse(pochhammer_inf(1, order, ring)));
}

/// N_{r, <= M}(q): partitions with exactly r distinct part sizes, all parts
/// at most M,
///   (1/(q;q)_M) sum_{j=r..M} (-1)^{j-r} q^{C(j+1,2)} C(j, r) [M over j]_q.
inline TruncatedSeries<ExactIntegers> merca_series(unsigned r, unsigned max_part,
                                                   std::size_t order) {
    if (max_part == 0) throw std::invalid_argument("largest part bound must be >= 1");
    const ExactIntegers ring;
    TruncatedSeries<ExactIntegers> acc(ring, order);
    for (unsigned j = r; j <= max_part; ++j) {
        const unsigned long shift = static_cast<unsigned long>(j) * (j + 1) / 2;
        if (shift > order) break;
        const auto g = gaussian_binomial(max_part, j);
        mpz_class c = binomial(j, r);
        if ((j - r) % 2 == 1) c = -c;
        for (std::size_t i = 0; i <= g.degree() && i + shift <= order; ++i) {
            mpz_addmul(acc.at(i + shift).get_mpz_t(), c.get_mpz_t(),
                       g.coefficient(i).get_mpz_t());
        }
    }
    return mul(acc, inverse(pochhammer_finite(max_part, order, ring)));
}

}  // namespace qcolor

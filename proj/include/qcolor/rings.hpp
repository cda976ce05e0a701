#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qcolor {

/// Coefficient ring of exact arbitrary-precision integers.
struct ExactIntegers {
    using Elem = mpz_class;
    static constexpr bool modular = false;

    Elem zero() const { return Elem(0); }
    Elem one() const { return Elem(1); }
    Elem from_int(long v) const { return Elem(v); }
    Elem from_mpz(const mpz_class& v) const { return v; }

    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem negate(const Elem& a) const { return -a; }
    void add_mul(Elem& acc, const Elem& a, const Elem& b) const {
        mpz_addmul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    }

    bool is_zero(const Elem& a) const { return sgn(a) == 0; }
    bool is_unit(const Elem& a) const { return a == 1 || a == -1; }
    Elem invert_unit(const Elem& a) const {
        if (!is_unit(a)) {
            throw std::domain_error("constant term " + a.get_str() +
                                    " is not a unit over the exact integers (need +1 or -1)");
        }
        return a;
    }

    bool operator==(const ExactIntegers&) const = default;
    std::string describe() const { return "exact integers"; }
};

/// Coefficient ring of canonical residues modulo m, stored in [0, m).
/// The modulus is capped at 2^32 so that products of residues fit in 64 bits.
class ResidueRing {
public:
    using Elem = std::uint64_t;
    static constexpr bool modular = true;

    explicit ResidueRing(std::uint64_t modulus) : m_(modulus) {
        if (m_ == 0) throw std::invalid_argument("modulus must be a positive integer");
        if (m_ > kMaxModulus) {
            throw std::invalid_argument("modulus " + std::to_string(m_) +
                                        " exceeds the supported bound 2^32");
        }
    }

    std::uint64_t modulus() const { return m_; }

    Elem zero() const { return 0; }
    Elem one() const { return 1 % m_; }
    Elem from_int(long v) const {
        long r = v % static_cast<long>(m_);
        if (r < 0) r += static_cast<long>(m_);
        return static_cast<Elem>(r);
    }
    Elem from_mpz(const mpz_class& v) const { return mpz_fdiv_ui(v.get_mpz_t(), m_); }

    Elem add(Elem a, Elem b) const {
        Elem s = a + b;
        return s >= m_ ? s - m_ : s;
    }
    Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + (m_ - b); }
    Elem mul(Elem a, Elem b) const { return (a * b) % m_; }
    Elem negate(Elem a) const { return a == 0 ? 0 : m_ - a; }
    void add_mul(Elem& acc, Elem a, Elem b) const { acc = (acc + a * b) % m_; }

    bool is_zero(Elem a) const { return a == 0; }
    bool is_unit(Elem a) const { return std::gcd(a, m_) == 1; }

    Elem invert_unit(Elem a) const {
        if (m_ == 1) return 0;
        std::int64_t t = 0, nt = 1;
        std::int64_t r = static_cast<std::int64_t>(m_), nr = static_cast<std::int64_t>(a % m_);
        while (nr != 0) {
            const std::int64_t q = r / nr;
            std::int64_t tmp = t - q * nt;
            t = nt;
            nt = tmp;
            tmp = r - q * nr;
            r = nr;
            nr = tmp;
        }
        if (r != 1) {
            throw std::domain_error("constant term " + std::to_string(a) +
                                    " is not invertible modulo " + std::to_string(m_));
        }
        if (t < 0) t += static_cast<std::int64_t>(m_);
        return static_cast<Elem>(t);
    }

    bool operator==(const ResidueRing&) const = default;
    std::string describe() const { return "residues mod " + std::to_string(m_); }

private:
    static constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 32;
    std::uint64_t m_;
};

}  // namespace qcolor

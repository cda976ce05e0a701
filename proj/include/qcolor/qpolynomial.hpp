#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "qcolor/series.hpp"

namespace qcolor {

/// Finite polynomial in q with exact integer coefficients.  Trailing zero
/// coefficients are stripped, so degree() is meaningful except for the zero
/// polynomial, which is stored as the single coefficient 0.
class QPolynomial {
public:
    QPolynomial() : coeffs_{mpz_class(0)} {}
    explicit QPolynomial(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) coeffs_.emplace_back(0);
        normalize();
    }

    static QPolynomial constant(long v) { return QPolynomial({mpz_class(v)}); }
    static QPolynomial from_ints(std::initializer_list<long> coeffs) {
        std::vector<mpz_class> c;
        c.reserve(coeffs.size());
        for (long v : coeffs) c.emplace_back(v);
        return QPolynomial(std::move(c));
    }

    std::size_t degree() const { return coeffs_.size() - 1; }
    bool is_zero() const { return coeffs_.size() == 1 && sgn(coeffs_[0]) == 0; }

    /// Coefficient of q^i; zero beyond the degree.
    const mpz_class& coefficient(std::size_t i) const {
        static const mpz_class kZero(0);
        return i < coeffs_.size() ? coeffs_[i] : kZero;
    }
    const std::vector<mpz_class>& coefficients() const { return coeffs_; }

    /// Sum of all coefficients, i.e. the value at q = 1.
    mpz_class value_at_one() const {
        mpz_class s(0);
        for (const auto& c : coeffs_) s += c;
        return s;
    }

    QPolynomial& operator+=(const QPolynomial& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), mpz_class(0));
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        normalize();
        return *this;
    }
    QPolynomial& operator-=(const QPolynomial& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), mpz_class(0));
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
        normalize();
        return *this;
    }

    friend QPolynomial operator+(QPolynomial a, const QPolynomial& b) { return a += b; }
    friend QPolynomial operator-(QPolynomial a, const QPolynomial& b) { return a -= b; }

    friend QPolynomial operator*(const QPolynomial& a, const QPolynomial& b) {
        if (a.is_zero() || b.is_zero()) return QPolynomial();
        std::vector<mpz_class> out(a.coeffs_.size() + b.coeffs_.size() - 1, mpz_class(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (sgn(a.coeffs_[i]) == 0) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
                mpz_addmul(out[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(),
                           b.coeffs_[j].get_mpz_t());
            }
        }
        return QPolynomial(std::move(out));
    }

    QPolynomial scaled(const mpz_class& c) const {
        std::vector<mpz_class> out(coeffs_);
        for (auto& v : out) v *= c;
        return QPolynomial(std::move(out));
    }

    /// Multiply by q^shift.
    QPolynomial shifted(std::size_t shift) const {
        if (is_zero()) return QPolynomial();
        std::vector<mpz_class> out(coeffs_.size() + shift, mpz_class(0));
        for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i + shift] = coeffs_[i];
        return QPolynomial(std::move(out));
    }

    /// View the polynomial as an exact truncated series of the given order.
    TruncatedSeries<ExactIntegers> truncated(std::size_t order) const {
        TruncatedSeries<ExactIntegers> out(ExactIntegers{}, order);
        for (std::size_t i = 0; i < coeffs_.size() && i <= order; ++i) out.at(i) = coeffs_[i];
        return out;
    }

    bool operator==(const QPolynomial&) const = default;

private:
    void normalize() {
        while (coeffs_.size() > 1 && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
    }

    std::vector<mpz_class> coeffs_;
};

/// q-binomial [M+N over N]_q computed with the Gaussian recurrence
/// B(m, n) = B(m, n-1) + q^n B(m-1, n); exact at every degree.  This is the
/// generating function for partitions with at most `max_parts` parts, each of
/// size at most `max_part`.
inline QPolynomial qbinomial(unsigned max_part, unsigned max_parts) {
    std::vector<QPolynomial> row(max_parts + 1, QPolynomial::constant(1));
    for (unsigned m = 1; m <= max_part; ++m) {
        std::vector<QPolynomial> next(max_parts + 1);
        next[0] = QPolynomial::constant(1);
        for (unsigned n = 1; n <= max_parts; ++n) next[n] = next[n - 1] + row[n].shifted(n);
        row = std::move(next);
    }
    return row[max_parts];
}

/// Gaussian binomial [top over k]_q; zero when k > top.
inline QPolynomial gaussian_binomial(unsigned top, unsigned k) {
    if (k > top) return QPolynomial();
    return qbinomial(top - k, k);
}

}  // namespace qcolor

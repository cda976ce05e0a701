#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include <qcolor/partitions.hpp>
#include <qcolor/qpolynomial.hpp>
#include <qcolor/series.hpp>

using namespace qcolor;

namespace {

std::vector<long> small_coeffs(const TruncatedSeries<ExactIntegers>& s) {
    std::vector<long> out;
    for (const auto& c : s.coefficients()) out.push_back(c.get_si());
    return out;
}

TruncatedSeries<ExactIntegers> exact(std::size_t order, std::initializer_list<long> coeffs) {
    return TruncatedSeries<ExactIntegers>::from_ints(ExactIntegers{}, order, coeffs);
}

}  // namespace

TEST_CASE("series multiplication") {
    SECTION("difference of squares") {
        const auto p = mul(exact(2, {1, 1}), exact(2, {1, -1}));
        REQUIRE(small_coeffs(p) == std::vector<long>{1, 0, -1});
    }
    SECTION("one is the identity") {
        const auto a = exact(4, {3, -2, 0, 7, 1});
        REQUIRE(mul(a, TruncatedSeries<ExactIntegers>::one(ExactIntegers{}, 4)) == a);
    }
    SECTION("hand convolution") {
        const auto p = mul(exact(3, {1, 1, 1}), exact(3, {1, 1}));
        REQUIRE(small_coeffs(p) == std::vector<long>{1, 2, 2, 1});
    }
    SECTION("mismatched orders truncate to the minimum") {
        const auto p = mul(exact(5, {1, 1}), exact(3, {1, 1}));
        REQUIRE(p.order() == 3);
    }
    SECTION("modulus mismatch is rejected") {
        const auto a = TruncatedSeries<ResidueRing>::one(ResidueRing(5), 3);
        const auto b = TruncatedSeries<ResidueRing>::one(ResidueRing(7), 3);
        REQUIRE_THROWS_AS(mul(a, b), std::invalid_argument);
    }
}

TEST_CASE("series multiplication is commutative and associative") {
    std::mt19937 rng(20240811);
    std::uniform_int_distribution<long> coeff(-5, 5);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t q = 8;
        TruncatedSeries<ExactIntegers> a(ExactIntegers{}, q), b(ExactIntegers{}, q),
            c(ExactIntegers{}, q);
        for (std::size_t i = 0; i <= q; ++i) {
            a.at(i) = coeff(rng);
            b.at(i) = coeff(rng);
            c.at(i) = coeff(rng);
        }
        REQUIRE(mul(a, b) == mul(b, a));
        REQUIRE(mul(mul(a, b), c) == mul(a, mul(b, c)));
    }
    ResidueRing ring(27);
    std::uniform_int_distribution<long> res(0, 26);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t q = 8;
        TruncatedSeries<ResidueRing> a(ring, q), b(ring, q);
        for (std::size_t i = 0; i <= q; ++i) {
            a.at(i) = static_cast<std::uint64_t>(res(rng));
            b.at(i) = static_cast<std::uint64_t>(res(rng));
        }
        REQUIRE(mul(a, b) == mul(b, a));
    }
}

TEST_CASE("series inverse") {
    SECTION("geometric series") {
        const auto inv = inverse(exact(4, {1, -1}));
        REQUIRE(small_coeffs(inv) == std::vector<long>{1, 1, 1, 1, 1});
    }
    SECTION("inverse of one") {
        const auto one = TruncatedSeries<ExactIntegers>::one(ExactIntegers{}, 6);
        REQUIRE(inverse(one) == one);
    }
    SECTION("Fibonacci") {
        const auto inv = inverse(exact(5, {1, -1, -1}));
        REQUIRE(small_coeffs(inv) == std::vector<long>{1, 1, 2, 3, 5, 8});
    }
    SECTION("non-unit constant term is rejected") {
        REQUIRE_THROWS_AS(inverse(exact(3, {2, 1})), std::domain_error);
        auto m = TruncatedSeries<ResidueRing>::from_ints(ResidueRing(27), 3, {3, 1});
        REQUIRE_THROWS_AS(inverse(m), std::domain_error);
    }
}

TEST_CASE("random unit series times its inverse is one") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<long> coeff(-4, 4);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t q = 12;
        TruncatedSeries<ExactIntegers> a(ExactIntegers{}, q);
        a.at(0) = (trial % 2 == 0) ? 1 : -1;
        for (std::size_t i = 1; i <= q; ++i) a.at(i) = coeff(rng);
        REQUIRE(mul(a, inverse(a)) == TruncatedSeries<ExactIntegers>::one(ExactIntegers{}, q));
    }
    ResidueRing ring(27);
    std::uniform_int_distribution<long> res(0, 26);
    const long units[] = {1, 2, 4, 5, 7, 26};
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t q = 12;
        TruncatedSeries<ResidueRing> a(ring, q);
        a.at(0) = static_cast<std::uint64_t>(units[trial % 6]);
        for (std::size_t i = 1; i <= q; ++i) a.at(i) = static_cast<std::uint64_t>(res(rng));
        REQUIRE(mul(a, inverse(a)) == TruncatedSeries<ResidueRing>::one(ring, q));
    }
}

TEST_CASE("reduction into a residue ring") {
    SECTION("coefficientwise reduction") {
        const auto r = reduce_mod(exact(2, {18, 27, 28}), 27);
        REQUIRE(r.coefficients() == std::vector<std::uint64_t>{18, 0, 1});
    }
    SECTION("mod 1 collapses everything") {
        const auto r = reduce_mod(exact(2, {18, 27, 28}), 1);
        REQUIRE(r.coefficients() == std::vector<std::uint64_t>{0, 0, 0});
    }
    SECTION("negative coefficients land in canonical range") {
        const auto r = reduce_mod(exact(1, {-1, -28}), 27);
        REQUIRE(r.coefficients() == std::vector<std::uint64_t>{26, 26});
    }
    SECTION("divisor modulus is allowed, others rejected") {
        const auto m27 = reduce_mod(exact(2, {18, 27, 28}), 27);
        const auto m3 = reduce_mod(m27, 3);
        REQUIRE(m3.coefficients() == std::vector<std::uint64_t>{0, 0, 1});
        const auto m8 = reduce_mod(exact(2, {1, 2, 3}), 8);
        REQUIRE_THROWS_AS(reduce_mod(m8, 3), std::invalid_argument);
    }
}

TEST_CASE("pentagonal expansion of (q^d; q^d)_inf") {
    SECTION("d = 1") {
        const auto e = pochhammer_inf(1, 6, ExactIntegers{});
        REQUIRE(small_coeffs(e) == std::vector<long>{1, -1, -1, 0, 0, 1, 0});
    }
    SECTION("d = 9 below q^9 is just 1") {
        const auto e = pochhammer_inf(9, 8, ExactIntegers{});
        REQUIRE(small_coeffs(e) == std::vector<long>{1, 0, 0, 0, 0, 0, 0, 0, 0});
    }
    SECTION("d = 9 up to q^18") {
        const auto e = pochhammer_inf(9, 18, ExactIntegers{});
        for (std::size_t i = 0; i <= 18; ++i) {
            if (i == 0) {
                REQUIRE(e[i] == 1);
            } else if (i == 9 || i == 18) {
                REQUIRE(e[i] == -1);
            } else {
                REQUIRE(e[i] == 0);
            }
        }
    }
    SECTION("agrees with the explicit finite product through q^200") {
        const std::size_t q = 200;
        REQUIRE(pochhammer_inf(1, q, ExactIntegers{}) ==
                pochhammer_finite(static_cast<unsigned>(q), q, ExactIntegers{}));
    }
    SECTION("times its inverse gives one") {
        const auto e = pochhammer_inf(1, 80, ExactIntegers{});
        REQUIRE(mul(e, inverse(e)) == TruncatedSeries<ExactIntegers>::one(ExactIntegers{}, 80));
    }
    SECTION("d = 0 rejected") {
        REQUIRE_THROWS_AS(pochhammer_inf(0, 5, ExactIntegers{}), std::invalid_argument);
    }
}

TEST_CASE("q-binomial coefficients") {
    SECTION("empty box") {
        REQUIRE(qbinomial(0, 5) == QPolynomial::constant(1));
        REQUIRE(qbinomial(5, 0) == QPolynomial::constant(1));
    }
    SECTION("1 x 1 box") { REQUIRE(qbinomial(1, 1) == QPolynomial::from_ints({1, 1})); }
    SECTION("2 x 2 box") { REQUIRE(qbinomial(2, 2) == QPolynomial::from_ints({1, 1, 2, 1, 1})); }
    SECTION("palindromic coefficients and binomial value at q = 1") {
        for (unsigned m = 0; m <= 8; ++m) {
            for (unsigned n = 0; n <= 8; ++n) {
                const auto b = qbinomial(m, n);
                const std::size_t deg = static_cast<std::size_t>(m) * n;
                REQUIRE(b.degree() == (b.is_zero() ? 0 : deg));
                for (std::size_t i = 0; i <= deg; ++i) {
                    REQUIRE(b.coefficient(i) == b.coefficient(deg - i));
                }
                REQUIRE(b.value_at_one() == binomial(m + n, n));
            }
        }
    }
    SECTION("gaussian form") {
        REQUIRE(gaussian_binomial(4, 2) == qbinomial(2, 2));
        REQUIRE(gaussian_binomial(2, 5).is_zero());
    }
}

TEST_CASE("polynomial arithmetic basics") {
    const auto p = QPolynomial::from_ints({1, 2, 1});
    const auto q = QPolynomial::from_ints({0, 1});
    REQUIRE((p * q) == QPolynomial::from_ints({0, 1, 2, 1}));
    REQUIRE((p - p).is_zero());
    REQUIRE(p.shifted(2) == QPolynomial::from_ints({0, 0, 1, 2, 1}));
    REQUIRE(p.scaled(mpz_class(-3)) == QPolynomial::from_ints({-3, -6, -3}));
    REQUIRE(QPolynomial::from_ints({1, 1, 0, 0}).degree() == 1);
}

TEST_CASE("series construction guards") {
    REQUIRE_THROWS_AS(
        TruncatedSeries<ExactIntegers>::from_ints(ExactIntegers{}, 1, {1, 2, 3}),
        std::invalid_argument);
    REQUIRE_THROWS_AS(ResidueRing(0), std::invalid_argument);
    REQUIRE_THROWS_AS(ResidueRing(std::uint64_t{1} << 33), std::invalid_argument);
}

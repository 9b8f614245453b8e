#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "cayley/cyclotomic.hpp"

using namespace cayley;

namespace {

std::vector<mpz_class> zpoly(std::initializer_list<long> cs) {
    std::vector<mpz_class> out;
    for (long c : cs) out.emplace_back(c);
    return out;
}

}  // namespace

TEST_CASE("cyclotomic_poly known values") {
    CHECK(cyclotomic_poly(1) == zpoly({-1, 1}));
    CHECK(cyclotomic_poly(2) == zpoly({1, 1}));
    CHECK(cyclotomic_poly(4) == zpoly({1, 0, 1}));
    CHECK(cyclotomic_poly(6) == zpoly({1, -1, 1}));
    CHECK(cyclotomic_poly(8) == zpoly({1, 0, 0, 0, 1}));
    CHECK(cyclotomic_poly(9) == zpoly({1, 0, 0, 1, 0, 0, 1}));
    CHECK(cyclotomic_poly(12) == zpoly({1, 0, -1, 0, 1}));
    CHECK(cyclotomic_poly(7) == zpoly({1, 1, 1, 1, 1, 1, 1}));
    SECTION("degree is phi(n) and the polynomial is monic") {
        for (std::uint64_t n = 1; n <= 40; ++n) {
            auto phi_n = cyclotomic_poly(n);
            CHECK(phi_n.size() == euler_phi(n) + 1);
            CHECK(phi_n.back() == 1);
        }
    }
    SECTION("first coefficient outside {-1,0,1} appears at n=105") {
        auto p105 = cyclotomic_poly(105);
        CHECK(p105[7] == -2);  // classical: coefficient of x^7 in Phi_105
    }
}

TEST_CASE("reduce_sum") {
    SECTION("zeta_4 + zeta_4^3 = 0") {
        CHECK(reduce_sum(4, {1, 3}).is_zero());
    }
    SECTION("zeta^0 = 1") {
        auto one = reduce_sum(12, {0});
        CHECK(one.as_integer() == mpz_class(1));
    }
    SECTION("zeta_5 + zeta_5^4 = -1 - zeta^2 - zeta^3") {
        auto v = reduce_sum(5, {1, 4});
        CHECK(v.coeffs() == zpoly({-1, 0, -1, -1}));
        CHECK(v.to_string() == "-1 - z^2 - z^3 (n=5)");
    }
    SECTION("all n-th roots sum to zero, 2 <= n <= 24") {
        for (std::uint64_t n = 2; n <= 24; ++n) {
            std::vector<std::uint64_t> all(n);
            for (std::uint64_t e = 0; e < n; ++e) all[e] = e;
            CHECK(reduce_sum(n, all).is_zero());
        }
    }
    SECTION("single-exponent sums reduce to the monomial") {
        for (std::uint64_t n : {5, 8, 12}) {
            CyclotomicBasis basis(n);
            for (std::uint64_t e = 0; e < n; ++e)
                CHECK(basis.reduce_sum({e}) == basis.root_power(e));
        }
    }
    SECTION("linearity: reducing a union equals summing reductions") {
        std::mt19937_64 rng(11);
        for (int trial = 0; trial < 50; ++trial) {
            std::uint64_t n = 2 + rng() % 23;
            std::vector<std::uint64_t> a, b, both;
            for (std::uint64_t i = 0; i < rng() % 12; ++i) a.push_back(rng() % n);
            for (std::uint64_t i = 0; i < rng() % 12; ++i) b.push_back(rng() % n);
            both = a;
            both.insert(both.end(), b.begin(), b.end());
            CyclotomicBasis basis(n);
            CHECK(basis.reduce_sum(both) == basis.reduce_sum(a) + basis.reduce_sum(b));
        }
    }
}

TEST_CASE("as_integer") {
    CHECK(CyclotomicInt(5, zpoly({2, 0, 0, 0})).as_integer() == mpz_class(2));
    CHECK_FALSE(CyclotomicInt(5, zpoly({-1, 0, -1, -1})).as_integer().has_value());
    SECTION("n in {1,2} is always rational") {
        CHECK(CyclotomicInt(1, zpoly({7})).as_integer() == mpz_class(7));
        CHECK(CyclotomicInt(2, zpoly({-3})).as_integer() == mpz_class(-3));
    }
}

TEST_CASE("galois action") {
    CyclotomicBasis b5(5);
    SECTION("constants are fixed") {
        auto c = CyclotomicInt::integer(5, 42);
        for (std::uint64_t a : {1, 2, 3, 4}) CHECK(b5.galois(a, c) == c);
    }
    SECTION("zeta -> zeta^2 under sigma_2") {
        CHECK(b5.galois(2, b5.root_power(1)) == b5.root_power(2));
    }
    SECTION("non-units are rejected") {
        CyclotomicBasis b12(12);
        CHECK_THROWS_AS(b12.galois(4, b12.root_power(1)), std::invalid_argument);
    }
    SECTION("group action law sigma_a sigma_b = sigma_ab") {
        CyclotomicBasis b12(12);
        std::mt19937_64 rng(5);
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<std::uint64_t> exps;
            for (std::uint64_t i = 0; i < 1 + rng() % 10; ++i) exps.push_back(rng() % 12);
            auto c = b12.reduce_sum(exps);
            for (std::uint64_t a : {1, 5, 7, 11})
                for (std::uint64_t b : {1, 5, 7, 11})
                    CHECK(b12.galois(a, b12.galois(b, c)) == b12.galois(a * b % 12, c));
        }
    }
    SECTION("sigma_a is multiplicative") {
        CyclotomicBasis b(9);
        auto x = b.reduce_sum({1, 3});
        auto y = b.reduce_sum({2, 2, 5});
        CHECK(b.galois(2, b.mul(x, y)) == b.mul(b.galois(2, x), b.galois(2, y)));
    }
}

TEST_CASE("multiplication agrees with exponent arithmetic") {
    CyclotomicBasis b(20);
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        std::uint64_t e1 = rng() % 20, e2 = rng() % 20;
        CHECK(b.mul(b.root_power(e1), b.root_power(e2)) == b.root_power(e1 + e2));
    }
}

TEST_CASE("rationality <=> Galois-fixed") {
    std::mt19937_64 rng(2024);
    for (std::uint64_t n = 2; n <= 24; ++n) {
        CyclotomicBasis basis(n);
        const auto units = units_mod(n);
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<std::uint64_t> exps;
            for (std::uint64_t i = 0; i < rng() % (2 * n); ++i) exps.push_back(rng() % n);
            auto c = basis.reduce_sum(exps);
            bool fixed = true;
            for (std::uint64_t a : units)
                if (!(basis.galois(a, c) == c)) {
                    fixed = false;
                    break;
                }
            CHECK(c.as_integer().has_value() == fixed);
        }
    }
}

TEST_CASE("numeric embedding matches direct floating summation") {
    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 200; ++trial) {
        std::uint64_t n = 2 + rng() % 29;
        std::vector<std::uint64_t> exps;
        for (std::uint64_t i = 0; i < rng() % 25; ++i) exps.push_back(rng() % n);
        std::complex<double> direct(0, 0);
        for (std::uint64_t e : exps) {
            double angle = 2.0 * M_PI * static_cast<double>(e) / static_cast<double>(n);
            direct += std::complex<double>(std::cos(angle), std::sin(angle));
        }
        auto embedded = embed_numeric(reduce_sum(n, exps));
        CHECK(std::abs(embedded - direct) <= 1e-9);
    }
}

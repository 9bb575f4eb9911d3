#include <doctest.h>

#include "bianchi/arith.hpp"
#include "bianchi/errors.hpp"

using namespace bianchi;

namespace {
// independent quadratic-residue scan, used to check kronecker on odd primes
int legendre_by_scan(long a, long p) {
    long r = a % p;
    if (r < 0) r += p;
    if (r == 0) return 0;
    for (long x = 1; x < p; ++x)
        if (x * x % p == r) return 1;
    return -1;
}
} // namespace

TEST_CASE("kronecker basic values") {
    CHECK(kronecker(-3, 7) == 1);
    CHECK(kronecker(5, 1) == 1);
    CHECK(kronecker(-7, 1) == 1);
    CHECK_THROWS_AS(kronecker(3, 0), PreconditionViolated);
    for (long p : {3, 7, 11, 19, 23, 31, 43}) {
        CHECK(kronecker(-1, p) == -1);  // p = 3 mod 4
    }
}

TEST_CASE("kronecker agrees with residue scan on odd primes") {
    for (long p : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67,
                   71, 73, 79, 83, 89, 97}) {
        for (long a = -50; a <= 50; ++a)
            CHECK(kronecker(a, p) == legendre_by_scan(a, p));
    }
}

TEST_CASE("kronecker is completely multiplicative in the top argument") {
    for (long n = 1; n <= 50; ++n)
        for (long a = -50; a <= 50; ++a)
            for (long b = -50; b <= 50; ++b) {
                if (kronecker(Int(a) * b, n) != kronecker(a, n) * kronecker(b, n)) {
                    CHECK(false);
                    return;
                }
            }
    CHECK(true);
}

TEST_CASE("kronecker is multiplicative in the bottom argument") {
    for (long a = -20; a <= 20; ++a)
        for (long m = 1; m <= 20; ++m)
            for (long n = 1; n <= 20; ++n)
                CHECK(kronecker(a, Int(m) * n) == kronecker(a, m) * kronecker(a, n));
}

TEST_CASE("factorize") {
    CHECK(factorize(1).empty());
    CHECK(factorize(12) == std::vector<std::pair<Int, int>>{{2, 2}, {3, 1}});
    CHECK(factorize(361) == std::vector<std::pair<Int, int>>{{19, 2}});
    CHECK_THROWS_AS(factorize(0), PreconditionViolated);

    for (long n = 1; n <= 100000; ++n) {
        Int prod = 1;
        Int last = 0;
        for (const auto& [p, e] : factorize(n)) {
            CHECK(p > last);
            last = p;
            for (int i = 0; i < e; ++i) prod *= p;
        }
        CHECK(prod == n);
    }
}

TEST_CASE("primality, including beyond the trial-division bound") {
    CHECK(is_prime(2));
    CHECK(is_prime(999983));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(999983ll * 999979));
    CHECK(is_prime(Int("1000003")));
    CHECK(is_prime(Int("32416190071")));
    CHECK_FALSE(is_prime(Int("32416190071") * 7));
}

TEST_CASE("radical and squarefree") {
    CHECK(radical(1) == 1);
    CHECK(radical(49) == 7);
    CHECK(is_squarefree(30));
    CHECK_FALSE(is_squarefree(12));
    for (long n = 1; n <= 500; ++n)
        CHECK(is_squarefree(n) == (radical(n) == n));
}

TEST_CASE("class numbers by reduced-form count") {
    CHECK(class_number(-3) == 1);
    CHECK(class_number(-4) == 1);
    CHECK(class_number(-7) == 1);
    CHECK(class_number(-8) == 1);
    CHECK(class_number(-11) == 1);
    CHECK(class_number(-15) == 2);
    CHECK(class_number(-19) == 1);
    CHECK(class_number(-20) == 2);
    CHECK(class_number(-23) == 3);
    CHECK(class_number(-43) == 1);
    CHECK(class_number(-47) == 5);
    CHECK(class_number(-67) == 1);
    CHECK(class_number(-71) == 7);
    CHECK(class_number(-163) == 1);
    CHECK_THROWS_AS(class_number(-12), PreconditionViolated);  // not fundamental
    CHECK_THROWS_AS(class_number(5), PreconditionViolated);
}

TEST_CASE("class number is odd for prime discriminants -p, p = 3 mod 4") {
    for (long p = 3; p <= 1000; p += 4) {
        if (!is_prime(p)) continue;
        CHECK(class_number(-p) % 2 == 1);
    }
}

TEST_CASE("splitting types") {
    QuadField f = QuadField::from_disc(-19);
    CHECK(f.class_number == 1);
    CHECK(splitting_type(f, 19) == SplittingType::Ramified);
    CHECK(splitting_type(f, 5) == SplittingType::Split);
    CHECK(splitting_type(f, 2) == SplittingType::Inert);
    CHECK_THROWS_AS(splitting_type(f, 6), PreconditionViolated);
}

TEST_CASE("fundamental discriminants") {
    CHECK(is_fundamental_discriminant(-7));
    CHECK(is_fundamental_discriminant(-4));
    CHECK(is_fundamental_discriminant(-8));
    CHECK_FALSE(is_fundamental_discriminant(-9));
    CHECK_FALSE(is_fundamental_discriminant(-27));
    CHECK(is_fundamental_discriminant(-20));
}

TEST_CASE("QuadField rejects bad discriminants") {
    CHECK_THROWS_AS(QuadField::from_disc(-12), PreconditionViolated);
    CHECK_THROWS_AS(QuadField::from_disc(7), PreconditionViolated);
}

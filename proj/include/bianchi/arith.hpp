#pragma once

#include <utility>
#include <vector>

#include "bianchi/rational.hpp"

namespace bianchi {

enum class SplittingType { Split, Inert, Ramified };

/// Imaginary quadratic field summary: fundamental discriminant and class number.
struct QuadField {
    Int disc;          // fundamental discriminant, < 0
    Int class_number;  // h_K >= 1

    /// Validates disc and computes the class number by reduced-form counting.
    static QuadField from_disc(const Int& disc);
};

/// Kronecker symbol (a/n), fully multiplicative in both arguments. n != 0.
int kronecker(Int a, Int n);

bool is_prime(const Int& n);

/// Trial division (deterministic primality certifies the final cofactor).
/// Returns (prime, exponent) pairs with strictly increasing primes.
std::vector<std::pair<Int, int>> factorize(Int n);

bool is_squarefree(const Int& n);
Int radical(const Int& n);

bool is_fundamental_discriminant(const Int& d);

/// Class number of the order of fundamental discriminant D < 0, counted as
/// the number of reduced binary quadratic forms (a,b,c) with b^2 - 4ac = D,
/// |b| <= a <= c, and b >= 0 whenever |b| = a or a = c.
Int class_number(const Int& disc);

SplittingType splitting_type(const QuadField& field, const Int& p);

std::vector<Int> divisors(const Int& n);

Int gcd(Int a, Int b);

} // namespace bianchi

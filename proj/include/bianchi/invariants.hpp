#pragma once

#include <vector>

#include "bianchi/rational.hpp"

namespace bianchi {

/// The five trace-form invariants of a level-structure representation:
/// i1 = dim, i2 = dim of unipotent invariants, i3/i4 = traces of the order-3
/// and order-4 elliptic elements, i5 = dim of full invariants.
struct TypeInvariants {
    Rat i1, i2, i3, i4, i5;

    bool operator==(const TypeInvariants&) const = default;
};

/// Number of cusp-like unipotent invariants at one prime power: 1 for e = 0,
/// 2p^n for e = 2n+1, p^n + p^(n-1) for e = 2n >= 2.
Int lambda_cond(int e, const Int& p);

/// Invariants of the full level-p^e block.
TypeInvariants sigma_prime_power(const Int& p, int e);

/// Invariants of the new (primitive) part of the level-p^e block.
TypeInvariants sigma_prime_power_new(const Int& p, int e);

/// Checks sigma_prime_power_new against the oldform second-difference
/// recursion, componentwise. Test oracle only, never a computation path.
bool verify_new_recursion(const Int& p, int e);

/// Componentwise product; the empty list gives (1,1,1,1,1).
TypeInvariants combine_product(const std::vector<TypeInvariants>& parts);

TypeInvariants combine_sum(const TypeInvariants& a, const TypeInvariants& b);

TypeInvariants gamma0_invariants(const Int& n);
TypeInvariants gamma0_new_invariants(const Int& n);

} // namespace bianchi

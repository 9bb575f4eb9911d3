#pragma once

#include <array>

#include "bianchi/invariants.hpp"
#include "bianchi/rational.hpp"

namespace bianchi {

/// Classical modular-form weight; Bianchi weight pair (k,k).
struct WeightSpec {
    int k;
    explicit WeightSpec(int k_);
};

/// The weight-periodic coefficients of the two elliptic terms of the trace
/// form: eps depends on k mod 3 only, mu on k mod 4 only. The shipped values
/// are fitted against the closed-form oracle (see derive.hpp), not transcribed.
struct EllipticConstants {
    std::array<Rat, 3> eps;  // index k mod 3
    std::array<Rat, 4> mu;   // index k mod 4

    static const EllipticConstants& shipped();

    Rat eps_at(int k) const { return eps[((k % 3) + 3) % 3]; }
    Rat mu_at(int k) const { return mu[((k % 4) + 4) % 4]; }
};

/// Exact rational value of the five-term trace form; no integrality check.
Rat trace_form(const TypeInvariants& inv, WeightSpec k,
               const EllipticConstants& c = EllipticConstants::shipped());

/// Trace form narrowed to a dimension. Throws FormulaNonIntegral /
/// FormulaNegative instead of rounding; non-integrality always means the
/// invariants came from a parity-inconsistent or corrupted source.
Int dim_from_invariants(const TypeInvariants& inv, WeightSpec k,
                        const EllipticConstants& c = EllipticConstants::shipped());

/// dim S_k(Gamma0(N)); 0 for odd k (trivial nebentypus).
Int dim_cusp_gamma0(const Int& n, WeightSpec k);

/// Dimension of the newform subspace of S_k(Gamma0(N)); 0 for odd k.
Int dim_new_gamma0(const Int& n, WeightSpec k);

/// Independent closed-form evaluation of dim S_k(Gamma0(N), chi) for chi the
/// real character of conductor f (f | N, f odd squarefree, or f = 1 for the
/// trivial character). Used for cross-validation and constant derivation only;
/// shares no code with the trace-form path beyond elementary number theory.
Int oracle_dim_gamma0_chi(const Int& n, const Int& chi_conductor, WeightSpec k);

/// Newform dimension through the oracle path, by the second-difference
/// level recursion over divisors.
Int oracle_dim_new_gamma0_chi(const Int& n, const Int& chi_conductor, WeightSpec k);

/// chi(-1) == -1 for the real character of conductor f?
bool chi_is_odd(const Int& conductor);

/// Brute-force count of Sum_{x mod n, x^2+bx+c == 0} chi(x).
Int char_sum_quadratic(const Int& n, const Int& chi_conductor, const Int& b, const Int& c);

/// Invariant block of the full level-p space with the odd quadratic character
/// mod p (p = 3 mod 4): every form there is new. Trace form on it gives
/// dim S_k(Gamma0(p), omega_p) at odd k.
TypeInvariants omega_char_block_p(const Int& p);

/// Invariant block of the new part of the level-p^2 space with the character
/// mod p. Trace form on it gives dim S_k^new(Gamma0(p^2), omega_p) at odd k.
TypeInvariants omega_char_block_p2_new(const Int& p);

} // namespace bianchi

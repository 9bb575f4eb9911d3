#pragma once

#include <string>
#include <vector>

#include "bianchi/basechange.hpp"
#include "bianchi/nongenuine.hpp"

namespace bianchi {

/// Exact solution of a (possibly overdetermined) rational linear system.
/// Returns the solution when one exists and every equation is satisfied
/// exactly; count of verified equations reported through *verified.
std::vector<Rat> solve_exact(std::vector<std::vector<Rat>> a, std::vector<Rat> b,
                             size_t* verified = nullptr);

struct EllipticFit {
    EllipticConstants constants;
    size_t equations_verified;       // all with zero residual
    size_t odd_equations_verified;   // odd-parity oracle equations re-checked
    bool mu_odd_coefficient_zero;    // the odd-weight mu direction never appears
};

/// Fit eps (3 values) and mu (even values) against the closed-form oracle on
/// trivial-character spaces, then re-verify odd parities through odd
/// quadratic characters. Zero residuals throughout or it throws.
EllipticFit derive_elliptic_constants();

struct DPartFit {
    TypeInvariants tau_p;        // d = p entry
    TypeInvariants tau_p2;       // d = p^2 entry
    size_t equations_verified;
};

/// Fit the discriminant-part entries for D_K = -p by exact linear solve
/// against the oracle (odd weights for d = p; the CM-count requirement for
/// d = p^2). Throws unless residuals vanish and the result matches the
/// built-in provider.
DPartFit derive_dpart(const Int& p);

struct ScFit {
    ScConstants constants;
    size_t cells_checked;
};

/// Deterministic minimal integer search for the supercuspidal trace
/// parameters: smallest |sc3| + |sc4| making the combined principal-series /
/// supercuspidal block integral at every even weight in [2, 13].
ScFit derive_sc_constants(const Int& p);

struct P2Fit {
    TypeInvariants odd_block;    // new level-p^2 block with the character
    size_t equations_verified;
};

/// Fit the odd-parity level-p^2 block and verify the assembly identities
/// (both parities agree with the oracle and with each other componentwise).
P2Fit derive_p2_assembly(const Int& p);

/// Re-run every protocol for one field and diff against the shipped tables.
/// Returns a human-readable report; throws on any mismatch or residual.
std::string derive_constants_report(const Int& disc);

} // namespace bianchi

#include "bianchi/dim_engine.hpp"

#include "bianchi/arith.hpp"
#include "bianchi/errors.hpp"

namespace bianchi {

WeightSpec::WeightSpec(int k_) : k(k_) {
    if (k_ < 2) throw PreconditionViolated("weight k >= 2");
}

const EllipticConstants& EllipticConstants::shipped() {
    // Fitted from oracle_dim_gamma0_chi with exactly zero residuals;
    // derive_elliptic_constants() reproduces and re-checks these.
    static const EllipticConstants c{
        {Rat(1, 3), Rat(0), Rat(-1, 3)},
        {Rat(1, 4), Rat(0), Rat(-1, 4), Rat(0)},
    };
    return c;
}

Rat trace_form(const TypeInvariants& inv, WeightSpec w, const EllipticConstants& c) {
    Rat d = Rat(w.k - 1, 12) * inv.i1 - inv.i2 / 2 + c.eps_at(w.k) * inv.i3 +
            c.mu_at(w.k) * inv.i4;
    if (w.k == 2) d += inv.i5;
    return d;
}

Int dim_from_invariants(const TypeInvariants& inv, WeightSpec w, const EllipticConstants& c) {
    Rat d = trace_form(inv, w, c);
    if (!is_integer(d))
        throw FormulaNonIntegral("trace form at k=" + std::to_string(w.k) + " gave " + rat_to_string(d));
    if (d < 0)
        throw FormulaNegative("trace form at k=" + std::to_string(w.k) + " gave " + rat_to_string(d));
    return numerator(d);
}

Int dim_cusp_gamma0(const Int& n, WeightSpec w) {
    if (n < 1) throw PreconditionViolated("level N >= 1");
    if (w.k % 2 == 1) return 0;
    return dim_from_invariants(gamma0_invariants(n), w);
}

Int dim_new_gamma0(const Int& n, WeightSpec w) {
    if (n < 1) throw PreconditionViolated("level N >= 1");
    if (w.k % 2 == 1) return 0;
    return dim_from_invariants(gamma0_new_invariants(n), w);
}

bool chi_is_odd(const Int& conductor) {
    if (conductor == 1) return false;
    Int m = conductor % 4;
    if (m == 3) return true;
    if (m == 1) return false;
    throw PreconditionViolated("character conductor odd (or 1)");
}

Int char_sum_quadratic(const Int& n, const Int& f, const Int& b, const Int& c) {
    Int total = 0;
    for (Int x = 0; x < n; ++x)
        if ((x * x + b * x + c) % n == 0) total += kronecker(x, f);
    return total;
}

namespace {

Int psi_index(const Int& n) {
    Int r = n;
    for (const auto& [p, e] : factorize(n)) r = r / p * (p + 1);
    return r;
}

Int ipow(const Int& p, int e) {
    Int r = 1;
    for (int i = 0; i < e; ++i) r *= p;
    return r;
}

// cusp-count factor at one prime: level exponent r, conductor exponent s
Int cusp_lambda(int r, int s, const Int& p) {
    if (2 * s <= r) {
        if (r % 2 == 0) return ipow(p, r / 2) + ipow(p, r / 2 - 1);
        return 2 * ipow(p, (r - 1) / 2);
    }
    return 2 * ipow(p, r - s);
}

// multiplicative second-difference weights: beta(p) = -2, beta(p^2) = 1
Int level_moebius(const Int& n) {
    Int r = 1;
    for (const auto& [p, e] : factorize(n)) {
        if (e == 1) r *= -2;
        else if (e == 2) r *= 1;
        else return 0;
    }
    return r;
}

} // namespace

namespace {

// a conductor spec d may carry square prime parts, where the character is
// trivial; the effective conductor is the product of primes exactly dividing d
Int effective_conductor(const Int& spec) {
    if (spec < 1) throw PreconditionViolated("character conductor spec >= 1");
    Int f = 1;
    for (const auto& [p, e] : factorize(spec)) {
        if (p == 2) throw PreconditionViolated("odd character conductor");
        if (e == 1) f *= p;
        else if (e > 2) throw PreconditionViolated("character conductor spec has a cube");
    }
    return f;
}

} // namespace

Int oracle_dim_gamma0_chi(const Int& n, const Int& chi_spec, WeightSpec w) {
    if (n < 1) throw PreconditionViolated("level N >= 1");
    Int f = effective_conductor(chi_spec);
    if (n % f != 0)
        throw PreconditionViolated("character conductor divides the level");
    const int k = w.k;
    if (chi_is_odd(f) != (k % 2 == 1)) return 0;

    Rat gamma4 = k % 4 == 0 ? Rat(1, 4) : (k % 4 == 2 ? Rat(-1, 4) : Rat(0));
    Rat gamma3 = k % 3 == 0 ? Rat(1, 3) : (k % 3 == 2 ? Rat(-1, 3) : Rat(0));
    Int lam = 1;
    for (const auto& [p, r] : factorize(n)) lam *= cusp_lambda(r, f % p == 0 ? 1 : 0, p);
    Int a4 = char_sum_quadratic(n, f, 0, 1);
    Int a3 = char_sum_quadratic(n, f, 1, 1);

    Rat d = Rat(k - 1, 12) * psi_index(n) - Rat(lam, 2) + gamma4 * a4 + gamma3 * a3;
    if (k == 2 && f == 1) d += 1;
    if (!is_integer(d)) throw FormulaNonIntegral("oracle at N=" + n.str());
    if (d < 0) throw FormulaNegative("oracle at N=" + n.str());
    return numerator(d);
}

Int oracle_dim_new_gamma0_chi(const Int& n, const Int& chi_spec, WeightSpec w) {
    Int f = effective_conductor(chi_spec);
    Int total = 0;
    for (const Int& m : divisors(n)) {
        if (m % f != 0) continue;
        Int b = level_moebius(n / m);
        if (b != 0) total += b * oracle_dim_gamma0_chi(m, f, w);
    }
    if (total < 0) throw FormulaNegative("oracle newform recursion at N=" + n.str());
    return total;
}

TypeInvariants omega_char_block_p(const Int& p) {
    if (!is_prime(p) || p % 4 != 3 || p == 3)
        throw PreconditionViolated("p prime, p = 3 mod 4, p > 3");
    return {p + 1, 2, Rat(char_sum_quadratic(p, p, 1, 1)), 0, 0};
}

TypeInvariants omega_char_block_p2_new(const Int& p) {
    if (!is_prime(p) || p % 4 != 3 || p == 3)
        throw PreconditionViolated("p prime, p = 3 mod 4, p > 3");
    Rat a3 = Rat(char_sum_quadratic(p * p, p, 1, 1)) - 2 * char_sum_quadratic(p, p, 1, 1);
    return {(p + 1) * (p - 2), p - 3, a3, 0, 0};
}

} // namespace bianchi

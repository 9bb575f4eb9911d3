#include "bianchi/invariants.hpp"

#include "bianchi/arith.hpp"
#include "bianchi/errors.hpp"

namespace bianchi {

namespace {
constexpr int kMaxExponent = 64;

void check_exponent(int e) {
    if (e < 0 || e > kMaxExponent)
        throw PreconditionViolated("prime-power exponent in [0, 64]");
}

Int ipow(const Int& p, int e) {
    Int r = 1;
    for (int i = 0; i < e; ++i) r *= p;
    return r;
}
} // namespace

Int lambda_cond(int e, const Int& p) {
    check_exponent(e);
    if (e == 0) return 1;
    if (e % 2 == 1) return 2 * ipow(p, (e - 1) / 2);
    return ipow(p, e / 2) + ipow(p, e / 2 - 1);
}

TypeInvariants sigma_prime_power(const Int& p, int e) {
    check_exponent(e);
    TypeInvariants v;
    v.i1 = e == 0 ? Int(1) : ipow(p, e - 1) * (p + 1);
    v.i2 = lambda_cond(e, p);
    // i3 = #{x mod p^e : x^2+x+1 = 0}, i4 = #{x mod p^e : x^2+1 = 0}
    if (e == 0 || (p == 3 && e == 1)) v.i3 = 1;
    else if (p != 3) v.i3 = 1 + kronecker(-3, p);
    else v.i3 = 0;
    if (e == 0 || (p == 2 && e == 1)) v.i4 = 1;
    else if (p != 2) v.i4 = 1 + kronecker(-1, p);
    else v.i4 = 0;
    v.i5 = 1;
    return v;
}

TypeInvariants sigma_prime_power_new(const Int& p, int e) {
    check_exponent(e);
    TypeInvariants v;
    if (e == 0) v.i1 = 1;
    else if (e == 1) v.i1 = p - 1;
    else if (e == 2) v.i1 = p * p - p - 1;
    else v.i1 = ipow(p, e - 3) * (p - 1) * (p - 1) * (p + 1);

    if (e == 0) v.i2 = 1;
    else if (e % 2 == 1) v.i2 = 0;
    else if (e == 2) v.i2 = p - 2;
    else v.i2 = ipow(p, e / 2 - 2) * (p - 1) * (p - 1);

    if (e == 0 || (p == 3 && e == 3)) v.i3 = 1;
    else if (p == 3 && (e == 1 || e == 2)) v.i3 = -1;
    else if (e == 1 && p != 3) v.i3 = kronecker(-3, p) - 1;
    else if (e == 2 && p != 3) v.i3 = -kronecker(-3, p);
    else v.i3 = 0;

    if (e == 0 || (p == 2 && e == 3)) v.i4 = 1;
    else if (p == 2 && (e == 1 || e == 2)) v.i4 = -1;
    else if (e == 1 && p != 2) v.i4 = kronecker(-1, p) - 1;
    else if (e == 2 && p != 2) v.i4 = -kronecker(-1, p);
    else v.i4 = 0;

    v.i5 = e == 0 ? 1 : (e == 1 ? -1 : 0);
    return v;
}

bool verify_new_recursion(const Int& p, int e) {
    check_exponent(e);
    auto at = [&](int f) {
        return f < 0 ? TypeInvariants{0, 0, 0, 0, 0} : sigma_prime_power(p, f);
    };
    TypeInvariants full = at(e), down1 = at(e - 1), down2 = at(e - 2);
    TypeInvariants rhs{full.i1 - 2 * down1.i1 + down2.i1,
                       full.i2 - 2 * down1.i2 + down2.i2,
                       full.i3 - 2 * down1.i3 + down2.i3,
                       full.i4 - 2 * down1.i4 + down2.i4,
                       full.i5 - 2 * down1.i5 + down2.i5};
    return sigma_prime_power_new(p, e) == rhs;
}

TypeInvariants combine_product(const std::vector<TypeInvariants>& parts) {
    TypeInvariants r{1, 1, 1, 1, 1};
    for (const auto& t : parts) {
        r.i1 *= t.i1;
        r.i2 *= t.i2;
        r.i3 *= t.i3;
        r.i4 *= t.i4;
        r.i5 *= t.i5;
    }
    return r;
}

TypeInvariants combine_sum(const TypeInvariants& a, const TypeInvariants& b) {
    return {a.i1 + b.i1, a.i2 + b.i2, a.i3 + b.i3, a.i4 + b.i4, a.i5 + b.i5};
}

TypeInvariants gamma0_invariants(const Int& n) {
    if (n < 1) throw PreconditionViolated("level N >= 1");
    std::vector<TypeInvariants> parts;
    for (const auto& [p, e] : factorize(n)) parts.push_back(sigma_prime_power(p, e));
    return combine_product(parts);
}

TypeInvariants gamma0_new_invariants(const Int& n) {
    if (n < 1) throw PreconditionViolated("level N >= 1");
    std::vector<TypeInvariants> parts;
    for (const auto& [p, e] : factorize(n)) parts.push_back(sigma_prime_power_new(p, e));
    return combine_product(parts);
}

} // namespace bianchi

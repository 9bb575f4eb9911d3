#include "bianchi/cm_counting.hpp"

#include "bianchi/errors.hpp"

namespace bianchi {

Int cm_local_count(const CmLocalInput& in) {
    if (in.t < 0) throw PreconditionViolated("local exponent t >= 0");
    const Int& p = in.p;
    const int t = in.t;
    const bool ram = in.splitting == SplittingType::Ramified;
    if (t == 0) return 1;
    if (t == 1) return ram ? 1 : 0;
    if (t == 2) {
        if (ram) return 1;
        if (in.splitting == SplittingType::Split) return p - 2;
        return p;
    }
    if (t % 2 == 1) return 0;
    // t = 2n >= 4: the local character has p+1 (inert) or p-1 (split) tame
    // choices times phi(p^(n-1)) wild ones
    int n = t / 2;
    Int pw = 1;
    for (int i = 0; i < n - 2; ++i) pw *= p;
    if (in.splitting == SplittingType::Split) return pw * (p - 1) * (p - 1);
    if (in.splitting == SplittingType::Inert) return pw * (p * p - 1);
    return 0;  // ramified t >= 3: no compatible conductor (odd case list)
}

CmCorrection dim_cm_correction_full(const QuadField& field, const Int& n, const Int& d) {
    if (n < 1 || d < 1) throw PreconditionViolated("N >= 1 and d >= 1");
    if (gcd(n, field.disc) != 1) throw PreconditionViolated("gcd(N, D_K) = 1");
    // the conductor norm must absorb all of |D_K|: every ramified prime
    // needs a positive exponent in Nd, i.e. rad(D_K) | d
    Int disc_abs = field.disc < 0 ? Int(-field.disc) : field.disc;
    if (d % radical(disc_abs) != 0) return {0, true};
    CmCorrection out{1, true};
    Int nd = n * d;
    for (const auto& [p, t] : factorize(nd)) {
        CmLocalInput in{p, t, splitting_type(field, p)};
        out.count *= cm_local_count(in);
        if (p == 2 && t >= 1) out.verified = false;
        if (out.count == 0) break;
    }
    return out;
}

Int dim_cm_correction(const QuadField& field, const Int& n, const Int& d) {
    return dim_cm_correction_full(field, n, d).count;
}

bool verify_squarefree_specialization(const QuadField& field, const Int& n, const Int& d) {
    if (!is_squarefree(n)) throw PreconditionViolated("N square-free");
    Int disc_abs = field.disc < 0 ? Int(-field.disc) : field.disc;
    Int expected = (n == 1 && d % radical(disc_abs) == 0) ? 1 : 0;
    return dim_cm_correction(field, n, d) == expected;
}

} // namespace bianchi

#include "bianchi/arith.hpp"

#include <boost/multiprecision/integer.hpp>

#include "bianchi/errors.hpp"

namespace bianchi {

Int gcd(Int a, Int b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) { a %= b; std::swap(a, b); }
    return a;
}

int kronecker(Int a, Int n) {
    if (n == 0) throw PreconditionViolated("kronecker: n != 0");
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) result = -result;
    }
    if (n == 1) return result;
    // strip factors of 2 from n; (a/2) is 0 for even a, +-1 by a mod 8
    while (n % 2 == 0) {
        n /= 2;
        if (a % 2 == 0) return 0;
        Int m = a % 8;
        if (m < 0) m += 8;
        if (m == 3 || m == 5) result = -result;
    }
    a %= n;
    if (a < 0) a += n;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            Int m = n % 8;
            if (m == 3 || m == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

namespace {

Int powm(Int base, Int exp, const Int& mod) {
    Int r = 1;
    base %= mod;
    while (exp > 0) {
        if ((exp & 1) != 0) r = r * base % mod;
        base = base * base % mod;
        exp >>= 1;
    }
    return r;
}

bool miller_rabin(const Int& n) {
    Int d = n - 1;
    int s = 0;
    while (d % 2 == 0) { d /= 2; ++s; }
    // deterministic witness set for n < 3.3e24
    for (int w : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == w) return true;
        Int x = powm(w, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = x * x % n;
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

} // namespace

bool is_prime(const Int& n) {
    if (n < 2) return false;
    for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    if (n < 37 * 37) return true;
    if (n < 1000000) {
        Int d = 37;
        while (d * d <= n) {
            if (n % d == 0) return false;
            d += 2;
        }
        return true;
    }
    return miller_rabin(n);
}

std::vector<std::pair<Int, int>> factorize(Int n) {
    if (n < 1) throw PreconditionViolated("factorize: n >= 1");
    std::vector<std::pair<Int, int>> out;
    auto strip = [&](const Int& p) {
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        if (e > 0) out.emplace_back(p, e);
    };
    strip(2);
    strip(3);
    Int d = 5;
    while (d * d <= n) {
        if (n > 1000000 && is_prime(n)) break;
        strip(d);
        strip(d + 2);
        d += 6;
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

bool is_squarefree(const Int& n) { return radical(n) == n; }

Int radical(const Int& n) {
    Int r = 1;
    for (const auto& [p, e] : factorize(n)) r *= p;
    return r;
}

bool is_fundamental_discriminant(const Int& d) {
    if (d == 1 || d == 0) return false;
    Int m = d % 4;
    if (m < 0) m += 4;
    if (m == 1) return is_squarefree(d < 0 ? -d : d);
    if (m == 0) {
        Int q = d / 4;
        Int qm = q % 4;
        if (qm < 0) qm += 4;
        if (qm != 2 && qm != 3) return false;
        return is_squarefree(q < 0 ? -q : q);
    }
    return false;
}

Int class_number(const Int& disc) {
    if (disc >= 0) throw PreconditionViolated("class_number: disc < 0");
    if (!is_fundamental_discriminant(disc))
        throw PreconditionViolated("class_number: disc is a fundamental discriminant");
    Int h = 0;
    Int b = ((disc % 2) + 2) % 2;  // b == disc mod 2
    for (; 3 * b * b <= -disc; b += 2) {
        Int ac4 = b * b - disc;
        if (ac4 % 4 != 0) continue;
        Int ac = ac4 / 4;
        for (Int a = (b > 1 ? b : Int(1)); a * a <= ac; ++a) {
            if (ac % a != 0) continue;
            // form (a, b, ac/a): reduced since b <= a <= c
            Int c = ac / a;
            if (b == 0 || a == b || a == c)
                h += 1;        // (a,-b,c) is equivalent, count once
            else
                h += 2;        // (a,b,c) and (a,-b,c) are distinct classes
        }
    }
    return h;
}

QuadField QuadField::from_disc(const Int& disc) {
    if (disc >= 0) throw PreconditionViolated("field discriminant is negative");
    if (!is_fundamental_discriminant(disc))
        throw PreconditionViolated("field discriminant is fundamental");
    return QuadField{disc, bianchi::class_number(disc)};
}

SplittingType splitting_type(const QuadField& field, const Int& p) {
    if (!is_prime(p)) throw PreconditionViolated("splitting_type: p prime");
    switch (kronecker(field.disc, p)) {
        case 1: return SplittingType::Split;
        case -1: return SplittingType::Inert;
        default: return SplittingType::Ramified;
    }
}

std::vector<Int> divisors(const Int& n) {
    std::vector<Int> ds{1};
    for (const auto& [p, e] : factorize(n)) {
        size_t sz = ds.size();
        Int pk = 1;
        for (int i = 1; i <= e; ++i) {
            pk *= p;
            for (size_t j = 0; j < sz; ++j) ds.push_back(ds[j] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

} // namespace bianchi

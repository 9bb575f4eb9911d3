#include "bianchi/basechange.hpp"

#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>

#include "bianchi/cm_counting.hpp"
#include "bianchi/errors.hpp"

namespace bianchi {

namespace {

CharParity parity_of_conductor(const Int& f) {
    if (f == 1) return CharParity::Even;
    if (f % 2 == 0)
        throw PreconditionViolated("odd discriminant (2-adic character conventions undefined)");
    return f % 4 == 3 ? CharParity::Odd : CharParity::Even;
}

bool parity_matches(CharParity p, int k) {
    return (p == CharParity::Odd) == (k % 2 == 1);
}

} // namespace

std::vector<DiscriminantDivisor> discriminant_divisors(const QuadField& field) {
    if (!is_fundamental_discriminant(field.disc))
        throw PreconditionViolated("field discriminant is fundamental");
    Int disc_abs = -field.disc;
    std::vector<DiscriminantDivisor> out;
    for (const Int& d : divisors(disc_abs * disc_abs)) {
        auto fac = factorize(d);
        Int conductor = 1;
        for (const auto& [p, e] : fac)
            if (e == 1) conductor *= p;  // omega_d is trivial at p iff p^2 || d
        out.push_back({d, static_cast<int>(fac.size()), parity_of_conductor(conductor)});
    }
    return out;
}

DPartProvider DPartProvider::builtin() {
    DPartProvider p;
    p.allow_computed_ = true;
    p.refresh_fingerprint();
    return p;
}

std::optional<DPartProvider::Entry> DPartProvider::computed(const Int& disc, const Int& d) const {
    // closed forms for D_K = -p, p = 3 mod 4, p > 3 (see derive.cpp for the
    // fitting protocol that pins these)
    if (disc >= -3 || !is_prime(-disc)) return std::nullopt;
    Int p = -disc;
    if (p % 4 != 3) return std::nullopt;
    if (d == 1) return Entry{{1, 1, 1, 1, 1}, CharParity::Even};
    if (d == p) return Entry{omega_char_block_p(p), CharParity::Odd};
    if (d == p * p) return Entry{{0, -2, 0, 0, 0}, CharParity::Even};
    return std::nullopt;
}

std::optional<DPartProvider::Entry> DPartProvider::lookup(const Int& disc, const Int& d) const {
    auto it = entries_.find({disc, d});
    if (it != entries_.end()) return it->second;
    if (allow_computed_) return computed(disc, d);
    return std::nullopt;
}

DPartProvider::Entry DPartProvider::require(const Int& disc, const Int& d) const {
    auto e = lookup(disc, d);
    if (!e) throw MissingDPart("disc=" + disc.str() + " d=" + d.str());
    return *e;
}

void DPartProvider::set(const Int& disc, const Int& d, Entry entry) {
    entries_[{disc, d}] = std::move(entry);
    refresh_fingerprint();
}

void DPartProvider::refresh_fingerprint() {
    std::hash<std::string> h;
    fingerprint_ = h(serialize()) ^ (allow_computed_ ? 0x9e3779b9u : 0u);
}

std::string DPartProvider::serialize() const {
    std::ostringstream os;
    os << "# bianchi-dim d-part table v1\n";
    os << "# disc d i1 i2 i3 i4 i5 parity\n";
    for (const auto& [key, e] : entries_) {
        os << key.first << ' ' << key.second;
        for (const Rat* v : {&e.inv.i1, &e.inv.i2, &e.inv.i3, &e.inv.i4, &e.inv.i5})
            os << ' ' << rat_to_string(*v);
        os << ' ' << (e.parity == CharParity::Odd ? "odd" : "even") << '\n';
    }
    return os.str();
}

DPartProvider DPartProvider::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open d-part table '" + path + "'");
    DPartProvider prov;
    std::string line;
    long row = 0;
    bool version_seen = false;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (line.find("d-part table v1") != std::string::npos) version_seen = true;
            continue;
        }
        std::istringstream is(line);
        std::string disc_s, d_s, parity_s, i1, i2, i3, i4, i5;
        if (!(is >> disc_s >> d_s >> i1 >> i2 >> i3 >> i4 >> i5 >> parity_s))
            throw ParseError(row, "expected: disc d i1 i2 i3 i4 i5 parity");
        CharParity par;
        if (parity_s == "odd") par = CharParity::Odd;
        else if (parity_s == "even") par = CharParity::Even;
        else throw ParseError(row, "parity must be 'even' or 'odd'");
        try {
            Entry e{{rat_from_string(i1), rat_from_string(i2), rat_from_string(i3),
                     rat_from_string(i4), rat_from_string(i5)},
                    par};
            prov.set(Int(disc_s), Int(d_s), std::move(e));
        } catch (const std::exception& ex) {
            throw ParseError(row, ex.what());
        }
    }
    if (!version_seen) throw ParseError(0, "missing 'd-part table v1' version header");
    return prov;
}

Int sc_new_space_dim(const QuadField& field, const Int& n, const Int& d, WeightSpec k,
                     const DPartProvider& provider) {
    if (gcd(n, field.disc) != 1) throw PreconditionViolated("gcd(N, D_K) = 1");
    Int disc_sq = field.disc * field.disc;
    if (disc_sq % d != 0) throw PreconditionViolated("d divides D_K^2");
    auto entry = provider.require(field.disc, d);
    if (!parity_matches(entry.parity, k.k)) return 0;
    return dim_from_invariants(
        combine_product({gamma0_new_invariants(n), entry.inv}), k);
}

namespace {

struct CacheKey {
    size_t provider;
    Int disc, n, d;
    int k;
    bool operator<(const CacheKey& o) const {
        return std::tie(provider, disc, n, d, k) < std::tie(o.provider, o.disc, o.n, o.d, o.k);
    }
};

std::map<CacheKey, Rat> g_term_cache;
std::mutex g_cache_mutex;

} // namespace

void clear_basechange_cache() {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    g_term_cache.clear();
}

Int dim_basechange(const QuadField& field, const Int& n, WeightSpec k,
                   const DPartProvider& provider, const BasechangeOptions& opts) {
    if (field.class_number % 2 == 0)
        throw PreconditionViolated("class number h_K is odd");
    if (n < 1 || !is_squarefree(n)) throw PreconditionViolated("N is square-free");
    if (gcd(n, field.disc) != 1) throw PreconditionViolated("gcd(N, D_K) = 1");

    Rat total = 0;
    for (const auto& div : discriminant_divisors(field)) {
        if (!parity_matches(div.parity, k.k)) continue;  // summand trivial by parity
        CacheKey key{provider.fingerprint(), field.disc, n, div.d, k.k};
        if (opts.use_cache) {
            std::lock_guard<std::mutex> lock(g_cache_mutex);
            auto it = g_term_cache.find(key);
            if (it != g_term_cache.end()) { total += it->second; continue; }
        }
        Int space = sc_new_space_dim(field, n, div.d, k, provider);
        Int cm = dim_cm_correction(field, n, div.d);
        if (cm > space)
            throw FormulaNegative("CM part " + cm.str() + " exceeds designated subspace " +
                                  space.str() + " at d=" + div.d.str());
        Rat term = Rat(space - cm);
        for (int i = 0; i < div.num_primes; ++i) term /= 2;
        if (opts.use_cache) {
            std::lock_guard<std::mutex> lock(g_cache_mutex);
            g_term_cache.emplace(key, term);
        }
        total += term;
    }
    if (!is_integer(total))
        throw FormulaNonIntegral("halving factors did not cancel in the divisor sum: " +
                                 rat_to_string(total));
    if (total < 0) throw FormulaNegative("divisor sum " + rat_to_string(total));
    return numerator(total);
}

} // namespace bianchi

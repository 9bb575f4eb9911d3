#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bianchi/arith.hpp"
#include "bianchi/dim_engine.hpp"
#include "bianchi/invariants.hpp"

namespace bianchi {

enum class CharParity { Even, Odd };

/// One divisor d of D_K^2 together with the data the weighted sum needs:
/// the number of primes of d and the parity of the character omega_d
/// (conductor = product of primes exactly dividing d).
struct DiscriminantDivisor {
    Int d;
    int num_primes;       // |S(d)|
    CharParity parity;    // parity of omega_d
};

std::vector<DiscriminantDivisor> discriminant_divisors(const QuadField& field);

/// Table of discriminant-part invariant blocks tau^d, d | D_K^2, keyed by
/// (D_K, d). Built-in entries cover D_K = -p, p = 3 mod 4, p > 3; a
/// plain-text table can override or extend them.
class DPartProvider {
public:
    struct Entry {
        TypeInvariants inv;
        CharParity parity;
    };

    /// Provider with the built-in computed entries.
    static DPartProvider builtin();

    /// Parse the versioned plain-text table format (see data/dpart_table.txt).
    static DPartProvider from_file(const std::string& path);

    std::optional<Entry> lookup(const Int& disc, const Int& d) const;
    Entry require(const Int& disc, const Int& d) const;  // throws MissingDPart

    void set(const Int& disc, const Int& d, Entry entry);
    std::string serialize() const;
    size_t fingerprint() const { return fingerprint_; }

private:
    std::map<std::pair<Int, Int>, Entry> entries_;
    bool allow_computed_ = false;
    size_t fingerprint_ = 0;

    void refresh_fingerprint();
    std::optional<Entry> computed(const Int& disc, const Int& d) const;
};

/// Dimension of one d-summand: the subspace of S_k^new(Gamma0(Nd), omega_d)
/// of the designated local type at p^2 || d. Zero on weight/character parity
/// mismatch (summand and its CM part are both parity-gated).
Int sc_new_space_dim(const QuadField& field, const Int& n, const Int& d, WeightSpec k,
                     const DPartProvider& provider);

struct BasechangeOptions {
    bool use_cache = true;
};

/// The weighted divisor sum over d | D_K^2 with CM corrections: the dimension
/// of the base-change subspace of the weight-(k,k) newform space at the
/// Galois-stable level N O_K. Requires N square-free, coprime to D_K, and
/// odd class number.
Int dim_basechange(const QuadField& field, const Int& n, WeightSpec k,
                   const DPartProvider& provider,
                   const BasechangeOptions& opts = {});

void clear_basechange_cache();

} // namespace bianchi

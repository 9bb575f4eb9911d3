#pragma once

#include <optional>
#include <string>

#include "bianchi/basechange.hpp"

namespace bianchi {

/// -2 when p = 1 mod 3, else 0.
Int cps(const Int& p);

/// Supercuspidal trace parameters for the ramified-level rows. Fitted (see
/// derive.hpp), flagged as such in all output metadata.
struct ScConstants {
    Int p;
    Rat sc3, sc4;

    static ScConstants shipped_for(const Int& p);
    static std::optional<ScConstants> from_file(const std::string& path, const Int& p);
    static std::string serialize_range(const std::vector<Int>& primes);
};

enum class PSquaredRowKind { PrincipalOmegaOmega, PrincipalEtaEta, TwistedSteinberg, Supercuspidal };

/// The parameter rows for the types contributing at the ramified level p^2.
TypeInvariants p_squared_row(PSquaredRowKind kind, const QuadField& field, const ScConstants& sc);

/// Weights of the classical ingredient blocks in the level-p^2 assembly,
/// per weight parity, plus the CM-correction weights.
struct P2Multiplicities {
    Rat even_new_p2{1, 2}, even_level_one{1, 2}, even_new_p{1, 2}, even_cm{1, 2};
    Rat odd_new_p2{1, 2}, odd_new_p{1, 2}, odd_cm{1, 2};

    static P2Multiplicities shipped();
    static P2Multiplicities from_file(const std::string& path);
    std::string serialize() const;
};

/// h_K * (base-change dimension): the non-genuine newform dimension at the
/// Galois-stable square-free level N O_K coprime to the discriminant.
Int dim_nongenuine_squarefree(const QuadField& field, const Int& n, WeightSpec k,
                              const DPartProvider& provider);

/// Level = the ramified prime ideal. Equals the classical new dimension at
/// Gamma0(p); zero at odd weights.
Int dim_nongenuine_ramified_p(const QuadField& field, WeightSpec k);

/// Level = (p), the square of the ramified prime.
Int dim_nongenuine_ramified_p2(const QuadField& field, WeightSpec k, const ScConstants& sc,
                               const P2Multiplicities& mult = P2Multiplicities::shipped());

enum class LevelKind { SquareFree, RamifiedP, RamifiedP2 };

struct LevelDesc {
    LevelKind kind;
    Int n;  // the rational generator for SquareFree; p for the ramified kinds
};

struct DimBreakdown {
    Int disc;
    LevelDesc level;
    int weight;
    std::optional<Int> full_dim;
    Int bc, tbc, cm, ng;
    std::optional<Int> genuine;
    std::string provenance;
};

DimBreakdown breakdown(const QuadField& field, const LevelDesc& level, WeightSpec k,
                       const DPartProvider& provider, const ScConstants* sc = nullptr,
                       const P2Multiplicities& mult = P2Multiplicities::shipped());

} // namespace bianchi

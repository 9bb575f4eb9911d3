#include "bianchi/nongenuine.hpp"

#include <fstream>
#include <sstream>

#include "bianchi/cm_counting.hpp"
#include "bianchi/errors.hpp"

namespace bianchi {

Int cps(const Int& p) {
    if (!is_prime(p)) throw PreconditionViolated("cps: p prime");
    return p % 3 == 1 ? Int(-2) : Int(0);
}

ScConstants ScConstants::shipped_for(const Int& p) {
    if (!is_prime(p) || p % 4 != 3 || p == 3)
        throw MissingScConstants("p=" + p.str() + " (need p prime, p = 3 mod 4, p > 3)");
    // minimal solution of the combined-block integrality system; fitted,
    // not transcribed (derive_sc_constants re-runs the search)
    return {p, Rat(1 - kronecker(-3, p), 2), Rat(-1)};
}

std::optional<ScConstants> ScConstants::from_file(const std::string& path, const Int& p) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open sc table '" + path + "'");
    std::string line;
    long row = 0;
    bool version_seen = false;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (line.find("sc table v1") != std::string::npos) version_seen = true;
            continue;
        }
        std::istringstream is(line);
        std::string p_s, sc3_s, sc4_s;
        if (!(is >> p_s >> sc3_s >> sc4_s))
            throw ParseError(row, "expected: p sc3 sc4");
        if (Int(p_s) == p) {
            if (!version_seen) throw ParseError(row, "missing 'sc table v1' version header");
            return ScConstants{p, rat_from_string(sc3_s), rat_from_string(sc4_s)};
        }
    }
    if (!version_seen) throw ParseError(0, "missing 'sc table v1' version header");
    return std::nullopt;
}

std::string ScConstants::serialize_range(const std::vector<Int>& primes) {
    std::ostringstream os;
    os << "# bianchi-dim sc table v1 (fitted, not transcribed)\n";
    os << "# p sc3 sc4\n";
    for (const Int& p : primes) {
        auto sc = shipped_for(p);
        os << p << ' ' << rat_to_string(sc.sc3) << ' ' << rat_to_string(sc.sc4) << '\n';
    }
    return os.str();
}

TypeInvariants p_squared_row(PSquaredRowKind kind, const QuadField& field, const ScConstants& sc) {
    Int p = -field.disc;
    if (!is_prime(p) || p % 4 != 3)
        throw PreconditionViolated("disc = -p with p = 3 mod 4");
    if (sc.p != p) throw MissingScConstants("constants are for p=" + sc.p.str());
    const Int h = field.class_number;
    const Int k3 = kronecker(-3, p), k4 = kronecker(-1, p);
    switch (kind) {
        case PSquaredRowKind::PrincipalOmegaOmega:
            return {Rat(p + 1, 2), p - 3, 1 + sc.sc3 / 2, 0, 0};
        case PSquaredRowKind::PrincipalEtaEta:
            return {Rat((p - 3) * (p + 1), 2), 1 + h, Rat(cps(p)), 1 + sc.sc4 / 2, 0};
        case PSquaredRowKind::TwistedSteinberg:
            return {p - 1, 0, k3 - 1, k4 - 1, -1};
        case PSquaredRowKind::Supercuspidal:
            return {Rat((p - 3) * (p - 1), 2), p - 2 + h, -2 * k3 - cps(p) - sc.sc3,
                    -1 - Rat(k4, 2), 0};
    }
    throw std::logic_error("unreachable");
}

P2Multiplicities P2Multiplicities::shipped() { return {}; }

std::string P2Multiplicities::serialize() const {
    std::ostringstream os;
    os << "# bianchi-dim p2 multiplicity config v1\n";
    os << "even_new_p2 " << rat_to_string(even_new_p2) << '\n';
    os << "even_level_one " << rat_to_string(even_level_one) << '\n';
    os << "even_new_p " << rat_to_string(even_new_p) << '\n';
    os << "even_cm " << rat_to_string(even_cm) << '\n';
    os << "odd_new_p2 " << rat_to_string(odd_new_p2) << '\n';
    os << "odd_new_p " << rat_to_string(odd_new_p) << '\n';
    os << "odd_cm " << rat_to_string(odd_cm) << '\n';
    return os.str();
}

P2Multiplicities P2Multiplicities::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open p2 config '" + path + "'");
    P2Multiplicities m;
    std::string line;
    long row = 0;
    bool version_seen = false;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (line.find("p2 multiplicity config v1") != std::string::npos) version_seen = true;
            continue;
        }
        std::istringstream is(line);
        std::string key, value;
        if (!(is >> key >> value)) throw ParseError(row, "expected: key value");
        Rat v = rat_from_string(value);
        if (key == "even_new_p2") m.even_new_p2 = v;
        else if (key == "even_level_one") m.even_level_one = v;
        else if (key == "even_new_p") m.even_new_p = v;
        else if (key == "even_cm") m.even_cm = v;
        else if (key == "odd_new_p2") m.odd_new_p2 = v;
        else if (key == "odd_new_p") m.odd_new_p = v;
        else if (key == "odd_cm") m.odd_cm = v;
        else throw ParseError(row, "unknown key '" + key + "'");
    }
    if (!version_seen) throw ParseError(0, "missing 'p2 multiplicity config v1' version header");
    return m;
}

Int dim_nongenuine_squarefree(const QuadField& field, const Int& n, WeightSpec k,
                              const DPartProvider& provider) {
    if (field.class_number % 2 == 0)
        throw PreconditionViolated("class number h_K is odd");
    if (n < 1 || !is_squarefree(n)) throw PreconditionViolated("N is square-free");
    if (gcd(n, field.disc) != 1) throw PreconditionViolated("gcd(N, D_K) = 1");
    return field.class_number * dim_basechange(field, n, k, provider);
}

namespace {

void require_ramified_field(const QuadField& field) {
    Int p = -field.disc;
    if (!is_prime(p) || p % 4 != 3 || p == 3)
        throw PreconditionViolated("disc = -p with p prime, p = 3 mod 4, p > 3");
    if (field.class_number != 1) throw PreconditionViolated("class number h_K = 1");
}

} // namespace

Int dim_nongenuine_ramified_p(const QuadField& field, WeightSpec k) {
    require_ramified_field(field);
    Int p = -field.disc;
    // the stated parameter list for the single type at this level must agree
    // with the new level-p block
    TypeInvariants printed{p - 1, 0, kronecker(-3, p) - 1, -2, -1};
    if (!(printed == gamma0_new_invariants(p)))
        throw std::logic_error("level-p parameter list disagrees with the new block");
    return dim_new_gamma0(p, k);
}

Int dim_nongenuine_ramified_p2(const QuadField& field, WeightSpec k, const ScConstants& sc,
                               const P2Multiplicities& mult) {
    require_ramified_field(field);
    Int p = -field.disc;
    if (sc.p != p) throw MissingScConstants("constants are for p=" + sc.p.str());
    // internal cross-check: the Steinberg row is the new level-p block
    if (!(p_squared_row(PSquaredRowKind::TwistedSteinberg, field, sc) == gamma0_new_invariants(p)))
        throw std::logic_error("Steinberg row disagrees with the new level-p block");

    Rat total;
    if (k.k % 2 == 0) {
        Rat cm = Rat(dim_cm_correction(field, 1, p * p));
        total = mult.even_new_p2 * trace_form(gamma0_new_invariants(p * p), k) +
                mult.even_level_one * trace_form(TypeInvariants{1, 1, 1, 1, 1}, k) +
                mult.even_new_p * trace_form(gamma0_new_invariants(p), k) -
                mult.even_cm * cm;
    } else {
        Rat cm = Rat(dim_cm_correction(field, 1, p));
        total = mult.odd_new_p2 * trace_form(omega_char_block_p2_new(p), k) +
                mult.odd_new_p * trace_form(omega_char_block_p(p), k) -
                mult.odd_cm * cm;
    }
    if (!is_integer(total))
        throw FormulaNonIntegral("level-p^2 assembly gave " + rat_to_string(total) +
                                 " (bad multiplicities or constants)");
    if (total < 0) throw FormulaNegative("level-p^2 assembly gave " + rat_to_string(total));
    return numerator(total);
}

DimBreakdown breakdown(const QuadField& field, const LevelDesc& level, WeightSpec k,
                       const DPartProvider& provider, const ScConstants* sc,
                       const P2Multiplicities& mult) {
    DimBreakdown out;
    out.disc = field.disc;
    out.level = level;
    out.weight = k.k;
    switch (level.kind) {
        case LevelKind::SquareFree: {
            out.bc = dim_basechange(field, level.n, k, provider);
            out.tbc = (field.class_number - 1) * out.bc;
            out.cm = 0;
            out.ng = out.bc + out.tbc + out.cm;
            out.provenance = "square-free level: ng = h_K * bc; cm vanishes (odd class number)";
            break;
        }
        case LevelKind::RamifiedP: {
            out.bc = dim_nongenuine_ramified_p(field, k);
            out.tbc = 0;
            out.cm = 0;
            out.ng = out.bc;
            out.provenance = "ramified prime level: no twists, no CM outside base-change";
            break;
        }
        case LevelKind::RamifiedP2: {
            ScConstants constants = sc ? *sc : ScConstants::shipped_for(-field.disc);
            out.ng = dim_nongenuine_ramified_p2(field, k, constants, mult);
            out.bc = out.ng;  // base-change and its ramified twists counted together
            out.tbc = 0;
            out.cm = 0;
            out.provenance =
                "ramified square level: base-change counted with its ramified twists; "
                "no CM outside base-change; sc parameters fitted, not transcribed";
            break;
        }
    }
    return out;
}

} // namespace bianchi

#include "bianchi/derive.hpp"

#include <sstream>

#include "bianchi/cm_counting.hpp"
#include "bianchi/errors.hpp"

namespace bianchi {

std::vector<Rat> solve_exact(std::vector<std::vector<Rat>> a, std::vector<Rat> b,
                             size_t* verified) {
    const size_t rows = a.size();
    if (rows == 0 || b.size() != rows) throw std::invalid_argument("bad system shape");
    const size_t cols = a[0].size();
    // keep originals for the residual pass
    const auto a0 = a;
    const auto b0 = b;

    size_t rank = 0;
    std::vector<size_t> pivot_col;
    for (size_t col = 0; col < cols && rank < rows; ++col) {
        size_t sel = rank;
        while (sel < rows && a[sel][col] == 0) ++sel;
        if (sel == rows) continue;
        std::swap(a[sel], a[rank]);
        std::swap(b[sel], b[rank]);
        Rat inv = a[rank][col];
        for (size_t j = col; j < cols; ++j) a[rank][j] /= inv;
        b[rank] /= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == rank || a[i][col] == 0) continue;
            Rat f = a[i][col];
            for (size_t j = col; j < cols; ++j) a[i][j] -= f * a[rank][j];
            b[i] -= f * b[rank];
        }
        pivot_col.push_back(col);
        ++rank;
    }
    if (rank < cols) throw std::runtime_error("underdetermined fit (rank deficiency)");
    std::vector<Rat> x(cols, Rat(0));
    for (size_t i = 0; i < rank; ++i) x[pivot_col[i]] = b[i];
    size_t ok = 0;
    for (size_t i = 0; i < rows; ++i) {
        Rat lhs = 0;
        for (size_t j = 0; j < cols; ++j) lhs += a0[i][j] * x[j];
        if (lhs != b0[i])
            throw std::runtime_error("nonzero fit residual in equation " + std::to_string(i));
        ++ok;
    }
    if (verified) *verified = ok;
    return x;
}

EllipticFit derive_elliptic_constants() {
    // unknowns: eps0 eps1 eps2 mu0 mu2 (even weights never see mu1, mu3)
    std::vector<std::vector<Rat>> a;
    std::vector<Rat> b;
    for (int n = 1; n <= 30; ++n) {
        TypeInvariants inv = gamma0_invariants(n);
        for (int k = 2; k <= 24; k += 2) {
            std::vector<Rat> row(5, Rat(0));
            row[k % 3] = inv.i3;
            if (k % 4 == 0) row[3] = inv.i4;
            else row[4] = inv.i4;
            Rat rhs = Rat(oracle_dim_gamma0_chi(n, 1, WeightSpec(k))) -
                      Rat(k - 1, 12) * inv.i1 + inv.i2 / 2 - (k == 2 ? inv.i5 : Rat(0));
            a.push_back(std::move(row));
            b.push_back(rhs);
        }
    }
    size_t verified = 0;
    auto x = solve_exact(std::move(a), std::move(b), &verified);

    EllipticFit fit;
    fit.constants.eps = {x[0], x[1], x[2]};
    fit.constants.mu = {x[3], Rat(0), x[4], Rat(0)};
    fit.equations_verified = verified;

    // odd parities: eps must keep its mod-3 values; the mu direction never
    // appears because x^2+1 has no roots wherever an odd character lives
    fit.odd_equations_verified = 0;
    fit.mu_odd_coefficient_zero = true;
    for (Int q : {7, 11, 19, 23}) {
        TypeInvariants block = omega_char_block_p(q);
        for (int n : {1, 2, 3, 5}) {
            if (gcd(n, q) != 1) continue;
            TypeInvariants inv = combine_product({gamma0_invariants(n), block});
            for (int k = 3; k <= 13; k += 2) {
                if (inv.i4 != 0) fit.mu_odd_coefficient_zero = false;
                Rat got = trace_form(inv, WeightSpec(k), fit.constants);
                Int want = oracle_dim_gamma0_chi(Int(n) * q, q, WeightSpec(k));
                if (got != Rat(want))
                    throw std::runtime_error("odd-parity residual at N=" + std::to_string(n) +
                                             " q=" + q.str() + " k=" + std::to_string(k));
                ++fit.odd_equations_verified;
            }
        }
    }
    return fit;
}

DPartFit derive_dpart(const Int& p) {
    if (!is_prime(p) || p % 4 != 3 || p == 3)
        throw PreconditionViolated("p prime, p = 3 mod 4, p > 3");
    DPartFit fit{};
    fit.equations_verified = 0;

    // d = p: three unknowns (t1,t2,t3) from odd-weight newform dimensions;
    // the t4/t5 directions never appear at odd parity (mu_odd = 0, k != 2)
    {
        std::vector<std::vector<Rat>> a;
        std::vector<Rat> b;
        const auto& c = EllipticConstants::shipped();
        for (int n : {1, 2, 3, 5, 6, 10}) {
            if (gcd(n, p) != 1) continue;
            TypeInvariants nb = gamma0_new_invariants(n);
            for (int k = 3; k <= 13; k += 2) {
                a.push_back({Rat(k - 1, 12) * nb.i1, -nb.i2 / 2, c.eps_at(k) * nb.i3});
                b.push_back(Rat(oracle_dim_new_gamma0_chi(Int(n) * p, p, WeightSpec(k))));
            }
        }
        size_t verified = 0;
        auto x = solve_exact(std::move(a), std::move(b), &verified);
        fit.equations_verified += verified;
        fit.tau_p = {x[0], x[1], x[2], Rat(char_sum_quadratic(p, p, 0, 1)), 0};
    }

    // d = p^2: all five unknowns from the even-weight requirement that the
    // summand cancel its CM correction on square-free levels
    {
        QuadField field = QuadField::from_disc(-p);
        std::vector<std::vector<Rat>> a;
        std::vector<Rat> b;
        const auto& c = EllipticConstants::shipped();
        for (int n : {1, 2, 3, 5, 6}) {
            if (gcd(n, p) != 1) continue;
            TypeInvariants nb = gamma0_new_invariants(n);
            for (int k = 2; k <= 12; k += 2) {
                a.push_back({Rat(k - 1, 12) * nb.i1, -nb.i2 / 2, c.eps_at(k) * nb.i3,
                             c.mu_at(k) * nb.i4, k == 2 ? nb.i5 : Rat(0)});
                b.push_back(Rat(dim_cm_correction(field, n, p * p)));
            }
        }
        size_t verified = 0;
        auto x = solve_exact(std::move(a), std::move(b), &verified);
        fit.equations_verified += verified;
        fit.tau_p2 = {x[0], x[1], x[2], x[3], x[4]};
    }

    auto builtin = DPartProvider::builtin();
    if (!(builtin.require(-p, p).inv == fit.tau_p))
        throw std::runtime_error("fitted d=p entry drifted from the shipped table");
    if (!(builtin.require(-p, p * p).inv == fit.tau_p2))
        throw std::runtime_error("fitted d=p^2 entry drifted from the shipped table");
    return fit;
}

ScFit derive_sc_constants(const Int& p) {
    QuadField field = QuadField::from_disc(-p);
    ScFit best{};
    bool found = false;
    // search |sc3|+|sc4| minimal, deterministic tie-break by value
    for (int norm = 0; norm <= 24 && !found; ++norm) {
        for (int n3 = -norm; n3 <= norm && !found; ++n3) {
            int n4a = norm - std::abs(n3);
            for (int n4 : {-n4a, n4a}) {
                ScConstants sc{p, Rat(n3), Rat(n4)};
                TypeInvariants combined =
                    combine_sum(p_squared_row(PSquaredRowKind::PrincipalEtaEta, field, sc),
                                p_squared_row(PSquaredRowKind::Supercuspidal, field, sc));
                bool ok = true;
                size_t cells = 0;
                for (int k = 2; k <= 13 && ok; ++k) {
                    if (k % 2) continue;
                    ok = is_integer(trace_form(combined, WeightSpec(k)));
                    ++cells;
                }
                if (ok) {
                    best = {sc, cells};
                    found = true;
                    break;
                }
                if (n4a == 0) break;
            }
        }
    }
    if (!found) throw std::runtime_error("no integral sc constants in the search window");
    // the shipped closed form must reproduce the search
    auto shipped = ScConstants::shipped_for(p);
    if (best.constants.sc3 != shipped.sc3 || best.constants.sc4 != shipped.sc4)
        throw std::runtime_error("fitted sc constants drifted from the shipped closed form");
    return best;
}

P2Fit derive_p2_assembly(const Int& p) {
    if (!is_prime(p) || p % 4 != 3 || p == 3)
        throw PreconditionViolated("p prime, p = 3 mod 4, p > 3");
    P2Fit fit{};
    // odd-parity block: three unknowns against the oracle newform dimensions
    {
        std::vector<std::vector<Rat>> a;
        std::vector<Rat> b;
        const auto& c = EllipticConstants::shipped();
        for (int k = 3; k <= 13; k += 2) {
            a.push_back({Rat(k - 1, 12), Rat(-1, 2), c.eps_at(k)});
            b.push_back(Rat(oracle_dim_new_gamma0_chi(p * p, p, WeightSpec(k))));
        }
        size_t verified = 0;
        auto x = solve_exact(std::move(a), std::move(b), &verified);
        fit.equations_verified = verified;
        fit.odd_block = {x[0], x[1], x[2], Rat(char_sum_quadratic(p * p, p, 0, 1)), 0};
        if (!(fit.odd_block == omega_char_block_p2_new(p)))
            throw std::runtime_error("fitted odd level-p^2 block drifted from the shipped one");
    }
    // both parity views of the assembly must be the same five-tuple, and the
    // even view must match the oracle
    {
        TypeInvariants one{1, 1, 1, 1, 1};
        TypeInvariants cm_shift{0, 2, 0, 0, 0};
        auto half_sum3 = [](const TypeInvariants& x, const TypeInvariants& y,
                            const TypeInvariants& z) {
            TypeInvariants s = combine_sum(combine_sum(x, y), z);
            return TypeInvariants{s.i1 / 2, s.i2 / 2, s.i3 / 2, s.i4 / 2, s.i5 / 2};
        };
        TypeInvariants even_view =
            half_sum3(combine_sum(gamma0_new_invariants(p * p), one), gamma0_new_invariants(p),
                      cm_shift);
        TypeInvariants odd_view =
            half_sum3(omega_char_block_p2_new(p), omega_char_block_p(p), cm_shift);
        // the i4/i5 slots only matter on the parity where they are evaluated;
        // i1..i3 must agree on the nose
        if (even_view.i1 != odd_view.i1 || even_view.i2 != odd_view.i2 ||
            even_view.i3 != odd_view.i3)
            throw std::runtime_error("parity views of the level-p^2 assembly disagree");
        QuadField field = QuadField::from_disc(-p);
        if (field.class_number != 1)
            throw PreconditionViolated("class number h_K = 1 for the ramified-level assembly");
        auto sc = ScConstants::shipped_for(p);
        for (int k = 2; k <= 20; ++k) {
            Int got = dim_nongenuine_ramified_p2(field, WeightSpec(k), sc);
            Rat want;
            if (k % 2 == 0)
                want = Rat(oracle_dim_new_gamma0_chi(p * p, 1, WeightSpec(k)) +
                               oracle_dim_gamma0_chi(1, 1, WeightSpec(k)) +
                               oracle_dim_new_gamma0_chi(p, 1, WeightSpec(k)) - 1,
                           2);
            else
                want = Rat(oracle_dim_new_gamma0_chi(p * p, p, WeightSpec(k)) +
                               oracle_dim_new_gamma0_chi(p, p, WeightSpec(k)) - 1,
                           2);
            if (Rat(got) != want)
                throw std::runtime_error("level-p^2 assembly disagrees with the oracle at k=" +
                                         std::to_string(k));
            ++fit.equations_verified;
        }
    }
    return fit;
}

std::string derive_constants_report(const Int& disc) {
    QuadField field = QuadField::from_disc(disc);
    Int p = -disc;
    std::ostringstream os;

    auto ell = derive_elliptic_constants();
    os << "elliptic constants (fitted, residuals all zero, " << ell.equations_verified
       << " even + " << ell.odd_equations_verified << " odd equations)\n";
    os << "  eps by k mod 3: " << rat_to_string(ell.constants.eps[0]) << ' '
       << rat_to_string(ell.constants.eps[1]) << ' ' << rat_to_string(ell.constants.eps[2])
       << '\n';
    os << "  mu by k mod 4:  " << rat_to_string(ell.constants.mu[0]) << ' '
       << rat_to_string(ell.constants.mu[1]) << ' ' << rat_to_string(ell.constants.mu[2]) << ' '
       << rat_to_string(ell.constants.mu[3]) << '\n';
    os << "  odd-weight mu direction unused: " << (ell.mu_odd_coefficient_zero ? "yes" : "NO")
       << '\n';
    const auto& shipped = EllipticConstants::shipped();
    if (ell.constants.eps != shipped.eps || ell.constants.mu != shipped.mu)
        throw std::runtime_error("fitted elliptic constants drifted from the shipped ones");

    if (is_prime(p) && p % 4 == 3 && p != 3) {
        auto dp = derive_dpart(p);
        os << "d-part entries for disc " << disc << " (" << dp.equations_verified
           << " equations, residuals all zero)\n";
        auto show = [&](const char* name, const TypeInvariants& t) {
            os << "  " << name << ": " << rat_to_string(t.i1) << ' ' << rat_to_string(t.i2)
               << ' ' << rat_to_string(t.i3) << ' ' << rat_to_string(t.i4) << ' '
               << rat_to_string(t.i5) << '\n';
        };
        show("d=1  ", TypeInvariants{1, 1, 1, 1, 1});
        show("d=p  ", dp.tau_p);
        show("d=p^2", dp.tau_p2);

        auto sc = derive_sc_constants(p);
        os << "sc constants for p=" << p << " (minimal integral solution, "
           << sc.cells_checked << " weights): sc3=" << rat_to_string(sc.constants.sc3)
           << " sc4=" << rat_to_string(sc.constants.sc4) << " [fitted, not transcribed]\n";

        if (field.class_number == 1) {
            auto p2 = derive_p2_assembly(p);
            os << "level-p^2 assembly verified against the oracle (" << p2.equations_verified
               << " equations, both parities)\n";
        } else {
            os << "level-p^2 assembly skipped (needs class number 1; h = "
               << field.class_number << ")\n";
        }
    } else {
        os << "no ramified-level tables for disc " << disc
           << " (need disc = -p, p = 3 mod 4, p > 3)\n";
    }
    os << "all shipped tables reproduced exactly\n";
    return os.str();
}

} // namespace bianchi

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bianchi/nongenuine.hpp"

namespace bianchi {

/// An integral ideal in Hermite-normal-form triple notation [a, b, c]:
/// the module (a/c)Z + (b + c*omega)Z, of norm a.
struct Level {
    Int a, b, c;

    Int norm() const { return a; }
    bool is_rational() const { return b == 0 && a == c * c; }
    Int rational_generator() const { return c; }

    auto operator<=>(const Level&) const = default;
};

/// Structural validation only (shape constraints); throws MalformedHnf.
Level parse_level(const Int& a, const Int& b, const Int& c);

/// Is the triple an actual ideal of the ring of integers of Q(sqrt(disc))?
/// disc must be odd (= 1 mod 4); the containing-order congruence is checked.
bool level_is_ideal(const Level& level, const Int& disc);

/// Stability under the nontrivial automorphism, decided from the triple.
bool level_is_galois_stable(const Level& level, const Int& disc);

/// One ingested row of externally computed full newform dimensions.
struct FullDimRow {
    Int disc;
    Level level;
    int weight;
    Int dim_new;
};

std::vector<FullDimRow> ingest(std::istream& in);
std::vector<FullDimRow> ingest_file(const std::string& path);

struct ReportRow {
    FullDimRow input;
    std::optional<DimBreakdown> parts;  // absent when ng was not computable
    std::optional<Int> genuine;
    std::string status;                 // "ok" or an explanation
    bool errored = false;               // a computation threw
};

struct ReportOptions {
    const ScConstants* sc = nullptr;               // per-field override
    P2Multiplicities mult = P2Multiplicities::shipped();
};

/// Subtract computed non-genuine dimensions from ingested full dimensions.
/// Rows are processed independently; computation errors are captured per row.
/// A negative genuine value aborts the run (it signals a wrong ng or corrupt
/// input). Output ordering: disc ascending, norm ascending, weight ascending.
std::vector<ReportRow> genuine_report(const std::vector<FullDimRow>& dataset,
                                      const DPartProvider& provider,
                                      const ReportOptions& opts = {});

enum class ReportFormat { Csv, Text };

std::string emit(const std::vector<ReportRow>& table, ReportFormat format);

} // namespace bianchi

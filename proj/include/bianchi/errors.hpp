#pragma once

#include <stdexcept>
#include <string>

namespace bianchi {

/// A stated hypothesis of a theorem does not hold for the given input.
struct PreconditionViolated : std::invalid_argument {
    explicit PreconditionViolated(const std::string& hypothesis)
        : std::invalid_argument("precondition violated: " + hypothesis) {}
};

/// The exact rational value of a dimension formula failed to be an integer.
/// Always indicates a parameter or table misuse upstream, never rounded over.
struct FormulaNonIntegral : std::logic_error {
    explicit FormulaNonIntegral(const std::string& what)
        : std::logic_error("non-integral formula value: " + what) {}
};

/// Integral but negative dimension value.
struct FormulaNegative : std::logic_error {
    explicit FormulaNegative(const std::string& what)
        : std::logic_error("negative formula value: " + what) {}
};

/// The discriminant-part table has no entry for the requested (disc, d).
struct MissingDPart : std::out_of_range {
    explicit MissingDPart(const std::string& what)
        : std::out_of_range("no discriminant-part entry: " + what) {}
};

/// The supercuspidal trace constants are unavailable for the requested prime.
struct MissingScConstants : std::out_of_range {
    explicit MissingScConstants(const std::string& what)
        : std::out_of_range("no supercuspidal constants: " + what) {}
};

struct MalformedHnf : std::invalid_argument {
    explicit MalformedHnf(const std::string& what)
        : std::invalid_argument("malformed HNF triple: " + what) {}
};

struct ParseError : std::runtime_error {
    long row;
    ParseError(long row_, const std::string& what)
        : std::runtime_error("parse error at row " + std::to_string(row_) + ": " + what), row(row_) {}
};

struct DuplicateKey : std::runtime_error {
    explicit DuplicateKey(const std::string& what)
        : std::runtime_error("duplicate key: " + what) {}
};

} // namespace bianchi

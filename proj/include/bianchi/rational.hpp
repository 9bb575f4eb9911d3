#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace bianchi {

// expression templates off: plain value semantics for ints and rationals
using Int = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                          boost::multiprecision::et_off>;
using Rat = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                          boost::multiprecision::et_off>;

inline bool is_integer(const Rat& r) { return denominator(r) == 1; }

/// Narrow an exact rational to an integer; throws std::domain_error otherwise.
inline Int to_int(const Rat& r) {
    if (!is_integer(r)) throw std::domain_error("rational is not an integer: " + r.str());
    return numerator(r);
}

/// Parse "a" or "a/b" into an exact rational.
inline Rat rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    return Rat(num, den);
}

inline std::string rat_to_string(const Rat& r) {
    if (is_integer(r)) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

} // namespace bianchi

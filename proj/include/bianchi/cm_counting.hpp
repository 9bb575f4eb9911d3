#pragma once

#include "bianchi/arith.hpp"

namespace bianchi {

/// Local data for counting CM newforms that base-change to Eisenstein series.
struct CmLocalInput {
    Int p;
    int t;  // exponent of p in Nd
    SplittingType splitting;
};

/// Number of compatible local character choices at one prime. Weight-free.
Int cm_local_count(const CmLocalInput& input);

struct CmCorrection {
    Int count;
    bool verified;  // false when a p = 2 local factor with t >= 1 was used
};

/// Product of cm_local_count over p^t || Nd, with the divisibility pre-filter:
/// every prime of the field discriminant must divide d, else no compatible
/// character conductor exists and the count is 0.
CmCorrection dim_cm_correction_full(const QuadField& field, const Int& n, const Int& d);

/// Count only (the common case).
Int dim_cm_correction(const QuadField& field, const Int& n, const Int& d);

/// Test oracle: the product formula agrees with its two-case square-free
/// specialization (1 if N = 1 and rad(D_K) | d, else 0).
bool verify_squarefree_specialization(const QuadField& field, const Int& n, const Int& d);

} // namespace bianchi

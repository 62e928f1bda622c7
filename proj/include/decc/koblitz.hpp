#pragma once

#include <cstdint>

#include "decc/curve.hpp"

namespace decc {

// Integer-to-point embedding: x = m*K + j for the smallest j in [0, K) whose
// curve RHS is a quadratic residue; y is the smaller square root, so the
// embedding is deterministic. decode recovers m = floor(x / K).
struct KoblitzParams {
    uint32_t K = 256;
    Int max_message;  // largest embeddable integer: floor((p-1)/K) - 1
};

// Usage error if K < 2 or the curve leaves no room for messages.
KoblitzParams koblitz_params(uint32_t K, const CurveParams& c);

Point encode_to_point(const Int& m, const CurveParams& c,
                      const KoblitzParams& kp);
Int decode_from_point(const Point& P, const KoblitzParams& kp);

}  // namespace decc

#include "decc/koblitz.hpp"

#include "decc/errors.hpp"
#include "decc/field.hpp"

namespace decc {

KoblitzParams koblitz_params(uint32_t K, const CurveParams& c) {
    if (K < 2) fail(ErrorKind::Usage, "Koblitz multiplier K must be >= 2");
    Int max_message = (c.p - 1) / K - 1;
    if (max_message < 1)
        fail(ErrorKind::Usage, "curve too small for Koblitz multiplier K");
    return KoblitzParams{K, std::move(max_message)};
}

Point encode_to_point(const Int& m, const CurveParams& c,
                      const KoblitzParams& kp) {
    if (m < 0 || m > kp.max_message)
        fail(ErrorKind::Range, "message integer outside embeddable range");

    Int x = m * kp.K;
    for (uint32_t j = 0; j < kp.K; ++j, ++x) {
        Int rhs = mod_reduce(x * x % c.p * x + c.a * x + c.b, c.p);
        if (auto roots = mod_sqrt(rhs, c.p))
            return Point::affine(x, roots->first);
    }
    fail(ErrorKind::Embedding,
         "no embeddable x in [mK, (m+1)K); probability ~2^-K event");
}

Int decode_from_point(const Point& P, const KoblitzParams& kp) {
    if (P.infinity)
        fail(ErrorKind::Validation, "cannot decode the point at infinity");
    return P.x / kp.K;
}

}  // namespace decc

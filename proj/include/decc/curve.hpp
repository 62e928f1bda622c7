#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "decc/bigint.hpp"

namespace decc {

// Affine point on a short-Weierstrass curve, or the point at infinity
// (the group identity).
struct Point {
    bool infinity = true;
    Int x{};
    Int y{};

    static Point at_infinity() { return {}; }
    static Point affine(Int px, Int py) {
        return {false, std::move(px), std::move(py)};
    }

    bool operator==(const Point& o) const {
        if (infinity != o.infinity) return false;
        return infinity || (x == o.x && y == o.y);
    }
};

// Prime-field domain parameters: y^2 = x^3 + ax + b over F_p, base point G
// of prime order n, cofactor h.
struct CurveParams {
    Int p;
    Int a;
    Int b;
    Point G;
    Int n;
    unsigned long h = 1;
    std::string curve_id;

    // Checks every domain invariant (p odd prime > 3, non-singular curve,
    // G on curve, n prime with n*G = infinity). Throws Validation/Usage.
    void validate() const;

    size_t coord_width() const;  // bytes per serialized coordinate
};

CurveParams parse_curve_text(std::istream& in);
CurveParams load_curve_file(const std::filesystem::path& path);

bool validate_point(const Point& P, const CurveParams& c);

Point point_neg(const Point& P, const CurveParams& c);

// Affine chord-and-tangent group law, one modular inversion per addition.
// Off-curve inputs raise a Validation error.
Point point_add(const Point& P, const Point& Q, const CurveParams& c);

// k * P by double-and-add, k >= 0. scalar_mul(0, P) is infinity.
Point scalar_mul(const Int& k, const Point& P, const CurveParams& c);

// Wire encoding shared by key files and ciphertexts: a single 0x00 byte for
// infinity, else 0x04 || x || y with fixed coord_width() coordinates.
Bytes point_to_bytes(const Point& P, const CurveParams& c);

}  // namespace decc

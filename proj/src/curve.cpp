#include "decc/curve.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "decc/detail/curve_ctx.hpp"
#include "decc/errors.hpp"
#include "decc/field.hpp"

namespace decc {

namespace {

void require_on_curve(const Point& P, const CurveParams& c, const char* role) {
    if (!validate_point(P, c))
        fail(ErrorKind::Validation,
             std::string(role) + " is not a point on curve " + c.curve_id);
}

}  // namespace

void CurveParams::validate() const {
    if (p <= 3 || mpz_even_p(p.get_mpz_t()) || !is_probable_prime(p))
        fail(ErrorKind::Validation, "p must be an odd prime > 3");
    if (a < 0 || a >= p || b < 0 || b >= p)
        fail(ErrorKind::Validation, "curve coefficients must lie in [0, p)");
    if (mod_reduce(4 * a * a * a + 27 * b * b, p) == 0)
        fail(ErrorKind::Validation, "curve is singular (4a^3 + 27b^2 = 0)");
    if (curve_id.empty() || curve_id.size() > 64)
        fail(ErrorKind::Validation, "curve_id must be 1..64 characters");
    for (char ch : curve_id)
        if (!std::isgraph(static_cast<unsigned char>(ch)))
            fail(ErrorKind::Validation, "curve_id must be printable ASCII");
    if (G.infinity || !validate_point(G, *this))
        fail(ErrorKind::Validation, "base point G is not on the curve");
    if (n <= 1 || !is_probable_prime(n))
        fail(ErrorKind::Validation, "group order n must be prime");
    if (h < 1) fail(ErrorKind::Validation, "cofactor must be positive");
    detail::CurveCtx ctx(*this);
    if (!ctx.scalar_mul(n, G).infinity)
        fail(ErrorKind::Validation, "n * G is not the point at infinity");
}

size_t CurveParams::coord_width() const { return (bit_length(p) + 7) / 8; }

bool validate_point(const Point& P, const CurveParams& c) {
    if (P.infinity) return true;
    if (P.x < 0 || P.x >= c.p || P.y < 0 || P.y >= c.p) return false;
    Int lhs = P.y * P.y % c.p;
    Int rhs = mod_reduce(P.x * P.x % c.p * P.x + c.a * P.x + c.b, c.p);
    return lhs == rhs;
}

Point point_neg(const Point& P, const CurveParams& c) {
    if (P.infinity) return P;
    return Point::affine(P.x, mod_reduce(-P.y, c.p));
}

Point point_add(const Point& P, const Point& Q, const CurveParams& c) {
    require_on_curve(P, c, "left operand");
    require_on_curve(Q, c, "right operand");
    if (P.infinity) return Q;
    if (Q.infinity) return P;

    const Int& p = c.p;
    Int slope;
    if (P.x == Q.x) {
        if (mod_reduce(P.y + Q.y, p) == 0) return Point::at_infinity();
        // tangent at P (doubling)
        slope = (3 * P.x * P.x + c.a) % p * mod_inv(2 * P.y % p, p) % p;
    } else {
        slope = mod_reduce(Q.y - P.y, p) * mod_inv(mod_reduce(Q.x - P.x, p), p) % p;
    }
    Int x3 = mod_reduce(slope * slope - P.x - Q.x, p);
    Int y3 = mod_reduce(slope * (P.x - x3) - P.y, p);
    return Point::affine(std::move(x3), std::move(y3));
}

Point scalar_mul(const Int& k, const Point& P, const CurveParams& c) {
    if (k < 0) fail(ErrorKind::Usage, "scalar must be non-negative");
    require_on_curve(P, c, "scalar multiplication input");
    detail::CurveCtx ctx(c);
    return ctx.scalar_mul(k, P);
}

Bytes point_to_bytes(const Point& P, const CurveParams& c) {
    if (P.infinity) return Bytes{0x00};
    size_t w = c.coord_width();
    Bytes out;
    out.reserve(1 + 2 * w);
    out.push_back(0x04);
    Bytes x = int_to_bytes_be(P.x, w);
    Bytes y = int_to_bytes_be(P.y, w);
    out.insert(out.end(), x.begin(), x.end());
    out.insert(out.end(), y.begin(), y.end());
    return out;
}

namespace {

unsigned long small_ulong(const Int& v, const char* what) {
    if (v < 1 || !v.fits_ulong_p() || v.get_ui() > (1ul << 31))
        fail(ErrorKind::Parse, std::string(what) + " out of range");
    return v.get_ui();
}

}  // namespace

CurveParams parse_curve_text(std::istream& in) {
    std::map<std::string, std::string> kv;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            fail(ErrorKind::Parse,
                 "curve file line " + std::to_string(lineno) + ": expected 'key = value'");
        auto trim = [](std::string s) {
            size_t b = s.find_first_not_of(" \t\r");
            size_t e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            fail(ErrorKind::Parse,
                 "curve file line " + std::to_string(lineno) + ": empty key or value");
        if (kv.count(key))
            fail(ErrorKind::Parse,
                 "curve file line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        kv[key] = value;
    }

    static const char* required[] = {"curve_id", "p", "a", "b", "Gx", "Gy", "n", "h"};
    for (const char* key : required)
        if (!kv.count(key))
            fail(ErrorKind::Parse, std::string("curve file: missing key '") + key + "'");
    for (const auto& [key, _] : kv) {
        bool known = false;
        for (const char* r : required) known = known || key == r;
        if (!known)
            fail(ErrorKind::Parse, "curve file: unknown key '" + key + "'");
    }

    CurveParams c;
    try {
        c.curve_id = kv["curve_id"];
        c.p = int_from_hex(kv["p"]);
        c.a = int_from_hex(kv["a"]);
        c.b = int_from_hex(kv["b"]);
        c.G = Point::affine(int_from_hex(kv["Gx"]), int_from_hex(kv["Gy"]));
        c.n = int_from_hex(kv["n"]);
        c.h = small_ulong(int_from_hex(kv["h"]), "cofactor h");
    } catch (const Error& e) {
        throw Error(ErrorKind::Parse, std::string("curve file: ") + e.what());
    }
    try {
        c.validate();
    } catch (const Error& e) {
        throw Error(ErrorKind::Parse,
                    std::string("curve file: invalid parameters: ") + e.what());
    }
    return c;
}

CurveParams load_curve_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        fail(ErrorKind::Parse, "cannot open curve file: " + path.string());
    return parse_curve_text(in);
}

}  // namespace decc

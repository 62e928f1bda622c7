#pragma once

#include <filesystem>

#include "decc/curve.hpp"
#include "decc/rng.hpp"

namespace decc {

struct KeyPair {
    Int d;      // private scalar in [1, n-1]
    Point pub;  // d * G
};

struct PointCiphertext {
    Point c1;  // k * G
    Point c2;  // P_m + k * pub
};

KeyPair keygen(const CurveParams& c, RandomSource& rng);

// Fresh k in [1, n-1] per call; k = 0 never happens by construction (it
// would leak P_m).
PointCiphertext encrypt_point(const Point& pm, const Point& pub,
                              const CurveParams& c, RandomSource& rng);

// P_m = C2 - d*C1. C1 at infinity is structurally tolerated (k = 0
// degenerate) and simply returns C2.
Point decrypt_point(const PointCiphertext& ct, const Int& d,
                    const CurveParams& c);

// ---- key files ----
// Private: "curve_id = <id>" and "d = <hex>" lines; written with 0600 perms.
// Public: "curve_id = <id>" and "pub = 04<x><y>" (fixed-width hex coords).

struct PrivateKey {
    std::string curve_id;
    Int d;
};

struct PublicKey {
    std::string curve_id;
    Point point;
};

void save_private_key(const std::filesystem::path& path, const PrivateKey& key,
                      bool overwrite);
PrivateKey load_private_key(const std::filesystem::path& path);

void save_public_key(const std::filesystem::path& path, const PublicKey& key,
                     const CurveParams& c, bool overwrite);
PublicKey load_public_key(const std::filesystem::path& path,
                          const CurveParams& c);

}  // namespace decc

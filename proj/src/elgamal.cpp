#include "decc/elgamal.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "decc/errors.hpp"

namespace decc {

KeyPair keygen(const CurveParams& c, RandomSource& rng) {
    Int d = rng.random_scalar(c.n);
    Point pub = scalar_mul(d, c.G, c);
    return KeyPair{std::move(d), std::move(pub)};
}

PointCiphertext encrypt_point(const Point& pm, const Point& pub,
                              const CurveParams& c, RandomSource& rng) {
    if (!validate_point(pm, c))
        fail(ErrorKind::Validation, "plaintext point is not on the curve");
    if (!validate_point(pub, c))
        fail(ErrorKind::Validation, "public point is not on the curve");
    Int k = rng.random_scalar(c.n);
    Point c1 = scalar_mul(k, c.G, c);
    Point c2 = point_add(pm, scalar_mul(k, pub, c), c);
    return PointCiphertext{std::move(c1), std::move(c2)};
}

Point decrypt_point(const PointCiphertext& ct, const Int& d,
                    const CurveParams& c) {
    if (!validate_point(ct.c1, c) || !validate_point(ct.c2, c))
        fail(ErrorKind::Validation, "ciphertext point is not on the curve");
    Point shared = scalar_mul(d, ct.c1, c);
    return point_add(ct.c2, point_neg(shared, c), c);
}

namespace {

std::map<std::string, std::string> parse_key_file(
    const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::Key, "cannot open key file: " + path.string());
    std::map<std::string, std::string> kv;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            fail(ErrorKind::Key, path.string() + " line " +
                                     std::to_string(lineno) +
                                     ": expected 'key = value'");
        auto trim = [](std::string s) {
            size_t b = s.find_first_not_of(" \t\r");
            size_t e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string()
                                          : s.substr(b, e - b + 1);
        };
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

void check_writable(const std::filesystem::path& path, bool overwrite) {
    if (!overwrite && std::filesystem::exists(path))
        fail(ErrorKind::Usage,
             path.string() + " already exists (use --force to overwrite)");
}

}  // namespace

void save_private_key(const std::filesystem::path& path, const PrivateKey& key,
                      bool overwrite) {
    check_writable(path, overwrite);
    if (key.d < 1) fail(ErrorKind::Key, "private scalar must be >= 1");
    {
        std::ofstream out(path, std::ios::trunc);
        if (!out)
            fail(ErrorKind::Key, "cannot write key file: " + path.string());
        out << "curve_id = " << key.curve_id << "\n";
        out << "d = " << int_to_hex(key.d) << "\n";
    }
    std::filesystem::permissions(path,
                                 std::filesystem::perms::owner_read |
                                     std::filesystem::perms::owner_write,
                                 std::filesystem::perm_options::replace);
}

PrivateKey load_private_key(const std::filesystem::path& path) {
    auto kv = parse_key_file(path);
    if (!kv.count("curve_id") || !kv.count("d"))
        fail(ErrorKind::Key,
             path.string() + ": private key needs curve_id and d");
    PrivateKey key;
    key.curve_id = kv["curve_id"];
    try {
        key.d = int_from_hex(kv["d"]);
    } catch (const Error& e) {
        throw Error(ErrorKind::Key, path.string() + ": bad scalar: " + e.what());
    }
    if (key.d < 1)
        fail(ErrorKind::Key, path.string() + ": private scalar must be >= 1");
    return key;
}

void save_public_key(const std::filesystem::path& path, const PublicKey& key,
                     const CurveParams& c, bool overwrite) {
    check_writable(path, overwrite);
    if (key.point.infinity)
        fail(ErrorKind::Key, "public key cannot be the point at infinity");
    std::ofstream out(path, std::ios::trunc);
    if (!out) fail(ErrorKind::Key, "cannot write key file: " + path.string());
    out << "curve_id = " << key.curve_id << "\n";
    out << "pub = " << to_hex(point_to_bytes(key.point, c)) << "\n";
}

PublicKey load_public_key(const std::filesystem::path& path,
                          const CurveParams& c) {
    auto kv = parse_key_file(path);
    if (!kv.count("curve_id") || !kv.count("pub"))
        fail(ErrorKind::Key,
             path.string() + ": public key needs curve_id and pub");
    PublicKey key;
    key.curve_id = kv["curve_id"];
    if (key.curve_id != c.curve_id)
        fail(ErrorKind::Key, path.string() + ": key is for curve '" +
                                 key.curve_id + "', not '" + c.curve_id + "'");

    Bytes raw;
    try {
        raw = from_hex(kv["pub"]);
    } catch (const Error& e) {
        throw Error(ErrorKind::Key, path.string() + ": bad point: " + e.what());
    }
    size_t w = c.coord_width();
    if (raw.size() != 1 + 2 * w || raw[0] != 0x04)
        fail(ErrorKind::Key,
             path.string() + ": expected uncompressed point (04 || x || y)");
    key.point = Point::affine(
        int_from_bytes_be(std::span(raw).subspan(1, w)),
        int_from_bytes_be(std::span(raw).subspan(1 + w, w)));
    if (!validate_point(key.point, c))
        fail(ErrorKind::Key,
             path.string() + ": point is not on curve " + c.curve_id);
    return key;
}

}  // namespace decc

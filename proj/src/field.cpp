#include "decc/field.hpp"

#include "decc/errors.hpp"

namespace decc {

Int mod_reduce(const Int& v, const Int& p) {
    Int r;
    mpz_mod(r.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
    return r;
}

Int mod_inv(const Int& v, const Int& p) {
    Int r;
    if (mpz_invert(r.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t()) == 0)
        fail(ErrorKind::DivByZero, "no inverse modulo p");
    return r;
}

Int mod_pow(const Int& base, const Int& e, const Int& p) {
    if (e < 0) fail(ErrorKind::Usage, "negative exponent");
    Int r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    return r;
}

bool is_probable_prime(const Int& v) {
    return mpz_probab_prime_p(v.get_mpz_t(), 30) != 0;
}

namespace {

// Tonelli-Shanks for odd prime p with p = 1 (mod 4). Returns one root of v.
Int tonelli_shanks(const Int& v, const Int& p) {
    // p - 1 = q * 2^s with q odd
    Int q = p - 1;
    unsigned long s = mpz_scan1(q.get_mpz_t(), 0);
    q >>= s;

    // any quadratic non-residue works as the iteration seed
    Int z = 2;
    while (mod_pow(z, (p - 1) / 2, p) != p - 1) ++z;

    unsigned long m = s;
    Int c = mod_pow(z, q, p);
    Int t = mod_pow(v, q, p);
    Int r = mod_pow(v, (q + 1) / 2, p);

    while (t != 1) {
        Int t2 = t;
        unsigned long i = 0;
        while (t2 != 1) {
            t2 = t2 * t2 % p;
            ++i;
        }
        Int b = mod_pow(c, Int(1) << (m - i - 1), p);
        m = i;
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    return r;
}

}  // namespace

std::optional<std::pair<Int, Int>> mod_sqrt(const Int& v, const Int& p) {
    Int x = mod_reduce(v, p);
    if (x == 0) return std::make_pair(Int(0), Int(0));

    // Legendre symbol, the value the Euler criterion computes
    if (mpz_jacobi(x.get_mpz_t(), p.get_mpz_t()) != 1) return std::nullopt;

    Int root;
    if (p % 4 == 3)
        root = mod_pow(x, (p + 1) / 4, p);
    else
        root = tonelli_shanks(x, p);

    Int other = p - root;
    if (root > other) std::swap(root, other);
    return std::make_pair(root, other);
}

PrimeField::PrimeField(Int p) {
    if (p <= 3 || mpz_even_p(p.get_mpz_t()) || !is_probable_prime(p))
        fail(ErrorKind::Usage, "field modulus must be an odd prime > 3");
    p_ = std::make_shared<const Int>(std::move(p));
}

FieldElement PrimeField::element(Int v) const {
    return FieldElement{mod_reduce(v, *p_), p_};
}

namespace {

const Int& common_modulus(const FieldElement& x, const FieldElement& y) {
    if (x.modulus != y.modulus && *x.modulus != *y.modulus)
        fail(ErrorKind::Usage, "field elements have different moduli");
    return *x.modulus;
}

}  // namespace

FieldElement fe_add(const FieldElement& x, const FieldElement& y) {
    const Int& p = common_modulus(x, y);
    return {mod_reduce(x.value + y.value, p), x.modulus};
}

FieldElement fe_sub(const FieldElement& x, const FieldElement& y) {
    const Int& p = common_modulus(x, y);
    return {mod_reduce(x.value - y.value, p), x.modulus};
}

FieldElement fe_mul(const FieldElement& x, const FieldElement& y) {
    const Int& p = common_modulus(x, y);
    return {mod_reduce(x.value * y.value, p), x.modulus};
}

FieldElement fe_neg(const FieldElement& x) {
    return {mod_reduce(-x.value, *x.modulus), x.modulus};
}

FieldElement fe_inv(const FieldElement& x) {
    return {mod_inv(x.value, *x.modulus), x.modulus};
}

FieldElement fe_pow(const FieldElement& x, const Int& e) {
    return {mod_pow(x.value, e, *x.modulus), x.modulus};
}

std::optional<std::pair<FieldElement, FieldElement>> fe_sqrt(
    const FieldElement& x) {
    auto roots = mod_sqrt(x.value, *x.modulus);
    if (!roots) return std::nullopt;
    return std::make_pair(FieldElement{std::move(roots->first), x.modulus},
                          FieldElement{std::move(roots->second), x.modulus});
}

}  // namespace decc

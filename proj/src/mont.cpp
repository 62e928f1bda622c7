#include "decc/detail/mont.hpp"

#include <cstring>

#include "decc/errors.hpp"

static_assert(GMP_NAIL_BITS == 0, "nail-free GMP limbs required");

namespace decc::detail {

void mpz_to_limbs(mp_limb_t* out, const mpz_class& v, size_t L) {
    size_t n = mpz_size(v.get_mpz_t());
    const mp_limb_t* src = mpz_limbs_read(v.get_mpz_t());
    for (size_t i = 0; i < L; ++i) out[i] = i < n ? src[i] : 0;
}

mpz_class limbs_to_mpz(const mp_limb_t* a, size_t L) {
    mpz_class r;
    mpz_import(r.get_mpz_t(), L, -1, sizeof(mp_limb_t), 0, 0, a);
    return r;
}

namespace {

// Inverse of an odd limb modulo 2^GMP_NUMB_BITS by Hensel lifting.
mp_limb_t invert_limb(mp_limb_t p0) {
    mp_limb_t x = p0;  // correct mod 2^3
    for (int i = 0; i < 6; ++i) x *= 2 - p0 * x;
    return x;
}

}  // namespace

MontCtx::MontCtx(const mpz_class& p) : p_mpz_(p) {
    if (p < 3 || mpz_even_p(p.get_mpz_t()))
        fail(ErrorKind::Usage, "Montgomery modulus must be odd and >= 3");
    L_ = mpz_size(p.get_mpz_t());
    p_.resize(L_);
    mpz_to_limbs(p_.data(), p, L_);
    n0_ = -invert_limb(p_[0]);

    mpz_class R = mpz_class(1) << (GMP_NUMB_BITS * L_);
    mpz_class r1 = R % p;
    mpz_class r2 = (r1 * r1) % p;
    one_.resize(L_);
    r2_.resize(L_);
    mpz_to_limbs(one_.data(), r1, L_);
    mpz_to_limbs(r2_.data(), r2, L_);
}

void MontCtx::add(mp_limb_t* r, const mp_limb_t* a, const mp_limb_t* b) const {
    mp_limb_t carry = mpn_add_n(r, a, b, L_);
    if (carry || mpn_cmp(r, p_.data(), L_) >= 0)
        mpn_sub_n(r, r, p_.data(), L_);
}

void MontCtx::sub(mp_limb_t* r, const mp_limb_t* a, const mp_limb_t* b) const {
    mp_limb_t borrow = mpn_sub_n(r, a, b, L_);
    if (borrow) mpn_add_n(r, r, p_.data(), L_);
}

void MontCtx::neg(mp_limb_t* r, const mp_limb_t* a) const {
    if (is_zero(a)) {
        set_zero(r);
        return;
    }
    mpn_sub_n(r, p_.data(), a, L_);
}

void MontCtx::redc(mp_limb_t* r, mp_limb_t* t) const {
    mp_limb_t extra = 0;
    for (size_t i = 0; i < L_; ++i) {
        mp_limb_t q = t[i] * n0_;
        mp_limb_t carry = mpn_addmul_1(t + i, p_.data(), L_, q);
        extra += mpn_add_1(t + L_ + i, t + L_ + i, L_ - i, carry);
    }
    // value/R < 2p, so one conditional subtraction settles it
    if (extra || mpn_cmp(t + L_, p_.data(), L_) >= 0)
        mpn_sub_n(r, t + L_, p_.data(), L_);
    else
        mpn_copyi(r, t + L_, L_);
}

void MontCtx::mul(mp_limb_t* r, const mp_limb_t* a, const mp_limb_t* b,
                  mp_limb_t* scratch) const {
    mpn_mul_n(scratch, a, b, L_);
    redc(r, scratch);
}

void MontCtx::sqr(mp_limb_t* r, const mp_limb_t* a,
                  mp_limb_t* scratch) const {
    mpn_sqr(scratch, a, L_);
    redc(r, scratch);
}

void MontCtx::to_mont(mp_limb_t* r, const mpz_class& v,
                      mp_limb_t* scratch) const {
    std::vector<mp_limb_t> tmp(L_);
    mpz_class reduced = v % p_mpz_;
    if (reduced < 0) reduced += p_mpz_;
    mpz_to_limbs(tmp.data(), reduced, L_);
    mul(r, tmp.data(), r2_.data(), scratch);
}

mpz_class MontCtx::from_mont(const mp_limb_t* a, mp_limb_t* scratch) const {
    std::memset(scratch, 0, 2 * L_ * sizeof(mp_limb_t));
    std::memcpy(scratch, a, L_ * sizeof(mp_limb_t));
    std::vector<mp_limb_t> out(L_);
    redc(out.data(), scratch);
    return limbs_to_mpz(out.data(), L_);
}

void MontCtx::set_one(mp_limb_t* r) const { copy(r, one_.data()); }

void MontCtx::set_zero(mp_limb_t* r) const {
    std::memset(r, 0, L_ * sizeof(mp_limb_t));
}

void MontCtx::copy(mp_limb_t* r, const mp_limb_t* a) const {
    if (r != a) std::memcpy(r, a, L_ * sizeof(mp_limb_t));
}

bool MontCtx::is_zero(const mp_limb_t* a) const {
    for (size_t i = 0; i < L_; ++i)
        if (a[i]) return false;
    return true;
}

bool MontCtx::equal(const mp_limb_t* a, const mp_limb_t* b) const {
    return mpn_cmp(a, b, L_) == 0;
}

}  // namespace decc::detail

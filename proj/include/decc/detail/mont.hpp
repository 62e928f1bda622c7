#pragma once

#include <gmp.h>
#include <gmpxx.h>

#include <cstddef>
#include <vector>

namespace decc::detail {

// Montgomery arithmetic over an odd modulus. The limb count is fixed by the
// modulus at construction, so any odd p works regardless of size. Residues
// live in limbs() limbs, Montgomery form, value in [0, p).
//
// All methods are const and take caller-owned scratch where needed, so a
// single context is safe to share across threads.
class MontCtx {
public:
    explicit MontCtx(const mpz_class& p);  // Usage error unless p odd and >= 3

    size_t limbs() const { return L_; }
    size_t scratch_limbs() const { return 2 * L_ + 1; }
    const mpz_class& modulus() const { return p_mpz_; }

    void add(mp_limb_t* r, const mp_limb_t* a, const mp_limb_t* b) const;
    void sub(mp_limb_t* r, const mp_limb_t* a, const mp_limb_t* b) const;
    void dbl(mp_limb_t* r, const mp_limb_t* a) const { add(r, a, a); }
    void neg(mp_limb_t* r, const mp_limb_t* a) const;

    // scratch: at least scratch_limbs() limbs
    void mul(mp_limb_t* r, const mp_limb_t* a, const mp_limb_t* b,
             mp_limb_t* scratch) const;
    void sqr(mp_limb_t* r, const mp_limb_t* a, mp_limb_t* scratch) const;

    void to_mont(mp_limb_t* r, const mpz_class& v, mp_limb_t* scratch) const;
    mpz_class from_mont(const mp_limb_t* a, mp_limb_t* scratch) const;

    void set_one(mp_limb_t* r) const;  // Montgomery image of 1
    void set_zero(mp_limb_t* r) const;
    void copy(mp_limb_t* r, const mp_limb_t* a) const;
    bool is_zero(const mp_limb_t* a) const;
    bool equal(const mp_limb_t* a, const mp_limb_t* b) const;

private:
    void redc(mp_limb_t* r, mp_limb_t* t) const;  // t: 2L limbs, clobbered

    size_t L_;
    mpz_class p_mpz_;
    std::vector<mp_limb_t> p_;
    std::vector<mp_limb_t> r2_;   // R^2 mod p
    std::vector<mp_limb_t> one_;  // R mod p
    mp_limb_t n0_;                // -p^{-1} mod 2^GMP_NUMB_BITS
};

// Copies v (0 <= v, fits in L limbs) into a fixed-width limb array.
void mpz_to_limbs(mp_limb_t* out, const mpz_class& v, size_t L);
mpz_class limbs_to_mpz(const mp_limb_t* a, size_t L);

}  // namespace decc::detail

#pragma once

#include <span>
#include <vector>

#include "decc/curve.hpp"
#include "decc/detail/mont.hpp"

namespace decc::detail {

// Jacobian-coordinate point in Montgomery form; Z == 0 encodes infinity.
struct JacPoint {
    std::vector<mp_limb_t> X, Y, Z;
};

// Scratch arena for the Jacobian formulas: one product buffer plus a set of
// single-width temporaries. One per thread of execution.
struct JacScratch {
    explicit JacScratch(size_t limbs);
    mp_limb_t* prod() { return buf.data(); }
    mp_limb_t* tmp(size_t i) { return buf.data() + 2 * limbs + 1 + i * limbs; }

    size_t limbs;
    std::vector<mp_limb_t> buf;
};

// Precomputed per-curve context for the group-operation hot path: shared,
// immutable, safe for concurrent use.
class CurveCtx {
public:
    explicit CurveCtx(const CurveParams& c);

    const CurveParams& params() const { return curve_; }
    const MontCtx& fp() const { return fp_; }

    JacPoint make_point() const;
    JacScratch make_scratch() const { return JacScratch(fp_.limbs()); }

    // P must be a valid point; no on-curve check here (callers validate).
    void set_affine(JacPoint& out, const Point& P, JacScratch& s) const;
    Point to_affine(const JacPoint& P, JacScratch& s) const;

    void jdbl(JacPoint& r, const JacPoint& P, JacScratch& s) const;
    void jadd(JacPoint& r, const JacPoint& P, const JacPoint& Q,
              JacScratch& s) const;
    // Q affine in Montgomery form (qx, qy), not infinity.
    void jmadd(JacPoint& r, const JacPoint& P, const mp_limb_t* qx,
               const mp_limb_t* qy, JacScratch& s) const;

    // Converts a batch of Jacobian points to affine Montgomery coordinate
    // pairs (one inversion total). Row i of xs/ys is at offset i * limbs;
    // inf[i] marks points at infinity, whose rows are left zeroed.
    void normalize_batch(std::span<const JacPoint> pts, mp_limb_t* xs,
                         mp_limb_t* ys, std::vector<uint8_t>& inf,
                         JacScratch& s) const;

    // Sliding-window double-and-add over the Jacobian machinery; k >= 0.
    Point scalar_mul(const Int& k, const Point& P) const;

private:
    CurveParams curve_;
    MontCtx fp_;
    std::vector<mp_limb_t> a_m_;  // curve a in Montgomery form
    bool a_is_zero_;
};

// Reusable workspace for repeated scalar multiplications: one per thread,
// so the hot path allocates nothing per call.
class ScalarMulEngine {
public:
    explicit ScalarMulEngine(const CurveCtx& ctx);

    Point mul(const Int& k, const Point& P);
    // Result left in Jacobian form for callers that keep computing.
    void mul_jac(const Int& k, const Point& P, JacPoint& out);

    const CurveCtx& ctx() const { return *ctx_; }
    JacScratch& scratch() { return scratch_; }

private:
    const CurveCtx* ctx_;
    JacScratch scratch_;
    std::vector<JacPoint> jtable_;
    std::vector<mp_limb_t> xs_, ys_;
    std::vector<uint8_t> inf_;
    JacPoint twice_;
};

// Fixed-base table: w-bit digits of the scalar select precomputed affine
// multiples d * 2^(w*i) * base, so each multiplication is adds only. The
// window width adapts to how many multiplications the table will serve.
class FixedBaseTable {
public:
    FixedBaseTable(const CurveCtx& ctx, const Point& base,
                   size_t expected_muls);

    Point mul(const Int& k, JacScratch& s) const;  // k in [0, 2^bits(n))
    void mul_jac(const Int& k, JacPoint& out, JacScratch& s) const;

private:
    size_t entry_index(size_t position, unsigned digit) const {
        return (position * ((1u << width_) - 1) + digit - 1) * limbs_;
    }

    const CurveCtx* ctx_;
    unsigned width_ = 2;
    size_t positions_ = 0;
    size_t bits_ = 0;
    size_t limbs_ = 0;
    std::vector<mp_limb_t> xs_, ys_;
    std::vector<uint8_t> inf_;
    bool base_infinity_ = false;
};

}  // namespace decc::detail

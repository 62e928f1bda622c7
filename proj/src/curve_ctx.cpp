#include "decc/detail/curve_ctx.hpp"

#include "decc/errors.hpp"
#include "decc/field.hpp"

namespace decc::detail {

namespace {

constexpr size_t kTempSlots = 12;
constexpr unsigned kSmulWindow = 4;  // sliding-window width in scalar_mul

}  // namespace

JacScratch::JacScratch(size_t limbs_)
    : limbs(limbs_), buf((2 * limbs_ + 1) + kTempSlots * limbs_) {}

CurveCtx::CurveCtx(const CurveParams& c) : curve_(c), fp_(c.p) {
    a_is_zero_ = (c.a == 0);
    a_m_.resize(fp_.limbs());
    JacScratch s(fp_.limbs());
    fp_.to_mont(a_m_.data(), c.a, s.prod());
}

JacPoint CurveCtx::make_point() const {
    size_t L = fp_.limbs();
    return JacPoint{std::vector<mp_limb_t>(L), std::vector<mp_limb_t>(L),
                    std::vector<mp_limb_t>(L)};
}

void CurveCtx::set_affine(JacPoint& out, const Point& P, JacScratch& s) const {
    if (P.infinity) {
        fp_.set_zero(out.X.data());
        fp_.set_one(out.Y.data());
        fp_.set_zero(out.Z.data());
        return;
    }
    fp_.to_mont(out.X.data(), P.x, s.prod());
    fp_.to_mont(out.Y.data(), P.y, s.prod());
    fp_.set_one(out.Z.data());
}

Point CurveCtx::to_affine(const JacPoint& P, JacScratch& s) const {
    if (fp_.is_zero(P.Z.data())) return Point::at_infinity();
    const Int& p = curve_.p;
    Int z = fp_.from_mont(P.Z.data(), s.prod());
    Int zi = mod_inv(z, p);
    Int zi2 = zi * zi % p;
    Int x = fp_.from_mont(P.X.data(), s.prod()) * zi2 % p;
    Int y = fp_.from_mont(P.Y.data(), s.prod()) * zi2 % p * zi % p;
    return Point::affine(std::move(x), std::move(y));
}

void CurveCtx::jdbl(JacPoint& r, const JacPoint& P, JacScratch& s) const {
    const MontCtx& fp = fp_;
    if (fp.is_zero(P.Z.data()) || fp.is_zero(P.Y.data())) {
        fp.set_zero(r.X.data());
        fp.set_one(r.Y.data());
        fp.set_zero(r.Z.data());
        return;
    }
    mp_limb_t* prod = s.prod();
    mp_limb_t* yy = s.tmp(0);
    mp_limb_t* yyyy = s.tmp(1);
    mp_limb_t* sq = s.tmp(2);  // S = 4*X*YY
    mp_limb_t* m = s.tmp(3);
    mp_limb_t* x3 = s.tmp(4);
    mp_limb_t* z3 = s.tmp(5);
    mp_limb_t* t = s.tmp(6);
    mp_limb_t* t2 = s.tmp(7);

    fp.sqr(yy, P.Y.data(), prod);
    fp.sqr(yyyy, yy, prod);
    fp.mul(sq, P.X.data(), yy, prod);
    fp.dbl(sq, sq);
    fp.dbl(sq, sq);

    fp.sqr(m, P.X.data(), prod);
    fp.dbl(t, m);
    fp.add(m, t, m);  // 3*X^2
    if (!a_is_zero_) {
        fp.sqr(t, P.Z.data(), prod);
        fp.sqr(t2, t, prod);
        fp.mul(t, t2, a_m_.data(), prod);
        fp.add(m, m, t);  // + a*Z^4
    }

    fp.mul(z3, P.Y.data(), P.Z.data(), prod);
    fp.dbl(z3, z3);

    fp.sqr(x3, m, prod);
    fp.sub(x3, x3, sq);
    fp.sub(x3, x3, sq);

    fp.sub(sq, sq, x3);
    fp.mul(sq, sq, m, prod);  // M*(S - X3)
    fp.dbl(yyyy, yyyy);
    fp.dbl(yyyy, yyyy);
    fp.dbl(yyyy, yyyy);      // 8*YYYY
    fp.sub(sq, sq, yyyy);    // Y3

    fp.copy(r.X.data(), x3);
    fp.copy(r.Y.data(), sq);
    fp.copy(r.Z.data(), z3);
}

void CurveCtx::jadd(JacPoint& r, const JacPoint& P, const JacPoint& Q,
                    JacScratch& s) const {
    const MontCtx& fp = fp_;
    if (fp.is_zero(P.Z.data())) {
        fp.copy(r.X.data(), Q.X.data());
        fp.copy(r.Y.data(), Q.Y.data());
        fp.copy(r.Z.data(), Q.Z.data());
        return;
    }
    if (fp.is_zero(Q.Z.data())) {
        fp.copy(r.X.data(), P.X.data());
        fp.copy(r.Y.data(), P.Y.data());
        fp.copy(r.Z.data(), P.Z.data());
        return;
    }
    mp_limb_t* prod = s.prod();
    mp_limb_t* z1z1 = s.tmp(0);
    mp_limb_t* z2z2 = s.tmp(1);
    mp_limb_t* u1 = s.tmp(2);
    mp_limb_t* u2 = s.tmp(3);
    mp_limb_t* s1 = s.tmp(4);
    mp_limb_t* s2 = s.tmp(5);
    mp_limb_t* h = s.tmp(6);
    mp_limb_t* rr = s.tmp(7);
    mp_limb_t* hh = s.tmp(8);
    mp_limb_t* hhh = s.tmp(9);
    mp_limb_t* v = s.tmp(10);
    mp_limb_t* t = s.tmp(11);

    fp.sqr(z1z1, P.Z.data(), prod);
    fp.sqr(z2z2, Q.Z.data(), prod);
    fp.mul(u1, P.X.data(), z2z2, prod);
    fp.mul(u2, Q.X.data(), z1z1, prod);
    fp.mul(s1, P.Y.data(), Q.Z.data(), prod);
    fp.mul(s1, s1, z2z2, prod);
    fp.mul(s2, Q.Y.data(), P.Z.data(), prod);
    fp.mul(s2, s2, z1z1, prod);

    fp.sub(h, u2, u1);
    fp.sub(rr, s2, s1);
    if (fp.is_zero(h)) {
        if (fp.is_zero(rr)) {
            jdbl(r, P, s);
        } else {
            fp.set_zero(r.X.data());
            fp.set_one(r.Y.data());
            fp.set_zero(r.Z.data());
        }
        return;
    }

    fp.sqr(hh, h, prod);
    fp.mul(hhh, h, hh, prod);
    fp.mul(v, u1, hh, prod);

    fp.sqr(t, rr, prod);
    fp.sub(t, t, hhh);
    fp.sub(t, t, v);
    fp.sub(t, t, v);  // X3

    fp.sub(v, v, t);
    fp.mul(v, v, rr, prod);
    fp.mul(s1, s1, hhh, prod);
    fp.sub(v, v, s1);  // Y3

    fp.mul(h, h, P.Z.data(), prod);
    fp.mul(h, h, Q.Z.data(), prod);  // Z3

    fp.copy(r.X.data(), t);
    fp.copy(r.Y.data(), v);
    fp.copy(r.Z.data(), h);
}

void CurveCtx::jmadd(JacPoint& r, const JacPoint& P, const mp_limb_t* qx,
                     const mp_limb_t* qy, JacScratch& s) const {
    const MontCtx& fp = fp_;
    if (fp.is_zero(P.Z.data())) {
        fp.copy(r.X.data(), qx);
        fp.copy(r.Y.data(), qy);
        fp.set_one(r.Z.data());
        return;
    }
    mp_limb_t* prod = s.prod();
    mp_limb_t* z1z1 = s.tmp(0);
    mp_limb_t* h = s.tmp(1);
    mp_limb_t* rr = s.tmp(2);
    mp_limb_t* hh = s.tmp(3);
    mp_limb_t* hhh = s.tmp(4);
    mp_limb_t* v = s.tmp(5);
    mp_limb_t* t = s.tmp(6);

    fp.sqr(z1z1, P.Z.data(), prod);
    fp.mul(h, qx, z1z1, prod);  // U2
    fp.sub(h, h, P.X.data());   // H
    fp.mul(rr, qy, P.Z.data(), prod);
    fp.mul(rr, rr, z1z1, prod);  // S2
    fp.sub(rr, rr, P.Y.data());  // R

    if (fp.is_zero(h)) {
        if (fp.is_zero(rr)) {
            jdbl(r, P, s);
        } else {
            fp.set_zero(r.X.data());
            fp.set_one(r.Y.data());
            fp.set_zero(r.Z.data());
        }
        return;
    }

    fp.sqr(hh, h, prod);
    fp.mul(hhh, h, hh, prod);
    fp.mul(v, P.X.data(), hh, prod);

    fp.sqr(t, rr, prod);
    fp.sub(t, t, hhh);
    fp.sub(t, t, v);
    fp.sub(t, t, v);  // X3

    fp.sub(v, v, t);
    fp.mul(v, v, rr, prod);
    fp.mul(hhh, hhh, P.Y.data(), prod);
    fp.sub(v, v, hhh);  // Y3

    fp.mul(h, h, P.Z.data(), prod);  // Z3

    fp.copy(r.X.data(), t);
    fp.copy(r.Y.data(), v);
    fp.copy(r.Z.data(), h);
}

void CurveCtx::normalize_batch(std::span<const JacPoint> pts, mp_limb_t* xs,
                               mp_limb_t* ys, std::vector<uint8_t>& inf,
                               JacScratch& s) const {
    const MontCtx& fp = fp_;
    size_t L = fp.limbs();

    inf.assign(pts.size(), 0);
    std::vector<size_t> idx;
    idx.reserve(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) {
        if (fp.is_zero(pts[i].Z.data()))
            inf[i] = 1;
        else
            idx.push_back(i);
    }
    if (idx.empty()) return;

    // Montgomery's trick, staying in the Montgomery domain: the whole batch
    // costs one standard-domain inversion plus ~5 field muls per point.
    std::vector<mp_limb_t> prefix(idx.size() * L);
    std::vector<mp_limb_t> acc(L), zi(L), zi2(L);
    fp.set_one(acc.data());
    for (size_t j = 0; j < idx.size(); ++j) {
        fp.copy(&prefix[j * L], acc.data());
        fp.mul(acc.data(), acc.data(), pts[idx[j]].Z.data(), s.prod());
    }
    Int inv_all = mod_inv(fp.from_mont(acc.data(), s.prod()), curve_.p);
    fp.to_mont(acc.data(), inv_all, s.prod());
    for (size_t j = idx.size(); j-- > 0;) {
        size_t at = idx[j];
        fp.mul(zi.data(), acc.data(), &prefix[j * L], s.prod());
        fp.mul(acc.data(), acc.data(), pts[at].Z.data(), s.prod());
        fp.sqr(zi2.data(), zi.data(), s.prod());
        fp.mul(xs + at * L, pts[at].X.data(), zi2.data(), s.prod());
        fp.mul(zi2.data(), zi2.data(), zi.data(), s.prod());
        fp.mul(ys + at * L, pts[at].Y.data(), zi2.data(), s.prod());
    }
}

Point CurveCtx::scalar_mul(const Int& k, const Point& P) const {
    ScalarMulEngine engine(*this);
    return engine.mul(k, P);
}

ScalarMulEngine::ScalarMulEngine(const CurveCtx& ctx)
    : ctx_(&ctx), scratch_(ctx.make_scratch()), twice_(ctx.make_point()) {
    constexpr size_t table_size = 1u << (kSmulWindow - 1);
    size_t L = ctx.fp().limbs();
    jtable_.reserve(table_size);
    for (size_t i = 0; i < table_size; ++i) jtable_.push_back(ctx.make_point());
    xs_.resize(table_size * L);
    ys_.resize(table_size * L);
}

void ScalarMulEngine::mul_jac(const Int& k, const Point& P, JacPoint& acc) {
    const CurveCtx& ctx = *ctx_;
    const MontCtx& fp = ctx.fp();
    fp.set_zero(acc.X.data());
    fp.set_one(acc.Y.data());
    fp.set_zero(acc.Z.data());
    if (k == 0 || P.infinity) return;

    JacScratch& s = scratch_;
    size_t L = fp.limbs();

    // odd multiples 1P, 3P, ..., (2^w - 1)P as affine Montgomery rows
    ctx.set_affine(jtable_[0], P, s);
    ctx.jdbl(twice_, jtable_[0], s);
    for (size_t i = 1; i < jtable_.size(); ++i)
        ctx.jadd(jtable_[i], jtable_[i - 1], twice_, s);
    ctx.normalize_batch(jtable_, xs_.data(), ys_.data(), inf_, s);

    const mpz_srcptr kz = k.get_mpz_t();
    long i = static_cast<long>(bit_length(k)) - 1;
    while (i >= 0) {
        if (!mpz_tstbit(kz, static_cast<mp_bitcnt_t>(i))) {
            ctx.jdbl(acc, acc, s);
            --i;
            continue;
        }
        // widest window [j, i] ending in a set bit
        long j = i - static_cast<long>(kSmulWindow) + 1;
        if (j < 0) j = 0;
        while (!mpz_tstbit(kz, static_cast<mp_bitcnt_t>(j))) ++j;
        unsigned digit = 0;
        for (long b = i; b >= j; --b)
            digit = digit << 1 | mpz_tstbit(kz, static_cast<mp_bitcnt_t>(b));
        for (long b = i; b >= j; --b) ctx.jdbl(acc, acc, s);
        size_t row = (digit - 1) / 2;
        if (!inf_[row]) ctx.jmadd(acc, acc, &xs_[row * L], &ys_[row * L], s);
        i = j - 1;
    }
}

Point ScalarMulEngine::mul(const Int& k, const Point& P) {
    JacPoint acc = ctx_->make_point();
    mul_jac(k, P, acc);
    return ctx_->to_affine(acc, scratch_);
}

FixedBaseTable::FixedBaseTable(const CurveCtx& ctx, const Point& base,
                               size_t expected_muls)
    : ctx_(&ctx), limbs_(ctx.fp().limbs()) {
    if (base.infinity) {
        base_infinity_ = true;
        return;
    }
    width_ = expected_muls >= 2048 ? 8 : expected_muls >= 24 ? 4 : 2;
    bits_ = bit_length(ctx.params().n);
    positions_ = (bits_ + width_ - 1) / width_;
    size_t per_position = (1u << width_) - 1;

    JacScratch s = ctx.make_scratch();
    std::vector<JacPoint> chain;
    chain.reserve(positions_ * per_position);

    JacPoint cur = ctx.make_point();
    ctx.set_affine(cur, base, s);
    for (size_t pos = 0; pos < positions_; ++pos) {
        // entries d * cur for d = 1 .. 2^w - 1
        chain.push_back(cur);
        for (size_t d = 2; d <= per_position; ++d) {
            JacPoint next = ctx.make_point();
            ctx.jadd(next, chain.back(), cur, s);
            chain.push_back(std::move(next));
        }
        for (unsigned b = 0; b < width_; ++b) ctx.jdbl(cur, cur, s);
    }

    xs_.resize(chain.size() * limbs_);
    ys_.resize(chain.size() * limbs_);
    ctx.normalize_batch(chain, xs_.data(), ys_.data(), inf_, s);
}

void FixedBaseTable::mul_jac(const Int& k, JacPoint& acc,
                             JacScratch& s) const {
    if (k < 0) fail(ErrorKind::Usage, "scalar must be non-negative");
    const MontCtx& fp = ctx_->fp();
    fp.set_zero(acc.X.data());
    fp.set_one(acc.Y.data());
    fp.set_zero(acc.Z.data());
    if (base_infinity_ || k == 0) return;
    if (bit_length(k) > bits_)
        fail(ErrorKind::Range, "scalar exceeds fixed-base table range");

    const mpz_srcptr kz = k.get_mpz_t();
    for (size_t pos = 0; pos < positions_; ++pos) {
        unsigned digit = 0;
        for (unsigned b = width_; b-- > 0;) {
            size_t bit = pos * width_ + b;
            digit = digit << 1 |
                    (bit < bits_ &&
                     mpz_tstbit(kz, static_cast<mp_bitcnt_t>(bit)));
        }
        if (digit == 0) continue;
        size_t entry = entry_index(pos, digit);
        if (!inf_[entry / limbs_])
            ctx_->jmadd(acc, acc, &xs_[entry], &ys_[entry], s);
    }
}

Point FixedBaseTable::mul(const Int& k, JacScratch& s) const {
    JacPoint acc = ctx_->make_point();
    mul_jac(k, acc, s);
    return ctx_->to_affine(acc, s);
}

}  // namespace decc::detail

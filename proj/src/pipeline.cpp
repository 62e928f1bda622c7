#include "decc/pipeline.hpp"

#include <atomic>
#include <cstring>
#include <mutex>
#include <thread>

#include "decc/detail/curve_ctx.hpp"
#include "decc/errors.hpp"
#include "decc/field.hpp"
#include "decc/koblitz.hpp"

namespace decc {

namespace {

constexpr char kMagic[4] = {'D', 'E', 'C', 'C'};
constexpr uint8_t kVersion = 1;
constexpr size_t kFixedBaseThreshold = 4;   // blocks; below this, plain scalar_mul
constexpr size_t kParallelThreshold = 64;   // blocks; below this, single thread
constexpr uint64_t kMaxPlaintextBits = 1ull << 56;

// Per-thread working state for the block loops: a reusable scalar-mul
// engine plus Jacobian/coordinate buffers, so the hot path stays
// allocation-free.
struct BlockWorker {
    explicit BlockWorker(const detail::CurveCtx& ctx)
        : engine(ctx),
          jac(ctx.make_point()),
          mx(ctx.fp().limbs()),
          my(ctx.fp().limbs()) {}

    detail::ScalarMulEngine engine;
    detail::JacPoint jac;
    std::vector<mp_limb_t> mx, my;
};

// Runs f(i, worker) for i in [0, count), possibly across threads. Results
// must land in index order, which callers get by writing to slot i.
template <typename F>
void for_each_block(const detail::CurveCtx& ctx, size_t count, F&& f) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw < 2 || count < kParallelThreshold) {
        BlockWorker worker(ctx);
        for (size_t i = 0; i < count; ++i) f(i, worker);
        return;
    }

    unsigned nthreads = std::min<unsigned>(hw, 8);
    std::atomic<size_t> next{0};
    std::atomic<bool> stop{false};
    std::exception_ptr err;
    std::mutex err_mu;

    auto worker_fn = [&] {
        BlockWorker worker(ctx);
        constexpr size_t chunk = 16;
        while (!stop.load(std::memory_order_relaxed)) {
            size_t start = next.fetch_add(chunk, std::memory_order_relaxed);
            if (start >= count) return;
            size_t end = std::min(count, start + chunk);
            try {
                for (size_t i = start; i < end; ++i) f(i, worker);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mu);
                if (!err) err = std::current_exception();
                stop.store(true, std::memory_order_relaxed);
                return;
            }
        }
    };

    std::vector<std::thread> threads;
    threads.reserve(nthreads);
    for (unsigned t = 0; t < nthreads; ++t) threads.emplace_back(worker_fn);
    for (auto& t : threads) t.join();
    if (err) std::rethrow_exception(err);
}

void append_be(Bytes& out, uint64_t v, int bytes) {
    for (int i = bytes - 1; i >= 0; --i)
        out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

int base_code_of(char c) {
    switch (c) {
        case 'A': return 0;
        case 'T': return 1;
        case 'G': return 2;
        case 'C': return 3;
        default: return -1;
    }
}

constexpr char kCodeToBase[4] = {'A', 'T', 'G', 'C'};

}  // namespace

void PipelineParams::validate(const CurveParams& c) const {
    if (curve_id != c.curve_id)
        fail(ErrorKind::Usage, "profile expects curve '" + curve_id +
                                   "' but got '" + c.curve_id + "'");
    if (r < 3 || r % 2 == 0 || r > 255)
        fail(ErrorKind::Usage, "segment length r must be odd, >= 3 and <= 255");
    if (B < 1) fail(ErrorKind::Usage, "block size B must be >= 1");
    KoblitzParams kp = koblitz_params(K, c);
    Int max_block = (Int(1) << (2 * static_cast<unsigned>(B))) - 1;
    if (max_block > kp.max_message)
        fail(ErrorKind::Range,
             "block size B too large: 2^(2B)-1 exceeds the Koblitz capacity "
             "of the curve");
}

PipelineParams production_profile() {
    return PipelineParams{"secp256k1", "", 3, 256, 120};
}

PipelineParams test_profile() { return PipelineParams{"tiny17", "", 3, 4, 1}; }

std::optional<PipelineParams> named_profile(std::string_view name) {
    if (name == "production") return production_profile();
    if (name == "test") return test_profile();
    return std::nullopt;
}

namespace detail {

std::vector<Int> bases_to_block_ints(std::string_view bases, uint16_t B) {
    if (B < 1) fail(ErrorKind::Usage, "block size B must be >= 1");
    std::vector<Int> out;
    out.reserve((bases.size() + B - 1) / B);

    for (size_t start = 0; start < bases.size(); start += B) {
        size_t len = std::min<size_t>(B, bases.size() - start);
        // pack 2-bit codes MSB-first, zero-padded to 2B bits
        size_t total_bits = 2 * static_cast<size_t>(B);
        Bytes packed((total_bits + 7) / 8, 0);
        for (size_t i = 0; i < len; ++i) {
            int code = base_code_of(bases[start + i]);
            if (code < 0)
                fail(ErrorKind::Alphabet,
                     std::string("invalid base '") + bases[start + i] + "'");
            size_t bitpos = 2 * i;
            packed[bitpos / 8] |= static_cast<uint8_t>(
                code << (6 - static_cast<int>(bitpos % 8)));
        }
        Int m = int_from_bytes_be(packed);
        size_t pad = packed.size() * 8 - total_bits;
        if (pad) m >>= pad;
        out.push_back(std::move(m));
    }
    return out;
}

std::string block_ints_to_bases(std::span<const Int> ms, uint16_t B,
                                size_t base_count) {
    if (B < 1) fail(ErrorKind::Usage, "block size B must be >= 1");
    size_t expected = (base_count + B - 1) / B;
    if (ms.size() != expected)
        fail(ErrorKind::Framing,
             "block count " + std::to_string(ms.size()) +
                 " does not match encoded length (" + std::to_string(expected) +
                 " expected)");

    std::string out;
    out.reserve(base_count);
    for (size_t bi = 0; bi < ms.size(); ++bi) {
        const Int& m = ms[bi];
        if (m < 0 || bit_length(m) > 2 * static_cast<size_t>(B))
            fail(ErrorKind::Framing,
                 "block " + std::to_string(bi) +
                     ": integer does not fit in 2B bits");
        size_t len = std::min<size_t>(B, base_count - bi * B);
        for (size_t i = 0; i < len; ++i) {
            int hi = mpz_tstbit(m.get_mpz_t(), 2 * (B - i) - 1);
            int lo = mpz_tstbit(m.get_mpz_t(), 2 * (B - i) - 2);
            out.push_back(kCodeToBase[hi << 1 | lo]);
        }
        // the zero padding behind a short final block must really be zero
        for (size_t i = len; i < B; ++i)
            if (mpz_tstbit(m.get_mpz_t(), 2 * (B - i) - 1) ||
                mpz_tstbit(m.get_mpz_t(), 2 * (B - i) - 2))
                fail(ErrorKind::Framing,
                     "block " + std::to_string(bi) +
                         ": nonzero bits in final-block padding");
    }
    return out;
}

}  // namespace detail

Ciphertext encrypt_bytes(std::span<const uint8_t> plain, const Point& pub,
                         const CurveParams& curve, const PipelineParams& params,
                         const SeqStore& store, RandomSource& rng) {
    params.validate(curve);
    if (pub.infinity || !validate_point(pub, curve))
        fail(ErrorKind::Validation, "public point is not a usable curve point");
    const SequenceRecord& ref = store.get(params.seq_id);

    BitString plain_bits = BitString::from_bytes(plain);
    std::string enc_bases = insertion_encode(
        plain_bits, ref.seq, InsertionParams{params.r, params.seq_id});
    std::vector<Int> ms = detail::bases_to_block_ints(enc_bases, params.B);
    KoblitzParams kp = koblitz_params(params.K, curve);

    // one fresh scalar per block, drawn serially in block order
    std::vector<Int> ks(ms.size());
    for (auto& k : ks) k = rng.random_scalar(curve.n);

    detail::CurveCtx ctx(curve);
    std::optional<detail::FixedBaseTable> table_g, table_pub;
    if (ms.size() >= kFixedBaseThreshold) {
        table_g.emplace(ctx, curve.G, ms.size());
        table_pub.emplace(ctx, pub, ms.size());
    }

    std::vector<PointCiphertext> blocks(ms.size());
    for_each_block(ctx, ms.size(), [&](size_t i, BlockWorker& w) {
        detail::JacScratch& s = w.engine.scratch();
        Point pm = encode_to_point(ms[i], curve, kp);
        Point c1 = table_g ? table_g->mul(ks[i], s)
                           : w.engine.mul(ks[i], curve.G);
        // C2 = P_m + k * pub, accumulated in Jacobian form
        if (table_pub)
            table_pub->mul_jac(ks[i], w.jac, s);
        else
            w.engine.mul_jac(ks[i], pub, w.jac);
        ctx.fp().to_mont(w.mx.data(), pm.x, s.prod());
        ctx.fp().to_mont(w.my.data(), pm.y, s.prod());
        ctx.jmadd(w.jac, w.jac, w.mx.data(), w.my.data(), s);
        blocks[i] = PointCiphertext{std::move(c1), ctx.to_affine(w.jac, s)};
    });

    Ciphertext ct;
    ct.header.curve_id = curve.curve_id;
    ct.header.seq_fingerprint = ref.fingerprint;
    ct.header.r = static_cast<uint8_t>(params.r);
    ct.header.K = params.K;
    ct.header.B = params.B;
    ct.header.plaintext_bit_length = static_cast<uint64_t>(plain.size()) * 8;
    ct.blocks = std::move(blocks);
    return ct;
}

Bytes decrypt_bytes(const Ciphertext& ct, const Int& priv,
                    const CurveParams& curve, const SeqStore& store) {
    const CiphertextHeader& h = ct.header;
    if (h.curve_id != curve.curve_id)
        fail(ErrorKind::Usage, "ciphertext is for curve '" + h.curve_id +
                                   "', not '" + curve.curve_id + "'");
    PipelineParams params{h.curve_id, "", h.r, h.K, h.B};
    params.validate(curve);
    if (priv < 1) fail(ErrorKind::Key, "private scalar must be >= 1");

    // sequence synchronization comes first, before any point work
    const SequenceRecord* ref = store.find_by_fingerprint(h.seq_fingerprint);
    if (!ref)
        fail(ErrorKind::SeqMismatch,
             "no stored sequence matches the ciphertext fingerprint");

    if (h.plaintext_bit_length % 8 != 0)
        fail(ErrorKind::Framing, "plaintext bit length is not a whole number of bytes");
    if (h.plaintext_bit_length > kMaxPlaintextBits)
        fail(ErrorKind::Framing, "implausible plaintext bit length");
    uint64_t base_total = h.plaintext_bit_length * (h.r + 1) / 2;
    uint64_t expected_blocks = h.B ? (base_total + h.B - 1) / h.B : 0;
    if (ct.blocks.size() != expected_blocks)
        fail(ErrorKind::Framing,
             "block count " + std::to_string(ct.blocks.size()) +
                 " does not match header (" + std::to_string(expected_blocks) +
                 " expected)");

    KoblitzParams kp = koblitz_params(h.K, curve);
    detail::CurveCtx ctx(curve);

    std::vector<Int> ms(ct.blocks.size());
    for_each_block(ctx, ct.blocks.size(), [&](size_t i, BlockWorker& w) {
        const PointCiphertext& block = ct.blocks[i];
        if (!validate_point(block.c1, curve) ||
            !validate_point(block.c2, curve))
            fail(ErrorKind::Validation,
                 "block " + std::to_string(i) + ": point not on curve");
        // P_m = C2 - d*C1, accumulated in Jacobian form
        detail::JacScratch& s = w.engine.scratch();
        w.engine.mul_jac(priv, block.c1, w.jac);
        ctx.fp().neg(w.jac.Y.data(), w.jac.Y.data());
        if (!block.c2.infinity) {
            ctx.fp().to_mont(w.mx.data(), block.c2.x, s.prod());
            ctx.fp().to_mont(w.my.data(), block.c2.y, s.prod());
            ctx.jmadd(w.jac, w.jac, w.mx.data(), w.my.data(), s);
        }
        Point pm = ctx.to_affine(w.jac, s);
        ms[i] = decode_from_point(pm, kp);  // Validation if pm is infinity
    });

    std::string enc_bases = detail::block_ints_to_bases(
        ms, h.B, static_cast<size_t>(base_total));
    BitString bits = insertion_decode(enc_bases, ref->seq,
                                      InsertionParams{h.r, ref->seq.seq_id});
    return bits.to_bytes();
}

Bytes serialize(const Ciphertext& ct, const CurveParams& curve) {
    const CiphertextHeader& h = ct.header;
    if (h.curve_id != curve.curve_id)
        fail(ErrorKind::Usage, "ciphertext is for curve '" + h.curve_id +
                                   "', not '" + curve.curve_id + "'");
    if (h.curve_id.empty() || h.curve_id.size() > 255)
        fail(ErrorKind::Range, "curve_id does not fit the wire format");
    if (ct.blocks.size() > 0xFFFFFFFFull)
        fail(ErrorKind::Range, "too many blocks for the wire format");

    size_t w = curve.coord_width();
    Bytes out;
    out.reserve(53 + h.curve_id.size() + ct.blocks.size() * 2 * (1 + 2 * w));
    out.insert(out.end(), kMagic, kMagic + 4);
    out.push_back(kVersion);
    out.push_back(static_cast<uint8_t>(h.curve_id.size()));
    out.insert(out.end(), h.curve_id.begin(), h.curve_id.end());
    out.insert(out.end(), h.seq_fingerprint.begin(), h.seq_fingerprint.end());
    out.push_back(h.r);
    append_be(out, h.K, 4);
    append_be(out, h.B, 2);
    append_be(out, h.plaintext_bit_length, 8);
    append_be(out, ct.blocks.size(), 4);
    for (const PointCiphertext& block : ct.blocks) {
        Bytes c1 = point_to_bytes(block.c1, curve);
        Bytes c2 = point_to_bytes(block.c2, curve);
        out.insert(out.end(), c1.begin(), c1.end());
        out.insert(out.end(), c2.begin(), c2.end());
    }
    return out;
}

namespace {

class Reader {
public:
    explicit Reader(std::span<const uint8_t> data) : data_(data) {}

    size_t offset() const { return off_; }
    bool done() const { return off_ == data_.size(); }

    std::span<const uint8_t> take(size_t n, const char* what) {
        if (data_.size() - off_ < n)
            fail(ErrorKind::Parse, "truncated at offset " +
                                       std::to_string(off_) +
                                       " while reading " + what);
        auto out = data_.subspan(off_, n);
        off_ += n;
        return out;
    }

    uint64_t be(size_t n, const char* what) {
        auto bytes = take(n, what);
        uint64_t v = 0;
        for (uint8_t b : bytes) v = v << 8 | b;
        return v;
    }

private:
    std::span<const uint8_t> data_;
    size_t off_ = 0;
};

Point read_point(Reader& reader, const CurveParams& curve, size_t block,
                 const char* which) {
    size_t at = reader.offset();
    uint8_t tag = static_cast<uint8_t>(reader.be(1, which));
    if (tag == 0x00) return Point::at_infinity();
    if (tag != 0x04)
        fail(ErrorKind::Parse, "offset " + std::to_string(at) +
                                   ": bad point tag " + std::to_string(tag));
    size_t w = curve.coord_width();
    Int x = int_from_bytes_be(reader.take(w, which));
    Int y = int_from_bytes_be(reader.take(w, which));
    Point p = Point::affine(std::move(x), std::move(y));
    if (!validate_point(p, curve))
        fail(ErrorKind::Validation, "block " + std::to_string(block) + ": " +
                                        which + " is not on curve " +
                                        curve.curve_id);
    return p;
}

}  // namespace

Ciphertext deserialize(std::span<const uint8_t> data,
                       const CurveParams& curve) {
    Reader reader(data);

    auto magic = reader.take(4, "magic");
    if (std::memcmp(magic.data(), kMagic, 4) != 0)
        fail(ErrorKind::Parse, "bad magic (not a ciphertext file)");
    uint8_t version = static_cast<uint8_t>(reader.be(1, "version"));
    if (version != kVersion)
        fail(ErrorKind::Parse,
             "unsupported version " + std::to_string(version));

    size_t idlen = reader.be(1, "curve_id length");
    auto idbytes = reader.take(idlen, "curve_id");
    std::string curve_id(idbytes.begin(), idbytes.end());
    if (curve_id != curve.curve_id)
        fail(ErrorKind::Parse, "ciphertext is for curve '" + curve_id +
                                   "', not '" + curve.curve_id + "'");

    Ciphertext ct;
    ct.header.curve_id = std::move(curve_id);
    auto fp = reader.take(32, "sequence fingerprint");
    std::copy(fp.begin(), fp.end(), ct.header.seq_fingerprint.begin());
    ct.header.r = static_cast<uint8_t>(reader.be(1, "r"));
    ct.header.K = static_cast<uint32_t>(reader.be(4, "K"));
    ct.header.B = static_cast<uint16_t>(reader.be(2, "B"));
    ct.header.plaintext_bit_length = reader.be(8, "plaintext bit length");
    uint64_t count = reader.be(4, "block count");

    const CiphertextHeader& h = ct.header;
    if (h.r < 3 || h.r % 2 == 0)
        fail(ErrorKind::Parse, "header r must be odd and >= 3");
    if (h.K < 2) fail(ErrorKind::Parse, "header K must be >= 2");
    if (h.B < 1) fail(ErrorKind::Parse, "header B must be >= 1");
    if (h.plaintext_bit_length % 8 != 0)
        fail(ErrorKind::Parse, "plaintext bit length is not a whole number of bytes");
    if (h.plaintext_bit_length > kMaxPlaintextBits)
        fail(ErrorKind::Parse, "implausible plaintext bit length");
    Int max_block = (Int(1) << (2 * static_cast<unsigned>(h.B))) - 1;
    if (h.K >= 2 && max_block > (curve.p - 1) / h.K - 1)
        fail(ErrorKind::Parse,
             "header B/K combination cannot embed on curve " + curve.curve_id);

    uint64_t base_total = h.plaintext_bit_length * (h.r + 1) / 2;
    uint64_t expected_blocks = (base_total + h.B - 1) / h.B;
    if (count != expected_blocks)
        fail(ErrorKind::Parse,
             "block count " + std::to_string(count) +
                 " does not match header (" + std::to_string(expected_blocks) +
                 " expected)");

    // two single-byte points is the smallest possible block
    if (count > (data.size() - reader.offset()) / 2)
        fail(ErrorKind::Parse, "truncated: " + std::to_string(count) +
                                   " blocks cannot fit in the remaining " +
                                   std::to_string(data.size() - reader.offset()) +
                                   " bytes");
    ct.blocks.reserve(count);
    for (uint64_t i = 0; i < count; ++i) {
        Point c1 = read_point(reader, curve, i, "C1");
        Point c2 = read_point(reader, curve, i, "C2");
        ct.blocks.push_back(PointCiphertext{std::move(c1), std::move(c2)});
    }
    if (!reader.done())
        fail(ErrorKind::Parse, "trailing bytes after block " +
                                   std::to_string(count) + " at offset " +
                                   std::to_string(reader.offset()));
    return ct;
}

}  // namespace decc

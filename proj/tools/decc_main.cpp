// decc: DNA-encoded EC-ElGamal encryption tool.
//
// Subcommands: keygen, encrypt, decrypt, seq import, seq list, bench.
// Exit codes: 0 ok, 2 usage, 3 parse/format, 4 key error, 5 sequence
// mismatch, 6 tamper detected, 7 entropy failure.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>

#include "decc/curve.hpp"
#include "decc/elgamal.hpp"
#include "decc/errors.hpp"
#include "decc/pipeline.hpp"
#include "decc/rng.hpp"
#include "decc/seq_store.hpp"

namespace {

using namespace decc;

Bytes read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::Parse, "cannot open file: " + path.string());
    Bytes data((std::istreambuf_iterator<char>(in)),
               std::istreambuf_iterator<char>());
    return data;
}

void write_file(const std::filesystem::path& path,
                std::span<const uint8_t> data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::Usage, "cannot write file: " + path.string());
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(data.size()));
    if (!out) fail(ErrorKind::Usage, "short write: " + path.string());
}

std::unique_ptr<RandomSource> make_rng(const std::string& seed_hex) {
    if (!seed_hex.empty()) {
#ifdef DECC_TEST_SEED
        return std::make_unique<DeterministicRandom>(from_hex(seed_hex));
#else
        std::cerr << "decc: warning: --seed is only honored in test builds; "
                     "using system randomness\n";
#endif
    }
    return std::make_unique<SystemRandom>();
}

PipelineParams resolve_profile(const std::string& name) {
    auto profile = named_profile(name);
    if (!profile)
        fail(ErrorKind::Usage,
             "unknown profile '" + name + "' (expected production or test)");
    return *profile;
}

// Deterministic synthetic reference sequence for bench runs.
std::string synthetic_bases(size_t count) {
    static const char bases[4] = {'A', 'C', 'G', 'T'};
    std::string out;
    out.reserve(count);
    uint64_t state = 0x9e3779b97f4a7c15ull;
    for (size_t i = 0; i < count; ++i) {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        out.push_back(bases[(state >> 33) & 3]);
    }
    return out;
}

int cmd_keygen(const std::string& curve_file, const std::string& out_prefix,
               bool force, const std::string& seed_hex) {
    CurveParams curve = load_curve_file(curve_file);
    auto rng = make_rng(seed_hex);
    KeyPair kp = keygen(curve, *rng);
    std::filesystem::path priv = out_prefix + ".priv";
    std::filesystem::path pub = out_prefix + ".pub";
    save_private_key(priv, PrivateKey{curve.curve_id, kp.d}, force);
    save_public_key(pub, PublicKey{curve.curve_id, kp.pub}, curve, force);
    std::cout << "wrote " << priv.string() << " and " << pub.string() << "\n";
    return 0;
}

int cmd_encrypt(const std::string& input, const std::string& key_file,
                const std::string& seq_id, const std::string& profile_name,
                const std::string& curve_file, const std::string& store_dir,
                const std::string& out_file, const std::string& seed_hex) {
    CurveParams curve = load_curve_file(curve_file);
    PipelineParams params = resolve_profile(profile_name);
    params.seq_id = seq_id;
    SeqStore store = SeqStore::open(store_dir);
    PublicKey pub = load_public_key(key_file, curve);
    Bytes plain = read_file(input);
    auto rng = make_rng(seed_hex);
    Ciphertext ct = encrypt_bytes(plain, pub.point, curve, params, store, *rng);
    write_file(out_file, serialize(ct, curve));
    std::cout << "encrypted " << plain.size() << " bytes into "
              << ct.blocks.size() << " blocks\n";
    return 0;
}

int cmd_decrypt(const std::string& input, const std::string& key_file,
                const std::string& curve_file, const std::string& store_dir,
                const std::string& out_file) {
    CurveParams curve = load_curve_file(curve_file);
    SeqStore store = SeqStore::open(store_dir);
    PrivateKey priv = load_private_key(key_file);
    if (priv.curve_id != curve.curve_id)
        fail(ErrorKind::Key, "private key is for curve '" + priv.curve_id +
                                 "', not '" + curve.curve_id + "'");
    Bytes data = read_file(input);
    Ciphertext ct = deserialize(data, curve);
    Bytes plain = decrypt_bytes(ct, priv.d, curve, store);
    write_file(out_file, plain);
    std::cout << "decrypted " << plain.size() << " bytes\n";
    return 0;
}

int cmd_seq_import(const std::string& fasta, const std::string& store_dir) {
    SeqStore store = SeqStore::open(store_dir);
    auto ids = store.import_file(fasta);
    store.save();
    for (const auto& id : ids) {
        const SequenceRecord& rec = store.get(id);
        std::cout << "imported " << id << " (" << rec.length << " bases)\n";
    }
    return 0;
}

int cmd_seq_list(const std::string& store_dir) {
    SeqStore store = SeqStore::open(store_dir);
    for (const SequenceRecord& rec : store.list())
        std::cout << rec.seq.seq_id << '\t' << rec.length << '\t'
                  << to_hex(rec.fingerprint) << '\n';
    return 0;
}

int cmd_bench(const std::string& curve_file, const std::string& profile_name,
              bool csv) {
    using clock = std::chrono::steady_clock;
    CurveParams curve = load_curve_file(curve_file);
    PipelineParams params = resolve_profile(profile_name);
    if (params.curve_id != curve.curve_id)
        fail(ErrorKind::Usage, "profile '" + profile_name + "' expects curve '" +
                                   params.curve_id + "'");

    SystemRandom rng;

    // scalar multiplication throughput
    size_t iters = 0;
    double elapsed = 0.0;
    {
        Point acc = curve.G;
        auto t0 = clock::now();
        do {
            Int k = rng.random_scalar(curve.n);
            acc = scalar_mul(k, acc.infinity ? curve.G : acc, curve);
            ++iters;
            elapsed = std::chrono::duration<double>(clock::now() - t0).count();
        } while (elapsed < 0.5);
    }
    double smul_us = elapsed / static_cast<double>(iters) * 1e6;

    // full pipeline throughput on a synthetic payload
    const size_t payload = 8192;
    size_t ref_bases = payload * 8 * params.r / 2 + 64;
    SeqStore store;
    store.add(make_record(
        DnaSequence{"bench-ref", synthetic_bases(ref_bases), "synthetic"}));
    params.seq_id = "bench-ref";

    Bytes plain(payload);
    rng.random_bytes(plain);
    KeyPair kp = keygen(curve, rng);

    auto t0 = clock::now();
    Ciphertext ct = encrypt_bytes(plain, kp.pub, curve, params, store, rng);
    double enc_s = std::chrono::duration<double>(clock::now() - t0).count();
    t0 = clock::now();
    Bytes back = decrypt_bytes(ct, kp.d, curve, store);
    double dec_s = std::chrono::duration<double>(clock::now() - t0).count();
    if (back != plain) fail(ErrorKind::Validation, "bench round trip failed");

    double enc_kbs = payload / 1024.0 / enc_s;
    double dec_kbs = payload / 1024.0 / dec_s;

    if (csv) {
        std::cout << "metric,value,unit\n";
        std::cout << "scalar_mul," << smul_us << ",us/op\n";
        std::cout << "encrypt," << enc_kbs << ",KiB/s\n";
        std::cout << "decrypt," << dec_kbs << ",KiB/s\n";
    } else {
        std::cout << "curve " << curve.curve_id << " (" << bit_length(curve.p)
                  << "-bit p), profile " << profile_name << "\n";
        std::cout << "  scalar_mul: " << smul_us << " us/op (" << iters
                  << " ops)\n";
        std::cout << "  encrypt:    " << enc_kbs << " KiB/s (" << payload
                  << " B payload, " << ct.blocks.size() << " blocks)\n";
        std::cout << "  decrypt:    " << dec_kbs << " KiB/s\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"DNA-encoded elliptic-curve encryption tool"};
    app.require_subcommand(1);

    std::string curve_file, store_dir, seed_hex;
    std::function<int()> run;

    auto add_curve_opt = [&](CLI::App* cmd) {
        cmd->add_option("--curve", curve_file, "curve parameters file")
            ->envname("DECC_CURVE")
            ->required()
            ->check(CLI::ExistingFile);
    };
    auto add_store_opt = [&](CLI::App* cmd) {
        cmd->add_option("--store", store_dir, "sequence store directory")
            ->envname("DECC_STORE")
            ->required();
    };
    auto add_seed_opt = [&](CLI::App* cmd) {
        cmd->add_option("--seed", seed_hex,
                        "deterministic rng seed, hex (test builds only)");
    };

    // keygen
    {
        auto* cmd = app.add_subcommand("keygen", "generate an EC-ElGamal keypair");
        static std::string out_prefix;
        static bool force = false;
        add_curve_opt(cmd);
        add_seed_opt(cmd);
        cmd->add_option("--out", out_prefix, "output path prefix")->required();
        cmd->add_flag("--force", force, "overwrite existing key files");
        cmd->callback([&] {
            run = [&] { return cmd_keygen(curve_file, out_prefix, force, seed_hex); };
        });
    }

    // encrypt
    {
        auto* cmd = app.add_subcommand("encrypt", "encrypt a file");
        static std::string input, key_file, seq_id, out_file;
        static std::string profile = "production";
        add_curve_opt(cmd);
        add_store_opt(cmd);
        add_seed_opt(cmd);
        cmd->add_option("input", input, "plaintext file")
            ->required()
            ->check(CLI::ExistingFile);
        cmd->add_option("--key", key_file, "recipient public key file")
            ->required()
            ->check(CLI::ExistingFile);
        cmd->add_option("--seq", seq_id, "reference sequence id")->required();
        cmd->add_option("--profile", profile, "parameter profile")
            ->capture_default_str();
        cmd->add_option("--out", out_file, "ciphertext output file")->required();
        cmd->callback([&] {
            run = [&] {
                return cmd_encrypt(input, key_file, seq_id, profile, curve_file,
                                   store_dir, out_file, seed_hex);
            };
        });
    }

    // decrypt
    {
        auto* cmd = app.add_subcommand("decrypt", "decrypt a ciphertext file");
        static std::string input, key_file, out_file;
        add_curve_opt(cmd);
        add_store_opt(cmd);
        cmd->add_option("input", input, "ciphertext file")
            ->required()
            ->check(CLI::ExistingFile);
        cmd->add_option("--key", key_file, "private key file")
            ->required()
            ->check(CLI::ExistingFile);
        cmd->add_option("--out", out_file, "plaintext output file")->required();
        cmd->callback([&] {
            run = [&] {
                return cmd_decrypt(input, key_file, curve_file, store_dir,
                                   out_file);
            };
        });
    }

    // seq import | seq list
    {
        auto* seq = app.add_subcommand("seq", "manage reference sequences");
        seq->require_subcommand(1);
        auto* imp = seq->add_subcommand("import", "import FASTA into the store");
        static std::string fasta;
        imp->add_option("fasta", fasta, "FASTA file")
            ->required()
            ->check(CLI::ExistingFile);
        add_store_opt(imp);
        imp->callback([&] {
            run = [&] { return cmd_seq_import(fasta, store_dir); };
        });

        auto* list = seq->add_subcommand("list", "list stored sequences");
        add_store_opt(list);
        list->callback([&] { run = [&] { return cmd_seq_list(store_dir); }; });
    }

    // bench
    {
        auto* cmd = app.add_subcommand("bench", "timing report");
        static std::string profile = "production";
        static bool csv = false;
        add_curve_opt(cmd);
        cmd->add_option("--profile", profile, "parameter profile")
            ->capture_default_str();
        cmd->add_flag("--csv", csv, "CSV output");
        cmd->callback([&] {
            run = [&] { return cmd_bench(curve_file, profile, csv); };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        return run();
    } catch (const decc::Error& e) {
        std::cerr << "decc: error: " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "decc: internal error: " << e.what() << "\n";
        return 1;
    }
}

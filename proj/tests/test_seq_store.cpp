#include <doctest.h>

#include <sstream>

#include "decc/bytes.hpp"
#include "decc/errors.hpp"
#include "decc/seq_store.hpp"
#include "helpers.hpp"

using namespace decc;

TEST_CASE("basic FASTA parse") {
    std::istringstream in(">litmus\nATCGAATTCG");
    auto recs = import_fasta(in);
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].seq.seq_id == "litmus");
    CHECK(recs[0].seq.bases == "ATCGAATTCG");
    CHECK(recs[0].length == 10);
    CHECK(recs[0].fingerprint == sha256(std::string_view("ATCGAATTCG")));
}

TEST_CASE("FASTA normalizes case and whitespace, keeps source note") {
    std::istringstream in(">s1 sample provenance note\nacgt ACGT\n\nacgt\n>s2\nTTTT\n");
    auto recs = import_fasta(in);
    REQUIRE(recs.size() == 2);
    CHECK(recs[0].seq.bases == "ACGTACGTACGT");
    CHECK(recs[0].seq.source == "sample provenance note");
    CHECK(recs[1].seq.seq_id == "s2");
}

TEST_CASE("FASTA errors carry line numbers") {
    std::istringstream bad(">x\nATBG");
    try {
        import_fasta(bad);
        FAIL("expected alphabet error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Alphabet);
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }

    std::istringstream empty("");
    CHECK_THROWS_AS(import_fasta(empty), Error);

    std::istringstream headerless("ACGT\n");
    CHECK_THROWS_AS(import_fasta(headerless), Error);

    std::istringstream dup(">a\nACGT\n>a\nACGT\n");
    try {
        import_fasta(dup);
        FAIL("expected conflict");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Conflict);
    }

    std::istringstream nodata(">a\n>b\nACGT\n");
    CHECK_THROWS_AS(import_fasta(nodata), Error);
}

TEST_CASE("shipped litmus fragment matches the published prefix") {
    SeqStore store;
    store.import_file(testutil::data_dir() / "sequences" / "litmus.fasta");
    const SequenceRecord& rec = store.get("litmus");
    CHECK(rec.seq.bases.rfind("ATCGAATTCGCGCTGAGTCACAATT", 0) == 0);
    CHECK(rec.length == 255);
    CHECK(to_hex(rec.fingerprint) ==
          "c08583ea9b135f81a7410bead53a82ebed13a62ab600353672b352d4d3b3aba5");

    SeqStore store2;
    store2.import_file(testutil::data_dir() / "sequences" / "balsaminaceae.fasta");
    CHECK(store2.get("balsaminaceae").seq.bases.rfind("TTTTTATTATTT", 0) == 0);
}

TEST_CASE("store lookup and errors") {
    SeqStore store;
    store.add(make_record(DnaSequence{"one", "ACGTACGT", "note"}));
    CHECK(store.get("one").length == 8);
    CHECK_THROWS_AS(store.get("two"), Error);
    try {
        store.get("two");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotFound);
    }
    CHECK_THROWS_AS(store.add(make_record(DnaSequence{"one", "AAAA", ""})), Error);
}

TEST_CASE("fingerprint changes iff bases change") {
    auto rec = make_record(DnaSequence{"x", "ACGTACGTAC", ""});
    for (size_t i = 0; i < rec.seq.bases.size(); ++i) {
        for (char sub : {'A', 'C', 'G', 'T'}) {
            if (sub == rec.seq.bases[i]) continue;
            std::string mutated = rec.seq.bases;
            mutated[i] = sub;
            CHECK(make_record(DnaSequence{"x", mutated, ""}).fingerprint !=
                  rec.fingerprint);
        }
    }
    CHECK(make_record(DnaSequence{"renamed", rec.seq.bases, "other note"})
              .fingerprint == rec.fingerprint);
}

TEST_CASE("find_by_fingerprint") {
    SeqStore store;
    auto rec = make_record(DnaSequence{"target", "ACGTTGCA", ""});
    Digest32 fp = rec.fingerprint;
    store.add(std::move(rec));
    store.add(make_record(DnaSequence{"other", "TTTTAAAA", ""}));

    const SequenceRecord* hit = store.find_by_fingerprint(fp);
    REQUIRE(hit);
    CHECK(hit->seq.seq_id == "target");
    Digest32 missing{};
    CHECK(store.find_by_fingerprint(missing) == nullptr);
}

TEST_CASE("directory save and reload is lossless") {
    testutil::TempDir tmp;
    auto dir = tmp / "store";
    {
        SeqStore store = SeqStore::open(dir);
        store.add(make_record(DnaSequence{"alpha", "ACGTACGTACGTAAAA", "note one"}));
        store.add(make_record(DnaSequence{"beta", "GGGGCCCCAAAATTTT", ""}));
        store.save();
    }
    SeqStore store = SeqStore::open(dir);
    CHECK(store.list().size() == 2);
    CHECK(store.get("alpha").seq.bases == "ACGTACGTACGTAAAA");
    CHECK(store.get("alpha").seq.source == "note one");
    CHECK(store.get("beta").length == 16);

    // index names the right files
    CHECK(std::filesystem::exists(dir / "index.tsv"));
    CHECK(std::filesystem::exists(dir / "alpha.fasta"));

    // a store with no directory cannot persist
    SeqStore memory_only;
    memory_only.add(make_record(DnaSequence{"x", "ACGT", ""}));
    CHECK_THROWS_AS(memory_only.save(), Error);
}

TEST_CASE("tampered store file is rejected on open") {
    testutil::TempDir tmp;
    auto dir = tmp / "store";
    {
        SeqStore store = SeqStore::open(dir);
        store.add(make_record(DnaSequence{"alpha", "ACGTACGTACGTAAAA", ""}));
        store.save();
    }
    testutil::write_text_file(dir / "alpha.fasta", ">alpha\nACGTACGTACGTAAAT\n");
    CHECK_THROWS_AS(SeqStore::open(dir), Error);
}

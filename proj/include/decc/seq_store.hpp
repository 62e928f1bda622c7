#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <vector>

#include "decc/digest.hpp"
#include "decc/dna.hpp"

namespace decc {

struct SequenceRecord {
    DnaSequence seq;
    Digest32 fingerprint;  // SHA-256 of the canonical uppercase bases
    size_t length = 0;
};

SequenceRecord make_record(DnaSequence seq);

// FASTA: '>' starts a record, first token is the seq_id, rest of the header
// is kept as the provenance note; sequence lines are concatenated,
// uppercased, whitespace-stripped. Errors name the offending line.
std::vector<SequenceRecord> import_fasta(std::istream& in);

// Directory-backed store: <dir>/<seq_id>.fasta plus index.tsv
// (seq_id, length, fingerprint hex). Reads are safe concurrently once
// loaded; imports are single-writer.
class SeqStore {
public:
    SeqStore() = default;
    static SeqStore open(const std::filesystem::path& dir);

    void add(SequenceRecord rec);  // in-memory; Conflict on duplicate id
    std::vector<std::string> import_stream(std::istream& in);  // added ids
    std::vector<std::string> import_file(const std::filesystem::path& fasta);
    void save() const;  // Usage error when the store has no directory

    const SequenceRecord& get(const std::string& seq_id) const;  // NotFound
    const SequenceRecord* find_by_fingerprint(const Digest32& fp) const;
    std::vector<std::reference_wrapper<const SequenceRecord>> list() const;

    bool has_dir() const { return !dir_.empty(); }
    const std::filesystem::path& dir() const { return dir_; }

private:
    std::filesystem::path dir_;
    std::map<std::string, SequenceRecord> records_;
};

}  // namespace decc

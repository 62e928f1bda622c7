#include "decc/seq_store.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "decc/bytes.hpp"
#include "decc/errors.hpp"

namespace decc {

SequenceRecord make_record(DnaSequence seq) {
    validate_bases(seq.bases);
    SequenceRecord rec;
    rec.fingerprint = sha256(seq.bases);
    rec.length = seq.bases.size();
    rec.seq = std::move(seq);
    return rec;
}

std::vector<SequenceRecord> import_fasta(std::istream& in) {
    std::vector<SequenceRecord> out;
    std::string line;
    size_t lineno = 0;

    std::string cur_id, cur_source, cur_bases;
    size_t cur_header_line = 0;
    auto flush = [&]() {
        if (cur_id.empty()) return;
        if (cur_bases.empty())
            fail(ErrorKind::Parse, "record '" + cur_id + "' (line " +
                                       std::to_string(cur_header_line) +
                                       ") has no sequence data");
        for (const auto& r : out)
            if (r.seq.seq_id == cur_id)
                fail(ErrorKind::Conflict, "duplicate seq_id '" + cur_id + "'");
        out.push_back(
            make_record(DnaSequence{cur_id, cur_bases, cur_source}));
        cur_id.clear();
        cur_source.clear();
        cur_bases.clear();
    };

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '>') {
            flush();
            std::istringstream hdr(line.substr(1));
            hdr >> cur_id;
            if (cur_id.empty())
                fail(ErrorKind::Parse,
                     "line " + std::to_string(lineno) + ": header has no seq_id");
            std::getline(hdr, cur_source);
            size_t b = cur_source.find_first_not_of(" \t");
            cur_source = b == std::string::npos ? "" : cur_source.substr(b);
            cur_header_line = lineno;
            continue;
        }
        if (cur_id.empty())
            fail(ErrorKind::Parse,
                 "line " + std::to_string(lineno) + ": sequence data before any header");
        for (char c : line) {
            if (std::isspace(static_cast<unsigned char>(c))) continue;
            char u = static_cast<char>(
                std::toupper(static_cast<unsigned char>(c)));
            if (u != 'A' && u != 'C' && u != 'G' && u != 'T')
                fail(ErrorKind::Alphabet,
                     "line " + std::to_string(lineno) + ": invalid base '" +
                         std::string(1, c) + "'");
            cur_bases.push_back(u);
        }
    }
    flush();
    if (out.empty())
        fail(ErrorKind::Parse, "FASTA input contains no records");
    return out;
}

SeqStore SeqStore::open(const std::filesystem::path& dir) {
    SeqStore store;
    store.dir_ = dir;
    if (!std::filesystem::exists(dir)) return store;

    std::filesystem::path index = dir / "index.tsv";
    if (!std::filesystem::exists(index)) return store;

    std::ifstream in(index);
    if (!in)
        fail(ErrorKind::Parse, "cannot open store index: " + index.string());
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string seq_id, length_str, fp_hex;
        if (!std::getline(row, seq_id, '\t') ||
            !std::getline(row, length_str, '\t') ||
            !std::getline(row, fp_hex))
            fail(ErrorKind::Parse, "store index line " +
                                       std::to_string(lineno) +
                                       ": expected 3 tab-separated fields");

        std::filesystem::path fasta = dir / (seq_id + ".fasta");
        std::ifstream fin(fasta);
        if (!fin)
            fail(ErrorKind::Parse,
                 "store index names missing file: " + fasta.string());
        auto recs = import_fasta(fin);
        if (recs.size() != 1 || recs[0].seq.seq_id != seq_id)
            fail(ErrorKind::Parse,
                 "store file " + fasta.string() + " does not hold exactly '" +
                     seq_id + "'");
        if (to_hex(recs[0].fingerprint) != fp_hex ||
            std::to_string(recs[0].length) != length_str)
            fail(ErrorKind::Parse,
                 "store file " + fasta.string() + " disagrees with the index");
        store.records_.emplace(seq_id, std::move(recs[0]));
    }
    return store;
}

void SeqStore::add(SequenceRecord rec) {
    const std::string& id = rec.seq.seq_id;
    if (id.empty()) fail(ErrorKind::Usage, "sequence record has empty seq_id");
    if (records_.count(id))
        fail(ErrorKind::Conflict, "duplicate seq_id '" + id + "'");
    records_.emplace(id, std::move(rec));
}

std::vector<std::string> SeqStore::import_stream(std::istream& in) {
    std::vector<std::string> ids;
    for (auto& rec : import_fasta(in)) {
        ids.push_back(rec.seq.seq_id);
        add(std::move(rec));
    }
    return ids;
}

std::vector<std::string> SeqStore::import_file(
    const std::filesystem::path& fasta) {
    std::ifstream in(fasta);
    if (!in) fail(ErrorKind::Parse, "cannot open FASTA file: " + fasta.string());
    return import_stream(in);
}

void SeqStore::save() const {
    if (dir_.empty())
        fail(ErrorKind::Usage, "sequence store has no backing directory");
    std::filesystem::create_directories(dir_);

    for (const auto& [id, rec] : records_) {
        std::ofstream out(dir_ / (id + ".fasta"));
        out << '>' << id;
        if (!rec.seq.source.empty()) out << ' ' << rec.seq.source;
        out << '\n';
        for (size_t i = 0; i < rec.seq.bases.size(); i += 70)
            out << rec.seq.bases.substr(i, 70) << '\n';
    }

    std::ofstream index(dir_ / "index.tsv");
    for (const auto& [id, rec] : records_)
        index << id << '\t' << rec.length << '\t' << to_hex(rec.fingerprint)
              << '\n';
}

const SequenceRecord& SeqStore::get(const std::string& seq_id) const {
    auto it = records_.find(seq_id);
    if (it == records_.end())
        fail(ErrorKind::NotFound, "no sequence '" + seq_id + "' in store");
    return it->second;
}

const SequenceRecord* SeqStore::find_by_fingerprint(const Digest32& fp) const {
    for (const auto& [_, rec] : records_)
        if (rec.fingerprint == fp) return &rec;
    return nullptr;
}

std::vector<std::reference_wrapper<const SequenceRecord>> SeqStore::list()
    const {
    std::vector<std::reference_wrapper<const SequenceRecord>> out;
    out.reserve(records_.size());
    for (const auto& [_, rec] : records_) out.push_back(std::cref(rec));
    return out;
}

}  // namespace decc

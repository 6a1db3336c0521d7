#include "skg/snapshot_io.hpp"

#include <cstring>
#include <fstream>
#include <limits>

#include <zlib.h>

namespace skg {

namespace {

constexpr char kMagic[8] = {'S', 'K', 'G', 'S', 'N', 'A', 'P', '\0'};
constexpr std::uint32_t kVersion = 1;

class Writer {
public:
    void u8(std::uint8_t v) { buf_.push_back(static_cast<char>(v)); }
    void u32(std::uint32_t v) {
        for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
    }
    void str(const std::string& s) {
        u32(static_cast<std::uint32_t>(s.size()));
        buf_.append(s);
    }
    const std::string& data() const { return buf_; }

private:
    std::string buf_;
};

class Reader {
public:
    explicit Reader(std::string data) : data_(std::move(data)) {}

    std::uint8_t u8() {
        need(1);
        return static_cast<std::uint8_t>(data_[pos_++]);
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) {
            v |= static_cast<std::uint32_t>(static_cast<unsigned char>(data_[pos_ + i]))
                 << (8 * i);
        }
        pos_ += 4;
        return v;
    }
    std::string str() {
        const std::uint32_t len = u32();
        need(len);
        std::string s = data_.substr(pos_, len);
        pos_ += len;
        return s;
    }
    bool exhausted() const { return pos_ == data_.size(); }

private:
    void need(std::size_t n) {
        if (pos_ + n > data_.size()) {
            throw Error(ErrorKind::corrupt_snapshot, "snapshot file truncated");
        }
    }

    std::string data_;
    std::size_t pos_ = 0;
};

std::uint32_t checksum(const std::string& payload) {
    return static_cast<std::uint32_t>(
        ::crc32(0L, reinterpret_cast<const Bytef*>(payload.data()),
                static_cast<uInt>(payload.size())));
}

} // namespace

// Has private access to IndexSnapshot/FieldIndex internals.
class SnapshotCodec {
public:
    static std::string encode(const IndexSnapshot& s) {
        Writer w;
        w.u32(s.doc_count_);
        w.u8(s.schema_.closed() ? 1 : 0);
        w.u32(static_cast<std::uint32_t>(s.schema_.fields().size()));
        for (const auto& f : s.schema_.fields()) {
            w.str(f.name);
            w.u8(f.kind == FieldKind::analyzed_text ? 0 : 1);
        }
        for (const auto& id : s.external_ids_) w.str(id);
        for (const auto& fi : s.fields_) {
            w.u32(fi.term_count());
            for (std::uint32_t t = 0; t < fi.term_count(); ++t) {
                w.str(fi.terms_[t]);
                const auto& entries = fi.postings_[t].entries;
                w.u32(static_cast<std::uint32_t>(entries.size()));
                for (const auto& e : entries) {
                    w.u32(e.doc);
                    w.u32(static_cast<std::uint32_t>(e.positions.size()));
                    for (std::uint32_t p : e.positions) w.u32(p);
                }
            }
            for (DocId d = 0; d < s.doc_count_; ++d) {
                const auto& terms = fi.forward_[d];
                w.u32(static_cast<std::uint32_t>(terms.size()));
                for (std::uint32_t t : terms) w.u32(t);
            }
        }
        return w.data();
    }

    static SnapshotPtr decode(std::string payload) {
        Reader r(std::move(payload));
        auto snap = std::make_shared<IndexSnapshot>();
        snap->doc_count_ = r.u32();
        const bool closed = r.u8() != 0;
        const std::uint32_t field_count = r.u32();
        std::vector<FieldSchema> fields;
        fields.reserve(field_count);
        for (std::uint32_t i = 0; i < field_count; ++i) {
            FieldSchema fs;
            fs.name = r.str();
            fs.kind = r.u8() == 0 ? FieldKind::analyzed_text : FieldKind::exact_string;
            fields.push_back(std::move(fs));
        }
        if (closed) {
            snap->schema_ = Schema(std::move(fields));
        } else {
            Schema open;
            for (auto& f : fields) open.add_field(std::move(f));
            snap->schema_ = std::move(open);
        }

        snap->external_ids_.reserve(snap->doc_count_);
        for (DocId d = 0; d < snap->doc_count_; ++d) {
            snap->external_ids_.push_back(r.str());
            snap->id_map_.emplace(snap->external_ids_.back(), d);
        }

        snap->fields_.resize(field_count);
        for (std::uint32_t i = 0; i < field_count; ++i) {
            FieldIndex& fi = snap->fields_[i];
            fi.schema_ = snap->schema_.fields()[i];
            const std::uint32_t term_count = r.u32();
            fi.terms_.reserve(term_count);
            fi.postings_.resize(term_count);
            for (std::uint32_t t = 0; t < term_count; ++t) {
                fi.terms_.push_back(r.str());
                const std::uint32_t entry_count = r.u32();
                auto& entries = fi.postings_[t].entries;
                entries.resize(entry_count);
                for (auto& e : entries) {
                    e.doc = r.u32();
                    const std::uint32_t pos_count = r.u32();
                    e.positions.resize(pos_count);
                    for (auto& p : e.positions) p = r.u32();
                }
            }
            fi.forward_.resize(snap->doc_count_);
            for (DocId d = 0; d < snap->doc_count_; ++d) {
                const std::uint32_t n = r.u32();
                auto& list = fi.forward_[d];
                list.resize(n);
                for (auto& t : list) {
                    t = r.u32();
                    if (t >= term_count) {
                        throw Error(ErrorKind::corrupt_snapshot,
                                    "forward index references unknown term");
                    }
                }
            }
        }
        if (!r.exhausted()) {
            throw Error(ErrorKind::corrupt_snapshot, "trailing bytes in snapshot");
        }
        return snap;
    }
};

void save_snapshot(const IndexSnapshot& snapshot, const std::filesystem::path& path) {
    const std::string payload = SnapshotCodec::encode(snapshot);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorKind::io, "cannot open for writing: " + path.string());
    }
    out.write(kMagic, sizeof(kMagic));
    Writer header;
    header.u32(kVersion);
    header.u32(checksum(payload));
    header.u32(static_cast<std::uint32_t>(payload.size()));
    out.write(header.data().data(),
              static_cast<std::streamsize>(header.data().size()));
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    if (!out) {
        throw Error(ErrorKind::io, "write failed: " + path.string());
    }
}

SnapshotPtr load_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::io, "cannot open for reading: " + path.string());
    }
    char magic[sizeof(kMagic)];
    if (!in.read(magic, sizeof(magic)) || std::memcmp(magic, kMagic, sizeof(magic)) != 0) {
        throw Error(ErrorKind::corrupt_snapshot, "bad snapshot magic: " + path.string());
    }
    char header[12];
    if (!in.read(header, sizeof(header))) {
        throw Error(ErrorKind::corrupt_snapshot, "snapshot header truncated");
    }
    auto read_u32 = [&](int offset) {
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) {
            v |= static_cast<std::uint32_t>(static_cast<unsigned char>(header[offset + i]))
                 << (8 * i);
        }
        return v;
    };
    const std::uint32_t version = read_u32(0);
    if (version != kVersion) {
        throw Error(ErrorKind::version_mismatch,
                    "snapshot version " + std::to_string(version) +
                        " is not supported (expected " + std::to_string(kVersion) + ")");
    }
    const std::uint32_t expected_crc = read_u32(4);
    const std::uint32_t payload_size = read_u32(8);
    std::string payload(payload_size, '\0');
    if (!in.read(payload.data(), static_cast<std::streamsize>(payload_size)) ||
        in.gcount() != static_cast<std::streamsize>(payload_size)) {
        throw Error(ErrorKind::corrupt_snapshot, "snapshot file truncated");
    }
    if (in.peek() != std::ifstream::traits_type::eof()) {
        throw Error(ErrorKind::corrupt_snapshot, "trailing bytes after snapshot");
    }
    if (checksum(payload) != expected_crc) {
        throw Error(ErrorKind::corrupt_snapshot, "snapshot checksum mismatch");
    }
    return SnapshotCodec::decode(std::move(payload));
}

} // namespace skg

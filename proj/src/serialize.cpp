#include "hyperminhash/serialize.hpp"

#include <zlib.h>

#include <algorithm>
#include <cstring>
#include <fstream>

#include "hyperminhash/errors.hpp"

namespace hmh {

namespace {

// MSB-first bit packing; field widths here never exceed q+1 <= 7 or r <= 32.
struct BitWriter {
    std::vector<uint8_t>& bytes;
    uint32_t used = 0;  // bits consumed in the final byte

    void append(uint64_t value, uint32_t width) {
        while (width > 0) {
            if (used == 0) bytes.push_back(0);
            const uint32_t room = 8 - used;
            const uint32_t take = std::min(room, width);
            const uint64_t chunk = (value >> (width - take)) & ((uint64_t{1} << take) - 1);
            bytes.back() |= static_cast<uint8_t>(chunk << (room - take));
            used = (used + take) & 7;
            width -= take;
        }
    }
};

struct BitReader {
    std::span<const uint8_t> bytes;
    uint64_t bit = 0;

    uint64_t read(uint32_t width) {
        uint64_t value = 0;
        while (width > 0) {
            const uint32_t offset = bit & 7;
            const uint32_t room = 8 - offset;
            const uint32_t take = std::min(room, width);
            const uint64_t chunk =
                (bytes[bit >> 3] >> (room - take)) & ((uint64_t{1} << take) - 1);
            value = (value << take) | chunk;
            bit += take;
            width -= take;
        }
        return value;
    }
};

void put_le(std::vector<uint8_t>& out, uint64_t value, size_t width) {
    for (size_t i = 0; i < width; ++i) out.push_back(static_cast<uint8_t>(value >> (8 * i)));
}

uint64_t get_le(std::span<const uint8_t> in, size_t offset, size_t width) {
    uint64_t value = 0;
    for (size_t i = 0; i < width; ++i) value |= uint64_t{in[offset + i]} << (8 * i);
    return value;
}

uint32_t checksum(std::span<const uint8_t> data) {
    return static_cast<uint32_t>(
        crc32(0, reinterpret_cast<const Bytef*>(data.data()),
              static_cast<uInt>(data.size())));
}

}  // namespace

size_t payload_bytes(const SketchParams& params) {
    return (params.bucket_count() * params.bucket_bits() + 7) / 8;
}

size_t encoded_size(const SketchParams& params) {
    return kHeaderSize + payload_bytes(params) + 4;
}

std::vector<uint8_t> serialize(const HmhSketch& sketch) {
    const SketchParams& params = sketch.params();
    std::vector<uint8_t> out;
    out.reserve(encoded_size(params));

    out.insert(out.end(), kMagic, kMagic + 4);
    out.push_back(kFormatVersion);
    out.push_back(static_cast<uint8_t>(params.p));
    out.push_back(static_cast<uint8_t>(params.q));
    out.push_back(static_cast<uint8_t>(params.r));
    char id[8] = {};
    params.hash_id.copy(id, sizeof(id));
    out.insert(out.end(), id, id + 8);
    put_le(out, params.seed, 8);

    BitWriter writer{out};
    for (uint64_t i = 0; i < sketch.bucket_count(); ++i) {
        const Bucket b = sketch.bucket(i);
        writer.append(b.exponent, params.q + 1);
        writer.append(b.mantissa, params.r);
    }
    out.resize(kHeaderSize + payload_bytes(params), 0);  // pad the final byte

    put_le(out, checksum(out), 4);
    return out;
}

HmhSketch deserialize(std::span<const uint8_t> bytes) {
    if (bytes.size() < kHeaderSize + 4) {
        throw FormatError("truncated sketch data");
    }
    if (std::memcmp(bytes.data(), kMagic, 4) != 0) {
        throw FormatError("bad magic; not a sketch file");
    }
    if (bytes[4] != kFormatVersion) {
        throw FormatError("unsupported format version " + std::to_string(bytes[4]));
    }

    SketchParams params;
    params.p = bytes[5];
    params.q = bytes[6];
    params.r = bytes[7];
    const char* id = reinterpret_cast<const char*>(bytes.data() + 8);
    params.hash_id.assign(id, id + strnlen(id, 8));
    params.seed = get_le(bytes, 16, 8);
    params.validate();  // ParamError on out-of-range parameter bytes

    const size_t expected = encoded_size(params);
    if (bytes.size() < expected) throw FormatError("truncated sketch data");
    if (bytes.size() > expected) throw FormatError("trailing bytes after sketch data");

    const uint32_t stored = static_cast<uint32_t>(get_le(bytes, expected - 4, 4));
    if (stored != checksum(bytes.first(expected - 4))) {
        throw FormatError("checksum mismatch; sketch data is corrupt");
    }

    HmhSketch sketch(params);
    BitReader reader{bytes.subspan(kHeaderSize, payload_bytes(params))};
    for (uint64_t i = 0; i < sketch.bucket_count(); ++i) {
        Bucket b;
        b.exponent = static_cast<uint32_t>(reader.read(params.q + 1));
        b.mantissa = static_cast<uint32_t>(reader.read(params.r));
        try {
            sketch.set_bucket(i, b);
        } catch (const ParamError&) {
            throw FormatError("invalid bucket encoding at index " + std::to_string(i));
        }
    }
    return sketch;
}

void save_sketch(const HmhSketch& sketch, const std::string& path) {
    const std::vector<uint8_t> bytes = serialize(sketch);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("failed writing " + path);
}

HmhSketch load_sketch(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path + " for reading");
    std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                               std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("failed reading " + path);
    return deserialize(bytes);
}

}  // namespace hmh

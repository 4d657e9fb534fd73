#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hyperminhash/sketch.hpp"

namespace hmh {

// Binary sketch format:
//   offset 0   magic "HMH1"
//   offset 4   format version (1 byte, currently 1)
//   offset 5   p, q, r (1 byte each)
//   offset 8   hash id, 8 bytes, NUL padded
//   offset 16  seed, 8 bytes little endian
//   offset 24  bucket payload: 2^p fields of q+1+r bits, packed MSB first
//              (exponent then mantissa), zero padded to a whole byte
//   then       CRC-32 (zlib polynomial) of everything above, little endian
inline constexpr char kMagic[4] = {'H', 'M', 'H', '1'};
inline constexpr uint8_t kFormatVersion = 1;
inline constexpr size_t kHeaderSize = 24;

// Payload size in bytes for a given configuration.
size_t payload_bytes(const SketchParams& params);

// Total encoded size: header + payload + CRC.
size_t encoded_size(const SketchParams& params);

std::vector<uint8_t> serialize(const HmhSketch& sketch);

// Validates magic, version, parameters, length and checksum before
// decoding; throws FormatError (or ParamError for out-of-range parameter
// bytes) instead of returning a partially filled sketch.
HmhSketch deserialize(std::span<const uint8_t> bytes);

// File helpers; wrap I/O failures in IoError with the path in the message.
void save_sketch(const HmhSketch& sketch, const std::string& path);
HmhSketch load_sketch(const std::string& path);

}  // namespace hmh

#pragma once

#include <stdexcept>
#include <string>

namespace hmh {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Parameter outside its supported range, or a derived field width that
// does not fit the storage word.
struct ParamError : Error {
    using Error::Error;
};

// Two sketches whose (p, q, r, seed, hash_id) tuples differ.
struct IncompatibleParamsError : Error {
    using Error::Error;
};

// Jaccard/intersection over two sketches with no occupied buckets.
struct EmptySketchError : Error {
    using Error::Error;
};

// Large-cardinality fallback with a zero register sum.
struct SaturatedSketchError : Error {
    using Error::Error;
};

// Cardinality too large for the collision approximation.
struct CardinalityRangeError : Error {
    using Error::Error;
};

// Malformed sketch file: bad magic, version, checksum, or payload.
struct FormatError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace hmh

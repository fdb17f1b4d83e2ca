#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "cosentinel/domain.hpp"

namespace cosentinel {

// Wire frame, one LF-terminated ASCII line per reading:
//
//   $COMO,<device_id>,<ts>,<lat>,<lng>,<ppm>*<CS>\n
//
// lat/lng carry exactly 6 fraction digits, ppm exactly 4. CS is the
// byte-wise XOR of everything strictly between '$' and '*', printed as
// two uppercase hex digits. Canonical frames re-encode to themselves
// byte for byte.

enum class DecodeErrorKind {
    MissingPrefix,  // line does not start with "$COMO,"
    BadChecksum,    // checksum missing, malformed, or mismatched
    FieldCount,     // payload does not split into exactly 5 fields
    NumericParse,   // a numeric field is not parseable
    RangeError,     // decoded values violate Reading invariants
};

struct DecodeError {
    DecodeErrorKind kind;
    std::size_t offset = 0;  // byte offset into the line, best effort
    std::string message;
};

std::string_view decode_error_name(DecodeErrorKind kind);

// Two uppercase hex digits of the XOR over all payload bytes.
std::string checksum_hex(std::string_view payload);

// Canonical frame line for a valid Reading, trailing LF included.
std::string encode_frame(const Reading& r);

using DecodeResult = std::variant<Reading, DecodeError>;

// Parses one frame line. Accepts 1-9 fraction digits on numeric fields
// and re-canonicalizes to the stored quantization; one trailing CR
// and/or LF is tolerated. Rejections report the first failure in the
// order: prefix, checksum, field count, numeric parse, range.
DecodeResult decode_frame(std::string_view line);

}  // namespace cosentinel

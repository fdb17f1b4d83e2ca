#include "cosentinel/protocol.hpp"

#include <array>
#include <cstdio>
#include <vector>

namespace cosentinel {

namespace {

constexpr std::string_view kHead = "$COMO,";

bool is_upper_hex(char c) {
    return (c >= '0' && c <= '9') || (c >= 'A' && c <= 'F');
}

bool is_digit(char c) {
    return c >= '0' && c <= '9';
}

constexpr long long pow10ll(int n) {
    long long v = 1;
    for (int i = 0; i < n; ++i) v *= 10;
    return v;
}

// Strict integer: optional '-', then digits only.
bool parse_ts(std::string_view s, std::int64_t& out) {
    bool neg = false;
    if (!s.empty() && s.front() == '-') {
        neg = true;
        s.remove_prefix(1);
    }
    if (s.empty() || s.size() > 18) return false;
    std::int64_t v = 0;
    for (char c : s) {
        if (!is_digit(c)) return false;
        v = v * 10 + (c - '0');
    }
    out = neg ? -v : v;
    return true;
}

// Strict decimal: optional '-', integer digits, '.', 1-9 fraction digits.
// Quantizes digit-exactly to `q` fraction digits (half away from zero).
// Integer parts too long to matter map to a huge sentinel so the range
// check downstream rejects them.
bool parse_decimal(std::string_view s, int q, double& out) {
    bool neg = false;
    if (!s.empty() && s.front() == '-') {
        neg = true;
        s.remove_prefix(1);
    }
    const auto dot = s.find('.');
    if (dot == std::string_view::npos || dot == 0) return false;
    const std::string_view int_part = s.substr(0, dot);
    const std::string_view frac_part = s.substr(dot + 1);
    if (frac_part.empty() || frac_part.size() > 9) return false;
    for (char c : int_part)
        if (!is_digit(c)) return false;
    for (char c : frac_part)
        if (!is_digit(c)) return false;
    if (int_part.size() > 9) {
        out = neg ? -1e30 : 1e30;
        return true;
    }
    long long ip = 0;
    for (char c : int_part) ip = ip * 10 + (c - '0');
    long long frac = 0;
    for (int i = 0; i < q; ++i)
        frac = frac * 10 + (i < static_cast<int>(frac_part.size()) ? frac_part[i] - '0' : 0);
    const bool round_up =
        static_cast<int>(frac_part.size()) > q && frac_part[static_cast<std::size_t>(q)] >= '5';
    long long scaled = ip * pow10ll(q) + frac + (round_up ? 1 : 0);
    if (neg) scaled = -scaled;
    out = static_cast<double>(scaled) / static_cast<double>(pow10ll(q));
    return true;
}

}  // namespace

std::string_view decode_error_name(DecodeErrorKind kind) {
    switch (kind) {
        case DecodeErrorKind::MissingPrefix: return "MissingPrefix";
        case DecodeErrorKind::BadChecksum: return "BadChecksum";
        case DecodeErrorKind::FieldCount: return "FieldCount";
        case DecodeErrorKind::NumericParse: return "NumericParse";
        case DecodeErrorKind::RangeError: return "RangeError";
    }
    return "?";
}

std::string checksum_hex(std::string_view payload) {
    unsigned char x = 0;
    for (char c : payload) x ^= static_cast<unsigned char>(c);
    char buf[3];
    std::snprintf(buf, sizeof buf, "%02X", x);
    return buf;
}

std::string encode_frame(const Reading& r) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "COMO,%s,%lld,%.6f,%.6f,%.4f", r.device_id.c_str(),
                  static_cast<long long>(r.ts), r.lat, r.lng, r.ppm);
    std::string payload(buf);
    std::string frame;
    frame.reserve(payload.size() + 5);
    frame += '$';
    frame += payload;
    frame += '*';
    frame += checksum_hex(payload);
    frame += '\n';
    return frame;
}

DecodeResult decode_frame(std::string_view line) {
    if (line.ends_with('\n')) line.remove_suffix(1);
    if (line.ends_with('\r')) line.remove_suffix(1);

    if (!line.starts_with(kHead))
        return DecodeError{DecodeErrorKind::MissingPrefix, 0, "expected \"$COMO,\" head"};

    const auto star = line.find('*', 1);
    if (star == std::string_view::npos)
        return DecodeError{DecodeErrorKind::BadChecksum, line.size(),
                           "missing '*' checksum delimiter"};
    const std::string_view cs = line.substr(star + 1);
    if (cs.size() != 2 || !is_upper_hex(cs[0]) || !is_upper_hex(cs[1]))
        return DecodeError{DecodeErrorKind::BadChecksum, star + 1,
                           "checksum must be exactly two uppercase hex digits"};
    const std::string_view payload = line.substr(1, star - 1);
    const std::string computed = checksum_hex(payload);
    if (cs != computed)
        return DecodeError{DecodeErrorKind::BadChecksum, star + 1,
                           "checksum mismatch, computed " + computed};

    // Split the payload; token 0 is the "COMO" head, the rest are fields.
    std::vector<std::string_view> tokens;
    std::vector<std::size_t> offsets;  // token start offsets within the line
    std::size_t begin = 0;
    for (std::size_t i = 0; i <= payload.size(); ++i) {
        if (i == payload.size() || payload[i] == ',') {
            tokens.push_back(payload.substr(begin, i - begin));
            offsets.push_back(1 + begin);
            begin = i + 1;
        }
    }
    if (tokens.size() != 6)
        return DecodeError{DecodeErrorKind::FieldCount, 0,
                           "expected 5 payload fields, got " + std::to_string(tokens.size() - 1)};

    Reading r;
    r.device_id = std::string(tokens[1]);
    if (!parse_ts(tokens[2], r.ts))
        return DecodeError{DecodeErrorKind::NumericParse, offsets[2],
                           "timestamp is not an integer"};
    struct Field {
        std::size_t index;
        int digits;
        double Reading::*member;
        const char* label;
    };
    const std::array<Field, 3> fields = {{
        {3, kCoordFractionDigits, &Reading::lat, "lat"},
        {4, kCoordFractionDigits, &Reading::lng, "lng"},
        {5, kPpmFractionDigits, &Reading::ppm, "ppm"},
    }};
    for (const auto& f : fields) {
        if (!parse_decimal(tokens[f.index], f.digits, r.*(f.member)))
            return DecodeError{DecodeErrorKind::NumericParse, offsets[f.index],
                               std::string(f.label) + " is not a decimal with 1-9 fraction digits"};
    }
    if (auto why = reading_violation(r))
        return DecodeError{DecodeErrorKind::RangeError, 0, *why};
    return r;
}

}  // namespace cosentinel

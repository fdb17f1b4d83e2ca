#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace cosentinel {

// One timestamped, geolocated CO measurement from one device.
// lat/lng are stored quantized to 6 fraction digits, ppm to 4;
// re-quantizing a stored value is a no-op.
struct Reading {
    std::string device_id;  // 1-16 chars, [A-Z0-9_-]
    std::int64_t ts = 0;    // unix seconds, >= 0
    double lat = 0.0;       // [-90, 90]
    double lng = 0.0;       // [-180, 180]
    double ppm = 0.0;       // [0, 10000]
};

inline constexpr int kCoordFractionDigits = 6;
inline constexpr int kPpmFractionDigits = 4;
inline constexpr double kMaxPpm = 10000.0;

// Round to the given number of fraction digits (half away from zero).
double quantize(double value, int fraction_digits);

// Empty optional when r satisfies all Reading invariants, otherwise a
// description of the first violated one.
std::optional<std::string> reading_violation(const Reading& r);

bool valid_device_id(std::string_view id);

// Quantizes coordinates/ppm and validates; throws std::invalid_argument
// on any invariant violation.
Reading make_reading(std::string device_id, std::int64_t ts, double lat, double lng, double ppm);

// Severity-ordered CO hazard bands. The numeric suffixes carry the
// exposure-duration wording of each band's description.
enum class HazardBand {
    Safe = 0,          // [0, 25) ppm
    LittleDanger45,    // [25, 30)
    Danger30,          // [30, 40)
    Danger30Heart,     // [40, 50)
    Danger30Headache,  // [50, 80)
    VeryDanger15,      // [80, inf)
};

inline constexpr int kBandCount = 6;

// Unique band whose half-open interval contains ppm.
// Throws std::invalid_argument for negative or non-finite input.
HazardBand classify(double ppm);

// Severity ordinal, Safe=0 .. VeryDanger15=5.
int severity(HazardBand band);

double band_lower_bound(HazardBand band);
std::string_view band_name(HazardBand band);
std::optional<HazardBand> band_from_name(std::string_view name);

// Human-readable hazard text for the band.
std::string_view band_description(HazardBand band);

// One row of the WHO exposure table: safe for at most max_minutes at
// concentrations up to ppm_ceiling.
struct ExposureLimit {
    double ppm_ceiling;
    int max_minutes;
};

// The WHO table: (8, 480), (24, 60), (48, 30), (80, 15).
std::span<const ExposureLimit> who_exposure_limits();

// Maximum safe exposure in minutes; 0 above the 80 ppm tier.
// Throws std::invalid_argument for negative or non-finite input.
int max_safe_exposure(double ppm);

}  // namespace cosentinel

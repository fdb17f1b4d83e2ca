#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cosentinel/bucket.hpp"
#include "cosentinel/domain.hpp"

namespace cosentinel {

// Virtual sensor attached to one site: emission coordinates plus the
// per-bucket concentration profile it reproduces.
struct SiteProfile {
    std::string site_id;
    std::string device_id;
    double lat = 0.0;
    double lng = 0.0;
    std::array<double, 3> bucket_means{};   // Morning, Noon, Afternoon ppm
    std::optional<double> noise_sigma;      // empty: 10% of each bucket mean
    int readings_per_bucket = 6;
};

struct CampaignConfig {
    std::vector<SiteProfile> profiles;
    int days = 5;
    std::uint64_t seed = 0;
    int tz_offset_minutes = kDefaultTzOffsetMinutes;
    std::string start_date = "2020-03-01";  // local calendar date
};

// The five built-in campaign sites with their table means, DEV01..DEV05.
std::vector<SiteProfile> default_profiles();

// Parses a profiles CSV with header
// `site_id,device_id,lat,lng,morning,noon,afternoon,sigma,per_bucket`
// (sigma may be empty for the 10%-of-mean default). Throws
// std::runtime_error on malformed input.
std::vector<SiteProfile> parse_profiles(std::istream& in);
std::vector<SiteProfile> load_profiles(const std::string& path);

// Deterministic multi-day campaign: for every day x site x bucket,
// readings_per_bucket readings evenly spaced inside the bucket's
// local-time window, ppm drawn from max(0, N(mean, sigma)) and
// quantized to 4 digits. Output is ordered by timestamp, then site_id.
// Throws std::invalid_argument on an invalid config.
std::vector<Reading> generate_campaign(const CampaignConfig& cfg);

// Write failure partway through an emit; carries the emitted count.
struct TransportError : std::runtime_error {
    TransportError(const std::string& what, std::size_t emitted_count)
        : std::runtime_error(what), emitted(emitted_count) {}
    std::size_t emitted;
};

// Encodes each reading as one frame line on the sink. Returns the
// count; throws TransportError on write failure.
std::size_t emit_frames(const std::vector<Reading>& readings, std::ostream& sink);

}  // namespace cosentinel

#include "cosentinel/domain.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace cosentinel {

namespace {

constexpr std::array<double, 7> kScale = {1.0, 10.0, 100.0, 1000.0, 10000.0, 100000.0, 1000000.0};

struct BandRow {
    HazardBand band;
    double lower_ppm;
    std::string_view name;
    std::string_view description;
};

constexpr std::array<BandRow, kBandCount> kBands = {{
    {HazardBand::Safe, 0.0, "Safe", "Classified as safe for human"},
    {HazardBand::LittleDanger45, 25.0, "LittleDanger45",
     "A little dangerous if we are in the room for more than 45 minutes"},
    {HazardBand::Danger30, 30.0, "Danger30",
     "Classified as dangerous if we are outside the room for more than 30 minutes"},
    {HazardBand::Danger30Heart, 40.0, "Danger30Heart",
     "Classified as dangerous if we are outside the room for more than 30 minutes, "
     "can interfere with the function of the heart"},
    {HazardBand::Danger30Headache, 50.0, "Danger30Headache",
     "Classified as dangerous if we are outside the room for more than 30 minutes, "
     "can make headaches"},
    {HazardBand::VeryDanger15, 80.0, "VeryDanger15",
     "Very dangerous if inhalation of more than 15 minutes, will make it difficult to breathe"},
}};

constexpr std::array<ExposureLimit, 4> kWhoLimits = {{
    {8.0, 480},
    {24.0, 60},
    {48.0, 30},
    {80.0, 15},
}};

const BandRow& row(HazardBand band) {
    return kBands[static_cast<std::size_t>(band)];
}

void require_concentration(double ppm) {
    if (!std::isfinite(ppm)) throw std::invalid_argument("ppm must be finite");
    if (ppm < 0.0) throw std::invalid_argument("ppm must be non-negative");
}

}  // namespace

double quantize(double value, int fraction_digits) {
    const double scale = kScale.at(static_cast<std::size_t>(fraction_digits));
    return static_cast<double>(std::llround(value * scale)) / scale;
}

bool valid_device_id(std::string_view id) {
    if (id.empty() || id.size() > 16) return false;
    for (char c : id) {
        const bool ok = (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '-';
        if (!ok) return false;
    }
    return true;
}

std::optional<std::string> reading_violation(const Reading& r) {
    if (!valid_device_id(r.device_id))
        return "device_id must be 1-16 chars of [A-Z0-9_-]";
    if (r.ts < 0) return "ts must be >= 0";
    if (!std::isfinite(r.lat) || r.lat < -90.0 || r.lat > 90.0)
        return "lat out of [-90, 90]";
    if (!std::isfinite(r.lng) || r.lng < -180.0 || r.lng > 180.0)
        return "lng out of [-180, 180]";
    if (!std::isfinite(r.ppm) || r.ppm < 0.0 || r.ppm > kMaxPpm)
        return "ppm out of [0, 10000]";
    return std::nullopt;
}

Reading make_reading(std::string device_id, std::int64_t ts, double lat, double lng, double ppm) {
    Reading r;
    r.device_id = std::move(device_id);
    r.ts = ts;
    if (std::isfinite(lat)) lat = quantize(lat, kCoordFractionDigits);
    if (std::isfinite(lng)) lng = quantize(lng, kCoordFractionDigits);
    if (std::isfinite(ppm)) ppm = quantize(ppm, kPpmFractionDigits);
    r.lat = lat;
    r.lng = lng;
    r.ppm = ppm;
    if (auto why = reading_violation(r)) throw std::invalid_argument(*why);
    return r;
}

HazardBand classify(double ppm) {
    require_concentration(ppm);
    for (std::size_t i = kBands.size(); i-- > 1;) {
        if (ppm >= kBands[i].lower_ppm) return kBands[i].band;
    }
    return HazardBand::Safe;
}

int severity(HazardBand band) {
    return static_cast<int>(band);
}

double band_lower_bound(HazardBand band) {
    return row(band).lower_ppm;
}

std::string_view band_name(HazardBand band) {
    return row(band).name;
}

std::optional<HazardBand> band_from_name(std::string_view name) {
    for (const auto& b : kBands) {
        if (b.name == name) return b.band;
    }
    return std::nullopt;
}

std::string_view band_description(HazardBand band) {
    return row(band).description;
}

std::span<const ExposureLimit> who_exposure_limits() {
    return kWhoLimits;
}

int max_safe_exposure(double ppm) {
    require_concentration(ppm);
    for (const auto& limit : kWhoLimits) {
        if (ppm <= limit.ppm_ceiling) return limit.max_minutes;
    }
    return 0;
}

}  // namespace cosentinel

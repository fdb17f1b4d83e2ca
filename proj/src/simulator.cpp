#include "cosentinel/simulator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "cosentinel/protocol.hpp"

namespace cosentinel {

namespace {

constexpr const char* kProfilesHeader =
    "site_id,device_id,lat,lng,morning,noon,afternoon,sigma,per_bucket";

// Local calendar date -> days since the unix epoch (local).
std::int64_t parse_start_date_days(const std::string& date) {
    int y = 0;
    unsigned m = 0, d = 0;
    char extra = 0;
    if (std::sscanf(date.c_str(), "%d-%u-%u%c", &y, &m, &d, &extra) != 3)
        throw std::invalid_argument("start_date must be YYYY-MM-DD, got \"" + date + "\"");
    const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m},
                                          std::chrono::day{d}};
    if (!ymd.ok()) throw std::invalid_argument("start_date is not a valid date: " + date);
    return std::chrono::sys_days{ymd}.time_since_epoch().count();
}

void validate_config(const CampaignConfig& cfg) {
    if (cfg.days < 1) throw std::invalid_argument("days must be >= 1");
    if (cfg.profiles.empty()) throw std::invalid_argument("profiles must be non-empty");
    for (const auto& p : cfg.profiles) {
        const std::string who = "profile " + (p.site_id.empty() ? "(unnamed)" : p.site_id);
        if (p.site_id.empty()) throw std::invalid_argument(who + ": empty site_id");
        if (!valid_device_id(p.device_id))
            throw std::invalid_argument(who + ": bad device_id \"" + p.device_id + "\"");
        if (!std::isfinite(p.lat) || p.lat < -90.0 || p.lat > 90.0)
            throw std::invalid_argument(who + ": lat out of [-90, 90]");
        if (!std::isfinite(p.lng) || p.lng < -180.0 || p.lng > 180.0)
            throw std::invalid_argument(who + ": lng out of [-180, 180]");
        for (double mean : p.bucket_means) {
            if (!std::isfinite(mean) || mean < 0.0 || mean > kMaxPpm)
                throw std::invalid_argument(who + ": bucket mean out of [0, 10000]");
        }
        if (p.noise_sigma && (!std::isfinite(*p.noise_sigma) || *p.noise_sigma < 0.0))
            throw std::invalid_argument(who + ": noise_sigma must be >= 0");
        if (p.readings_per_bucket < 1)
            throw std::invalid_argument(who + ": readings_per_bucket must be >= 1");
    }
    parse_start_date_days(cfg.start_date);
}

double parse_number(const std::string& s, const char* label, std::size_t line_no) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("profiles csv line " + std::to_string(line_no) + ": bad " +
                                 label + " value \"" + s + "\"");
    }
}

}  // namespace

std::vector<SiteProfile> default_profiles() {
    struct Row {
        const char* site_id;
        const char* device_id;
        double lat, lng;
        std::array<double, 3> means;
    };
    static constexpr Row kRows[] = {
        {"SITE-UNSIKA", "DEV01", -6.323799, 107.306427, {32.916, 36.0164, 46.7436}},
        {"SITE-UBP", "DEV02", -6.323513, 107.301137, {30.134, 30.3468, 41.23}},
        {"SITE-SKYBRIDGE", "DEV03", -6.327190, 107.291857, {26.9292, 31.6068, 41.5176}},
        {"SITE-BINTANGALAM", "DEV04", -6.332336, 107.312257, {39.0796, 62.3468, 89.79}},
        {"SITE-MCD", "DEV05", -6.329349, 107.296362, {24.038, 32.0756, 28.7016}},
    };
    std::vector<SiteProfile> profiles;
    for (const auto& row : kRows) {
        SiteProfile p;
        p.site_id = row.site_id;
        p.device_id = row.device_id;
        p.lat = row.lat;
        p.lng = row.lng;
        p.bucket_means = row.means;
        profiles.push_back(std::move(p));
    }
    return profiles;
}

std::vector<SiteProfile> parse_profiles(std::istream& in) {
    std::vector<SiteProfile> profiles;
    std::string line;
    std::size_t line_no = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!saw_header) {
            if (line != kProfilesHeader)
                throw std::runtime_error(std::string("profiles csv: expected header ") +
                                         kProfilesHeader);
            saw_header = true;
            continue;
        }
        std::vector<std::string> cols;
        std::string cur;
        for (char c : line) {
            if (c == ',') {
                cols.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
        cols.push_back(cur);
        if (cols.size() != 9)
            throw std::runtime_error("profiles csv line " + std::to_string(line_no) +
                                     ": expected 9 columns, got " + std::to_string(cols.size()));
        SiteProfile p;
        p.site_id = cols[0];
        p.device_id = cols[1];
        p.lat = parse_number(cols[2], "lat", line_no);
        p.lng = parse_number(cols[3], "lng", line_no);
        p.bucket_means[0] = parse_number(cols[4], "morning", line_no);
        p.bucket_means[1] = parse_number(cols[5], "noon", line_no);
        p.bucket_means[2] = parse_number(cols[6], "afternoon", line_no);
        if (!cols[7].empty()) p.noise_sigma = parse_number(cols[7], "sigma", line_no);
        p.readings_per_bucket = static_cast<int>(parse_number(cols[8], "per_bucket", line_no));
        profiles.push_back(std::move(p));
    }
    if (!saw_header) throw std::runtime_error("profiles csv: missing header row");
    return profiles;
}

std::vector<SiteProfile> load_profiles(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open profiles csv: " + path);
    return parse_profiles(in);
}

std::vector<Reading> generate_campaign(const CampaignConfig& cfg) {
    validate_config(cfg);
    const std::int64_t day0 = parse_start_date_days(cfg.start_date);
    std::mt19937_64 rng(cfg.seed);

    struct Keyed {
        Reading reading;
        const std::string* site_id;
    };
    std::vector<Keyed> generated;
    for (int day = 0; day < cfg.days; ++day) {
        for (const auto& p : cfg.profiles) {
            for (int b = 0; b < 3; ++b) {
                const double mean = p.bucket_means[static_cast<std::size_t>(b)];
                const double sigma = p.noise_sigma.value_or(0.1 * mean);
                const std::int64_t win_start = kBucketStartHour[b] * 3600LL;
                const std::int64_t win_len = (kBucketEndHour[b] - kBucketStartHour[b]) * 3600LL;
                const int n = p.readings_per_bucket;
                std::normal_distribution<double> noise(mean, sigma > 0.0 ? sigma : 1.0);
                for (int i = 0; i < n; ++i) {
                    const std::int64_t slot =
                        win_start + ((2LL * i + 1) * win_len) / (2LL * n);
                    const std::int64_t local_s = (day0 + day) * 86400LL + slot;
                    const std::int64_t ts =
                        local_s - static_cast<std::int64_t>(cfg.tz_offset_minutes) * 60;
                    double ppm = sigma > 0.0 ? noise(rng) : mean;
                    ppm = std::clamp(ppm, 0.0, kMaxPpm);
                    generated.push_back(
                        {make_reading(p.device_id, ts, p.lat, p.lng, ppm), &p.site_id});
                }
            }
        }
    }
    std::stable_sort(generated.begin(), generated.end(), [](const Keyed& a, const Keyed& b) {
        if (a.reading.ts != b.reading.ts) return a.reading.ts < b.reading.ts;
        return *a.site_id < *b.site_id;
    });
    std::vector<Reading> readings;
    readings.reserve(generated.size());
    for (auto& k : generated) readings.push_back(std::move(k.reading));
    return readings;
}

std::size_t emit_frames(const std::vector<Reading>& readings, std::ostream& sink) {
    std::size_t emitted = 0;
    for (const auto& r : readings) {
        sink << encode_frame(r);
        if (!sink) throw TransportError("sink write failure", emitted);
        ++emitted;
    }
    sink.flush();
    if (!sink) throw TransportError("sink flush failure", emitted);
    return emitted;
}

}  // namespace cosentinel

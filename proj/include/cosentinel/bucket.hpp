#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

namespace cosentinel {

// Local-time aggregation window. Morning [06:00,11:00), Noon
// [11:00,15:00), Afternoon [15:00,19:00); anything else is Other.
enum class Bucket { Morning, Noon, Afternoon, Other };

inline constexpr int kDefaultTzOffsetMinutes = 420;  // UTC+7

inline constexpr int kBucketStartHour[3] = {6, 11, 15};
inline constexpr int kBucketEndHour[3] = {11, 15, 19};

inline Bucket bucket_of(std::int64_t ts, int tz_offset_minutes) {
    const std::int64_t local = ts + static_cast<std::int64_t>(tz_offset_minutes) * 60;
    const std::int64_t sec_of_day = ((local % 86400) + 86400) % 86400;
    const int h = static_cast<int>(sec_of_day / 3600);
    if (h >= 6 && h < 11) return Bucket::Morning;
    if (h >= 11 && h < 15) return Bucket::Noon;
    if (h >= 15 && h < 19) return Bucket::Afternoon;
    return Bucket::Other;
}

inline std::string_view bucket_name(Bucket b) {
    switch (b) {
        case Bucket::Morning: return "Morning";
        case Bucket::Noon: return "Noon";
        case Bucket::Afternoon: return "Afternoon";
        case Bucket::Other: return "Other";
    }
    return "?";
}

inline std::optional<Bucket> bucket_from_name(std::string_view name) {
    if (name == "Morning") return Bucket::Morning;
    if (name == "Noon") return Bucket::Noon;
    if (name == "Afternoon") return Bucket::Afternoon;
    if (name == "Other") return Bucket::Other;
    return std::nullopt;
}

}  // namespace cosentinel

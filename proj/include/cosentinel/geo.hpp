#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cosentinel {

inline constexpr double kEarthRadiusM = 6371000.0;
inline constexpr double kDefaultMatchRadiusM = 150.0;

// Named monitoring location.
struct Site {
    std::string site_id;
    std::string name;
    double lat = 0.0;
    double lng = 0.0;
};

struct SiteRegistry {
    std::vector<Site> sites;
    double match_radius_m = kDefaultMatchRadiusM;
};

// Great-circle distance in meters on a sphere of radius kEarthRadiusM.
// Throws std::invalid_argument for out-of-range coordinates.
double haversine_m(double lat1, double lng1, double lat2, double lng2);

// Site with minimal distance to the point, if that distance is within
// the registry match radius; ties go to the earlier registry entry.
// Throws std::invalid_argument for an invalid point or empty registry.
std::optional<std::string> nearest_site(double lat, double lng, const SiteRegistry& reg);

// Parses a sites CSV with header `site_id,name,lat,lng`. Throws
// std::runtime_error on malformed rows or duplicate site ids.
SiteRegistry parse_site_registry(std::istream& in);

// Loads a sites CSV from disk. Throws std::runtime_error if the file is
// missing or malformed.
SiteRegistry load_site_registry(const std::string& path);

// The built-in five-site campaign registry.
SiteRegistry default_registry();

}  // namespace cosentinel

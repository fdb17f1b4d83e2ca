#include "cosentinel/geo.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace cosentinel {

namespace {

constexpr double kPi = 3.14159265358979323846;

double to_rad(double deg) {
    return deg * kPi / 180.0;
}

void require_point(double lat, double lng) {
    if (!std::isfinite(lat) || lat < -90.0 || lat > 90.0)
        throw std::invalid_argument("lat out of [-90, 90]");
    if (!std::isfinite(lng) || lng < -180.0 || lng > 180.0)
        throw std::invalid_argument("lng out of [-180, 180]");
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

double parse_coord(const std::string& s, const char* label, std::size_t line_no) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("sites csv line " + std::to_string(line_no) + ": bad " + label +
                                 " value \"" + s + "\"");
    }
}

}  // namespace

double haversine_m(double lat1, double lng1, double lat2, double lng2) {
    require_point(lat1, lng1);
    require_point(lat2, lng2);
    const double p1 = to_rad(lat1);
    const double p2 = to_rad(lat2);
    const double dp = to_rad(lat2 - lat1);
    const double dl = to_rad(lng2 - lng1);
    const double sp = std::sin(dp / 2.0);
    const double sl = std::sin(dl / 2.0);
    double a = sp * sp + std::cos(p1) * std::cos(p2) * sl * sl;
    a = std::min(1.0, std::max(0.0, a));
    return 2.0 * kEarthRadiusM * std::asin(std::sqrt(a));
}

std::optional<std::string> nearest_site(double lat, double lng, const SiteRegistry& reg) {
    require_point(lat, lng);
    if (reg.sites.empty()) throw std::invalid_argument("site registry is empty");
    const Site* best = nullptr;
    double best_d = std::numeric_limits<double>::infinity();
    for (const auto& s : reg.sites) {
        const double d = haversine_m(lat, lng, s.lat, s.lng);
        if (d < best_d) {
            best_d = d;
            best = &s;
        }
    }
    if (best_d <= reg.match_radius_m) return best->site_id;
    return std::nullopt;
}

SiteRegistry parse_site_registry(std::istream& in) {
    SiteRegistry reg;
    std::string line;
    std::size_t line_no = 0;
    std::unordered_set<std::string> seen;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!saw_header) {
            if (line != "site_id,name,lat,lng")
                throw std::runtime_error("sites csv: expected header site_id,name,lat,lng");
            saw_header = true;
            continue;
        }
        const auto cols = split_csv_line(line);
        if (cols.size() != 4)
            throw std::runtime_error("sites csv line " + std::to_string(line_no) +
                                     ": expected 4 columns, got " + std::to_string(cols.size()));
        Site s;
        s.site_id = cols[0];
        s.name = cols[1];
        s.lat = parse_coord(cols[2], "lat", line_no);
        s.lng = parse_coord(cols[3], "lng", line_no);
        if (s.site_id.empty())
            throw std::runtime_error("sites csv line " + std::to_string(line_no) +
                                     ": empty site_id");
        if (!seen.insert(s.site_id).second)
            throw std::runtime_error("sites csv line " + std::to_string(line_no) +
                                     ": duplicate site_id \"" + s.site_id + "\"");
        try {
            require_point(s.lat, s.lng);
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error("sites csv line " + std::to_string(line_no) + ": " + e.what());
        }
        reg.sites.push_back(std::move(s));
    }
    if (!saw_header) throw std::runtime_error("sites csv: missing header row");
    return reg;
}

SiteRegistry load_site_registry(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open sites csv: " + path);
    return parse_site_registry(in);
}

SiteRegistry default_registry() {
    SiteRegistry reg;
    reg.sites = {
        {"SITE-UNSIKA", "Campus Unsika", -6.323799, 107.306427},
        {"SITE-UBP", "Campus UBP", -6.323513, 107.301137},
        {"SITE-SKYBRIDGE", "Sky Bridge 2 Galuh Mas", -6.327190, 107.291857},
        {"SITE-BINTANGALAM", "Traffic Light Bintang Alam", -6.332336, 107.312257},
        {"SITE-MCD", "MCD Galuh Mas", -6.329349, 107.296362},
    };
    return reg;
}

}  // namespace cosentinel

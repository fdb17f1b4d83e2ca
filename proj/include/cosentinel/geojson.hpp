#pragma once

#include <string>

#include "cosentinel/geo.hpp"
#include "cosentinel/report.hpp"

namespace cosentinel {

// RFC 7946 FeatureCollection with one Point feature per reported site,
// in registry order. Coordinates are [lng, lat]; feature properties
// carry the site name and per-bucket mean/count/band/description.
// Throws std::runtime_error when the report references a site_id the
// registry does not contain.
std::string export_geojson(const CampaignReport& rep, const SiteRegistry& reg);

}  // namespace cosentinel

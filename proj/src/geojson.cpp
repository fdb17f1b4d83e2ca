#include "cosentinel/geojson.hpp"

#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

namespace cosentinel {

std::string export_geojson(const CampaignReport& rep, const SiteRegistry& reg) {
    std::unordered_map<std::string, const Site*> by_id;
    for (const auto& s : reg.sites) by_id.emplace(s.site_id, &s);
    for (const auto& [site_id, buckets] : rep.cells) {
        if (!by_id.count(site_id))
            throw std::runtime_error("report references unknown site_id: " + site_id);
    }

    nlohmann::ordered_json doc;
    doc["type"] = "FeatureCollection";
    doc["features"] = nlohmann::ordered_json::array();
    for (const auto& site : reg.sites) {
        const auto it = rep.cells.find(site.site_id);
        if (it == rep.cells.end()) continue;
        nlohmann::ordered_json feature;
        feature["type"] = "Feature";
        feature["geometry"]["type"] = "Point";
        feature["geometry"]["coordinates"] = {site.lng, site.lat};
        auto& props = feature["properties"];
        props["site_id"] = site.site_id;
        props["name"] = site.name;
        auto& bucket_props = props["buckets"];
        bucket_props = nlohmann::ordered_json::object();
        for (const auto& [bucket, cell] : it->second) {
            nlohmann::ordered_json b;
            b["mean_ppm"] = cell.mean_ppm;
            b["count"] = cell.count;
            b["band"] = band_name(cell.band);
            b["description"] = band_description(cell.band);
            bucket_props[std::string(bucket_name(bucket))] = std::move(b);
        }
        doc["features"].push_back(std::move(feature));
    }
    return doc.dump(2) + "\n";
}

}  // namespace cosentinel

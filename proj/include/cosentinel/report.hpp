#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cosentinel/bucket.hpp"
#include "cosentinel/domain.hpp"
#include "cosentinel/ingest.hpp"

namespace cosentinel {

// One (site, bucket) aggregation cell.
struct ReportCell {
    double mean_ppm = 0.0;
    std::size_t count = 0;
    HazardBand band = HazardBand::Safe;
};

// Per-site, per-bucket campaign aggregation. Only site-assigned
// readings in the Morning/Noon/Afternoon windows contribute to cells;
// everything else is counted in the footnote totals.
struct CampaignReport {
    std::map<std::string, std::map<Bucket, ReportCell>> cells;  // site_id -> bucket -> cell
    std::size_t other_bucket_count = 0;
    std::size_t unassigned_count = 0;
    std::int64_t first_ts = 0;
    std::int64_t last_ts = 0;
    bool has_span = false;
    int tz_offset_minutes = kDefaultTzOffsetMinutes;
};

struct SummaryCell {
    double mean_ppm = 0.0;
    std::size_t site_count = 0;
    HazardBand band = HazardBand::Safe;
};

// Per-bucket unweighted mean of the per-site means.
struct CrossSiteSummary {
    std::map<Bucket, SummaryCell> per_bucket;
};

CampaignReport campaign_report(const std::vector<EnrichedReading>& records,
                               int tz_offset_minutes = kDefaultTzOffsetMinutes);

CrossSiteSummary cross_site_summary(const CampaignReport& rep);

// Sites with at least one cell at or above min_band, ordered by
// descending maximum cell mean.
std::vector<std::string> recommend_sites(const CampaignReport& rep,
                                         HazardBand min_band = HazardBand::Danger30Heart);

// Mean rendered with up to 5 fraction digits, trailing zeros trimmed.
std::string format_mean(double mean_ppm);

// Aligned text table with summary and recommendation footer.
std::string render_report_table(const CampaignReport& rep,
                                HazardBand recommend_min_band = HazardBand::Danger30Heart);

// CSV `site_id,bucket,mean_ppm,count,band,description`; cross-site
// summary rows appended with site_id CROSS-SITE.
std::string render_report_csv(const CampaignReport& rep);

}  // namespace cosentinel

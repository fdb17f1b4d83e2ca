#include "cosentinel/report.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <sstream>

namespace cosentinel {

namespace {

constexpr Bucket kTableBuckets[3] = {Bucket::Morning, Bucket::Noon, Bucket::Afternoon};

std::string local_date_string(std::int64_t ts, int tz_offset_minutes) {
    const std::int64_t local = ts + static_cast<std::int64_t>(tz_offset_minutes) * 60;
    std::int64_t day_count = local / 86400;
    if (local % 86400 < 0) --day_count;
    const std::chrono::year_month_day ymd{std::chrono::sys_days{std::chrono::days{day_count}}};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

std::string tz_label(int tz_offset_minutes) {
    const char sign = tz_offset_minutes < 0 ? '-' : '+';
    const int abs_min = tz_offset_minutes < 0 ? -tz_offset_minutes : tz_offset_minutes;
    char buf[16];
    std::snprintf(buf, sizeof buf, "UTC%c%02d:%02d", sign, abs_min / 60, abs_min % 60);
    return buf;
}

std::string csv_field(std::string_view s) {
    const bool needs_quotes = s.find_first_of(",\"\n") != std::string_view::npos;
    if (!needs_quotes) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void pad_to(std::string& line, std::size_t width) {
    if (line.size() < width) line.append(width - line.size(), ' ');
}

}  // namespace

CampaignReport campaign_report(const std::vector<EnrichedReading>& records,
                               int tz_offset_minutes) {
    CampaignReport rep;
    rep.tz_offset_minutes = tz_offset_minutes;
    std::map<std::string, std::map<Bucket, std::pair<double, std::size_t>>> acc;
    for (const auto& er : records) {
        if (!rep.has_span || er.reading.ts < rep.first_ts) rep.first_ts = er.reading.ts;
        if (!rep.has_span || er.reading.ts > rep.last_ts) rep.last_ts = er.reading.ts;
        rep.has_span = true;
        if (er.bucket == Bucket::Other) {
            ++rep.other_bucket_count;
            continue;
        }
        if (!er.site_id) {
            ++rep.unassigned_count;
            continue;
        }
        auto& [sum, count] = acc[*er.site_id][er.bucket];
        sum += er.reading.ppm;
        ++count;
    }
    for (const auto& [site, buckets] : acc) {
        for (const auto& [bucket, sum_count] : buckets) {
            ReportCell cell;
            cell.count = sum_count.second;
            cell.mean_ppm = sum_count.first / static_cast<double>(sum_count.second);
            cell.band = classify(cell.mean_ppm);
            rep.cells[site][bucket] = cell;
        }
    }
    return rep;
}

CrossSiteSummary cross_site_summary(const CampaignReport& rep) {
    CrossSiteSummary summary;
    for (Bucket b : kTableBuckets) {
        double sum = 0.0;
        std::size_t n = 0;
        for (const auto& [site, buckets] : rep.cells) {
            const auto it = buckets.find(b);
            if (it == buckets.end()) continue;
            sum += it->second.mean_ppm;
            ++n;
        }
        if (n == 0) continue;
        SummaryCell cell;
        cell.mean_ppm = sum / static_cast<double>(n);
        cell.site_count = n;
        cell.band = classify(cell.mean_ppm);
        summary.per_bucket[b] = cell;
    }
    return summary;
}

std::vector<std::string> recommend_sites(const CampaignReport& rep, HazardBand min_band) {
    struct Candidate {
        std::string site_id;
        double max_mean;
    };
    std::vector<Candidate> hits;
    for (const auto& [site, buckets] : rep.cells) {
        bool qualifies = false;
        double max_mean = 0.0;
        for (const auto& [bucket, cell] : buckets) {
            if (severity(cell.band) >= severity(min_band)) qualifies = true;
            max_mean = std::max(max_mean, cell.mean_ppm);
        }
        if (qualifies) hits.push_back({site, max_mean});
    }
    std::sort(hits.begin(), hits.end(), [](const Candidate& a, const Candidate& b) {
        if (a.max_mean != b.max_mean) return a.max_mean > b.max_mean;
        return a.site_id < b.site_id;
    });
    std::vector<std::string> out;
    out.reserve(hits.size());
    for (auto& h : hits) out.push_back(std::move(h.site_id));
    return out;
}

std::string format_mean(double mean_ppm) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.5f", mean_ppm);
    std::string s(buf);
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
}

std::string render_report_table(const CampaignReport& rep, HazardBand recommend_min_band) {
    std::ostringstream out;
    out << "CO campaign report";
    if (rep.has_span) {
        out << "  " << local_date_string(rep.first_ts, rep.tz_offset_minutes) << " .. "
            << local_date_string(rep.last_ts, rep.tz_offset_minutes) << " ("
            << tz_label(rep.tz_offset_minutes) << ")";
    }
    out << "\n\n";

    std::size_t site_width = 7;
    for (const auto& [site, buckets] : rep.cells) site_width = std::max(site_width, site.size());
    site_width += 2;

    std::string header = "site_id";
    pad_to(header, site_width);
    header += "bucket     mean_ppm    count  band              description";
    out << header << "\n";
    for (const auto& [site, buckets] : rep.cells) {
        for (Bucket b : kTableBuckets) {
            const auto it = buckets.find(b);
            if (it == buckets.end()) continue;
            const ReportCell& cell = it->second;
            std::string line = site;
            pad_to(line, site_width);
            line += bucket_name(b);
            pad_to(line, site_width + 11);
            line += format_mean(cell.mean_ppm);
            pad_to(line, site_width + 23);
            line += std::to_string(cell.count);
            pad_to(line, site_width + 30);
            line += band_name(cell.band);
            pad_to(line, site_width + 48);
            line += band_description(cell.band);
            out << line << "\n";
        }
    }

    const CrossSiteSummary summary = cross_site_summary(rep);
    out << "\nCross-site summary (mean of site means):\n";
    for (const auto& [bucket, cell] : summary.per_bucket) {
        std::string line = "  ";
        line += bucket_name(bucket);
        pad_to(line, 13);
        line += format_mean(cell.mean_ppm);
        pad_to(line, 25);
        line += "sites=" + std::to_string(cell.site_count);
        pad_to(line, 35);
        line += band_name(cell.band);
        pad_to(line, 53);
        line += band_description(cell.band);
        out << line << "\n";
    }

    out << "\nRecommended for tree planting (band >= " << band_name(recommend_min_band) << "):\n";
    const auto recs = recommend_sites(rep, recommend_min_band);
    if (recs.empty()) {
        out << "  (none)\n";
    } else {
        for (const auto& site : recs) {
            double max_mean = 0.0;
            for (const auto& [bucket, cell] : rep.cells.at(site))
                max_mean = std::max(max_mean, cell.mean_ppm);
            std::string line = "  " + site;
            pad_to(line, 22);
            line += "max " + format_mean(max_mean);
            out << line << "\n";
        }
    }

    out << "\nExcluded: " << rep.other_bucket_count << " readings outside Morning/Noon/Afternoon, "
        << rep.unassigned_count << " without a site match\n";
    return out.str();
}

std::string render_report_csv(const CampaignReport& rep) {
    std::ostringstream out;
    out << "site_id,bucket,mean_ppm,count,band,description\n";
    for (const auto& [site, buckets] : rep.cells) {
        for (Bucket b : kTableBuckets) {
            const auto it = buckets.find(b);
            if (it == buckets.end()) continue;
            const ReportCell& cell = it->second;
            out << csv_field(site) << ',' << bucket_name(b) << ',' << format_mean(cell.mean_ppm)
                << ',' << cell.count << ',' << band_name(cell.band) << ','
                << csv_field(band_description(cell.band)) << "\n";
        }
    }
    const CrossSiteSummary summary = cross_site_summary(rep);
    for (const auto& [bucket, cell] : summary.per_bucket) {
        out << "CROSS-SITE," << bucket_name(bucket) << ',' << format_mean(cell.mean_ppm) << ','
            << cell.site_count << ',' << band_name(cell.band) << ','
            << csv_field(band_description(cell.band)) << "\n";
    }
    return out.str();
}

}  // namespace cosentinel

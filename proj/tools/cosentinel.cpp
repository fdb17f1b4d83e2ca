#include <atomic>
#include <cmath>
#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cosentinel/geo.hpp"
#include "cosentinel/geojson.hpp"
#include "cosentinel/ingest.hpp"
#include "cosentinel/protocol.hpp"
#include "cosentinel/report.hpp"
#include "cosentinel/simulator.hpp"

namespace {

using namespace cosentinel;

constexpr int kExitOk = 0;
constexpr int kExitOperational = 1;
constexpr int kExitUsage = 2;

std::atomic<bool> g_stop{false};

void on_signal(int) {
    g_stop.store(true);
}

// Flag value if given, else COSENTINEL_TZ_OFFSET_MIN, else UTC+7.
int resolve_tz(const CLI::Option* flag, int flag_value) {
    if (flag->count() > 0) return flag_value;
    if (const char* env = std::getenv("COSENTINEL_TZ_OFFSET_MIN")) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(env, &used);
            if (used == std::strlen(env)) return v;
        } catch (const std::exception&) {
        }
        throw CLI::ValidationError("COSENTINEL_TZ_OFFSET_MIN is not an integer");
    }
    return kDefaultTzOffsetMinutes;
}

SiteRegistry registry_from(const std::string& sites_path) {
    return sites_path.empty() ? default_registry() : load_site_registry(sites_path);
}

int write_output(const std::string& path, const std::string& data) {
    if (path == "-") {
        std::cout << data;
        std::cout.flush();
        return std::cout ? kExitOk : kExitOperational;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "cannot open output file: " << path << "\n";
        return kExitOperational;
    }
    out << data;
    out.flush();
    if (!out) {
        std::cerr << "write failure: " << path << "\n";
        return kExitOperational;
    }
    return kExitOk;
}

int run_simulate(const std::string& sites, int days, const CLI::Option* sigma_opt, double sigma,
                 std::uint64_t seed, const CLI::Option* per_bucket_opt, int per_bucket,
                 const std::string& out_path, const std::string& start_date, int tz) {
    CampaignConfig cfg;
    cfg.profiles = sites.empty() ? default_profiles() : load_profiles(sites);
    cfg.days = days;
    cfg.seed = seed;
    cfg.tz_offset_minutes = tz;
    cfg.start_date = start_date;
    for (auto& p : cfg.profiles) {
        if (sigma_opt->count() > 0) p.noise_sigma = sigma;
        if (per_bucket_opt->count() > 0) p.readings_per_bucket = per_bucket;
    }
    const auto readings = generate_campaign(cfg);

    std::size_t emitted = 0;
    if (out_path == "-") {
        emitted = emit_frames(readings, std::cout);
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "cannot open output file: " << out_path << "\n";
            return kExitOperational;
        }
        emitted = emit_frames(readings, out);
    }
    std::cerr << "simulate: wrote " << emitted << " frames\n";
    return kExitOk;
}

void print_stats(const IngestStats& stats) {
    std::cerr << "ingest: accepted " << stats.accepted << ", rejected " << stats.rejected << "\n";
    for (const auto& [kind, n] : stats.rejects_by_variant)
        std::cerr << "  " << decode_error_name(kind) << ": " << n << "\n";
}

int run_ingest(const std::string& in_path, const CLI::Option* listen_opt, int listen_port,
               const std::string& sites, const std::string& store_path, int tz) {
    const SiteRegistry reg = registry_from(sites);
    StoreWriter store(store_path);
    IngestStats stats;
    if (listen_opt->count() > 0) {
        std::signal(SIGINT, on_signal);
        std::signal(SIGTERM, on_signal);
        int bound = 0;
        std::cerr << "ingest: listening on port "
                  << (listen_port == 0 ? "(ephemeral)" : std::to_string(listen_port))
                  << ", stop with SIGINT/SIGTERM\n";
        stats = ingest_listen(listen_port, reg, store, tz, g_stop, &bound, &std::cerr);
    } else if (in_path == "-") {
        stats = ingest_stream(std::cin, reg, store, tz, &std::cerr);
    } else {
        std::ifstream in(in_path, std::ios::binary);
        if (!in) {
            std::cerr << "cannot open input file: " << in_path << "\n";
            return kExitOperational;
        }
        stats = ingest_stream(in, reg, store, tz, &std::cerr);
    }
    print_stats(stats);
    return kExitOk;
}

int run_report(const std::string& store_path, const std::string& format,
               const std::string& min_band_name, const std::string& out_path, int tz) {
    const LoadResult loaded = load_store(store_path);
    for (const auto& [line_no, why] : loaded.skipped)
        std::cerr << "store line " << line_no << " skipped: " << why << "\n";
    const CampaignReport rep = campaign_report(loaded.records, tz);
    const HazardBand min_band = *band_from_name(min_band_name);
    const std::string rendered =
        format == "csv" ? render_report_csv(rep) : render_report_table(rep, min_band);
    return write_output(out_path, rendered);
}

int run_export_geojson(const std::string& store_path, const std::string& sites,
                       const std::string& out_path, int tz) {
    const LoadResult loaded = load_store(store_path);
    for (const auto& [line_no, why] : loaded.skipped)
        std::cerr << "store line " << line_no << " skipped: " << why << "\n";
    const SiteRegistry reg = registry_from(sites);
    const CampaignReport rep = campaign_report(loaded.records, tz);
    return write_output(out_path, export_geojson(rep, reg));
}

int run_classify(const std::string& ppm_text) {
    double ppm = 0.0;
    try {
        std::size_t used = 0;
        ppm = std::stod(ppm_text, &used);
        if (used != ppm_text.size()) throw std::invalid_argument(ppm_text);
    } catch (const std::exception&) {
        std::cerr << "classify: ppm must be a number, got \"" << ppm_text << "\"\n";
        return kExitUsage;
    }
    if (!std::isfinite(ppm) || ppm < 0.0) {
        std::cerr << "classify: ppm must be finite and non-negative\n";
        return kExitUsage;
    }
    const HazardBand band = classify(ppm);
    std::cout << band_name(band) << "\n"
              << band_description(band) << "\n"
              << "max safe exposure: " << max_safe_exposure(ppm) << " min\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"CO pollution monitoring pipeline: simulate, ingest, report, export"};
    app.require_subcommand(1);

    const std::vector<std::string> band_names = {"Safe",          "LittleDanger45",
                                                 "Danger30",      "Danger30Heart",
                                                 "Danger30Headache", "VeryDanger15"};

    // simulate
    auto* sim = app.add_subcommand("simulate", "Generate a campaign and emit frame lines");
    std::string sim_sites;
    int sim_days = 5;
    double sim_sigma = 0.0;
    std::uint64_t sim_seed = 0;
    int sim_per_bucket = 6;
    std::string sim_out = "-";
    std::string sim_start = "2020-03-01";
    int sim_tz = kDefaultTzOffsetMinutes;
    sim->add_option("--sites", sim_sites, "Profiles CSV (default: built-in five sites)");
    sim->add_option("--days", sim_days, "Campaign length in days")->check(CLI::PositiveNumber);
    auto* sim_sigma_opt = sim->add_option("--sigma", sim_sigma,
                                          "Noise stddev in ppm for all profiles")
                              ->check(CLI::NonNegativeNumber);
    sim->add_option("--seed", sim_seed, "RNG seed");
    auto* sim_pb_opt = sim->add_option("--per-bucket", sim_per_bucket,
                                       "Readings per bucket for all profiles")
                           ->check(CLI::PositiveNumber);
    sim->add_option("--out", sim_out, "Output file, - for stdout");
    sim->add_option("--start-date", sim_start, "Campaign start date, YYYY-MM-DD local");
    auto* sim_tz_opt = sim->add_option("--tz-offset-min", sim_tz, "Local offset from UTC, minutes");

    // ingest
    auto* ing = app.add_subcommand("ingest", "Decode frames into the store");
    std::string ing_in;
    int ing_listen = 0;
    std::string ing_sites;
    std::string ing_store;
    int ing_tz = kDefaultTzOffsetMinutes;
    auto* ing_in_opt = ing->add_option("--in", ing_in, "Input frames file, - for stdin");
    auto* ing_listen_opt = ing->add_option("--listen", ing_listen, "Listen on a TCP port")
                               ->check(CLI::Range(0, 65535));
    ing->add_option("--sites", ing_sites, "Sites CSV (default: built-in five sites)");
    ing->add_option("--store", ing_store, "Store JSONL path")->required();
    auto* ing_tz_opt = ing->add_option("--tz-offset-min", ing_tz, "Local offset from UTC, minutes");
    ing_in_opt->excludes(ing_listen_opt);
    ing_listen_opt->excludes(ing_in_opt);

    // report
    auto* rep = app.add_subcommand("report", "Aggregate the store into a campaign report");
    std::string rep_store;
    std::string rep_format = "table";
    std::string rep_min_band = "Danger30Heart";
    std::string rep_out = "-";
    int rep_tz = kDefaultTzOffsetMinutes;
    rep->add_option("--store", rep_store, "Store JSONL path")->required();
    rep->add_option("--format", rep_format, "Output format")
        ->check(CLI::IsMember({"table", "csv"}));
    rep->add_option("--recommend-min-band", rep_min_band, "Recommendation threshold band")
        ->check(CLI::IsMember(band_names));
    rep->add_option("--out", rep_out, "Output file, - for stdout");
    auto* rep_tz_opt = rep->add_option("--tz-offset-min", rep_tz, "Local offset from UTC, minutes");

    // export-geojson
    auto* exp = app.add_subcommand("export-geojson", "Export per-site stats as GeoJSON");
    std::string exp_store;
    std::string exp_sites;
    std::string exp_out = "-";
    int exp_tz = kDefaultTzOffsetMinutes;
    exp->add_option("--store", exp_store, "Store JSONL path")->required();
    exp->add_option("--sites", exp_sites, "Sites CSV (default: built-in five sites)");
    exp->add_option("--out", exp_out, "Output file, - for stdout");
    auto* exp_tz_opt = exp->add_option("--tz-offset-min", exp_tz, "Local offset from UTC, minutes");

    // classify
    auto* cls = app.add_subcommand("classify", "Classify one ppm value");
    std::string cls_ppm;
    cls->add_option("ppm", cls_ppm, "CO concentration in ppm")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (sim->parsed())
            return run_simulate(sim_sites, sim_days, sim_sigma_opt, sim_sigma, sim_seed,
                                sim_pb_opt, sim_per_bucket, sim_out, sim_start,
                                resolve_tz(sim_tz_opt, sim_tz));
        if (ing->parsed()) {
            if (ing_in_opt->count() == 0 && ing_listen_opt->count() == 0) {
                std::cerr << "ingest: one of --in or --listen is required\n";
                return kExitUsage;
            }
            return run_ingest(ing_in, ing_listen_opt, ing_listen, ing_sites, ing_store,
                              resolve_tz(ing_tz_opt, ing_tz));
        }
        if (rep->parsed())
            return run_report(rep_store, rep_format, rep_min_band, rep_out,
                              resolve_tz(rep_tz_opt, rep_tz));
        if (exp->parsed())
            return run_export_geojson(exp_store, exp_sites, exp_out,
                                      resolve_tz(exp_tz_opt, exp_tz));
        if (cls->parsed()) return run_classify(cls_ppm);
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const IngestIoError& e) {
        std::cerr << "fatal: " << e.what() << "\n";
        print_stats(e.partial);
        return kExitOperational;
    } catch (const TransportError& e) {
        std::cerr << "fatal: " << e.what() << " after " << e.emitted << " frames\n";
        return kExitOperational;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitOperational;
    }
    return kExitOk;
}

#pragma once

#include <atomic>
#include <cstdint>
#include <fstream>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cosentinel/bucket.hpp"
#include "cosentinel/domain.hpp"
#include "cosentinel/geo.hpp"
#include "cosentinel/protocol.hpp"

namespace cosentinel {

// A decoded Reading joined with its classification, assigned site (when
// one is within the registry match radius) and local-time bucket.
struct EnrichedReading {
    Reading reading;
    HazardBand band = HazardBand::Safe;
    std::optional<std::string> site_id;
    Bucket bucket = Bucket::Other;
};

struct IngestStats {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::map<DecodeErrorKind, std::size_t> rejects_by_variant;
};

// Fatal I/O failure during ingest; carries whatever was counted before
// the failure.
struct IngestIoError : std::runtime_error {
    IngestIoError(const std::string& what, IngestStats partial_stats)
        : std::runtime_error(what), partial(std::move(partial_stats)) {}
    IngestStats partial;
};

// Append-only JSONL store. One record per line, fixed field order
// (device_id, ts, lat, lng, ppm, band, site_id, bucket); site_id is
// null for unassigned readings. Each append is flushed before
// returning.
class StoreWriter {
  public:
    // Opens for append, creating the file if needed. Throws
    // std::runtime_error if the file cannot be opened.
    explicit StoreWriter(const std::string& path);

    // Appends exactly one record line. Throws std::runtime_error on
    // write failure.
    void append(const EnrichedReading& er);

    const std::string& path() const { return path_; }

  private:
    std::string path_;
    std::ofstream out_;
};

// Serializes one record to its store line (no trailing newline).
std::string store_line(const EnrichedReading& er);

// Parses one store line; empty optional when malformed.
std::optional<EnrichedReading> parse_store_line(const std::string& line);

struct LoadResult {
    std::vector<EnrichedReading> records;
    // (line number, reason) for every skipped malformed line.
    std::vector<std::pair<std::size_t, std::string>> skipped;
};

// Reads a store file in append order, skipping (and reporting)
// malformed lines such as a crash-truncated tail. Throws
// std::runtime_error if the file does not exist.
LoadResult load_store(const std::string& path);

// Decodes LF-terminated frame lines from `in`, enriches valid readings
// against the registry, and appends them to the store in input order.
// Blank lines are ignored; rejects are counted per error variant and,
// when `diag` is set, logged with their line number.
IngestStats ingest_stream(std::istream& in, const SiteRegistry& reg, StoreWriter& store,
                          int tz_offset_minutes, std::ostream* diag = nullptr);

// TCP intake: accepts connections on `port` (0 picks an ephemeral port,
// reported via `bound_port`) until `stop` becomes true. Each connection
// is one frame-line source; appends from all connections are serialized
// into the store. Returns the aggregated stats.
IngestStats ingest_listen(int port, const SiteRegistry& reg, StoreWriter& store,
                          int tz_offset_minutes, std::atomic<bool>& stop,
                          int* bound_port = nullptr, std::ostream* diag = nullptr);

}  // namespace cosentinel

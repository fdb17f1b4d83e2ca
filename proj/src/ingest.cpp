#include "cosentinel/ingest.hpp"

#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <istream>
#include <mutex>
#include <ostream>
#include <thread>

#include <json.hpp>

namespace cosentinel {

namespace {

EnrichedReading enrich(Reading r, const SiteRegistry& reg, int tz_offset_minutes) {
    EnrichedReading er;
    er.band = classify(r.ppm);
    er.bucket = bucket_of(r.ts, tz_offset_minutes);
    er.site_id = reg.sites.empty() ? std::nullopt : nearest_site(r.lat, r.lng, reg);
    er.reading = std::move(r);
    return er;
}

void count_reject(IngestStats& stats, const DecodeError& err) {
    ++stats.rejected;
    ++stats.rejects_by_variant[err.kind];
}

void log_reject(std::ostream* diag, const std::string& source, std::size_t line_no,
                const DecodeError& err) {
    if (!diag) return;
    *diag << source << " line " << line_no << ": " << decode_error_name(err.kind) << ": "
          << err.message << "\n";
}

}  // namespace

StoreWriter::StoreWriter(const std::string& path) : path_(path) {
    out_.open(path, std::ios::app | std::ios::binary);
    if (!out_) throw std::runtime_error("cannot open store for append: " + path);
}

void StoreWriter::append(const EnrichedReading& er) {
    out_ << store_line(er) << '\n';
    out_.flush();
    if (!out_) throw std::runtime_error("store write failure: " + path_);
}

std::string store_line(const EnrichedReading& er) {
    nlohmann::ordered_json j;
    j["device_id"] = er.reading.device_id;
    j["ts"] = er.reading.ts;
    j["lat"] = er.reading.lat;
    j["lng"] = er.reading.lng;
    j["ppm"] = er.reading.ppm;
    j["band"] = band_name(er.band);
    if (er.site_id)
        j["site_id"] = *er.site_id;
    else
        j["site_id"] = nullptr;
    j["bucket"] = bucket_name(er.bucket);
    return j.dump();
}

std::optional<EnrichedReading> parse_store_line(const std::string& line) {
    const auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) return std::nullopt;
    if (!j.contains("device_id") || !j["device_id"].is_string()) return std::nullopt;
    if (!j.contains("ts") || !j["ts"].is_number_integer()) return std::nullopt;
    for (const char* k : {"lat", "lng", "ppm"})
        if (!j.contains(k) || !j[k].is_number()) return std::nullopt;
    if (!j.contains("band") || !j["band"].is_string()) return std::nullopt;
    if (!j.contains("site_id") || !(j["site_id"].is_string() || j["site_id"].is_null()))
        return std::nullopt;
    if (!j.contains("bucket") || !j["bucket"].is_string()) return std::nullopt;

    EnrichedReading er;
    er.reading.device_id = j["device_id"].get<std::string>();
    er.reading.ts = j["ts"].get<std::int64_t>();
    er.reading.lat = j["lat"].get<double>();
    er.reading.lng = j["lng"].get<double>();
    er.reading.ppm = j["ppm"].get<double>();
    if (reading_violation(er.reading)) return std::nullopt;
    const auto band = band_from_name(j["band"].get<std::string>());
    const auto bucket = bucket_from_name(j["bucket"].get<std::string>());
    if (!band || !bucket) return std::nullopt;
    er.band = *band;
    er.bucket = *bucket;
    if (j["site_id"].is_string()) er.site_id = j["site_id"].get<std::string>();
    return er;
}

LoadResult load_store(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open store: " + path);
    LoadResult result;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (auto er = parse_store_line(line)) {
            result.records.push_back(std::move(*er));
        } else {
            result.skipped.emplace_back(line_no, "malformed store record");
        }
    }
    return result;
}

IngestStats ingest_stream(std::istream& in, const SiteRegistry& reg, StoreWriter& store,
                          int tz_offset_minutes, std::ostream* diag) {
    IngestStats stats;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto result = decode_frame(line);
        if (auto* err = std::get_if<DecodeError>(&result)) {
            count_reject(stats, *err);
            log_reject(diag, "input", line_no, *err);
            continue;
        }
        try {
            store.append(enrich(std::move(std::get<Reading>(result)), reg, tz_offset_minutes));
        } catch (const std::runtime_error& e) {
            throw IngestIoError(e.what(), stats);
        }
        ++stats.accepted;
    }
    if (in.bad()) throw IngestIoError("input read failure", stats);
    return stats;
}

namespace {

struct Fd {
    int fd = -1;
    Fd() = default;
    explicit Fd(int f) : fd(f) {}
    Fd(const Fd&) = delete;
    Fd& operator=(const Fd&) = delete;
    Fd(Fd&& o) noexcept : fd(o.fd) { o.fd = -1; }
    ~Fd() {
        if (fd >= 0) ::close(fd);
    }
};

// Shared sink: one writer, stats and diagnostics under a single lock.
struct SharedIngest {
    SharedIngest(const SiteRegistry& registry, StoreWriter& writer, int tz, std::ostream* d)
        : reg(registry), store(writer), tz_offset_minutes(tz), diag(d) {}

    const SiteRegistry& reg;
    StoreWriter& store;
    int tz_offset_minutes;
    std::ostream* diag;
    std::mutex mu;
    IngestStats stats;
    bool io_failed = false;
    std::string io_error;

    void process_line(const std::string& source, std::size_t line_no, const std::string& line) {
        std::lock_guard lock(mu);
        if (io_failed) return;
        auto result = decode_frame(line);
        if (auto* err = std::get_if<DecodeError>(&result)) {
            count_reject(stats, *err);
            log_reject(diag, source, line_no, *err);
            return;
        }
        try {
            store.append(enrich(std::move(std::get<Reading>(result)), reg, tz_offset_minutes));
            ++stats.accepted;
        } catch (const std::runtime_error& e) {
            io_failed = true;
            io_error = e.what();
        }
    }
};

void serve_connection(Fd conn, std::size_t conn_id, SharedIngest& shared,
                      const std::atomic<bool>& stop) {
    const std::string source = "conn " + std::to_string(conn_id);
    std::string buf;
    std::size_t line_no = 0;
    char chunk[4096];
    for (;;) {
        pollfd p{conn.fd, POLLIN, 0};
        const int rc = ::poll(&p, 1, 100);
        if (stop.load()) break;
        if (rc < 0) {
            if (errno == EINTR) continue;
            break;
        }
        if (rc == 0) continue;
        const ssize_t n = ::recv(conn.fd, chunk, sizeof chunk, 0);
        if (n <= 0) break;  // peer closed or error
        buf.append(chunk, static_cast<std::size_t>(n));
        std::size_t pos;
        while ((pos = buf.find('\n')) != std::string::npos) {
            std::string line = buf.substr(0, pos);
            buf.erase(0, pos + 1);
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            shared.process_line(source, line_no, line);
        }
    }
    // A trailing chunk without LF at close still counts as a line.
    if (!buf.empty()) {
        ++line_no;
        if (buf.back() == '\r') buf.pop_back();
        if (!buf.empty()) shared.process_line(source, line_no, buf);
    }
}

}  // namespace

IngestStats ingest_listen(int port, const SiteRegistry& reg, StoreWriter& store,
                          int tz_offset_minutes, std::atomic<bool>& stop, int* bound_port,
                          std::ostream* diag) {
    Fd listener(::socket(AF_INET, SOCK_STREAM, 0));
    if (listener.fd < 0) throw IngestIoError("socket() failed", {});
    const int one = 1;
    ::setsockopt(listener.fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_ANY);
    addr.sin_port = htons(static_cast<std::uint16_t>(port));
    if (::bind(listener.fd, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0)
        throw IngestIoError(std::string("bind() failed: ") + std::strerror(errno), {});
    if (::listen(listener.fd, 16) != 0)
        throw IngestIoError(std::string("listen() failed: ") + std::strerror(errno), {});
    if (bound_port) {
        sockaddr_in actual{};
        socklen_t len = sizeof actual;
        ::getsockname(listener.fd, reinterpret_cast<sockaddr*>(&actual), &len);
        *bound_port = ntohs(actual.sin_port);
    }

    SharedIngest shared{reg, store, tz_offset_minutes, diag};
    std::vector<std::thread> workers;
    std::size_t next_conn_id = 0;
    while (!stop.load()) {
        pollfd p{listener.fd, POLLIN, 0};
        const int rc = ::poll(&p, 1, 100);
        if (rc < 0) {
            if (errno == EINTR) continue;
            break;
        }
        if (rc == 0) continue;
        Fd conn(::accept(listener.fd, nullptr, nullptr));
        if (conn.fd < 0) continue;
        ++next_conn_id;
        workers.emplace_back(
            [c = std::move(conn), id = next_conn_id, &shared, &stop]() mutable {
                serve_connection(std::move(c), id, shared, stop);
            });
    }
    for (auto& w : workers) w.join();
    if (shared.io_failed) throw IngestIoError(shared.io_error, shared.stats);
    return shared.stats;
}

}  // namespace cosentinel

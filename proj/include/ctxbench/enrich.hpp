#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace ctxbench {

// Offline lookup used during ingestion to enrich GPS fixes with a venue
// category and, when the weather stream has no nearby reading, a weather
// token. Implementations must be pure: same query, same answer.
class EnrichmentProvider {
public:
    virtual ~EnrichmentProvider() = default;
    virtual std::vector<std::string> venue_taxonomy() const = 0;
    virtual std::optional<std::string> venue_category(double lat, double lon) const = 0;
    virtual std::optional<std::string> weather(double lat, double lon,
                                               std::int64_t t_ms) const = 0;
};

// File-backed provider. Two row shapes, detected by field count:
//   lat_min,lat_max,lon_min,lon_max,venue_token
//   YYYY-MM-DD,weather_token
class OfflineEnrichment final : public EnrichmentProvider {
public:
    static OfflineEnrichment load(const std::filesystem::path& path);

    std::vector<std::string> venue_taxonomy() const override;
    std::optional<std::string> venue_category(double lat, double lon) const override;
    std::optional<std::string> weather(double lat, double lon,
                                       std::int64_t t_ms) const override;

    struct VenueCell {
        double lat_min, lat_max, lon_min, lon_max;
        std::string token;
    };

private:
    std::vector<VenueCell> cells_;                           // file order; first hit wins
    std::vector<std::pair<std::string, std::string>> days_;  // date -> weather token
};

// "YYYY-MM-DD" for a UTC millisecond timestamp.
std::string utc_date(std::int64_t t_ms);

}  // namespace ctxbench

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "cortex/calibration.hpp"
#include "cortex/config.hpp"
#include "cortex/taxonomy.hpp"
#include "json.hpp"

namespace httplib {
class Server;
}

namespace cortex {

inline constexpr int kDefaultPort = 8437;
inline constexpr std::uint64_t kDefaultSampleCeiling = 1'000'000;

/// Immutable catalogues shared by every request.
struct ServiceContext {
    Taxonomy taxonomy;
    BandCatalogue bands;
    ProfileRegistry profiles;
    ScoringConfig defaults;
    std::uint64_t sample_ceiling = kDefaultSampleCeiling;

    /// Loads the four shipped packs from `dir`; `taxonomy_path` replaces the
    /// taxonomy pack when given.
    static ServiceContext load(const std::filesystem::path& dir,
                               const std::optional<std::filesystem::path>& taxonomy_path = std::nullopt);
};

struct ApiResponse {
    int status = 200;
    nlohmann::json body;
};

/// Transport-free request handlers. Every body carries engine_version and
/// taxonomy_version; errors are {"error", "message", "details"?}.
class Service {
public:
    explicit Service(ServiceContext ctx);

    const ServiceContext& context() const noexcept { return ctx_; }

    ApiResponse health() const;
    ApiResponse taxonomy() const;
    ApiResponse score(const std::string& body) const;
    ApiResponse simulate(const std::string& body) const;
    ApiResponse whatif(const std::string& body) const;
    ApiResponse bands(const std::optional<std::string>& modifier,
                      const std::optional<std::string>& framework) const;
    ApiResponse profiles() const;

private:
    ApiResponse stamp(ApiResponse r) const;
    ServiceContext ctx_;
};

/// Registers the /v1 routes, CORS headers and, optionally, a static mount.
void bind(httplib::Server& server, const Service& service,
          const std::optional<std::filesystem::path>& static_dir = std::nullopt);

/// Blocks until the server stops. Returns false if the port could not be bound.
bool run_server(const Service& service, const std::string& host, int port,
                const std::optional<std::filesystem::path>& static_dir = std::nullopt);

}  // namespace cortex

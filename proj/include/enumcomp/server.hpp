#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "enumcomp/session.hpp"

namespace enumcomp::game {

/**
 * JSON game API under /api plus an optional static directory at "/".
 *
 *   POST /api/game              {k, variant, human, policy, seed?, max_rounds?} -> 201 {id, state}
 *   GET  /api/game/{id}         -> state, history and configurations
 *   POST /api/game/{id}/move    {numbers:[...]} -> state, or 422 {error, rule}
 *   GET  /api/game/{id}/hint    -> {available, move, tag, rationale, configurations}
 *
 * Unknown ids answer 404 and malformed bodies 400, both as {error, rule}.
 */
class ApiServer {
public:
    explicit ApiServer(SessionRegistry& registry,
                       std::optional<std::filesystem::path> static_dir = std::nullopt);
    ~ApiServer();
    ApiServer(const ApiServer&) = delete;
    ApiServer& operator=(const ApiServer&) = delete;

    /// Binds without serving yet. Port 0 picks an ephemeral port; the bound
    /// port is returned.
    int bind(const std::string& host, int port);
    /// Serves until stop() is called.
    void run();
    void stop();
    void wait_until_ready() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace enumcomp::game

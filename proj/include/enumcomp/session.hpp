#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "enumcomp/game.hpp"

namespace enumcomp::game {

/// How the engine answers when it plays player 2.
enum class P2Policy { First, Random, Solver };
std::string_view to_string(P2Policy p);
P2Policy parse_policy(std::string_view name);

struct SessionConfig {
    GameConfig game;
    Player human = Player::P2;
    P2Policy policy = P2Policy::First;
    std::uint64_t seed = 1;
};

class UnknownSession : public std::out_of_range {
public:
    explicit UnknownSession(const std::string& id) : std::out_of_range("unknown session " + id) {}
};

struct Hint {
    bool available = false;
    Move move;
    std::string tag;
    std::string rationale;
    std::vector<Configuration> configurations;
};

struct SessionSnapshot {
    std::string id;
    SessionConfig config;
    GameState state;
};

nlohmann::json to_json(const GameState& state, const GameConfig& config);
nlohmann::json to_json(const SessionSnapshot& snap);
nlohmann::json to_json(const Hint& hint);
nlohmann::json to_json(const Configuration& c);

/// Engine reply for player 2 under a policy; only the Random policy draws
/// from the generator. The Solver policy looks two rounds ahead inside
/// [0, 64) and picks the reply that delays player 1's forced win longest.
Number choose_p2_reply(const GameState& state, const GameConfig& config, P2Policy policy,
                       std::mt19937_64& rng);

/// Player-1 move for the engine: the strategy when one is known, otherwise
/// the lexicographically first legal move.
Move choose_p1_move(const GameState& state, const GameConfig& config);

/**
 * In-memory sessions. The registry map has its own lock and each session
 * is mutated under its own mutex, so moves on different sessions proceed
 * in parallel. With a log path, every session start and accepted move is
 * appended as one JSON line.
 */
class SessionRegistry {
public:
    SessionRegistry() = default;
    explicit SessionRegistry(std::filesystem::path log_path);

    std::string create(const SessionConfig& config);
    SessionSnapshot get(const std::string& id) const;
    /// Applies the human move, then lets the engine move until the human is
    /// to move again or the game is over. Throws IllegalMove or UnknownSession.
    SessionSnapshot submit(const std::string& id, const Move& move);
    Hint hint(const std::string& id) const;
    std::size_t size() const;

private:
    struct Session {
        SessionConfig config;
        GameState state;
        std::mt19937_64 rng;
        mutable std::mutex mutex;
    };

    std::shared_ptr<Session> find(const std::string& id) const;
    void advance_engine(const std::string& id, Session& s);
    void log(const nlohmann::json& line);

    mutable std::mutex registry_mutex_;
    std::map<std::string, std::shared_ptr<Session>> sessions_;
    std::uint64_t next_id_ = 1;
    std::optional<std::filesystem::path> log_path_;
    std::mutex log_mutex_;
};

struct ReplayedSession {
    std::string id;
    SessionConfig config;
    GameState state;
};

/// Rebuilds every session in a log by re-applying its moves through apply_move.
std::vector<ReplayedSession> replay_log(std::istream& in);

}  // namespace enumcomp::game

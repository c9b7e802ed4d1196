#include "enumcomp/session.hpp"

#include <algorithm>
#include <istream>

#include "enumcomp/solver.hpp"

namespace enumcomp::game {

using nlohmann::json;

std::string_view to_string(P2Policy p) {
    switch (p) {
        case P2Policy::First: return "first";
        case P2Policy::Random: return "random";
        case P2Policy::Solver: return "solver";
    }
    return "first";
}

P2Policy parse_policy(std::string_view name) {
    if (name == "first") return P2Policy::First;
    if (name == "random") return P2Policy::Random;
    if (name == "solver") return P2Policy::Solver;
    throw std::invalid_argument("unknown policy '" + std::string(name) + "'");
}

json to_json(const Configuration& c) {
    return {{"pattern", c.pattern}, {"positions", c.positions},
            {"sufficient_space", c.sufficient_space}};
}

json to_json(const GameState& state, const GameConfig& config) {
    json history = json::array();
    for (const Round& r : state.history) {
        history.push_back({{"r", r.r}, {"reply", r.reply ? json(*r.reply) : json(nullptr)}});
    }
    json configs = json::array();
    for (const auto& c : detect_configurations(state)) configs.push_back(to_json(c));
    const Move* pending = state.pending_round();
    return {
        {"k", config.k},
        {"variant", to_string(config.variant)},
        {"max_rounds", config.max_rounds},
        {"to_move", to_string(state.to_move)},
        {"outcome", to_string(state.outcome)},
        {"loss_reason", state.loss_reason},
        {"losing_pair", state.losing_pair},
        {"p1_chosen", state.p1_chosen},
        {"p2_chosen", state.p2_chosen},
        {"pending", pending ? json(*pending) : json(nullptr)},
        {"legal_replies", legal_replies(state, config)},
        {"rounds_completed", state.rounds_completed()},
        {"history", history},
        {"configurations", configs},
    };
}

json to_json(const SessionSnapshot& snap) {
    json j = to_json(snap.state, snap.config.game);
    j["id"] = snap.id;
    j["human"] = to_string(snap.config.human);
    j["policy"] = to_string(snap.config.policy);
    return j;
}

json to_json(const Hint& hint) {
    json configs = json::array();
    for (const auto& c : hint.configurations) configs.push_back(to_json(c));
    return {{"available", hint.available},
            {"move", hint.move},
            {"tag", hint.tag},
            {"rationale", hint.rationale},
            {"configurations", configs}};
}

namespace {

// Larger is better for player 2.
long survival_score(const GameState& after, const GameConfig& config) {
    if (after.outcome == Outcome::P1Wins) return -1;
    if (after.outcome == Outcome::P2Survived) return 1000;
    const Number bound = 64;
    for (Number n : after.p1_chosen)
        if (n >= bound) return 0;
    GameConfig probe = config;
    probe.universe_bound = bound;
    probe.max_rounds = static_cast<unsigned>(
        std::min<std::size_t>(config.max_rounds, after.rounds_completed() + 2));
    SolveOptions options;
    options.node_budget = 5000;
    options.throw_on_budget = false;
    const SolveResult r = solve(probe, after, options);
    if (r.verdict == Verdict::P1WinsWithin) return static_cast<long>(r.depth);
    return 100;
}

}  // namespace

Number choose_p2_reply(const GameState& state, const GameConfig& config, P2Policy policy,
                       std::mt19937_64& rng) {
    const auto replies = legal_replies(state, config);
    if (replies.empty()) throw std::logic_error("player 2 has no legal reply");
    switch (policy) {
        case P2Policy::First:
            return replies.front();
        case P2Policy::Random: {
            std::uniform_int_distribution<std::size_t> pick(0, replies.size() - 1);
            return replies[pick(rng)];
        }
        case P2Policy::Solver: {
            Number best = replies.front();
            long best_score = -2;
            for (Number n : replies) {
                const long score = survival_score(apply_move(state, config, {n}), config);
                if (score > best_score) {
                    best_score = score;
                    best = n;
                }
            }
            return best;
        }
    }
    return replies.front();
}

Move choose_p1_move(const GameState& state, const GameConfig& config) {
    if (strategy_known(config)) return p1_strategy(state, config).move;
    const auto moves = legal_moves(state, config);
    if (moves.empty()) throw std::logic_error("player 1 has no legal move");
    return moves.front();
}

SessionRegistry::SessionRegistry(std::filesystem::path log_path) : log_path_(std::move(log_path)) {}

void SessionRegistry::log(const json& line) {
    if (!log_path_) return;
    std::lock_guard lock(log_mutex_);
    std::ofstream out(*log_path_, std::ios::app);
    if (!out) throw std::runtime_error("cannot append to session log " + log_path_->string());
    out << line.dump() << '\n';
}

std::string SessionRegistry::create(const SessionConfig& config) {
    config.game.validate();
    auto session = std::make_shared<Session>();
    session->config = config;
    session->rng.seed(config.seed);
    std::string id;
    {
        std::lock_guard lock(registry_mutex_);
        id = "g" + std::to_string(next_id_++);
        sessions_[id] = session;
    }
    std::lock_guard lock(session->mutex);
    log({{"type", "session"},
         {"id", id},
         {"k", config.game.k},
         {"variant", to_string(config.game.variant)},
         {"max_rounds", config.game.max_rounds},
         {"human", to_string(config.human)},
         {"policy", to_string(config.policy)},
         {"seed", config.seed}});
    advance_engine(id, *session);
    return id;
}

std::shared_ptr<SessionRegistry::Session> SessionRegistry::find(const std::string& id) const {
    std::lock_guard lock(registry_mutex_);
    const auto it = sessions_.find(id);
    if (it == sessions_.end()) throw UnknownSession(id);
    return it->second;
}

SessionSnapshot SessionRegistry::get(const std::string& id) const {
    auto s = find(id);
    std::lock_guard lock(s->mutex);
    return {id, s->config, s->state};
}

void SessionRegistry::advance_engine(const std::string& id, Session& s) {
    while (s.state.outcome == Outcome::Ongoing && s.state.to_move != s.config.human) {
        Move m;
        if (s.state.to_move == Player::P1) {
            m = choose_p1_move(s.state, s.config.game);
        } else {
            m = {choose_p2_reply(s.state, s.config.game, s.config.policy, s.rng)};
        }
        const Player mover = s.state.to_move;
        s.state = apply_move(s.state, s.config.game, m);
        log({{"type", "move"}, {"id", id}, {"player", to_string(mover)}, {"numbers", m}});
    }
}

SessionSnapshot SessionRegistry::submit(const std::string& id, const Move& move) {
    auto s = find(id);
    std::lock_guard lock(s->mutex);
    if (s->state.outcome == Outcome::Ongoing && s->state.to_move != s->config.human) {
        throw IllegalMove("not_your_turn", "the engine is to move");
    }
    const Player mover = s->state.to_move;
    s->state = apply_move(s->state, s->config.game, move);
    log({{"type", "move"}, {"id", id}, {"player", to_string(mover)}, {"numbers", move}});
    advance_engine(id, *s);
    return {id, s->config, s->state};
}

Hint SessionRegistry::hint(const std::string& id) const {
    auto s = find(id);
    std::lock_guard lock(s->mutex);
    const GameState& st = s->state;
    if (st.outcome != Outcome::Ongoing) throw IllegalMove("game_over", "the game is over");
    Hint h;
    h.configurations = detect_configurations(st);
    if (!strategy_known(s->config.game)) {
        h.rationale = "no strategy known; solver exploration only";
        return h;
    }
    if (st.to_move == Player::P1) {
        const StrategyChoice c = p1_strategy(st, s->config.game);
        h.available = true;
        h.move = c.move;
        h.tag = c.tag;
        h.rationale = c.rationale;
        return h;
    }
    std::mt19937_64 unused;
    h.available = true;
    h.move = {choose_p2_reply(st, s->config.game, P2Policy::Solver, unused)};
    h.tag = "survival";
    h.rationale = "reply that postpones player 1's forced win longest in a shallow search";
    return h;
}

std::size_t SessionRegistry::size() const {
    std::lock_guard lock(registry_mutex_);
    return sessions_.size();
}

std::vector<ReplayedSession> replay_log(std::istream& in) {
    std::vector<ReplayedSession> out;
    std::map<std::string, std::size_t> index;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto where = "session log line " + std::to_string(line_no) + ": ";
        json j;
        try {
            j = json::parse(line);
            const std::string type = j.at("type");
            const std::string id = j.at("id");
            if (type == "session") {
                ReplayedSession rs;
                rs.id = id;
                rs.config.game.k = j.at("k");
                rs.config.game.variant = parse_variant(j.at("variant").get<std::string>());
                rs.config.game.max_rounds = j.at("max_rounds");
                rs.config.human = parse_player(j.at("human").get<std::string>());
                rs.config.policy = parse_policy(j.at("policy").get<std::string>());
                rs.config.seed = j.at("seed");
                rs.config.game.validate();
                index[id] = out.size();
                out.push_back(std::move(rs));
            } else if (type == "move") {
                const auto it = index.find(id);
                if (it == index.end()) throw std::runtime_error("move for unknown session " + id);
                ReplayedSession& rs = out[it->second];
                const Player player = parse_player(j.at("player").get<std::string>());
                if (player != rs.state.to_move) throw std::runtime_error("move out of turn");
                rs.state = apply_move(rs.state, rs.config.game, j.at("numbers").get<Move>());
            } else {
                throw std::runtime_error("unknown line type " + type);
            }
        } catch (const IllegalMove& e) {
            throw std::runtime_error(where + "illegal move (" + e.rule() + "): " + e.what());
        } catch (const std::exception& e) {
            throw std::runtime_error(where + e.what());
        }
    }
    return out;
}

}  // namespace enumcomp::game

#include "enumcomp/server.hpp"

#include <httplib.h>

namespace enumcomp::game {

using nlohmann::json;

struct ApiServer::Impl {
    SessionRegistry& registry;
    httplib::Server http;

    explicit Impl(SessionRegistry& r) : registry(r) {}
};

namespace {

void send(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& rule,
                const std::string& message) {
    send(res, status, {{"error", message}, {"rule", rule}});
}

// Runs a handler body, mapping engine exceptions onto HTTP statuses.
template <typename F>
void guarded(httplib::Response& res, F&& body) {
    try {
        body();
    } catch (const UnknownSession& e) {
        send_error(res, 404, "unknown_id", e.what());
    } catch (const IllegalMove& e) {
        send_error(res, 422, e.rule(), e.what());
    } catch (const json::exception& e) {
        send_error(res, 400, "bad_request", e.what());
    } catch (const std::invalid_argument& e) {
        send_error(res, 400, "bad_request", e.what());
    } catch (const std::exception& e) {
        send_error(res, 500, "internal", e.what());
    }
}

SessionConfig parse_new_game(const std::string& body) {
    const json j = body.empty() ? json::object() : json::parse(body);
    if (!j.is_object()) throw std::invalid_argument("request body must be a JSON object");
    SessionConfig c;
    c.game.k = j.value("k", 3u);
    c.game.variant = parse_variant(j.value("variant", std::string("reduced")));
    c.game.max_rounds = j.value("max_rounds", 8u);
    c.human = parse_player(j.value("human", std::string("p2")));
    c.policy = parse_policy(j.value("policy", std::string("first")));
    c.seed = j.value("seed", std::uint64_t{1});
    c.game.validate();
    return c;
}

}  // namespace

ApiServer::ApiServer(SessionRegistry& registry, std::optional<std::filesystem::path> static_dir)
    : impl_(std::make_unique<Impl>(registry)) {
    auto& http = impl_->http;
    auto& reg = impl_->registry;

    http.Post("/api/game", [&reg](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            const std::string id = reg.create(parse_new_game(req.body));
            send(res, 201, {{"id", id}, {"state", to_json(reg.get(id))}});
        });
    });
    http.Get(R"(/api/game/([^/]+))", [&reg](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] { send(res, 200, to_json(reg.get(req.matches[1]))); });
    });
    http.Post(R"(/api/game/([^/]+)/move)",
              [&reg](const httplib::Request& req, httplib::Response& res) {
                  guarded(res, [&] {
                      const std::string id = req.matches[1];
                      reg.get(id);  // 404 before body validation
                      const json j = json::parse(req.body);
                      if (!j.is_object() || !j.contains("numbers") || !j["numbers"].is_array()) {
                          throw std::invalid_argument("body must be {\"numbers\": [...]}");
                      }
                      send(res, 200, to_json(reg.submit(id, j["numbers"].get<Move>())));
                  });
              });
    http.Get(R"(/api/game/([^/]+)/hint)",
             [&reg](const httplib::Request& req, httplib::Response& res) {
                 guarded(res, [&] { send(res, 200, to_json(reg.hint(req.matches[1]))); });
             });
    if (static_dir) {
        if (!http.set_mount_point("/", static_dir->string())) {
            throw std::invalid_argument("static directory not found: " + static_dir->string());
        }
    }
}

ApiServer::~ApiServer() { stop(); }

int ApiServer::bind(const std::string& host, int port) {
    const int bound = port == 0 ? impl_->http.bind_to_any_port(host)
                                : (impl_->http.bind_to_port(host, port) ? port : -1);
    if (bound < 0) throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
    return bound;
}

void ApiServer::run() { impl_->http.listen_after_bind(); }
void ApiServer::stop() { impl_->http.stop(); }
void ApiServer::wait_until_ready() const { impl_->http.wait_until_ready(); }

}  // namespace enumcomp::game

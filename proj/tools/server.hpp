#pragma once

#include <functional>
#include <string>

#include "httplib.h"

#include "session.hpp"

namespace cluster::cli {

namespace detail {

inline void reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

inline json parse_body(const httplib::Request& req) {
  json j = json::parse(req.body, nullptr, false);
  if (j.is_discarded()) throw ParseError("request body is not valid JSON");
  return j;
}

// Maps library errors onto status codes.
inline void guarded(httplib::Response& res, const std::function<void()>& body) {
  try {
    body();
  } catch (const UnknownSession& e) {
    reply(res, 404, {{"error", e.what()}});
  } catch (const IllegalMutation& e) {
    reply(res, 409, {{"error", e.what()}});
  } catch (const Conflict& e) {
    reply(res, 409, {{"error", e.what()}});
  } catch (const ParseError& e) {
    reply(res, 400, {{"error", e.what()}});
  } catch (const CatalogError& e) {
    reply(res, 400, {{"error", e.what()}});
  } catch (const Error& e) {
    reply(res, 400, {{"error", e.what()}});
  } catch (const std::exception& e) {
    reply(res, 500, {{"error", e.what()}});
  }
}

}  // namespace detail

inline json catalog_json() {
  json out = json::array();
  for (const auto& name : catalog::names()) {
    const catalog::Entry e = catalog::build(name);
    json invs = json::array();
    for (const auto& r : catalog::invariants(name))
      invs.push_back({{"name", r.name}, {"flavor", flavor_name(r.flavor)}, {"function", render(r.function, r.names)}});
    out.push_back({{"name", e.name},
                   {"description", e.description},
                   {"quiver", io::quiver_to_json(e.quiver)},
                   {"a_names", e.a_names},
                   {"x_names", e.x_names},
                   {"invariants", invs}});
  }
  return out;
}

/// Registers the explorer routes on an existing server.
inline void install_routes(httplib::Server& srv, SessionStore& store) {
  using httplib::Request;
  using httplib::Response;
  using detail::guarded;
  using detail::reply;

  // Build the listing once; it never changes.
  auto listing = std::make_shared<json>(catalog_json());
  srv.Get("/catalog", [listing](const Request&, Response& res) { reply(res, 200, *listing); });

  srv.Post("/session", [&store](const Request& req, Response& res) {
    guarded(res, [&] { reply(res, 201, store.create(detail::parse_body(req))); });
  });

  srv.Get(R"(/session/([^/]+))", [&store](const Request& req, Response& res) {
    guarded(res, [&] { reply(res, 200, store.get(req.matches[1])); });
  });

  srv.Post(R"(/session/([^/]+)/mutate)", [&store](const Request& req, Response& res) {
    guarded(res, [&] {
      // {"node": k} or a bare k.
      json body = detail::parse_body(req);
      if (body.is_object() && body.contains("node")) body = body["node"];
      if (!body.is_number_integer()) throw ParseError("body must be {\"node\": <integer>}");
      reply(res, 200, store.mutate(req.matches[1], body.get<long>()));
    });
  });

  srv.Post(R"(/session/([^/]+)/undo)", [&store](const Request& req, Response& res) {
    guarded(res, [&] { reply(res, 200, store.undo(req.matches[1])); });
  });

  srv.Post(R"(/session/([^/]+)/track)", [&store](const Request& req, Response& res) {
    guarded(res, [&] {
      const json body = detail::parse_body(req);
      if (!body.is_object() || !body.contains("function") || !body["function"].is_string())
        throw ParseError("body must be {\"function\": <string>}");
      reply(res, 201, store.track(req.matches[1], body["function"].get<std::string>()));
    });
  });

  srv.Get(R"(/session/([^/]+)/track)", [&store](const Request& req, Response& res) {
    guarded(res, [&] { reply(res, 200, store.tracked(req.matches[1])); });
  });

  srv.Get(R"(/session/([^/]+)/invariants)", [&store](const Request& req, Response& res) {
    guarded(res, [&] { reply(res, 200, store.invariants(req.matches[1])); });
  });

  srv.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
  srv.Options(R"(.*)", [](const Request&, Response& res) {
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });
}

}  // namespace cluster::cli

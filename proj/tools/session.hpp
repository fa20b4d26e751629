#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "cluster/catalog.hpp"
#include "cluster/io/serialize.hpp"

namespace cluster::cli {

using io::json;

class UnknownSession : public Error {
 public:
  using Error::Error;
};

/// Nothing to undo, and similar requests that conflict with the state.
class Conflict : public Error {
 public:
  using Error::Error;
};

struct Tracked {
  std::string text;
  RationalFunction function;
  Flavor flavor;
};

/// One explorer session. seeds[t] is the seed after the first t steps of
/// history, so seeds.front() is the base and seeds.back() the current seed.
struct Session {
  std::string id;
  std::optional<std::string> catalog;
  VariableNames a_names;
  VariableNames x_names;
  std::vector<std::size_t> history;
  std::vector<ASeed> a_seeds;
  std::vector<XSeed> x_seeds;
  std::vector<Tracked> tracked;
  std::mutex mu;

  const Quiver& base() const { return a_seeds.front().quiver; }
};

inline json session_json(const Session& s) {
  json history = json::array();
  for (std::size_t k : s.history) history.push_back(k + 1);
  json j{{"id", s.id},
         {"catalog", s.catalog ? json(*s.catalog) : json(nullptr)},
         {"quiver", io::quiver_to_json(s.a_seeds.back().quiver)},
         {"base", io::quiver_to_json(s.base())},
         {"a_names", s.a_names},
         {"x_names", s.x_names},
         {"a_vars", io::renderings(s.a_seeds.back().vars, s.a_names)},
         {"x_vars", io::renderings(s.x_seeds.back().vars, s.x_names)},
         {"history", history}};
  json tracked = json::array();
  for (const auto& t : s.tracked) tracked.push_back(t.text);
  j["tracked"] = tracked;
  return j;
}

/// Reads function text over the A names, then the X names.
inline std::pair<RationalFunction, Flavor> parse_either(const std::string& text, const VariableNames& a,
                                                        const VariableNames& x) {
  try {
    return {parse_function(text, a), Flavor::A};
  } catch (const ParseError& first) {
    try {
      return {parse_function(text, x), Flavor::X};
    } catch (const ParseError&) {
      throw first;
    }
  }
}

/// Values of a tracked function at every step, and whether they all agree.
inline json track_json(const Session& s, const Tracked& t) {
  const VariableNames& names = t.flavor == Flavor::A ? s.a_names : s.x_names;
  json values = json::array();
  bool constant = true;
  std::optional<RationalFunction> first;
  for (std::size_t i = 0; i < s.a_seeds.size(); ++i) {
    const auto& vars = t.flavor == Flavor::A ? s.a_seeds[i].vars : s.x_seeds[i].vars;
    RationalFunction v = substitute(t.function, vars);
    if (!first) first = v;
    if (!(v == *first)) constant = false;
    values.push_back(render(v, names));
  }
  return {{"function", render(t.function, names)},
          {"flavor", flavor_name(t.flavor)},
          {"values", values},
          {"current", values.back()},
          {"invariant", constant}};
}

/// Sessions keyed by id. The map has its own lock; each session is guarded
/// by its own mutex so distinct sessions proceed in parallel.
class SessionStore {
 public:
  explicit SessionStore(std::optional<std::filesystem::path> state_dir = std::nullopt)
      : state_dir_(std::move(state_dir)) {
    if (state_dir_) load_all();
  }

  json create(const json& body) {
    if (!body.is_object()) throw ParseError("session body must be a JSON object");
    auto s = std::make_shared<Session>();
    if (body.contains("catalog")) {
      if (!body["catalog"].is_string()) throw ParseError("\"catalog\" must be a string");
      const catalog::Entry e = catalog::build(body["catalog"].get<std::string>());
      s->catalog = e.name;
      s->a_names = e.a_names;
      s->x_names = e.x_names;
      s->a_seeds.push_back(initial_a_seed(e.quiver));
      s->x_seeds.push_back(initial_x_seed(e.quiver));
    } else if (body.contains("quiver")) {
      const Quiver q = io::quiver_from_json(body["quiver"]);
      if (q.size() == 0) throw ParseError("quiver has no nodes");
      s->a_names = a_names(q);
      s->x_names = x_names(q);
      s->a_seeds.push_back(initial_a_seed(q));
      s->x_seeds.push_back(initial_x_seed(q));
    } else {
      throw ParseError("session body needs \"catalog\" or \"quiver\"");
    }
    {
      std::unique_lock lock(map_mu_);
      s->id = "s" + std::to_string(++counter_);
      sessions_[s->id] = s;
    }
    std::lock_guard guard(s->mu);
    persist(*s);
    return session_json(*s);
  }

  json get(const std::string& id) {
    auto s = find(id);
    std::lock_guard guard(s->mu);
    return session_json(*s);
  }

  /// node is 1-based.
  json mutate(const std::string& id, long node) {
    auto s = find(id);
    std::lock_guard guard(s->mu);
    const Quiver& q = s->a_seeds.back().quiver;
    if (node < 1 || static_cast<std::size_t>(node) > q.size())
      throw IllegalMutation("node " + std::to_string(node) + " out of range");
    const std::size_t k = static_cast<std::size_t>(node - 1);
    q.check_mutable(k);
    ASeed a = mutate_a(s->a_seeds.back(), k);
    XSeed x = mutate_x(s->x_seeds.back(), k);
    s->a_seeds.push_back(std::move(a));
    s->x_seeds.push_back(std::move(x));
    s->history.push_back(k);
    persist(*s);
    return session_json(*s);
  }

  json undo(const std::string& id) {
    auto s = find(id);
    std::lock_guard guard(s->mu);
    if (s->history.empty()) throw Conflict("nothing to undo");
    s->history.pop_back();
    s->a_seeds.pop_back();
    s->x_seeds.pop_back();
    persist(*s);
    return session_json(*s);
  }

  json track(const std::string& id, const std::string& text) {
    auto s = find(id);
    std::lock_guard guard(s->mu);
    auto [f, flavor] = parse_either(text, s->a_names, s->x_names);
    s->tracked.push_back({text, f, flavor});
    persist(*s);
    return track_json(*s, s->tracked.back());
  }

  json tracked(const std::string& id) {
    auto s = find(id);
    std::lock_guard guard(s->mu);
    json out = json::array();
    for (const auto& t : s->tracked) out.push_back(track_json(*s, t));
    return out;
  }

  /// Catalog invariants read in the current seed: value is the invariant
  /// with each initial variable replaced by the current one.
  json invariants(const std::string& id) {
    auto s = find(id);
    std::lock_guard guard(s->mu);
    json out = json::array();
    if (!s->catalog) return out;
    for (const auto& r : catalog::invariants(*s->catalog)) {
      const auto& vars = r.flavor == Flavor::A ? s->a_seeds.back().vars : s->x_seeds.back().vars;
      const RationalFunction v = substitute(r.function, vars);
      json gens = json::array();
      for (const auto& g : r.generators) gens.push_back(format_group_element(g));
      out.push_back({{"name", r.name},
                     {"flavor", flavor_name(r.flavor)},
                     {"function", render(r.function, r.names)},
                     {"value", render(v, r.names)},
                     {"unchanged", v == r.function},
                     {"generators", gens}});
    }
    return out;
  }

  /// Replays the history from the base and compares with the stored seeds.
  bool replay_consistent(const std::string& id) {
    auto s = find(id);
    std::lock_guard guard(s->mu);
    ASeed a = s->a_seeds.front();
    XSeed x = s->x_seeds.front();
    for (std::size_t k : s->history) {
      a = mutate_a(a, k);
      x = mutate_x(x, k);
    }
    return a == s->a_seeds.back() && x == s->x_seeds.back();
  }

 private:
  std::shared_ptr<Session> find(const std::string& id) {
    std::shared_lock lock(map_mu_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) throw UnknownSession("unknown session " + id);
    return it->second;
  }

  void persist(const Session& s) {
    if (!state_dir_) return;
    json j{{"id", s.id}, {"base", io::quiver_to_json(s.base())}};
    if (s.catalog) j["catalog"] = *s.catalog;
    json history = json::array();
    for (std::size_t k : s.history) history.push_back(k + 1);
    j["history"] = history;
    json tracked = json::array();
    for (const auto& t : s.tracked) tracked.push_back(t.text);
    j["tracked"] = tracked;
    const auto path = *state_dir_ / (s.id + ".json");
    const auto tmp = *state_dir_ / (s.id + ".json.tmp");
    {
      std::ofstream out(tmp);
      out << j.dump(2) << '\n';
    }
    std::filesystem::rename(tmp, path);
  }

  void load_all() {
    std::filesystem::create_directories(*state_dir_);
    for (const auto& entry : std::filesystem::directory_iterator(*state_dir_)) {
      if (entry.path().extension() != ".json") continue;
      std::ifstream in(entry.path());
      json j = json::parse(in, nullptr, false);
      if (j.is_discarded() || !j.contains("id")) continue;
      auto s = std::make_shared<Session>();
      s->id = j["id"].get<std::string>();
      Quiver q = io::quiver_from_json(j["base"]);
      if (j.contains("catalog")) {
        const catalog::Entry e = catalog::build(j["catalog"].get<std::string>());
        s->catalog = e.name;
        s->a_names = e.a_names;
        s->x_names = e.x_names;
        q = e.quiver;
      } else {
        s->a_names = a_names(q);
        s->x_names = x_names(q);
      }
      s->a_seeds.push_back(initial_a_seed(q));
      s->x_seeds.push_back(initial_x_seed(q));
      for (long node : j["history"].get<std::vector<long>>()) {
        const auto k = static_cast<std::size_t>(node - 1);
        s->a_seeds.push_back(mutate_a(s->a_seeds.back(), k));
        s->x_seeds.push_back(mutate_x(s->x_seeds.back(), k));
        s->history.push_back(k);
      }
      for (const auto& text : j["tracked"].get<std::vector<std::string>>()) {
        auto [f, flavor] = parse_either(text, s->a_names, s->x_names);
        s->tracked.push_back({text, f, flavor});
      }
      if (s->id.size() > 1 && s->id[0] == 's') counter_ = std::max(counter_, std::stoul(s->id.substr(1)));
      sessions_[s->id] = s;
    }
  }

  std::optional<std::filesystem::path> state_dir_;
  std::shared_mutex map_mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  unsigned long counter_ = 0;
};

}  // namespace cluster::cli

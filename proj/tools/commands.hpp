#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cluster.hpp"
#include "cluster/io/serialize.hpp"
#include "server.hpp"

namespace cluster::cli {

enum ExitCode { kOk = 0, kFailed = 1, kParse = 2, kIllegal = 3 };

struct Options {
  std::string format = "text";
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void print_matrix(std::ostream& out, const Quiver& q) {
  std::size_t w = 1;
  for (const auto& row : q.matrix())
    for (int64_t v : row) w = std::max(w, std::to_string(v).size());
  for (const auto& row : q.matrix()) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      const std::string s = std::to_string(row[j]);
      out << (j ? " " : "") << std::string(w - s.size(), ' ') << s;
    }
    out << '\n';
  }
}

inline void print_vars(std::ostream& out, const std::vector<RationalFunction>& vars, const VariableNames& names) {
  for (std::size_t i = 0; i < vars.size(); ++i) out << names[i] << " = " << render(vars[i], names) << '\n';
}

struct Source {
  Quiver quiver;
  VariableNames a_names;
  VariableNames x_names;
};

inline Source load_source(const std::string& quiver_file, const std::string& catalog_name) {
  if (!catalog_name.empty()) {
    const catalog::Entry e = catalog::build(catalog_name);
    return {e.quiver, e.a_names, e.x_names};
  }
  const Quiver q = io::quiver_from_text(read_file(quiver_file));
  return {q, a_names(q), x_names(q)};
}

inline void print_checks(std::ostream& out, const std::vector<catalog::Check>& checks, bool as_json) {
  if (as_json) {
    json arr = json::array();
    for (const auto& c : checks) arr.push_back({{"label", c.label}, {"passed", c.passed}, {"detail", c.detail}});
    out << json{{"checks", arr}}.dump(2) << '\n';
    return;
  }
  std::size_t passed = 0;
  for (const auto& c : checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.label;
    if (!c.detail.empty()) out << " (" << c.detail << ")";
    out << '\n';
    passed += c.passed;
  }
  out << passed << "/" << checks.size() << " passed\n";
}

inline bool all_passed(const std::vector<catalog::Check>& checks) {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

}  // namespace detail

inline int cmd_mutate(std::ostream& out, const Options& o, const std::string& quiver_file,
                      const std::string& catalog_name, const std::string& path_text) {
  const detail::Source src = detail::load_source(quiver_file, catalog_name);
  const MutationPath path = io::parse_path(path_text, src.quiver.size());
  const ASeed a = apply_path(initial_a_seed(src.quiver), path);
  XSeed x = initial_x_seed(src.quiver);
  for (std::size_t k : path) x = mutate_x(x, k);
  if (o.format == "json") {
    json p = json::array();
    for (std::size_t k : path) p.push_back(k + 1);
    out << json{{"path", p}, {"a_seed", io::seed_to_json(a, src.a_names)}, {"x_seed", io::seed_to_json(x, src.x_names)}}
               .dump(2)
        << '\n';
    return kOk;
  }
  out << "matrix:\n";
  detail::print_matrix(out, a.quiver);
  const auto frozen = a.quiver.frozen_nodes();
  if (!frozen.empty()) {
    out << "frozen:";
    for (std::size_t f : frozen) out << ' ' << f + 1;
    out << '\n';
  }
  out << "A variables:\n";
  detail::print_vars(out, a.vars, src.a_names);
  out << "X variables:\n";
  detail::print_vars(out, x.vars, src.x_names);
  return kOk;
}

inline int cmd_verify_catalog(std::ostream& out, const Options& o, const std::string& name) {
  catalog::build(name);
  const auto checks = catalog::verify(name);
  detail::print_checks(out, checks, o.format == "json");
  return detail::all_passed(checks) ? kOk : kFailed;
}

/// flavor is "A", "X" or "auto" (A names first, then X names).
inline int cmd_verify_function(std::ostream& out, const Options& o, const std::string& quiver_file,
                               const std::string& catalog_name, const std::string& fn,
                               const std::vector<std::string>& gens, const std::string& flavor) {
  const detail::Source src = detail::load_source(quiver_file, catalog_name);
  const std::size_t n = src.quiver.size();
  RationalFunction f(n, 0);
  Flavor fl = Flavor::A;
  if (flavor == "A") {
    f = parse_function(fn, src.a_names);
  } else if (flavor == "X") {
    f = parse_function(fn, src.x_names);
    fl = Flavor::X;
  } else {
    std::tie(f, fl) = parse_either(fn, src.a_names, src.x_names);
  }
  std::vector<GroupElement> elements;
  for (const auto& g : gens) elements.push_back(parse_group_element(g, n));
  std::vector<catalog::Check> checks;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    catalog::Check c{gens[i], false, {}};
    try {
      c.passed = act(src.quiver, elements[i], f, fl) == f;
    } catch (const Error& e) {
      c.detail = e.what();
    }
    checks.push_back(c);
  }
  detail::print_checks(out, checks, o.format == "json");
  return detail::all_passed(checks) ? kOk : kFailed;
}

inline int cmd_sequence(std::ostream& out, const Options& o, const std::string& kind, std::size_t n,
                        std::size_t depth) {
  std::vector<std::string> lines;
  if (kind == "markov") {
    for (const auto& t : markov_triples(depth))
      lines.push_back(t[0].get_str() + " " + t[1].get_str() + " " + t[2].get_str());
  } else {
    Quiver q;
    if (kind == "somos4") q = catalog::somos4();
    else if (kind == "somos5") q = catalog::somos5();
    else if (kind == "somos6") q = catalog::somos6();
    else throw ParseError("unknown sequence " + kind + " (somos4, somos5, somos6, markov)");
    if (n < 1) throw ParseError("-n must be at least 1");
    auto terms = somos_sequence(q, std::max(n, q.size()));
    terms.resize(n);
    for (const auto& t : terms) lines.push_back(t.get_str());
  }
  if (o.format == "json") {
    json arr = json::array();
    for (const auto& l : lines) {
      if (kind == "markov") {
        json triple = json::array();
        std::istringstream ss(l);
        std::string v;
        while (ss >> v) triple.push_back(v);
        arr.push_back(triple);
      } else {
        arr.push_back(l);
      }
    }
    out << json{{"sequence", kind}, {"terms", arr}}.dump(2) << '\n';
    return kOk;
  }
  for (const auto& l : lines) out << l << '\n';
  return kOk;
}

inline int cmd_catalog_list(std::ostream& out, const Options& o) {
  if (o.format == "json") {
    out << catalog_json().dump(2) << '\n';
    return kOk;
  }
  for (const auto& name : catalog::names()) out << name << "  " << catalog::build(name).description << '\n';
  return kOk;
}

inline int cmd_serve(std::ostream& out, const std::string& host, int port, const std::string& state_dir) {
  std::optional<std::filesystem::path> dir;
  if (!state_dir.empty()) dir = state_dir;
  SessionStore store(dir);
  httplib::Server srv;
  install_routes(srv, store);
  if (!srv.bind_to_port(host, port)) throw Error("cannot bind " + host + ":" + std::to_string(port));
  out << "listening on " << host << ":" << port << std::endl;
  srv.listen_after_bind();
  return kOk;
}

/// Entry point shared by the binary and the tests.
inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Cluster ensembles, mutation and modular-group invariants"};
  app.require_subcommand(1);
  Options o;
  auto add_format = [&o](CLI::App* c) {
    c->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  };

  std::string quiver_file, catalog_name, path_text, fn, flavor = "auto";
  std::vector<std::string> gens;

  auto* mutate = app.add_subcommand("mutate", "Apply a mutation path to the initial seed");
  add_format(mutate);
  auto* mq = mutate->add_option("--quiver", quiver_file, "Quiver JSON file")->check(CLI::ExistingFile);
  auto* mc = mutate->add_option("--catalog", catalog_name, "Catalog entry name");
  mq->excludes(mc);
  mutate->add_option("--path", path_text, "Node labels, e.g. \"1231\" or \"1 2 3\"")->required();

  auto* verify = app.add_subcommand("verify", "Check invariance under group elements");
  add_format(verify);
  auto* vq = verify->add_option("--quiver", quiver_file, "Quiver JSON file")->check(CLI::ExistingFile);
  auto* vc = verify->add_option("--catalog", catalog_name, "Catalog entry name");
  vq->excludes(vc);
  auto* vf = verify->add_option("--fn", fn, "Function in the text grammar");
  verify->add_option("--gen", gens, "Group element {path,(cycles)}; repeatable")->needs(vf);
  verify->add_option("--flavor", flavor, "A, X or auto")->check(CLI::IsMember({"A", "X", "auto"}));

  std::string kind;
  std::size_t n = 10, depth = 3;
  auto* sequence = app.add_subcommand("sequence", "Print somos terms or Markov triples");
  add_format(sequence);
  sequence->add_option("kind", kind, "somos4, somos5, somos6 or markov")->required();
  sequence->add_option("-n", n, "Number of terms")->capture_default_str();
  sequence->add_option("--depth", depth, "Markov tree depth")->capture_default_str();

  auto* cat = app.add_subcommand("catalog", "List or verify catalog entries");
  cat->require_subcommand(1);
  add_format(cat);
  auto* cat_list = cat->add_subcommand("list", "List entries");
  add_format(cat_list);
  std::string cat_entry;
  auto* cat_verify = cat->add_subcommand("verify", "Run the checks for one entry");
  add_format(cat_verify);
  cat_verify->add_option("name", cat_entry, "Entry name")->required();

  std::string host = "127.0.0.1", state_dir;
  int port = 8080;
  auto* serve = app.add_subcommand("serve", "Run the explorer HTTP service");
  add_format(serve);
  serve->add_option("--port", port)->capture_default_str();
  serve->add_option("--host", host)->capture_default_str();
  serve->add_option("--state-dir", state_dir, "Directory for session snapshots");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParse;
  }

  try {
    if (*mutate) {
      if (quiver_file.empty() && catalog_name.empty()) throw ParseError("mutate needs --quiver or --catalog");
      return cmd_mutate(out, o, quiver_file, catalog_name, path_text);
    }
    if (*verify) {
      if (fn.empty()) {
        if (catalog_name.empty()) throw ParseError("verify needs --catalog, or --fn with --gen");
        return cmd_verify_catalog(out, o, catalog_name);
      }
      if (quiver_file.empty() && catalog_name.empty()) throw ParseError("verify --fn needs --quiver or --catalog");
      if (gens.empty()) throw ParseError("verify --fn needs at least one --gen");
      return cmd_verify_function(out, o, quiver_file, catalog_name, fn, gens, flavor);
    }
    if (*sequence) return cmd_sequence(out, o, kind, n, depth);
    if (*cat_list) return cmd_catalog_list(out, o);
    if (*cat_verify) return cmd_verify_catalog(out, o, cat_entry);
    if (*serve) return cmd_serve(out, host, port, state_dir);
  } catch (const IllegalMutation& e) {
    err << "error: " << e.what() << '\n';
    return kIllegal;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kParse;
  } catch (const CatalogError& e) {
    err << "error: " << e.what() << '\n';
    return kParse;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailed;
  }
  return kOk;
}

}  // namespace cluster::cli

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <random>
#include <thread>

#include "commands.hpp"

using namespace cluster;
using cluster::cli::json;

namespace {

struct CliRun {
  int code;
  std::string out;
};

// Runs the installed binary through the shell; stderr is discarded.
CliRun run(const std::string& args) {
  const std::string cmd = std::string(CLUSTER_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, p)) out.append(buf, n);
  const int status = pclose(p);
  return {WEXITSTATUS(status), out};
}

std::string data(const std::string& name) { return std::string(CLUSTER_DATA_DIR) + "/" + name; }

}  // namespace

TEST(Cli, MutateG2AffineAtNode2) {
  const CliRun r = run("mutate --quiver " + data("g2_affine.json") + " --path 2 --format json");
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["a_seed"]["matrix"], json::parse("[[0,-3,3],[1,0,-1],[-1,1,0]]"));
  EXPECT_EQ(j["a_seed"]["multipliers"], json::parse("[1,3,3]"));
  EXPECT_EQ(j["a_seed"]["vars"][1], "(a1 + a3)/a2");
}

TEST(Cli, MutateEchoAndInvolution) {
  const CliRun empty = run("mutate --catalog markov --path \"\"");
  const CliRun twice = run("mutate --catalog markov --path \"1 1\"");
  ASSERT_EQ(empty.code, 0);
  EXPECT_EQ(empty.out, twice.out);
  EXPECT_NE(empty.out.find("a1 = a1\na2 = a2\na3 = a3\n"), std::string::npos);
  EXPECT_NE(empty.out.find(" 0  2 -2\n"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("mutate --quiver " + data("a3_frozen.json") + " --path 3").code, 3);
  EXPECT_EQ(run("mutate --catalog markov --path 4").code, 2);
  EXPECT_EQ(run("mutate --catalog no_such_entry --path 1").code, 2);
  EXPECT_EQ(run("mutate --quiver /nonexistent.json --path 1").code, 2);
  EXPECT_EQ(run("verify --catalog markov --fn \"a1 +\" --gen \"{1,(23)}\"").code, 2);
  EXPECT_EQ(run("verify --catalog markov --fn a1 --gen \"{1,(23\"").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("mutate --catalog markov --path 1 --format yaml").code, 2);
}

TEST(Cli, BadQuiverJson) {
  const auto dir = std::filesystem::temp_directory_path() / "cluster_cli_test";
  std::filesystem::create_directories(dir);
  const auto write = [&](const std::string& name, const std::string& body) {
    std::ofstream(dir / name) << body;
    return (dir / name).string();
  };
  EXPECT_EQ(run("mutate --quiver " + write("a.json", "{\"matrix\": [[0,1],[1,0]]}") + " --path 1").code, 2);
  EXPECT_EQ(run("mutate --quiver " + write("b.json", "{\"matrix\": [[0,1],[-1]]}") + " --path 1").code, 2);
  EXPECT_EQ(run("mutate --quiver " + write("c.json", "not json") + " --path 1").code, 2);
  EXPECT_EQ(run("mutate --quiver " + write("d.json", "{\"n\": 3, \"matrix\": [[0,1],[-1,0]]}") + " --path 1").code, 2);
  EXPECT_EQ(run("mutate --quiver " + write("e.json", "{\"matrix\": [[0,1],[-1,0]], \"frozen\": [5]}") + " --path 1").code,
            2);
  std::filesystem::remove_all(dir);
}

TEST(Cli, Verify) {
  const CliRun markov = run("verify --catalog markov");
  EXPECT_EQ(markov.code, 0);
  EXPECT_EQ(markov.out.find("FAIL"), std::string::npos);
  EXPECT_EQ(run("verify --catalog somos6").code, 0);
  const CliRun a2 = run("verify --quiver " + data("a2.json") + " --fn a1 --gen \"{1,(12)}\"");
  EXPECT_EQ(a2.code, 1);
  EXPECT_NE(a2.out.find("FAIL {1,(12)}"), std::string::npos);
  const CliRun x = run("verify --catalog markov --fn \"x1*x2*x3\" --gen \"{1,(23)}\" --gen \"{2,(13)}\" --format json");
  EXPECT_EQ(x.code, 0);
  EXPECT_EQ(json::parse(x.out)["checks"].size(), 2u);
  EXPECT_EQ(run("verify --catalog markov --fn \"x1\" --flavor A --gen \"{1,(23)}\"").code, 2);
  EXPECT_EQ(run("catalog verify g2_33").code, 0);
}

TEST(Cli, Sequences) {
  EXPECT_EQ(run("sequence somos4 -n 8").out, "1\n1\n1\n1\n2\n3\n7\n23\n");
  EXPECT_EQ(run("sequence somos5 -n 6").out, "1\n1\n1\n1\n1\n2\n");
  EXPECT_EQ(run("sequence somos6 -n 3").out, "1\n1\n1\n");
  const CliRun m = run("sequence markov --depth 2");
  EXPECT_NE(m.out.find("1 2 5\n"), std::string::npos);
  const json j = json::parse(run("sequence somos4 -n 10 --format json").out);
  EXPECT_EQ(j["terms"].back(), "314");
}

TEST(Cli, CatalogList) {
  const json j = json::parse(run("catalog list --format json").out);
  EXPECT_EQ(j.size(), catalog::names().size());
  EXPECT_EQ(j[0]["name"], "a2");
}

TEST(Cli, Deterministic) {
  for (const std::string args : {"mutate --catalog somos5 --path 12345 --format json", "catalog list",
                                 "verify --catalog a3_cycle", "sequence markov --depth 4"})
    EXPECT_EQ(run(args).out, run(args).out) << args;
}

TEST(Cli, InProcessMatchesBinary) {
  std::ostringstream out, err;
  const char* argv[] = {"cluster", "sequence", "somos4", "-n", "8"};
  EXPECT_EQ(cli::run_cli(5, argv, out, err), 0);
  EXPECT_EQ(out.str(), run("sequence somos4 -n 8").out);
}

class Serve : public ::testing::Test {
 protected:
  void SetUp() override { start(std::nullopt); }
  void TearDown() override { stop(); }

  void start(std::optional<std::filesystem::path> dir) {
    store_ = std::make_unique<cli::SessionStore>(dir);
    srv_ = std::make_unique<httplib::Server>();
    cli::install_routes(*srv_, *store_);
    port_ = srv_->bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { srv_->listen_after_bind(); });
    srv_->wait_until_ready();
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
  }

  void stop() {
    srv_->stop();
    thread_.join();
  }

  std::pair<int, json> post(const std::string& path, const std::string& body) {
    auto r = client_->Post(path, body, "application/json");
    return {r->status, json::parse(r->body)};
  }

  std::pair<int, json> get(const std::string& path) {
    auto r = client_->Get(path);
    return {r->status, json::parse(r->body)};
  }

  std::string open(const std::string& body) {
    auto [status, j] = post("/session", body);
    EXPECT_EQ(status, 201);
    return j["id"];
  }

  std::unique_ptr<cli::SessionStore> store_;
  std::unique_ptr<httplib::Server> srv_;
  std::unique_ptr<httplib::Client> client_;
  std::thread thread_;
  int port_ = 0;
};

TEST_F(Serve, Catalog) {
  auto [status, j] = get("/catalog");
  EXPECT_EQ(status, 200);
  EXPECT_EQ(j.size(), catalog::names().size());
  EXPECT_EQ(j[4]["name"], "markov");
  EXPECT_EQ(j[4]["invariants"][0]["function"], "(a1^2 + a2^2 + a3^2)/(a1*a2*a3)");
}

TEST_F(Serve, MarkovInvariantSurvivesMutations) {
  const std::string id = open(R"({"catalog": "markov"})");
  for (int k : {1, 2, 3}) EXPECT_EQ(post("/session/" + id + "/mutate", json{{"node", k}}.dump()).first, 200);
  auto [status, invs] = get("/session/" + id + "/invariants");
  ASSERT_EQ(status, 200);
  bool seen_f = false;
  for (const auto& r : invs) {
    EXPECT_TRUE(r["unchanged"].get<bool>()) << r["name"];
    EXPECT_EQ(r["value"], r["function"]);
    if (r["name"] == "F") seen_f = true;
  }
  EXPECT_TRUE(seen_f);
  auto [s2, session] = get("/session/" + id);
  EXPECT_EQ(session["history"], json::parse("[1,2,3]"));
  EXPECT_EQ(session["a_vars"][0], "(a2^2 + a3^2)/a1");
}

TEST_F(Serve, FrozenNodeIs409) {
  const std::string q = data("a3_frozen.json");
  std::ifstream in(q);
  const json quiver = json::parse(in);
  const std::string id = open(json{{"quiver", quiver}}.dump());
  auto [status, body] = post("/session/" + id + "/mutate", R"({"node": 3})");
  EXPECT_EQ(status, 409);
  EXPECT_TRUE(body.contains("error"));
  EXPECT_EQ(post("/session/" + id + "/mutate", R"({"node": 2})").first, 200);
  EXPECT_EQ(post("/session/" + id + "/mutate", "1").first, 200);
  EXPECT_EQ(post("/session/" + id + "/mutate", R"({"node": 9})").first, 409);
}

TEST_F(Serve, UndoRestoresSnapshot) {
  const std::string id = open(R"({"catalog": "somos4"})");
  post("/session/" + id + "/mutate", R"({"node": 1})");
  const json before = get("/session/" + id).second;
  EXPECT_EQ(post("/session/" + id + "/mutate", R"({"node": 2})").first, 200);
  auto [status, after] = post("/session/" + id + "/undo", "");
  EXPECT_EQ(status, 200);
  EXPECT_EQ(after, before);
  post("/session/" + id + "/undo", "");
  EXPECT_EQ(post("/session/" + id + "/undo", "").first, 409);
}

TEST_F(Serve, Errors) {
  EXPECT_EQ(get("/session/s999").first, 404);
  EXPECT_EQ(post("/session/s999/mutate", R"({"node": 1})").first, 404);
  EXPECT_EQ(post("/session", "{").first, 400);
  EXPECT_EQ(post("/session", R"({"catalog": "nope"})").first, 400);
  EXPECT_EQ(post("/session", R"({"quiver": {"matrix": [[0,1],[1,0]]}})").first, 400);
  EXPECT_EQ(post("/session", R"({})").first, 400);
  const std::string id = open(R"({"catalog": "a2"})");
  EXPECT_EQ(post("/session/" + id + "/mutate", R"({"node": "one"})").first, 400);
  EXPECT_EQ(post("/session/" + id + "/mutate", "garbage").first, 400);
  EXPECT_EQ(post("/session/" + id + "/track", R"({"function": "a1 +"})").first, 400);
  EXPECT_EQ(post("/session/" + id + "/track", R"({"fn": "a1"})").first, 400);
}

TEST_F(Serve, Track) {
  const std::string id = open(R"({"catalog": "markov"})");
  post("/session/" + id + "/mutate", R"({"node": 1})");
  auto [status, f] = post("/session/" + id + "/track", R"j({"function": "(a1^2 + a2^2 + a3^2)/(a1*a2*a3)"})j");
  EXPECT_EQ(status, 201);
  EXPECT_TRUE(f["invariant"].get<bool>());
  EXPECT_EQ(f["values"].size(), 2u);
  EXPECT_EQ(f["flavor"], "A");
  auto [s2, g] = post("/session/" + id + "/track", R"({"function": "a1"})");
  EXPECT_FALSE(g["invariant"].get<bool>());
  EXPECT_EQ(g["values"], json::parse(R"(["a1", "(a2^2 + a3^2)/a1"])"));
  EXPECT_EQ(g["current"], "(a2^2 + a3^2)/a1");
  auto [s3, x] = post("/session/" + id + "/track", R"({"function": "x1*x2*x3"})");
  EXPECT_EQ(x["flavor"], "X");
  EXPECT_TRUE(x["invariant"].get<bool>());
  EXPECT_EQ(get("/session/" + id + "/track").second.size(), 3u);
}

TEST_F(Serve, ReplayAfterRandomMutateUndo) {
  std::mt19937 rng(23);
  for (const std::string name : {"markov", "somos4", "d_cycle(4)"}) {
    const std::string id = open(json{{"catalog", name}}.dump());
    const std::size_t n = catalog::build(name).quiver.size();
    std::uniform_int_distribution<std::size_t> node(1, n);
    for (int step = 0; step < 20; ++step) {
      if (rng() % 3 == 0)
        post("/session/" + id + "/undo", "");
      else
        EXPECT_EQ(post("/session/" + id + "/mutate", json{{"node", node(rng)}}.dump()).first, 200);
      ASSERT_TRUE(store_->replay_consistent(id)) << name << " step " << step;
    }
    // A fresh session driven by the final history lands on the same state.
    const json s = get("/session/" + id).second;
    const std::string fresh = open(json{{"catalog", name}}.dump());
    for (const auto& k : s["history"]) post("/session/" + fresh + "/mutate", json{{"node", k}}.dump());
    json t = get("/session/" + fresh).second;
    t["id"] = s["id"];
    EXPECT_EQ(t, s);
  }
}

TEST_F(Serve, StateDirSurvivesRestart) {
  const auto dir = std::filesystem::temp_directory_path() / "cluster_state_test";
  std::filesystem::remove_all(dir);
  stop();
  start(dir);
  const std::string id = open(R"({"catalog": "somos5"})");
  post("/session/" + id + "/mutate", R"({"node": 1})");
  post("/session/" + id + "/mutate", R"({"node": 2})");
  post("/session/" + id + "/track", R"({"function": "a1*a5"})");
  const json before = get("/session/" + id).second;
  stop();
  start(dir);
  EXPECT_EQ(get("/session/" + id).second, before);
  EXPECT_NE(open(R"({"catalog": "a2"})"), id);
  std::filesystem::remove_all(dir);
}

TEST_F(Serve, ConcurrentSessions) {
  std::vector<std::string> ids;
  for (int i = 0; i < 4; ++i) ids.push_back(open(R"({"catalog": "somos4"})"));
  std::vector<std::thread> workers;
  for (const auto& id : ids)
    workers.emplace_back([this, id] {
      httplib::Client c("127.0.0.1", port_);
      for (int k : {1, 2, 3, 4, 1, 2}) c.Post("/session/" + id + "/mutate", json{{"node", k}}.dump(), "application/json");
    });
  for (auto& w : workers) w.join();
  for (const auto& id : ids) {
    EXPECT_EQ(get("/session/" + id).second["history"].size(), 6u);
    EXPECT_TRUE(store_->replay_consistent(id));
  }
}

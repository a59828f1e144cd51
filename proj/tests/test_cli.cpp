#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include <json.hpp>

#include "formal/cli.hpp"
#include "formal/combinator.hpp"
#include "formal/derivation.hpp"
#include "formal/string_system.hpp"

using namespace formal;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int status;
  std::string out, err;
};

Outcome run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int status = cli::run(args, in, out, err);
  return {status, out.str(), err.str()};
}

// Runs the real binary; stderr is discarded.
Outcome run_binary(const std::string& args) {
  const std::string cmd = std::string(FORMAL_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out, ""};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "formal-cli-test";
  fs::create_directories(dir);
  return dir / name;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string last_line(const std::string& text) {
  auto end = text.find_last_not_of('\n');
  auto start = text.rfind('\n', end);
  return text.substr(start == std::string::npos ? 0 : start + 1, end - (start == std::string::npos ? 0 : start + 1) + 1);
}

const char* const kThreePlusOne =
    "kind: word\n"
    "init: 11↑=11↑\n"
    "step: one-up @ 5+2\n"
    "to: 11↑=1↑0\n"
    "step: one-up @ 4+2\n"
    "to: 11↑=↑00\n"
    "step: eq-up @ 3+2\n"
    "to: 11↑=100\n";

}  // namespace

TEST_CASE("increment") {
  auto r = run({"increment", "3"});
  CHECK(r.status == cli::kOk);
  CHECK(r.out == kThreePlusOne);

  CHECK(last_line(run({"increment", "0"}).out) == "to: 0↑=1");
  CHECK(last_line(run({"increment", "4"}).out) == "to: 100↑=101");

  r = run({"--json", "increment", "3"});
  REQUIRE(r.status == cli::kOk);
  const auto d = derivation_from_json(nlohmann::json::parse(r.out));
  CHECK(serialize_derivation(d) == kThreePlusOne);
}

TEST_CASE("derive") {
  auto r = run({"derive", "builtin", "0↑=0↑", "0↑=1"});
  CHECK(r.status == cli::kOk);
  CHECK(r.out == "kind: word\ninit: 0↑=0↑\nstep: zero-up @ 3+2\nto: 0↑=1\n");

  const std::string file = (fs::path(FORMAL_DATA_DIR) / "increment.sys").string();
  CHECK(run({"derive", file, "11^=11^", "11^=100"}).out == kThreePlusOne);

  r = run({"derive", "builtin", "1=1", "0=0"});
  CHECK(r.status == cli::kRejected);
  CHECK(r.err.find("not found") != std::string::npos);

  r = run({"derive", "builtin", "0↑=0↑", "0↑=1", "1"});
  CHECK(r.status == cli::kFailure);

  CHECK(run({"derive", "builtin", "0x", "0"}).status == cli::kFailure);
  CHECK(run({"derive", "/nonexistent.sys", "0", "0"}).status == cli::kFailure);
}

TEST_CASE("verify") {
  const auto good = scratch("good.txt");
  write(good, kThreePlusOne);
  auto r = run({"verify", "builtin", good.string()});
  CHECK(r.status == cli::kOk);
  CHECK(r.out == "accept\n");

  std::string mutated = kThreePlusOne;
  mutated.replace(mutated.find("11↑=↑00"), std::string("11↑=↑00").size(), "11↑=↑01");
  const auto bad = scratch("bad.txt");
  write(bad, mutated);
  r = run({"verify", "builtin", bad.string()});
  CHECK(r.status == cli::kRejected);
  CHECK(r.err.rfind("step 2: result mismatch", 0) == 0);

  r = run({"--json", "verify", "builtin", bad.string()});
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["verdict"] == "reject");
  CHECK(j["step"] == 2);

  // Not an axiom instance unless the start check is relaxed.
  const auto loose = scratch("loose.txt");
  write(loose, "kind: word\ninit: 1↑=10\nstep: one-up @ 0+2\nto: ↑0=10\n");
  CHECK(run({"verify", "builtin", loose.string()}).status == cli::kRejected);
  CHECK(run({"verify", "builtin", loose.string(), "--from-any-start"}).status == cli::kOk);

  CHECK(run({"verify", "builtin", scratch("missing.txt").string()}).status == cli::kFailure);
  const auto garbage = scratch("garbage.txt");
  write(garbage, "kind: word\ninit: 0\nstep: nonsense\n");
  r = run({"verify", "builtin", garbage.string()});
  CHECK(r.status == cli::kFailure);
  CHECK(r.err.find("line 3") != std::string::npos);
}

TEST_CASE("normalize") {
  CHECK(run({"normalize", "K K K S K S"}).out == "S S\n");
  auto r = run({"normalize", "S K K a", "--trace"});
  CHECK(r.out ==
        "kind: term\n"
        "init: S K K a\n"
        "step: rule2 @ ε [x=K, y=K, z=a]\n"
        "to: K a (K a)\n"
        "step: rule1 @ ε [x=a, y=K a]\n"
        "to: a\n");
  const auto d = std::get<TermDerivation>(parse_derivation(r.out));
  CHECK(verify_derivation(d).accepted);

  r = run({"normalize", "S (S K K) (S K K) (S (S K K) (S K K))", "50"});
  CHECK(r.status == cli::kFailure);
  CHECK(r.err.find("budget") != std::string::npos);
  CHECK(run({"normalize", "S (K"}).status == cli::kFailure);
}

TEST_CASE("abstract, compile") {
  CHECK(run({"abstract", "x", "x x"}).out == "S (S K K) (S K K)\n");
  CHECK(run({"abstract", "x", "K"}).out == "K K\n");
  CHECK(run({"abstract", "S", "x"}).status == cli::kFailure);
  CHECK(run({"compile", "\\x. x"}).out == "S K K\n");
  CHECK(nlohmann::json::parse(run({"--json", "compile", "\\x. y"}).out)["ground"] == false);
  CHECK(run({"compile", "\\x x"}).status == cli::kFailure);
}

TEST_CASE("arith") {
  CHECK(run({"arith", "3 + 1"}).out == "4\n");
  CHECK(run({"arith", "2+3"}).out == "5\n");
  CHECK(run({"arith", "succ 0"}).out == "1\n");
  CHECK(run({"arith", "0 + 0"}).out == "0\n");
  CHECK(nlohmann::json::parse(run({"--json", "arith", "4 + 4"}).out)["value"] == 8);
  CHECK(run({"arith", "3 * 1"}).status == cli::kFailure);
  CHECK(run({"arith", "65 + 1"}).status == cli::kFailure);
  CHECK(run({"arith", "-1 + 1"}).status == cli::kFailure);
}

TEST_CASE("usage errors") {
  CHECK(run({}).status == cli::kFailure);
  CHECK(run({"frobnicate"}).status == cli::kFailure);
  CHECK(run({"increment"}).status == cli::kFailure);
  CHECK(run({"increment", "x"}).status == cli::kFailure);
  CHECK(run({"--help"}).status == cli::kOk);
}

TEST_CASE("repl: term session") {
  const auto path = scratch("repl-term.txt");
  auto r = run({"repl", "term", "S K K a"}, "0\n0\nw " + path.string() + "\nq\n");
  CHECK(r.status == cli::kOk);
  CHECK(r.out.find("(normal form)") != std::string::npos);
  const auto d = std::get<TermDerivation>(parse_derivation(slurp(path)));
  CHECK(d.size() == 2);
  CHECK(d.last() == Term::var("a"));
  CHECK(verify_derivation(d).accepted);
}

TEST_CASE("repl: word session rebuilds the 3 + 1 transcript") {
  // Pick the redex at the expected span each time, so the test does not
  // depend on menu order.
  const StringSystem sys = increment_system();
  Word w(U"11↑=11↑");
  std::string input;
  for (const Span want : {Span{5, 2}, Span{4, 2}, Span{3, 2}}) {
    const auto rx = find_redexes(sys, w);
    std::size_t i = 0;
    while (i < rx.size() && !(rx[i].span == want)) ++i;
    REQUIRE(i < rx.size());
    input += std::to_string(i) + "\n";
    w = apply_rule(w, *sys.rule(rx[i].rule), want);
  }
  const auto path = scratch("repl-word.txt");
  input += "w " + path.string() + "\n";
  auto r = run({"repl", "word", "11^=11^"}, input);
  CHECK(r.status == cli::kOk);
  CHECK(slurp(path) == kThreePlusOne);
}

TEST_CASE("repl: bad input and undo") {
  auto r = run({"repl", "term", "K a b"}, "7\nzap\n0\nu\nu\n");
  CHECK(r.status == cli::kOk);
  CHECK(r.out.find("invalid selection '7'") != std::string::npos);
  CHECK(r.out.find("invalid selection 'zap'") != std::string::npos);
  CHECK(r.out.find("[1] a") != std::string::npos);
  CHECK(r.out.find("nothing to undo") != std::string::npos);
  CHECK(run({"repl", "tree", "x"}).status == cli::kFailure);
}

TEST_CASE("binary exit codes") {
  auto r = run_binary("increment 3");
  CHECK(r.status == 0);
  CHECK(r.out == kThreePlusOne);
  CHECK(run_binary("arith '3 + 1'").out == "4\n");

  const auto bad = scratch("bin-bad.txt");
  std::string mutated = kThreePlusOne;
  mutated.replace(mutated.find("eq-up"), 5, "one-up");
  write(bad, mutated);
  CHECK(run_binary("verify builtin " + bad.string()).status == 1);
  CHECK(run_binary("verify builtin " + scratch("nope.txt").string()).status == 2);
  CHECK(run_binary("derive builtin 1=1 0=0").status == 1);
  CHECK(run_binary("no-such-command").status == 2);
}

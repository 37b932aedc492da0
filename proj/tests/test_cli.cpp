#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "wavestrata/cli.hpp"
#include "wavestrata/core.hpp"
#include "wavestrata/emit.hpp"

namespace fs = std::filesystem;
using namespace wavestrata;

namespace {

int run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "wavestrata");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return run(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() / ("wavestrata_cli_" + std::to_string(++counter));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("curves example writes 100 rows and a sidecar") {
  TempDir t;
  const std::string out = t.file("c2.csv");
  REQUIRE(run_cli({"curves", "--curve", "c2", "--rho", "0", "--h", "1", "--k-min", "0.1", "--k-max", "3", "--n",
                   "100", "-o", out}) == 0);
  const std::string csv = slurp(out);
  CHECK(count_lines(csv) == 101);
  CHECK(csv.find('\r') == std::string::npos);
  REQUIRE(fs::exists(out + ".meta.json"));
  const auto meta = nlohmann::json::parse(slurp(out + ".meta.json"));
  for (const char* key : {"command", "params", "tolerances", "residual_summary", "grid_n", "versions"})
    CHECK(meta.contains(key));
  CHECK(meta["params"]["rho"] == 0.0);
  CHECK(meta["params"]["h"] == 1.0);
}

TEST_CASE("documents") {
  TempDir t;
  const std::string cls = t.file("classify.json");
  REQUIRE(run_cli({"classify", "--rho", "0.5", "--h", "1", "--beta", "0.6", "--alpha", "1.6", "-o", cls}) == 0);
  const auto c = nlohmann::json::parse(slurp(cls));
  CHECK(c["label"] == "COMPLEX_QUARTET");
  CHECK(c["roots"].is_array());

  const std::string hopf = t.file("hopf.json");
  REQUIRE(run_cli({"coeffs", "hopf", "--rho", "0.9", "--h", "1", "--k", "2.0", "-o", hopf}) == 0);
  const auto h = nlohmann::json::parse(slurp(hopf));
  for (const char* key : {"c1", "c3", "gamma1", "classification"}) CHECK(h.contains(key));
  CHECK(h["c1"].get<double>() < 0.0);
}

TEST_CASE("exit codes") {
  TempDir t;
  CHECK(run_cli({"curves", "--curve", "c2", "--rho", "1.5", "--h", "1", "-o", t.file("a.csv")}) == 2);
  CHECK_FALSE(fs::exists(t.file("a.csv")));
  CHECK(run_cli({"curves", "--curve", "c9", "--rho", "0", "--h", "1", "-o", t.file("b.csv")}) == 2);
  CHECK(run_cli({"curves", "--no-such-flag"}) == 2);
  CHECK(run_cli({"nls-envelope", "--kind", "bright", "--delta", "-1", "--c1", "-1", "--c3", "1", "-o",
                 t.file("c.csv")}) == 2);
  // P >= 2 violates the hyperbolicity precondition
  CHECK(run_cli({"solve", "quartic", "--P", "2.5", "--q", "1", "--c", "0", "-o", t.file("d.csv")}) == 2);
  // defocusing cubic: no nontrivial orbit exists, Newton must not report u = 0
  CHECK(run_cli({"solve", "quartic", "--P", "-2", "--q", "0", "--c", "-1", "-o", t.file("e.csv")}) == 3);
  CHECK_FALSE(fs::exists(t.file("e.csv")));
}

TEST_CASE("determinism across reruns and --jobs") {
  TempDir t;
  const std::vector<std::vector<std::string>> cmds = {
      {"curves", "--curve", "c1", "--rho", "0.3", "--h", "2", "--n", "60"},
      {"c3-scan", "--rho", "0.9", "--h", "1", "--n", "80"},
      {"explicit", "o2", "--rho", "0.2", "--h", "2", "--beta", "1"},
      {"solve", "quartic", "--P", "-2", "--q", "1", "--c", "0"},
  };
  int idx = 0;
  for (const auto& base : cmds) {
    std::string ref;
    for (const char* jobs : {"1", "1", "4"}) {
      auto args = base;
      const std::string out = t.file("run" + std::to_string(idx++) + ".csv");
      args.insert(args.end(), {"--jobs", jobs, "-o", out});
      REQUIRE(run_cli(args) == 0);
      const std::string data = slurp(out);
      if (ref.empty())
        ref = data;
      else
        CHECK(data == ref);
      CHECK(slurp(out + ".meta.json") == slurp(t.file("run" + std::to_string(idx - 1) + ".csv.meta.json")));
    }
  }
}

TEST_CASE("config file supplies defaults and flags override") {
  TempDir t;
  {
    std::ofstream cfg(t.file("run.cfg"));
    cfg << "rho=0.3\nh=2\nn=7\n";
  }
  const std::string a = t.file("a.csv"), b = t.file("b.csv");
  REQUIRE(run_cli({"--config", t.file("run.cfg"), "curves", "--curve", "c2", "-o", a}) == 0);
  CHECK(count_lines(slurp(a)) == 8);
  CHECK(nlohmann::json::parse(slurp(a + ".meta.json"))["params"]["rho"] == 0.3);
  REQUIRE(run_cli({"--config", t.file("run.cfg"), "curves", "--curve", "c2", "--n", "3", "-o", b}) == 0);
  CHECK(count_lines(slurp(b)) == 4);
}

TEST_CASE("emission edge cases") {
  TempDir t;
  Dataset empty{{"k", "beta", "alpha"}, {}};
  emit_dataset(empty, Format::Csv, t.file("empty.csv"));
  CHECK(slurp(t.file("empty.csv")) == "k,beta,alpha\n");

  Dataset bad{{"x", "y"}, {{1.0, 2.0}, {2.0, std::numeric_limits<double>::quiet_NaN()}}};
  ErrorCode code = ErrorCode::InvalidArgument;
  try {
    emit_dataset(bad, Format::Csv, t.file("bad.csv"));
  } catch (const Error& e) {
    code = e.code();
  }
  CHECK(code == ErrorCode::NonFinite);
  CHECK_FALSE(is_validation_error(code));
  CHECK_FALSE(fs::exists(t.file("bad.csv")));

  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1e-20) == "1e-20");
  CHECK(std::stod(format_double(M_PI)) == M_PI);

  Dataset mixed{{"name", "n", "v"}, {{std::string("a,b"), std::int64_t{3}, 0.5}}};
  CHECK(render_csv(mixed) == "name,n,v\n\"a,b\",3,0.5\n");
  CHECK(to_json(mixed).dump() == R"([{"name":"a,b","n":3,"v":0.5}])");
}

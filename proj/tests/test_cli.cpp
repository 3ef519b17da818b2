#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

// End-to-end checks through the installed binary; SPI_CLI_PATH is injected
// by the build.

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

const fs::path& work_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("spi_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

RunResult run(const std::string& args) {
  fs::path out = work_dir() / "stdout.txt";
  fs::path err = work_dir() / "stderr.txt";
  std::string cmd = std::string(SPI_CLI_PATH) + " " + args + " > " +
                    out.string() + " 2> " + err.string();
  int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

int count_of(const std::string& hay, const std::string& needle) {
  int cnt = 0;
  for (std::size_t at = hay.find(needle); at != std::string::npos;
       at = hay.find(needle, at + 1))
    ++cnt;
  return cnt;
}

std::string path_of(const std::string& name) {
  return (work_dir() / name).string();
}

}  // namespace

TEST_CASE("cli: no subcommand is a usage error") {
  CHECK(run("").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("gen --kind nonsense --n 8 --out x.spi").code == 2);
}

TEST_CASE("cli: generate, verify and sort a chain union") {
  std::string f = path_of("union.spi");
  RunResult gen = run("gen --kind chain-union --n 30 --chains 5 --seed 3 --out " + f);
  CHECK(gen.code == 0);
  CHECK(contains(gen.out, "kind=chain-union"));
  CHECK(contains(gen.out, "n=30"));
  CHECK(fs::exists(f));

  RunResult ver = run("verify --in " + f);
  CHECK(ver.code == 0);
  CHECK(contains(ver.out, "ok=1"));
  CHECK(contains(ver.out, "n=30"));

  RunResult sort = run("sort --in " + f + " --c 2");
  CHECK(sort.code == 0);
  CHECK(contains(sort.out, "ok=1"));
  CHECK(contains(sort.out, "linear_queries="));
  CHECK(contains(sort.out, "partial_queries="));
  CHECK(contains(sort.out, "log2e="));
  CHECK(contains(sort.out, "# wall_ms="));
}

TEST_CASE("cli: family generation reports its shape and uses the c hint") {
  std::string f = path_of("family.spi");
  RunResult gen = run("gen --kind family --n 256 --c 2 --seed 1 --out " + f);
  CHECK(gen.code == 0);
  CHECK(contains(gen.out, "w=16"));
  CHECK(contains(gen.out, "h=8"));

  RunResult sort = run("sort --in " + f);  // no --c: falls back to the hint
  CHECK(sort.code == 0);
  CHECK(contains(sort.out, "c=2"));
  CHECK(contains(sort.out, "w=2"));
  CHECK(contains(sort.out, "ok=1"));
  CHECK(contains(sort.out, "linear_ratio="));
  CHECK(contains(sort.out, "partial_ratio="));
}

TEST_CASE("cli: invalid family sizes point at the nearest valid one") {
  RunResult gen = run("gen --kind family --n 50 --c 2 --out " + path_of("no.spi"));
  CHECK(gen.code == 2);
  CHECK(contains(gen.err, "36"));
  CHECK(!fs::exists(path_of("no.spi")));
}

TEST_CASE("cli: poset generation, sorting and counting") {
  std::string f = path_of("poset.spi");
  CHECK(run("gen --kind poset --n 12 --density 0.4 --seed 5 --out " + f).code == 0);
  RunResult sort = run("sort --in " + f + " --c 2");
  CHECK(sort.code == 0);
  CHECK(contains(sort.out, "ok=1"));

  RunResult cnt = run("count --in " + f);
  CHECK(cnt.code == 0);
  CHECK(contains(cnt.out, "count="));
  CHECK(contains(cnt.out, "log2e="));

  CHECK(run("gen --kind poset --n 100 --out " + path_of("big.spi")).code == 2);
}

TEST_CASE("cli: malformed files are format errors") {
  std::string bad = path_of("bad.spi");
  std::ofstream(bad) << "SPI 2\nn 3\n";
  RunResult ver = run("verify --in " + bad);
  CHECK(ver.code == 3);
  CHECK(contains(ver.err, "invalid instance"));

  CHECK(run("verify --in " + path_of("missing.spi")).code == 3);
  CHECK(run("sort --in " + path_of("missing.spi")).code == 3);
}

TEST_CASE("cli: counting beyond the brute-force limit") {
  // A 13-element poset that is not a chain union: 1 < 2 and 1 < 3.
  std::string vee = path_of("vee.spi");
  std::ofstream(vee) << "SPI 1\nn 13\nedges 2\n1 2\n1 3\n"
                     << "order 1 2 3 4 5 6 7 8 9 10 11 12 13\n";
  CHECK(run("verify --in " + vee).code == 0);
  CHECK(run("count --in " + vee).code == 5);  // default limit is 12

  RunResult cnt = run("count --in " + vee + " --limit 13");
  CHECK(cnt.code == 0);
  CHECK(contains(cnt.out, "count=2075673600"));  // 13! / 3

  CHECK(run("count --in " + vee + " --limit 25").code == 2);

  // A chain union of any size still gets its closed form.
  std::string f = path_of("bigunion.spi");
  CHECK(run("gen --kind chain-union --n 200 --chains 8 --seed 2 --out " + f).code == 0);
  RunResult big = run("count --in " + f);
  CHECK(big.code == 0);
  CHECK(contains(big.out, "log2e="));
  CHECK(contains(big.out, "closed_form=1"));
}

TEST_CASE("cli: bench prints one row per cell plus drift lines") {
  RunResult ben = run("bench --n 16,32 --kind chain-union --chains 3 --seed 2");
  CHECK(ben.code == 0);
  CHECK(count_of(ben.out, "cell kind=chain-union") == 2);
  CHECK(count_of(ben.out, "drift c=2") == 1);
  CHECK(contains(ben.out, "k_linear="));
  CHECK(contains(ben.out, "k_partial="));
  CHECK(contains(ben.out, "# wall_ms="));
}

TEST_CASE("cli: bench with nothing to run is an error") {
  RunResult ben = run("bench --n 50,51 --kind family");
  CHECK(ben.code == 2);
  CHECK(contains(ben.err, "skipping"));
  CHECK(contains(ben.err, "bench matrix is empty"));
}

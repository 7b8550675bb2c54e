// Drives the installed CLI binary end to end: exit codes, output formats,
// corpus determinism.  argv[1] = path to the binary, argv[2] = corpus dir.
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

int failures = 0;
std::string g_bin;
fs::path g_tmp;

#define CHECK(cond)                                                        \
  do {                                                                     \
    if (!(cond)) {                                                         \
      std::fprintf(stderr, "FAIL %s:%d: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                          \
    }                                                                      \
  } while (0)

struct RunResult {
  int code;
  std::string out;
};

RunResult run(const std::string& args) {
  fs::path outfile = g_tmp / "out.txt";
  std::string cmd = g_bin + " " + args + " > " + outfile.string() + " 2>&1";
  int rc = std::system(cmd.c_str());
  RunResult r;
  r.code = rc == -1 ? -1 : WEXITSTATUS(rc);
  std::ifstream in(outfile);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  return r;
}

fs::path write_case(const std::string& name, const std::string& text) {
  fs::path p = g_tmp / name;
  std::ofstream out(p);
  out << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: cli_tests <binary> <corpus-dir>\n");
    return 1;
  }
  g_bin = argv[1];
  g_tmp = fs::temp_directory_path() / "orbital_cli_tests";
  fs::remove_all(g_tmp);
  fs::create_directories(g_tmp);

  fs::path cbrt2 = write_case("cbrt2.case.json",
                              R"({"chi":["0","0","-2"],"field":{"kind":"p-adic","p":2},"n":3,
                                  "oracle":{"enabled":true,"precision":"auto"},
                                  "queries":[{"k":[0,0,1],"measure":"geometric"}]})");

  // analyze: profile fields and exit 0
  RunResult an = run("analyze " + cbrt2.string() + " --format text");
  CHECK(an.code == 0);
  CHECK(an.out.find("ramification: ramified") != std::string::npos);

  // eval: spot values from the GL3 theorems
  RunResult ev = run("eval " + cbrt2.string() + " --format json");
  CHECK(ev.code == 0);
  CHECK(ev.out.find("\"rational\": \"21/32\"") != std::string::npos);
  fs::path unr = write_case("unr.case.json",
                            R"({"chi":["0","4","8"],"field":{"kind":"p-adic","p":2},"n":3})");
  RunResult ev2 = run("eval " + unr.string() + " --k 1,1,1 --format json");
  CHECK(ev2.code == 0);
  CHECK(ev2.out.find("\"3/64\"") != std::string::npos);
  RunResult ev3 = run("eval " + unr.string() + " --k 0,0,2");
  CHECK(ev3.code == 0);
  CHECK(ev3.out.find("\"qvalue\": \"0\"") != std::string::npos);

  // verify: oracle agreement, exit 0
  RunResult vf = run("verify " + cbrt2.string() + " --jobs 2 --format text");
  CHECK(vf.code == 0);
  CHECK(vf.out.find("verify: pass") != std::string::npos);

  // exit 2: reducible input
  fs::path red = write_case("red.case.json",
                            R"({"chi":["0","-1"],"field":{"kind":"p-adic","p":2},"n":2})");
  CHECK(run("analyze " + red.string()).code == 2);
  // exit 4: malformed JSON / bad flags
  fs::path broken = write_case("broken.case.json", "{nope");
  CHECK(run("analyze " + broken.string()).code == 4);
  CHECK(run("frobnicate").code == 4);
  // exit 5: quotient measure in characteristic p <= n
  fs::path lchar = write_case("lchar.case.json",
                              R"({"chi":[[0,1],[0,1]],"field":{"kind":"laurent","p":2},"n":2,
                                  "queries":[{"k":[0,1],"measure":"quotient"}]})");
  CHECK(run("eval " + lchar.string()).code == 5);
  // exit 7: precision outside the desk budget
  CHECK(run("verify " + cbrt2.string() + " --precision 9").code == 7);

  // table: symbolic profile rows and integrality footer
  RunResult tb = run("table --n 3 --d 3 --ram unramified --S 3 --format csv");
  CHECK(tb.code == 0);
  CHECK(tb.out.find("\"(0,1,2)\"") != std::string::npos);
  CHECK(tb.out.find("# quotient-integrality: ok") != std::string::npos);

  // table from a case file
  RunResult tc = run("table " + unr.string() + " --format text");
  CHECK(tc.code == 0);
  CHECK(tc.out.find("(0,1,2)") != std::string::npos);
  RunResult ev4 = run("eval " + unr.string() + " --k 0,1,2 --format json");
  CHECK(ev4.code == 0);
  CHECK(ev4.out.find("\"21/32\"") != std::string::npos);

  // corpus determinism: identical result bytes for --jobs 1 and --jobs 8
  std::string corpus = argv[2];
  fs::path s1 = g_tmp / "s1.json", s8 = g_tmp / "s8.json";
  RunResult c1 = run("corpus run " + corpus + " --jobs 1 --out " + s1.string());
  RunResult c8 = run("corpus run " + corpus + " --jobs 8 --out " + s8.string());
  CHECK(c1.code == 0);
  CHECK(c8.code == 0);
  CHECK(slurp(s1) == slurp(s8));
  CHECK(!slurp(s1).empty());

  // corpus diff: corrupt one golden, expect exit 6
  fs::path little = g_tmp / "little_corpus";
  fs::create_directories(little);
  fs::copy_file(fs::path(corpus) / "q2_sqrt2.case.json", little / "q2_sqrt2.case.json");
  fs::copy_file(fs::path(corpus) / "q2_sqrt2.golden.json", little / "q2_sqrt2.golden.json");
  CHECK(run("corpus run " + little.string()).code == 0);
  {
    std::string g = slurp(little / "q2_sqrt2.golden.json");
    auto pos = g.find("3/4");
    CHECK(pos != std::string::npos);
    g.replace(pos, 3, "3/8");
    std::ofstream out(little / "q2_sqrt2.golden.json");
    out << g;
  }
  CHECK(run("corpus run " + little.string()).code == 6);

  fs::remove_all(g_tmp);
  if (failures) {
    std::fprintf(stderr, "%d CLI check(s) failed\n", failures);
    return 1;
  }
  std::puts("cli_tests: all checks passed");
  return 0;
}

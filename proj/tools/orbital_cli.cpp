// Command-line driver. All functionality goes through the C API in orbital.h.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "orbital.h"

namespace {

int exit_code(orb_status st) {
  switch (st) {
    case ORB_OK: return 0;
    case ORB_NOT_ELLIPTIC: return 2;
    case ORB_WITNESS_NOT_FOUND: return 3;
    case ORB_BAD_INPUT: return 4;
    case ORB_CHARACTERISTIC_UNSUPPORTED: return 5;
    case ORB_MISMATCH: return 6;
    case ORB_BUDGET_EXCEEDED: return 7;
    case ORB_DEGENERATE_INPUT: return 4;
    default: return 1;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot open " << path << "\n";
    std::exit(4);
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string stem_of(const std::string& path) {
  std::string name = path;
  if (auto pos = name.find_last_of('/'); pos != std::string::npos) name = name.substr(pos + 1);
  for (const char* suffix : {".case.json", ".json"}) {
    std::string s = suffix;
    if (name.size() > s.size() && name.substr(name.size() - s.size()) == s)
      return name.substr(0, name.size() - s.size());
  }
  return name;
}

int finish(orb_status st, char* out) {
  if (out) {
    std::fputs(out, stdout);
    orb_string_free(out);
  }
  if (st != ORB_OK) std::cerr << "error: " << orb_last_error() << "\n";
  return exit_code(st);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact orbital integrals on the spherical Hecke algebra of GL2/GL3"};
  app.require_subcommand(1);

  std::string case_path, format = "json", k_csv, measure, precision = "auto";
  std::string ram = "unramified", out_path, timing_path;
  int jobs = 1;
  long long n = 0, d = 0, S = 0, kmin = 0;
  unsigned q = 0;
  bool write_golden = false;

  auto* analyze = app.add_subcommand("analyze", "classify a characteristic polynomial");
  analyze->add_option("case", case_path, "case file (JSON)")->required();
  analyze->add_option("--format", format, "json|text");

  auto* eval = app.add_subcommand("eval", "evaluate closed-form orbital integrals");
  eval->add_option("case", case_path)->required();
  eval->add_option("--k", k_csv, "lattice type, e.g. \"0,1,2\"");
  eval->add_option("--measure", measure, "geometric|quotient|both");
  eval->add_option("--format", format, "json|text");

  auto* table = app.add_subcommand("table", "tabulate all admissible types");
  table->add_option("case", case_path, "case file (or use --n/--d/--ram/--S)");
  table->add_option("--n", n);
  table->add_option("--d", d);
  table->add_option("--ram", ram, "unramified|ramified");
  table->add_option("--S", S);
  table->add_option("--q", q, "concrete q (0 = symbolic)");
  table->add_option("--kmin", kmin, "lower bound for k1 (default 0)");
  table->add_option("--format", format, "json|text|csv");

  auto* verify = app.add_subcommand("verify", "compare closed forms against counting oracles");
  verify->add_option("case", case_path)->required();
  verify->add_option("--precision", precision, "N or auto");
  verify->add_option("--jobs", jobs);
  verify->add_option("--format", format, "json|text");

  auto* corpus = app.add_subcommand("corpus", "golden corpus operations");
  auto* corpus_run = corpus->add_subcommand("run", "re-evaluate a corpus directory");
  corpus_run->add_option("dir", case_path)->required();
  corpus_run->add_option("--jobs", jobs);
  corpus_run->add_flag("--write-golden", write_golden, "write goldens instead of diffing");
  corpus_run->add_option("--out", out_path, "write the summary to a file");
  corpus_run->add_option("--timing-out", timing_path, "write the timing block to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 4;
  }

  char* out = nullptr;
  if (analyze->parsed()) {
    std::string text = read_file(case_path);
    orb_status st = orb_cmd_analyze(text.c_str(), stem_of(case_path).c_str(), format.c_str(), &out);
    return finish(st, out);
  }
  if (eval->parsed()) {
    std::string text = read_file(case_path);
    orb_status st = orb_cmd_eval(text.c_str(), stem_of(case_path).c_str(),
                                 k_csv.empty() ? nullptr : k_csv.c_str(),
                                 measure.empty() ? nullptr : measure.c_str(), format.c_str(), &out);
    return finish(st, out);
  }
  if (table->parsed()) {
    if (!case_path.empty()) {
      std::string text = read_file(case_path);
      orb_status st = orb_cmd_table(text.c_str(), nullptr, kmin, format.c_str(), &out);
      return finish(st, out);
    }
    orb_profile* p = nullptr;
    orb_status st = orb_profile_abstract(static_cast<int>(n), d, ram.c_str(), S, q, &p);
    if (st != ORB_OK) return finish(st, nullptr);
    st = orb_cmd_table(nullptr, p, kmin, format.c_str(), &out);
    orb_profile_free(p);
    return finish(st, out);
  }
  if (verify->parsed()) {
    std::string text = read_file(case_path);
    orb_status st = orb_cmd_verify(text.c_str(), stem_of(case_path).c_str(), precision.c_str(),
                                   jobs, format.c_str(), &out);
    return finish(st, out);
  }
  if (corpus_run->parsed()) {
    char* timing = nullptr;
    orb_status st =
        orb_cmd_corpus_run(case_path.c_str(), jobs, write_golden ? 1 : 0, &out, &timing);
    if (timing) {
      if (!timing_path.empty()) {
        std::ofstream tf(timing_path);
        tf << timing;
      }
      orb_string_free(timing);
    }
    if (!out_path.empty() && out) {
      std::ofstream of(out_path);
      of << out;
      orb_string_free(out);
      out = nullptr;
    }
    return finish(st, out);
  }
  return 4;
}

#pragma once

#include <optional>

#include "orbital/oracle.hpp"

namespace orbital {

enum class Measure { geometric, quotient, both };
enum class Format { json, text, csv };

Measure parse_measure(const std::string& s);
Format parse_format(const std::string& s);

struct Query {
  LatticeType k;
  Measure measure = Measure::geometric;
};

struct OracleSpec {
  bool enabled = false;
  bool auto_precision = true;
  unsigned precision = 0;
};

/// One input case: field model, characteristic polynomial, queries, oracle
/// settings.  The file format is JSON; serialize() emits the canonical bytes
/// (sorted keys, two-space indent, trailing newline), and parsing is strict.
struct CaseFile {
  std::string id;
  FieldSpec field{FieldKind::padic, 2};
  int n = 2;
  std::vector<Scalar> coeffs;
  std::vector<Query> queries;
  OracleSpec oracle;

  CharPoly chi() const { return CharPoly(field, coeffs); }
  static CaseFile parse(const std::string& json_text, const std::string& id_hint);
  std::string serialize() const;
};

struct QueryResult {
  LatticeType k;
  Measure measure = Measure::geometric;
  std::string qvalue_geometric, rational_geometric;
  std::string qvalue_quotient, rational_quotient;
};

struct OracleCheck {
  LatticeType k;
  std::string measure;  // "geometric" or "quotient"
  unsigned N = 0;       // fiber precision (geometric) or window (quotient)
  long long shift = 0;  // k1-reduction applied before the fiber count
  std::string count;    // raw fiber count / orbit count
  std::string volume;   // exact rational
  std::string expected;
  std::optional<bool> stabilized;
  bool match = false;
  double millis = 0;  // wall time; rendered in verify output, never in goldens
};

struct CaseResult {
  std::string id;
  GammaProfile profile;
  WitnessReport witness;
  std::vector<QueryResult> queries;
  std::vector<OracleCheck> oracle_checks;
  bool oracle_ok = true;
  double millis = 0;
};

CaseResult run_case(const CaseFile& cf, int jobs);

/// Canonical golden bytes for a result (timing excluded).
std::string golden_bytes(const CaseResult& r);
std::vector<std::string> diff_against_golden(const CaseResult& r, const std::string& golden_text);

std::string cmd_analyze(const CaseFile& cf, Format fmt);
std::string cmd_eval(const CaseFile& cf, const std::optional<LatticeType>& k_override,
                     std::optional<Measure> measure_override, Format fmt);
std::string cmd_table(const GammaProfile& profile, long long k1_min, Format fmt);

struct VerifyOutcome {
  std::string rendered;
  bool ok = true;
};
VerifyOutcome cmd_verify(const CaseFile& cf, std::optional<unsigned> precision, int jobs, Format fmt);

struct CorpusOutcome {
  std::string summary;  // deterministic bytes
  std::string timing;   // wall-clock block, kept apart from the result bytes
  bool ok = true;
  size_t cases = 0;
};
CorpusOutcome cmd_corpus_run(const std::string& dir, int jobs, bool write_golden);

std::string residue_poly_str(const std::vector<uint32_t>& f);

}  // namespace orbital

#include "orbital/casefile.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace orbital {

using nlohmann::json;

Measure parse_measure(const std::string& s) {
  if (s == "geometric") return Measure::geometric;
  if (s == "quotient") return Measure::quotient;
  if (s == "both") return Measure::both;
  raise(errc::bad_input, "unknown measure: " + s);
}

static std::string measure_name(Measure m) {
  switch (m) {
    case Measure::geometric: return "geometric";
    case Measure::quotient: return "quotient";
    default: return "both";
  }
}

Format parse_format(const std::string& s) {
  if (s == "json") return Format::json;
  if (s == "text") return Format::text;
  if (s == "csv") return Format::csv;
  raise(errc::bad_input, "unknown format: " + s);
}

std::string residue_poly_str(const std::vector<uint32_t>& f) {
  std::string out;
  for (size_t i = f.size(); i-- > 0;) {
    if (f[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (f[i] != 1 || i == 0) out += std::to_string(f[i]);
    if (i >= 1) {
      if (f[i] != 1) out += "*";
      out += i == 1 ? "x" : "x^" + std::to_string(i);
    }
  }
  return out.empty() ? "0" : out;
}

static LatticeType type_from_json(int n, const json& j) {
  if (!j.is_array() || j.size() != static_cast<size_t>(n))
    raise(errc::bad_input, "k must be an array of length n");
  std::array<long long, 3> k{0, 0, 0};
  for (size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number_integer()) raise(errc::bad_input, "k entries must be integers");
    k[i] = j[i].get<long long>();
  }
  return LatticeType(n, k);
}

CaseFile CaseFile::parse(const std::string& json_text, const std::string& id_hint) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const std::exception& e) {
    raise(errc::bad_input, std::string("invalid JSON: ") + e.what());
  }
  try {
    CaseFile cf;
    cf.id = id_hint;
    const auto& jf = j.at("field");
    std::string kind = jf.at("kind").get<std::string>();
    if (kind != "p-adic" && kind != "laurent") raise(errc::bad_input, "field.kind must be p-adic or laurent");
    cf.field = FieldSpec(kind == "p-adic" ? FieldKind::padic : FieldKind::laurent,
                         jf.at("p").get<unsigned>());
    cf.n = j.at("n").get<int>();
    if (cf.n != 2 && cf.n != 3) raise(errc::bad_input, "n must be 2 or 3");
    const auto& jc = j.at("chi");
    if (!jc.is_array() || jc.size() != static_cast<size_t>(cf.n))
      raise(errc::bad_input, "chi must list the n coefficients c_1..c_n");
    for (const auto& c : jc) {
      if (cf.field.kind == FieldKind::padic) {
        if (!c.is_string()) raise(errc::bad_input, "p-adic coefficients are decimal strings");
        cf.coeffs.push_back(Scalar::parse(cf.field, c.get<std::string>()));
      } else {
        if (!c.is_array()) raise(errc::bad_input, "laurent coefficients are residue lists");
        std::vector<uint32_t> digits;
        for (const auto& d : c) digits.push_back(d.get<uint32_t>());
        cf.coeffs.push_back(Scalar::from_residues(cf.field, std::move(digits)));
      }
    }
    if (j.contains("queries")) {
      for (const auto& q : j.at("queries")) {
        Query query;
        query.k = type_from_json(cf.n, q.at("k"));
        query.measure = q.contains("measure") ? parse_measure(q.at("measure").get<std::string>())
                                              : Measure::geometric;
        cf.queries.push_back(query);
      }
    }
    if (j.contains("oracle")) {
      const auto& jo = j.at("oracle");
      cf.oracle.enabled = jo.value("enabled", false);
      if (jo.contains("precision") && !jo.at("precision").is_string()) {
        cf.oracle.auto_precision = false;
        cf.oracle.precision = jo.at("precision").get<unsigned>();
      }
    }
    (void)cf.chi();  // validates degree/regularity early
    return cf;
  } catch (const error&) {
    throw;
  } catch (const std::exception& e) {
    raise(errc::bad_input, std::string("malformed case file: ") + e.what());
  }
}

std::string CaseFile::serialize() const {
  json j;
  j["field"] = {{"kind", field.kind_name()}, {"p", field.p}};
  j["n"] = n;
  json jc = json::array();
  for (const auto& c : coeffs) {
    if (field.kind == FieldKind::padic) {
      jc.push_back(c.str());
    } else {
      jc.push_back(c.residue_coeffs());
    }
  }
  j["chi"] = jc;
  json jq = json::array();
  for (const auto& q : queries) {
    std::vector<long long> k(q.k.k.begin(), q.k.k.begin() + q.k.n);
    jq.push_back({{"k", k}, {"measure", measure_name(q.measure)}});
  }
  j["queries"] = jq;
  j["oracle"] = json{{"enabled", oracle.enabled}};
  if (oracle.auto_precision)
    j["oracle"]["precision"] = "auto";
  else
    j["oracle"]["precision"] = oracle.precision;
  return j.dump(2) + "\n";
}

namespace {

json type_json(const LatticeType& k) {
  std::vector<long long> v(k.k.begin(), k.k.begin() + k.n);
  return json(v);
}

json profile_json(const GammaProfile& p, const WitnessReport& w) {
  json j;
  j["n"] = p.n;
  j["q"] = p.q;
  j["d"] = p.d;
  j["delta_ord"] = p.delta_ord;
  j["ram"] = ram_name(p.ram);
  j["S"] = p.S;
  if (p.n == 3) {
    j["d_prime"] = p.d_prime;
    j["epsilon"] = p.epsilon;
  }
  if (p.witness_a) j["witness_a"] = p.witness_a->str();
  j["witness_da"] = p.witness_da;
  json rep;
  rep["depth"] = w.depth;
  rep["frontier_sizes"] = w.frontier_sizes;
  rep["d_a"] = w.d_a;
  rep["residual"] = residue_poly_str(w.residual);
  j["witness_report"] = rep;
  return j;
}

void eval_query(const GammaProfile& p, const Query& q, QueryResult& out) {
  out.k = q.k;
  out.measure = q.measure;
  BigInt qq = p.q;
  if (q.measure != Measure::quotient) {
    QValue v = so_hecke_geometric(p, q.k);
    out.qvalue_geometric = v.str();
    out.rational_geometric = p.q ? v.eval_at(qq).str() : "";
  }
  if (q.measure != Measure::geometric) {
    QValue v = so_hecke_quotient(p, q.k);
    out.qvalue_quotient = v.str();
    out.rational_quotient = p.q ? v.eval_at(qq).str() : "";
  }
}

json query_json(const QueryResult& r) {
  json j;
  j["k"] = type_json(r.k);
  j["measure"] = measure_name(r.measure);
  if (!r.qvalue_geometric.empty()) {
    j["qvalue"] = r.qvalue_geometric;
    if (!r.rational_geometric.empty()) j["rational"] = r.rational_geometric;
  }
  if (!r.qvalue_quotient.empty()) {
    j["qvalue_quotient"] = r.qvalue_quotient;
    if (!r.rational_quotient.empty()) j["rational_quotient"] = r.rational_quotient;
  }
  return j;
}

json oracle_json(const OracleCheck& c, bool include_timing) {
  json j;
  if (include_timing) j["millis"] = c.millis;
  j["k"] = type_json(c.k);
  j["measure"] = c.measure;
  j["N"] = c.N;
  if (c.shift) j["shift"] = c.shift;
  j["count"] = c.count;
  j["volume"] = c.volume;
  j["expected"] = c.expected;
  if (c.stabilized) j["stabilized"] = *c.stabilized;
  j["match"] = c.match;
  return j;
}

json result_json(const CaseResult& r, bool include_timing = false) {
  json j;
  j["id"] = r.id;
  j["profile"] = profile_json(r.profile, r.witness);
  json queries = json::array();
  for (const auto& q : r.queries) queries.push_back(query_json(q));
  j["queries"] = queries;
  if (!r.oracle_checks.empty()) {
    json oc = json::array();
    for (const auto& c : r.oracle_checks) oc.push_back(oracle_json(c, include_timing));
    j["oracle"] = oc;
  }
  return j;
}

// Fiber check; types with negative k1 are reduced to k1 = 0 on the rescaled
// polynomial first.
OracleCheck fiber_check(OracleEngine& eng, const CharPoly& chi, const GammaProfile& p,
                        const LatticeType& k, std::optional<unsigned> precision) {
  OracleCheck c;
  c.k = k;
  c.measure = "geometric";
  Rational expected = so_hecke_geometric(p, k).eval_at(p.q);
  c.expected = expected.str();
  const long long k1 = k.k[0];
  if (k1 >= 0) {
    unsigned N = precision ? *precision : OracleEngine::auto_precision(chi);
    OracleReport rep = eng.fiber_volume(chi, k, N);
    c.N = N;
    c.count = rep.count.str();
    c.volume = rep.volume.str();
    c.stabilized = rep.stabilized;
    c.match = rep.volume == expected;
    c.millis = rep.millis;
    return c;
  }
  // SO_gamma(k) = q^{-k1 n(n-1)/2} SO_{gamma^{(k1)}}(k - k1); count on the rescaled side
  CharPoly chi2 = chi.rescale(k1);
  GammaProfile p2 = build_profile(chi2);
  LatticeType k2 = k.shifted(-k1);
  const long long shift_exp = k1 * p.n * (p.n - 1) / 2;
  if (!(so_hecke_geometric(p, k) == QValue::q_pow(-shift_exp) * so_hecke_geometric(p2, k2)))
    raise(errc::internal, "reduction relation violated between " + k.str() + " and " + k2.str());
  unsigned N = precision ? *precision : OracleEngine::auto_precision(chi2);
  OracleReport rep = eng.fiber_volume(chi2, k2, N);
  c.N = N;
  c.shift = k1;
  c.millis = rep.millis;
  c.count = rep.count.str();
  BigInt scale = 1;
  for (long long i = 0; i < -shift_exp; ++i) scale *= p.q;
  Rational scaled = rep.volume * Rational(scale, 1);
  c.volume = scaled.str();
  c.stabilized = rep.stabilized;
  c.match = scaled == expected;
  return c;
}

OracleCheck orbit_check(const CharPoly& chi, const GammaProfile& p, const LatticeType& k) {
  OracleCheck c;
  c.k = k;
  c.measure = "quotient";
  Rational expected = so_hecke_quotient(p, k).eval_at(p.q);
  c.expected = expected.str();
  long long got = -1;
  int used = 0;
  auto t0 = std::chrono::steady_clock::now();
  for (int m = 2; m <= 4; ++m) {
    try {
      got = lattice_orbit_count(chi, k, m);
      used = m;
      break;
    } catch (const error& e) {
      if (e.code() != errc::window_unstable || m == 4) throw;
    }
  }
  c.N = static_cast<unsigned>(used);
  c.count = std::to_string(got);
  c.volume = std::to_string(got);
  c.match = expected == Rational(got, 1);
  c.millis =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return c;
}

}  // namespace

CaseResult run_case(const CaseFile& cf, int jobs) {
  auto start = std::chrono::steady_clock::now();
  CaseResult r;
  r.id = cf.id;
  CharPoly chi = cf.chi();
  r.profile = build_profile(chi);
  WitnessResult w = find_witness(chi);
  r.witness = w.report;
  for (const auto& q : cf.queries) {
    QueryResult qr;
    eval_query(r.profile, q, qr);
    r.queries.push_back(qr);
  }
  if (cf.oracle.enabled) {
    OracleEngine eng(jobs);
    std::optional<unsigned> prec;
    if (!cf.oracle.auto_precision) prec = cf.oracle.precision;
    for (const auto& q : cf.queries) {
      if (q.measure != Measure::quotient) {
        OracleCheck c = fiber_check(eng, chi, r.profile, q.k, prec);
        r.oracle_ok = r.oracle_ok && c.match;
        r.oracle_checks.push_back(std::move(c));
      }
      if (q.measure != Measure::geometric && r.profile.n == 2 && r.profile.quotient_supported()) {
        OracleCheck c = orbit_check(chi, r.profile, q.k);
        r.oracle_ok = r.oracle_ok && c.match;
        r.oracle_checks.push_back(std::move(c));
      }
    }
  }
  r.millis =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::string golden_bytes(const CaseResult& r) { return result_json(r).dump(2) + "\n"; }

std::vector<std::string> diff_against_golden(const CaseResult& r, const std::string& golden_text) {
  std::vector<std::string> diffs;
  json got = result_json(r);
  json want;
  try {
    want = json::parse(golden_text);
  } catch (const std::exception&) {
    return {"golden file is not valid JSON"};
  }
  if (got == want) return diffs;
  for (const auto& key : {"id", "profile", "queries", "oracle"}) {
    json g = got.contains(key) ? got[key] : json();
    json w = want.contains(key) ? want[key] : json();
    if (g != w) diffs.push_back(std::string(key) + ": expected " + w.dump() + ", got " + g.dump());
  }
  if (diffs.empty()) diffs.push_back("structural difference");
  return diffs;
}

namespace {

std::string render_profile_text(const CaseResult& r) {
  std::ostringstream os;
  const auto& p = r.profile;
  os << "case " << r.id << "\n";
  os << "  n = " << p.n << ", q = " << p.q << ", d = " << p.d << ", ord(disc) = " << p.delta_ord
     << "\n";
  os << "  ramification: " << ram_name(p.ram) << ", S = " << p.S;
  if (p.n == 3) os << ", d' = " << p.d_prime << ", epsilon = " << p.epsilon;
  os << "\n";
  os << "  witness: a = " << (p.witness_a ? p.witness_a->str() : "-") << ", d_a = " << p.witness_da
     << ", depth = " << r.witness.depth << ", residual = " << residue_poly_str(r.witness.residual)
     << "\n";
  return os.str();
}

}  // namespace

std::string cmd_analyze(const CaseFile& cf, Format fmt) {
  CaseFile only_profile = cf;
  only_profile.queries.clear();
  only_profile.oracle.enabled = false;
  CaseResult r = run_case(only_profile, 1);
  if (fmt == Format::json) {
    json j;
    j["id"] = r.id;
    j["profile"] = profile_json(r.profile, r.witness);
    return j.dump(2) + "\n";
  }
  return render_profile_text(r);
}

std::string cmd_eval(const CaseFile& cf, const std::optional<LatticeType>& k_override,
                     std::optional<Measure> measure_override, Format fmt) {
  CaseFile c = cf;
  c.oracle.enabled = false;
  if (k_override) {
    c.queries.clear();
    c.queries.push_back({*k_override, measure_override.value_or(Measure::geometric)});
  } else if (measure_override) {
    for (auto& q : c.queries) q.measure = *measure_override;
  }
  CaseResult r = run_case(c, 1);
  if (fmt == Format::json) {
    json j = result_json(r);
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  os << render_profile_text(r);
  for (const auto& q : r.queries) {
    os << "  k = " << q.k.str();
    if (!q.qvalue_geometric.empty())
      os << "  geometric: " << q.qvalue_geometric
         << (q.rational_geometric.empty() ? "" : " = " + q.rational_geometric);
    if (!q.qvalue_quotient.empty())
      os << "  quotient: " << q.qvalue_quotient
         << (q.rational_quotient.empty() ? "" : " = " + q.rational_quotient);
    os << "\n";
  }
  return os.str();
}

std::string cmd_table(const GammaProfile& profile, long long k1_min, Format fmt) {
  auto types = admissible_types(profile.n, profile.d, k1_min);
  const std::vector<unsigned> sample_q = {2, 3, 5, 7, 8, 9};
  bool quot_ok = profile.quotient_supported();
  bool integrality_ok = true;
  json rows = json::array();
  std::ostringstream text;
  std::ostringstream csv;
  csv << "k,geometric,quotient";
  if (profile.q) csv << ",geometric_at_q,quotient_at_q";
  csv << "\n";
  for (const auto& t : types) {
    QValue g = so_hecke_geometric(profile, t);
    QValue qv;
    if (quot_ok) qv = so_hecke_quotient(profile, t);
    json row;
    row["k"] = type_json(t);
    row["geometric"] = g.str();
    if (quot_ok) row["quotient"] = qv.str();
    if (profile.q) {
      row["geometric_at_q"] = g.eval_at(profile.q).str();
      if (quot_ok) row["quotient_at_q"] = qv.eval_at(profile.q).str();
    }
    rows.push_back(row);
    if (quot_ok) {
      std::vector<unsigned> probe = profile.q ? std::vector<unsigned>{profile.q} : sample_q;
      for (unsigned qq : probe) {
        Rational v = qv.eval_at(qq);
        if (!v.is_integer() || v.num < 0) integrality_ok = false;
      }
    }
    text << t.str() << "  geometric " << g.str();
    if (profile.q) text << " = " << g.eval_at(profile.q).str();
    if (quot_ok) {
      text << "  quotient " << qv.str();
      if (profile.q) text << " = " << qv.eval_at(profile.q).str();
    }
    text << "\n";
    csv << "\"" << t.str() << "\"," << g.str() << "," << (quot_ok ? qv.str() : "n/a");
    if (profile.q) {
      csv << "," << g.eval_at(profile.q).str() << "," << (quot_ok ? qv.eval_at(profile.q).str() : "n/a");
    }
    csv << "\n";
  }
  if (quot_ok && !integrality_ok)
    raise(errc::internal, "quotient values failed the integrality check");
  std::string footer = quot_ok ? "quotient-integrality: ok" : "quotient: unsupported characteristic";
  if (fmt == Format::json) {
    json j;
    j["n"] = profile.n;
    j["d"] = profile.d;
    j["ram"] = ram_name(profile.ram);
    j["S"] = profile.S;
    if (profile.q) j["q"] = profile.q;
    j["rows"] = rows;
    j["footer"] = footer;
    return j.dump(2) + "\n";
  }
  if (fmt == Format::csv) {
    csv << "# " << footer << "\n";
    return csv.str();
  }
  text << footer << "\n";
  return text.str();
}

VerifyOutcome cmd_verify(const CaseFile& cf, std::optional<unsigned> precision, int jobs, Format fmt) {
  CaseFile c = cf;
  c.oracle.enabled = true;
  if (precision) {
    c.oracle.auto_precision = false;
    c.oracle.precision = *precision;
  }
  CaseResult r = run_case(c, jobs);
  VerifyOutcome out;
  out.ok = r.oracle_ok;
  if (fmt == Format::json) {
    json j = result_json(r, /*include_timing=*/true);
    j["ok"] = r.oracle_ok;
    j["millis"] = r.millis;
    out.rendered = j.dump(2) + "\n";
    return out;
  }
  std::ostringstream os;
  os << render_profile_text(r);
  for (const auto& cchk : r.oracle_checks) {
    os << "  [" << (cchk.match ? "ok" : "MISMATCH") << "] " << cchk.measure << " k = " << cchk.k.str();
    if (cchk.measure == "geometric") {
      os << "  N = " << cchk.N;
      if (cchk.shift) os << " (reduced by k1 = " << cchk.shift << ")";
      os << "  volume = " << cchk.volume;
    } else {
      os << "  window = " << cchk.N << "  orbits = " << cchk.count;
    }
    os << "  expected = " << cchk.expected;
    if (cchk.stabilized) os << "  stabilized = " << (*cchk.stabilized ? "yes" : "no");
    os << "\n";
  }
  os << (out.ok ? "verify: pass" : "verify: FAIL") << "\n";
  out.rendered = os.str();
  return out;
}

CorpusOutcome cmd_corpus_run(const std::string& dir, int jobs, bool write_golden) {
  namespace fs = std::filesystem;
  CorpusOutcome out;
  std::vector<fs::path> cases;
  if (!fs::exists(dir)) raise(errc::bad_input, "corpus directory does not exist: " + dir);
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name.size() > 10 && name.substr(name.size() - 10) == ".case.json") cases.push_back(entry.path());
  }
  std::sort(cases.begin(), cases.end());
  out.cases = cases.size();

  struct Row {
    std::string id, status;
    std::vector<std::string> diffs;
    double millis = 0;
  };
  std::vector<Row> rows(cases.size());
  std::atomic<size_t> next{0};
  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(cases.size())));
  const int inner_jobs = workers > 1 ? 1 : jobs;
  auto work = [&]() {
    for (size_t i = next.fetch_add(1); i < cases.size(); i = next.fetch_add(1)) {
      Row& row = rows[i];
      const fs::path& path = cases[i];
      std::string stem = path.filename().string();
      stem = stem.substr(0, stem.size() - 10);
      row.id = stem;
      try {
        std::ifstream in(path);
        std::stringstream buf;
        buf << in.rdbuf();
        CaseFile cf = CaseFile::parse(buf.str(), stem);
        CaseResult res = run_case(cf, inner_jobs);
        row.millis = res.millis;
        fs::path gpath = path.parent_path() / (stem + ".golden.json");
        if (write_golden) {
          std::ofstream g(gpath);
          g << golden_bytes(res);
          row.status = "written";
        } else if (!fs::exists(gpath)) {
          row.status = "missing-golden";
        } else {
          std::ifstream g(gpath);
          std::stringstream gb;
          gb << g.rdbuf();
          row.diffs = diff_against_golden(res, gb.str());
          if (!res.oracle_ok) row.diffs.push_back("oracle mismatch inside case");
          row.status = row.diffs.empty() ? "ok" : "diff";
        }
      } catch (const error& e) {
        row.status = "error";
        row.diffs = {std::string(e.what())};
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();

  json summary;
  json jrows = json::array();
  size_t failed = 0;
  for (const auto& row : rows) {
    json r;
    r["id"] = row.id;
    r["status"] = row.status;
    if (!row.diffs.empty()) r["diffs"] = row.diffs;
    if (row.status != "ok" && row.status != "written") ++failed;
    jrows.push_back(r);
  }
  summary["cases"] = jrows;
  summary["total"] = cases.size();
  summary["failed"] = failed;
  if (cases.empty()) summary["warning"] = "no cases found";
  out.summary = summary.dump(2) + "\n";
  json timing;
  json trows = json::array();
  double total_ms = 0;
  for (const auto& row : rows) {
    trows.push_back({{"id", row.id}, {"millis", row.millis}});
    total_ms += row.millis;
  }
  timing["cases"] = trows;
  timing["total_millis"] = total_ms;
  out.timing = timing.dump(2) + "\n";
  out.ok = failed == 0;
  return out;
}

}  // namespace orbital

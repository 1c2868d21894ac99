// Acceptance suite: every release criterion in one binary, one PASS/FAIL
// line each. The exit code is the number of failed criteria.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "helmdg/analysis.hpp"
#include "helmdg/solver.hpp"
#include "support/bigfixed.hpp"
#include "support/dense_oracle.hpp"

using namespace helmdg;
namespace ts = helmdg::testsupport;

namespace {

const FluxParams kReferenceParams{};  // beta = 0.001/h_e, delta = 0.1 h_e

struct Check {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back(what);
    }
  }
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double wall_seconds(const std::function<void()>& fn) {
  auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct SolveCache {
  std::map<int, Mesh> meshes;
  std::map<double, HelmholtzProblem> problems;

  const Mesh& mesh(int m) {
    auto it = meshes.find(m);
    if (it == meshes.end()) it = meshes.emplace(m, build_structured_mesh(m)).first;
    return it->second;
  }
  const HelmholtzProblem& radial(double k) {
    auto it = problems.find(k);
    if (it == problems.end()) it = problems.emplace(k, make_radial_problem(k)).first;
    return it->second;
  }
  ErrorReport run(Method method, double k, int m, const FluxParams& params) {
    DiscreteSolution sol = solve_helmholtz(mesh(m), method, k, params, radial(k));
    ErrorReport rep = error_norms(mesh(m), sol, radial(k), k);
    rep.params = params;
    return rep;
  }
};

SolveCache cache;

// ---- criteria 1 and 2: reference-table reproduction --------------------

struct TableTargets {
  std::vector<double> h1, sigma, h1_order, sigma_order;
};

Check check_table(Method method, const TableTargets& want, double budget_seconds) {
  Check c;
  const std::vector<int> ms{5, 10, 20, 40};
  std::vector<ErrorReport> reports;
  double elapsed = wall_seconds([&] {
    for (int m : ms) reports.push_back(cache.run(method, 10.0, m, kReferenceParams));
  });
  for (size_t i = 0; i < ms.size(); ++i) {
    double dh1 = std::abs(reports[i].h1_abs - want.h1[i]) / want.h1[i];
    c.require(dh1 <= 0.02, "m=" + std::to_string(ms[i]) + " H1 error " + fmt(reports[i].h1_abs) +
                               " vs " + fmt(want.h1[i]) + " (rel diff " + fmt(dh1) + ")");
    double dsg = std::abs(reports[i].sigma_abs - want.sigma[i]) / want.sigma[i];
    c.require(dsg <= 0.02, "m=" + std::to_string(ms[i]) + " sigma error " +
                               fmt(reports[i].sigma_abs) + " vs " + fmt(want.sigma[i]) +
                               " (rel diff " + fmt(dsg) + ")");
  }
  RateTable rates = convergence_rates(reports);
  for (size_t i = 0; i < want.h1_order.size(); ++i) {
    c.require(rates.h1[i] && std::abs(*rates.h1[i] - want.h1_order[i]) <= 0.05,
              "H1 order[" + std::to_string(i) + "] " + fmt(rates.h1[i] ? *rates.h1[i] : -1) +
                  " vs " + fmt(want.h1_order[i]));
    c.require(rates.sigma[i] && std::abs(*rates.sigma[i] - want.sigma_order[i]) <= 0.05,
              "sigma order[" + std::to_string(i) + "] " +
                  fmt(rates.sigma[i] ? *rates.sigma[i] : -1) + " vs " + fmt(want.sigma_order[i]));
  }
  c.require(elapsed <= budget_seconds,
            "runtime " + fmt(elapsed) + " s exceeds " + fmt(budget_seconds) + " s");
  if (!c.pass)
    c.notes.push_back(
        "context: the reference values lie below the best-approximation floor of the "
        "configured reference solution (see the README's known-red note)");
  return c;
}

Check criterion1() {
  return check_table(Method::Ldg1,
                     {{4.1059e-01, 1.6915e-01, 7.6089e-02, 3.6648e-02},
                      {5.4715e-01, 2.4712e-01, 1.1804e-01, 5.7114e-02},
                      {1.2794, 1.1525, 1.0539},
                      {1.1467, 1.0659, 1.0474}},
                     60.0);
}

Check criterion2() {
  return check_table(Method::Ldg2,
                     {{2.4711e-01, 1.4040e-01, 6.6992e-02, 3.2693e-02},
                      {2.2184e-01, 7.6775e-02, 3.3630e-02, 1.5710e-02},
                      {0.8156, 1.0675, 1.0350},
                      {1.5308, 1.1909, 1.0981}},
                     60.0);
}

// ---- criterion 3: high-frequency spot check ----------------------------

Check criterion3() {
  Check c;
  ErrorReport rep;
  double elapsed = wall_seconds([&] { rep = cache.run(Method::Ldg1, 100.0, 45, kReferenceParams); });
  c.require(std::abs(rep.h1_rel - 0.9392) <= 0.02,
            "relative H1 error " + fmt(rep.h1_rel) + " vs 0.9392 +- 0.02");
  c.require(elapsed <= 120.0, "runtime " + fmt(elapsed) + " s exceeds 120 s");
  return c;
}

// ---- criterion 4: mixed/primal equivalence -----------------------------

double rel_vec_diff(std::span<const Complex> a, std::span<const Complex> b) {
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - b[i]);
    den += std::norm(b[i]);
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

Check criterion4() {
  Check c;
  for (double k : {1.0, 10.0}) {
    for (int m : {2, 8}) {
      const Mesh& mesh = cache.mesh(m);
      const HelmholtzProblem& problem = cache.radial(k);
      DiscreteSolution mixed = solve_helmholtz(mesh, Method::Ldg1, k, kReferenceParams, problem);
      DiscreteSolution primal =
          solve_helmholtz(mesh, Method::IpdgPrimal, k, kReferenceParams, problem);
      std::string tag = "k=" + fmt(k) + " m=" + std::to_string(m) + ": ";
      double du = rel_vec_diff(primal.u_nodal, mixed.u_nodal);
      double ds = rel_vec_diff(primal.sigma_nodal, mixed.sigma_nodal);
      c.require(du <= 1e-8, tag + "u coefficients differ by " + fmt(du));
      c.require(ds <= 1e-8, tag + "sigma coefficients differ by " + fmt(ds));

      AssembledSystem sys = assemble_ldg1(mesh, k, kReferenceParams);
      auto schur = ts::to_dense(eliminate_sigma(sys));
      auto direct = ts::to_dense(assemble_primal_ipdg(mesh, k, kReferenceParams).matrix);
      double dm = ts::max_abs_diff(schur, direct);
      c.require(dm <= 1e-12, tag + "eliminated matrix differs by " + fmt(dm));
    }
  }
  return c;
}

// ---- criterion 5: exactness on the linear solution ---------------------

Check criterion5() {
  Check c;
  for (double k : {1.0, 10.0}) {
    HelmholtzProblem problem = make_linear_problem(k);
    for (int m : {1, 4}) {
      const Mesh& mesh = cache.mesh(m);
      const int nt = static_cast<int>(mesh.triangles.size());
      std::vector<Complex> u_want(static_cast<size_t>(3) * nt);
      std::vector<Complex> s_want(static_cast<size_t>(6) * nt);
      for (int t = 0; t < nt; ++t) {
        auto v = triangle_vertices(mesh, t);
        for (int i = 0; i < 3; ++i) {
          u_want[3 * t + i] = {v[i].x, v[i].y};
          s_want[6 * t + i] = {1.0, 0.0};
          s_want[6 * t + 3 + i] = {0.0, 1.0};
        }
      }
      for (Method method : {Method::Ldg1, Method::Ldg2, Method::IpdgPrimal, Method::FemP1}) {
        DiscreteSolution sol = solve_helmholtz(mesh, method, k, kReferenceParams, problem);
        double du = rel_vec_diff(sol.u_nodal, u_want);
        double ds = rel_vec_diff(sol.sigma_nodal, s_want);
        std::string tag = to_string(method) + " k=" + fmt(k) + " m=" + std::to_string(m) + ": ";
        c.require(du <= 1e-9, tag + "u error " + fmt(du));
        c.require(ds <= 1e-9, tag + "sigma error " + fmt(ds));
      }
    }
  }
  return c;
}

// ---- criterion 6: dense assembly oracle --------------------------------

Check criterion6() {
  Check c;
  for (int m : {1, 2}) {
    const Mesh& mesh = cache.mesh(m);
    for (double k : {1.0, 10.0}) {
      double d1 = ts::max_abs_diff(ts::to_dense(assemble_ldg1(mesh, k, kReferenceParams).matrix),
                                   ts::dense_mixed_matrix(mesh, Method::Ldg1, k, kReferenceParams));
      double d2 = ts::max_abs_diff(ts::to_dense(assemble_ldg2(mesh, k, kReferenceParams).matrix),
                                   ts::dense_mixed_matrix(mesh, Method::Ldg2, k, kReferenceParams));
      std::string tag = "m=" + std::to_string(m) + " k=" + fmt(k) + ": ";
      c.require(d1 <= 1e-12, tag + "LDG#1 max entry diff " + fmt(d1));
      c.require(d2 <= 1e-12, tag + "LDG#2 max entry diff " + fmt(d2));
    }
  }
  return c;
}

// ---- criterion 7: asymptotic orders at low frequency -------------------

Check criterion7() {
  Check c;
  for (Method method : {Method::Ldg1, Method::Ldg2}) {
    std::vector<ErrorReport> reports;
    for (int m : {10, 20, 40, 80}) reports.push_back(cache.run(method, 5.0, m, kReferenceParams));
    RateTable rates = convergence_rates(reports);
    double h1_order = *rates.h1.back();   // finest pair, well inside the asymptotic range
    double l2_order = *rates.l2.back();
    std::string tag = to_string(method) + ": ";
    c.require(h1_order >= 0.9 && h1_order <= 1.1, tag + "H1 order " + fmt(h1_order));
    c.require(l2_order >= 1.8 && l2_order <= 2.2, tag + "L2 order " + fmt(l2_order));
  }
  return c;
}

// ---- criterion 8: uniqueness and stability-audit boundedness -----------

Check criterion8() {
  Check c;
  HelmholtzProblem zero;
  zero.k = 1.0;
  zero.source = [](Vec2) { return Complex{}; };
  zero.robin_datum = [](Vec2, Vec2) { return Complex{}; };
  for (double k : {1.0, 10.0}) {
    zero.k = k;
    for (int m : {2, 8}) {
      for (Method method : {Method::Ldg1, Method::Ldg2, Method::IpdgPrimal, Method::FemP1}) {
        DiscreteSolution sol = solve_helmholtz(cache.mesh(m), method, k, kReferenceParams, zero);
        double mag = 0.0;
        for (const Complex& v : sol.raw) mag = std::max(mag, std::abs(v));
        c.require(mag <= 1e-12, to_string(method) + " k=" + fmt(k) + " m=" + std::to_string(m) +
                                    ": zero data gave |x| = " + fmt(mag));
      }
    }
  }

  for (Method method : {Method::Ldg1, Method::Ldg2}) {
    double max_all = 0.0, max_k5 = 0.0;
    bool finite = true;
    for (double k : {5.0, 10.0, 20.0, 50.0}) {
      for (int m : {10, 20, 40}) {
        StabilityAudit audit =
            stability_audit(method, cache.mesh(m), k, kReferenceParams, cache.radial(k));
        finite = finite && std::isfinite(audit.ratio) && audit.ratio > 0.0;
        max_all = std::max(max_all, audit.ratio);
        if (k == 5.0) max_k5 = std::max(max_k5, audit.ratio);
      }
    }
    std::string tag = to_string(method) + ": ";
    c.require(finite, tag + "non-finite audit ratio");
    c.require(max_all <= 10.0 * max_k5, tag + "max ratio " + fmt(max_all) +
                                            " exceeds 10 x k=5 column max " + fmt(max_k5));
  }
  return c;
}

// ---- criterion 9: parameter sensitivity --------------------------------

Check criterion9() {
  Check c;
  const double k = 5.0;
  const std::vector<int> ms{20, 40};

  // Beta sweep at fixed delta = 0.1 h_e: curves within a factor 1.5.
  const std::vector<std::pair<double, BetaScaling>> betas{
      {0.001, BetaScaling::InverseEdge},
      {0.01, BetaScaling::InverseEdge},
      {1.0, BetaScaling::InverseEdge},
      {1.0, BetaScaling::Constant}};
  for (int m : ms) {
    double lo = 1e300, hi = 0.0;
    for (auto [b0, mode] : betas) {
      FluxParams p = kReferenceParams;
      p.beta0 = b0;
      p.beta_scaling = mode;
      double err = cache.run(Method::Ldg1, k, m, p).h1_rel;
      lo = std::min(lo, err);
      hi = std::max(hi, err);
    }
    c.require(hi / lo <= 1.5, "beta sweep spread " + fmt(hi / lo) + " at m=" + std::to_string(m));
  }

  // Delta: 10 h_e hurts the scalar error relative to 0.1 h_e ...
  for (int m : ms) {
    FluxParams big = kReferenceParams, small = kReferenceParams;
    big.delta0 = 10.0;
    small.delta0 = 0.1;
    double e_big = cache.run(Method::Ldg1, k, m, big).h1_rel;
    double e_small = cache.run(Method::Ldg1, k, m, small).h1_rel;
    c.require(e_big > e_small, "delta=10h error " + fmt(e_big) + " not above delta=0.1h " +
                                   fmt(e_small) + " at m=" + std::to_string(m));
  }

  // ... while the #2 flux error improves with larger delta.
  for (int m : ms) {
    FluxParams big = kReferenceParams, tiny = kReferenceParams;
    big.delta0 = 10.0;
    tiny.delta0 = 0.001;
    double s_big = cache.run(Method::Ldg2, k, m, big).sigma_rel;
    double s_tiny = cache.run(Method::Ldg2, k, m, tiny).sigma_rel;
    c.require(s_big < s_tiny, "ldg2 sigma error " + fmt(s_big) + " (delta=10h) not below " +
                                  fmt(s_tiny) + " (delta=0.001h) at m=" + std::to_string(m));
  }
  return c;
}

// ---- criterion 10: special functions -----------------------------------

Check criterion10() {
  Check c;
  double worst0 = 0.0, worst1 = 0.0;
  for (int i = 0; i < 1000; ++i) {
    double x = 200.0 * i / 999.0;
    worst0 = std::max(worst0, std::abs(bessel_j0(x) - ts::bessel_j0_series_oracle(x)));
    worst1 = std::max(worst1, std::abs(bessel_j1(x) - ts::bessel_j1_series_oracle(x)));
  }
  c.require(worst0 <= 1e-8, "J0 max deviation " + fmt(worst0));
  c.require(worst1 <= 1e-8, "J1 max deviation " + fmt(worst1));

  // PDE residual by a fourth-order finite-difference Laplacian at seeded
  // random interior points.
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> coord(-0.4, 0.4);
  for (double k : {5.0, 100.0}) {
    const double h = k <= 10.0 ? 1e-3 : 2e-4;
    auto u = [k](double x, double y) { return exact_solution(k, {x, y}).u; };
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      Vec2 p{coord(rng), coord(rng)};
      auto d2 = [&](bool along_x) {
        auto at = [&](double s) { return along_x ? u(p.x + s, p.y) : u(p.x, p.y + s); };
        return (-at(2 * h) + 16.0 * at(h) - 30.0 * at(0) + 16.0 * at(-h) - at(-2 * h)) /
               (12.0 * h * h);
      };
      Complex residual = -(d2(true) + d2(false)) - k * k * u(p.x, p.y);
      Complex f = source_f(k, p);
      double rel = std::abs(residual - f) / std::max(1.0, std::abs(f));
      worst = std::max(worst, rel);
    }
    c.require(worst <= 1e-4, "k=" + fmt(k) + " worst PDE residual " + fmt(worst));
  }
  return c;
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* name;
    std::function<Check()> fn;
  };
  const std::vector<Entry> entries{
      {1, "reference table, LDG #1 (k=10, m=5..40, errors and orders)", criterion1},
      {2, "reference table, LDG #2 (k=10, m=5..40, errors and orders)", criterion2},
      {3, "high-frequency spot check (LDG #1, k=100, m=45)", criterion3},
      {4, "mixed/primal equivalence and sigma elimination", criterion4},
      {5, "linear solution reproduced by all four methods", criterion5},
      {6, "dense assembly oracle, both LDG methods", criterion6},
      {7, "asymptotic H1/L2 orders at k=5", criterion7},
      {8, "uniqueness and stability-audit boundedness", criterion8},
      {9, "parameter sensitivity (beta flat; delta trade-off)", criterion9},
      {10, "Bessel accuracy and PDE residual of the exact solution", criterion10},
  };

  int failures = 0;
  for (const Entry& e : entries) {
    Check c = e.fn();
    std::printf("%s %2d  %s\n", c.pass ? "PASS" : "FAIL", e.id, e.name);
    for (const std::string& note : c.notes) std::printf("        - %s\n", note.c_str());
    if (!c.pass) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(entries.size()) - failures,
              entries.size());
  return failures;
}

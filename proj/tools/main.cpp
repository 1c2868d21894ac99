#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "helmdg/solver.hpp"
#include "helmdg/study.hpp"

namespace {

using namespace helmdg;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;

struct CommonOpts {
  double k = 10.0;
  int m = 10;
  FluxParams params;
  std::string beta_scaling = "inv-edge";
  std::string delta_scaling = "edge";
  std::string problem = "radial";
  std::string out_dir;
};

std::string default_out_dir() {
  const char* env = std::getenv("HELMDG_OUT_DIR");
  return env ? env : "out";
}

void add_param_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--beta0", o.params.beta0, "flux penalty beta0")->capture_default_str();
  cmd->add_option("--delta0", o.params.delta0, "flux penalty delta0")->capture_default_str();
  cmd->add_option("--beta-scaling", o.beta_scaling, "beta scaling: inv-edge | const")
      ->capture_default_str();
  cmd->add_option("--delta-scaling", o.delta_scaling, "delta scaling: edge | const")
      ->capture_default_str();
}

void finish_params(CommonOpts& o) {
  o.params.beta_scaling = beta_scaling_from_string(o.beta_scaling);
  o.params.delta_scaling = delta_scaling_from_string(o.delta_scaling);
}

void require_positive_k(double k) {
  if (!(k > 0.0)) throw CLI::ValidationError("k must be positive");
}

void require_positive_m(int m) {
  if (m < 1) throw CLI::ValidationError("m must be a positive integer");
}

nlohmann::json report_json(const ErrorReport& r, const std::string& problem) {
  return {{"method", to_string(r.method)},
          {"problem", problem},
          {"k", r.k},
          {"m", r.m},
          {"h", r.h},
          {"params",
           {{"beta0", r.params.beta0},
            {"beta_scaling", to_string(r.params.beta_scaling)},
            {"delta0", r.params.delta0},
            {"delta_scaling", to_string(r.params.delta_scaling)}}},
          {"quadrature",
           {{"triangle_degree", kDataTriangleDegree}, {"edge_degree", kDataEdgeDegree}}},
          {"errors_abs",
           {{"h1_seminorm", r.h1_abs},
            {"l2", r.l2_abs},
            {"boundary_l2", r.boundary_l2_abs},
            {"sigma_l2", r.sigma_abs}}},
          {"errors_rel",
           {{"h1_seminorm", r.h1_rel},
            {"l2", r.l2_rel},
            {"boundary_l2", r.boundary_l2_rel},
            {"sigma_l2", r.sigma_rel}}},
          {"exact_norms",
           {{"h1_seminorm", r.exact_h1},
            {"l2", r.exact_l2},
            {"boundary_l2", r.exact_boundary_l2},
            {"sigma_l2", r.exact_sigma}}},
          {"solution_norms", {{"u_dg", r.u_dg}, {"pair_dg", r.pair_dg}}},
          {"timing",
           {{"assemble_seconds", r.assemble_seconds}, {"solve_seconds", r.solve_seconds}}}};
}

HelmholtzProblem problem_by_name(const std::string& name, double k) {
  if (name == "radial") return make_radial_problem(k);
  if (name == "linear") return make_linear_problem(k);
  throw CLI::ValidationError("unknown problem '" + name + "' (use radial or linear)");
}

int run_solve(const CommonOpts& o, const std::string& method_name, bool export_matrix,
              const std::string& matrix_path) {
  Method method = method_from_string(method_name);
  Mesh mesh = build_structured_mesh(o.m);
  HelmholtzProblem problem = problem_by_name(o.problem, o.k);
  if (export_matrix) {
    AssembledSystem sys = method == Method::Ldg1         ? assemble_ldg1(mesh, o.k, o.params)
                          : method == Method::Ldg2       ? assemble_ldg2(mesh, o.k, o.params)
                          : method == Method::IpdgPrimal ? assemble_primal_ipdg(mesh, o.k, o.params)
                                                         : assemble_conforming_fem(mesh, o.k);
    std::ofstream ms(matrix_path);
    if (!ms) throw std::runtime_error("cannot open " + matrix_path);
    sys.matrix.write_matrix_market(ms);
  }
  DiscreteSolution sol = solve_helmholtz(mesh, method, o.k, o.params, problem);
  ErrorReport rep = error_norms(mesh, sol, problem, o.k);
  rep.params = o.params;
  std::cout << report_json(rep, o.problem).dump(2) << "\n";
  return kExitOk;
}

std::vector<Method> parse_methods(const std::vector<std::string>& names) {
  std::vector<Method> out;
  for (const std::string& n : names) out.push_back(method_from_string(n));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "helmdg: discontinuous Galerkin solvers (two LDG flux choices, the equivalent primal "
      "IPDG form, and a conforming P1 baseline) for the 2D Helmholtz equation with an "
      "absorbing boundary condition, plus batch studies of errors, stability and traces"};
  app.require_subcommand(1);

  CommonOpts o;
  o.out_dir = default_out_dir();

  // --- solve ---
  auto* solve = app.add_subcommand("solve", "solve one (method, k, m) cell; JSON report on stdout");
  std::string method_name = "ldg1";
  bool export_matrix = false;
  std::string matrix_path = "matrix.mtx";
  solve->add_option("--method", method_name, "ldg1 | ldg2 | ipdg-primal | fem-p1")
      ->capture_default_str();
  solve->add_option("--k", o.k, "wave number")->capture_default_str();
  solve->add_option("--m", o.m, "mesh subdivisions (h = 1/m)")->capture_default_str();
  solve->add_option("--problem", o.problem, "radial | linear")->capture_default_str();
  add_param_flags(solve, o);
  solve->add_flag("--export-matrix", export_matrix, "write the system in MatrixMarket format");
  solve->add_option("--matrix-file", matrix_path, "MatrixMarket output path")
      ->capture_default_str();

  // --- mesh-info ---
  auto* mesh_info = app.add_subcommand("mesh-info", "print mesh counts and edge lengths");
  int mi_m = 4;
  std::string dump_path;
  mesh_info->add_option("--m", mi_m, "mesh subdivisions")->capture_default_str();
  mesh_info->add_option("--dump", dump_path, "write an ASCII vertex/triangle dump to this path");

  // --- table1 ---
  auto* table1 = app.add_subcommand("table1", "error/order comparison table of the two LDG methods");
  double t_k = 10.0;
  std::vector<int> t_ms{5, 10, 20, 40};
  bool t_full = false;
  table1->add_option("--k", t_k, "wave number")->capture_default_str();
  table1->add_option("--m-list", t_ms, "mesh subdivision list")->delimiter(',')->capture_default_str();
  table1->add_flag("--full", t_full, "extend the mesh list with m = 80, 160 (minutes-scale)");
  table1->add_option("--out-dir", o.out_dir, "report directory")->capture_default_str();
  bool t_svg = false;
  table1->add_flag("--svg", t_svg, "also write SVG error plots");

  // --- convergence ---
  auto* conv = app.add_subcommand("convergence", "error study over a (k, m) grid");
  std::vector<std::string> c_methods{"ldg1"};
  std::vector<double> c_ks{5.0};
  std::vector<int> c_ms{10, 20, 40, 80};
  std::string config_path;
  double c_kh = 0.0, c_k3h2 = 0.0;
  bool c_svg = false;
  conv->add_option("--methods", c_methods, "methods to run")->delimiter(',')->capture_default_str();
  conv->add_option("--k-list", c_ks, "wave numbers")->delimiter(',')->capture_default_str();
  conv->add_option("--m-list", c_ms, "mesh subdivisions")->delimiter(',')->capture_default_str();
  conv->add_option("--kh", c_kh, "run with m chosen so that k h equals this value");
  conv->add_option("--k3h2", c_k3h2, "run with m chosen so that k^3 h^2 equals this value");
  conv->add_option("--config", config_path, "load a StudyConfig JSON file instead of flags");
  conv->add_option("--problem", o.problem, "radial | linear")->capture_default_str();
  add_param_flags(conv, o);
  conv->add_option("--out-dir", o.out_dir, "report directory")->capture_default_str();
  conv->add_flag("--svg", c_svg, "also write SVG error plots");

  // --- sensitivity ---
  auto* sens = app.add_subcommand("sensitivity", "sweep one flux parameter, the other fixed");
  std::vector<std::string> s_methods{"ldg1"};
  std::vector<double> s_ks{5.0, 50.0};
  std::vector<int> s_ms{5, 10, 20, 40};
  std::string s_sweep = "beta";
  bool s_svg = false;
  sens->add_option("--methods", s_methods, "methods to run")->delimiter(',')->capture_default_str();
  sens->add_option("--k-list", s_ks, "wave numbers")->delimiter(',')->capture_default_str();
  sens->add_option("--m-list", s_ms, "mesh subdivisions")->delimiter(',')->capture_default_str();
  sens->add_option("--sweep", s_sweep, "beta | delta")->capture_default_str();
  add_param_flags(sens, o);
  sens->add_option("--out-dir", o.out_dir, "report directory")->capture_default_str();
  sens->add_flag("--svg", s_svg, "also write SVG error plots");

  // --- trace ---
  auto* trace = app.add_subcommand("trace", "sample Re u along y = 0 for plots");
  std::string tr_method = "ldg1";
  double tr_k = 100.0;
  int tr_m = 50, tr_n = 201;
  bool tr_svg = false;
  trace->add_option("--method", tr_method, "ldg1 | ldg2 | ipdg-primal | fem-p1")
      ->capture_default_str();
  trace->add_option("--k", tr_k, "wave number")->capture_default_str();
  trace->add_option("--m", tr_m, "mesh subdivisions")->capture_default_str();
  trace->add_option("--samples", tr_n, "number of sample points")->capture_default_str();
  add_param_flags(trace, o);
  trace->add_option("--out-dir", o.out_dir, "report directory")->capture_default_str();
  trace->add_flag("--svg", tr_svg, "also write an SVG trace plot");

  // --- audit ---
  auto* audit = app.add_subcommand("audit", "stability-estimate ratios over a (k, m) grid");
  std::vector<std::string> a_methods{"ldg1"};
  std::vector<double> a_ks{5.0, 10.0, 20.0, 50.0};
  std::vector<int> a_ms{10, 20, 40};
  audit->add_option("--methods", a_methods, "ldg1 and/or ldg2")->delimiter(',')->capture_default_str();
  audit->add_option("--k-list", a_ks, "wave numbers")->delimiter(',')->capture_default_str();
  audit->add_option("--m-list", a_ms, "mesh subdivisions")->delimiter(',')->capture_default_str();
  add_param_flags(audit, o);
  audit->add_option("--out-dir", o.out_dir, "report directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (solve->parsed()) {
      require_positive_k(o.k);
      require_positive_m(o.m);
      finish_params(o);
      return run_solve(o, method_name, export_matrix, matrix_path);
    }

    if (mesh_info->parsed()) {
      require_positive_m(mi_m);
      Mesh mesh = build_structured_mesh(mi_m);
      MeshSummary s = mesh_summary(mesh);
      std::cout << "triangles: " << s.triangles << "\n"
                << "vertices: " << s.vertices << "\n"
                << "edges: " << s.edges << "\n"
                << "interior_edges: " << s.interior_edges << "\n"
                << "boundary_edges: " << s.boundary_edges << "\n"
                << "min_edge_length: " << s.min_edge_length << "\n"
                << "max_edge_length: " << s.max_edge_length << "\n";
      if (!dump_path.empty()) {
        std::ofstream os(dump_path);
        if (!os) throw std::runtime_error("cannot open " + dump_path);
        write_mesh_ascii(mesh, os);
      }
      return kExitOk;
    }

    StudyConfig config;
    config.out_dir = o.out_dir;

    if (table1->parsed()) {
      require_positive_k(t_k);
      finish_params(o);
      config.kind = StudyKind::Table;
      config.methods = {Method::Ldg1, Method::Ldg2};
      config.ks = {t_k};
      config.ms = t_ms;
      if (t_full) {
        config.ms.push_back(80);
        config.ms.push_back(160);
      }
      config.params = o.params;
      config.write_svg = t_svg;
      StudyResult res = run_study(config);
      std::ifstream table(config.out_dir / "table1.txt");
      std::cout << table.rdbuf();
      for (const auto& f : res.files) std::cerr << "wrote " << f.string() << "\n";
      for (const CellOutcome& c : res.cells)
        if (!c.error.empty()) return kExitNumerical;
      return kExitOk;
    }

    if (conv->parsed()) {
      if (!config_path.empty()) {
        config = load_config(config_path);
        config.write_svg = config.write_svg || c_svg;
      } else {
        for (double k : c_ks) require_positive_k(k);
        finish_params(o);
        config.kind = c_kh > 0.0    ? StudyKind::KhConstant
                      : c_k3h2 > 0.0 ? StudyKind::K3h2Constant
                                     : StudyKind::Convergence;
        config.methods = parse_methods(c_methods);
        config.ks = c_ks;
        config.ms = c_ms;
        config.kh = c_kh > 0.0 ? c_kh : 1.0;
        config.k3h2 = c_k3h2 > 0.0 ? c_k3h2 : 1.0;
        config.params = o.params;
        config.problem = o.problem;
        config.write_svg = c_svg;
      }
      StudyResult res = run_study(config);
      for (const auto& f : res.files) std::cout << "wrote " << f.string() << "\n";
      for (const CellOutcome& c : res.cells)
        if (!c.error.empty()) {
          std::cerr << "solver failure at method=" << to_string(c.cell.method)
                    << " k=" << c.cell.k << " m=" << c.cell.m << ": " << c.error << "\n";
          return kExitNumerical;
        }
      return kExitOk;
    }

    if (sens->parsed()) {
      for (double k : s_ks) require_positive_k(k);
      finish_params(o);
      config.kind = StudyKind::Sensitivity;
      config.methods = parse_methods(s_methods);
      config.ks = s_ks;
      config.ms = s_ms;
      config.params = o.params;
      config.write_svg = s_svg;
      if (s_sweep == "beta") config.sweep = ParamSweep{"beta0", {}};
      else if (s_sweep == "delta") config.sweep = ParamSweep{"delta0", {}};
      else throw CLI::ValidationError("--sweep must be beta or delta");
      StudyResult res = run_sensitivity(config);
      for (const auto& f : res.files) std::cout << "wrote " << f.string() << "\n";
      for (const CellOutcome& c : res.cells)
        if (!c.error.empty()) {
          std::cerr << "solver failure at method=" << to_string(c.cell.method)
                    << " k=" << c.cell.k << " m=" << c.cell.m << ": " << c.error << "\n";
          return kExitNumerical;
        }
      return kExitOk;
    }

    if (trace->parsed()) {
      require_positive_k(tr_k);
      require_positive_m(tr_m);
      finish_params(o);
      config.kind = StudyKind::Trace;
      config.methods = {method_from_string(tr_method)};
      config.ks = {tr_k};
      config.ms = {tr_m};
      config.trace_samples = tr_n;
      config.params = o.params;
      config.write_svg = tr_svg;
      StudyResult res = run_study(config);
      for (const auto& f : res.files) std::cout << "wrote " << f.string() << "\n";
      for (const CellOutcome& c : res.cells)
        if (!c.error.empty()) return kExitNumerical;
      return kExitOk;
    }

    if (audit->parsed()) {
      for (double k : a_ks) require_positive_k(k);
      finish_params(o);
      config.kind = StudyKind::Audit;
      config.methods = parse_methods(a_methods);
      for (Method m : config.methods)
        if (m != Method::Ldg1 && m != Method::Ldg2)
          throw CLI::ValidationError("audit supports only the mixed methods ldg1 and ldg2");
      config.ks = a_ks;
      config.ms = a_ms;
      config.params = o.params;
      StudyResult res = run_study(config);
      std::cout << "method,k,m,gamma,data_norm,dg_norm,ratio\n";
      for (const CellOutcome& c : res.cells) {
        if (c.audit)
          std::cout << to_string(c.cell.method) << "," << c.cell.k << "," << c.cell.m << ","
                    << c.audit->gamma << "," << c.audit->data_norm << "," << c.audit->dg_norm
                    << "," << c.audit->ratio << "\n";
        else
          std::cout << to_string(c.cell.method) << "," << c.cell.k << "," << c.cell.m
                    << ",,,," << c.error << "\n";
      }
      for (const CellOutcome& c : res.cells)
        if (!c.error.empty()) return kExitNumerical;
      return kExitOk;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const SolverError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}

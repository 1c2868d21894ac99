#include "helmdg/study.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>

#include <json.hpp>

#include "helmdg/solver.hpp"

namespace helmdg {

namespace {

using nlohmann::json;

std::string fmt_sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10E", v);
  return buf;
}

std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string sanitize(std::string s) {
  for (char& c : s)
    if (c == '/' || c == ' ' || c == ':') c = '-';
  return s;
}

std::string csv_field(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n') c = ';';
  return s;
}

HelmholtzProblem make_problem(const std::string& name, double k) {
  if (name == "radial") return make_radial_problem(k);
  if (name == "linear") return make_linear_problem(k);
  throw std::invalid_argument("unknown problem '" + name + "' (use radial or linear)");
}

void validate_config(const StudyConfig& c) {
  if (c.methods.empty()) throw std::invalid_argument("study config: empty method list");
  if (c.ks.empty()) throw std::invalid_argument("study config: empty k list");
  for (double k : c.ks)
    if (!(k > 0.0)) throw std::invalid_argument("study config: k must be positive");
  const bool needs_m = c.kind != StudyKind::KhConstant && c.kind != StudyKind::K3h2Constant;
  if (needs_m) {
    if (c.ms.empty()) throw std::invalid_argument("study config: empty m list");
    for (int m : c.ms)
      if (m < 1) throw std::invalid_argument("study config: m must be >= 1");
  }
  if (c.kind == StudyKind::KhConstant && !(c.kh > 0.0))
    throw std::invalid_argument("study config: kh must be positive");
  if (c.kind == StudyKind::K3h2Constant && !(c.k3h2 > 0.0))
    throw std::invalid_argument("study config: k3h2 must be positive");
  if (c.kind == StudyKind::Trace && c.trace_samples < 2)
    throw std::invalid_argument("study config: trace needs at least two samples");
  make_problem(c.problem, 1.0);  // rejects unknown problem names
}

FluxParams apply_sweep(const FluxParams& base, const std::string& param, const SweepEntry& e) {
  FluxParams p = base;
  if (param == "beta0") {
    p.beta0 = e.value;
    p.beta_scaling = beta_scaling_from_string(e.scaling);
  } else if (param == "delta0") {
    p.delta0 = e.value;
    p.delta_scaling = delta_scaling_from_string(e.scaling);
  } else {
    throw std::invalid_argument("sweep parameter must be beta0 or delta0");
  }
  return p;
}

std::string sweep_label(const std::string& param, const SweepEntry& e) {
  return (param == "beta0" ? "b" : "d") + fmt_g(e.value) + "-" + e.scaling;
}

struct Caches {
  std::map<int, Mesh> meshes;
  std::map<double, HelmholtzProblem> problems;
  std::string problem_name;

  const Mesh& mesh(int m) {
    auto it = meshes.find(m);
    if (it == meshes.end()) it = meshes.emplace(m, build_structured_mesh(m)).first;
    return it->second;
  }
  const HelmholtzProblem& problem(double k) {
    auto it = problems.find(k);
    if (it == problems.end()) it = problems.emplace(k, make_problem(problem_name, k)).first;
    return it->second;
  }
};

CellOutcome run_error_cell(Caches& caches, const StudyCell& cell) {
  CellOutcome out;
  out.cell = cell;
  try {
    const Mesh& mesh = caches.mesh(cell.m);
    const HelmholtzProblem& problem = caches.problem(cell.k);
    DiscreteSolution sol = solve_helmholtz(mesh, cell.method, cell.k, cell.params, problem);
    out.report = error_norms(mesh, sol, problem, cell.k);
    out.report->params = cell.params;
    out.interp_h1_rel = interpolation_baseline(mesh, problem);
  } catch (const std::exception& ex) {
    out.error = ex.what();
  }
  return out;
}

json params_json(const FluxParams& p) {
  return {{"beta0", p.beta0},
          {"beta_scaling", to_string(p.beta_scaling)},
          {"delta0", p.delta0},
          {"delta_scaling", to_string(p.delta_scaling)}};
}

json outcome_json(const StudyConfig& config, const CellOutcome& out) {
  json j{{"study", to_string(config.kind)},
         {"method", to_string(out.cell.method)},
         {"problem", config.problem},
         {"k", out.cell.k},
         {"m", out.cell.m},
         {"h", 1.0 / out.cell.m},
         {"params", params_json(out.cell.params)},
         {"quadrature",
          {{"triangle_degree", kDataTriangleDegree}, {"edge_degree", kDataEdgeDegree}}},
         {"status", out.error.empty() ? "ok" : out.error}};
  if (!out.cell.sweep_label.empty()) j["sweep_label"] = out.cell.sweep_label;
  if (out.report) {
    const ErrorReport& r = *out.report;
    j["errors_abs"] = {{"h1_seminorm", r.h1_abs},
                       {"l2", r.l2_abs},
                       {"boundary_l2", r.boundary_l2_abs},
                       {"sigma_l2", r.sigma_abs}};
    j["errors_rel"] = {{"h1_seminorm", r.h1_rel},
                       {"l2", r.l2_rel},
                       {"boundary_l2", r.boundary_l2_rel},
                       {"sigma_l2", r.sigma_rel}};
    j["exact_norms"] = {{"h1_seminorm", r.exact_h1},
                        {"l2", r.exact_l2},
                        {"boundary_l2", r.exact_boundary_l2},
                        {"sigma_l2", r.exact_sigma}};
    j["solution_norms"] = {{"u_dg", r.u_dg}, {"pair_dg", r.pair_dg}};
    j["interp_h1_rel"] = out.interp_h1_rel;
    j["timing"] = {{"assemble_seconds", r.assemble_seconds}, {"solve_seconds", r.solve_seconds}};
  }
  if (out.audit) {
    const StabilityAudit& a = *out.audit;
    j["audit"] = {{"gamma", a.gamma},
                  {"data_norm", a.data_norm},
                  {"dg_norm", a.dg_norm},
                  {"ratio", a.ratio}};
  }
  return j;
}

const char* kCsvHeader =
    "method,k,m,h,beta0,beta_scaling,delta0,delta_scaling,triangle_degree,edge_degree,"
    "h1_abs,h1_rel,h1_order,l2_abs,l2_rel,l2_order,boundary_l2_abs,boundary_l2_rel,"
    "sigma_abs,sigma_rel,sigma_order,u_dg,pair_dg,interp_h1_rel,status\n";

std::string csv_order(const std::optional<double>& o, bool present) {
  if (!present) return "";
  if (!o) return "exact";
  return fmt_sci(*o);
}

// One aggregate CSV for a group of cells sharing (method, k, params); rows
// follow the cell order and orders are computed between consecutive rows.
void write_group_csv(std::ostream& os, std::span<const CellOutcome*> group, bool with_orders) {
  os << kCsvHeader;
  std::vector<ErrorReport> ok_reports;
  RateTable rates;
  if (with_orders) {
    for (const CellOutcome* c : group)
      if (c->report) ok_reports.push_back(*c->report);
    if (ok_reports.size() >= 2) rates = convergence_rates(ok_reports);
  }
  size_t ok_index = 0;
  for (const CellOutcome* c : group) {
    const StudyCell& cell = c->cell;
    os << to_string(cell.method) << "," << fmt_g(cell.k) << "," << cell.m << ","
       << fmt_sci(1.0 / cell.m) << "," << fmt_g(cell.params.beta0) << ","
       << to_string(cell.params.beta_scaling) << "," << fmt_g(cell.params.delta0) << ","
       << to_string(cell.params.delta_scaling) << "," << kDataTriangleDegree << ","
       << kDataEdgeDegree << ",";
    if (c->report) {
      const ErrorReport& r = *c->report;
      const bool has_rate = with_orders && ok_index > 0 && ok_index <= rates.h1.size();
      os << fmt_sci(r.h1_abs) << "," << fmt_sci(r.h1_rel) << ","
         << csv_order(has_rate ? rates.h1[ok_index - 1] : std::nullopt, has_rate) << ","
         << fmt_sci(r.l2_abs) << "," << fmt_sci(r.l2_rel) << ","
         << csv_order(has_rate ? rates.l2[ok_index - 1] : std::nullopt, has_rate) << ","
         << fmt_sci(r.boundary_l2_abs) << "," << fmt_sci(r.boundary_l2_rel) << ","
         << fmt_sci(r.sigma_abs) << "," << fmt_sci(r.sigma_rel) << ","
         << csv_order(has_rate ? rates.sigma[ok_index - 1] : std::nullopt, has_rate) << ","
         << fmt_sci(r.u_dg) << "," << fmt_sci(r.pair_dg) << "," << fmt_sci(c->interp_h1_rel)
         << ",ok\n";
      ++ok_index;
    } else {
      os << ",,,,,,,,,,,,," << csv_field(c->error) << "\n";
    }
  }
}

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

// Minimal self-contained SVG line plot (log-log or linear axes).
void write_svg_plot(std::ostream& os, const std::string& title, const std::string& xlabel,
                    const std::string& ylabel, const std::vector<Series>& series, bool loglog) {
  const double width = 640, height = 480, ml = 70, mr = 160, mt = 40, mb = 50;
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const Series& s : series)
    for (auto [x, y] : s.points) {
      if (loglog && (x <= 0.0 || y <= 0.0)) continue;
      double px = loglog ? std::log10(x) : x;
      double py = loglog ? std::log10(y) : y;
      xmin = std::min(xmin, px), xmax = std::max(xmax, px);
      ymin = std::min(ymin, py), ymax = std::max(ymax, py);
    }
  if (xmin > xmax) xmin = 0, xmax = 1;
  if (ymin > ymax) ymin = 0, ymax = 1;
  if (xmax - xmin < 1e-12) xmax = xmin + 1;
  if (ymax - ymin < 1e-12) ymax = ymin + 1;
  auto sx = [&](double px) { return ml + (px - xmin) / (xmax - xmin) * (width - ml - mr); };
  auto sy = [&](double py) { return height - mb - (py - ymin) / (ymax - ymin) * (height - mt - mb); };

  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                 "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">"
     << title << "</text>\n";
  os << "<text x=\"" << width / 2 << "\" y=\"" << height - 10
     << "\" text-anchor=\"middle\" font-size=\"12\">" << xlabel << "</text>\n";
  os << "<text x=\"16\" y=\"" << height / 2
     << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 16 " << height / 2
     << ")\">" << ylabel << "</text>\n";
  os << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << width - ml - mr
     << "\" height=\"" << height - mt - mb << "\" fill=\"none\" stroke=\"black\"/>\n";

  auto ticks = [&](double lo, double hi) {
    std::vector<double> t;
    if (loglog) {
      for (int d = static_cast<int>(std::ceil(lo)); d <= static_cast<int>(std::floor(hi)); ++d)
        t.push_back(d);
      if (t.empty()) t = {lo, hi};
    } else {
      for (int i = 0; i <= 4; ++i) t.push_back(lo + (hi - lo) * i / 4.0);
    }
    return t;
  };
  for (double t : ticks(xmin, xmax)) {
    os << "<line x1=\"" << sx(t) << "\" y1=\"" << height - mb << "\" x2=\"" << sx(t) << "\" y2=\""
       << height - mb + 5 << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << sx(t) << "\" y=\"" << height - mb + 18
       << "\" text-anchor=\"middle\" font-size=\"10\">"
       << (loglog ? "1e" + fmt_g(t) : fmt_g(t)) << "</text>\n";
  }
  for (double t : ticks(ymin, ymax)) {
    os << "<line x1=\"" << ml - 5 << "\" y1=\"" << sy(t) << "\" x2=\"" << ml << "\" y2=\"" << sy(t)
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << ml - 8 << "\" y=\"" << sy(t) + 3
       << "\" text-anchor=\"end\" font-size=\"10\">" << (loglog ? "1e" + fmt_g(t) : fmt_g(t))
       << "</text>\n";
  }
  for (size_t s = 0; s < series.size(); ++s) {
    os << "<polyline fill=\"none\" stroke=\"" << colors[s % 8] << "\" stroke-width=\"1.5\" points=\"";
    for (auto [x, y] : series[s].points) {
      if (loglog && (x <= 0.0 || y <= 0.0)) continue;
      os << sx(loglog ? std::log10(x) : x) << "," << sy(loglog ? std::log10(y) : y) << " ";
    }
    os << "\"/>\n";
    const double ly = mt + 16 + 16 * static_cast<double>(s);
    os << "<line x1=\"" << width - mr + 10 << "\" y1=\"" << ly - 4 << "\" x2=\""
       << width - mr + 30 << "\" y2=\"" << ly - 4 << "\" stroke=\"" << colors[s % 8]
       << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << width - mr + 35 << "\" y=\"" << ly << "\" font-size=\"10\">"
       << series[s].label << "</text>\n";
  }
  os << "</svg>\n";
}

std::ofstream open_file(const std::filesystem::path& p) {
  std::ofstream os(p);
  if (!os) throw std::runtime_error("cannot open output file " + p.string());
  return os;
}

}  // namespace

std::string to_string(StudyKind k) {
  switch (k) {
    case StudyKind::Convergence: return "convergence";
    case StudyKind::Sensitivity: return "sensitivity";
    case StudyKind::KhConstant: return "kh-constant";
    case StudyKind::K3h2Constant: return "k3h2-constant";
    case StudyKind::Table: return "table";
    case StudyKind::Trace: return "trace";
    case StudyKind::Audit: return "audit";
  }
  return "?";
}

StudyKind study_kind_from_string(const std::string& s) {
  if (s == "convergence") return StudyKind::Convergence;
  if (s == "sensitivity") return StudyKind::Sensitivity;
  if (s == "kh-constant") return StudyKind::KhConstant;
  if (s == "k3h2-constant") return StudyKind::K3h2Constant;
  if (s == "table") return StudyKind::Table;
  if (s == "trace") return StudyKind::Trace;
  if (s == "audit") return StudyKind::Audit;
  throw std::invalid_argument("unknown study kind '" + s + "'");
}

StudyConfig load_config(const std::filesystem::path& json_file) {
  std::ifstream is(json_file);
  if (!is) throw std::runtime_error("cannot open config file " + json_file.string());
  json j = json::parse(is);

  StudyConfig c;
  c.kind = study_kind_from_string(j.value("kind", "convergence"));
  if (j.contains("methods")) {
    c.methods.clear();
    for (const auto& m : j.at("methods")) c.methods.push_back(method_from_string(m));
  }
  if (j.contains("k")) c.ks = j.at("k").get<std::vector<double>>();
  if (j.contains("m")) c.ms = j.at("m").get<std::vector<int>>();
  c.params.beta0 = j.value("beta0", c.params.beta0);
  c.params.delta0 = j.value("delta0", c.params.delta0);
  if (j.contains("beta_scaling"))
    c.params.beta_scaling = beta_scaling_from_string(j.at("beta_scaling"));
  if (j.contains("delta_scaling"))
    c.params.delta_scaling = delta_scaling_from_string(j.at("delta_scaling"));
  if (j.contains("sweep")) {
    ParamSweep sweep;
    sweep.param = j.at("sweep").at("param");
    for (const auto& e : j.at("sweep").value("entries", json::array()))
      sweep.entries.push_back({e.at("value").get<double>(), e.at("scaling").get<std::string>()});
    c.sweep = sweep;
  }
  c.kh = j.value("kh", c.kh);
  c.k3h2 = j.value("k3h2", c.k3h2);
  c.trace_samples = j.value("trace_samples", c.trace_samples);
  c.problem = j.value("problem", c.problem);
  c.out_dir = j.value("out_dir", c.out_dir.string());
  if (j.contains("formats")) {
    c.write_csv = c.write_json = c.write_svg = false;
    for (const auto& f : j.at("formats")) {
      std::string s = f.get<std::string>();
      if (s == "csv") c.write_csv = true;
      else if (s == "json") c.write_json = true;
      else if (s == "svg") c.write_svg = true;
      else throw std::invalid_argument("unknown output format '" + s + "'");
    }
  }
  validate_config(c);
  return c;
}

std::string config_to_json(const StudyConfig& c) {
  json j{{"kind", to_string(c.kind)},
         {"k", c.ks},
         {"m", c.ms},
         {"beta0", c.params.beta0},
         {"beta_scaling", to_string(c.params.beta_scaling)},
         {"delta0", c.params.delta0},
         {"delta_scaling", to_string(c.params.delta_scaling)},
         {"kh", c.kh},
         {"k3h2", c.k3h2},
         {"trace_samples", c.trace_samples},
         {"problem", c.problem},
         {"out_dir", c.out_dir.string()}};
  j["methods"] = json::array();
  for (Method m : c.methods) j["methods"].push_back(to_string(m));
  json formats = json::array();
  if (c.write_csv) formats.push_back("csv");
  if (c.write_json) formats.push_back("json");
  if (c.write_svg) formats.push_back("svg");
  j["formats"] = formats;
  if (c.sweep) {
    json entries = json::array();
    for (const SweepEntry& e : c.sweep->entries)
      entries.push_back({{"value", e.value}, {"scaling", e.scaling}});
    j["sweep"] = {{"param", c.sweep->param}, {"entries", entries}};
  }
  return j.dump(2);
}

StudyResult run_study(const StudyConfig& config) {
  validate_config(config);
  if (config.kind == StudyKind::Sensitivity) return run_sensitivity(config);

  std::filesystem::create_directories(config.out_dir);
  Caches caches;
  caches.problem_name = config.problem;
  StudyResult result;

  auto emit_cell_json = [&](const CellOutcome& out, const std::string& tag) {
    if (!config.write_json) return;
    std::filesystem::path p =
        config.out_dir / (to_string(config.kind) + "_" + to_string(out.cell.method) + "_k" +
                          fmt_g(out.cell.k) + "_m" + std::to_string(out.cell.m) +
                          (tag.empty() ? "" : "_" + tag) + ".json");
    open_file(p) << outcome_json(config, out).dump(2) << "\n";
    result.files.push_back(p);
  };

  if (config.kind == StudyKind::Audit) {
    for (Method method : config.methods) {
      std::vector<const CellOutcome*> group;
      for (double k : config.ks)
        for (int m : config.ms) {
          CellOutcome out;
          out.cell = {method, k, m, config.params, ""};
          try {
            out.audit = stability_audit(method, caches.mesh(m), k, config.params,
                                        caches.problem(k));
          } catch (const std::exception& ex) {
            out.error = ex.what();
          }
          result.cells.push_back(std::move(out));
        }
      if (config.write_csv) {
        std::filesystem::path p = config.out_dir / ("audit_" + to_string(method) + ".csv");
        auto os = open_file(p);
        os << "method,k,m,h,beta0,beta_scaling,delta0,delta_scaling,gamma,data_norm,dg_norm,"
              "ratio,status\n";
        for (const CellOutcome& out : result.cells) {
          if (out.cell.method != method) continue;
          os << to_string(out.cell.method) << "," << fmt_g(out.cell.k) << "," << out.cell.m << ","
             << fmt_sci(1.0 / out.cell.m) << "," << fmt_g(out.cell.params.beta0) << ","
             << to_string(out.cell.params.beta_scaling) << "," << fmt_g(out.cell.params.delta0)
             << "," << to_string(out.cell.params.delta_scaling) << ",";
          if (out.audit)
            os << fmt_sci(out.audit->gamma) << "," << fmt_sci(out.audit->data_norm) << ","
               << fmt_sci(out.audit->dg_norm) << "," << fmt_sci(out.audit->ratio) << ",ok\n";
          else
            os << ",,,," << csv_field(out.error) << "\n";
        }
        result.files.push_back(p);
      }
    }
    for (const CellOutcome& out : result.cells) emit_cell_json(out, "");
    return result;
  }

  if (config.kind == StudyKind::Trace) {
    for (Method method : config.methods)
      for (double k : config.ks)
        for (int m : config.ms) {
          CellOutcome out;
          out.cell = {method, k, m, config.params, ""};
          try {
            const Mesh& mesh = caches.mesh(m);
            const HelmholtzProblem& problem = caches.problem(k);
            DiscreteSolution sol = solve_helmholtz(mesh, method, k, config.params, problem);
            out.report = error_norms(mesh, sol, problem, k);
            out.report->params = config.params;
            auto tr = trace_sample(mesh, sol, config.trace_samples);
            auto te = problem.has_exact() ? trace_sample(problem, config.trace_samples)
                                          : std::vector<TracePoint>{};
            std::string base = "trace_" + to_string(method) + "_k" + fmt_g(k) + "_m" +
                               std::to_string(m);
            if (config.write_csv) {
              std::filesystem::path p = config.out_dir / (base + ".csv");
              auto os = open_file(p);
              os << "x,re_uh" << (te.empty() ? "" : ",re_exact") << "\n";
              for (size_t i = 0; i < tr.size(); ++i) {
                os << fmt_sci(tr[i].x) << "," << fmt_sci(tr[i].value);
                if (!te.empty()) os << "," << fmt_sci(te[i].value);
                os << "\n";
              }
              result.files.push_back(p);
            }
            if (config.write_svg) {
              std::vector<Series> series(te.empty() ? 1 : 2);
              series[0].label = to_string(method);
              for (const TracePoint& t : tr) series[0].points.push_back({t.x, t.value});
              if (!te.empty()) {
                series[1].label = "exact";
                for (const TracePoint& t : te) series[1].points.push_back({t.x, t.value});
              }
              std::filesystem::path p = config.out_dir / (base + ".svg");
              auto svg = open_file(p);
              write_svg_plot(svg,
                             "Re u on y=0, " + to_string(method) + ", k=" + fmt_g(k) +
                                 ", h=1/" + std::to_string(m),
                             "x", "Re u", series, false);
              result.files.push_back(p);
            }
          } catch (const std::exception& ex) {
            out.error = ex.what();
          }
          result.cells.push_back(std::move(out));
          emit_cell_json(result.cells.back(), "");
        }
    return result;
  }

  // Error studies: convergence, kh-constant, k3h2-constant, table.
  for (Method method : config.methods) {
    for (double k_group : (config.kind == StudyKind::Convergence || config.kind == StudyKind::Table)
                              ? config.ks
                              : std::vector<double>{0.0}) {
      std::vector<size_t> group_index;
      if (config.kind == StudyKind::Convergence || config.kind == StudyKind::Table) {
        for (int m : config.ms) {
          StudyCell cell{method, k_group, m, config.params, ""};
          result.cells.push_back(run_error_cell(caches, cell));
          group_index.push_back(result.cells.size() - 1);
        }
      } else {
        for (double k : config.ks) {
          int m = config.kind == StudyKind::KhConstant
                      ? std::max(1, static_cast<int>(std::lround(k / config.kh)))
                      : std::max(1, static_cast<int>(std::lround(std::sqrt(k * k * k / config.k3h2))));
          StudyCell cell{method, k, m, config.params, ""};
          result.cells.push_back(run_error_cell(caches, cell));
          group_index.push_back(result.cells.size() - 1);
        }
      }

      std::vector<const CellOutcome*> group;
      for (size_t i : group_index) group.push_back(&result.cells[i]);
      const bool with_orders =
          config.kind == StudyKind::Convergence || config.kind == StudyKind::Table;
      if (config.write_csv) {
        std::string name = to_string(config.kind) + "_" + to_string(method);
        if (with_orders) name += "_k" + fmt_g(k_group);
        if (config.kind == StudyKind::KhConstant) name += "_kh" + fmt_g(config.kh);
        std::filesystem::path p = config.out_dir / sanitize(name + ".csv");
        auto os = open_file(p);
        write_group_csv(os, group, with_orders);
        result.files.push_back(p);
      }
      if (config.write_svg) {
        Series err, interp;
        err.label = to_string(method) + " rel H1";
        interp.label = "interpolation";
        for (const CellOutcome* c : group)
          if (c->report) {
            double xv = with_orders ? 1.0 / c->cell.m : c->cell.k;
            err.points.push_back({xv, c->report->h1_rel});
            interp.points.push_back({xv, c->interp_h1_rel});
          }
        std::string name = to_string(config.kind) + "_" + to_string(method);
        if (with_orders) name += "_k" + fmt_g(k_group);
        std::filesystem::path p = config.out_dir / sanitize(name + ".svg");
        auto svg = open_file(p);
        write_svg_plot(svg, to_string(config.kind) + " " + to_string(method),
                       with_orders ? "h" : "k", "relative H1 error", {err, interp}, true);
        result.files.push_back(p);
      }
      for (const CellOutcome* c : group) emit_cell_json(*c, "");
    }
  }

  // The table study also emits the comparison table with wall-clock times.
  if (config.kind == StudyKind::Table && config.write_csv) {
    std::filesystem::path p = config.out_dir / "table1.txt";
    auto os = open_file(p);
    char line[256];
    for (Method method : config.methods) {
      for (double k : config.ks) {
        os << to_string(method) << "  (delta0=" << fmt_g(config.params.delta0)
           << " [" << to_string(config.params.delta_scaling)
           << "], beta0=" << fmt_g(config.params.beta0) << " ["
           << to_string(config.params.beta_scaling) << "], k=" << fmt_g(k) << ")\n";
        os << "  1/h   |u-u_h|_H1    order    ||sig-sig_h||_L2  order    time(s)\n";
        std::vector<ErrorReport> ok;
        for (const CellOutcome& c : result.cells)
          if (c.cell.method == method && c.cell.k == k && c.report) ok.push_back(*c.report);
        RateTable rates;
        if (ok.size() >= 2) rates = convergence_rates(ok);
        for (size_t i = 0; i < ok.size(); ++i) {
          std::string h1o = i == 0 ? "--" : (rates.h1[i - 1] ? fmt_g(*rates.h1[i - 1]) : "exact");
          std::string sgo =
              i == 0 ? "--" : (rates.sigma[i - 1] ? fmt_g(*rates.sigma[i - 1]) : "exact");
          std::snprintf(line, sizeof line, "  %-5d %.4E  %-8s %.4E        %-8s %.4f\n", ok[i].m,
                        ok[i].h1_abs, h1o.c_str(), ok[i].sigma_abs, sgo.c_str(),
                        ok[i].assemble_seconds + ok[i].solve_seconds);
          os << line;
        }
        os << "\n";
      }
    }
    result.files.push_back(p);
  }
  return result;
}

StudyResult run_sensitivity(const StudyConfig& config) {
  validate_config(config);
  if (!config.sweep) throw std::invalid_argument("sensitivity study: missing sweep block");
  ParamSweep sweep = *config.sweep;
  if (sweep.param != "beta0" && sweep.param != "delta0")
    throw std::invalid_argument("sensitivity study: sweep parameter must be beta0 or delta0");
  if (sweep.entries.empty()) {
    // Reference sweeps: beta in {0.001/h, 0.01/h, 1/h, 1} at delta = 0.1 h,
    // delta in {0.001 h, 0.1 h, 10 h, 0.1} at beta = 0.001/h.
    if (sweep.param == "beta0")
      sweep.entries = {{0.001, "inv-edge"}, {0.01, "inv-edge"}, {1.0, "inv-edge"}, {1.0, "const"}};
    else
      sweep.entries = {{0.001, "edge"}, {0.1, "edge"}, {10.0, "edge"}, {0.1, "const"}};
  }

  std::filesystem::create_directories(config.out_dir);
  Caches caches;
  caches.problem_name = config.problem;
  StudyResult result;

  for (Method method : config.methods) {
    for (double k : config.ks) {
      std::vector<Series> svg_series;
      for (const SweepEntry& entry : sweep.entries) {
        FluxParams params = apply_sweep(config.params, sweep.param, entry);
        std::string label = sweep_label(sweep.param, entry);
        std::vector<size_t> group_index;
        for (int m : config.ms) {
          StudyCell cell{method, k, m, params, label};
          result.cells.push_back(run_error_cell(caches, cell));
          group_index.push_back(result.cells.size() - 1);
        }
        std::vector<const CellOutcome*> group;
        for (size_t i : group_index) group.push_back(&result.cells[i]);
        if (config.write_csv) {
          std::filesystem::path p =
              config.out_dir /
              sanitize("sensitivity_" + sweep.param + "_" + to_string(method) + "_k" + fmt_g(k) +
                       "_" + label + ".csv");
          auto os = open_file(p);
          write_group_csv(os, group, true);
          result.files.push_back(p);
        }
        if (config.write_json)
          for (const CellOutcome* c : group) {
            std::filesystem::path p =
                config.out_dir /
                sanitize("sensitivity_" + sweep.param + "_" + to_string(method) + "_k" + fmt_g(k) +
                         "_m" + std::to_string(c->cell.m) + "_" + label + ".json");
            open_file(p) << outcome_json(config, *c).dump(2) << "\n";
            result.files.push_back(p);
          }
        if (config.write_svg) {
          Series s;
          s.label = label;
          for (const CellOutcome* c : group)
            if (c->report) s.points.push_back({1.0 / c->cell.m, c->report->h1_rel});
          svg_series.push_back(std::move(s));
        }
      }
      if (config.write_svg) {
        std::filesystem::path p =
            config.out_dir /
            sanitize("sensitivity_" + sweep.param + "_" + to_string(method) + "_k" + fmt_g(k) +
                     ".svg");
        auto svg = open_file(p);
        write_svg_plot(svg,
                       "sensitivity in " + sweep.param + ", " + to_string(method) +
                           ", k=" + fmt_g(k),
                       "h", "relative H1 error", svg_series, true);
        result.files.push_back(p);
      }
    }
  }
  return result;
}

}  // namespace helmdg

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "helmdg/analysis.hpp"

namespace helmdg {

enum class StudyKind { Convergence, Sensitivity, KhConstant, K3h2Constant, Table, Trace, Audit };

std::string to_string(StudyKind k);
StudyKind study_kind_from_string(const std::string& s);

/// One entry of a parameter sweep: the value of beta0/delta0 plus its
/// scaling mode ("inv-edge"/"const" for beta, "edge"/"const" for delta).
struct SweepEntry {
  double value = 0.0;
  std::string scaling;
};

struct ParamSweep {
  std::string param;  ///< "beta0" or "delta0"
  std::vector<SweepEntry> entries;
};

struct StudyConfig {
  StudyKind kind = StudyKind::Convergence;
  std::vector<Method> methods{Method::Ldg1};
  std::vector<double> ks{10.0};
  std::vector<int> ms{5, 10, 20, 40};
  FluxParams params;
  std::optional<ParamSweep> sweep;
  double kh = 1.0;        ///< kh-constant studies
  double k3h2 = 1.0;      ///< k^3 h^2-constant studies
  int trace_samples = 201;
  std::string problem = "radial";  ///< "radial" or "linear"
  std::filesystem::path out_dir = "out";
  bool write_csv = true;
  bool write_json = true;
  bool write_svg = false;
};

StudyConfig load_config(const std::filesystem::path& json_file);
std::string config_to_json(const StudyConfig& config);

struct StudyCell {
  Method method = Method::Ldg1;
  double k = 0.0;
  int m = 0;
  FluxParams params;
  std::string sweep_label;  ///< empty outside sensitivity studies
};

struct CellOutcome {
  StudyCell cell;
  std::optional<ErrorReport> report;  ///< empty when the solve failed
  std::optional<StabilityAudit> audit;
  double interp_h1_rel = 0.0;
  std::string error;  ///< failure note; the study continues past failures
};

struct StudyResult {
  std::vector<CellOutcome> cells;
  std::vector<std::filesystem::path> files;
};

/// Runs the configured study and writes one JSON report per cell plus
/// aggregate CSV rate tables (and optional SVG plots) under out_dir.
/// Reruns with the same config produce byte-identical CSV files; timing
/// lives only in the JSON reports and the table's companion text file.
StudyResult run_study(const StudyConfig& config);

/// Parameter-sensitivity study: sweeps exactly one of beta0/delta0 over the
/// configured entries while the other parameter stays fixed.
StudyResult run_sensitivity(const StudyConfig& config);

}  // namespace helmdg

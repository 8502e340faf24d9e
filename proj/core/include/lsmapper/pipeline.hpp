#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lsmapper/codomains.hpp"
#include "lsmapper/cover.hpp"
#include "lsmapper/filters.hpp"
#include "lsmapper/generators.hpp"
#include "lsmapper/graph.hpp"
#include "lsmapper/mapper.hpp"
#include "lsmapper/refinement.hpp"

namespace lsm {

/// Where the point cloud (and responses, for supervised filters) come from:
/// either CSV files or one of the built-in generators.
struct InputSpec {
  std::optional<std::filesystem::path> points;
  std::optional<std::filesystem::path> responses;

  std::string generator;  // "annulus", "circle" or "blobs"
  std::size_t n = 0;
  double r_in = 1.0;
  double r_out = 2.0;
  double radius = 1.0;
  double noise = 0.0;
  double spread = 0.5;
  std::vector<Vector> centers;

  std::string response_generator;  // "gaussian" or "bimodal"
  double sigma = 0.1;
  double offset = kDefaultBimodalOffset;
};

struct FilterSpec {
  // "coordinate", "responses", "nw_mean", "nw_histogram", "kpca", "knn",
  // "csv" or "er_graphs".
  std::string kind = "coordinate";
  std::size_t axis = 1;
  double h = 0.3;
  std::size_t bins = 100;
  std::optional<double> lo;
  std::optional<double> hi;
  KernelSpec kernel;
  std::size_t p = 1;
  std::size_t k_nn = 15;
  std::optional<std::filesystem::path> csv;
  std::size_t csv_dim = 1;
  std::size_t graph_nodes = 20;
  GedOptions ged;
};

struct CoverSpec {
  CoverKind kind = CoverKind::Hypercube;
  std::size_t intervals = 10;  // per axis; 0 means use `resolution`
  double resolution = 0.0;
  double gain = 0.3;
  std::size_t k = 10;
  double epsilon = 0.5;
  EpsilonScale scale = EpsilonScale::Absolute;
  std::optional<ThickeningRule> rule;
};

struct ModulusSpec {
  ModulusBound::Form form = ModulusBound::Form::Empirical;
  double lipschitz = 1.0;
};

struct RunConfig {
  InputSpec input;
  FilterSpec filter;
  CoverSpec cover;

  std::optional<double> delta;  // calibrated when absent
  double beta = 0.5;

  std::optional<std::size_t> s;  // calibrated when absent
  /// Cap on s_n; the effective cap is min(s_max, node_budget / #edges).
  std::size_t s_max = 10000;
  std::size_t node_budget = 200000;
  bool detect_crossings = true;
  CrossingOptions crossings;
  ModulusSpec modulus;

  std::uint64_t seed = 0;
  std::optional<std::filesystem::path> out;

  /// Throws a parameter error describing the first invalid field.
  void validate() const;

  static RunConfig from_json(const std::string& text);
  std::string to_json() const;
};

struct Dataset {
  PointCloud cloud;
  std::vector<double> responses;
};

Dataset load_or_generate(const InputSpec& input, Rng& rng);
FilterAssignment evaluate_filter(const FilterSpec& spec, const Dataset& data, Rng& rng);
Cover build_cover(const CoverSpec& spec, const FilterAssignment& values,
                  std::span<const NodePair> segments, Rng& rng);

struct CalibrationRecord {
  double delta_n = 0.0;
  bool delta_calibrated = false;
  double ell = 0.0;  // +inf when no crossing was found
  std::size_t crossings = 0;
  bool crossings_checked = false;
  std::size_t s_n = 0;
  std::size_t s_cap = 0;
  bool s_calibrated = false;
};

struct RunResult {
  RunConfig config;
  CalibrationRecord calibration;
  CrossingReport report;
  Cover cover;
  SubdividedGraph graph;
  MapperComplex mapper;
  Betti betti;
  double resolution = 0.0;

  std::string mapper_json() const;
  std::string calibration_json() const;
  /// Summary with the resolved configuration echoed.
  std::string summary_json() const;
};

/// Runs neighborhood graph, delta calibration, filter, cover, crossing
/// detection, s calibration, subdivision and Mapper on prepared data. Any
/// failure is rethrown as a StageError naming the stage.
RunResult run_pipeline(const RunConfig& config, const Dataset& data, const FilterAssignment& f_hat,
                       Rng& rng);
RunResult run_estimator(const RunConfig& config);

/// Stops after the s calibration.
CalibrationRecord run_calibration(const RunConfig& config);

/// Writes mapper.json, mapper.dot, crossings.json, calibration.json and
/// summary.json into `dir`.
void write_run_artifacts(const RunResult& result, const std::filesystem::path& dir);

struct ExperimentOptions {
  std::size_t n = 0;  // 0 picks the scenario default
  bool paper_scale = false;
  /// Nadaraya-Watson bandwidth of the annulus scenarios; 0 keeps the default.
  double bandwidth = 0.0;
  std::optional<std::filesystem::path> out;
};

struct VariantResult {
  std::string name;
  Betti betti;
  Betti homology;  // 2-skeleton, see homology_betti_numbers
  std::size_t nodes = 0;
  std::size_t edges = 0;
  CalibrationRecord calibration;
  double resolution = 0.0;
  std::string mapper_json;
  std::string mapper_dot;
};

struct ExperimentReport {
  std::string name;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::vector<VariantResult> variants;

  const VariantResult& variant(const std::string& name) const;
  std::string to_json() const;
  std::string betti_table() const;
};

std::vector<std::string> experiment_names();

/// Runs a named scenario ("blobs_classifier", "annulus_gaussian",
/// "annulus_bimodal", "annulus_graphs") and compares its Mapper variants.
ExperimentReport run_experiment(const std::string& name, std::uint64_t seed,
                                const ExperimentOptions& options = {});

struct CompareReport {
  std::size_t size_a = 0;
  std::size_t size_b = 0;
  double gh_lower = 0.0;
  std::optional<double> gh_exact;
  /// Max |d_A - d_B| over pairs of labels present in both spaces.
  std::optional<double> label_distortion;
  std::size_t shared_labels = 0;

  std::string to_json() const;
};

CompareReport compare_spaces(const FinitePseudometricSpace& a, const FinitePseudometricSpace& b);
CompareReport compare_spaces(const std::filesystem::path& a, const std::filesystem::path& b);

}  // namespace lsm

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "lsmapper/codomains.hpp"
#include "lsmapper/error.hpp"
#include "lsmapper/generators.hpp"
#include "lsmapper/io.hpp"
#include "lsmapper/pipeline.hpp"

namespace lsm {
namespace {

using json = nlohmann::ordered_json;

constexpr double kAnnulusInner = 1.0;
constexpr double kAnnulusOuter = 2.0;
constexpr double kGaussianSigma = 0.5;
constexpr double kBimodalSigma = 0.2;
constexpr double kBandwidth = 0.5;

// Neighborhood scale used by the annulus scenarios: 0.2 at n = 2000,
// shrinking like 1/sqrt(n) so the expected degree stays put.
double annulus_delta(std::size_t n) { return 0.2 * std::sqrt(2000.0 / static_cast<double>(n)); }

CoverSpec interval_cover() {
  CoverSpec c;
  c.kind = CoverKind::Hypercube;
  c.intervals = 15;
  c.gain = 0.3;
  return c;
}

CoverSpec histogram_cover() {
  CoverSpec c;
  c.kind = CoverKind::ThickenedVoronoi;
  c.k = 10;
  c.epsilon = 0.5;
  // 0.5 is read relative to the germ spacing: histogram distances are far
  // below 1, so an absolute 0.5 would merge every cell.
  c.scale = EpsilonScale::GermSpacing;
  return c;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// Bin probabilities of a normal mixture with equal weights.
Vector mixture_histogram(std::span<const double> breaks, std::span<const double> centers, double sigma) {
  Vector h(breaks.size() - 1, 0.0);
  for (double mu : centers) {
    for (std::size_t j = 0; j + 1 < breaks.size(); ++j) {
      double p;
      if (sigma > 0.0) {
        p = normal_cdf((breaks[j + 1] - mu) / sigma) - normal_cdf((breaks[j] - mu) / sigma);
      } else {
        p = bin_index(breaks, mu) == static_cast<long>(j) ? 1.0 : 0.0;
      }
      h[j] += p / static_cast<double>(centers.size());
    }
  }
  return h;
}

VariantResult run_variant(const std::string& name, RunConfig config, const Dataset& data,
                          const FilterAssignment& f_hat, Rng& rng, const ExperimentOptions& opts) {
  RunResult r = run_pipeline(config, data, f_hat, rng);
  VariantResult v;
  v.name = name;
  v.betti = r.betti;
  v.homology = homology_betti_numbers(r.mapper);
  v.nodes = r.mapper.nodes.size();
  v.edges = r.mapper.edges().size();
  v.calibration = r.calibration;
  v.resolution = r.resolution;
  v.mapper_json = r.mapper_json();
  v.mapper_dot = export_mapper(r.mapper, MapperFormat::Dot);
  if (opts.out) write_run_artifacts(r, *opts.out / name);
  return v;
}

RunConfig base_config(std::uint64_t seed, double delta, const CoverSpec& cover) {
  RunConfig c;
  c.seed = seed;
  c.delta = delta;
  c.cover = cover;
  return c;
}

ExperimentReport annulus_conditional(const std::string& name, bool bimodal, std::uint64_t seed,
                                     const ExperimentOptions& opts) {
  ExperimentReport rep;
  rep.name = name;
  rep.seed = seed;
  rep.n = opts.n ? opts.n : (opts.paper_scale ? 5000 : 2000);
  Rng rng(seed);
  Dataset data;
  data.cloud = gen_annulus(rep.n, kAnnulusInner, kAnnulusOuter, rng);
  const double sigma = bimodal ? kBimodalSigma : kGaussianSigma;
  data.responses = bimodal ? gen_bimodal_conditional(data.cloud, sigma, rng)
                           : gen_gaussian_conditional(data.cloud, sigma, rng);
  const double delta = annulus_delta(rep.n);
  const double h = opts.bandwidth > 0.0 ? opts.bandwidth : kBandwidth;
  SupervisedSample sample{data.cloud, data.responses};

  // Classical Mapper on the raw responses: no subdivision.
  {
    RunConfig c = base_config(seed, delta, interval_cover());
    c.s = 0;
    rep.variants.push_back(run_variant("standard", c, data, scalar_filter(data.responses), rng, opts));
  }
  // Conditional mean, known and estimated.
  double min_x2 = data.cloud.point(0)[1];
  for (std::size_t i = 0; i < data.cloud.size(); ++i) min_x2 = std::min(min_x2, data.cloud.point(i)[1]);
  {
    std::vector<double> mean(data.cloud.size());
    for (std::size_t i = 0; i < mean.size(); ++i) mean[i] = bimodal ? 0.0 : data.cloud.point(i)[1];
    rep.variants.push_back(run_variant("mean_true", base_config(seed, delta, interval_cover()), data,
                                       scalar_filter(mean), rng, opts));
    rep.variants.push_back(run_variant("mean", base_config(seed, delta, interval_cover()), data,
                                       nw_mean_filter(sample, h, data.cloud), rng, opts));
  }
  // Conditional histogram over 100 bins spanning the observed responses.
  {
    auto [lo, hi] = std::minmax_element(data.responses.begin(), data.responses.end());
    auto breaks = uniform_breakpoints(*lo, *hi, 100);
    FilterAssignment truth;
    truth.codomain = std::make_shared<HistogramCodomain>(100);
    for (std::size_t i = 0; i < data.cloud.size(); ++i) {
      double x2 = data.cloud.point(i)[1];
      std::vector<double> centers{x2};
      if (bimodal) {
        auto m = bimodal_modes(x2, min_x2, kDefaultBimodalOffset);
        centers = {m.plus, m.minus};
      }
      truth.values.push_back(mixture_histogram(breaks, centers, sigma));
    }
    rep.variants.push_back(
        run_variant("histogram_true", base_config(seed, delta, histogram_cover()), data, truth, rng, opts));
    rep.variants.push_back(run_variant("histogram", base_config(seed, delta, histogram_cover()), data,
                                       nw_histogram_filter(sample, breaks, h, data.cloud), rng, opts));
  }
  return rep;
}

ExperimentReport annulus_graphs(std::uint64_t seed, const ExperimentOptions& opts) {
  ExperimentReport rep;
  rep.name = "annulus_graphs";
  rep.seed = seed;
  rep.n = opts.n ? opts.n : (opts.paper_scale ? 5000 : 500);
  Rng rng(seed);
  Dataset data;
  data.cloud = gen_annulus(rep.n, kAnnulusInner, kAnnulusOuter, rng);
  FilterSpec fs;
  fs.kind = "er_graphs";
  fs.graph_nodes = 20;
  FilterAssignment f_hat = evaluate_filter(fs, data, rng);
  CoverSpec cover;
  cover.kind = CoverKind::ThickenedVoronoi;
  cover.k = 10;
  cover.epsilon = 0.5;
  cover.rule = ThickeningRule::GermDistance;
  RunConfig c = base_config(seed, annulus_delta(rep.n), cover);
  c.filter = fs;
  c.crossings.mode = CrossingOptions::Mode::Sampled;
  c.crossings.samples = 8;
  c.crossings.adaptive = false;
  c.node_budget = 20000;
  rep.variants.push_back(run_variant("graph", c, data, f_hat, rng, opts));
  return rep;
}

ExperimentReport blobs_classifier(std::uint64_t seed, const ExperimentOptions& opts) {
  ExperimentReport rep;
  rep.name = "blobs_classifier";
  rep.seed = seed;
  rep.n = opts.n ? opts.n : 600;
  Rng rng(seed);
  auto sample = gen_blobs(rep.n, {{0.0, 0.0}, {1.0, 0.0}, {0.5, 0.866}}, 0.35, rng);
  Dataset data{sample.cloud, sample.responses};
  CoverSpec cover = interval_cover();
  cover.intervals = 5;
  const double delta = 0.3 * std::sqrt(600.0 / static_cast<double>(rep.n));
  FilterAssignment f_hat = knn_probability_filter(sample, 15, data.cloud);
  RunConfig plain = base_config(seed, delta, cover);
  plain.s = 0;
  rep.variants.push_back(run_variant("standard", plain, data, f_hat, rng, opts));
  rep.variants.push_back(run_variant("knn", base_config(seed, delta, cover), data, f_hat, rng, opts));
  return rep;
}

}  // namespace

const VariantResult& ExperimentReport::variant(const std::string& which) const {
  for (const auto& v : variants)
    if (v.name == which) return v;
  throw Error(ErrorKind::Parameter, "experiment " + name + " has no variant '" + which + "'");
}

std::string ExperimentReport::to_json() const {
  json j;
  j["experiment"] = name;
  j["seed"] = seed;
  j["n"] = n;
  auto& vs = j["variants"] = json::array();
  for (const auto& v : variants) {
    json o;
    o["name"] = v.name;
    o["b0"] = v.betti.b0;
    o["b1"] = v.betti.b1;
    o["homology_b1"] = v.homology.b1;
    o["nodes"] = v.nodes;
    o["edges"] = v.edges;
    o["delta_n"] = v.calibration.delta_n;
    o["ell"] = std::isfinite(v.calibration.ell) ? json(v.calibration.ell) : json(nullptr);
    o["crossings"] = v.calibration.crossings;
    o["s_n"] = v.calibration.s_n;
    o["resolution"] = std::isfinite(v.resolution) ? json(v.resolution) : json(nullptr);
    vs.push_back(std::move(o));
  }
  return j.dump(2);
}

std::string ExperimentReport::betti_table() const {
  std::ostringstream out;
  out << std::left << std::setw(16) << "variant" << std::setw(7) << "b0" << std::setw(7) << "b1" << std::setw(9)
      << "H1(2cx)" << std::setw(8) << "nodes" << std::setw(8) << "edges" << "s_n\n";
  for (const auto& v : variants)
    out << std::setw(16) << v.name << std::setw(7) << v.betti.b0 << std::setw(7) << v.betti.b1 << std::setw(9)
        << v.homology.b1 << std::setw(8) << v.nodes << std::setw(8) << v.edges << v.calibration.s_n << "\n";
  return out.str();
}

std::vector<std::string> experiment_names() {
  return {"blobs_classifier", "annulus_gaussian", "annulus_bimodal", "annulus_graphs"};
}

ExperimentReport run_experiment(const std::string& name, std::uint64_t seed, const ExperimentOptions& options) {
  ExperimentReport rep;
  if (name == "blobs_classifier") rep = blobs_classifier(seed, options);
  else if (name == "annulus_gaussian") rep = annulus_conditional(name, false, seed, options);
  else if (name == "annulus_bimodal") rep = annulus_conditional(name, true, seed, options);
  else if (name == "annulus_graphs") rep = annulus_graphs(seed, options);
  else throw Error(ErrorKind::Parameter, "unknown experiment '" + name + "'");
  if (options.out) {
    write_text_file(*options.out / "report.json", rep.to_json() + "\n");
    write_text_file(*options.out / "betti.txt", rep.betti_table());
  }
  return rep;
}

}  // namespace lsm

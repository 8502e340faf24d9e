#include "lsmapper/pipeline.hpp"

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "lsmapper/error.hpp"
#include "lsmapper/generators.hpp"
#include "lsmapper/io.hpp"
#include "lsmapper/pseudometric.hpp"

namespace lsm {
namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorKind::Parameter, "config: " + what); }

bool timing_enabled() {
  static const bool on = std::getenv("LSMAPPER_TIMING") != nullptr;
  return on;
}

// Runs `f`, re-raising library errors with the stage name attached. With
// LSMAPPER_TIMING set, stage wall times go to stderr.
template <typename F>
auto stage(const char* name, F&& f) -> decltype(f()) {
  try {
    if (!timing_enabled()) return f();
    auto t0 = std::chrono::steady_clock::now();
    struct Report {
      const char* name;
      std::chrono::steady_clock::time_point t0;
      ~Report() {
        std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
        std::cerr << "[timing] " << name << " " << dt.count() << " s\n";
      }
    } report{name, t0};
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError(name, e);
  }
}

// Strict reader: every key of the object must be consumed.
class Reader {
 public:
  Reader(const nlohmann::json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) invalid(where_ + " must be an object");
  }
  ~Reader() = default;

  bool has(const char* key) const { return j_.contains(key) && !j_.at(key).is_null(); }

  template <typename T>
  void get(const char* key, T& out) {
    seen_.insert(key);
    if (!has(key)) return;
    try {
      out = j_.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
      invalid(where_ + "." + key + " has the wrong type");
    }
  }
  template <typename T>
  void get(const char* key, std::optional<T>& out) {
    seen_.insert(key);
    if (!has(key)) return;
    T v{};
    get(key, v);
    out = v;
  }
  void get(const char* key, std::optional<std::filesystem::path>& out) {
    std::optional<std::string> s;
    get(key, s);
    if (s) out = *s;
  }
  const nlohmann::json* child(const char* key) {
    seen_.insert(key);
    return has(key) ? &j_.at(key) : nullptr;
  }
  void mark(const char* key) { seen_.insert(key); }
  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.count(it.key())) invalid("unknown key " + where_ + "." + it.key());
  }

 private:
  const nlohmann::json& j_;
  std::string where_;
  std::set<std::string> seen_;
};

std::string cover_kind_name(CoverKind k) { return k == CoverKind::Hypercube ? "hypercube" : "voronoi"; }
std::string rule_name(ThickeningRule r) { return r == ThickeningRule::Halfspace ? "halfspace" : "germ_distance"; }
std::string scale_name(EpsilonScale s) { return s == EpsilonScale::Absolute ? "absolute" : "germ_spacing"; }
std::string mode_name(CrossingOptions::Mode m) {
  switch (m) {
    case CrossingOptions::Mode::Auto: return "auto";
    case CrossingOptions::Mode::Exact: return "exact";
    case CrossingOptions::Mode::Sampled: return "sampled";
  }
  return "auto";
}

json nullable(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }
json nullable_path(const std::optional<std::filesystem::path>& p) { return p ? json(p->string()) : json(nullptr); }
json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

const std::set<std::string>& filter_kinds() {
  static const std::set<std::string> k{"coordinate", "responses", "nw_mean", "nw_histogram",
                                       "kpca",       "knn",       "csv",     "er_graphs"};
  return k;
}

bool needs_responses(const std::string& kind) {
  return kind == "responses" || kind == "nw_mean" || kind == "nw_histogram" || kind == "knn";
}

}  // namespace

void RunConfig::validate() const {
  const bool from_files = input.points.has_value();
  const bool from_generator = !input.generator.empty();
  if (from_files == from_generator) invalid("give exactly one of input.points and input.generator");
  if (from_generator) {
    if (input.generator != "annulus" && input.generator != "circle" && input.generator != "blobs")
      invalid("unknown generator '" + input.generator + "'");
    if (input.n == 0) invalid("input.n must be positive");
    if (input.generator == "annulus" && !(input.r_in > 0.0 && input.r_in < input.r_out))
      invalid("annulus needs 0 < r_in < r_out");
    if (input.generator == "circle" && !(input.radius > 0.0)) invalid("circle radius must be positive");
    if (!(input.noise >= 0.0) || !(input.spread >= 0.0)) invalid("noise and spread must be nonnegative");
    if (input.generator == "blobs" && input.centers.empty()) invalid("blobs need input.centers");
  }
  if (input.responses && !input.response_generator.empty())
    invalid("give at most one of input.responses and input.response_generator");
  if (!input.response_generator.empty() && input.response_generator != "gaussian" &&
      input.response_generator != "bimodal")
    invalid("unknown response generator '" + input.response_generator + "'");
  if (!(input.sigma >= 0.0)) invalid("input.sigma must be nonnegative");
  if (!(input.offset >= 0.0)) invalid("input.offset must be nonnegative");
  const bool has_responses =
      input.responses || !input.response_generator.empty() || input.generator == "blobs";
  if (!filter_kinds().count(filter.kind)) invalid("unknown filter kind '" + filter.kind + "'");
  if (needs_responses(filter.kind) && !has_responses) invalid("filter '" + filter.kind + "' needs responses");
  if (!(filter.h > 0.0)) invalid("filter.h must be positive");
  if (filter.bins == 0) invalid("filter.bins must be positive");
  if (filter.lo && filter.hi && !(*filter.hi > *filter.lo)) invalid("filter.hi must exceed filter.lo");
  if (filter.p == 0) invalid("filter.p must be positive");
  if (filter.k_nn == 0) invalid("filter.k_nn must be positive");
  if (filter.kind == "csv" && !filter.csv) invalid("filter.csv is required for csv filters");
  if (filter.csv_dim == 0) invalid("filter.csv_dim must be positive");
  if (filter.kernel.kind == KernelSpec::Kind::Gaussian && !(filter.kernel.sigma > 0.0))
    invalid("filter.kernel.sigma must be positive");
  if (filter.kind == "er_graphs" && filter.graph_nodes == 0) invalid("filter.graph_nodes must be positive");
  if (cover.kind == CoverKind::Hypercube) {
    if (filter.kind == "er_graphs") invalid("hypercube covers need a vector-valued filter");
    if (!(cover.gain >= 0.0 && cover.gain < 1.0)) invalid("cover.gain must lie in [0, 1)");
    if (cover.intervals == 0 && !(cover.resolution > 0.0))
      invalid("cover needs intervals > 0 or a positive resolution");
  } else {
    if (cover.k == 0) invalid("cover.k must be positive");
    if (!(cover.epsilon >= 0.0)) invalid("cover.epsilon must be nonnegative");
    if (cover.rule == ThickeningRule::Halfspace && filter.kind == "er_graphs")
      invalid("the halfspace rule needs a vector-valued filter");
  }
  if (delta && !(*delta > 0.0)) invalid("delta must be positive");
  if (!(beta > 0.0)) invalid("beta must be positive");
  if (node_budget == 0) invalid("node_budget must be positive");
  if (crossings.samples < 2) invalid("crossings.samples must be at least 2");
  if (crossings.max_simplex_size == 0) invalid("crossings.max_simplex_size must be positive");
  if (modulus.form == ModulusBound::Form::Lipschitz && !(modulus.lipschitz > 0.0))
    invalid("modulus.lipschitz must be positive");
}

RunConfig RunConfig::from_json(const std::string& text) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parameter, std::string("config: not valid JSON: ") + e.what());
  }
  RunConfig c;
  Reader r(root, "config");
  if (const auto* in = r.child("input")) {
    Reader ri(*in, "input");
    ri.get("points", c.input.points);
    ri.get("responses", c.input.responses);
    ri.get("generator", c.input.generator);
    ri.get("n", c.input.n);
    ri.get("r_in", c.input.r_in);
    ri.get("r_out", c.input.r_out);
    ri.get("radius", c.input.radius);
    ri.get("noise", c.input.noise);
    ri.get("spread", c.input.spread);
    ri.get("centers", c.input.centers);
    ri.get("response_generator", c.input.response_generator);
    ri.get("sigma", c.input.sigma);
    ri.get("offset", c.input.offset);
    ri.finish();
  }
  if (const auto* f = r.child("filter")) {
    Reader rf(*f, "filter");
    rf.get("kind", c.filter.kind);
    rf.get("axis", c.filter.axis);
    rf.get("h", c.filter.h);
    rf.get("bins", c.filter.bins);
    rf.get("lo", c.filter.lo);
    rf.get("hi", c.filter.hi);
    if (const auto* k = rf.child("kernel")) {
      Reader rk(*k, "filter.kernel");
      std::string kind = "gaussian";
      rk.get("kind", kind);
      rk.get("sigma", c.filter.kernel.sigma);
      rk.finish();
      if (kind == "gaussian") c.filter.kernel.kind = KernelSpec::Kind::Gaussian;
      else if (kind == "linear") c.filter.kernel.kind = KernelSpec::Kind::Linear;
      else invalid("unknown kernel '" + kind + "'");
    }
    rf.get("p", c.filter.p);
    rf.get("k_nn", c.filter.k_nn);
    rf.get("csv", c.filter.csv);
    rf.get("csv_dim", c.filter.csv_dim);
    rf.get("graph_nodes", c.filter.graph_nodes);
    if (const auto* g = rf.child("ged")) {
      Reader rg(*g, "filter.ged");
      rg.get("budget", c.filter.ged.budget);
      rg.get("exact_limit", c.filter.ged.exact_limit);
      rg.get("beam_width", c.filter.ged.beam_width);
      rg.finish();
    }
    rf.finish();
  }
  if (const auto* cv = r.child("cover")) {
    Reader rc(*cv, "cover");
    std::string kind = "hypercube", scale = "absolute";
    std::optional<std::string> rule;
    rc.get("kind", kind);
    rc.get("intervals", c.cover.intervals);
    rc.get("resolution", c.cover.resolution);
    rc.get("gain", c.cover.gain);
    rc.get("k", c.cover.k);
    rc.get("epsilon", c.cover.epsilon);
    rc.get("scale", scale);
    rc.get("rule", rule);
    rc.finish();
    if (kind == "hypercube") c.cover.kind = CoverKind::Hypercube;
    else if (kind == "voronoi") c.cover.kind = CoverKind::ThickenedVoronoi;
    else invalid("unknown cover kind '" + kind + "'");
    if (scale == "absolute") c.cover.scale = EpsilonScale::Absolute;
    else if (scale == "germ_spacing") c.cover.scale = EpsilonScale::GermSpacing;
    else invalid("unknown epsilon scale '" + scale + "'");
    if (rule) {
      if (*rule == "halfspace") c.cover.rule = ThickeningRule::Halfspace;
      else if (*rule == "germ_distance") c.cover.rule = ThickeningRule::GermDistance;
      else invalid("unknown thickening rule '" + *rule + "'");
    }
  }
  // delta and s accept a number or "auto".
  auto number_or_auto = [&](const char* key, auto& out) {
    r.mark(key);
    if (!r.has(key)) return;
    const auto& v = root.at(key);
    if (v.is_string() && v.get<std::string>() == "auto") return;
    if (!v.is_number()) invalid(std::string(key) + " must be a number or \"auto\"");
    if constexpr (std::is_same_v<std::decay_t<decltype(out)>, std::optional<double>>) {
      out = v.get<double>();
    } else {
      if (!v.is_number_unsigned()) invalid(std::string(key) + " must be a nonnegative integer");
      out = v.get<std::size_t>();
    }
  };
  number_or_auto("delta", c.delta);
  number_or_auto("s", c.s);
  r.get("beta", c.beta);
  r.get("s_max", c.s_max);
  r.get("node_budget", c.node_budget);
  r.get("detect_crossings", c.detect_crossings);
  if (const auto* x = r.child("crossings")) {
    Reader rx(*x, "crossings");
    std::string mode = "auto";
    rx.get("mode", mode);
    rx.get("samples", c.crossings.samples);
    rx.get("max_samples", c.crossings.max_samples);
    rx.get("adaptive", c.crossings.adaptive);
    rx.get("max_simplex_size", c.crossings.max_simplex_size);
    rx.finish();
    if (mode == "auto") c.crossings.mode = CrossingOptions::Mode::Auto;
    else if (mode == "exact") c.crossings.mode = CrossingOptions::Mode::Exact;
    else if (mode == "sampled") c.crossings.mode = CrossingOptions::Mode::Sampled;
    else invalid("unknown crossing mode '" + mode + "'");
  }
  if (const auto* m = r.child("modulus")) {
    Reader rm(*m, "modulus");
    std::string form = "empirical";
    rm.get("form", form);
    rm.get("lipschitz", c.modulus.lipschitz);
    rm.finish();
    if (form == "empirical") c.modulus.form = ModulusBound::Form::Empirical;
    else if (form == "lipschitz") c.modulus.form = ModulusBound::Form::Lipschitz;
    else invalid("unknown modulus form '" + form + "'");
  }
  r.get("seed", c.seed);
  r.get("out", c.out);
  r.finish();
  return c;
}

std::string RunConfig::to_json() const {
  json j;
  auto& in = j["input"];
  in["points"] = nullable_path(input.points);
  in["responses"] = nullable_path(input.responses);
  in["generator"] = input.generator;
  in["n"] = input.n;
  in["r_in"] = input.r_in;
  in["r_out"] = input.r_out;
  in["radius"] = input.radius;
  in["noise"] = input.noise;
  in["spread"] = input.spread;
  in["centers"] = input.centers;
  in["response_generator"] = input.response_generator;
  in["sigma"] = input.sigma;
  in["offset"] = input.offset;
  auto& f = j["filter"];
  f["kind"] = filter.kind;
  f["axis"] = filter.axis;
  f["h"] = filter.h;
  f["bins"] = filter.bins;
  f["lo"] = nullable(filter.lo);
  f["hi"] = nullable(filter.hi);
  f["kernel"] = {{"kind", filter.kernel.kind == KernelSpec::Kind::Gaussian ? "gaussian" : "linear"},
                 {"sigma", filter.kernel.sigma}};
  f["p"] = filter.p;
  f["k_nn"] = filter.k_nn;
  f["csv"] = nullable_path(filter.csv);
  f["csv_dim"] = filter.csv_dim;
  f["graph_nodes"] = filter.graph_nodes;
  f["ged"] = {{"budget", filter.ged.budget},
              {"exact_limit", filter.ged.exact_limit},
              {"beam_width", filter.ged.beam_width}};
  auto& c = j["cover"];
  c["kind"] = cover_kind_name(cover.kind);
  c["intervals"] = cover.intervals;
  c["resolution"] = cover.resolution;
  c["gain"] = cover.gain;
  c["k"] = cover.k;
  c["epsilon"] = cover.epsilon;
  c["scale"] = scale_name(cover.scale);
  c["rule"] = cover.rule ? json(rule_name(*cover.rule)) : json(nullptr);
  j["delta"] = delta ? json(*delta) : json("auto");
  j["beta"] = beta;
  j["s"] = s ? json(*s) : json("auto");
  j["s_max"] = s_max;
  j["node_budget"] = node_budget;
  j["detect_crossings"] = detect_crossings;
  j["crossings"] = {{"mode", mode_name(crossings.mode)},
                    {"samples", crossings.samples},
                    {"max_samples", crossings.max_samples},
                    {"adaptive", crossings.adaptive},
                    {"max_simplex_size", crossings.max_simplex_size}};
  j["modulus"] = {{"form", modulus.form == ModulusBound::Form::Empirical ? "empirical" : "lipschitz"},
                  {"lipschitz", modulus.lipschitz}};
  j["seed"] = seed;
  j["out"] = nullable_path(out);
  return j.dump(2);
}

Dataset load_or_generate(const InputSpec& input, Rng& rng) {
  Dataset d;
  if (input.points) {
    d.cloud = load_point_cloud(*input.points);
    if (input.responses) d.responses = load_scalar_column(*input.responses);
  } else if (input.generator == "annulus") {
    d.cloud = gen_annulus(input.n, input.r_in, input.r_out, rng);
  } else if (input.generator == "circle") {
    d.cloud = gen_circle(input.n, input.radius, input.noise, rng);
  } else if (input.generator == "blobs") {
    auto s = gen_blobs(input.n, input.centers, input.spread, rng);
    d.cloud = std::move(s.cloud);
    d.responses = std::move(s.responses);
  } else {
    throw Error(ErrorKind::Parameter, "unknown generator '" + input.generator + "'");
  }
  if (input.response_generator == "gaussian") d.responses = gen_gaussian_conditional(d.cloud, input.sigma, rng);
  else if (input.response_generator == "bimodal")
    d.responses = gen_bimodal_conditional(d.cloud, input.sigma, rng, input.offset);
  if (!d.responses.empty() && d.responses.size() != d.cloud.size()) {
    throw Error(ErrorKind::Size, std::to_string(d.responses.size()) + " responses for " +
                                     std::to_string(d.cloud.size()) + " points");
  }
  return d;
}

FilterAssignment evaluate_filter(const FilterSpec& spec, const Dataset& data, Rng& rng) {
  SupervisedSample sample{data.cloud, data.responses};
  if (spec.kind == "coordinate") return coordinate_filter(data.cloud, spec.axis);
  if (spec.kind == "responses") {
    sample.validate();
    return scalar_filter(data.responses);
  }
  if (spec.kind == "nw_mean") return nw_mean_filter(sample, spec.h, data.cloud);
  if (spec.kind == "nw_histogram") {
    sample.validate();
    auto [mn, mx] = std::minmax_element(data.responses.begin(), data.responses.end());
    double lo = spec.lo.value_or(*mn), hi = spec.hi.value_or(*mx);
    if (!(hi > lo)) hi = lo + 1.0;
    return nw_histogram_filter(sample, uniform_breakpoints(lo, hi, spec.bins), spec.h, data.cloud);
  }
  if (spec.kind == "kpca") return kpca_filter(data.cloud, spec.kernel, spec.p, data.cloud);
  if (spec.kind == "knn") return knn_probability_filter(sample, spec.k_nn, data.cloud);
  if (spec.kind == "csv") {
    auto f = load_filter_csv(*spec.csv, std::make_shared<EuclideanCodomain>(spec.csv_dim));
    if (f.size() != data.cloud.size()) {
      throw Error(ErrorKind::Assignment, "filter csv has " + std::to_string(f.size()) + " rows for " +
                                             std::to_string(data.cloud.size()) + " points");
    }
    return f;
  }
  if (spec.kind == "er_graphs") {
    FilterAssignment f;
    f.codomain = std::make_shared<GraphCodomain>(spec.ged);
    for (auto& g : gen_er_graph_data(data.cloud, spec.graph_nodes, rng)) f.values.emplace_back(std::move(g));
    return f;
  }
  throw Error(ErrorKind::Parameter, "unknown filter kind '" + spec.kind + "'");
}

Cover build_cover(const CoverSpec& spec, const FilterAssignment& values, std::span<const NodePair> segments,
                  Rng& rng) {
  if (values.size() == 0) throw Error(ErrorKind::EmptyInput, "cover: no filter values");
  if (spec.kind == CoverKind::Hypercube) {
    if (!values.codomain->is_euclidean()) throw Error(ErrorKind::Parameter, "hypercube covers need vector values");
    const std::size_t p = as_vector(values[0]).size();
    std::vector<double> r(p, spec.resolution);
    if (spec.intervals > 0) {
      for (std::size_t k = 0; k < p; ++k) {
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (const auto& z : values.values) {
          lo = std::min(lo, as_vector(z)[k]);
          hi = std::max(hi, as_vector(z)[k]);
        }
        r[k] = resolution_for_interval_count(lo, hi, spec.intervals, spec.gain);
      }
    }
    return build_hypercube_cover(values.values, r, spec.gain, segments);
  }
  ThickeningOptions opt;
  opt.rule = spec.rule;
  opt.scale = spec.scale;
  return build_thickened_voronoi_cover(values.values, spec.k, spec.epsilon, values.codomain, rng, opt);
}

namespace {

RunResult pipeline_impl(const RunConfig& config, const Dataset& data, const FilterAssignment& f_hat, Rng& rng,
                        bool full) {
  RunResult res;
  res.config = config;
  auto& cal = res.calibration;
  if (data.cloud.empty()) throw StageError("input", Error(ErrorKind::EmptyInput, "empty point cloud"));
  if (f_hat.size() != data.cloud.size()) {
    throw StageError("filter", Error(ErrorKind::Assignment, std::to_string(f_hat.size()) + " filter values for " +
                                                                std::to_string(data.cloud.size()) + " points"));
  }
  NeighborhoodGraph g = stage("graph", [&] {
    if (config.delta) {
      cal.delta_n = *config.delta;
    } else if (data.cloud.size() < 2) {
      cal.delta_n = 1.0;  // a single point has no edges at any scale
      cal.delta_calibrated = true;
    } else {
      cal.delta_n = calibrate_delta(data.cloud, config.beta, rng);
      cal.delta_calibrated = true;
      if (!(cal.delta_n > 0.0)) cal.delta_n = std::numeric_limits<double>::min();
    }
    return build_neighborhood_graph(data.cloud, cal.delta_n);
  });
  std::vector<NodePair> segments;
  segments.reserve(g.edges.size());
  for (const auto& e : g.edges) segments.emplace_back(e.u, e.v);
  res.cover = stage("cover", [&] { return build_cover(config.cover, f_hat, segments, rng); });
  cal.ell = std::numeric_limits<double>::infinity();
  if (config.detect_crossings) {
    res.report = stage("crossings", [&] { return detect_crossings(g, f_hat, res.cover, config.crossings); });
    cal.crossings_checked = true;
    cal.crossings = res.report.crossings.size();
    cal.ell = res.report.ell;
  }
  std::size_t edge_count = std::max<std::size_t>(g.edges.size(), 1);
  cal.s_cap = std::min(config.s_max, config.node_budget / edge_count);
  cal.s_n = stage("calibrate_s", [&]() -> std::size_t {
    if (config.s) return *config.s;
    cal.s_calibrated = true;
    if (!config.detect_crossings) return 0;
    ModulusBound omega = config.modulus.form == ModulusBound::Form::Lipschitz
                             ? ModulusBound::lipschitz(config.modulus.lipschitz)
                             : ModulusBound::empirical(g, f_hat);
    return calibrate_s(cal.delta_n, res.report, omega, cal.s_cap);
  });
  if (!full) return res;
  res.graph = stage("subdivide", [&] { return subdivide_and_embed(g, f_hat, cal.s_n); });
  res.mapper = stage("mapper", [&] {
    auto mc = build_mapper(res.graph, res.cover);
    assign_representatives(mc, res.graph.values(), res.cover, f_hat.codomain->is_euclidean());
    return mc;
  });
  res.betti = betti_numbers(res.mapper);
  res.resolution = std::numeric_limits<double>::quiet_NaN();
  if (f_hat.codomain->is_euclidean())
    res.resolution = stage("resolution", [&] { return resolution(res.cover, f_hat.values, *f_hat.codomain); });
  return res;
}

json calibration_to_json(const CalibrationRecord& c) {
  json j;
  j["delta_n"] = c.delta_n;
  j["delta_calibrated"] = c.delta_calibrated;
  j["ell"] = finite_or_null(c.ell);
  j["crossings"] = c.crossings;
  j["crossings_checked"] = c.crossings_checked;
  j["s_n"] = c.s_n;
  j["s_cap"] = c.s_cap;
  j["s_calibrated"] = c.s_calibrated;
  return j;
}

// One number per Mapper node for DOT coloring.
std::vector<double> node_colors(const MapperComplex& mc) {
  std::vector<double> out;
  for (const auto& n : mc.nodes) {
    double c = static_cast<double>(n.members.size());
    if (n.representative) {
      if (const auto* v = std::get_if<Vector>(&*n.representative)) c = v->empty() ? 0.0 : v->front();
      else c = static_cast<double>(std::get<LabeledGraph>(*n.representative).num_edges());
    }
    out.push_back(c);
  }
  return out;
}

}  // namespace

RunResult run_pipeline(const RunConfig& config, const Dataset& data, const FilterAssignment& f_hat, Rng& rng) {
  return pipeline_impl(config, data, f_hat, rng, true);
}

RunResult run_estimator(const RunConfig& config) {
  config.validate();
  Rng rng(config.seed);
  Dataset data = stage("input", [&] { return load_or_generate(config.input, rng); });
  FilterAssignment f_hat = stage("filter", [&] { return evaluate_filter(config.filter, data, rng); });
  RunResult res = run_pipeline(config, data, f_hat, rng);
  if (config.out) stage("output", [&] { write_run_artifacts(res, *config.out); });
  return res;
}

CalibrationRecord run_calibration(const RunConfig& config) {
  config.validate();
  Rng rng(config.seed);
  Dataset data = stage("input", [&] { return load_or_generate(config.input, rng); });
  FilterAssignment f_hat = stage("filter", [&] { return evaluate_filter(config.filter, data, rng); });
  return pipeline_impl(config, data, f_hat, rng, false).calibration;
}

std::string RunResult::mapper_json() const { return export_mapper(mapper, MapperFormat::Json); }

std::string RunResult::calibration_json() const { return calibration_to_json(calibration).dump(2); }

std::string RunResult::summary_json() const {
  json j;
  j["config"] = json::parse(config.to_json());
  j["seed"] = config.seed;
  j["calibration"] = calibration_to_json(calibration);
  j["betti"] = {{"b0", betti.b0}, {"b1", betti.b1}};
  j["mapper"] = {{"nodes", mapper.nodes.size()}, {"edges", mapper.edges().size()},
                 {"simplices", mapper.simplices.size()}};
  j["graph"] = {{"vertices", graph.num_original()}, {"edges", graph.base().edges.size()},
                {"nodes_after_subdivision", graph.num_nodes()}};
  j["cover_elements"] = cover.size();
  j["resolution"] = finite_or_null(resolution);
  return j.dump(2);
}

void write_run_artifacts(const RunResult& result, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create " + dir.string() + ": " + ec.message());
  auto colors = node_colors(result.mapper);
  write_text_file(dir / "mapper.json", result.mapper_json() + "\n");
  write_text_file(dir / "mapper.dot", export_mapper(result.mapper, MapperFormat::Dot, &colors));
  write_text_file(dir / "crossings.json", crossing_report_to_json(result.report) + "\n");
  write_text_file(dir / "calibration.json", result.calibration_json() + "\n");
  write_text_file(dir / "summary.json", result.summary_json() + "\n");
}

std::string CompareReport::to_json() const {
  json j;
  j["size_a"] = size_a;
  j["size_b"] = size_b;
  j["gh_lower"] = gh_lower;
  j["gh_exact"] = nullable(gh_exact);
  j["shared_labels"] = shared_labels;
  j["label_distortion"] = nullable(label_distortion);
  return j.dump(2);
}

CompareReport compare_spaces(const FinitePseudometricSpace& a, const FinitePseudometricSpace& b) {
  CompareReport r;
  r.size_a = a.size();
  r.size_b = b.size();
  r.gh_lower = gh_lower_bound(a, b);
  if (a.size() > 0 && b.size() > 0 && a.size() <= kGromovHausdorffOracleLimit &&
      b.size() <= kGromovHausdorffOracleLimit)
    r.gh_exact = gromov_hausdorff_exact(a, b);
  std::map<std::string, std::size_t> in_b;
  for (std::size_t j = 0; j < b.size(); ++j) in_b.emplace(b.labels()[j], j);
  std::vector<NodePair> shared;
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto it = in_b.find(a.labels()[i]);
    if (it != in_b.end()) shared.emplace_back(i, it->second);
  }
  r.shared_labels = shared.size();
  if (!shared.empty()) {
    double worst = 0.0;
    for (auto [i, j] : shared)
      for (auto [k, l] : shared) worst = std::max(worst, std::abs(a(i, k) - b(j, l)));
    r.label_distortion = worst;
  }
  return r;
}

CompareReport compare_spaces(const std::filesystem::path& a, const std::filesystem::path& b) {
  return compare_spaces(load_pseudometric_csv(a), load_pseudometric_csv(b));
}

}  // namespace lsm

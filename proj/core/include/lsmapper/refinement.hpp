#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "lsmapper/cover.hpp"
#include "lsmapper/graph.hpp"

namespace lsm {

/// One crossed simplex: a connected piece of the edge's codomain path lying
/// inside U_sigma while both edge endpoints lie outside U_sigma.
struct Crossing {
  std::size_t edge = 0;
  std::vector<std::size_t> simplex;  // sorted cover element ids
  double length = 0.0;               // codomain length of the crossed piece
};

struct CrossingReport {
  std::vector<Crossing> crossings;
  double ell = std::numeric_limits<double>::infinity();
  bool exact = true;
  std::size_t samples = 0;  // samples per edge in sampled mode

  bool has_crossings() const noexcept { return !crossings.empty(); }
};

struct CrossingOptions {
  enum class Mode { Auto, Exact, Sampled };
  Mode mode = Mode::Auto;
  std::size_t samples = 64;
  std::size_t max_samples = 4096;
  bool adaptive = true;
  std::size_t max_simplex_size = 3;  // nerve simplices up to dimension 2
};

/// Finds element-crossing edges of the (unsubdivided) graph. Exact segment
/// clipping is used for Euclidean codomains with convex covers; otherwise the
/// codomain path is sampled at m + 2 points.
CrossingReport detect_crossings(const NeighborhoodGraph& graph, const FilterAssignment& values,
                                const Cover& cover, const CrossingOptions& options = {});
CrossingReport detect_crossings(const SubdividedGraph& graph, const Cover& cover,
                                const CrossingOptions& options = {});

std::string crossing_report_to_json(const CrossingReport& report);

/// Non-decreasing bound h -> omega(h) with omega(0) = 0 and its generalized
/// inverse v -> inf{h : omega(h) >= v}.
class ModulusBound {
 public:
  enum class Form { Lipschitz, Empirical };

  static ModulusBound lipschitz(double constant);
  /// Exact modulus of the piecewise-geodesic embedding along the graph's
  /// edges: max over edges of d_e * min(h / |e|, 1).
  static ModulusBound empirical(const NeighborhoodGraph& graph, const FilterAssignment& values);

  Form form() const noexcept { return form_; }
  double lipschitz_constant() const noexcept { return constant_; }

  double operator()(double h) const;
  bool in_image(double v) const;
  double inverse(double v) const;
  double supremum() const;

 private:
  struct EdgeSlope {
    double length;
    double gap;
  };

  Form form_ = Form::Lipschitz;
  double constant_ = 1.0;
  std::vector<EdgeSlope> edges_;
};

ModulusBound lipschitz_modulus(double constant);

/// floor(delta_n / omega^-1(ell / 2)) clamped to [0, s_max]; 0 without
/// crossings or when ell / 2 is outside the image; s_max when ell = 0.
std::size_t calibrate_s(double delta_n, const CrossingReport& report, const ModulusBound& omega,
                        std::size_t s_max);

}  // namespace lsm

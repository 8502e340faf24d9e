#pragma once

#include <cstddef>
#include <vector>

#include "lsmapper/filters.hpp"
#include "lsmapper/labeled_graph.hpp"
#include "lsmapper/types.hpp"

namespace lsm {

/// Uniform on {r_in <= |x| <= r_out} in R^2.
PointCloud gen_annulus(std::size_t n, double r_in, double r_out, Rng& rng);

/// Uniform on the unit circle (angles uniform), optional radial jitter.
PointCloud gen_circle(std::size_t n, double radius, double noise, Rng& rng);

/// Y_i ~ N(x_i[1], sigma^2).
std::vector<double> gen_gaussian_conditional(const PointCloud& cloud, double sigma, Rng& rng);

/// Mode centers of the bimodal conditional at a point with second
/// coordinate x2: +/-(x2 - m + offset), with m the smallest second coordinate
/// of the cloud. Both modes have weight 1/2, so E[Y | X] = 0 everywhere.
struct BimodalModes {
  double plus = 0.0;
  double minus = 0.0;
};
BimodalModes bimodal_modes(double x2, double min_x2, double offset);

inline constexpr double kDefaultBimodalOffset = 1.0;

/// Y_i ~ N(m_i * (x_i[1] - min x[1] + offset), sigma^2) with a fair sign m_i.
std::vector<double> gen_bimodal_conditional(const PointCloud& cloud, double sigma, Rng& rng,
                                            double offset = kDefaultBimodalOffset);

/// G(num_nodes, p_i) per point with p_i the first coordinate rescaled to [0,1].
std::vector<LabeledGraph> gen_er_graph_data(const PointCloud& cloud, std::size_t num_nodes,
                                            Rng& rng);
LabeledGraph gen_er_graph(std::size_t num_nodes, double p, Rng& rng);

/// Isotropic Gaussian blobs; point i belongs to blob i mod k.
SupervisedSample gen_blobs(std::size_t n, const std::vector<Vector>& centers, double spread,
                           Rng& rng);

}  // namespace lsm

#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "lsmapper/length_space.hpp"
#include "lsmapper/types.hpp"

namespace lsm {

/// Parses headerless comma-separated numeric rows of equal arity.
std::vector<Vector> parse_csv_rows(std::istream& in);

PointCloud load_point_cloud(const std::filesystem::path& path);
PointCloud parse_point_cloud(std::istream& in);
void save_point_cloud(const PointCloud& cloud, const std::filesystem::path& path);

/// Filter CSV: first column node id, remaining columns codomain coordinates.
/// Only vector codomains are supported; arity must match the codomain.
FilterAssignment load_filter_csv(const std::filesystem::path& path, LengthSpacePtr codomain);
FilterAssignment parse_filter_csv(std::istream& in, LengthSpacePtr codomain);
void save_filter_csv(const FilterAssignment& filter, const std::filesystem::path& path);

/// Edge-list format: first line "N", then one "u v" pair per line, 0-indexed.
LabeledGraph parse_edge_list(std::istream& in);
LabeledGraph load_edge_list(const std::filesystem::path& path);
std::string format_edge_list(const LabeledGraph& g);

/// Scalar responses or class labels, one per line.
std::vector<double> load_scalar_column(const std::filesystem::path& path);
void save_scalar_column(const std::vector<double>& values, const std::filesystem::path& path);

/// Pseudometric CSV: header row of labels, then one row of distances per label.
void save_pseudometric_csv(const FinitePseudometricSpace& m, const std::filesystem::path& path);
FinitePseudometricSpace load_pseudometric_csv(const std::filesystem::path& path);
std::string format_pseudometric_csv(const FinitePseudometricSpace& m);
FinitePseudometricSpace parse_pseudometric_csv(std::istream& in);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace lsm

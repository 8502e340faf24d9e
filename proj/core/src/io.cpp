#include "lsmapper/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "lsmapper/error.hpp"

namespace lsm {
namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, sep)) out.push_back(trim(cell));
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

double parse_double(const std::string& cell, std::size_t row, std::size_t col) {
  double x = 0.0;
  const char* first = cell.data();
  const char* last = first + cell.size();
  if (!cell.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, x);
  if (cell.empty() || ec != std::errc() || ptr != last || !std::isfinite(x)) {
    throw Error(ErrorKind::Format, "row " + std::to_string(row) + ", column " + std::to_string(col) +
                                       ": cannot parse '" + cell + "' as a number");
  }
  return x;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out << std::setprecision(17);
  return out;
}

// Skips blank lines; keeps the 0-based index of the data row.
bool next_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!trim(line).empty()) return true;
  }
  return false;
}

}  // namespace

std::vector<Vector> parse_csv_rows(std::istream& in) {
  std::vector<Vector> rows;
  std::string line;
  while (next_line(in, line)) {
    auto cells = split(line, ',');
    std::size_t row = rows.size();
    if (!rows.empty() && cells.size() != rows.front().size()) {
      throw Error(ErrorKind::Format, "row " + std::to_string(row) + ": expected " +
                                         std::to_string(rows.front().size()) + " columns, found " +
                                         std::to_string(cells.size()));
    }
    Vector v(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) v[c] = parse_double(cells[c], row, c);
    rows.push_back(std::move(v));
  }
  return rows;
}

PointCloud parse_point_cloud(std::istream& in) {
  auto rows = parse_csv_rows(in);
  if (rows.empty()) throw Error(ErrorKind::EmptyInput, "point cloud: no rows");
  return PointCloud(rows);
}

PointCloud load_point_cloud(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_point_cloud(in);
}

void save_point_cloud(const PointCloud& cloud, const std::filesystem::path& path) {
  auto out = open_output(path);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    auto p = cloud.point(i);
    for (std::size_t k = 0; k < p.size(); ++k) out << (k ? "," : "") << p[k];
    out << '\n';
  }
}

FilterAssignment parse_filter_csv(std::istream& in, LengthSpacePtr codomain) {
  if (!codomain || !codomain->is_euclidean())
    throw Error(ErrorKind::Parameter, "filter csv: only vector codomains are supported");
  auto rows = parse_csv_rows(in);
  if (rows.empty()) throw Error(ErrorKind::EmptyInput, "filter csv: no rows");
  std::size_t p = codomain->dimension();
  if (rows.front().size() != p + 1) {
    throw Error(ErrorKind::Format, "filter csv: expected id plus " + std::to_string(p) +
                                       " coordinates, found " + std::to_string(rows.front().size()) +
                                       " columns");
  }
  FilterAssignment f{std::vector<Element>(rows.size()), codomain};
  std::vector<char> seen(rows.size(), 0);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    double id = rows[r][0];
    if (id < 0 || id != std::floor(id) || id >= static_cast<double>(rows.size()))
      throw Error(ErrorKind::Format, "filter csv: row " + std::to_string(r) + " has invalid node id");
    auto i = static_cast<std::size_t>(id);
    if (seen[i]) throw Error(ErrorKind::Format, "filter csv: duplicate node id " + std::to_string(i));
    seen[i] = 1;
    Element z = Vector(rows[r].begin() + 1, rows[r].end());
    codomain->validate(z);
    f.values[i] = std::move(z);
  }
  return f;
}

FilterAssignment load_filter_csv(const std::filesystem::path& path, LengthSpacePtr codomain) {
  auto in = open_input(path);
  return parse_filter_csv(in, std::move(codomain));
}

void save_filter_csv(const FilterAssignment& filter, const std::filesystem::path& path) {
  auto out = open_output(path);
  for (std::size_t i = 0; i < filter.size(); ++i) {
    out << i;
    for (double x : as_vector(filter[i])) out << ',' << x;
    out << '\n';
  }
}

LabeledGraph parse_edge_list(std::istream& in) {
  std::string line;
  if (!next_line(in, line)) throw Error(ErrorKind::EmptyInput, "edge list: missing node count");
  long n = -1;
  {
    std::istringstream head(line);
    if (!(head >> n) || n < 0) throw Error(ErrorKind::Format, "edge list: invalid node count");
  }
  LabeledGraph g(static_cast<std::size_t>(n));
  std::size_t row = 1;
  while (next_line(in, line)) {
    std::istringstream pair(line);
    long u = -1, v = -1;
    std::string extra;
    if (!(pair >> u >> v) || (pair >> extra) || u < 0 || v < 0 || u >= n || v >= n || u == v) {
      throw Error(ErrorKind::Format, "edge list: line " + std::to_string(row) + " is not a valid pair");
    }
    g.add_edge(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
    ++row;
  }
  return g;
}

LabeledGraph load_edge_list(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_edge_list(in);
}

std::string format_edge_list(const LabeledGraph& g) {
  std::ostringstream out;
  out << g.num_nodes() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
  return out.str();
}

std::vector<double> load_scalar_column(const std::filesystem::path& path) {
  auto in = open_input(path);
  auto rows = parse_csv_rows(in);
  if (rows.empty()) throw Error(ErrorKind::EmptyInput, path.string() + ": no rows");
  if (rows.front().size() != 1) throw Error(ErrorKind::Format, path.string() + ": expected one column");
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r[0]);
  return out;
}

void save_scalar_column(const std::vector<double>& values, const std::filesystem::path& path) {
  auto out = open_output(path);
  for (double x : values) out << x << '\n';
}

std::string format_pseudometric_csv(const FinitePseudometricSpace& m) {
  std::ostringstream out;
  out << std::setprecision(17);
  const auto& labels = m.labels();
  for (std::size_t i = 0; i < labels.size(); ++i) out << (i ? "," : "") << labels[i];
  out << '\n';
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) out << (j ? "," : "") << m(i, j);
    out << '\n';
  }
  return out.str();
}

FinitePseudometricSpace parse_pseudometric_csv(std::istream& in) {
  std::string line;
  if (!next_line(in, line)) throw Error(ErrorKind::EmptyInput, "pseudometric csv: missing header");
  auto labels = split(line, ',');
  auto rows = parse_csv_rows(in);
  if (rows.size() != labels.size())
    throw Error(ErrorKind::Format, "pseudometric csv: expected " + std::to_string(labels.size()) + " rows");
  std::vector<double> dist;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != labels.size())
      throw Error(ErrorKind::Format, "pseudometric csv: row " + std::to_string(r) + " has wrong arity");
    dist.insert(dist.end(), rows[r].begin(), rows[r].end());
  }
  return {std::move(labels), std::move(dist)};
}

void save_pseudometric_csv(const FinitePseudometricSpace& m, const std::filesystem::path& path) {
  write_text_file(path, format_pseudometric_csv(m));
}

FinitePseudometricSpace load_pseudometric_csv(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_pseudometric_csv(in);
}

std::string read_text_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
  auto out = open_output(path);
  out << contents;
}

}  // namespace lsm

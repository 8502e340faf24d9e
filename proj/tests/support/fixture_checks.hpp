#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "lsmapper/mapper.hpp"
#include "lsmapper/pipeline.hpp"

namespace fixtures {

struct Check {
  std::string name;
  bool ok = false;
  std::string detail;
};

std::filesystem::path directory();

/// Compares the library against every frozen oracle value in the fixture
/// directory. One entry per fixture item.
std::vector<Check> run_all(const std::filesystem::path& dir = directory());

/// The frozen circle example: 200 points, height filter, 8 intervals at
/// gain 0.3, delta = 0.2, no subdivision.
struct CircleMapper {
  lsm::FilterAssignment filter;
  lsm::SubdividedGraph graph;
  lsm::Cover cover;
  lsm::MapperComplex mapper;
};
CircleMapper circle_mapper();

/// Hand-built five-point instance whose straight edges pass through box
/// overlaps that contain no sample point: without subdivision the Mapper
/// misses those intersections.
struct Figure1 {
  lsm::RunConfig config;
  lsm::Dataset data;
  lsm::FilterAssignment filter;
};
Figure1 figure1();

}  // namespace fixtures

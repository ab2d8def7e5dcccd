#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace xri::taxonomy {

// Ordered agency ladder, from a passive interface to a social agent.
enum class AgencyLevel { kInterface = 0, kReflex = 1, kModelBased = 2, kGoalBased = 3, kSocial = 4 };

// A point in the design cube. Each component lies in [0, 1]:
//   virtuality   0 = real environment, 1 = fully virtual
//   agency       normalized AgencyLevel
//   pr_capacity  0 = direct physical interaction, 1 = fully remote / networked
class MiraCoordinates {
 public:
  MiraCoordinates(double virtuality, double agency, double pr_capacity);

  double virtuality() const noexcept { return virtuality_; }
  double agency() const noexcept { return agency_; }
  double pr_capacity() const noexcept { return pr_capacity_; }

  friend bool operator==(const MiraCoordinates&, const MiraCoordinates&) = default;

 private:
  double virtuality_;
  double agency_;
  double pr_capacity_;
};

struct DesignExemplar {
  int index;
  MiraCoordinates centroid;
  std::string_view label;
};

// Per-axis weights for the distance; all 1 is the plain Euclidean metric.
struct AxisWeights {
  double virtuality = 1.0;
  double agency = 1.0;
  double pr_capacity = 1.0;
};

// The five exemplar regions. Centroids are tunable constants, not measurements.
std::span<const DesignExemplar> exemplar_registry();

// Squared weighted distance between two design points.
double squared_distance(const MiraCoordinates& a, const MiraCoordinates& b, const AxisWeights& w = {});

// Index of the nearest exemplar; equal distances go to the lower index.
int classify_design(const MiraCoordinates& c, const AxisWeights& w = {});
int classify_design(const MiraCoordinates& c, std::span<const DesignExemplar> registry, const AxisWeights& w = {});

const DesignExemplar& exemplar(int index);

double agency_to_axis(AgencyLevel level);

}  // namespace xri::taxonomy

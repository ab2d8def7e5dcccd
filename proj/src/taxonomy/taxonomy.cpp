#include "xri/taxonomy/taxonomy.hpp"

#include <limits>

#include "xri/core/error.hpp"

namespace xri::taxonomy {

namespace {

bool in_unit(double v) { return v >= 0.0 && v <= 1.0; }

// 1: physical interfaces, low agency, direct physical interaction.
// 2: IoT objects and robots on the real side, networked, mid agency.
// 3: MR/VR interfaces and objects, low agency, hand-tracked manipulation.
// 4: virtual objects bound to physical ones over IoT.
// 5: spatial zone agents, mixed virtuality, high agency, networked.
const std::array<DesignExemplar, 5> kRegistry{{
    {1, MiraCoordinates(0.1, 0.1, 0.1), "physical interface (3D physical controls, 2D screen UI)"},
    {2, MiraCoordinates(0.1, 0.5, 0.9), "IoT-enabled physical objects and robots"},
    {3, MiraCoordinates(0.9, 0.1, 0.1), "mixed/virtual reality UI and 3D objects"},
    {4, MiraCoordinates(0.9, 0.3, 0.9), "virtual objects coupled to physical objects via IoT"},
    {5, MiraCoordinates(0.5, 0.9, 0.9), "XRI spatial zone agent"},
}};

}  // namespace

MiraCoordinates::MiraCoordinates(double virtuality, double agency, double pr_capacity)
    : virtuality_(virtuality), agency_(agency), pr_capacity_(pr_capacity) {
  if (!in_unit(virtuality) || !in_unit(agency) || !in_unit(pr_capacity)) {
    throw Error(ErrorCode::kInvalidValue, "mira_coordinates", "each axis must lie in [0, 1]");
  }
}

std::span<const DesignExemplar> exemplar_registry() { return kRegistry; }

const DesignExemplar& exemplar(int index) {
  for (const auto& e : kRegistry) {
    if (e.index == index) return e;
  }
  throw Error(ErrorCode::kInvalidValue, std::to_string(index), "no such exemplar");
}

double squared_distance(const MiraCoordinates& a, const MiraCoordinates& b, const AxisWeights& w) {
  const double dv = a.virtuality() - b.virtuality();
  const double da = a.agency() - b.agency();
  const double dp = a.pr_capacity() - b.pr_capacity();
  return w.virtuality * dv * dv + w.agency * da * da + w.pr_capacity * dp * dp;
}

int classify_design(const MiraCoordinates& c, const AxisWeights& w) { return classify_design(c, kRegistry, w); }

int classify_design(const MiraCoordinates& c, std::span<const DesignExemplar> registry, const AxisWeights& w) {
  int best_index = 0;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& e : registry) {
    const double d = squared_distance(c, e.centroid, w);
    if (d < best || (d == best && e.index < best_index)) {
      best = d;
      best_index = e.index;
    }
  }
  return best_index;
}

double agency_to_axis(AgencyLevel level) { return static_cast<double>(static_cast<int>(level)) / 4.0; }

}  // namespace xri::taxonomy

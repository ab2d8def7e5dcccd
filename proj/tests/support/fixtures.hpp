#pragma once

#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "xri/core/command.hpp"
#include "xri/core/event.hpp"
#include "xri/core/layout.hpp"
#include "xri/bus/topic.hpp"

namespace xri::testing {

std::filesystem::path source_path(const std::string& relative);
std::string read_file(const std::filesystem::path& path);

// data/layouts/lab.layout.json
SpaceLayout lab_layout();
SpaceLayout lab_layout(TimeMs study_threshold_ms);

using Rng = std::mt19937_64;

int uniform_int(Rng& rng, int lo, int hi);
double uniform_real(Rng& rng, double lo, double hi);
bool coin(Rng& rng, double p = 0.5);

std::string random_identifier(Rng& rng);
bus::Topic random_topic(Rng& rng);
EventKind random_event_kind(Rng& rng);
Event random_event(Rng& rng);
Command random_command(Rng& rng);

// Zones on a coarse grid so shared edges, nesting and equal areas are common.
std::vector<Zone> random_zones(Rng& rng, int max_zones);
Position random_point_near(Rng& rng, const std::vector<Zone>& zones);

// User inputs over the lab layout, as a runtime would receive them.
EventKind random_lab_input(Rng& rng, const SpaceLayout& lab);

// ---- independent oracles ----

// Every containing zone, then the smallest (area, id).
std::optional<ZoneId> brute_force_membership(const Position& p, const std::vector<Zone>& zones);

// The five exemplar centroids as a local table; the nearest by full sort.
int nearest_centroid_oracle(double v, double a, double pr);

}  // namespace xri::testing

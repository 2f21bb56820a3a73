#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pinpat/cone.hpp"
#include "pinpat/discretized_set.hpp"
#include "pinpat/geometry.hpp"
#include "pinpat/lab/config.hpp"

namespace pinpat::lab {

// Lattice h Z^d inside B(0, radius).
DiscretizedSet grid_ball(int d, double radius, double pitch, double thickness = -1.0);
// Lattice points within ball_radius of some node of spacing Z^d, inside B(0, radius).
DiscretizedSet lattice_of_balls(int d, double radius, double spacing, double ball_radius, double pitch);
// Lattice points covered by `count` seeded balls with centers in B(0, radius).
DiscretizedSet random_union(int d, double radius, int count, double ball_radius, double pitch, std::uint64_t seed);

// One point per line, whitespace separated coordinates; '#' starts a comment.
std::vector<Point> read_point_file(const std::string& path);
void write_point_file(const std::string& path, const std::vector<Point>& pts);

struct BuiltSet {
  DiscretizedSet set;
  double radius = 0.0;
  double pitch = 0.0;
};

// Builds cfg.set; cone sets use the supplied cone.
BuiltSet build_set(const ExperimentConfig& cfg, const SolidCone* cone);

// Pattern named or listed in the config, normalized.
Pattern config_pattern(const ExperimentConfig& cfg);

// Seeded pins among set points within pin_radius of the origin (all points if none qualify).
std::vector<Point> sample_pins(const DiscretizedSet& s, int count, double pin_radius, std::uint64_t seed);

// Evenly spaced grid of count values over [lo, hi].
std::vector<double> linear_grid(double lo, double hi, int count);

}  // namespace pinpat::lab

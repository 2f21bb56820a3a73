#pragma once

#include <cstddef>

namespace pinpat {

// Every numeric tolerance used by the library lives here. Operations take
// the record by const reference and default to kTolerances.
struct Tolerances {
  double orthogonality = 1e-10;       // max |O^T O - I| entry for an Isometry
  double collinear_angle = 1e-12;     // smallest_angle rejects angles this close to 0 or pi
  double distance_preservation = 1e-10;
  double normalized_check = 1e-12;    // Pattern::is_normalized
  double unit_norm = 1e-12;           // catalog / slice circle norms
  double gap_match = 1e-9;            // match_equal_gap angular gaps
  double coplanar = 1e-9;             // relative residual for the 2-plane test
  double slicing_identity = 1e-9;
  double measure_bound_slack = 1e-12;
  double sliver = 1e-12;              // arcs / cells shorter than this count as rounding debris
};

inline constexpr Tolerances kTolerances{};

inline constexpr int kDefaultExactLimit = 40;
inline constexpr double kPrimeFeasibilityCap = 1e7;
inline constexpr int kDefaultShrinkExponent = 11;
inline constexpr int kDefaultSlackExponent = 10;
inline constexpr int kMaxDim = 8;

}  // namespace pinpat

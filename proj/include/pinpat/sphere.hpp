#pragma once

#include <vector>

#include "pinpat/density.hpp"
#include "pinpat/discretized_set.hpp"
#include "pinpat/geometry.hpp"
#include "pinpat/parallel.hpp"

namespace pinpat {

// Circle {r (cos t u + sin t v) : t in (0, 2pi)} of the repeated polar
// parameterization with the non-leading angles fixed to `angles`.
struct SphereSlice {
  double radius = 1.0;
  std::vector<double> angles;  // (theta_2, ..., theta_{d-2}, phi)
  Point u;                     // e1
  Point v;                     // (0, beta)
  Point at(double theta1) const;
};

struct SliceGrid {
  int per_angle = 8;  // grid points per fixed angle
};

// theta_j sampled at (i + 1/2) pi / n, phi at i pi / n, i = 0..n-1.
std::vector<SphereSlice> slice_sphere(double r, int d, SliceGrid grid);
// Per-angle count making neighbouring circles at most `spacing` apart at radius r.
int slice_grid_for_spacing(double r, double spacing, int cap);

// O_alpha: the isometry taking u to e1 and v to e2.
Isometry slice_alignment(const SphereSlice& s);

// Point of S^{d-1} at repeated polar angles (theta_1, ..., theta_{d-2}, phi).
std::vector<double> polar_point(int d, const std::vector<double>& angles);
// |prod_j sin^{d-j-1} theta_j| (the r^{d-1} factor excluded).
double polar_jacobian(int d, const std::vector<double>& angles);

struct SphereReport {
  int dim = 0;
  int nodes = 0;
  double area = 0.0, area_exact = 0.0, area_rel_err = 0.0;
  double ball = 0.0, ball_exact = 0.0, ball_rel_err = 0.0;
  double radius = 1.0;
};

double sphere_area_exact(int d);  // area of S^{d-1}

SphereReport sphere_measure_checks(int d, int nodes, double radius = 1.0, Exec exec = Exec::parallel);

// Split of L^d(A cap B(x, R)) by whether |y - x| lies in the scaling union D.
struct CoareaSplit {
  double radius = 0.0;
  double i1 = 0.0;  // r in D
  double i2 = 0.0;  // r not in D
  double total = 0.0;
  std::uint64_t points = 0;
};

CoareaSplit coarea_split(const DiscretizedSet& a, const Point& x, const IntervalUnion& d_union, double radius);

}  // namespace pinpat

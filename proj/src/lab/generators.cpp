#include "pinpat/lab/generators.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "pinpat/errors.hpp"
#include "pinpat/parallel.hpp"

namespace pinpat::lab {

namespace {

constexpr double kMaxPoints = 2.0e7;

// Visit every lattice point h*z with z in the integer box [lo, hi]^d.
template <class F>
void for_lattice_box(int d, const std::vector<std::int64_t>& lo, const std::vector<std::int64_t>& hi, F&& f) {
  std::vector<std::int64_t> z(lo);
  while (true) {
    f(z);
    int a = d - 1;
    while (a >= 0 && ++z[static_cast<std::size_t>(a)] > hi[static_cast<std::size_t>(a)]) {
      z[static_cast<std::size_t>(a)] = lo[static_cast<std::size_t>(a)];
      --a;
    }
    if (a < 0) return;
  }
}

void check_size(int d, double radius, double pitch) {
  require(pitch > 0.0 && radius > 0.0, ErrorCode::InvalidArgument, "radius and pitch must be positive");
  const double est = std::pow(2.0 * radius / pitch + 1.0, d);
  require(est <= kMaxPoints * 4.0, ErrorCode::TooLarge, "lattice too large for this radius and pitch");
}

// Sorted unique integer keys of the union of lattice balls.
DiscretizedSet from_keys(int d, std::vector<std::vector<std::int64_t>> keys, double pitch) {
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  std::vector<double> flat;
  flat.reserve(keys.size() * static_cast<std::size_t>(d));
  for (const auto& z : keys)
    for (auto v : z) flat.push_back(static_cast<double>(v) * pitch);
  return DiscretizedSet(d, std::move(flat), pitch);
}

void add_ball(int d, const std::vector<double>& c, double rad, double pitch, double outer,
              std::vector<std::vector<std::int64_t>>& keys) {
  std::vector<std::int64_t> lo(static_cast<std::size_t>(d)), hi(static_cast<std::size_t>(d));
  for (int a = 0; a < d; ++a) {
    lo[static_cast<std::size_t>(a)] = static_cast<std::int64_t>(std::ceil((c[static_cast<std::size_t>(a)] - rad) / pitch));
    hi[static_cast<std::size_t>(a)] = static_cast<std::int64_t>(std::floor((c[static_cast<std::size_t>(a)] + rad) / pitch));
  }
  for_lattice_box(d, lo, hi, [&](const std::vector<std::int64_t>& z) {
    double s = 0.0, o = 0.0;
    for (int a = 0; a < d; ++a) {
      const double p = static_cast<double>(z[static_cast<std::size_t>(a)]) * pitch;
      s += (p - c[static_cast<std::size_t>(a)]) * (p - c[static_cast<std::size_t>(a)]);
      o += p * p;
    }
    if (s <= rad * rad && o <= outer * outer) keys.push_back(z);
  });
}

}  // namespace

DiscretizedSet grid_ball(int d, double radius, double pitch, double thickness) {
  check_size(d, radius, pitch);
  const auto m = static_cast<std::int64_t>(std::floor(radius / pitch));
  std::vector<std::int64_t> lo(static_cast<std::size_t>(d), -m), hi(static_cast<std::size_t>(d), m);
  std::vector<double> flat;
  for_lattice_box(d, lo, hi, [&](const std::vector<std::int64_t>& z) {
    double s = 0.0;
    for (auto v : z) s += static_cast<double>(v) * static_cast<double>(v);
    if (s * pitch * pitch <= radius * radius)
      for (auto v : z) flat.push_back(static_cast<double>(v) * pitch);
  });
  return DiscretizedSet(d, std::move(flat), pitch, thickness);
}

DiscretizedSet lattice_of_balls(int d, double radius, double spacing, double ball_radius, double pitch) {
  check_size(d, radius, pitch);
  require(spacing > 0.0 && ball_radius > 0.0, ErrorCode::InvalidArgument, "spacing and ball radius must be positive");
  const auto m = static_cast<std::int64_t>(std::floor(radius / spacing));
  std::vector<std::int64_t> lo(static_cast<std::size_t>(d), -m), hi(static_cast<std::size_t>(d), m);
  std::vector<std::vector<std::int64_t>> keys;
  for_lattice_box(d, lo, hi, [&](const std::vector<std::int64_t>& z) {
    std::vector<double> c(static_cast<std::size_t>(d));
    for (int a = 0; a < d; ++a) c[static_cast<std::size_t>(a)] = static_cast<double>(z[static_cast<std::size_t>(a)]) * spacing;
    add_ball(d, c, ball_radius, pitch, radius, keys);
  });
  return from_keys(d, std::move(keys), pitch);
}

DiscretizedSet random_union(int d, double radius, int count, double ball_radius, double pitch, std::uint64_t seed) {
  check_size(d, radius, pitch);
  require(count >= 0 && ball_radius > 0.0, ErrorCode::InvalidArgument, "bad random union parameters");
  auto rng = make_rng(seed, 0x5e7);
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::vector<std::int64_t>> keys;
  for (int b = 0; b < count; ++b) {
    std::vector<double> c(static_cast<std::size_t>(d));
    double n2 = 0.0;
    for (auto& v : c) {
      v = g(rng);
      n2 += v * v;
    }
    const double rho = radius * std::pow(u(rng), 1.0 / d) / std::sqrt(std::max(n2, 1e-300));
    for (auto& v : c) v *= rho;
    const double rad = ball_radius * (0.5 + 0.5 * u(rng));
    add_ball(d, c, rad, pitch, radius, keys);
  }
  return from_keys(d, std::move(keys), pitch);
}

std::vector<Point> read_point_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open point file " + path);
  std::vector<Point> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<double> c;
    double v;
    while (ls >> v) c.push_back(v);
    if (!ls.eof()) fail(ErrorCode::IoError, path + ":" + std::to_string(lineno) + ": not a number");
    if (c.empty()) continue;
    if (!out.empty() && static_cast<int>(c.size()) != out.front().dim())
      fail(ErrorCode::DimensionMismatch, path + ":" + std::to_string(lineno) + ": dimension changes");
    out.emplace_back(std::move(c));
  }
  return out;
}

void write_point_file(const std::string& path, const std::vector<Point>& pts) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::IoError, "cannot write " + path);
  char buf[32];
  for (const auto& p : pts) {
    for (int i = 0; i < p.dim(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", p[i]);
      out << (i ? " " : "") << buf;
    }
    out << '\n';
  }
}

BuiltSet build_set(const ExperimentConfig& cfg, const SolidCone* cone) {
  const auto& s = cfg.set;
  BuiltSet b;
  const std::string& g = s.generator;
  if (g == "file") {
    const auto pts = read_point_file(s.path);
    require(!pts.empty(), ErrorCode::ConfigError, "point file is empty");
    double rad = 0.0;
    for (const auto& p : pts) rad = std::max(rad, p.norm());
    b.pitch = cfg.pitch > 0.0 ? cfg.pitch : 1.0;
    b.set = DiscretizedSet::from_points(pts, b.pitch);
    b.radius = s.radius > 0.0 ? s.radius : rad;
    return b;
  }
  if (g == "empty") {
    b.pitch = cfg.pitch > 0.0 ? cfg.pitch : 1.0;
    b.radius = s.radius > 0.0 ? s.radius : 1.0;
    b.set = DiscretizedSet(cfg.d, {}, b.pitch);
    return b;
  }
  b.radius = s.radius > 0.0 ? s.radius : (g == "cone" ? 20.0 : 10.0);
  b.pitch = cfg.pitch > 0.0 ? cfg.pitch : b.radius / 100.0;
  if (g == "cone") {
    require(cone != nullptr, ErrorCode::ConfigError, "cone generator needs cone parameters");
    b.set = discretize_cone(*cone, b.radius, b.pitch);
  } else if (g == "grid-disk") {
    b.set = grid_ball(cfg.d, b.radius, b.pitch);
  } else if (g == "lattice-of-balls") {
    b.set = lattice_of_balls(cfg.d, b.radius, s.spacing, s.ball_radius, b.pitch);
  } else if (g == "random-union") {
    b.set = random_union(cfg.d, b.radius, s.count, s.ball_radius, b.pitch, cfg.seed);
  } else {
    fail(ErrorCode::ConfigError, "unknown set generator '" + g + "'");
  }
  return b;
}

Pattern config_pattern(const ExperimentConfig& cfg) {
  std::vector<Point> pts;
  if (cfg.pattern == "equilateral") {
    std::vector<double> a(static_cast<std::size_t>(cfg.d), 0.0), b(a);
    a[0] = 1.0;
    b[0] = 0.5;
    b[1] = std::sqrt(3.0) / 2.0;
    pts = {Point::zero(cfg.d), Point(a), Point(b)};
  } else if (cfg.pattern == "points") {
    for (const auto& c : cfg.pattern_points) pts.emplace_back(c);
  } else {
    fail(ErrorCode::ConfigError, "unknown pattern '" + cfg.pattern + "'");
  }
  return normalize_pattern(Pattern(std::move(pts)));
}

std::vector<Point> sample_pins(const DiscretizedSet& s, int count, double pin_radius, std::uint64_t seed) {
  std::vector<std::size_t> pool;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (std::sqrt(dot(s.point(i), s.point(i))) <= pin_radius) pool.push_back(i);
  if (pool.empty())
    for (std::size_t i = 0; i < s.size(); ++i) pool.push_back(i);
  std::vector<Point> out;
  if (pool.empty()) return out;
  auto rng = make_rng(seed, 0x9175);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (int i = 0; i < count; ++i) out.push_back(s.point_at(pool[pick(rng)]));
  return out;
}

std::vector<double> linear_grid(double lo, double hi, int count) {
  require(count >= 1 && lo > 0.0 && hi >= lo, ErrorCode::InvalidArgument, "bad grid");
  require(count == 1 || hi > lo, ErrorCode::InvalidArgument, "grid of several values needs hi > lo");
  std::vector<double> g(static_cast<std::size_t>(count));
  if (count == 1) {
    g[0] = lo;
    return g;
  }
  for (int i = 0; i < count; ++i) g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (count - 1);
  g.back() = hi;
  return g;
}

}  // namespace pinpat::lab

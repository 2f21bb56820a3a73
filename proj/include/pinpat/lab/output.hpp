#pragma once

#include <chrono>
#include <string>
#include <utility>
#include <vector>

#include "pinpat/lab/config.hpp"

namespace pinpat::lab {

// CSV cell from a double: "%.17g", so the value reads back exactly.
std::string csv_number(double v);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}
  void add(std::vector<std::string> row);
  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }
  std::string str() const;
  void write(const std::string& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

// RFC 4180 subset: quoted fields may hold commas, quotes and newlines.
CsvTable read_csv(const std::string& text);
CsvTable read_csv_file(const std::string& path);

// Minimal SVG 1.1 builder with a linear data-to-pixel map.
class Svg {
 public:
  Svg(double width, double height);
  // data window [x0, x1] x [y0, y1] mapped onto the drawing area
  void window(double x0, double x1, double y0, double y1, double margin = 40.0);
  double px(double x) const;
  double py(double y) const;

  void line(double x0, double y0, double x1, double y1, const std::string& stroke, double width = 1.0);
  void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& stroke, double width = 1.0);
  void polygon(const std::vector<std::pair<double, double>>& pts, const std::string& fill, double opacity = 1.0);
  void circle(double x, double y, double r_px, const std::string& fill);
  void rect_px(double x, double y, double w, double h, const std::string& fill);
  void text_px(double x, double y, const std::string& s, double size = 12.0, const std::string& anchor = "start");
  void axes(const std::string& xlabel, const std::string& ylabel);

  std::string str() const;
  void write(const std::string& path) const;

 private:
  double w_, h_;
  double x0_ = 0, x1_ = 1, y0_ = 0, y1_ = 1, m_ = 40;
  std::string body_;
};

enum class Verdict { pass, warn, fail };
const char* verdict_name(Verdict v);

// JSON run report: config echo, results, and named checks. Wall-clock timings
// are kept apart (stderr and <name>.timings.txt) so reports stay reproducible.
class RunReport {
 public:
  RunReport(std::string command, const ExperimentConfig& cfg);

  ojson& results() { return results_; }
  void check(const std::string& name, Verdict v, const std::string& detail, ojson reproducer = nullptr);
  void check(const std::string& name, bool ok, const std::string& detail, ojson reproducer = nullptr) {
    check(name, ok ? Verdict::pass : Verdict::fail, detail, std::move(reproducer));
  }
  Verdict verdict() const;
  int exit_code() const { return verdict() == Verdict::fail ? 1 : 0; }

  void time(const std::string& section, double seconds) { timings_.emplace_back(section, seconds); }
  ojson json() const;
  // Writes <out>/<command>.json and <out>/<command>.timings.txt.
  void write(const std::string& out_dir) const;

 private:
  std::string command_;
  ojson config_;
  ojson results_ = ojson::object();
  ojson checks_ = ojson::array();
  std::vector<std::pair<std::string, double>> timings_;
};

class Stopwatch {
 public:
  Stopwatch() : t0_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_;
};

void ensure_dir(const std::string& dir);
void write_text(const std::string& path, const std::string& text);

}  // namespace pinpat::lab

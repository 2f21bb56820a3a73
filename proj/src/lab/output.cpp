#include "pinpat/lab/output.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "pinpat/errors.hpp"

namespace pinpat::lab {

std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {
std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string escape_xml(const std::string& s) {
  std::string o;
  for (char c : s) {
    switch (c) {
      case '&': o += "&amp;"; break;
      case '<': o += "&lt;"; break;
      case '>': o += "&gt;"; break;
      case '"': o += "&quot;"; break;
      default: o += c;
    }
  }
  return o;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}
}  // namespace

void CsvTable::add(std::vector<std::string> row) {
  require(row.size() == header_.size(), ErrorCode::LengthMismatch, "CSV row width differs from header");
  rows_.push_back(std::move(row));
}

std::string CsvTable::str() const {
  std::string s;
  auto emit = [&](const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + quote(r[i]);
    s += '\n';
  };
  emit(header_);
  for (const auto& r : rows_) emit(r);
  return s;
}

void CsvTable::write(const std::string& path) const { write_text(path, str()); }

CsvTable read_csv(const std::string& text) {
  std::vector<std::vector<std::string>> recs;
  std::vector<std::string> rec;
  std::string field;
  bool quoted = false, any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      rec.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      rec.push_back(std::move(field));
      field.clear();
      recs.push_back(std::move(rec));
      rec.clear();
      any = false;
    } else {
      field += c;
      any = true;
    }
  }
  if (quoted) fail(ErrorCode::IoError, "unterminated quoted CSV field");
  if (any || !field.empty()) {
    rec.push_back(std::move(field));
    recs.push_back(std::move(rec));
  }
  if (recs.empty()) fail(ErrorCode::IoError, "CSV has no header");
  CsvTable t(recs.front());
  for (std::size_t i = 1; i < recs.size(); ++i) t.add(std::move(recs[i]));
  return t;
}

CsvTable read_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return read_csv(ss.str());
}

Svg::Svg(double width, double height) : w_(width), h_(height) {}

void Svg::window(double x0, double x1, double y0, double y1, double margin) {
  x0_ = x0;
  x1_ = x1 > x0 ? x1 : x0 + 1.0;
  y0_ = y0;
  y1_ = y1 > y0 ? y1 : y0 + 1.0;
  m_ = margin;
}

double Svg::px(double x) const { return m_ + (x - x0_) / (x1_ - x0_) * (w_ - 2 * m_); }
double Svg::py(double y) const { return h_ - m_ - (y - y0_) / (y1_ - y0_) * (h_ - 2 * m_); }

void Svg::line(double x0, double y0, double x1, double y1, const std::string& stroke, double width) {
  body_ += "<line x1=\"" + num(px(x0)) + "\" y1=\"" + num(py(y0)) + "\" x2=\"" + num(px(x1)) + "\" y2=\"" +
           num(py(y1)) + "\" stroke=\"" + stroke + "\" stroke-width=\"" + num(width) + "\"/>\n";
}

void Svg::polyline(const std::vector<std::pair<double, double>>& pts, const std::string& stroke, double width) {
  body_ += "<polyline fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"" + num(width) + "\" points=\"";
  for (const auto& [x, y] : pts) body_ += num(px(x)) + "," + num(py(y)) + " ";
  body_ += "\"/>\n";
}

void Svg::polygon(const std::vector<std::pair<double, double>>& pts, const std::string& fill, double opacity) {
  body_ += "<polygon fill=\"" + fill + "\" fill-opacity=\"" + num(opacity) + "\" points=\"";
  for (const auto& [x, y] : pts) body_ += num(px(x)) + "," + num(py(y)) + " ";
  body_ += "\"/>\n";
}

void Svg::circle(double x, double y, double r_px, const std::string& fill) {
  body_ += "<circle cx=\"" + num(px(x)) + "\" cy=\"" + num(py(y)) + "\" r=\"" + num(r_px) + "\" fill=\"" + fill +
           "\"/>\n";
}

void Svg::rect_px(double x, double y, double w, double h, const std::string& fill) {
  body_ += "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(w) + "\" height=\"" + num(h) +
           "\" fill=\"" + fill + "\"/>\n";
}

void Svg::text_px(double x, double y, const std::string& s, double size, const std::string& anchor) {
  body_ += "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-family=\"sans-serif\" font-size=\"" + num(size) +
           "\" text-anchor=\"" + anchor + "\">" + escape_xml(s) + "</text>\n";
}

void Svg::axes(const std::string& xlabel, const std::string& ylabel) {
  const double l = m_, r = w_ - m_, t = m_, b = h_ - m_;
  body_ += "<rect x=\"" + num(l) + "\" y=\"" + num(t) + "\" width=\"" + num(r - l) + "\" height=\"" + num(b - t) +
           "\" fill=\"none\" stroke=\"#444\"/>\n";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", x0_);
  text_px(l, b + 16, buf, 10, "start");
  std::snprintf(buf, sizeof buf, "%.4g", x1_);
  text_px(r, b + 16, buf, 10, "end");
  std::snprintf(buf, sizeof buf, "%.4g", y0_);
  text_px(l - 4, b, buf, 10, "end");
  std::snprintf(buf, sizeof buf, "%.4g", y1_);
  text_px(l - 4, t + 8, buf, 10, "end");
  text_px((l + r) / 2, b + 30, xlabel, 12, "middle");
  text_px(12, (t + b) / 2, ylabel, 12, "start");
}

std::string Svg::str() const {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n"
         "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         num(w_) + "\" height=\"" + num(h_) + "\" viewBox=\"0 0 " + num(w_) + " " + num(h_) + "\">\n" +
         "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n" + body_ + "</svg>\n";
}

void Svg::write(const std::string& path) const { write_text(path, str()); }

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass: return "PASS";
    case Verdict::warn: return "WARN";
    case Verdict::fail: return "FAIL";
  }
  return "FAIL";
}

RunReport::RunReport(std::string command, const ExperimentConfig& cfg)
    : command_(std::move(command)), config_(config_echo(cfg)) {}

void RunReport::check(const std::string& name, Verdict v, const std::string& detail, ojson reproducer) {
  ojson c;
  c["name"] = name;
  c["verdict"] = verdict_name(v);
  c["detail"] = detail;
  if (!reproducer.is_null()) c["reproducer"] = std::move(reproducer);
  checks_.push_back(std::move(c));
}

Verdict RunReport::verdict() const {
  Verdict v = Verdict::pass;
  for (const auto& c : checks_) {
    const auto s = c["verdict"].get<std::string>();
    if (s == "FAIL") return Verdict::fail;
    if (s == "WARN") v = Verdict::warn;
  }
  return v;
}

ojson RunReport::json() const {
  ojson j;
  j["command"] = command_;
  j["config"] = config_;
  j["results"] = results_;
  j["checks"] = checks_;
  j["verdict"] = verdict_name(verdict());
  return j;
}

void RunReport::write(const std::string& out_dir) const {
  ensure_dir(out_dir);
  write_text(out_dir + "/" + command_ + ".json", json().dump(2) + "\n");
  std::string t;
  char buf[160];
  for (const auto& [name, s] : timings_) {
    std::snprintf(buf, sizeof buf, "%s %.3f s\n", name.c_str(), s);
    t += buf;
    std::cerr << command_ << ": " << buf;
  }
  write_text(out_dir + "/" + command_ + ".timings.txt", t);
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorCode::IoError, "cannot create directory " + dir + ": " + ec.message());
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IoError, "cannot write " + path);
  out << text;
  if (!out) fail(ErrorCode::IoError, "write failed for " + path);
}

}  // namespace pinpat::lab

#include "follower/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>

namespace follower {
namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", std::fabs(v) < 1e-12 ? 0.0 : v);
  return buf;
}

// Roughly five "nice" tick positions covering [lo, hi].
std::vector<double> ticks(double lo, double hi) {
  const double span = hi - lo;
  if (!(span > 0.0)) return {lo};
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (m * mag >= raw) {
      step = m * mag;
      break;
    }
  }
  std::vector<double> out;
  for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * span; t += step) out.push_back(t);
  return out;
}

}  // namespace

SvgCanvas::SvgCanvas(double width, double height, Vec2 data_min, Vec2 data_max, double margin)
    : width_(width), height_(height), margin_(margin), min_(data_min), max_(data_max) {
  if (!(max_.x > min_.x)) {
    min_.x -= 1.0;
    max_.x += 1.0;
  }
  if (!(max_.y > min_.y)) {
    min_.y -= 1.0;
    max_.y += 1.0;
  }
}

double SvgCanvas::map_x(double x) const {
  return margin_ + (x - min_.x) / (max_.x - min_.x) * (width_ - 2.0 * margin_);
}

double SvgCanvas::map_y(double y) const {
  return height_ - margin_ - (y - min_.y) / (max_.y - min_.y) * (height_ - 2.0 * margin_);
}

void SvgCanvas::polyline(const std::vector<Vec2> &points, const std::string &stroke,
                         double width) {
  if (points.empty()) return;
  body_ += "<polyline fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"" + num(width) +
           "\" points=\"";
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i) body_ += ' ';
    body_ += num(map_x(points[i].x)) + "," + num(map_y(points[i].y));
  }
  body_ += "\"/>\n";
}

void SvgCanvas::circle(const Vec2 &center, double radius_px, const std::string &fill,
                       const std::string &stroke) {
  body_ += "<circle cx=\"" + num(map_x(center.x)) + "\" cy=\"" + num(map_y(center.y)) +
           "\" r=\"" + num(radius_px) + "\" fill=\"" + fill + "\" stroke=\"" + stroke + "\"/>\n";
}

void SvgCanvas::cross(const Vec2 &center, double half_px, const std::string &stroke) {
  const double cx = map_x(center.x);
  const double cy = map_y(center.y);
  body_ += "<path d=\"M" + num(cx - half_px) + "," + num(cy - half_px) + " L" +
           num(cx + half_px) + "," + num(cy + half_px) + " M" + num(cx - half_px) + "," +
           num(cy + half_px) + " L" + num(cx + half_px) + "," + num(cy - half_px) +
           "\" stroke=\"" + stroke + "\" stroke-width=\"1.5\"/>\n";
}

void SvgCanvas::arrow(const Vec2 &from, const Vec2 &to, const std::string &stroke) {
  body_ += "<line x1=\"" + num(map_x(from.x)) + "\" y1=\"" + num(map_y(from.y)) + "\" x2=\"" +
           num(map_x(to.x)) + "\" y2=\"" + num(map_y(to.y)) + "\" stroke=\"" + stroke +
           "\" stroke-width=\"1\" marker-end=\"url(#head)\"/>\n";
}

void SvgCanvas::text(double px, double py, const std::string &content, double size,
                     const std::string &anchor, const std::string &fill) {
  body_ += "<text x=\"" + num(px) + "\" y=\"" + num(py) + "\" font-size=\"" + num(size) +
           "\" font-family=\"sans-serif\" text-anchor=\"" + anchor + "\" fill=\"" + fill + "\">" +
           xml_escape(content) + "</text>\n";
}

void SvgCanvas::axes(const std::string &x_label, const std::string &y_label) {
  const double left = margin_;
  const double right = width_ - margin_;
  const double top = margin_;
  const double bottom = height_ - margin_;
  body_ += "<rect x=\"" + num(left) + "\" y=\"" + num(top) + "\" width=\"" + num(right - left) +
           "\" height=\"" + num(bottom - top) + "\" fill=\"none\" stroke=\"#444\"/>\n";
  for (double t : ticks(min_.x, max_.x)) {
    const double px = map_x(t);
    body_ += "<line x1=\"" + num(px) + "\" y1=\"" + num(bottom) + "\" x2=\"" + num(px) +
             "\" y2=\"" + num(bottom + 4) + "\" stroke=\"#444\"/>\n";
    text(px, bottom + 16, tick_label(t), 10.0, "middle");
  }
  for (double t : ticks(min_.y, max_.y)) {
    const double py = map_y(t);
    body_ += "<line x1=\"" + num(left - 4) + "\" y1=\"" + num(py) + "\" x2=\"" + num(left) +
             "\" y2=\"" + num(py) + "\" stroke=\"#444\"/>\n";
    text(left - 6, py + 3, tick_label(t), 10.0, "end");
  }
  if (!x_label.empty()) text(0.5 * (left + right), height_ - 8, x_label, 12.0, "middle");
  if (!y_label.empty()) text(12, 0.5 * (top + bottom), y_label, 12.0, "middle");
}

std::string SvgCanvas::str() const {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width_) + "\" height=\"" +
         num(height_) + "\" viewBox=\"0 0 " + num(width_) + " " + num(height_) + "\">\n";
  out +=
      "<defs><marker id=\"head\" markerWidth=\"6\" markerHeight=\"6\" refX=\"5\" refY=\"3\" "
      "orient=\"auto\"><path d=\"M0,0 L6,3 L0,6 z\" fill=\"#333\"/></marker></defs>\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += body_;
  out += "</svg>\n";
  return out;
}

std::string xml_escape(const std::string &s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c; break;
    }
  }
  return out;
}

std::string agent_color(int index, int count) {
  const double hue = count > 0 ? 360.0 * index / count : 0.0;
  return "hsl(" + num(hue) + ",70%,45%)";
}

std::string render_trajectories(const std::vector<StepRecord> &records,
                                const TrajectoryPlotOptions &options) {
  std::map<int, std::vector<Vec2>> paths;
  Vec2 lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  Vec2 hi = -lo;
  for (const auto &r : records) {
    for (const auto &a : r.agents) {
      paths[a.id].push_back(a.position);
      lo = {std::min(lo.x, a.position.x), std::min(lo.y, a.position.y)};
      hi = {std::max(hi.x, a.position.x), std::max(hi.y, a.position.y)};
    }
  }
  if (paths.empty()) lo = hi = Vec2{};

  // Equal aspect: pad the shorter side.
  const double span = std::max({hi.x - lo.x, hi.y - lo.y, 1.0});
  const Vec2 mid = 0.5 * (lo + hi);
  const Vec2 half{0.55 * span, 0.55 * span};
  SvgCanvas canvas(options.width, options.height, mid - half, mid + half);
  canvas.axes("x (m)", "y (m)");

  const int count = static_cast<int>(paths.size());
  int k = 0;
  for (const auto &[id, pts] : paths) {
    const std::string color = agent_color(k++, count);
    canvas.polyline(pts, color, 1.2);
    canvas.circle(pts.front(), 3.0, color);
    canvas.cross(pts.back(), 3.5, color);
  }

  if (options.quiver_every > 0) {
    for (const auto &r : records) {
      if (r.step % options.quiver_every != 0) continue;
      for (const auto &a : r.agents) {
        canvas.arrow(a.position, a.position + options.quiver_scale * a.preferred, "#999");
        canvas.arrow(a.position, a.position + options.quiver_scale * a.rotated, "#d33");
      }
    }
  }
  return canvas.str();
}

std::string render_curves(const std::string &title, const std::vector<Curve> &curves, double dt,
                          double width, double height) {
  std::size_t n = 0;
  double top = 0.0;
  for (const auto &c : curves) {
    n = std::max(n, c.values.size());
    for (double v : c.values) top = std::max(top, v);
  }
  const double t_end = n > 1 ? static_cast<double>(n - 1) * dt : dt;
  SvgCanvas canvas(width, height, {0.0, 0.0}, {t_end, top > 0.0 ? 1.05 * top : 1.0}, 56.0);
  canvas.axes("time (s)", title);
  canvas.text(0.5 * width, 24, title, 14.0, "middle");

  const int count = static_cast<int>(curves.size());
  for (int k = 0; k < count; ++k) {
    const auto &c = curves[static_cast<std::size_t>(k)];
    std::vector<Vec2> pts;
    pts.reserve(c.values.size());
    for (std::size_t i = 0; i < c.values.size(); ++i) {
      pts.push_back({static_cast<double>(i) * dt, c.values[i]});
    }
    const std::string color = agent_color(k, std::max(count, 2));
    canvas.polyline(pts, color, 1.5);
    canvas.text(width - 60, 70 + 16.0 * k, c.label, 12.0, "end", color);
  }
  return canvas.str();
}

}  // namespace follower

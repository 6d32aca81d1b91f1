#pragma once

#include <string>
#include <vector>

#include "follower/geometry.hpp"
#include "follower/state.hpp"

namespace follower {

/// Minimal SVG writer mapping a data-space rectangle (y up) onto a pixel
/// viewport (y down) with a fixed margin for axes.
class SvgCanvas {
 public:
  SvgCanvas(double width, double height, Vec2 data_min, Vec2 data_max, double margin = 48.0);

  void polyline(const std::vector<Vec2> &points, const std::string &stroke, double width = 1.0);
  void circle(const Vec2 &center, double radius_px, const std::string &fill,
              const std::string &stroke = "none");
  void cross(const Vec2 &center, double half_px, const std::string &stroke);
  void arrow(const Vec2 &from, const Vec2 &to, const std::string &stroke);
  /// Frame, tick labels, and optional axis titles.
  void axes(const std::string &x_label = "", const std::string &y_label = "");
  void text(double px, double py, const std::string &content, double size = 12.0,
            const std::string &anchor = "start", const std::string &fill = "#222");

  std::string str() const;

  double map_x(double x) const;
  double map_y(double y) const;

 private:
  double width_;
  double height_;
  double margin_;
  Vec2 min_;
  Vec2 max_;
  std::string body_;
};

std::string xml_escape(const std::string &s);
/// Distinct hue for agent `index` out of `count`.
std::string agent_color(int index, int count);

struct TrajectoryPlotOptions {
  double width = 800.0;
  double height = 800.0;
  /// Draw p_i (gray) and g_i (colored) arrows every this many steps; 0 disables.
  int quiver_every = 0;
  double quiver_scale = 1.0;
};

/// Per-agent polylines with start (circle) and end (cross) markers.
std::string render_trajectories(const std::vector<StepRecord> &records,
                                const TrajectoryPlotOptions &options = {});

struct Curve {
  std::string label;
  std::vector<double> values;
};

/// Overlaid line chart of metric curves against time.
std::string render_curves(const std::string &title, const std::vector<Curve> &curves, double dt,
                          double width = 800.0, double height = 480.0);

}  // namespace follower

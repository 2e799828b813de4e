#include "rmpsim/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace rmpsim {

namespace {

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                          "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                          "#bcbd22", "#17becf"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace

std::string render_trajectory_svg(const ScenarioFile& file,
                                  const TrajectoryLog& log, int width,
                                  int height) {
  const Scenario& sc = file.scenario;
  const int n = sc.team.count();

  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  auto grow = [&](double x, double y) {
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  };
  for (const auto& s : log.states)
    for (int i = 0; i < n; ++i)
      grow(s.x(sc.team.offset(i)), s.x(sc.team.offset(i) + 1));
  for (const auto& st : sc.subtasks) {
    if (const auto* a = std::get_if<GoalAttractorAParams>(&st.params); a && a->goal)
      grow((*a->goal)(0), (*a->goal)(1));
    if (const auto* b = std::get_if<GoalAttractorBParams>(&st.params); b && b->goal)
      grow((*b->goal)(0), (*b->goal)(1));
  }
  if (log.states.empty()) grow(0.0, 0.0);
  const double span = std::max({xmax - xmin, ymax - ymin, 1e-6});
  const double margin = 0.08 * span;
  const double scale = (std::min(width, height) - 20) / (span + 2 * margin);
  auto px = [&](double x) { return 10 + scale * (x - xmin + margin); };
  auto py = [&](double y) { return height - 10 - scale * (y - ymin + margin); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
      << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<title>" << sc.name << "</title>\n";

  // Formation edges at the first and last sample.
  auto edges_at = [&](const State& s, const char* color) {
    for (const auto& [i, j] : sc.formation_edges) {
      out << "<line x1=\"" << fmt(px(s.x(sc.team.offset(i)))) << "\" y1=\""
          << fmt(py(s.x(sc.team.offset(i) + 1))) << "\" x2=\""
          << fmt(px(s.x(sc.team.offset(j)))) << "\" y2=\""
          << fmt(py(s.x(sc.team.offset(j) + 1))) << "\" stroke=\"" << color
          << "\" stroke-width=\"1\"/>\n";
    }
  };
  if (!log.states.empty()) {
    edges_at(log.states.front(), "#cccccc");
    edges_at(log.states.back(), "#444444");
  }

  for (int i = 0; i < n; ++i) {
    const char* color = kPalette[i % 10];
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& s : log.states)
      out << fmt(px(s.x(sc.team.offset(i)))) << ","
          << fmt(py(s.x(sc.team.offset(i) + 1))) << " ";
    out << "\"/>\n";
    if (!log.states.empty()) {
      const auto& s0 = log.states.front();
      out << "<circle cx=\"" << fmt(px(s0.x(sc.team.offset(i)))) << "\" cy=\""
          << fmt(py(s0.x(sc.team.offset(i) + 1))) << "\" r=\"4\" fill=\""
          << color << "\"/>\n";
      const auto& s1 = log.states.back();
      out << "<circle cx=\"" << fmt(px(s1.x(sc.team.offset(i)))) << "\" cy=\""
          << fmt(py(s1.x(sc.team.offset(i) + 1)))
          << "\" r=\"4\" fill=\"none\" stroke=\"" << color
          << "\" stroke-width=\"1.5\"/>\n";
    }
  }

  // Goal markers.
  for (const auto& st : sc.subtasks) {
    const Vec* g = nullptr;
    if (const auto* a = std::get_if<GoalAttractorAParams>(&st.params); a && a->goal)
      g = a->goal.get();
    if (const auto* b = std::get_if<GoalAttractorBParams>(&st.params); b && b->goal)
      g = b->goal.get();
    if (!g) continue;
    const double cx = px((*g)(0)), cy = py((*g)(1));
    out << "<path d=\"M " << fmt(cx) << " " << fmt(cy - 6) << " L "
        << fmt(cx + 5.7) << " " << fmt(cy + 4.2) << " L " << fmt(cx - 5.7)
        << " " << fmt(cy + 4.2)
        << " Z\" fill=\"gold\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
  }

  out << "</svg>\n";
  return out.str();
}

}  // namespace rmpsim

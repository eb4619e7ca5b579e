// Copyright 2026 The Vetoshield Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vetoshield/plot.h"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace vetoshield {
namespace {

std::string Num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

double Cross(const std::pair<double, double>& o,
             const std::pair<double, double>& a,
             const std::pair<double, double>& b) {
  return (a.first - o.first) * (b.second - o.second) -
         (a.second - o.second) * (b.first - o.first);
}

}  // namespace

std::vector<EnvelopePoint> ConvexEnvelope1D(
    std::vector<std::pair<double, double>> samples) {
  std::sort(samples.begin(), samples.end());
  std::vector<std::pair<double, double>> pts;
  for (const auto& s : samples) {
    if (!pts.empty() && pts.back().first == s.first) continue;  // keeps min
    pts.push_back(s);
  }
  std::vector<std::pair<double, double>> hull;
  for (const auto& p : pts) {
    while (hull.size() >= 2 &&
           Cross(hull[hull.size() - 2], hull.back(), p) <= 0.0) {
      hull.pop_back();
    }
    hull.push_back(p);
  }
  std::vector<EnvelopePoint> out;
  size_t seg = 0;
  for (const auto& p : pts) {
    while (seg + 1 < hull.size() && hull[seg + 1].first < p.first) ++seg;
    double env = hull[seg].second;
    if (seg + 1 < hull.size()) {
      const auto& a = hull[seg];
      const auto& b = hull[seg + 1];
      const double w = (p.first - a.first) / (b.first - a.first);
      env = (1.0 - w) * a.second + w * b.second;
    }
    out.push_back({p.first, p.second, std::min(env, p.second)});
  }
  return out;
}

std::string EnvelopeCsv(const std::vector<EnvelopePoint>& points) {
  std::string out = "belief,value,envelope\n";
  for (const auto& p : points) {
    out += Num(p.belief) + "," + Num(p.value) + "," + Num(p.envelope) + "\n";
  }
  return out;
}

std::string EnvelopeSvg(const std::vector<EnvelopePoint>& points,
                        double base_belief) {
  constexpr double kW = 400.0;
  constexpr double kH = 300.0;
  constexpr double kPad = 30.0;
  double lo = 0.0;
  double hi = 0.0;
  for (const auto& p : points) {
    lo = std::min({lo, p.value, p.envelope});
    hi = std::max({hi, p.value, p.envelope});
  }
  if (hi - lo < 1e-12) hi = lo + 1.0;
  auto sx = [&](double x) { return kPad + x * (kW - 2 * kPad); };
  auto sy = [&](double y) {
    return kH - kPad - (y - lo) / (hi - lo) * (kH - 2 * kPad);
  };
  auto path = [&](bool env) {
    std::string d;
    for (size_t k = 0; k < points.size(); ++k) {
      d += (k == 0 ? "M" : " L") + Num(sx(points[k].belief)) + " " +
           Num(sy(env ? points[k].envelope : points[k].value));
    }
    return d;
  };
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW
      << "\" height=\"" << kH << "\">\n";
  svg << "<path d=\"M" << Num(sx(0)) << " " << Num(sy(lo)) << " L"
      << Num(sx(1)) << " " << Num(sy(lo)) << "\" stroke=\"black\"/>\n";
  svg << "<path d=\"" << path(false)
      << "\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n";
  svg << "<path d=\"" << path(true)
      << "\" fill=\"none\" stroke=\"red\" stroke-width=\"2\" "
         "stroke-dasharray=\"6 4\"/>\n";
  svg << "<path d=\"M" << Num(sx(base_belief)) << " " << Num(sy(lo)) << " L"
      << Num(sx(base_belief)) << " " << Num(sy(hi))
      << "\" stroke=\"gray\" stroke-dasharray=\"2 3\"/>\n";
  svg << "</svg>\n";
  return svg.str();
}

PlotOutput EmitEnvelopePlot(const PunishmentSolution& solution,
                            const std::vector<double>& base_coblock) {
  PlotOutput out;
  if (base_coblock.size() == 2) {
    std::vector<std::pair<double, double>> samples;
    for (const auto& s : solution.samples) {
      samples.emplace_back(s.coblock[1], s.value);
    }
    const auto points = ConvexEnvelope1D(std::move(samples));
    out.csv = EnvelopeCsv(points);
    out.svg = EnvelopeSvg(points, base_coblock[1]);
    return out;
  }
  std::string header;
  for (size_t c = 0; c < base_coblock.size(); ++c) {
    header += "belief_" + std::to_string(c) + ",";
  }
  out.csv = header + "value\n";
  for (const auto& s : solution.samples) {
    for (double x : s.coblock) out.csv += Num(x) + ",";
    out.csv += Num(s.value) + "\n";
  }
  return out;
}

}  // namespace vetoshield

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


// CSV and SVG emission for value curves and their convex envelopes.

#ifndef VETOSHIELD_PLOT_H_
#define VETOSHIELD_PLOT_H_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vetoshield/punishment.h"

namespace vetoshield {

struct EnvelopePoint {
  double belief = 0.0;
  double value = 0.0;
  double envelope = 0.0;
};

// Lower convex hull of the samples, evaluated at every sample belief.
// Samples are sorted by belief; duplicates keep the smaller value.
std::vector<EnvelopePoint> ConvexEnvelope1D(
    std::vector<std::pair<double, double>> samples);

std::string EnvelopeCsv(const std::vector<EnvelopePoint>& points);

// Value curve, envelope and base point as plain SVG paths.
std::string EnvelopeSvg(const std::vector<EnvelopePoint>& points,
                        double base_belief);

struct PlotOutput {
  std::string csv;
  std::optional<std::string> svg;  // only for a one-dimensional belief
};

// The belief coordinate of a two-point co-block is its second entry.
PlotOutput EmitEnvelopePlot(const PunishmentSolution& solution,
                            const std::vector<double>& base_coblock);

}  // namespace vetoshield

#endif  // VETOSHIELD_PLOT_H_

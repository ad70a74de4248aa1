#pragma once

#include <string>

#include "umbilic/chart.hpp"
#include "umbilic/function.hpp"

namespace cli {

// theta presets: hopf (x), const (pi/4), wobble (pi/4 + 0.2 sin x),
// bump (pi/4 + 0.1 x^2). Domains are as wide as the formula allows so
// closure checks can reach the endpoints.
umbilic::FunctionSpec1D theta_preset(const std::string& name);

// f presets: one, cos (on (-1.55, 1.55)), exp.
umbilic::FunctionSpec1D warping_preset(const std::string& name);

// A preset name, inline JSON (starting with '{'), or a JSON file path.
umbilic::FunctionSpec1D load_theta(const std::string& arg);
umbilic::FunctionSpec1D load_warping(const std::string& arg);

// Chart presets are the theta presets as theta3 charts, with hopf kept
// inside (0.05, pi/2 - 0.05); also warped-one, warped-cos, warped-exp.
umbilic::MetricChart load_chart(const std::string& arg);

}  // namespace cli

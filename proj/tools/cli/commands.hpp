#pragma once

#include <cmath>
#include <cstdint>
#include <string>

namespace cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 2,
  kDomainError = 3,
  kNumericalBreach = 4,
  kCheckFailed = 5,
};

struct Options {
  std::string chart;
  std::string theta;
  std::string f;
  std::string field = "xi";
  std::string surface = "profile";
  std::string target = "s3";
  std::string out = "umbilic-out";
  std::string point;
  std::string dir;
  int grid = 0;  // 0 = command default
  int k_max = 2;
  int fiber_dim = 1;
  double tol = 0.0;  // 0 = command default
  double step = 1e-3;
  double theta0 = M_PI / 6;
  double x10 = 0.0;
  double x00 = 0.0;
  double arclen = 2.0;
  double b = M_PI / 2;
  double x0 = 0.0;
  double t0 = 0.0;
  double lo = -1.0;
  double hi = 1.0;
  double range = 50.0;
  double length = 1.0;
  std::uint64_t seed = 1;
};

int cmd_inspect(const Options& o);
int cmd_build_umbilical(const Options& o);
int cmd_conformal(const Options& o);
int cmd_check_smoothness(const Options& o);
int cmd_check_r3(const Options& o);
int cmd_check_submersion(const Options& o);
int cmd_check_tg_surfaces(const Options& o);
int cmd_check_killing(const Options& o);
int cmd_check_lemma1(const Options& o);
int cmd_geodesic(const Options& o);

}  // namespace cli

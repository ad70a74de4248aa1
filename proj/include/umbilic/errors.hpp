#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace umbilic {

enum class ErrorCode {
  invalid_argument,
  invalid_spec,
  schema,
  out_of_domain,
  unsupported_order,
  method_unavailable,
  degenerate_plane,
  not_unit_killing,
  degenerate_frame,
  rank_deficient,
  not_totally_geodesic,
  tangent_to_xi,
  conservation_breach,
  mismatched_warping,
  non_positive_warping,
  tau_nonzero_on_geodesic,
  not_orthogonal,
  not_horizontal,
};

std::string_view to_string(ErrorCode code);

class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorCode code, const std::string& message,
                std::optional<double> location = std::nullopt)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        location_(location) {}

  ErrorCode code() const noexcept { return code_; }
  // Parameter value at which the failure was detected, when one exists
  // (first violating arc length, offending abscissa, ...).
  std::optional<double> location() const noexcept { return location_; }

 private:
  ErrorCode code_;
  std::optional<double> location_;
};

}  // namespace umbilic

#include "umbilic/errors.hpp"

namespace umbilic {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::invalid_spec: return "InvalidSpec";
    case ErrorCode::schema: return "SchemaError";
    case ErrorCode::out_of_domain: return "OutOfDomain";
    case ErrorCode::unsupported_order: return "UnsupportedOrder";
    case ErrorCode::method_unavailable: return "MethodUnavailable";
    case ErrorCode::degenerate_plane: return "DegeneratePlane";
    case ErrorCode::not_unit_killing: return "NotUnitKilling";
    case ErrorCode::degenerate_frame: return "DegenerateFrame";
    case ErrorCode::rank_deficient: return "RankDeficient";
    case ErrorCode::not_totally_geodesic: return "NotTotallyGeodesic";
    case ErrorCode::tangent_to_xi: return "TangentToXi";
    case ErrorCode::conservation_breach: return "ConservationBreach";
    case ErrorCode::mismatched_warping: return "MismatchedWarping";
    case ErrorCode::non_positive_warping: return "NonPositiveWarping";
    case ErrorCode::tau_nonzero_on_geodesic: return "TauNonzeroOnGeodesic";
    case ErrorCode::not_orthogonal: return "NotOrthogonal";
    case ErrorCode::not_horizontal: return "NotHorizontal";
  }
  return "Unknown";
}

}  // namespace umbilic

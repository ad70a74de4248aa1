#include "umbilic/hypersurface.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "umbilic/connection.hpp"
#include "umbilic/errors.hpp"

namespace umbilic {

std::string_view to_string(ImmersionKind kind) {
  switch (kind) {
    case ImmersionKind::slice: return "slice";
    case ImmersionKind::vertical_lift: return "vertical-lift";
    case ImmersionKind::profile_built: return "profile-built";
    case ImmersionKind::level_x: return "level-x";
    case ImmersionKind::flow_sweep: return "flow-sweep";
    case ImmersionKind::custom: return "custom";
  }
  return "unknown";
}

ImmersionSpec::ImmersionSpec(ImmersionKind kind, Box parameters, Map map, Jacobian jacobian,
                             ImmersionMetadata metadata)
    : kind_(kind),
      params_(std::move(parameters)),
      map_(std::move(map)),
      jacobian_(std::move(jacobian)),
      meta_(std::move(metadata)) {
  if (!map_) throw GeometryError(ErrorCode::invalid_argument, "immersion needs a map");
  if (params_.dim() < 1 || params_.dim() >= kMaxDim) {
    throw GeometryError(ErrorCode::invalid_argument, "immersion parameter dimension out of range");
  }
}

double ImmersionSpec::step(int i) const {
  const double w = params_.sampling_axis(i).width();
  return 1e-4 * (w > 0.0 ? w : 1.0);
}

Mat ImmersionSpec::frame(const Vec& q) const {
  if (jacobian_) return jacobian_(q);
  const int k = parameter_dim();
  const Vec p0 = map_(q);
  Mat j(p0.size(), k);
  for (int i = 0; i < k; ++i) {
    const double h = step(i);
    Vec qp = q, qm = q;
    qp(i) += h;
    qm(i) -= h;
    j.col(i) = (map_(qp) - map_(qm)) / (2.0 * h);
  }
  return j;
}

namespace {

double smallest_singular_value(const Mat& j) {
  Eigen::JacobiSVD<Mat> svd(j);
  return svd.singularValues().minCoeff();
}

void require_rank(const Mat& j, const Vec& q) {
  const double s = smallest_singular_value(j);
  if (!(s > 1e-8)) {
    throw GeometryError(ErrorCode::rank_deficient,
                        "immersion frame is rank deficient (smallest singular value " +
                            std::to_string(s) + ")",
                        q.size() > 0 ? std::optional<double>(q(0)) : std::nullopt);
  }
}

// Unit normal completing the frame positively: the covector
// n_l = det[J_1, ..., J_{d-1}, e_l] raised by g^{-1}, so det[J, N] > 0.
Vec unit_normal(const Mat& g, const Mat& j) {
  const int d = static_cast<int>(g.rows());
  Vec n(d);
  Mat a(d, d);
  a.leftCols(d - 1) = j;
  for (int l = 0; l < d; ++l) {
    a.col(d - 1) = unit_vec(d, l);
    n(l) = a.determinant();
  }
  Vec up = g.ldlt().solve(n);
  const double norm2 = n.dot(up);
  if (!(norm2 > 0.0)) throw GeometryError(ErrorCode::rank_deficient, "normal vanishes");
  return up / std::sqrt(norm2);
}

// Column j of result[i] is d_i d_j Sigma.
std::array<Mat, kMaxDim> second_partials(const ImmersionSpec& imm, const Vec& q, int d) {
  const int k = imm.parameter_dim();
  std::array<Mat, kMaxDim> out;
  if (imm.closed_form_frame()) {
    for (int i = 0; i < k; ++i) {
      const double h = imm.step(i);
      Vec qp = q, qm = q;
      qp(i) += h;
      qm(i) -= h;
      out[i] = (imm.frame(qp) - imm.frame(qm)) / (2.0 * h);
    }
  } else {
    const Vec p0 = imm.point(q);
    for (int i = 0; i < k; ++i) out[i] = Mat::Zero(d, k);
    for (int i = 0; i < k; ++i) {
      const double hi = imm.step(i);
      Vec qp = q, qm = q;
      qp(i) += hi;
      qm(i) -= hi;
      out[i].col(i) = (imm.point(qp) - 2.0 * p0 + imm.point(qm)) / (hi * hi);
      for (int j = i + 1; j < k; ++j) {
        const double hj = imm.step(j);
        Vec pp = q, pm = q, mp = q, mm = q;
        pp(i) += hi; pp(j) += hj;
        pm(i) += hi; pm(j) -= hj;
        mp(i) -= hi; mp(j) += hj;
        mm(i) -= hi; mm(j) -= hj;
        const Vec c = (imm.point(pp) - imm.point(pm) - imm.point(mp) + imm.point(mm)) /
                      (4.0 * hi * hj);
        out[i].col(j) = c;
        out[j].col(i) = c;
      }
    }
  }
  return out;
}

Mat first_form(const Mat& g, const Mat& j) { return j.transpose() * g * j; }

struct Split {
  Vec tangent;
  Vec tangent_ambient;
  double nu;
};

Split split_xi(const Mat& g, const Mat& j, const Vec& normal, const Vec& xi) {
  const Mat first = first_form(g, j);
  Split s;
  s.nu = inner(g, xi, normal);
  s.tangent = first.ldlt().solve(j.transpose() * g * xi);
  s.tangent_ambient = j * s.tangent;
  return s;
}

double orientation_sign(NormalOrientation o) {
  return o == NormalOrientation::positive ? 1.0 : -1.0;
}

}  // namespace

void validate_immersion(const MetricChart& chart, const ImmersionSpec& imm, int samples) {
  const int k = imm.parameter_dim();
  if (k != chart.dim() - 1) {
    throw GeometryError(ErrorCode::invalid_argument,
                        "immersion parameter dimension must be chart dimension - 1");
  }
  const Grid grid = parameter_grid(imm, std::vector<int>(k, samples), 0.0);
  for (const Vec& q : grid) {
    const Vec p = imm.point(q);
    const Mat j = imm.frame(q);
    require_rank(j, q);
    const Mat first = first_form(metric_at(chart, p), j);
    Eigen::SelfAdjointEigenSolver<Mat> es(first);
    if (!(es.eigenvalues().minCoeff() > 0.0)) {
      throw GeometryError(ErrorCode::rank_deficient, "induced metric is not positive definite");
    }
  }
}

Grid parameter_grid(const ImmersionSpec& imm, const std::vector<int>& counts, double inset) {
  const int k = imm.parameter_dim();
  if (static_cast<int>(counts.size()) != k) {
    throw GeometryError(ErrorCode::invalid_argument, "grid counts must match parameter dimension");
  }
  std::vector<double> lo(k), hi(k);
  for (int i = 0; i < k; ++i) {
    const Interval a = imm.parameters().sampling_axis(i);
    const double pad = inset * a.width();
    lo[i] = a.lo + pad;
    hi[i] = a.hi - pad;
  }
  return tensor_grid(lo, hi, counts);
}

FundamentalForms fundamental_forms_at(const MetricChart& chart, const ImmersionSpec& imm,
                                      const Vec& q, NormalOrientation orientation) {
  const int d = chart.dim();
  const int k = imm.parameter_dim();
  if (k != d - 1 || q.size() != k) {
    throw GeometryError(ErrorCode::invalid_argument, "parameter dimension mismatch");
  }
  FundamentalForms f;
  f.q = q;
  f.point = imm.point(q);
  const Mat g = metric_at(chart, f.point);
  f.frame = imm.frame(q);
  require_rank(f.frame, q);
  f.first = first_form(g, f.frame);
  f.normal = orientation_sign(orientation) * unit_normal(g, f.frame);

  const auto dd = second_partials(imm, q, d);
  const Christoffel gamma = connection_unchecked(chart, f.point);
  f.second = Mat(k, k);
  for (int i = 0; i < k; ++i) {
    for (int j = i; j < k; ++j) {
      const Vec acc = dd[i].col(j) + gamma.contract(f.frame.col(i), f.frame.col(j));
      const double a = inner(g, acc, f.normal);
      if (j == i) {
        f.second(i, i) = a;
      } else {
        // Mixed partials come out of two stencils; average the pair.
        const Vec acc2 = dd[j].col(i) + gamma.contract(f.frame.col(j), f.frame.col(i));
        const double b = 0.5 * (a + inner(g, acc2, f.normal));
        f.second(i, j) = b;
        f.second(j, i) = b;
      }
    }
  }
  f.shape = f.first.ldlt().solve(f.second);
  return f;
}

std::vector<double> shape_eigenvalues(const FundamentalForms& forms) {
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> es(forms.second, forms.first,
                                                    Eigen::EigenvaluesOnly);
  std::vector<double> out(es.eigenvalues().data(),
                          es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(out.begin(), out.end());
  return out;
}

UmbilicityReport umbilicity_report(const MetricChart& chart, const ImmersionSpec& imm,
                                   const Grid& grid, double tol, NormalOrientation orientation,
                                   Execution ex) {
  UmbilicityReport r;
  r.grid = grid;
  r.tolerance = tol;
  r.orientation = orientation;
  r.eigenvalues = map_grid<std::vector<double>>(
      grid.size(),
      [&](std::size_t i) {
        return shape_eigenvalues(fundamental_forms_at(chart, imm, grid[i], orientation));
      },
      ex);
  r.mean_eigenvalue.resize(grid.size());
  r.spread.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& e = r.eigenvalues[i];
    double sum = 0.0;
    for (double v : e) {
      sum += v;
      r.max_abs_eigenvalue = std::max(r.max_abs_eigenvalue, std::abs(v));
    }
    r.mean_eigenvalue[i] = sum / static_cast<double>(e.size());
    r.spread[i] = e.back() - e.front();
    if (r.spread[i] > r.spread[r.worst_index]) r.worst_index = i;
  }
  if (!grid.empty()) r.deviation = std::max(0.0, r.spread[r.worst_index]);
  r.totally_umbilical = r.deviation < tol;
  r.totally_geodesic = r.totally_umbilical && r.max_abs_eigenvalue < tol;
  return r;
}

XiSplit decompose_xi_at(const MetricChart& chart, const ImmersionSpec& imm, const Vec& q,
                        NormalOrientation orientation, const VectorFieldSpec& field) {
  const Vec p = imm.point(q);
  const Mat g = metric_at(chart, p);
  const Mat j = imm.frame(q);
  require_rank(j, q);
  const Vec n = orientation_sign(orientation) * unit_normal(g, j);
  const Split s = split_xi(g, j, n, field.value(chart, p));
  return XiSplit{q, s.tangent, s.tangent_ambient, s.nu};
}

namespace {

struct LocalData {
  Mat first;
  Split split;
};

LocalData local_data(const MetricChart& chart, const ImmersionSpec& imm, const Vec& q,
                     const Vec& xi) {
  const Vec p = imm.point(q);
  const Mat g = metric_at(chart, p);
  const Mat j = imm.frame(q);
  const Vec n = unit_normal(g, j);
  return LocalData{first_form(g, j), split_xi(g, j, n, xi)};
}

}  // namespace

Lemma1Residual lemma1_residual(const MetricChart& chart, const ImmersionSpec& imm, const Vec& q) {
  const int k = imm.parameter_dim();
  const FundamentalForms f = fundamental_forms_at(chart, imm, q);
  const Vec xi = xi_components(chart);
  const LocalData here = local_data(chart, imm, q, xi);

  // Parameter derivatives of I, T and nu.
  std::array<Mat, kMaxDim> d_first;
  Mat d_tangent(k, k);  // column b = d_b T
  Vec d_nu(k);
  for (int b = 0; b < k; ++b) {
    const double h = imm.step(b);
    Vec qp = q, qm = q;
    qp(b) += h;
    qm(b) -= h;
    const LocalData lp = local_data(chart, imm, qp, xi);
    const LocalData lm = local_data(chart, imm, qm, xi);
    d_first[b] = (lp.first - lm.first) / (2.0 * h);
    d_tangent.col(b) = (lp.split.tangent - lm.split.tangent) / (2.0 * h);
    d_nu(b) = (lp.split.nu - lm.split.nu) / (2.0 * h);
  }

  // Intrinsic Christoffel symbols of I and nabla_{e_b} T.
  const Mat inv = here.first.inverse();
  const Vec& t = here.split.tangent;
  Mat cov = d_tangent;
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      for (int c = 0; c < k; ++c) {
        double gamma = 0.0;
        for (int e = 0; e < k; ++e) {
          gamma += 0.5 * inv(a, e) *
                   (d_first[b](e, c) + d_first[c](e, b) - d_first[e](b, c));
        }
        cov(a, b) += gamma * t(c);
      }
    }
  }
  const Mat resid1 = cov - here.split.nu * f.shape;  // column b: (nabla T - nu S) e_b
  const Vec resid2 = d_nu + f.second * t;             // entry b: e_b(nu) + h(e_b, T)

  // Orthonormal frame of I: columns of L^{-T} with I = L L^T.
  const Eigen::LLT<Mat> llt(here.first);
  const Mat frame = llt.matrixU().solve(Mat::Identity(k, k));
  Lemma1Residual r;
  for (int c = 0; c < k; ++c) {
    const Vec x = frame.col(c);
    const Vec v = resid1 * x;
    r.r1 = std::max(r.r1, std::sqrt(std::max(0.0, inner(here.first, v, v))));
    r.r2 = std::max(r.r2, std::abs(resid2.dot(x)));
  }
  return r;
}

double nu_derivative_along_tangent(const MetricChart& chart, const ImmersionSpec& imm,
                                   const Vec& q) {
  const int k = imm.parameter_dim();
  const Vec xi = xi_components(chart);
  const LocalData here = local_data(chart, imm, q, xi);
  double out = 0.0;
  for (int b = 0; b < k; ++b) {
    const double h = imm.step(b);
    Vec qp = q, qm = q;
    qp(b) += h;
    qm(b) -= h;
    const double dnu =
        (local_data(chart, imm, qp, xi).split.nu - local_data(chart, imm, qm, xi).split.nu) /
        (2.0 * h);
    out += here.split.tangent(b) * dnu;
  }
  return out;
}

VectorFieldSpec extended_tangent_field(const MetricChart& chart, const ImmersionSpec& imm) {
  const Vec xi = xi_components(chart);
  const int k = imm.parameter_dim();
  Vec center(k);
  for (int i = 0; i < k; ++i) center(i) = imm.parameters().sampling_axis(i).midpoint();

  // Solve Sigma(q) + t xi = P by Newton, then carry T(q) along the flow.
  // xi has constant components on the supported charts, so the flow is a
  // translation and the pushforward leaves components unchanged.
  auto fn = [chart, imm, xi, center, k](const Vec& p) -> Vec {
    Vec q = center;
    double t = 0.0;
    const int d = static_cast<int>(p.size());
    for (int it = 0; it < 60; ++it) {
      const Vec res = imm.point(q) + t * xi - p;
      Mat jac(d, d);
      jac.leftCols(k) = imm.frame(q);
      jac.col(k) = xi;
      const Vec delta = jac.partialPivLu().solve(res);
      q -= delta.head(k);
      t -= delta(k);
      if (delta.norm() < 1e-14 * (1.0 + q.norm() + std::abs(t))) break;
    }
    const Vec s = imm.point(q);
    const Mat g = chart.metric_unchecked(s);
    const Mat j = imm.frame(q);
    return split_xi(g, j, unit_normal(g, j), xi).tangent_ambient;
  };
  return VectorFieldSpec::sampled(fn, "extended-T");
}

KillingReport extended_T_killing_defect(const MetricChart& chart, const ImmersionSpec& imm,
                                        const Grid& grid, double tol, Execution ex) {
  xi_components(chart);  // throws for charts without xi
  const int k = imm.parameter_dim();
  const Grid surface = parameter_grid(imm, std::vector<int>(k, 5));
  const UmbilicityReport u =
      umbilicity_report(chart, imm, surface, 1e-8, NormalOrientation::positive, ex);
  if (!u.totally_geodesic) {
    throw GeometryError(ErrorCode::not_totally_geodesic,
                        "surface is not totally geodesic (max |eigenvalue| " +
                            std::to_string(u.max_abs_eigenvalue) + ")");
  }
  for (const Vec& q : surface) {
    const XiSplit s = decompose_xi_at(chart, imm, q);
    if (std::abs(s.nu) < 1e-8) {
      throw GeometryError(ErrorCode::tangent_to_xi, "xi is tangent to the surface",
                          std::optional<double>(q(0)));
    }
  }
  return killing_defect(chart, extended_tangent_field(chart, imm), grid, tol, ex);
}

}  // namespace umbilic

#ifndef PDSP_GEOMETRY_HPP
#define PDSP_GEOMETRY_HPP

#include <optional>
#include <vector>

#include "pdsp/instance.hpp"

namespace pdsp {

/// Matrix of ||v_i - v_j||^r. Requires 0 < r <= 2.
DenseMatrix build_distance_matrix(const PointSet& points, double r);

/// Result of testing <Qz,z> <= 0 on the sum-zero subspace.
struct CndCertificate {
  double max_projected_eigenvalue = 0.0;
  double tolerance = 0.0;
  bool is_cnd = true;
  /// Sum-zero unit vector with <Qz,z> > tolerance; only set when !is_cnd.
  std::optional<std::vector<double>> witness;
};

/// 1e-7 * n * max|Q|.
double default_cnd_tolerance(const DenseMatrix& q);

/// Largest eigenvalue of PQP with P = I - 11^T/n.
CndCertificate certify_cnd(const DenseMatrix& q, double tolerance);
CndCertificate certify_cnd(const DenseMatrix& q);

}  // namespace pdsp

#endif  // PDSP_GEOMETRY_HPP

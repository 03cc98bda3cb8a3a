#include "pdsp/geometry.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "pdsp/errors.hpp"
#include "pdsp/tolerances.hpp"

namespace pdsp {

DenseMatrix build_distance_matrix(const PointSet& points, double r) {
  if (!(r > 0.0 && r <= 2.0)) {
    throw ArgumentError("distance exponent r must lie in (0, 2], got " + std::to_string(r));
  }
  const std::size_t n = points.size();
  DenseMatrix q(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto a = points.point(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto b = points.point(j);
      double sq = 0.0;
      for (std::size_t d = 0; d < a.size(); ++d) {
        const double diff = a[d] - b[d];
        sq += diff * diff;
      }
      // r = 2 keeps the exact squared sum; pow(sqrt(.), 2) would round twice.
      const double v = r == 2.0 ? sq : (r == 1.0 ? std::sqrt(sq) : std::pow(sq, 0.5 * r));
      q(i, j) = v;
      q(j, i) = v;
    }
  }
  return q;
}

double default_cnd_tolerance(const DenseMatrix& q) {
  return tol::kCndScale * static_cast<double>(q.size()) * q.max_abs();
}

CndCertificate certify_cnd(const DenseMatrix& q) {
  return certify_cnd(q, default_cnd_tolerance(q));
}

CndCertificate certify_cnd(const DenseMatrix& q, double tolerance) {
  CndCertificate cert;
  cert.tolerance = tolerance;
  const auto n = static_cast<Eigen::Index>(q.size());
  if (n <= 1) {
    cert.max_projected_eigenvalue = 0.0;
    cert.is_cnd = 0.0 <= tolerance;
    return cert;
  }

  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = q(i, j);
  }
  // P Q P with P = I - 11^T / n, applied as double centering.
  const Eigen::VectorXd row_mean = m.rowwise().mean();
  const Eigen::RowVectorXd col_mean = m.colwise().mean();
  const double all_mean = m.mean();
  m.colwise() -= row_mean;
  m.rowwise() -= col_mean;
  m.array() += all_mean;
  m = 0.5 * (m + m.transpose());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw EngineFault("symmetric eigen-decomposition failed");
  }
  const double top = solver.eigenvalues()(n - 1);
  cert.max_projected_eigenvalue = top;
  cert.is_cnd = top <= tolerance;
  if (!cert.is_cnd) {
    Eigen::VectorXd z = solver.eigenvectors().col(n - 1);
    z.array() -= z.mean();
    z.normalize();
    cert.witness = std::vector<double>(z.data(), z.data() + n);
  }
  return cert;
}

}  // namespace pdsp

#pragma once

#include <Eigen/Dense>
#include <string_view>

namespace covcompose {

/// Real symmetric matrix. Construction symmetrises the input as (M + M^T)/2 and
/// rejects non-finite entries or asymmetry above 1e-10 relative.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(const Eigen::MatrixXd& m);

  static SymMatrix identity(Eigen::Index p);
  static SymMatrix diagonal(const Eigen::VectorXd& d);
  /// Averages m with its transpose without the asymmetry check. For products
  /// that are symmetric in exact arithmetic but carry rounding error.
  static SymMatrix symmetrize(const Eigen::MatrixXd& m);

  [[nodiscard]] Eigen::Index dim() const noexcept { return m_.rows(); }
  [[nodiscard]] const Eigen::MatrixXd& matrix() const noexcept { return m_; }
  [[nodiscard]] double trace() const { return m_.trace(); }

 private:
  Eigen::MatrixXd m_;
};

/// Eigenvalues in descending order; eigenvector columns have their
/// largest-magnitude component positive.
struct EigenPair {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

/// Throws Error(ConvergenceFailure) if the solver does not converge.
EigenPair sym_eigen(const SymMatrix& m);

/// Symmetric positive-definite matrix with its eigendecomposition cached.
class SpdMatrix {
 public:
  /// Throws Error(NotPositiveDefinite) unless every eigenvalue is > 0.
  explicit SpdMatrix(SymMatrix m);
  SpdMatrix(SymMatrix m, EigenPair eigen);

  [[nodiscard]] Eigen::Index dim() const noexcept { return sym_.dim(); }
  [[nodiscard]] const Eigen::MatrixXd& matrix() const noexcept { return sym_.matrix(); }
  [[nodiscard]] const SymMatrix& sym() const noexcept { return sym_; }
  [[nodiscard]] const EigenPair& eigen() const noexcept { return eigen_; }

 private:
  SymMatrix sym_;
  EigenPair eigen_;
};

/// Principal logarithm U diag(log l) U^T.
SymMatrix spd_log(const SpdMatrix& p);
/// Matrix exponential of a symmetric matrix.
SpdMatrix spd_exp(const SymMatrix& s);
/// P^(-1/2).
Eigen::MatrixXd spd_inv_sqrt(const SpdMatrix& p);

double frobenius(const Eigen::MatrixXd& m);

/// ||P - Q||_F
double dist_euclidean(const SpdMatrix& p, const SpdMatrix& q);
/// ||log P - log Q||_F
double dist_logeuclidean(const SpdMatrix& p, const SpdMatrix& q);
/// sqrt(sum log^2 l_i) over eigenvalues of P^(-1/2) Q P^(-1/2).
double dist_affineinvariant(const SpdMatrix& p, const SpdMatrix& q);
/// ||log(P^(-1/2) Q P^(-1/2))||_F, the matrix-logarithm form of the same distance.
double dist_affineinvariant_logform(const SpdMatrix& p, const SpdMatrix& q);

/// Returns M + eps I with eps = max(1e-6 trace/p, 1e-10).
/// Throws Error(NotNearlyPSD) if M has an eigenvalue below -(1e-8 trace/p + 1e-11).
SpdMatrix regularize(const SymMatrix& m);

enum class Metric { Euclidean, LogEuclidean, AffineInvariant };

std::string_view metric_name(Metric metric) noexcept;
/// Accepts euclidean|logeuclidean|affine (and E|L|A).
Metric parse_metric(std::string_view text);

double distance(Metric metric, const SpdMatrix& p, const SpdMatrix& q);

/// A fixed descriptor with the per-metric factors precomputed, so repeated
/// distances against it cost one small eigensolve at most.
class ReferenceDescriptor {
 public:
  ReferenceDescriptor(Metric metric, SpdMatrix ref);

  [[nodiscard]] const SpdMatrix& matrix() const noexcept { return ref_; }

  /// `log_x` must be spd_log(x) when the metric is LogEuclidean; ignored otherwise.
  [[nodiscard]] double distance_to(const SpdMatrix& x, const Eigen::MatrixXd& log_x) const;

 private:
  Metric metric_;
  SpdMatrix ref_;
  Eigen::MatrixXd log_;
  Eigen::MatrixXd inv_sqrt_;
};

}  // namespace covcompose

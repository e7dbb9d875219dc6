#include "covcompose/spd.hpp"

#include <cmath>
#include <string>

#include "covcompose/error.hpp"

namespace covcompose {
namespace {

Eigen::MatrixXd symmetrised(const Eigen::MatrixXd& m) { return 0.5 * (m + m.transpose()); }

Eigen::MatrixXd apply_spectral(const EigenPair& eig, double (*fn)(double)) {
  const Eigen::VectorXd mapped = eig.values.unaryExpr(fn);
  return symmetrised(eig.vectors * mapped.asDiagonal() * eig.vectors.transpose());
}

void require_same_dim(const SpdMatrix& p, const SpdMatrix& q) {
  if (p.dim() != q.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "SPD matrices of dimension " +
                                                  std::to_string(p.dim()) + " and " +
                                                  std::to_string(q.dim()));
  }
}

double sum_log_squares(const Eigen::VectorXd& values) {
  double acc = 0.0;
  for (const double v : values) {
    if (!(v > 0.0)) {
      throw Error(ErrorCode::NotPositiveDefinite, "non-positive generalized eigenvalue");
    }
    const double lg = std::log(v);
    acc += lg * lg;
  }
  return std::sqrt(acc);
}

double affine_from_inv_sqrt(const Eigen::MatrixXd& inv_sqrt_p, const Eigen::MatrixXd& q) {
  const SymMatrix similar = SymMatrix::symmetrize(inv_sqrt_p * q * inv_sqrt_p);
  return sum_log_squares(sym_eigen(similar).values);
}

// Lexicographic order on entries; used to evaluate d_A(P, Q) and d_A(Q, P)
// through the same arithmetic so the result is exactly symmetric.
bool entries_less(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    if (a.data()[k] != b.data()[k]) return a.data()[k] < b.data()[k];
  }
  return false;
}

double inv_sqrt_scalar(double v) { return 1.0 / std::sqrt(v); }
double log_scalar(double v) { return std::log(v); }
double exp_scalar(double v) { return std::exp(v); }

}  // namespace

namespace {

void require_square_finite(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorCode::DimensionMismatch, "symmetric matrix must be square and non-empty");
  }
  if (!m.allFinite()) throw Error(ErrorCode::BadValue, "matrix has non-finite entries");
}

}  // namespace

SymMatrix::SymMatrix(const Eigen::MatrixXd& m) {
  require_square_finite(m);
  const double scale = m.cwiseAbs().maxCoeff();
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10 * scale) {
    throw Error(ErrorCode::BadValue, "matrix is not symmetric");
  }
  m_ = symmetrised(m);
}

SymMatrix SymMatrix::symmetrize(const Eigen::MatrixXd& m) {
  require_square_finite(m);
  SymMatrix out;
  out.m_ = symmetrised(m);
  return out;
}

SymMatrix SymMatrix::identity(Eigen::Index p) {
  return SymMatrix(Eigen::MatrixXd::Identity(p, p));
}

SymMatrix SymMatrix::diagonal(const Eigen::VectorXd& d) {
  return SymMatrix(Eigen::MatrixXd(d.asDiagonal()));
}

EigenPair sym_eigen(const SymMatrix& m) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.matrix(), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::ConvergenceFailure, "symmetric eigensolver did not converge");
  }
  const Eigen::Index p = m.dim();
  EigenPair out{Eigen::VectorXd(p), Eigen::MatrixXd(p, p)};
  // Solver order is ascending.
  for (Eigen::Index k = 0; k < p; ++k) {
    out.values(k) = solver.eigenvalues()(p - 1 - k);
    Eigen::VectorXd v = solver.eigenvectors().col(p - 1 - k);
    Eigen::Index pivot = 0;
    v.cwiseAbs().maxCoeff(&pivot);
    if (v(pivot) < 0.0) v = -v;
    out.vectors.col(k) = v;
  }
  return out;
}

SpdMatrix::SpdMatrix(SymMatrix m) : SpdMatrix(m, sym_eigen(m)) {}

SpdMatrix::SpdMatrix(SymMatrix m, EigenPair eigen) : sym_(std::move(m)), eigen_(std::move(eigen)) {
  if (!(eigen_.values.minCoeff() > 0.0)) {
    throw Error(ErrorCode::NotPositiveDefinite,
                "smallest eigenvalue " + std::to_string(eigen_.values.minCoeff()) + " <= 0");
  }
}

SymMatrix spd_log(const SpdMatrix& p) {
  return SymMatrix::symmetrize(apply_spectral(p.eigen(), log_scalar));
}

SpdMatrix spd_exp(const SymMatrix& s) {
  const EigenPair eig = sym_eigen(s);
  return SpdMatrix(SymMatrix::symmetrize(apply_spectral(eig, exp_scalar)));
}

Eigen::MatrixXd spd_inv_sqrt(const SpdMatrix& p) { return apply_spectral(p.eigen(), inv_sqrt_scalar); }

double frobenius(const Eigen::MatrixXd& m) { return m.norm(); }

double dist_euclidean(const SpdMatrix& p, const SpdMatrix& q) {
  require_same_dim(p, q);
  return frobenius(p.matrix() - q.matrix());
}

double dist_logeuclidean(const SpdMatrix& p, const SpdMatrix& q) {
  require_same_dim(p, q);
  return frobenius(spd_log(p).matrix() - spd_log(q).matrix());
}

double dist_affineinvariant(const SpdMatrix& p, const SpdMatrix& q) {
  require_same_dim(p, q);
  if (entries_less(q.matrix(), p.matrix())) return affine_from_inv_sqrt(spd_inv_sqrt(q), p.matrix());
  return affine_from_inv_sqrt(spd_inv_sqrt(p), q.matrix());
}

double dist_affineinvariant_logform(const SpdMatrix& p, const SpdMatrix& q) {
  require_same_dim(p, q);
  const Eigen::MatrixXd w = spd_inv_sqrt(p);
  const SpdMatrix similar{SymMatrix::symmetrize(w * q.matrix() * w)};
  return frobenius(spd_log(similar).matrix());
}

SpdMatrix regularize(const SymMatrix& m) {
  const auto p = static_cast<double>(m.dim());
  const double mean_diag = m.trace() / p;
  EigenPair eig = sym_eigen(m);
  const double floor = -(1e-8 * std::max(mean_diag, 0.0) + 1e-11);
  if (mean_diag < floor || eig.values.minCoeff() < floor) {
    throw Error(ErrorCode::NotNearlyPSD,
                "smallest eigenvalue " + std::to_string(eig.values.minCoeff()) +
                    " with mean diagonal " + std::to_string(mean_diag));
  }
  const double eps = std::max(1e-6 * mean_diag, 1e-10);
  Eigen::MatrixXd shifted = m.matrix();
  shifted.diagonal().array() += eps;
  eig.values.array() += eps;
  return SpdMatrix(SymMatrix(shifted), std::move(eig));
}

std::string_view metric_name(Metric metric) noexcept {
  switch (metric) {
    case Metric::Euclidean: return "euclidean";
    case Metric::LogEuclidean: return "logeuclidean";
    case Metric::AffineInvariant: return "affine";
  }
  return "?";
}

Metric parse_metric(std::string_view text) {
  if (text == "euclidean" || text == "E") return Metric::Euclidean;
  if (text == "logeuclidean" || text == "L") return Metric::LogEuclidean;
  if (text == "affine" || text == "A") return Metric::AffineInvariant;
  throw Error(ErrorCode::BadValue, "unknown metric '" + std::string(text) + "'");
}

double distance(Metric metric, const SpdMatrix& p, const SpdMatrix& q) {
  switch (metric) {
    case Metric::Euclidean: return dist_euclidean(p, q);
    case Metric::LogEuclidean: return dist_logeuclidean(p, q);
    case Metric::AffineInvariant: return dist_affineinvariant(p, q);
  }
  return 0.0;
}

ReferenceDescriptor::ReferenceDescriptor(Metric metric, SpdMatrix ref)
    : metric_(metric), ref_(std::move(ref)) {
  if (metric_ == Metric::LogEuclidean) log_ = spd_log(ref_).matrix();
  if (metric_ == Metric::AffineInvariant) inv_sqrt_ = spd_inv_sqrt(ref_);
}

double ReferenceDescriptor::distance_to(const SpdMatrix& x, const Eigen::MatrixXd& log_x) const {
  require_same_dim(ref_, x);
  switch (metric_) {
    case Metric::Euclidean: return frobenius(x.matrix() - ref_.matrix());
    case Metric::LogEuclidean: return frobenius(log_x - log_);
    case Metric::AffineInvariant: return affine_from_inv_sqrt(inv_sqrt_, x.matrix());
  }
  return 0.0;
}

}  // namespace covcompose

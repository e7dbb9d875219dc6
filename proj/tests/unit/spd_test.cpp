#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "covcompose/error.hpp"
#include "covcompose/spd.hpp"
#include "test_support.hpp"

namespace covcompose {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kE = std::numbers::e;

SpdMatrix diag_spd(std::initializer_list<double> d) {
  VectorXd v(static_cast<Eigen::Index>(d.size()));
  Eigen::Index k = 0;
  for (const double x : d) v(k++) = x;
  return SpdMatrix(SymMatrix::diagonal(v));
}

double rel_frobenius(const MatrixXd& a, const MatrixXd& b) { return (a - b).norm() / b.norm(); }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::IoError;
}

TEST(SymMatrix, SymmetrisesAndRejectsGarbage) {
  MatrixXd m(2, 2);
  m << 1.0, 2.0, 2.0 + 1e-14, 3.0;
  const SymMatrix s(m);
  EXPECT_EQ(s.matrix()(0, 1), s.matrix()(1, 0));
  m(1, 0) = 5.0;
  EXPECT_EQ(code_of([&] { SymMatrix{m}; }), ErrorCode::BadValue);
  m(1, 0) = std::nan("");
  EXPECT_EQ(code_of([&] { SymMatrix{m}; }), ErrorCode::BadValue);
}

TEST(SymMatrix, SymmetrizeAveragesWithoutCheck) {
  MatrixXd m(2, 2);
  m << 1.0, 2.0, 4.0, 3.0;
  EXPECT_EQ(SymMatrix::symmetrize(m).matrix()(1, 0), 3.0);
  EXPECT_EQ(SymMatrix::symmetrize(m).matrix()(0, 1), 3.0);
  m(0, 0) = std::nan("");
  EXPECT_EQ(code_of([&] { SymMatrix::symmetrize(m); }), ErrorCode::BadValue);
}

TEST(SymEigen, IdentityAndDiagonal) {
  const EigenPair id = sym_eigen(SymMatrix::identity(3));
  EXPECT_TRUE(id.values.isApprox(VectorXd::Ones(3)));

  const EigenPair d = sym_eigen(SymMatrix::diagonal(Eigen::Vector2d(1.0, 4.0)));
  EXPECT_DOUBLE_EQ(d.values(0), 4.0);
  EXPECT_DOUBLE_EQ(d.values(1), 1.0);
  EXPECT_NEAR(std::abs(d.vectors(1, 0)), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(d.vectors(0, 1)), 1.0, 1e-15);
}

TEST(SymEigen, TwoByTwoCharacteristicPolynomial) {
  MatrixXd m(2, 2);
  m << 2, 1, 1, 2;
  const EigenPair e = sym_eigen(SymMatrix(m));
  EXPECT_NEAR(e.values(0), 3.0, 1e-14);
  EXPECT_NEAR(e.values(1), 1.0, 1e-14);
}

TEST(SymEigen, MatchesJacobiOracleAndReconstructs) {
  Rng rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const int p = 2 + static_cast<int>(rng.uniform_index(15));
    const MatrixXd m = testing::random_spd(p, rng) - 1.5 * MatrixXd::Identity(p, p);
    const EigenPair e = sym_eigen(SymMatrix(m));
    const VectorXd oracle = testing::jacobi_eigenvalues(m);
    EXPECT_LE((e.values - oracle).norm(), 1e-10 * (1 + oracle.norm()));
    for (Eigen::Index k = 1; k < p; ++k) EXPECT_GE(e.values(k - 1), e.values(k));
    const MatrixXd rebuilt = e.vectors * e.values.asDiagonal() * e.vectors.transpose();
    EXPECT_LE(rel_frobenius(rebuilt, m), 1e-9);
    EXPECT_LE((e.vectors.transpose() * e.vectors - MatrixXd::Identity(p, p)).norm(), 1e-10);
    for (Eigen::Index k = 0; k < p; ++k) {
      Eigen::Index pivot = 0;
      e.vectors.col(k).cwiseAbs().maxCoeff(&pivot);
      EXPECT_GT(e.vectors(pivot, k), 0.0);
    }
  }
}

TEST(SymEigen, Deterministic) {
  Rng rng(4);
  const SymMatrix m(testing::random_spd(7, rng));
  const EigenPair a = sym_eigen(m);
  const EigenPair b = sym_eigen(m);
  EXPECT_EQ(a.values, b.values);
  EXPECT_EQ(a.vectors, b.vectors);
}

TEST(SpdMatrix, RejectsIndefinite) {
  EXPECT_EQ(code_of([] { SpdMatrix{SymMatrix::diagonal(Eigen::Vector2d(1.0, 0.0))}; }),
            ErrorCode::NotPositiveDefinite);
  EXPECT_EQ(code_of([] { SpdMatrix{SymMatrix::diagonal(Eigen::Vector2d(1.0, -2.0))}; }),
            ErrorCode::NotPositiveDefinite);
}

TEST(SpdLog, ClosedForms) {
  EXPECT_EQ(spd_log(SpdMatrix(SymMatrix::identity(3))).matrix().cwiseAbs().maxCoeff(), 0.0);
  const MatrixXd l = spd_log(diag_spd({kE, kE * kE})).matrix();
  EXPECT_NEAR(l(0, 0), 1.0, 1e-15);
  EXPECT_NEAR(l(1, 1), 2.0, 1e-15);
  EXPECT_NEAR(l(0, 1), 0.0, 1e-15);
  const MatrixXd l2 = spd_log(diag_spd({kE, kE})).matrix();
  EXPECT_LE((l2 - MatrixXd::Identity(2, 2)).norm(), 1e-15);
}

TEST(SpdLog, ExpInvertsLog) {
  Rng rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const SpdMatrix p(SymMatrix(testing::random_spd(2 + static_cast<int>(rng.uniform_index(7)), rng)));
    EXPECT_LE(rel_frobenius(spd_exp(spd_log(p)).matrix(), p.matrix()), 1e-8);
  }
}

TEST(Distances, ClosedForms) {
  const SpdMatrix id = diag_spd({1, 1});
  EXPECT_EQ(dist_euclidean(id, id), 0.0);
  EXPECT_NEAR(dist_euclidean(id, diag_spd({2, 2})), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(dist_euclidean(id, diag_spd({4, 1})), 3.0, 1e-15);

  EXPECT_EQ(dist_logeuclidean(id, id), 0.0);
  EXPECT_NEAR(dist_logeuclidean(id, diag_spd({kE, kE})), std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(dist_logeuclidean(diag_spd({kE * kE, 1}), id), 2.0, 1e-14);

  EXPECT_NEAR(dist_affineinvariant(id, id), 0.0, 1e-15);
  EXPECT_NEAR(dist_affineinvariant(id, diag_spd({kE * kE, 1})), 2.0, 1e-14);
}

TEST(Distances, DimensionMismatch) {
  const SpdMatrix a = diag_spd({1, 1});
  const SpdMatrix b = diag_spd({1, 1, 1});
  for (const Metric m : {Metric::Euclidean, Metric::LogEuclidean, Metric::AffineInvariant}) {
    EXPECT_EQ(code_of([&] { distance(m, a, b); }), ErrorCode::DimensionMismatch);
  }
}

TEST(Distances, AffineFormsAgreeWithGeneralizedEigenvalues) {
  Rng rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const int p = 2 + static_cast<int>(rng.uniform_index(6));
    const SpdMatrix a(SymMatrix(testing::random_spd(p, rng)));
    const SpdMatrix b(SymMatrix(testing::random_spd(p, rng)));
    // Independent route: eigenvalues of P^-1 Q from the generalized problem Q v = l P v.
    const Eigen::GeneralizedSelfAdjointEigenSolver<MatrixXd> gen(b.matrix(), a.matrix());
    double acc = 0;
    for (const double l : gen.eigenvalues()) acc += std::log(l) * std::log(l);
    const double eig_form = dist_affineinvariant(a, b);
    EXPECT_NEAR(eig_form, dist_affineinvariant_logform(a, b), 1e-9);
    EXPECT_NEAR(eig_form, std::sqrt(acc), 1e-9 * (1 + eig_form));
  }
}

TEST(Distances, AffineHandlesIllConditionedOperands) {
  // A flat region regularises to ~1e-10 I; its inverse square root is ~1e5 and
  // the product W Q W loses exact symmetry to rounding.
  Rng rng(33);
  for (int trial = 0; trial < 50; ++trial) {
    const int p = 3 + static_cast<int>(rng.uniform_index(5));
    VectorXd d = VectorXd::Zero(p);
    d(0) = 1e-3 * rng.uniform01();
    const SpdMatrix flat = regularize(SymMatrix(testing::random_spd(p, rng) * 1e-12 + MatrixXd(d.asDiagonal())));
    const SpdMatrix busy = regularize(SymMatrix(1e4 * testing::random_spd(p, rng)));
    const Eigen::GeneralizedSelfAdjointEigenSolver<MatrixXd> gen(busy.matrix(), flat.matrix());
    double acc = 0;
    for (const double l : gen.eigenvalues()) acc += std::log(l) * std::log(l);
    const double d_a = dist_affineinvariant(flat, busy);
    EXPECT_NEAR(d_a, std::sqrt(acc), 1e-6 * d_a);
    EXPECT_NEAR(dist_affineinvariant_logform(flat, busy), d_a, 1e-6 * d_a);
    EXPECT_EQ(dist_affineinvariant(busy, flat), d_a);
    const ReferenceDescriptor prepared(Metric::AffineInvariant, flat);
    EXPECT_NEAR(prepared.distance_to(busy, spd_log(busy).matrix()), d_a, 1e-6 * d_a);
  }
}

TEST(Distances, LogEuclideanIsEuclideanOfLogs) {
  Rng rng(32);
  for (int trial = 0; trial < 100; ++trial) {
    const SpdMatrix a(SymMatrix(testing::random_spd(5, rng)));
    const SpdMatrix b(SymMatrix(testing::random_spd(5, rng)));
    // Logs through the Jacobi-free route exp^-1 is not available, so compare
    // against logs computed from Eigen's solver directly.
    const Eigen::SelfAdjointEigenSolver<MatrixXd> ea(a.matrix());
    const Eigen::SelfAdjointEigenSolver<MatrixXd> eb(b.matrix());
    const MatrixXd la = ea.eigenvectors() * ea.eigenvalues().array().log().matrix().asDiagonal() *
                        ea.eigenvectors().transpose();
    const MatrixXd lb = eb.eigenvectors() * eb.eigenvalues().array().log().matrix().asDiagonal() *
                        eb.eigenvectors().transpose();
    EXPECT_NEAR(dist_logeuclidean(a, b), (la - lb).norm(), 1e-12 * (1 + (la - lb).norm()));
  }
}

TEST(Regularize, EpsilonRule) {
  const SpdMatrix zero = regularize(SymMatrix(MatrixXd::Zero(2, 2)));
  EXPECT_EQ(zero.matrix(), 1e-10 * MatrixXd::Identity(2, 2));
  const SpdMatrix one = regularize(SymMatrix::identity(3));
  EXPECT_EQ(one.matrix(), (1.0 + 1e-6) * MatrixXd::Identity(3, 3));
  Rng rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const MatrixXd m = testing::random_spd(6, rng);
    EXPECT_LE(rel_frobenius(regularize(SymMatrix(m)).matrix(), m), 2e-6);
  }
}

TEST(Regularize, CachedEigenvaluesMatchShiftedMatrix) {
  Rng rng(5);
  const SpdMatrix r = regularize(SymMatrix(testing::random_spd(7, rng)));
  EXPECT_LE((r.eigen().values - testing::jacobi_eigenvalues(r.matrix())).norm(), 1e-12);
}

TEST(Regularize, RejectsClearlyIndefinite) {
  EXPECT_EQ(code_of([] { regularize(SymMatrix::diagonal(Eigen::Vector2d(1.0, -0.5))); }),
            ErrorCode::NotNearlyPSD);
  // Round-off sized negativity is tolerated.
  EXPECT_NO_THROW(regularize(SymMatrix::diagonal(Eigen::Vector2d(1.0, -1e-12))));
}

TEST(ReferenceDescriptor, MatchesDirectDistances) {
  Rng rng(41);
  for (const Metric metric : {Metric::Euclidean, Metric::LogEuclidean, Metric::AffineInvariant}) {
    for (int trial = 0; trial < 30; ++trial) {
      const SpdMatrix ref(SymMatrix(testing::random_spd(7, rng)));
      const SpdMatrix x(SymMatrix(testing::random_spd(7, rng)));
      const ReferenceDescriptor prepared(metric, ref);
      const MatrixXd log_x = spd_log(x).matrix();
      const double d = distance(metric, x, ref);
      EXPECT_NEAR(prepared.distance_to(x, log_x), d, 1e-10 * (1 + d));
    }
  }
}

TEST(Metric, ParseNames) {
  EXPECT_EQ(parse_metric("euclidean"), Metric::Euclidean);
  EXPECT_EQ(parse_metric("L"), Metric::LogEuclidean);
  EXPECT_EQ(parse_metric("affine"), Metric::AffineInvariant);
  EXPECT_THROW(parse_metric("stein"), Error);
}

}  // namespace
}  // namespace covcompose

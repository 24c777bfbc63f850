#include <gtest/gtest.h>

#include "bw/clifford.hpp"
#include "bw/tensor.hpp"

using namespace bw;

namespace {

const GammaBasis& basis() {
  static const GammaBasis b = build_gamma_basis();
  return b;
}

SpinMatrix anticommutator(const SpinMatrix& a, const SpinMatrix& b) { return a * b + b * a; }

ExactComplex ex(int re, int im = 0) { return {Rational(re), Rational(im)}; }

}  // namespace

TEST(ExactComplex, FieldOperations) {
  const ExactComplex a{Rational(1, 2), Rational(-3, 4)};
  const ExactComplex b{Rational(2), Rational(5)};
  EXPECT_EQ((a * b) / b, a);
  EXPECT_EQ(a - a, ExactComplex(0));
  EXPECT_EQ(ExactComplex::i() * ExactComplex::i(), ExactComplex(-1));
  EXPECT_EQ(a.conj().im(), Rational(3, 4));
  EXPECT_EQ(a.norm2(), Rational(13, 16));
  EXPECT_THROW(a / ExactComplex(0), std::domain_error);
}

TEST(SpinMatrix, InverseOfSingularIsEmpty) {
  SpinMatrix m = SpinMatrix::identity();
  m(3, 3) = 0;
  EXPECT_FALSE(m.inverse().has_value());
  EXPECT_THROW((void)basis().conjugated(m), std::invalid_argument);
}

TEST(SpinMatrix, InverseRoundTrip) {
  SpinMatrix m = basis().gamma[0] + ExactComplex(2) * basis().gamma[2] + SpinMatrix::identity() * ex(0, 1);
  const auto inv = m.inverse();
  ASSERT_TRUE(inv.has_value());
  EXPECT_EQ(m * *inv, SpinMatrix::identity());
}

TEST(GammaBasis, AllTenAnticommutatorsExact) {
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = mu; nu < 4; ++nu) {
      const SpinMatrix want = ExactComplex(2 * Metric::g(mu, nu)) * SpinMatrix::identity();
      EXPECT_EQ(anticommutator(basis().gamma[mu], basis().gamma[nu]), want) << mu << nu;
    }
}

TEST(GammaBasis, Gamma5Properties) {
  const SpinMatrix& g5 = basis().gamma5;
  EXPECT_EQ(g5 * g5, SpinMatrix::identity());
  EXPECT_EQ(g5.trace(), ExactComplex(0));
  for (int mu = 0; mu < 4; ++mu) EXPECT_TRUE(anticommutator(g5, basis().gamma[mu]).is_zero());
  // Dirac representation: off-diagonal identity blocks.
  SpinMatrix want;
  want(0, 2) = want(1, 3) = want(2, 0) = want(3, 1) = 1;
  EXPECT_EQ(g5, want);
}

TEST(GammaBasis, TraceIdentities) {
  const auto& g = basis().gamma;
  for (int mu = 0; mu < 4; ++mu) {
    EXPECT_EQ(g[mu].trace(), ExactComplex(0));
    EXPECT_EQ((basis().gamma5 * g[mu]).trace(), ExactComplex(0));
    for (int nu = 0; nu < 4; ++nu) {
      EXPECT_EQ((g[mu] * g[nu]).trace(), ExactComplex(4 * Metric::g(mu, nu)));
      EXPECT_EQ((basis().gamma5 * g[mu] * g[nu]).trace(), ExactComplex(0));
      for (int r = 0; r < 4; ++r)
        for (int s = 0; s < 4; ++s) {
          // tr(g5 g^m g^n g^r g^s) = -4i eps^{mnrs} with eps^{0123} = +1
          const ExactComplex got = (basis().gamma5 * g[mu] * g[nu] * g[r] * g[s]).trace();
          EXPECT_EQ(got, ex(0, -4 * levi_civita_upper(mu, nu, r, s)));
        }
    }
  }
}

TEST(GammaBasis, SigmaFromCommutator) {
  const ExactComplex half_i{0, Rational(1, 2)};
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      const auto& g = basis().gamma;
      const SpinMatrix want = half_i * (g[mu] * g[nu] - g[nu] * g[mu]);
      EXPECT_EQ(basis().sigma_upper(mu, nu), want);
      EXPECT_EQ(basis().sigma_lower(mu, nu),
                ExactComplex(Metric::g(mu, mu) * Metric::g(nu, nu)) * want);
    }
  EXPECT_TRUE(basis().sigma_upper(2, 2).is_zero());
}

TEST(GammaBasis, SixteenElementsAreLinearlyIndependent) {
  std::vector<std::vector<ExactComplex>> rows(16, std::vector<ExactComplex>(16));
  const auto e = basis().elements();
  for (std::size_t k = 0; k < 16; ++k)
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) rows[static_cast<std::size_t>(4 * r + c)][k] = e[k](r, c);
  EXPECT_TRUE(exact_nullspace(rows, 16).empty());
}

TEST(GammaBasis, FloatingCopyMatches) {
  const auto& alg = dirac_algebra();
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      const Eigen::Matrix4cd ac = alg.gamma[mu] * alg.gamma[nu] + alg.gamma[nu] * alg.gamma[mu];
      const Eigen::Matrix4cd want = 2.0 * Metric::g(mu, nu) * Eigen::Matrix4cd::Identity();
      EXPECT_LE((ac - want).cwiseAbs().maxCoeff(), 1e-12);
    }
  EXPECT_LE((alg.R * alg.R_inverse - alg.identity).cwiseAbs().maxCoeff(), 1e-12);
  const Eigen::Matrix4cd s = alg.slash({1.0, 0.0, 0.0, 0.0});
  EXPECT_LE((s - alg.gamma[0]).cwiseAbs().maxCoeff(), 0.0);
}

TEST(FindR, TenSymmetricSixAntisymmetricByBruteForce) {
  const RMatrix R = find_R(basis());
  int sym = 0, anti = 0;
  const auto e = basis().elements();
  for (std::size_t k = 0; k < 16; ++k) {
    const SpinMatrix x = e[k] * R.r;
    if (x.transpose() == x) ++sym;
    if (x.transpose() == -x) ++anti;
    EXPECT_EQ(classify_symmetry(x), expected_symmetry(k)) << k;
  }
  EXPECT_EQ(sym, 10);
  EXPECT_EQ(anti, 6);
}

TEST(FindR, UniqueUpToScale) { EXPECT_EQ(r_condition_nullity(basis()), 1u); }

TEST(FindR, NormalizationAndInverse) {
  const RMatrix R = find_R(basis());
  bool has_unit = false;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      EXPECT_LE(R.r(r, c).norm2(), Rational(1));
      has_unit = has_unit || R.r(r, c).norm2() == Rational(1);
    }
  EXPECT_TRUE(has_unit);
  EXPECT_EQ(R.r * R.r_inverse, SpinMatrix::identity());
}

TEST(FindR, DiracRepresentationMatchesGammaTwoGammaZero) {
  // In the Dirac representation the charge-conjugation-like matrix gamma^2 gamma^0
  // has the required transpose properties; R must be proportional to it.
  const SpinMatrix c = basis().gamma[2] * basis().gamma[0];
  const SpinMatrix r = find_R(basis()).r;
  ExactComplex ratio;
  bool found = false;
  for (int i = 0; i < 4 && !found; ++i)
    for (int j = 0; j < 4 && !found; ++j)
      if (!c(i, j).is_zero()) {
        ratio = r(i, j) / c(i, j);
        found = true;
      }
  ASSERT_TRUE(found);
  EXPECT_EQ(r, ratio * c);
}

TEST(FindR, CovariantUnderChangeOfRepresentation) {
  SpinMatrix s = SpinMatrix::identity();
  s(0, 1) = ex(1, 1);
  s(2, 3) = 2;
  s(3, 0) = ex(0, -1);
  const GammaBasis other = basis().conjugated(s);
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu)
      EXPECT_EQ(anticommutator(other.gamma[mu], other.gamma[nu]),
                ExactComplex(2 * Metric::g(mu, nu)) * SpinMatrix::identity());
  EXPECT_EQ(r_condition_nullity(other), 1u);
  // R' must be proportional to S R S^T.
  const SpinMatrix want = s * find_R(basis()).r * s.transpose();
  const SpinMatrix got = find_R(other).r;
  ExactComplex ratio;
  for (int i = 0; i < 16; ++i)
    if (!want(i / 4, i % 4).is_zero()) {
      ratio = got(i / 4, i % 4) / want(i / 4, i % 4);
      break;
    }
  EXPECT_EQ(got, ratio * want);
}

TEST(FindR, DegenerateBasisIsRejected) {
  const GammaBasis degenerate = GammaBasis::from_gammas({});
  EXPECT_GT(r_condition_nullity(degenerate), 1u);
  EXPECT_THROW(find_R(degenerate), std::runtime_error);
}

TEST(ClassifySymmetry, Examples) {
  const RMatrix R = find_R(basis());
  EXPECT_EQ(classify_symmetry(SpinMatrix::identity()), Symmetry::symmetric);
  EXPECT_EQ(classify_symmetry(R.r), Symmetry::antisymmetric);
  EXPECT_EQ(classify_symmetry(basis().gamma[0] * R.r + R.r), Symmetry::neither);
  EXPECT_EQ(classify_symmetry(SpinMatrix::zero()), Symmetry::symmetric);
}

TEST(ClassifySymmetry, FloatingTolerance) {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m(0, 1) = 1.0;
  m(1, 0) = -1.0;
  EXPECT_EQ(classify_symmetry(m), Symmetry::antisymmetric);
  m(1, 0) = -1.0 + 1e-14;
  EXPECT_EQ(classify_symmetry(m), Symmetry::antisymmetric);
  m(1, 0) = -1.0 + 1e-6;
  EXPECT_EQ(classify_symmetry(m), Symmetry::neither);
  EXPECT_EQ(classify_symmetry(m, 1e-3), Symmetry::antisymmetric);
  EXPECT_STREQ(to_string(Symmetry::neither), "neither");
}

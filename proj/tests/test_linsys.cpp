#include <random>

#include <gtest/gtest.h>

#include "bw/linsys.hpp"

using namespace bw;

namespace {

std::vector<std::string> labels(int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back("x" + std::to_string(i));
  return out;
}

LinearSystem from_matrix(const Eigen::MatrixXcd& m, const std::string& prov = "plumbing") {
  LinearSystem s(labels(static_cast<int>(m.cols())));
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    std::vector<cd> v(static_cast<std::size_t>(m.cols()));
    for (Eigen::Index c = 0; c < m.cols(); ++c) v[static_cast<std::size_t>(c)] = m(r, c);
    s.add_row(std::move(v), prov);
  }
  return s;
}

Eigen::MatrixXcd random_matrix(std::mt19937_64& g, int rows, int cols) {
  std::normal_distribution<double> n;
  Eigen::MatrixXcd m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      const double re = n(g);
      m(r, c) = cd(re, n(g));
    }
  return m;
}

}  // namespace

TEST(LinearSystem, RowValidation) {
  LinearSystem s(labels(3));
  EXPECT_THROW(s.add_row({1.0, 2.0}, "plumbing"), std::invalid_argument);
  EXPECT_THROW(s.add_row({1.0, 2.0, 3.0}, ""), std::invalid_argument);
  EXPECT_THROW(LinearSystem({"a", "a"}), std::invalid_argument);
  s.add_row({1.0, 0.0, 0.0}, "Eq. (3)");
  s.add_row({0.0, 1.0, 0.0}, "Eq. (4)");
  s.add_row({0.0, 0.0, 1.0}, "Eq. (3)");
  EXPECT_EQ(s.provenance_set(), (std::vector<std::string>{"Eq. (3)", "Eq. (4)"}));
  EXPECT_EQ(s.without_provenance("Eq. (3)").rows(), 1u);
  EXPECT_EQ(s.select_rows({2}).row(0)[2], cd(1.0));
}

TEST(Rank, ZeroMatrixAndIdentity) {
  const LinearSystem zero = from_matrix(Eigen::MatrixXcd::Zero(4, 5));
  EXPECT_EQ(rank(zero), 0u);
  EXPECT_EQ(nullspace(zero).cols(), 5);
  EXPECT_EQ(nullity(LinearSystem(labels(7))), 7u);
  const LinearSystem id = from_matrix(Eigen::MatrixXcd::Identity(6, 6));
  EXPECT_EQ(nullity(id), 0u);
  EXPECT_EQ(nullspace(id).cols(), 0);
}

TEST(Rank, LowRankProductsFromRandomFactors) {
  std::mt19937_64 g(1);
  for (int k : {1, 3, 7, 12}) {
    const Eigen::MatrixXcd m = random_matrix(g, 20, k) * random_matrix(g, k, 15);
    EXPECT_EQ(rank(m), static_cast<std::size_t>(std::min(k, 15)));
    const Eigen::MatrixXcd n = nullspace(m);
    EXPECT_EQ(n.cols(), 15 - std::min(k, 15));
    if (n.cols() > 0) {
      EXPECT_LE((m * n).cwiseAbs().maxCoeff(), 1e-10);
      EXPECT_LE((n.adjoint() * n - Eigen::MatrixXcd::Identity(n.cols(), n.cols())).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST(Rank, RowScalingDoesNotChangeRank) {
  std::mt19937_64 g(2);
  Eigen::MatrixXcd m = random_matrix(g, 4, 6);
  m.row(2) *= 1e-9;
  m.row(3) *= 1e9;
  EXPECT_EQ(rank(m), 4u);
}

TEST(Rank, ZeroColumnsStayInTheNullspace) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 4);
  m(0, 1) = 1.0;
  m(1, 3) = 2.0;
  const Eigen::MatrixXcd n = nullspace(m);
  ASSERT_EQ(n.cols(), 2);
  EXPECT_LE((m * n).cwiseAbs().maxCoeff(), 1e-15);
  Eigen::MatrixXcd proj = n * n.adjoint();
  EXPECT_NEAR(proj(0, 0).real(), 1.0, 1e-15);
  EXPECT_NEAR(proj(2, 2).real(), 1.0, 1e-15);
}

TEST(Equivalent, PermutedAndScaledRows) {
  std::mt19937_64 g(3);
  const Eigen::MatrixXcd m = random_matrix(g, 5, 8);
  Eigen::MatrixXcd p(5, 8);
  const int order[5] = {3, 0, 4, 1, 2};
  for (int r = 0; r < 5; ++r) p.row(r) = 2.0 * m.row(order[r]);
  EXPECT_TRUE(equivalent(from_matrix(m), from_matrix(p)));

  Eigen::MatrixXcd more(6, 8);
  more << m, random_matrix(g, 1, 8);
  EXPECT_FALSE(equivalent(from_matrix(m), from_matrix(more)));
  EXPECT_TRUE(contains(from_matrix(more), from_matrix(m)));
  EXPECT_FALSE(contains(from_matrix(m), from_matrix(more)));
}

TEST(Equivalent, ColumnOrderIsMatchedByLabel) {
  LinearSystem a({"x", "y"}), b({"y", "x"});
  a.add_row({1.0, 2.0}, "plumbing");
  b.add_row({2.0, 1.0}, "plumbing");
  EXPECT_TRUE(equivalent(a, b));
  LinearSystem c({"x", "z"});
  EXPECT_THROW(equivalent(a, c), std::invalid_argument);
  EXPECT_THROW(contains(a, c), std::invalid_argument);
}

TEST(Embedding, SupersetAndRestriction) {
  LinearSystem a({"x", "y"});
  a.add_row({1.0, 2.0}, "plumbing");
  const LinearSystem e = a.embedded({"z", "y", "x"});
  EXPECT_EQ(e.row(0), (std::vector<cd>{0.0, 2.0, 1.0}));
  EXPECT_THROW(a.embedded({"x"}), std::invalid_argument);
  EXPECT_EQ(a.restricted({"y"}).row(0), (std::vector<cd>{2.0}));
  EXPECT_THROW(a.restricted({"q"}), std::invalid_argument);
  const LinearSystem s = e.stacked(a);
  EXPECT_EQ(s.rows(), 2u);
  EXPECT_EQ(s.row(1), e.row(0));
}

TEST(ImpliedRows, CountsPerProvenance) {
  LinearSystem basis({"x", "y", "z"}), cand({"x", "y", "z"});
  basis.add_row({1.0, 1.0, 0.0}, "Eq. (3)");
  basis.add_row({0.0, 1.0, 1.0}, "Eq. (3)");
  cand.add_row({1.0, 0.0, -1.0}, "Eq. (10)");
  cand.add_row({0.0, 0.0, 1.0}, "Eq. (10)");
  cand.add_row({0.0, 0.0, 0.0}, "plumbing");
  const auto counts = implied_rows(basis, cand);
  ASSERT_EQ(counts.size(), 2u);
  EXPECT_EQ(counts[0].provenance, "Eq. (10)");
  EXPECT_EQ(counts[0].rows, 2u);
  EXPECT_EQ(counts[0].implied, 1u);
  EXPECT_EQ(counts[1].implied, 1u);
}

TEST(Residual, NormalizedRows) {
  LinearSystem s({"x", "y"});
  s.add_row({4.0, 0.0}, "plumbing");
  Eigen::VectorXcd v(2);
  v << 0.5, 7.0;
  EXPECT_DOUBLE_EQ(residual(s, v), 0.5);
  EXPECT_EQ(residual(LinearSystem({"x"}), Eigen::VectorXcd::Ones(1)), 0.0);
}

TEST(MassSpectrum, LinearBranchWhenBEqualsD) {
  const cd a = 1.3, b = 0.4, c = 0.2, d = 0.4;
  const SpectrumResult r = mass_spectrum(a, b, c, d);
  ASSERT_EQ(r.degree, 1);
  ASSERT_EQ(r.roots.size(), 1u);
  EXPECT_LE(std::abs(r.roots[0] - (c * c - a * a) / (2.0 * (a * b - c * d))), 1e-14);
}

TEST(MassSpectrum, ConstantPolynomialHasNoBranch) {
  const SpectrumResult r = mass_spectrum(1.0, 0.0, 0.0, 0.0);
  EXPECT_EQ(r.degree, 0);
  EXPECT_TRUE(r.no_propagating_branch);
  EXPECT_TRUE(r.roots.empty());
  EXPECT_EQ(r.coefficients[1], cd(0));
  EXPECT_EQ(r.coefficients[0], cd(-1));
}

TEST(MassSpectrum, DoubleRootAtZero) {
  const SpectrumResult r = mass_spectrum(0.0, 1.0, 0.0, 0.0);
  EXPECT_EQ(r.degree, 2);
  EXPECT_TRUE(r.double_root);
  ASSERT_EQ(r.roots.size(), 2u);
  EXPECT_EQ(r.roots[0], cd(0));
  EXPECT_EQ(r.roots[1], cd(0));
}

TEST(MassSpectrum, QuadraticFormulaOracle) {
  std::mt19937_64 g(4);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int t = 0; t < 200; ++t) {
    const cd a(u(g), u(g)), b(u(g), u(g)), c(u(g), u(g)), d(u(g), u(g));
    const SpectrumResult r = mass_spectrum(a, b, c, d);
    ASSERT_EQ(r.degree, 2);
    const cd A = d * d - b * b, B = -2.0 * (a * b - c * d), C = c * c - a * a;
    const cd sq = std::sqrt(B * B - 4.0 * A * C);
    const cd x1 = (-B + sq) / (2.0 * A), x2 = (-B - sq) / (2.0 * A);
    const double scale = std::max({1.0, std::abs(x1), std::abs(x2)});
    const bool same = std::abs(r.roots[0] - x1) + std::abs(r.roots[1] - x2) <= 1e-9 * scale;
    const bool swapped = std::abs(r.roots[0] - x2) + std::abs(r.roots[1] - x1) <= 1e-9 * scale;
    EXPECT_TRUE(same || swapped);
    for (const cd x : r.roots) EXPECT_LE(std::abs(spectrum_polynomial(a, b, c, d, x)), 1e-9 * scale * scale);
  }
}

TEST(MassSpectrum, IdenticallyDegenerateThrows) {
  EXPECT_THROW(mass_spectrum(0.0, 0.0, 0.0, 0.0), std::domain_error);
  EXPECT_THROW(mass_spectrum(1.0, 1.0, 1.0, 1.0), std::domain_error);
}

TEST(Json, SystemRoundTripAndSignedZero) {
  LinearSystem s({"x", "y"});
  s.add_row({cd(-0.0, 1.5), cd(2.0, -0.0)}, "Eq. (35)");
  const nlohmann::json j = to_json(s);
  const std::string want = R"js({"rows":[{"coeffs":[[0.0,1.5],[2.0,0.0]],"provenance":"Eq. (35)"}],"unknowns":["x","y"]})js";
  EXPECT_EQ(j.dump(), want);
  const LinearSystem back = system_from_json(j);
  EXPECT_EQ(back.row(0), s.row(0));
  EXPECT_EQ(back.provenance(0), "Eq. (35)");
}

#include <random>

#include <gtest/gtest.h>

#include "bw/fields.hpp"
#include "bw/linsys.hpp"

using namespace bw;

namespace {

const NumericAlgebra& alg() { return dirac_algebra(); }

cd rnd(std::mt19937_64& g) {
  std::uniform_real_distribution<double> u(-1, 1);
  const double re = u(g);
  return {re, u(g)};
}

Spin1Components random_spin1(std::mt19937_64& g) {
  Eigen::VectorXcd v(16);
  for (auto& x : v) x = rnd(g);
  return Spin1Components::from_vector(v);
}

Eigen::Matrix4cd sigma_upper(int mu, int nu) { return to_eigen(alg().exact.sigma_upper(mu, nu)); }

Multispinor4 kron(const Eigen::Matrix4cd& x, const Eigen::Matrix4cd& y) {
  Multispinor4 out;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) out(4 * a + b, 4 * c + d) = x(a, b) * y(c, d);
  return out;
}

ModifiedCoeffs generic_coeffs(std::mt19937_64& g) {
  ModifiedCoeffs c;
  for (auto& a : c.alpha) a = rnd(g);
  for (auto& b : c.beta) b = rnd(g);
  return c;
}

}  // namespace

TEST(Spin1Pack, MatchesDirectExpansionSum) {
  std::mt19937_64 g(11);
  const Eigen::Matrix4cd& R = alg().R;
  for (int trial = 0; trial < 20; ++trial) {
    const Spin1Components c = random_spin1(g);
    Eigen::Matrix4cd want = c.phi * R + c.phi_tilde * alg().gamma5 * R;
    for (int mu = 0; mu < 4; ++mu) {
      want += c.A[mu] * alg().gamma[mu] * R;
      want += c.A_tilde[mu] * alg().gamma5 * alg().gamma[mu] * R;
      for (int nu = 0; nu < 4; ++nu) want += c.F_at(mu, nu) * sigma_upper(mu, nu) * R;
    }
    const Multispinor2 got = pack_spin1(c, alg().exact, alg().exact_R);
    EXPECT_LE((got - want).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Spin1Pack, ZeroAndSymmetryOfSectors) {
  const auto& b = alg().exact;
  const auto& R = alg().exact_R;
  EXPECT_EQ(pack_spin1({}, b, R).cwiseAbs().maxCoeff(), 0.0);

  Spin1Components phi;
  phi.phi = 0.7;
  EXPECT_EQ(classify_symmetry(pack_spin1(phi, b, R)), Symmetry::antisymmetric);

  Spin1Components a;
  a.A = {0.3, -1.0, 0.2, 0.5};
  EXPECT_EQ(classify_symmetry(pack_spin1(a, b, R)), Symmetry::symmetric);

  Spin1Components f;
  f.F = {1, 2, 3, 4, 5, 6};
  EXPECT_EQ(classify_symmetry(pack_spin1(f, b, R)), Symmetry::symmetric);
}

TEST(Spin1Unpack, BasisElements) {
  const auto& b = alg().exact;
  const auto& R = alg().exact_R;
  const Spin1Components from_r = unpack_spin1(alg().R, b, R);
  Eigen::VectorXcd want = Eigen::VectorXcd::Zero(16);
  want(0) = 1.0;
  EXPECT_LE((from_r.to_vector() - want).cwiseAbs().maxCoeff(), 1e-14);

  const Spin1Components from_g0 = unpack_spin1(alg().gamma[0] * alg().R, b, R);
  want.setZero();
  want(2) = 1.0;
  EXPECT_LE((from_g0.to_vector() - want).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Spin1Unpack, RandomRoundTrip) {
  std::mt19937_64 g(5);
  for (int trial = 0; trial < 200; ++trial) {
    const Spin1Components c = random_spin1(g);
    const Spin1Components back = unpack_spin1(pack_spin1(c, alg().exact, alg().exact_R), alg().exact, alg().exact_R);
    EXPECT_LE((back.to_vector() - c.to_vector()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Spin1Unpack, SingularExpansionThrows) {
  RMatrix zero;
  EXPECT_THROW(unpack_spin1(Multispinor2::Identity(), alg().exact, zero), std::runtime_error);
}

TEST(Spin1Components, VectorAndJson) {
  std::mt19937_64 g(2);
  const Spin1Components c = random_spin1(g);
  EXPECT_EQ(c.F_at(2, 1), -c.F[3]);
  EXPECT_EQ(c.F_at(1, 1), cd(0));
  const Spin1Components back = spin1_from_json(to_json(c));
  EXPECT_EQ(back.to_vector(), c.to_vector());
  EXPECT_THROW(Spin1Components::from_vector(Eigen::VectorXcd::Zero(3)), std::invalid_argument);
  nlohmann::json bad = to_json(c);
  bad["A"].erase(0);
  EXPECT_THROW(spin1_from_json(bad), std::invalid_argument);
}

TEST(ModifiedCoeffs, StandardPointAndProducts) {
  const ModifiedCoeffs s = ModifiedCoeffs::standard();
  EXPECT_EQ(s.a(3), cd(0));
  for (int j : {3, 6, 9}) EXPECT_EQ(s.b(j), cd(0));
  for (int j : {1, 2, 4, 5, 7, 8}) EXPECT_EQ(s.b(j), cd(1));
  EXPECT_EQ(s.product("G"), cd(1));
  EXPECT_EQ(s.product("F_tilde"), cd(0));
  EXPECT_EQ(s.product("T_tilde"), cd(0));

  ModifiedCoeffs c;
  c.alpha = {2, 3, 5};
  c.beta = {7, 11, 13, 17, 19, 23, 29, 31, 37};
  EXPECT_EQ(c.product("R_tilde"), cd(3 * 23));
  EXPECT_EQ(c.product("D"), cd(5 * 37));
  EXPECT_THROW((void)c.product("Q"), std::out_of_range);
}

TEST(Spin2Layout, SizesAndComponents) {
  EXPECT_EQ(spin2_layout().size(), 256);
  EXPECT_EQ(spin2_standard_layout().size(), 100);
  Spin2Components c;
  c.set("F", {1, 0, 2}, 3.0);
  EXPECT_EQ(c.get("F", {0, 1, 2}), cd(-3.0));
  c.set("G", {2, 3}, cd(0, 1));
  EXPECT_EQ(c.get("G", {2, 3}), cd(0, 1));
  EXPECT_EQ(c.get("R", {1, 1, 0, 2}), cd(0));
  EXPECT_THROW(c.set("R", {1, 1, 0, 2}, 1.0), std::invalid_argument);
  EXPECT_EQ(c.block("G").size(), 16);
  const Spin2Components back = spin2_from_json(to_json(c));
  EXPECT_EQ(back.v, c.v);
}

TEST(Spin2Pack, OnlyGMatchesKroneckerSum) {
  std::mt19937_64 g(9);
  ModifiedCoeffs coeffs = ModifiedCoeffs::standard();
  Spin2Components c;
  Multispinor4 want = Multispinor4::Zero();
  for (int k = 0; k < 4; ++k)
    for (int mu = 0; mu < 4; ++mu) {
      const cd v = rnd(g);
      c.set("G", {k, mu}, v);
      // (gamma_mu R) on the first pair, (gamma^kappa R) on the second
      want += v * kron(eta(mu) * alg().gamma[mu] * alg().R, alg().gamma[k] * alg().R);
    }
  EXPECT_LE((pack_spin2(c, coeffs, alg().exact, alg().exact_R) - want).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Spin2Pack, ZeroInZeroOut) {
  const Spin2Codec codec(ModifiedCoeffs::standard(), alg().exact, alg().exact_R);
  EXPECT_EQ(codec.pack({}).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(codec.unpack(Multispinor4::Zero()).components.v.cwiseAbs().maxCoeff(), 0.0);
}

TEST(Spin2Pack, StandardPointIgnoresTildeBlocks) {
  std::mt19937_64 g(4);
  const Spin2Codec codec(ModifiedCoeffs::standard(), alg().exact, alg().exact_R);
  Spin2Components c, tilde_only;
  for (Eigen::Index i = 0; i < 256; ++i) c.v(i) = rnd(g);
  tilde_only = c;
  for (const char* b : {"G", "F", "T", "R"}) {
    const auto& blk = spin2_layout().block(b);
    tilde_only.v.segment(blk.offset, blk.size).setZero();
  }
  EXPECT_EQ(codec.pack(tilde_only).cwiseAbs().maxCoeff(), 0.0);
  const std::vector<std::string> want{"F_tilde", "T_tilde", "R_tilde", "D", "D_tilde"};
  auto und = codec.undetermined();
  std::sort(und.begin(), und.end());
  auto w = want;
  std::sort(w.begin(), w.end());
  EXPECT_EQ(und, w);
}

TEST(Spin2Unpack, RoundTripAtStandardPoint) {
  std::mt19937_64 g(6);
  const Spin2Codec codec(ModifiedCoeffs::standard(), alg().exact, alg().exact_R);
  EXPECT_EQ(codec.image_rank(), 100u);
  for (int trial = 0; trial < 50; ++trial) {
    Spin2Components c;
    for (const char* b : {"G", "F", "T", "R"}) {
      const auto& blk = spin2_layout().block(b);
      for (int i = 0; i < blk.size; ++i) c.v(blk.offset + i) = rnd(g);
    }
    const Spin2Unpacked u = codec.unpack(codec.pack(c));
    EXPECT_LE((u.components.v - c.v).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Spin2Unpack, AlphaThreeZeroFlagsItsBlocks) {
  std::mt19937_64 g(8);
  ModifiedCoeffs c = generic_coeffs(g);
  c.alpha[2] = 0;
  const Spin2Codec codec(c, alg().exact, alg().exact_R);
  auto und = codec.undetermined();
  std::sort(und.begin(), und.end());
  EXPECT_EQ(und, (std::vector<std::string>{"D", "D_tilde", "T_tilde"}));
}

TEST(Spin2Unpack, GenericCoefficientsAreIdempotentOnTheImage) {
  // The nine blocks overlap in spinor space, so unpack returns the
  // minimum-norm preimage; repacking it must reproduce the multispinor.
  std::mt19937_64 g(10);
  const Spin2Codec codec(generic_coeffs(g), alg().exact, alg().exact_R);
  EXPECT_EQ(codec.image_rank(), 100u);
  Spin2Components c;
  for (Eigen::Index i = 0; i < 256; ++i) c.v(i) = rnd(g);
  const Multispinor4 psi = codec.pack(c);
  const Spin2Unpacked u = codec.unpack(psi);
  EXPECT_TRUE(u.undetermined.empty());
  EXPECT_LE((codec.pack(u.components) - psi).cwiseAbs().maxCoeff(), 1e-11);
  EXPECT_LE(u.components.v.norm(), c.v.norm() + 1e-12);
}

TEST(Spin2Pack, SymmetricInBothSpinorPairs) {
  // Every rank-4 term is (symmetric) x (symmetric) over the two pairs.
  std::mt19937_64 g(12);
  const Spin2Codec codec(generic_coeffs(g), alg().exact, alg().exact_R);
  Spin2Components c;
  for (Eigen::Index i = 0; i < 256; ++i) c.v(i) = rnd(g);
  const Multispinor4 psi = codec.pack(c);
  double worst = 0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int cc = 0; cc < 4; ++cc)
        for (int d = 0; d < 4; ++d) {
          worst = std::max(worst, std::abs(psi(4 * a + b, 4 * cc + d) - psi(4 * b + a, 4 * cc + d)));
          worst = std::max(worst, std::abs(psi(4 * a + b, 4 * cc + d) - psi(4 * a + b, 4 * d + cc)));
        }
  EXPECT_LE(worst, 1e-12);
}

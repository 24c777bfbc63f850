#include "bw/clifford.hpp"

#include <algorithm>
#include <stdexcept>

namespace bw {

namespace {

constexpr std::array<std::array<int, 2>, 6> kSigmaPairs{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

// 2x2 block helper for the Dirac representation.
SpinMatrix blocks(const SpinMatrix& tl, const SpinMatrix& tr, const SpinMatrix& bl,
                  const SpinMatrix& br) {
  SpinMatrix m;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      m(r, c) = tl(r, c);
      m(r, c + 2) = tr(r, c);
      m(r + 2, c) = bl(r, c);
      m(r + 2, c + 2) = br(r, c);
    }
  return m;
}

}  // namespace

GammaBasis GammaBasis::from_gammas(const std::array<SpinMatrix, 4>& gammas) {
  GammaBasis b;
  b.gamma = gammas;
  b.gamma5 = ExactComplex::i() * (gammas[0] * gammas[1] * gammas[2] * gammas[3]);
  const ExactComplex half_i{0, Rational(1, 2)};
  for (std::size_t k = 0; k < kSigmaPairs.size(); ++k) {
    const auto [mu, nu] = kSigmaPairs[k];
    b.sigma[k] = half_i * (gammas[mu] * gammas[nu] - gammas[nu] * gammas[mu]);
  }
  return b;
}

SpinMatrix GammaBasis::gamma_lower(int mu) const { return ExactComplex(Metric::g(mu, mu)) * gamma[mu]; }

SpinMatrix GammaBasis::sigma_upper(int mu, int nu) const {
  if (mu == nu) return SpinMatrix::zero();
  const bool swapped = mu > nu;
  const int a = swapped ? nu : mu;
  const int b = swapped ? mu : nu;
  for (std::size_t k = 0; k < kSigmaPairs.size(); ++k)
    if (kSigmaPairs[k][0] == a && kSigmaPairs[k][1] == b) return swapped ? -sigma[k] : sigma[k];
  throw std::out_of_range("sigma index");
}

SpinMatrix GammaBasis::sigma_lower(int mu, int nu) const {
  return ExactComplex(Metric::g(mu, mu) * Metric::g(nu, nu)) * sigma_upper(mu, nu);
}

std::array<SpinMatrix, 16> GammaBasis::elements() const {
  std::array<SpinMatrix, 16> e;
  e[0] = identity;
  e[1] = gamma5;
  for (int mu = 0; mu < 4; ++mu) {
    e[2 + mu] = gamma[mu];
    e[6 + mu] = gamma5 * gamma[mu];
  }
  for (std::size_t k = 0; k < 6; ++k) e[10 + k] = sigma[k];
  return e;
}

GammaBasis GammaBasis::conjugated(const SpinMatrix& s) const {
  const auto inv = s.inverse();
  if (!inv) throw std::invalid_argument("conjugating matrix is singular");
  std::array<SpinMatrix, 4> g;
  for (int mu = 0; mu < 4; ++mu) g[mu] = s * gamma[mu] * *inv;
  return from_gammas(g);
}

GammaBasis build_gamma_basis() {
  const ExactComplex i = ExactComplex::i();
  SpinMatrix one, zero, sx, sy, sz;
  one(0, 0) = 1;
  one(1, 1) = 1;
  sx(0, 1) = 1;
  sx(1, 0) = 1;
  sy(0, 1) = -i;
  sy(1, 0) = i;
  sz(0, 0) = 1;
  sz(1, 1) = -1;
  std::array<SpinMatrix, 4> g;
  g[0] = blocks(one, zero, zero, -one);
  g[1] = blocks(zero, sx, -sx, zero);
  g[2] = blocks(zero, sy, -sy, zero);
  g[3] = blocks(zero, sz, -sz, zero);
  return GammaBasis::from_gammas(g);
}

Symmetry expected_symmetry(std::size_t element) {
  // I, gamma5 and gamma5 gamma^mu give antisymmetric products with R.
  if (element < 2 || (element >= 6 && element < 10)) return Symmetry::antisymmetric;
  return Symmetry::symmetric;
}

namespace {

// Stacked linear conditions (B R)^T - s (B R) = 0 on the 16 entries of R.
std::vector<std::vector<ExactComplex>> r_conditions(const GammaBasis& basis) {
  std::vector<std::vector<ExactComplex>> rows;
  const auto elems = basis.elements();
  for (std::size_t k = 0; k < elems.size(); ++k) {
    const ExactComplex s = expected_symmetry(k) == Symmetry::symmetric ? 1 : -1;
    std::array<SpinMatrix, 16> images;
    for (int e = 0; e < 16; ++e) {
      SpinMatrix unit;
      unit(e / 4, e % 4) = 1;
      const SpinMatrix x = elems[k] * unit;
      images[static_cast<std::size_t>(e)] = x.transpose() - s * x;
    }
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) {
        std::vector<ExactComplex> row(16);
        for (std::size_t e = 0; e < 16; ++e) row[e] = images[e](r, c);
        rows.push_back(std::move(row));
      }
  }
  return rows;
}

}  // namespace

std::size_t r_condition_nullity(const GammaBasis& basis) {
  return exact_nullspace(r_conditions(basis), 16).size();
}

RMatrix find_R(const GammaBasis& basis) {
  const auto null = exact_nullspace(r_conditions(basis), 16);
  if (null.empty()) throw std::runtime_error("find_R: symmetry conditions admit no nonzero R");
  if (null.size() > 1) throw std::runtime_error("find_R: R is not unique up to scale");

  const auto& v = null.front();
  std::size_t big = 0;
  for (std::size_t e = 1; e < v.size(); ++e)
    if (v[e].norm2() > v[big].norm2()) big = e;
  const ExactComplex scale = v[big];

  RMatrix out;
  for (int e = 0; e < 16; ++e) out.r(e / 4, e % 4) = v[static_cast<std::size_t>(e)] / scale;
  const auto inv = out.r.inverse();
  if (!inv) throw std::runtime_error("find_R: solution is singular");
  out.r_inverse = *inv;
  return out;
}

Symmetry classify_symmetry(const SpinMatrix& m) {
  const SpinMatrix t = m.transpose();
  if (m.is_zero()) return Symmetry::symmetric;
  if (t == m) return Symmetry::symmetric;
  if (t == -m) return Symmetry::antisymmetric;
  return Symmetry::neither;
}

Symmetry classify_symmetry(const Eigen::Matrix4cd& m, double tol) {
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() <= tol * scale) return Symmetry::symmetric;
  if ((m + m.transpose()).cwiseAbs().maxCoeff() <= tol * scale) return Symmetry::antisymmetric;
  return Symmetry::neither;
}

const char* to_string(Symmetry s) {
  switch (s) {
    case Symmetry::symmetric:
      return "symmetric";
    case Symmetry::antisymmetric:
      return "antisymmetric";
    case Symmetry::neither:
      return "neither";
  }
  return "neither";
}

Eigen::Matrix4cd to_eigen(const SpinMatrix& m) {
  Eigen::Matrix4cd out;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out(r, c) = m(r, c).to_complex();
  return out;
}

Eigen::Matrix4cd NumericAlgebra::slash(const std::array<std::complex<double>, 4>& p_lower) const {
  Eigen::Matrix4cd s = Eigen::Matrix4cd::Zero();
  for (std::size_t mu = 0; mu < 4; ++mu) s += p_lower[mu] * gamma[mu];
  return s;
}

const NumericAlgebra& dirac_algebra() {
  static const NumericAlgebra alg = [] {
    NumericAlgebra a;
    a.exact = build_gamma_basis();
    a.exact_R = find_R(a.exact);
    for (std::size_t mu = 0; mu < 4; ++mu) a.gamma[mu] = to_eigen(a.exact.gamma[mu]);
    a.gamma5 = to_eigen(a.exact.gamma5);
    a.identity = Eigen::Matrix4cd::Identity();
    a.R = to_eigen(a.exact_R.r);
    a.R_inverse = to_eigen(a.exact_R.r_inverse);
    return a;
  }();
  return alg;
}

}  // namespace bw

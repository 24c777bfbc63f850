#include "bw/spin1.hpp"

#include <cmath>
#include <stdexcept>

#include "bw/clifford.hpp"
#include "bw/fields.hpp"

namespace bw {

namespace {

const cd I(0, 1);

std::array<cd, 4> lowered(const Momentum& p) {
  return {p.lower(0), p.lower(1), p.lower(2), p.lower(3)};
}

// Rows for the 16 entries of X_k (one column per unknown k).
void add_matrix_rows(LinearSystem& s, const std::array<Eigen::Matrix4cd, 16>& images, const std::string& prov) {
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      std::vector<cd> row(16);
      for (std::size_t k = 0; k < 16; ++k) row[k] = images[k](r, c);
      s.add_row(std::move(row), prov);
    }
}

bool in_symmetric_part(std::size_t k) { return (k >= 2 && k < 6) || k >= 10; }

}  // namespace

cd shifted_a(const ParameterSet& s, const Momentum& p) { return s.a + s.b * p.p2(); }
cd shifted_c(const ParameterSet& s, const Momentum& p) { return s.c + s.d * p.p2(); }

Eigen::Matrix4cd bw_operator(const ParameterSet& s, const Momentum& p, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("bw_operator sign must be +1 or -1");
  const auto& alg = dirac_algebra();
  return alg.slash(lowered(p)) + shifted_a(s, p) * alg.identity +
         static_cast<double>(sign) * shifted_c(s, p) * alg.gamma5;
}

LinearSystem multispinor_spin1_system(const ParameterSet& s, const Momentum& p) {
  const auto& alg = dirac_algebra();
  const auto e = spin1_expansion(alg.exact, alg.exact_R);
  const Eigen::Matrix4cd op = bw_operator(s, p, 1);
  const Eigen::Matrix4cd om = bw_operator(s, p, -1);
  std::array<Eigen::Matrix4cd, 16> first, second;
  for (std::size_t k = 0; k < 16; ++k) {
    first[k] = op * e[k];
    // [O-]_{alpha beta} Psi_{gamma beta}
    second[k] = e[k] * om.transpose();
  }
  LinearSystem sys(spin1_layout().labels());
  add_matrix_rows(sys, first, "Eq. (1)");
  add_matrix_rows(sys, second, "Eq. (2)");
  return sys;
}

LinearSystem derive_spin1_system(const ParameterSet& s, const Momentum& p) {
  const Layout& L = spin1_layout();
  const cd ap = shifted_a(s, p);
  const cd cp = shifted_c(s, p);
  LinearSystem sys(L.labels());

  for (const auto& [n, l] : kPairs) {
    RowBuilder r(L);
    r.add(p.d_lower(n), "A", {l}, "l").add(-p.d_lower(l), "A", {n}, "l").add(2.0 * ap, "F", {n, l}, "ll");
    sys.add_row(r, "Eq. (3)");
  }
  for (int k = 0; k < 4; ++k) {
    RowBuilder r(L);
    for (int l = 0; l < 4; ++l) r.add(p.d_upper(l), "F", {l, k}, "ll");
    r.add(-0.5 * ap, "A", {k}, "l").add(-0.5 * cp, "A_tilde", {k}, "l");
    sys.add_row(r, "Eq. (4)");
  }
  {
    RowBuilder r(L);
    for (int l = 0; l < 4; ++l) r.add(I * p.d_upper(l), "A", {l}, "l");
    r.add(cp, "phi_tilde", {}, "");
    sys.add_row(r, "Eq. (5)");
  }
  for (int t = 0; t < 4; ++t) {
    RowBuilder r(L);
    for (int m = 0; m < 4; ++m)
      for (int l = 0; l < 4; ++l)
        for (int k = 0; k < 4; ++k) {
          const int e = levi_civita_upper(m, l, k, t);
          if (e != 0) r.add(static_cast<double>(e) * p.d_lower(m), "F", {l, k}, "ll");
        }
    sys.add_row(r, "Eq. (6)");
  }
  {
    RowBuilder r(L);
    r.add(cp, "phi", {}, "");
    sys.add_row(r, "Eq. (6)");
  }
  return sys;
}

LinearSystem derive_duffin_kemmer(const ParameterSet& s, const Momentum& p) {
  const Layout& L = spin1_layout();
  const cd ap = shifted_a(s, p);
  const cd cp = shifted_c(s, p);
  LinearSystem sys(L.labels());
  {
    RowBuilder r(L);
    r.add(ap, "phi", {}, "");
    sys.add_row(r, "Eq. (7)");
  }
  {
    RowBuilder r(L);
    for (int m = 0; m < 4; ++m) r.add(I * p.d_upper(m), "A_tilde", {m}, "l");
    r.add(-ap, "phi_tilde", {}, "");
    sys.add_row(r, "Eq. (7)");
  }
  for (int n = 0; n < 4; ++n) {
    RowBuilder r(L);
    r.add(ap, "A_tilde", {n}, "l").add(cp, "A", {n}, "l").add(-I * p.d_lower(n), "phi_tilde", {}, "");
    sys.add_row(r, "Eq. (8)");
  }
  for (int m = 0; m < 4; ++m) {
    RowBuilder r(L);
    r.add(p.d_lower(m), "phi", {}, "");
    sys.add_row(r, "Eq. (9)");
  }
  for (const auto& [n, l] : kPairs) {
    RowBuilder r(L);
    r.add(p.d_lower(n), "A_tilde", {l}, "l")
        .add(-p.d_lower(l), "A_tilde", {n}, "l")
        .add(-2.0 * cp, "F", {n, l}, "ll");
    sys.add_row(r, "Eq. (9)");
  }
  return sys;
}

LinearSystem eliminate_potentials(const ParameterSet& s, const Momentum& p) {
  static const Layout L = [] {
    Layout l;
    l.add("F", BlockKind::pair, "ll");
    return l;
  }();
  const cd ap = shifted_a(s, p);
  const cd cp = shifted_c(s, p);
  if (std::abs(ap) < kDegenerateDivisor && std::abs(cp) < kDegenerateDivisor)
    throw std::domain_error("degenerate elimination");
  const cd bracket = cp * cp - ap * ap;
  LinearSystem sys(L.labels());
  for (const auto& [mu, la] : kPairs) {
    RowBuilder r(L);
    for (int nu = 0; nu < 4; ++nu) {
      r.add(-p.lower(mu) * p.upper(nu), "F", {nu, la}, "ll");
      r.add(p.lower(la) * p.upper(nu), "F", {nu, mu}, "ll");
    }
    r.add(-bracket, "F", {mu, la}, "ll");
    sys.add_row(r, "Eq. (10)");
  }
  return sys;
}

std::vector<cd> spin1_dispersion_roots(const ParameterSet& s) {
  const cd q2 = s.d * s.d - s.b * s.b;
  const cd q1 = 1.0 - 2.0 * s.a * s.b + 2.0 * s.c * s.d;
  const cd q0 = s.c * s.c - s.a * s.a;
  const double scale = std::max({std::abs(q0), std::abs(q1), std::abs(q2), 1.0});
  if (std::abs(q2) <= 1e-14 * scale) {
    if (std::abs(q1) <= 1e-14 * scale) return {};
    return {-q0 / q1};
  }
  const cd sq = std::sqrt(q1 * q1 - 4.0 * q2 * q0);
  const cd big = std::abs(q1 + sq) >= std::abs(q1 - sq) ? q1 + sq : q1 - sq;
  if (std::abs(big) == 0.0) return {cd(0), cd(0)};
  return {-big / (2.0 * q2), -2.0 * q0 / big};
}

namespace {

bool finite(cd z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

WeinbergParams weinberg_map(const ParameterSet& s, WeinbergBranch branch) {
  if (!(s.m > 0.0) || !std::isfinite(s.m)) throw std::invalid_argument("weinberg_map needs m > 0");
  const double scale = std::max({std::abs(s.b), std::abs(s.d), 1.0});
  WeinbergParams w;
  w.branch = branch;
  if (std::abs(s.b - s.d) <= 1e-12 * scale) {
    w.b_sign = 1;
  } else if (std::abs(s.b + s.d) <= 1e-12 * scale) {
    w.b_sign = -1;
  } else {
    throw std::invalid_argument("weinberg_map: parameters satisfy neither b = d nor b = -d");
  }
  const cd k1 = s.c * s.c - s.a * s.a;
  const cd k2 = s.a * s.b - s.c * s.d;
  const double m2 = s.m * s.m;
  if (branch == WeinbergBranch::left) {
    w.B = -2.0 * k1 / m2;
    w.A = 1.0 - 4.0 * k2;
  } else {
    w.B = 2.0 * k1 / m2;
    w.A = 4.0 * k2 - 1.0;
  }
  return w;
}

std::vector<WeinbergFamily> weinberg_inverse(cd A, cd B, double m, WeinbergBranch branch, int b_sign) {
  if (!(m > 0.0) || !std::isfinite(m)) throw std::invalid_argument("weinberg_inverse needs m > 0");
  if (!finite(A) || !finite(B)) throw std::invalid_argument("weinberg_inverse needs finite A, B");
  if (b_sign != 1 && b_sign != -1) throw std::invalid_argument("no solution with b=+-d: sign must be +1 or -1");
  const double m2 = m * m;
  // Targets for c^2 - a^2 and ab - cd.
  const cd k1 = branch == WeinbergBranch::left ? -B * m2 / 2.0 : B * m2 / 2.0;
  const cd k2 = branch == WeinbergBranch::left ? -(A - 1.0) / 4.0 : (A + 1.0) / 4.0;
  const double s = b_sign;

  std::vector<WeinbergFamily> out;
  // With b = s d: ab - cd = d (s a - c). Put t = s a - c.
  out.push_back({"generic", [k1, k2, s](cd t) {
                   if (t == cd(0)) throw std::invalid_argument("generic family needs t != 0");
                   WeinbergSolution w;
                   w.a = s * (t * t - k1) / (2.0 * t);
                   w.c = (-t * t - k1) / (2.0 * t);
                   w.d = k2 / t;
                   w.b = s * w.d;
                   return w;
                 }});
  if (k2 == cd(0)) {
    for (const double branch_sign : {1.0, -1.0})
      out.push_back({branch_sign > 0 ? "d=0,+" : "d=0,-", [k1, branch_sign](cd t) {
                       WeinbergSolution w;
                       w.a = t;
                       w.c = branch_sign * std::sqrt(k1 + t * t);
                       return w;
                     }});
  }
  return out;
}

const char* to_string(WeinbergBranch b) { return b == WeinbergBranch::left ? "left" : "right"; }

SignVariantCoeffs make_sign_variant(const std::array<int, 4>& eps) {
  for (int e : eps)
    if (e != 1 && e != -1) throw std::invalid_argument("sign operator eigenvalues must be +1 or -1");
  SignVariantCoeffs v;
  v.eps = eps;
  v.A1 = (eps[0] + eps[2]) / 2;
  v.A2 = (eps[1] + eps[3]) / 2;
  v.B1 = (eps[0] - eps[2]) / 2;
  v.B2 = (eps[1] - eps[3]) / 2;
  return v;
}

std::vector<SignVariantCoeffs> enumerate_sign_variants() {
  std::vector<SignVariantCoeffs> out;
  for (int code = 0; code < 16; ++code) {
    std::array<int, 4> e{};
    for (int i = 0; i < 4; ++i) e[static_cast<std::size_t>(i)] = (code >> (3 - i)) & 1 ? -1 : 1;
    out.push_back(make_sign_variant(e));
  }
  return out;
}

LinearSystem derive_sign_variant_system(double m1, double m2, const SignVariantCoeffs& v, const Momentum& p) {
  const Layout& L = spin1_layout();
  const double A1 = v.A1, A2 = v.A2, B1 = v.B1, B2 = v.B2;
  LinearSystem sys(L.labels());
  for (const auto& [mu, la] : kPairs) {
    RowBuilder r(L);
    r.add(p.d_lower(mu), "A", {la}, "l").add(-p.d_lower(la), "A", {mu}, "l").add(2.0 * m1 * A1, "F", {mu, la}, "ll");
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        const double e = levi_civita("uull", a, b, mu, la);
        if (e != 0.0) r.add(I * m2 * A2 * e, "F", {a, b}, "ll");
      }
    sys.add_row(r, "Eq. (18)");
  }
  for (int k = 0; k < 4; ++k) {
    RowBuilder r(L);
    for (int l = 0; l < 4; ++l) r.add(p.d_upper(l), "F", {l, k}, "ll");
    r.add(-0.5 * m1 * A1, "A", {k}, "l").add(-0.5 * m2 * B2, "A_tilde", {k}, "l");
    sys.add_row(r, "Eq. (19)");
  }
  {
    RowBuilder r(L);
    for (int l = 0; l < 4; ++l) r.add(2.0 * I * p.d_upper(l), "A", {l}, "l");
    r.add(2.0 * m1 * B1, "phi", {}, "").add(2.0 * m2 * B2, "phi_tilde", {}, "");
    sys.add_row(r, "Eq. (20)");
  }
  for (int t = 0; t < 4; ++t) {
    RowBuilder r(L);
    for (int m = 0; m < 4; ++m)
      for (int l = 0; l < 4; ++l)
        for (int k = 0; k < 4; ++k) {
          const int e = levi_civita_upper(m, l, k, t);
          if (e != 0) r.add(-I * static_cast<double>(e) * p.d_lower(m), "F", {l, k}, "ll");
        }
    r.add(-m2 * A2, "A", {t}, "u").add(-m1 * B1, "A_tilde", {t}, "u");
    sys.add_row(r, "Eq. (21)");
  }
  {
    RowBuilder r(L);
    r.add(m1 * B1, "phi_tilde", {}, "").add(m2 * B2, "phi", {}, "");
    sys.add_row(r, "Eq. (22)");
  }
  return sys;
}

LinearSystem sign_variant_multispinor_system(double m1, double m2, const SignVariantCoeffs& v,
                                             const Momentum& p) {
  const auto& alg = dirac_algebra();
  const auto e = spin1_expansion(alg.exact, alg.exact_R);
  const Eigen::Matrix4cd o = alg.slash(lowered(p)) + (m1 * v.A1) * alg.identity + (m2 * v.A2) * alg.gamma5;
  const Eigen::Matrix4cd n = (m1 * v.B1) * alg.identity + (m2 * v.B2) * alg.gamma5;
  std::array<Eigen::Matrix4cd, 16> first, second;
  for (std::size_t k = 0; k < 16; ++k) {
    if (in_symmetric_part(k)) {
      first[k] = o * e[k];
      second[k] = e[k] * o.transpose();
    } else {
      first[k] = n * e[k];
      second[k] = -e[k] * n.transpose();
    }
  }
  LinearSystem sys(spin1_layout().labels());
  add_matrix_rows(sys, first, "Eq. (16)");
  add_matrix_rows(sys, second, "Eq. (17)");
  return sys;
}

VariantClasses classify_sign_variants(double m1, double m2, const std::vector<Momentum>& momenta) {
  const auto variants = enumerate_sign_variants();
  std::vector<std::vector<LinearSystem>> systems(variants.size());
  for (std::size_t i = 0; i < variants.size(); ++i)
    for (const auto& p : momenta) systems[i].push_back(derive_sign_variant_system(m1, m2, variants[i], p));

  VariantClasses out;
  for (std::size_t i = 0; i < variants.size(); ++i) {
    bool placed = false;
    for (auto& cls : out.classes) {
      const std::size_t rep = cls.front();
      bool same = true;
      for (std::size_t k = 0; k < momenta.size() && same; ++k) same = equivalent(systems[i][k], systems[rep][k]);
      if (same) {
        cls.push_back(i);
        placed = true;
        break;
      }
    }
    if (!placed) out.classes.push_back({i});
  }
  return out;
}

}  // namespace bw

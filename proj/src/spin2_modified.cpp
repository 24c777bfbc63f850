#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "bw/spin2.hpp"

namespace bw {

namespace {

constexpr cd kI{0.0, 1.0};

void require_mass(double m) {
  if (!(m > 0.0)) throw std::invalid_argument("spin-2 construction needs m > 0");
}

int eu(int a, int b, int c, int d) { return levi_civita_upper(a, b, c, d); }
int el(int a, int b, int c, int d) { return levi_civita_lower(a, b, c, d); }

const char* ec_display(int ec) {
  static constexpr std::array<const char*, 14> table{
      "Eq. (50)", "Eq. (50)", "Eq. (50)", "Eq. (51)", "Eq. (51)", "Eq. (52)", "Eq. (53)",
      "Eq. (54)", "Eq. (55)", "Eq. (56)", "Eq. (57)", "Eq. (58)", "Eq. (59)", "Eq. (60)"};
  return table.at(static_cast<std::size_t>(ec - 1));
}

std::string ec_tag(int ec) { return std::string(ec_display(ec)) + " ess." + std::to_string(ec); }

}  // namespace

LinearSystem modified_spin2_dynamics(const ModifiedCoeffs& c, double m, const Momentum& p) {
  require_mass(m);
  const Layout& L = spin2_layout();
  LinearSystem sys(L.labels());
  const cd a1 = c.a(1), a2 = c.a(2), a3 = c.a(3);
  auto b = [&c](int j) { return c.b(j); };
  auto D = [&p](int i) { return p.d_lower(i); };
  auto Du = [&p](int i) { return p.d_upper(i); };

  for (int k = 0; k < 4; ++k)
    for (int mu = 0; mu < 4; ++mu) {
      RowBuilder r(L);
      for (int nu = 0; nu < 4; ++nu) r.add(2.0 * a2 * b(4) / m * D(nu), "T", {k, mu, nu}, "luu");
      for (int nu = 0; nu < 4; ++nu)
        for (int x = 0; x < 4; ++x)
          for (int y = 0; y < 4; ++y)
            if (const int e = eu(mu, nu, x, y))
              r.add(kI * a3 * b(7) / m * double(e) * D(nu), "T_tilde", {k, x, y}, "lll");
      r.add(-a1 * b(1), "G", {k, mu}, "lu");
      sys.add_row(r, "Eq. (46)");
    }

  for (const auto& [k, t] : kPairs)
    for (int mu = 0; mu < 4; ++mu) {
      RowBuilder r(L);
      for (int nu = 0; nu < 4; ++nu) r.add(2.0 * a2 * b(5) / m * D(nu), "R", {k, t, mu, nu}, "lluu");
      for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y)
          for (int nu = 0; nu < 4; ++nu) {
            if (const int e = el(x, y, k, t))
              r.add(kI * a2 * b(6) / m * double(e) * D(nu), "R_tilde", {x, y, mu, nu}, "uuuu");
            if (const int e = eu(mu, nu, x, y))
              r.add(kI * a3 * b(8) / m * double(e) * D(nu), "D_tilde", {k, t, x, y}, "llll");
          }
      for (int nu = 0; nu < 4; ++nu)
        for (int x = 0; x < 4; ++x)
          for (int y = 0; y < 4; ++y) {
            const int e1 = eu(mu, nu, x, y);
            if (e1 == 0) continue;
            for (int l = 0; l < 4; ++l)
              for (int d = 0; d < 4; ++d)
                if (const int e2 = el(l, d, k, t))
                  r.add(-a3 * b(9) / (2.0 * m) * double(e1 * e2) * D(nu), "D", {l, d, x, y}, "uull");
          }
      r.add(-a1 * b(2), "F", {k, t, mu}, "llu");
      for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y)
          if (const int e = el(x, y, k, t)) r.add(-kI * a1 * b(3) / 2.0 * double(e), "F_tilde", {x, y, mu}, "uuu");
      sys.add_row(r, "Eq. (47)");
    }

  for (int k = 0; k < 4; ++k)
    for (const auto& [mu, nu] : kPairs) {
      RowBuilder r(L);
      r.add(2.0 * a2 * b(4), "T", {k, mu, nu}, "luu");
      for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y)
          if (const int e = eu(x, y, mu, nu)) r.add(kI * a3 * b(7) * double(e), "T_tilde", {k, x, y}, "lll");
      r.add(-a1 * b(1) / m * Du(mu), "G", {k, nu}, "lu").add(a1 * b(1) / m * Du(nu), "G", {k, mu}, "lu");
      sys.add_row(r, "Eq. (48)");
    }

  for (const auto& [k, t] : kPairs)
    for (const auto& [mu, nu] : kPairs) {
      RowBuilder r(L);
      r.add(2.0 * a2 * b(5), "R", {k, t, mu, nu}, "lluu");
      for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y) {
          if (const int e = eu(x, y, mu, nu)) r.add(kI * a3 * b(8) * double(e), "D_tilde", {k, t, x, y}, "llll");
          if (const int e = el(x, y, k, t)) r.add(kI * a2 * b(6) * double(e), "R_tilde", {x, y, mu, nu}, "uuuu");
        }
      for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y) {
          const int e1 = eu(x, y, mu, nu);
          if (e1 == 0) continue;
          for (int l = 0; l < 4; ++l)
            for (int d = 0; d < 4; ++d)
              if (const int e2 = el(l, d, k, t))
                r.add(-a3 * b(9) / 2.0 * double(e1 * e2), "D", {l, d, x, y}, "uull");
        }
      r.add(-a1 * b(2) / m * Du(mu), "F", {k, t, nu}, "llu").add(a1 * b(2) / m * Du(nu), "F", {k, t, mu}, "llu");
      for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y)
          if (const int e = el(x, y, k, t)) {
            r.add(-kI * a1 * b(3) / (2.0 * m) * double(e) * Du(mu), "F_tilde", {x, y, nu}, "uuu");
            r.add(kI * a1 * b(3) / (2.0 * m) * double(e) * Du(nu), "F_tilde", {x, y, mu}, "uuu");
          }
      sys.add_row(r, "Eq. (49)");
    }
  return sys;
}

namespace {

// Shared shape of the two mixed R/D rows with free lambda (upper) and alpha (lower).
void ec12_row(LinearSystem& sys, const Layout& L, int la, int al, std::optional<cd> g_coeff, cd s1,
              const char* x1, cd s2, const char* x2, cd y1, const char* z1, cd y2, const char* z2, int ec) {
  RowBuilder r(L);
  if (g_coeff) {
    r.add(2.0 * *g_coeff, "G", {la, al}, "ul");
    if (la == al)
      for (int mu = 0; mu < 4; ++mu) r.add(-*g_coeff, "G", {mu, mu}, "ul");
  }
  for (const auto& [s, x] : {std::pair{s1, x1}, std::pair{s2, x2}}) {
    for (int mu = 0; mu < 4; ++mu) {
      r.add(2.0 * s, x, {la, mu, mu, al}, "uull");
      r.add(2.0 * s, x, {al, mu, mu, la}, "lluu");
    }
    if (la == al)
      for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) r.add(s, x, {mu, nu, mu, nu}, "uull");
  }
  for (const auto& [y, z] : {std::pair{y1, z1}, std::pair{y2, z2}}) {
    for (int k = 0; k < 4; ++k)
      for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu)
          if (const double e = levi_civita("lluu", k, al, mu, nu); e != 0.0) r.add(y * e, z, {k, la, mu, nu}, "uull");
    for (int k = 0; k < 4; ++k)
      for (int t = 0; t < 4; ++t)
        for (int mu = 0; mu < 4; ++mu)
          if (const int e = eu(k, t, mu, la)) r.add(-y * double(e), z, {k, t, mu, al}, "llll");
  }
  sys.add_nonzero_row(r, ec_tag(ec));
}

}  // namespace

LinearSystem modified_spin2_constraints(const ModifiedCoeffs& c) {
  const Layout& L = spin2_layout();
  LinearSystem sys(L.labels());
  const cd a1 = c.a(1), a2 = c.a(2), a3 = c.a(3);
  auto b = [&c](int j) { return c.b(j); };
  auto emit = [&sys](const RowBuilder& r, int ec) { sys.add_nonzero_row(r, ec_tag(ec)); };

  {
    RowBuilder r(L);
    for (int mu = 0; mu < 4; ++mu) r.add(a1 * b(1), "G", {mu, mu}, "ul");
    emit(r, 1);
  }
  for (const auto& [k, mu] : kPairs) {
    RowBuilder r(L);
    r.add(a1 * b(1), "G", {k, mu}, "ll").add(-a1 * b(1), "G", {mu, k}, "ll");
    emit(r, 2);
  }
  for (int al = 0; al < 4; ++al) {
    auto eps_row = [&](RowBuilder& r, cd coeff, const char* name) {
      for (int k = 0; k < 4; ++k)
        for (int t = 0; t < 4; ++t)
          for (int mu = 0; mu < 4; ++mu)
            if (const double e = levi_civita("uuul", k, t, mu, al); e != 0.0)
              r.add(coeff * e, name, {k, t, mu}, "lll");
    };
    RowBuilder r3(L), r4(L), r5(L), r6(L);
    for (int mu = 0; mu < 4; ++mu) {
      r3.add(2.0 * kI * a1 * b(2), "F", {al, mu, mu}, "llu");
      r4.add(2.0 * kI * a1 * b(3), "F_tilde", {al, mu, mu}, "llu");
      r5.add(2.0 * kI * a2 * b(4), "T", {mu, mu, al}, "ull");
      r6.add(2.0 * kI * a3 * b(7), "T_tilde", {mu, mu, al}, "ull");
    }
    eps_row(r3, a1 * b(3), "F_tilde");
    eps_row(r4, a1 * b(2), "F");
    eps_row(r5, -a3 * b(7), "T_tilde");
    eps_row(r6, -a2 * b(4), "T");
    emit(r3, 3);
    emit(r4, 4);
    emit(r5, 5);
    emit(r6, 6);
  }

  {
    RowBuilder r7(L), r8(L);
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu)
        for (int k = 0; k < 4; ++k)
          for (int t = 0; t < 4; ++t)
            if (const int e = eu(mu, nu, k, t)) {
              r7.add(kI * double(e) * a2 * b(6), "R_tilde", {k, t, mu, nu}, "llll");
              r7.add(kI * double(e) * a3 * b(8), "D_tilde", {k, t, mu, nu}, "llll");
              r8.add(kI * double(e) * a2 * b(5), "R", {k, t, mu, nu}, "llll");
              r8.add(kI * double(e) * a3 * b(9), "D", {k, t, mu, nu}, "llll");
            }
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu) {
        r7.add(2.0 * a2 * b(5), "R", {mu, nu, mu, nu}, "uull").add(2.0 * a3 * b(9), "D", {mu, nu, mu, nu}, "uull");
        r8.add(2.0 * a2 * b(6), "R_tilde", {mu, nu, mu, nu}, "uull")
            .add(2.0 * a3 * b(8), "D_tilde", {mu, nu, mu, nu}, "uull");
      }
    emit(r7, 7);
    emit(r8, 8);
  }

  for (int be = 0; be < 4; ++be)
    for (int al = 0; al < 4; ++al) {
      RowBuilder r(L);
      for (int mu = 0; mu < 4; ++mu) {
        r.add(2.0 * kI * a2 * b(5), "R", {be, mu, mu, al}, "lluu");
        r.add(2.0 * kI * a3 * b(9), "D", {be, mu, mu, al}, "lluu");
      }
      for (int nu = 0; nu < 4; ++nu)
        for (int la = 0; la < 4; ++la)
          for (int mu = 0; mu < 4; ++mu)
            if (const double e = levi_civita("uull", nu, al, la, be); e != 0.0) {
              r.add(a2 * b(6) * e, "R_tilde", {la, mu, mu, nu}, "uull");
              r.add(a3 * b(8) * e, "D_tilde", {la, mu, mu, nu}, "uull");
            }
      emit(r, 9);
    }

  for (int la = 0; la < 4; ++la) {
    RowBuilder r10(L), r11(L);
    for (int mu = 0; mu < 4; ++mu) {
      r10.add(2.0 * kI * a1 * b(2), "F", {la, mu, mu}, "uul").add(-2.0 * kI * a2 * b(4), "T", {mu, mu, la}, "luu");
      r11.add(2.0 * kI * a1 * b(3), "F_tilde", {la, mu, mu}, "uul")
          .add(-2.0 * kI * a3 * b(7), "T_tilde", {mu, mu, la}, "luu");
    }
    for (int k = 0; k < 4; ++k)
      for (int t = 0; t < 4; ++t)
        for (int mu = 0; mu < 4; ++mu)
          if (const int e = eu(k, t, mu, la)) {
            r10.add(a1 * b(3) * double(e), "F_tilde", {k, t, mu}, "lll").add(a3 * b(7) * double(e), "T_tilde", {k, t, mu}, "lll");
            r11.add(a1 * b(2) * double(e), "F", {k, t, mu}, "lll").add(a2 * b(4) * double(e), "T", {k, t, mu}, "lll");
          }
    emit(r10, 10);
    emit(r11, 11);
  }

  for (int la = 0; la < 4; ++la)
    for (int al = 0; al < 4; ++al) {
      ec12_row(sys, L, la, al, a1 * b(1), -2.0 * a2 * b(5), "R", 2.0 * a3 * b(9), "D", 2.0 * kI * a3 * b(8),
               "D_tilde", -2.0 * kI * a2 * b(6), "R_tilde", 12);
      ec12_row(sys, L, la, al, std::nullopt, 2.0 * a3 * b(8), "D_tilde", -2.0 * a2 * b(6), "R_tilde",
               2.0 * kI * a3 * b(9), "D", -2.0 * kI * a2 * b(5), "R", 13);
    }

  for (int al = 0; al < 4; ++al)
    for (int be = 0; be < 4; ++be)
      for (int la = 0; la < 4; ++la) {
        RowBuilder r(L);
        cd k1 = a1 * b(2);
        r.add(k1, "F", {al, be, la}, "uuu").add(-2.0 * k1, "F", {be, la, al}, "uuu");
        for (int mu = 0; mu < 4; ++mu) {
          if (la == al) r.add(k1 * eta(la), "F", {be, mu, mu}, "uul");
          if (la == be) r.add(-k1 * eta(la), "F", {al, mu, mu}, "uul");
        }
        k1 = -a2 * b(4);
        r.add(k1, "T", {la, al, be}, "uuu").add(-2.0 * k1, "T", {be, la, al}, "uuu");
        for (int mu = 0; mu < 4; ++mu) {
          if (la == be) r.add(k1 * eta(la), "T", {mu, mu, al}, "luu");
          if (la == al) r.add(-k1 * eta(la), "T", {mu, mu, be}, "luu");
        }
        k1 = 0.5 * kI * a1 * b(3);
        for (int k = 0; k < 4; ++k)
          for (int t = 0; t < 4; ++t)
            if (const int e = eu(k, t, al, be)) r.add(k1 * double(e), "F_tilde", {k, t, la}, "llu");
        for (int k = 0; k < 4; ++k)
          for (int mu = 0; mu < 4; ++mu) {
            if (const int e = eu(la, k, al, be)) r.add(2.0 * k1 * double(e), "F_tilde", {k, mu, mu}, "llu");
            if (const int e = eu(mu, k, al, be)) r.add(2.0 * k1 * double(e), "F_tilde", {la, k, mu}, "ull");
          }
        k1 = -0.5 * kI * a3 * b(7);
        for (int mu = 0; mu < 4; ++mu)
          for (int nu = 0; nu < 4; ++nu) {
            if (const int e = eu(mu, nu, al, be)) r.add(k1 * double(e), "T_tilde", {la, mu, nu}, "ull");
            if (const int e = eu(nu, la, al, be)) r.add(2.0 * k1 * double(e), "T_tilde", {mu, mu, nu}, "ull");
          }
        for (int mu = 0; mu < 4; ++mu)
          for (int k = 0; k < 4; ++k)
            if (const int e = eu(mu, k, al, be)) r.add(2.0 * k1 * double(e), "T_tilde", {k, mu, la}, "llu");
        emit(r, 14);
      }
  return sys;
}

Spin2System modified_spin2_system(const ModifiedCoeffs& coeffs, double m, const Momentum& p) {
  Spin2System s;
  s.dynamical = modified_spin2_dynamics(coeffs, m, p);
  s.constraints = modified_spin2_constraints(coeffs);
  s.combined = s.dynamical.stacked(s.constraints);
  return s;
}

ModifiedCoeffs specialize_to_standard(const ModifiedCoeffs&) { return ModifiedCoeffs::standard(); }

RecoveryResult recovery_check(const ModifiedCoeffs& coeffs, double m, const std::vector<Momentum>& momenta) {
  const auto& labels = spin2_layout().labels();
  RecoveryResult out;
  for (const auto& p : momenta) {
    const Spin2System mod = modified_spin2_system(coeffs, m, p);
    const Spin2System std_sys = standard_spin2_system(m, p);
    if (!equivalent(mod.dynamical, std_sys.dynamical.embedded(labels))) ++out.dynamics_mismatches;
    if (!equivalent(mod.combined, std_sys.combined.embedded(labels))) ++out.combined_mismatches;
  }
  out.recovered = out.dynamics_mismatches == 0 && out.combined_mismatches == 0;
  return out;
}

namespace {

const Layout& g_equation_layout() {
  static const Layout layout = [] {
    Layout l;
    l.add("G", BlockKind::vector_vector, "lu").add("F_aux", BlockKind::vector, "l");
    return l;
  }();
  return layout;
}

const Layout& g_only_layout() {
  static const Layout layout = [] {
    Layout l;
    l.add("G", BlockKind::vector_vector, "lu");
    return l;
  }();
  return layout;
}

void require_g_preconditions(const ModifiedCoeffs& c, double m) {
  require_mass(m);
  if (c.a(1) == cd(0) || c.b(1) == cd(0))
    throw std::invalid_argument("second-order G equation needs alpha_1 != 0 and beta_1 != 0");
}

// (1/m^2)(-p_nu p^mu G_k^nu + p^2 G_k^mu) - G_k^mu, one row per (k, mu).
void add_second_order_rows(LinearSystem& sys, const Layout& L, double m, const Momentum& p) {
  const double m2 = m * m;
  for (int k = 0; k < 4; ++k)
    for (int mu = 0; mu < 4; ++mu) {
      RowBuilder r(L);
      for (int nu = 0; nu < 4; ++nu) r.add(-p.lower(nu) * p.upper(mu) / m2, "G", {k, nu}, "lu");
      r.add(p.p2() / m2 - 1.0, "G", {k, mu}, "lu");
      sys.add_row(r, "Eq. (61)");
    }
}

void add_symmetric_traceless_rows(LinearSystem& sys, const Layout& L) {
  RowBuilder tr(L);
  for (int mu = 0; mu < 4; ++mu) tr.add(1.0, "G", {mu, mu}, "lu");
  sys.add_row(tr, "Eq. (50)");
  for (const auto& [k, mu] : kPairs) {
    RowBuilder r(L);
    r.add(1.0, "G", {k, mu}, "ll").add(-1.0, "G", {mu, k}, "ll");
    sys.add_row(r, "Eq. (50)");
  }
}

}  // namespace

LinearSystem derive_G_equation(const ModifiedCoeffs& coeffs, double m, const Momentum& p) {
  require_g_preconditions(coeffs, m);
  const Layout& L = g_equation_layout();
  LinearSystem sys(L.labels());
  add_second_order_rows(sys, L, m, p);
  for (int nu = 0; nu < 4; ++nu) {
    RowBuilder r(L);
    for (int mu = 0; mu < 4; ++mu) r.add(-kI * p.lower(mu), "G", {mu, nu}, "ul");
    r.add(-1.0, "F_aux", {nu}, "l");
    sys.add_row(r, "Eq. (62)");
  }
  RowBuilder div(L);
  for (int nu = 0; nu < 4; ++nu) div.add(-kI * p.upper(nu) / (m * m), "F_aux", {nu}, "l");
  sys.add_row(div, "Eq. (63)");
  return sys;
}

LinearSystem second_order_G_rows(const ModifiedCoeffs& coeffs, double m, const Momentum& p) {
  require_g_preconditions(coeffs, m);
  const Layout& L = spin2_layout();
  LinearSystem sys(L.labels());
  add_second_order_rows(sys, L, m, p);
  return sys;
}

double divergence_pair_residual(const ModifiedCoeffs& coeffs, double m, const Momentum& p) {
  const LinearSystem full = derive_G_equation(coeffs, m, p);
  LinearSystem sym(full.unknowns());
  add_symmetric_traceless_rows(sym, g_equation_layout());
  std::vector<std::size_t> keep, last;
  for (std::size_t i = 0; i < full.rows(); ++i) (full.provenance(i) == "Eq. (63)" ? last : keep).push_back(i);
  const Eigen::MatrixXcd basis = nullspace(full.select_rows(keep).stacked(sym));
  const LinearSystem div = full.select_rows(last);
  double worst = 0.0;
  for (Eigen::Index j = 0; j < basis.cols(); ++j) worst = std::max(worst, residual(div, basis.col(j)));
  return worst;
}

namespace {

Eigen::MatrixXcd transverse_traceless_basis(const Momentum& p) {
  const Layout& L = g_only_layout();
  LinearSystem cons(L.labels());
  add_symmetric_traceless_rows(cons, L);
  for (int nu = 0; nu < 4; ++nu) {
    RowBuilder r(L);
    for (int mu = 0; mu < 4; ++mu) r.add(p.lower(mu), "G", {mu, nu}, "uu");
    cons.add_row(r, "plumbing");
  }
  return nullspace(cons);
}

Eigen::MatrixXcd second_order_matrix(double m, const Momentum& p) {
  const Layout& L = g_only_layout();
  LinearSystem sys(L.labels());
  add_second_order_rows(sys, L, m, p);
  return sys.matrix();
}

}  // namespace

double transverse_traceless_deviation(const ModifiedCoeffs& coeffs, double m, const Momentum& p) {
  require_g_preconditions(coeffs, m);
  const Eigen::MatrixXcd basis = transverse_traceless_basis(p);
  const Eigen::MatrixXcd ops = second_order_matrix(m, p);
  const cd factor = (p.p2() - m * m) / (m * m);
  // Row (k, mu) and column G_k^mu share the index 4k + mu.
  return basis.cols() == 0 ? 0.0 : (ops * basis - factor * basis).cwiseAbs().maxCoeff();
}

double transverse_traceless_residual(const ModifiedCoeffs& coeffs, double m, const Momentum& p) {
  require_g_preconditions(coeffs, m);
  const Eigen::MatrixXcd basis = transverse_traceless_basis(p);
  return basis.cols() == 0 ? 0.0 : (second_order_matrix(m, p) * basis).cwiseAbs().maxCoeff();
}

}  // namespace bw

#include "bw/spin2.hpp"

#include <stdexcept>

#include "bw/clifford.hpp"

namespace bw {

namespace {

void require_mass(double m) {
  if (!(m > 0.0)) throw std::invalid_argument("spin-2 construction needs m > 0");
}

std::array<cd, 4> lowered(const Momentum& p) { return {p.lower(0), p.lower(1), p.lower(2), p.lower(3)}; }

}  // namespace

LinearSystem standard_spin2_dynamics(double m, const Momentum& p) {
  require_mass(m);
  const Layout& L = spin2_standard_layout();
  LinearSystem sys(L.labels());

  for (int k = 0; k < 4; ++k)
    for (int nu = 0; nu < 4; ++nu) {
      RowBuilder r(L);
      for (int mu = 0; mu < 4; ++mu) r.add(2.0 / m * p.d_lower(mu), "T", {k, mu, nu}, "luu");
      r.add(1.0, "G", {k, nu}, "lu");
      sys.add_row(r, "Eq. (30)");
    }
  for (const auto& [k, t] : kPairs)
    for (int nu = 0; nu < 4; ++nu) {
      RowBuilder r(L);
      for (int mu = 0; mu < 4; ++mu) r.add(2.0 / m * p.d_lower(mu), "R", {k, t, mu, nu}, "lluu");
      r.add(1.0, "F", {k, t, nu}, "llu");
      sys.add_row(r, "Eq. (30)");
    }
  for (int k = 0; k < 4; ++k)
    for (const auto& [mu, nu] : kPairs) {
      RowBuilder r(L);
      r.add(1.0, "T", {k, mu, nu}, "luu")
          .add(-p.d_upper(mu) / (2.0 * m), "G", {k, nu}, "lu")
          .add(p.d_upper(nu) / (2.0 * m), "G", {k, mu}, "lu");
      sys.add_row(r, "Eq. (31)");
    }
  for (const auto& [k, t] : kPairs)
    for (const auto& [mu, nu] : kPairs) {
      RowBuilder r(L);
      r.add(1.0, "R", {k, t, mu, nu}, "lluu")
          .add(-p.d_upper(mu) / (2.0 * m), "F", {k, t, nu}, "llu")
          .add(p.d_upper(nu) / (2.0 * m), "F", {k, t, mu}, "llu");
      sys.add_row(r, "Eq. (32)");
    }

  for (int k = 0; k < 4; ++k) {
    RowBuilder r(L);
    for (int mu = 0; mu < 4; ++mu) r.add(p.d_lower(mu) / m, "G", {k, mu}, "lu");
    sys.add_row(r, "Eq. (33)");
  }
  for (const auto& [k, t] : kPairs) {
    RowBuilder r(L);
    for (int mu = 0; mu < 4; ++mu) r.add(p.d_lower(mu) / m, "F", {k, t, mu}, "llu");
    sys.add_row(r, "Eq. (33)");
  }
  for (int k = 0; k < 4; ++k)
    for (int mu = 0; mu < 4; ++mu) {
      RowBuilder r(L);
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
          for (int c = 0; c < 4; ++c) {
            const int e = levi_civita_lower(a, b, c, mu);
            if (e != 0) r.add(static_cast<double>(e) * p.d_upper(a) / m, "T", {k, b, c}, "luu");
          }
      sys.add_row(r, "Eq. (34)");
    }
  for (const auto& [k, t] : kPairs)
    for (int mu = 0; mu < 4; ++mu) {
      RowBuilder r(L);
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
          for (int c = 0; c < 4; ++c) {
            const int e = levi_civita_lower(a, b, c, mu);
            if (e != 0) r.add(static_cast<double>(e) * p.d_upper(a) / m, "R", {k, t, b, c}, "lluu");
          }
      sys.add_row(r, "Eq. (34)");
    }
  return sys;
}

LinearSystem standard_spin2_constraints() {
  const Layout& L = spin2_standard_layout();
  LinearSystem sys(L.labels());
  auto emit = [&sys](const RowBuilder& r, const char* prov) { sys.add_nonzero_row(r, prov); };

  {
    RowBuilder r(L);
    for (int mu = 0; mu < 4; ++mu) r.add(1.0, "G", {mu, mu}, "lu");
    emit(r, "Eq. (35)");
  }
  for (const auto& [k, mu] : kPairs) {
    RowBuilder r(L);
    r.add(1.0, "G", {k, mu}, "ll").add(-1.0, "G", {mu, k}, "ll");
    emit(r, "Eq. (35)");
  }
  for (int k = 0; k < 4; ++k)
    for (int mu = 0; mu < 4; ++mu) {
      RowBuilder r(L);
      r.add(1.0, "G", {k, mu}, "uu");
      if (k == mu)
        for (int nu = 0; nu < 4; ++nu) r.add(-0.5 * eta(k), "G", {nu, nu}, "lu");
      emit(r, "Eq. (35)");
    }

  for (int k = 0; k < 4; ++k) {
    RowBuilder a(L), b(L);
    for (int mu = 0; mu < 4; ++mu) {
      a.add(1.0, "F", {k, mu, mu}, "llu");
      b.add(1.0, "F", {mu, k, mu}, "llu");
    }
    emit(a, "Eq. (36)");
    emit(b, "Eq. (36)");
  }
  for (int nu = 0; nu < 4; ++nu) {
    RowBuilder r(L);
    for (int k = 0; k < 4; ++k)
      for (int t = 0; t < 4; ++t)
        for (int mu = 0; mu < 4; ++mu) {
          const int e = levi_civita_upper(k, t, mu, nu);
          if (e != 0) r.add(static_cast<double>(e), "F", {k, t, mu}, "lll");
        }
    emit(r, "Eq. (36)");
  }

  for (int k = 0; k < 4; ++k) {
    RowBuilder a(L), b(L);
    for (int mu = 0; mu < 4; ++mu) {
      a.add(1.0, "T", {mu, mu, k}, "ull");
      b.add(1.0, "T", {mu, k, mu}, "ull");
    }
    emit(a, "Eq. (37)");
    emit(b, "Eq. (37)");
  }
  for (int nu = 0; nu < 4; ++nu) {
    RowBuilder r(L);
    for (int k = 0; k < 4; ++k)
      for (int t = 0; t < 4; ++t)
        for (int mu = 0; mu < 4; ++mu) {
          const int e = levi_civita_upper(k, t, mu, nu);
          if (e != 0) r.add(static_cast<double>(e), "T", {k, t, mu}, "lll");
        }
    emit(r, "Eq. (37)");
  }

  for (const auto& [k, t] : kPairs)
    for (int mu = 0; mu < 4; ++mu) {
      RowBuilder r(L);
      r.add(1.0, "F", {k, t, mu}, "uuu").add(-1.0, "T", {mu, k, t}, "uuu");
      emit(r, "Eq. (38)");
    }
  for (int la = 0; la < 4; ++la) {
    RowBuilder r(L);
    for (int k = 0; k < 4; ++k)
      for (int t = 0; t < 4; ++t)
        for (int mu = 0; mu < 4; ++mu) {
          const int e = levi_civita_upper(k, t, mu, la);
          if (e == 0) continue;
          r.add(static_cast<double>(e), "F", {k, t, mu}, "lll");
          r.add(static_cast<double>(e), "T", {k, t, mu}, "lll");
        }
    emit(r, "Eq. (38)");
  }

  for (int k = 0; k < 4; ++k)
    for (int mu = 0; mu < 4; ++mu) {
      RowBuilder t1(L), t2(L), t3(L), t4(L);
      for (int nu = 0; nu < 4; ++nu) {
        t1.add(1.0, "R", {k, nu, mu, nu}, "lluu");
        t2.add(1.0, "R", {nu, k, mu, nu}, "lluu");
        t3.add(1.0, "R", {k, nu, nu, mu}, "lluu");
        t4.add(1.0, "R", {nu, k, nu, mu}, "lluu");
      }
      emit(t1, "Eq. (39)");
      emit(t2, "Eq. (39)");
      emit(t3, "Eq. (39)");
      emit(t4, "Eq. (39)");
    }
  {
    RowBuilder r(L);
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu) r.add(1.0, "R", {mu, nu, mu, nu}, "lluu");
    emit(r, "Eq. (39)");
  }

  for (int k = 0; k < 4; ++k)
    for (int t = 0; t < 4; ++t) {
      RowBuilder r(L);
      for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu)
          for (int al = 0; al < 4; ++al)
            for (int be = 0; be < 4; ++be) {
              const int e = levi_civita_upper(mu, nu, al, be);
              if (e == 0) continue;
              if (be == k) r.add(e * eta(k), "R", {mu, t, nu, al}, "llll");
              if (be == t) r.add(-e * eta(t), "R", {nu, al, mu, k}, "llll");
            }
      emit(r, "Eq. (40)");
    }
  {
    RowBuilder r(L);
    for (int k = 0; k < 4; ++k)
      for (int t = 0; t < 4; ++t)
        for (int mu = 0; mu < 4; ++mu)
          for (int nu = 0; nu < 4; ++nu) {
            const int e = levi_civita_upper(k, t, mu, nu);
            if (e != 0) r.add(static_cast<double>(e), "R", {k, t, mu, nu}, "llll");
          }
    emit(r, "Eq. (40)");
  }
  return sys;
}

Spin2System standard_spin2_system(double m, const Momentum& p) {
  Spin2System s;
  s.dynamical = standard_spin2_dynamics(m, p);
  s.constraints = standard_spin2_constraints();
  s.combined = s.dynamical.stacked(s.constraints);
  return s;
}

namespace {

// Entry (a,b,c,d) of the packed multispinor for unit component j.
inline cd packed(const Eigen::MatrixXcd& map, int a, int b, int c, int d, Eigen::Index j) {
  return map(64 * a + 16 * b + 4 * c + d, j);
}

}  // namespace

LinearSystem contraction_constraints(const ModifiedCoeffs& coeffs) {
  const auto& alg = dirac_algebra();
  const Spin2Codec codec(coeffs, alg.exact, alg.exact_R);
  const Eigen::MatrixXcd& map = codec.matrix();

  std::vector<Eigen::Matrix4cd> xs{alg.R_inverse, alg.R_inverse * alg.gamma5};
  for (int l = 0; l < 4; ++l) xs.push_back(alg.R_inverse * alg.gamma5 * alg.gamma[static_cast<std::size_t>(l)]);

  LinearSystem sys(spin2_layout().labels());
  for (const auto& x : xs)
    for (int a = 0; a < 4; ++a)
      for (int d = 0; d < 4; ++d) {
        std::vector<cd> row(256);
        for (Eigen::Index j = 0; j < 256; ++j) {
          cd s = 0;
          for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
              if (x(b, c) != cd(0)) s += packed(map, a, b, c, d, j) * x(b, c);
          row[static_cast<std::size_t>(j)] = s;
        }
        sys.add_row(std::move(row), "plumbing");
      }
  return sys;
}

namespace {

// [gamma.p - m] applied on spinor slot `slot` of the packed function.
void add_dirac_rows(LinearSystem& sys, const Eigen::MatrixXcd& map, const Eigen::Matrix4cd& o, int slot,
                    const char* prov) {
  static constexpr std::array<int, 4> stride{64, 16, 4, 1};
  const int st = stride[static_cast<std::size_t>(slot)];
  for (int flat = 0; flat < 256; ++flat) {
    const int x = (flat / st) % 4;
    const int base = flat - x * st;
    std::vector<cd> row(256);
    for (Eigen::Index j = 0; j < 256; ++j) {
      cd s = 0;
      for (int a = 0; a < 4; ++a)
        if (o(x, a) != cd(0)) s += o(x, a) * map(base + a * st, j);
      row[static_cast<std::size_t>(j)] = s;
    }
    sys.add_row(std::move(row), prov);
  }
}

}  // namespace

LinearSystem first_pair_dirac_system(const ModifiedCoeffs& coeffs, double m, const Momentum& p) {
  require_mass(m);
  const auto& alg = dirac_algebra();
  const Spin2Codec codec(coeffs, alg.exact, alg.exact_R);
  const Eigen::Matrix4cd o = alg.slash(lowered(p)) - m * alg.identity;
  LinearSystem sys(spin2_layout().labels());
  add_dirac_rows(sys, codec.matrix(), o, 0, "Eq. (23)");
  add_dirac_rows(sys, codec.matrix(), o, 1, "Eq. (23)");
  return sys;
}

LinearSystem all_pair_dirac_system(const ModifiedCoeffs& coeffs, double m, const Momentum& p) {
  require_mass(m);
  const auto& alg = dirac_algebra();
  const Spin2Codec codec(coeffs, alg.exact, alg.exact_R);
  const Eigen::Matrix4cd o = alg.slash(lowered(p)) - m * alg.identity;
  LinearSystem sys(spin2_layout().labels());
  add_dirac_rows(sys, codec.matrix(), o, 0, "Eq. (23)");
  add_dirac_rows(sys, codec.matrix(), o, 1, "Eq. (23)");
  add_dirac_rows(sys, codec.matrix(), o, 2, "Eq. (24)");
  add_dirac_rows(sys, codec.matrix(), o, 3, "Eq. (24)");
  return sys;
}

TrivialityReport verify_triviality(double m, const Momentum& p, bool ablation) {
  const Spin2System s = standard_spin2_system(m, p);
  TrivialityReport rep;
  rep.nullspace_dim = nullity(s.combined);

  // Greedy: keep a constraint row only if it leaves the current rowspace.
  // The rowspace is tracked by an orthonormal basis (rows of q), extended by
  // Gram-Schmidt; a normalized row counts as new when its residual exceeds 1e-8.
  const Eigen::MatrixXcd dyn = normalized_rows(s.dynamical.matrix());
  const Eigen::MatrixXcd start = nullspace(dyn);
  rep.dynamics_only_dim = static_cast<std::size_t>(start.cols());
  const Eigen::Index cols = dyn.cols();
  Eigen::MatrixXcd q = nullspace(start.adjoint()).adjoint();  // rowspace of dyn
  std::size_t r = static_cast<std::size_t>(q.rows());
  const std::size_t target = s.combined.cols() - rep.nullspace_dim;
  const Eigen::MatrixXcd cons = s.constraints.matrix();
  for (Eigen::Index i = 0; i < cons.rows() && r < target; ++i) {
    const double mx = cons.row(i).cwiseAbs().maxCoeff();
    if (mx == 0.0) continue;
    Eigen::RowVectorXcd v = cons.row(i) / mx;
    for (int pass = 0; pass < 2; ++pass) v -= (v * q.adjoint()) * q;
    const double res = v.norm();
    if (res > 1e-8) {
      q.conservativeResize(q.rows() + 1, cols);
      q.row(q.rows() - 1) = v / res;
      ++r;
      rep.witness_rows.push_back(static_cast<std::size_t>(i));
      rep.witness_provenance.push_back(s.constraints.provenance(static_cast<std::size_t>(i)));
    }
  }

  if (!ablation) return rep;
  for (const auto& fam : s.constraints.provenance_set()) {
    const LinearSystem kept = s.constraints.without_provenance(fam);
    AblationEntry e;
    e.removed = fam;
    e.removed_rows = s.constraints.rows() - kept.rows();
    e.nullspace_dim = nullity(s.dynamical.stacked(kept));
    rep.ablation.push_back(e);
  }
  return rep;
}

}  // namespace bw

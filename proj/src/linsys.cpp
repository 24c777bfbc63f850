#include "bw/linsys.hpp"

#include <algorithm>
#include <complex>
#include <set>
#include <stdexcept>
#include <unordered_map>

#define lapack_complex_double std::complex<double>
#define lapack_complex_float std::complex<float>
#include <lapacke.h>

namespace bw {

LinearSystem::LinearSystem(std::vector<std::string> unknowns) : unknowns_(std::move(unknowns)) {
  std::set<std::string> seen;
  for (const auto& u : unknowns_)
    if (!seen.insert(u).second) throw std::invalid_argument("duplicate unknown label " + u);
}

void LinearSystem::add_row(std::vector<cd> coeffs, std::string provenance) {
  if (coeffs.size() != unknowns_.size()) throw std::invalid_argument("row length mismatch");
  if (provenance.empty()) throw std::invalid_argument("row provenance must be nonempty");
  rows_.push_back(std::move(coeffs));
  provenance_.push_back(std::move(provenance));
}

void LinearSystem::add_nonzero_row(const RowBuilder& row, std::string provenance) {
  if (!row.is_zero()) add_row(row.coeffs(), std::move(provenance));
}

Eigen::MatrixXcd LinearSystem::matrix() const {
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(rows_.size()), static_cast<Eigen::Index>(cols()));
  for (std::size_t r = 0; r < rows_.size(); ++r)
    for (std::size_t c = 0; c < cols(); ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows_[r][c];
  return m;
}

namespace {

std::unordered_map<std::string, std::size_t> index_of(const std::vector<std::string>& labels) {
  std::unordered_map<std::string, std::size_t> m;
  for (std::size_t i = 0; i < labels.size(); ++i) m.emplace(labels[i], i);
  return m;
}

}  // namespace

LinearSystem LinearSystem::embedded(const std::vector<std::string>& labels) const {
  LinearSystem out(labels);
  const auto where = index_of(labels);
  std::vector<long> map(cols(), -1);
  for (std::size_t c = 0; c < cols(); ++c) {
    auto it = where.find(unknowns_[c]);
    if (it != where.end()) map[c] = static_cast<long>(it->second);
  }
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    std::vector<cd> v(labels.size());
    for (std::size_t c = 0; c < cols(); ++c) {
      if (map[c] < 0) {
        if (rows_[r][c] != cd(0)) throw std::invalid_argument("embedding drops nonzero column " + unknowns_[c]);
        continue;
      }
      v[static_cast<std::size_t>(map[c])] = rows_[r][c];
    }
    out.add_row(std::move(v), provenance_[r]);
  }
  return out;
}

LinearSystem LinearSystem::restricted(const std::vector<std::string>& labels) const {
  LinearSystem out(labels);
  const auto where = index_of(unknowns_);
  std::vector<std::size_t> src;
  for (const auto& l : labels) {
    auto it = where.find(l);
    if (it == where.end()) throw std::invalid_argument("unknown label " + l);
    src.push_back(it->second);
  }
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    std::vector<cd> v(labels.size());
    for (std::size_t c = 0; c < src.size(); ++c) v[c] = rows_[r][src[c]];
    out.add_row(std::move(v), provenance_[r]);
  }
  return out;
}

LinearSystem LinearSystem::stacked(const LinearSystem& other) const {
  LinearSystem out = *this;
  const LinearSystem o = other.embedded(unknowns_);
  for (std::size_t r = 0; r < o.rows(); ++r) out.add_row(o.rows_[r], o.provenance_[r]);
  return out;
}

LinearSystem LinearSystem::select_rows(const std::vector<std::size_t>& keep) const {
  LinearSystem out(unknowns_);
  for (auto r : keep) out.add_row(rows_.at(r), provenance_.at(r));
  return out;
}

LinearSystem LinearSystem::without_provenance(const std::string& provenance) const {
  LinearSystem out(unknowns_);
  for (std::size_t r = 0; r < rows_.size(); ++r)
    if (provenance_[r] != provenance) out.add_row(rows_[r], provenance_[r]);
  return out;
}

std::vector<std::string> LinearSystem::provenance_set() const {
  std::vector<std::string> out;
  for (const auto& p : provenance_)
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  return out;
}

Eigen::MatrixXcd normalized_rows(const Eigen::MatrixXcd& m) {
  std::vector<Eigen::Index> keep;
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    if (m.row(r).cwiseAbs().maxCoeff() > 0.0) keep.push_back(r);
  Eigen::MatrixXcd out(static_cast<Eigen::Index>(keep.size()), m.cols());
  for (std::size_t k = 0; k < keep.size(); ++k) {
    const auto row = m.row(keep[k]);
    out.row(static_cast<Eigen::Index>(k)) = row / row.cwiseAbs().maxCoeff();
  }
  return out;
}

namespace {

// Rank and a unitary column basis whose first `rank` columns span the row
// space (as v -> v V V^H). Identically zero columns are split off first. The
// SVD is LAPACK's zgesvd: Eigen 3.4.0's divide-and-conquer SVD overstates the
// rank of some on-shell spin-2 systems, and its Jacobi SVD is too slow here.
struct RowspaceSplit {
  std::size_t rank = 0;
  Eigen::MatrixXcd v;
};

RowspaceSplit split_rowspace(const Eigen::MatrixXcd& n, bool want_basis) {
  const Eigen::Index cols = n.cols();
  RowspaceSplit out;
  std::vector<Eigen::Index> active, idle;
  for (Eigen::Index c = 0; c < cols; ++c)
    (n.rows() > 0 && n.col(c).cwiseAbs().maxCoeff() > 0.0 ? active : idle).push_back(c);
  const auto k = static_cast<Eigen::Index>(active.size());
  if (want_basis) out.v = Eigen::MatrixXcd::Zero(cols, cols);
  if (k > 0) {
    const Eigen::Index rows = n.rows();
    Eigen::MatrixXcd compact(rows, k);
    for (Eigen::Index j = 0; j < k; ++j) compact.col(j) = n.col(active[static_cast<std::size_t>(j)]);
    Eigen::VectorXd sv(std::min(rows, k));
    Eigen::MatrixXcd vt = want_basis ? Eigen::MatrixXcd(k, k) : Eigen::MatrixXcd(1, 1);
    std::vector<double> superb(static_cast<std::size_t>(std::max<Eigen::Index>(1, std::min(rows, k) - 1)));
    cd dummy_u;
    const lapack_int info = LAPACKE_zgesvd(LAPACK_COL_MAJOR, 'N', want_basis ? 'A' : 'N', static_cast<lapack_int>(rows),
                                           static_cast<lapack_int>(k), compact.data(), static_cast<lapack_int>(rows),
                                           sv.data(), &dummy_u, 1, vt.data(), static_cast<lapack_int>(vt.rows()),
                                           superb.data());
    if (info != 0) throw std::runtime_error("zgesvd failed with info " + std::to_string(info));
    if (sv(0) > 0.0)
      for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > kRankTolerance * sv(0)) ++out.rank;
    if (want_basis) {
      const Eigen::MatrixXcd v = vt.adjoint();
      for (Eigen::Index j = 0; j < k; ++j)
        for (Eigen::Index i = 0; i < k; ++i) out.v(active[static_cast<std::size_t>(i)], j) = v(i, j);
    }
  }
  if (want_basis)
    for (std::size_t t = 0; t < idle.size(); ++t) out.v(idle[t], k + static_cast<Eigen::Index>(t)) = 1.0;
  return out;
}

std::size_t rank_of_normalized(const Eigen::MatrixXcd& n) { return split_rowspace(n, false).rank; }

}  // namespace

std::size_t rank(const Eigen::MatrixXcd& m) { return rank_of_normalized(normalized_rows(m)); }
std::size_t rank(const LinearSystem& s) { return rank(s.matrix()); }

Eigen::MatrixXcd nullspace(const Eigen::MatrixXcd& m) {
  const RowspaceSplit sp = split_rowspace(normalized_rows(m), true);
  return sp.v.rightCols(m.cols() - static_cast<Eigen::Index>(sp.rank));
}

Eigen::MatrixXcd nullspace(const LinearSystem& s) { return nullspace(s.matrix()); }

std::size_t nullity(const LinearSystem& s) { return s.cols() - rank(s); }

namespace {

void require_same_labels(const LinearSystem& a, const LinearSystem& b) {
  auto x = a.unknowns();
  auto y = b.unknowns();
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  if (x != y) throw std::invalid_argument("systems are over different unknown label sets");
}

}  // namespace

bool equivalent(const LinearSystem& s1, const LinearSystem& s2) {
  require_same_labels(s1, s2);
  const LinearSystem b = s2.embedded(s1.unknowns());
  const std::size_t r1 = rank(s1);
  const std::size_t r2 = rank(b);
  return r1 == r2 && rank(s1.stacked(b)) == r1;
}

bool contains(const LinearSystem& big, const LinearSystem& small) {
  require_same_labels(big, small);
  return rank(big.stacked(small)) == rank(big);
}

std::vector<ImplicationCount> implied_rows(const LinearSystem& basis, const LinearSystem& candidate) {
  require_same_labels(basis, candidate);
  const LinearSystem cand = candidate.embedded(basis.unknowns());
  const Eigen::MatrixXcd n = normalized_rows(basis.matrix());
  const RowspaceSplit sp = split_rowspace(n, true);
  const Eigen::MatrixXcd q = sp.v.leftCols(static_cast<Eigen::Index>(sp.rank));
  std::vector<ImplicationCount> out;
  for (std::size_t r = 0; r < cand.rows(); ++r) {
    Eigen::RowVectorXcd v(static_cast<Eigen::Index>(cand.cols()));
    for (std::size_t c = 0; c < cand.cols(); ++c) v(static_cast<Eigen::Index>(c)) = cand.row(r)[c];
    const double mx = v.cwiseAbs().maxCoeff();
    auto it = std::find_if(out.begin(), out.end(), [&](const auto& e) { return e.provenance == cand.provenance(r); });
    if (it == out.end()) {
      out.push_back({cand.provenance(r), 0, 0});
      it = std::prev(out.end());
    }
    ++it->rows;
    if (mx == 0.0) {
      ++it->implied;
      continue;
    }
    v /= mx;
    // Rows of Q^H span the rowspace, so v Q Q^H is the projection.
    const Eigen::RowVectorXcd res = v - (v * q) * q.adjoint();
    if (res.norm() < 1e-8) ++it->implied;
  }
  return out;
}

double residual(const LinearSystem& s, const Eigen::VectorXcd& v) {
  const Eigen::MatrixXcd n = normalized_rows(s.matrix());
  if (n.rows() == 0) return 0.0;
  return (n * v).cwiseAbs().maxCoeff();
}

cd spectrum_polynomial(cd a, cd b, cd c, cd d, cd x) {
  return (d * d - b * b) * x * x - 2.0 * (a * b - c * d) * x + (c * c - a * a);
}

SpectrumResult mass_spectrum(cd a, cd b, cd c, cd d) {
  SpectrumResult out;
  const cd q2 = d * d - b * b;
  const cd q1 = -2.0 * (a * b - c * d);
  const cd q0 = c * c - a * a;
  out.coefficients = {q0, q1, q2};
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d), 1.0});
  const double zero = 1e-14 * scale * scale;
  const bool z2 = std::abs(q2) <= zero;
  const bool z1 = std::abs(q1) <= zero;
  const bool z0 = std::abs(q0) <= zero;
  if (z2 && z1 && z0) throw std::domain_error("identically degenerate: every x solves the bracket");
  if (z2 && z1) {
    out.degree = 0;
    out.no_propagating_branch = true;
    return out;
  }
  if (z2) {
    out.degree = 1;
    out.roots = {-q0 / q1};
    return out;
  }
  out.degree = 2;
  const cd disc = q1 * q1 - 4.0 * q2 * q0;
  const cd sq = std::sqrt(disc);
  // Avoid cancellation: pick the sign making |q1 + s sq| large.
  const cd big = std::abs(q1 + sq) >= std::abs(q1 - sq) ? q1 + sq : q1 - sq;
  if (std::abs(big) == 0.0) {
    out.roots = {cd(0), cd(0)};
  } else {
    const cd r1 = -big / (2.0 * q2);
    const cd r2 = -2.0 * q0 / big;
    out.roots = {r1, r2};
  }
  out.double_root = std::abs(disc) <= 1e-14 * std::max(1.0, std::abs(q1 * q1));
  std::sort(out.roots.begin(), out.roots.end(), [](cd x, cd y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  return out;
}

// Adding 0.0 folds -0.0 into +0.0 so reports do not show signed zeros.
nlohmann::json complex_to_json(cd z) { return nlohmann::json::array({z.real() + 0.0, z.imag() + 0.0}); }

nlohmann::json to_json(const LinearSystem& s) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < s.rows(); ++r) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& z : s.row(r)) coeffs.push_back(complex_to_json(z));
    rows.push_back({{"coeffs", std::move(coeffs)}, {"provenance", s.provenance(r)}});
  }
  return {{"unknowns", s.unknowns()}, {"rows", std::move(rows)}};
}

LinearSystem system_from_json(const nlohmann::json& j) {
  LinearSystem s(j.at("unknowns").get<std::vector<std::string>>());
  for (const auto& row : j.at("rows")) {
    std::vector<cd> v;
    for (const auto& z : row.at("coeffs")) v.emplace_back(z.at(0).get<double>(), z.at(1).get<double>());
    s.add_row(std::move(v), row.at("provenance").get<std::string>());
  }
  return s;
}

}  // namespace bw

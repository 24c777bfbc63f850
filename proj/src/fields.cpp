#include "bw/fields.hpp"

#include <stdexcept>

#include "bw/linsys.hpp"

namespace bw {

const Layout& spin1_layout() {
  static const Layout layout = [] {
    Layout l;
    l.add("phi", BlockKind::scalar, "")
        .add("phi_tilde", BlockKind::scalar, "")
        .add("A", BlockKind::vector, "l")
        .add("A_tilde", BlockKind::vector, "l")
        .add("F", BlockKind::pair, "ll");
    return l;
  }();
  return layout;
}

cd Spin1Components::F_at(int mu, int nu) const {
  const auto s = pair_slot(mu, nu);
  return s ? static_cast<double>(s->sign) * F[static_cast<std::size_t>(s->index)] : cd(0);
}

Eigen::VectorXcd Spin1Components::to_vector() const {
  Eigen::VectorXcd v(16);
  v(0) = phi;
  v(1) = phi_tilde;
  for (int i = 0; i < 4; ++i) {
    v(2 + i) = A[static_cast<std::size_t>(i)];
    v(6 + i) = A_tilde[static_cast<std::size_t>(i)];
  }
  for (int k = 0; k < 6; ++k) v(10 + k) = F[static_cast<std::size_t>(k)];
  return v;
}

Spin1Components Spin1Components::from_vector(const Eigen::VectorXcd& v) {
  if (v.size() != 16) throw std::invalid_argument("spin-1 component vector needs 16 entries");
  Spin1Components c;
  c.phi = v(0);
  c.phi_tilde = v(1);
  for (int i = 0; i < 4; ++i) {
    c.A[static_cast<std::size_t>(i)] = v(2 + i);
    c.A_tilde[static_cast<std::size_t>(i)] = v(6 + i);
  }
  for (int k = 0; k < 6; ++k) c.F[static_cast<std::size_t>(k)] = v(10 + k);
  return c;
}

std::array<Eigen::Matrix4cd, 16> spin1_expansion(const GammaBasis& basis, const RMatrix& R) {
  std::array<SpinMatrix, 16> m;
  m[0] = R.r;
  m[1] = basis.gamma5 * R.r;
  for (int mu = 0; mu < 4; ++mu) {
    m[2 + mu] = basis.gamma[mu] * R.r;
    m[6 + mu] = basis.gamma5 * basis.gamma[mu] * R.r;
  }
  for (std::size_t k = 0; k < 6; ++k) m[10 + k] = ExactComplex(2) * (basis.sigma[k] * R.r);
  std::array<Eigen::Matrix4cd, 16> out;
  for (std::size_t k = 0; k < 16; ++k) out[k] = to_eigen(m[k]);
  return out;
}

Multispinor2 pack_spin1(const Spin1Components& c, const GammaBasis& basis, const RMatrix& R) {
  const auto e = spin1_expansion(basis, R);
  const Eigen::VectorXcd v = c.to_vector();
  Multispinor2 psi = Multispinor2::Zero();
  for (std::size_t k = 0; k < 16; ++k) psi += v(static_cast<Eigen::Index>(k)) * e[k];
  return psi;
}

Spin1Components unpack_spin1(const Multispinor2& psi, const GammaBasis& basis, const RMatrix& R) {
  const auto e = spin1_expansion(basis, R);
  Eigen::Matrix<cd, 16, 16> gram;
  Eigen::Matrix<cd, 16, 1> rhs;
  for (int i = 0; i < 16; ++i) {
    const auto& ei = e[static_cast<std::size_t>(i)];
    for (int j = 0; j < 16; ++j) gram(i, j) = (ei.adjoint() * e[static_cast<std::size_t>(j)]).trace();
    rhs(i) = (ei.adjoint() * psi).trace();
  }
  Eigen::FullPivLU<Eigen::Matrix<cd, 16, 16>> lu(gram);
  if (!lu.isInvertible()) throw std::runtime_error("unpack_spin1: singular Gram matrix");
  return Spin1Components::from_vector(lu.solve(rhs));
}

ModifiedCoeffs ModifiedCoeffs::standard() {
  ModifiedCoeffs c;
  c.alpha = {1, 1, 0};
  c.beta = {1, 1, 0, 1, 1, 0, 1, 1, 0};
  return c;
}

namespace {

struct TermSpec {
  const char* block;
  int alpha;
  int beta;
  char first;   // 'g' gamma_mu R, 's' sigma_{mu nu} R, '5' gamma5 sigma_{mu nu} R
  char second;  // same kinds with upper kappa, kappa tau
};

constexpr std::array<TermSpec, 9> kTerms{{{"G", 1, 1, 'g', 'g'},
                                          {"F", 1, 2, 'g', 's'},
                                          {"F_tilde", 1, 3, 'g', '5'},
                                          {"T", 2, 4, 's', 'g'},
                                          {"R", 2, 5, 's', 's'},
                                          {"R_tilde", 2, 6, 's', '5'},
                                          {"T_tilde", 3, 7, '5', 'g'},
                                          {"D_tilde", 3, 8, '5', 's'},
                                          {"D", 3, 9, '5', '5'}}};

const TermSpec& term(const std::string& block) {
  for (const auto& t : kTerms)
    if (block == t.block) return t;
  throw std::out_of_range("no spin-2 block " + block);
}

}  // namespace

cd ModifiedCoeffs::product(const std::string& block) const {
  const auto& t = term(block);
  return a(t.alpha) * b(t.beta);
}

const Layout& spin2_layout() {
  static const Layout layout = [] {
    Layout l;
    l.add("G", BlockKind::vector_vector, "lu")
        .add("F", BlockKind::pair_vector, "llu")
        .add("F_tilde", BlockKind::pair_vector, "llu")
        .add("T", BlockKind::vector_pair, "luu")
        .add("T_tilde", BlockKind::vector_pair, "luu")
        .add("R", BlockKind::pair_pair, "lluu")
        .add("R_tilde", BlockKind::pair_pair, "lluu")
        .add("D", BlockKind::pair_pair, "lluu")
        .add("D_tilde", BlockKind::pair_pair, "lluu");
    return l;
  }();
  return layout;
}

const Layout& spin2_standard_layout() {
  static const Layout layout = [] {
    Layout l;
    l.add("G", BlockKind::vector_vector, "lu")
        .add("F", BlockKind::pair_vector, "llu")
        .add("T", BlockKind::vector_pair, "luu")
        .add("R", BlockKind::pair_pair, "lluu");
    return l;
  }();
  return layout;
}

const std::vector<std::string>& spin2_block_names() {
  static const std::vector<std::string> names{"G", "F", "F_tilde", "T", "T_tilde",
                                              "R", "R_tilde", "D", "D_tilde"};
  return names;
}

cd Spin2Components::get(const std::string& block, const std::vector<int>& idx) const {
  const auto& b = spin2_layout().block(block);
  const auto col = spin2_layout().column(block, idx, b.stored);
  return col ? col->factor * v(col->index) : cd(0);
}

void Spin2Components::set(const std::string& block, const std::vector<int>& idx, cd value) {
  const auto& b = spin2_layout().block(block);
  const auto col = spin2_layout().column(block, idx, b.stored);
  if (!col) throw std::invalid_argument("component is identically zero");
  v(col->index) = value / col->factor;
}

Eigen::VectorXcd Spin2Components::block(const std::string& name) const {
  const auto& b = spin2_layout().block(name);
  return v.segment(b.offset, b.size);
}

namespace {

SpinMatrix first_matrix(char kind, const std::vector<int>& idx, const GammaBasis& g, const RMatrix& R) {
  switch (kind) {
    case 'g':
      return g.gamma_lower(idx[0]) * R.r;
    case 's':
      return g.sigma_lower(idx[0], idx[1]) * R.r;
    default:
      return g.gamma5 * g.sigma_lower(idx[0], idx[1]) * R.r;
  }
}

SpinMatrix second_matrix(char kind, const std::vector<int>& idx, const GammaBasis& g, const RMatrix& R) {
  switch (kind) {
    case 'g':
      return g.gamma[idx[0]] * R.r;
    case 's':
      return g.sigma_upper(idx[0], idx[1]) * R.r;
    default:
      return g.gamma5 * g.sigma_upper(idx[0], idx[1]) * R.r;
  }
}

std::vector<std::vector<int>> index_tuples(int n) {
  std::vector<std::vector<int>> out;
  if (n == 1) {
    for (int a = 0; a < 4; ++a) out.push_back({a});
  } else {
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        if (a != b) out.push_back({a, b});
  }
  return out;
}

}  // namespace

Spin2Codec::Spin2Codec(const ModifiedCoeffs& coeffs, const GammaBasis& basis, const RMatrix& R)
    : map_(Eigen::MatrixXcd::Zero(256, 256)) {
  const Layout& layout = spin2_layout();
  for (const auto& t : kTerms) {
    const cd c = coeffs.product(t.block);
    const auto& blk = layout.block(t.block);
    if (c == cd(0)) {
      undetermined_.push_back(t.block);
      continue;
    }
    for (Eigen::Index j = blk.offset; j < blk.offset + blk.size; ++j) determined_cols_.push_back(j);
    const auto firsts = index_tuples(t.first == 'g' ? 1 : 2);
    const auto seconds = index_tuples(t.second == 'g' ? 1 : 2);
    for (const auto& i2 : seconds) {
      const Eigen::Matrix4cd y = to_eigen(second_matrix(t.second, i2, basis, R));
      for (const auto& i1 : firsts) {
        std::vector<int> idx = i2;
        idx.insert(idx.end(), i1.begin(), i1.end());
        const auto col = layout.column(t.block, idx, blk.stored);
        if (!col) continue;
        const Eigen::Matrix4cd x = to_eigen(first_matrix(t.first, i1, basis, R));
        const cd f = c * col->factor;
        for (int a = 0; a < 4; ++a)
          for (int b = 0; b < 4; ++b) {
            if (x(a, b) == cd(0)) continue;
            for (int cc = 0; cc < 4; ++cc)
              for (int d = 0; d < 4; ++d)
                map_(16 * (4 * a + b) + 4 * cc + d, col->index) += f * x(a, b) * y(cc, d);
          }
      }
    }
  }
  Eigen::MatrixXcd sub(256, static_cast<Eigen::Index>(determined_cols_.size()));
  for (std::size_t k = 0; k < determined_cols_.size(); ++k)
    sub.col(static_cast<Eigen::Index>(k)) = map_.col(determined_cols_[k]);
  solver_.setThreshold(kRankTolerance);
  solver_.compute(sub);
}

Multispinor4 Spin2Codec::pack(const Spin2Components& c) const {
  const Eigen::VectorXcd flat = map_ * c.v;
  Multispinor4 psi;
  for (int r = 0; r < 16; ++r)
    for (int s = 0; s < 16; ++s) psi(r, s) = flat(16 * r + s);
  return psi;
}

Spin2Unpacked Spin2Codec::unpack(const Multispinor4& psi) const {
  Eigen::VectorXcd flat(256);
  for (int r = 0; r < 16; ++r)
    for (int s = 0; s < 16; ++s) flat(16 * r + s) = psi(r, s);
  Spin2Unpacked out;
  out.undetermined = undetermined_;
  if (!determined_cols_.empty()) {
    const Eigen::VectorXcd x = solver_.solve(flat);
    for (std::size_t k = 0; k < determined_cols_.size(); ++k)
      out.components.v(determined_cols_[k]) = x(static_cast<Eigen::Index>(k));
  }
  return out;
}

std::size_t Spin2Codec::image_rank() const { return static_cast<std::size_t>(solver_.rank()); }

Multispinor4 pack_spin2(const Spin2Components& c, const ModifiedCoeffs& coeffs, const GammaBasis& basis,
                        const RMatrix& R) {
  return Spin2Codec(coeffs, basis, R).pack(c);
}

Spin2Unpacked unpack_spin2(const Multispinor4& psi, const ModifiedCoeffs& coeffs, const GammaBasis& basis,
                           const RMatrix& R) {
  return Spin2Codec(coeffs, basis, R).unpack(psi);
}

namespace {

nlohmann::json vec_json(const Eigen::VectorXcd& v) {
  nlohmann::json a = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(complex_to_json(v(i)));
  return a;
}

Eigen::VectorXcd json_vec(const nlohmann::json& a, Eigen::Index n) {
  if (!a.is_array() || static_cast<Eigen::Index>(a.size()) != n)
    throw std::invalid_argument("component array has wrong length");
  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i)
    v(i) = cd(a.at(static_cast<std::size_t>(i)).at(0).get<double>(), a.at(static_cast<std::size_t>(i)).at(1).get<double>());
  return v;
}

}  // namespace

nlohmann::json to_json(const Spin1Components& c) {
  const Eigen::VectorXcd v = c.to_vector();
  return {{"phi", vec_json(v.segment(0, 1))},
          {"phi_tilde", vec_json(v.segment(1, 1))},
          {"A", vec_json(v.segment(2, 4))},
          {"A_tilde", vec_json(v.segment(6, 4))},
          {"F", vec_json(v.segment(10, 6))}};
}

Spin1Components spin1_from_json(const nlohmann::json& j) {
  Eigen::VectorXcd v(16);
  v.segment(0, 1) = json_vec(j.at("phi"), 1);
  v.segment(1, 1) = json_vec(j.at("phi_tilde"), 1);
  v.segment(2, 4) = json_vec(j.at("A"), 4);
  v.segment(6, 4) = json_vec(j.at("A_tilde"), 4);
  v.segment(10, 6) = json_vec(j.at("F"), 6);
  return Spin1Components::from_vector(v);
}

nlohmann::json to_json(const Spin2Components& c) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& name : spin2_block_names()) j[name] = vec_json(c.block(name));
  return j;
}

Spin2Components spin2_from_json(const nlohmann::json& j) {
  Spin2Components c;
  for (const auto& b : spin2_layout().blocks()) c.v.segment(b.offset, b.size) = json_vec(j.at(b.name), b.size);
  return c;
}

}  // namespace bw

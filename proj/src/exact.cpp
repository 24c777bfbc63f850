#include "bw/exact.hpp"

#include <stdexcept>
#include <utility>

namespace bw {

ExactComplex& ExactComplex::operator/=(const ExactComplex& o) {
  const Rational d = o.norm2();
  if (d.numerator() == 0) throw std::domain_error("ExactComplex: division by zero");
  *this *= o.conj();
  re_ /= d;
  im_ /= d;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const ExactComplex& z) {
  return os << '(' << z.re() << ',' << z.im() << ')';
}

SpinMatrix SpinMatrix::identity() {
  SpinMatrix m;
  for (int i = 0; i < 4; ++i) m(i, i) = 1;
  return m;
}

SpinMatrix SpinMatrix::transpose() const {
  SpinMatrix t;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) t(c, r) = (*this)(r, c);
  return t;
}

ExactComplex SpinMatrix::trace() const {
  ExactComplex t;
  for (int i = 0; i < 4; ++i) t += (*this)(i, i);
  return t;
}

bool SpinMatrix::is_zero() const {
  for (const auto& z : a_)
    if (!z.is_zero()) return false;
  return true;
}

SpinMatrix SpinMatrix::operator-() const {
  SpinMatrix m = *this;
  for (auto& z : m.a_) z = -z;
  return m;
}

SpinMatrix& SpinMatrix::operator+=(const SpinMatrix& o) {
  for (std::size_t k = 0; k < 16; ++k) a_[k] += o.a_[k];
  return *this;
}

SpinMatrix& SpinMatrix::operator-=(const SpinMatrix& o) {
  for (std::size_t k = 0; k < 16; ++k) a_[k] -= o.a_[k];
  return *this;
}

SpinMatrix& SpinMatrix::operator*=(const ExactComplex& s) {
  for (auto& z : a_) z *= s;
  return *this;
}

SpinMatrix operator*(const SpinMatrix& a, const SpinMatrix& b) {
  SpinMatrix m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      ExactComplex s;
      for (int k = 0; k < 4; ++k) s += a(r, k) * b(k, c);
      m(r, c) = s;
    }
  return m;
}

std::optional<SpinMatrix> SpinMatrix::inverse() const {
  SpinMatrix a = *this;
  SpinMatrix inv = identity();
  for (int col = 0; col < 4; ++col) {
    int piv = -1;
    for (int r = col; r < 4; ++r)
      if (!a(r, col).is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) return std::nullopt;
    for (int c = 0; c < 4; ++c) {
      std::swap(a(col, c), a(piv, c));
      std::swap(inv(col, c), inv(piv, c));
    }
    const ExactComplex p = a(col, col);
    for (int c = 0; c < 4; ++c) {
      a(col, c) /= p;
      inv(col, c) /= p;
    }
    for (int r = 0; r < 4; ++r) {
      if (r == col || a(r, col).is_zero()) continue;
      const ExactComplex f = a(r, col);
      for (int c = 0; c < 4; ++c) {
        a(r, c) -= f * a(col, c);
        inv(r, c) -= f * inv(col, c);
      }
    }
  }
  return inv;
}

std::vector<std::vector<ExactComplex>> exact_nullspace(std::vector<std::vector<ExactComplex>> rows,
                                                       std::size_t cols) {
  // Reduced row echelon form; pivots[k] is the pivot column of row k.
  std::vector<std::size_t> pivots;
  std::size_t lead = 0;
  for (std::size_t col = 0; col < cols && lead < rows.size(); ++col) {
    std::size_t piv = lead;
    while (piv < rows.size() && rows[piv][col].is_zero()) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[lead], rows[piv]);
    const ExactComplex p = rows[lead][col];
    for (auto& z : rows[lead]) z /= p;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == lead || rows[r][col].is_zero()) continue;
      const ExactComplex f = rows[r][col];
      for (std::size_t c = 0; c < cols; ++c) rows[r][c] -= f * rows[lead][c];
    }
    pivots.push_back(col);
    ++lead;
  }

  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;

  std::vector<std::vector<ExactComplex>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<ExactComplex> v(cols);
    v[free] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -rows[k][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace bw

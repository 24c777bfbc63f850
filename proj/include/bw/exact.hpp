#pragma once

// Exact arithmetic over the Gaussian rationals Q(i).
//
// Every entry of the Dirac-representation gamma matrices (and of everything
// built from them by products, sums and rational scalings) lives in Q(i), so
// the Clifford layer can decide its identities with no tolerance at all.

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include <boost/rational.hpp>

namespace bw {

using Rational = boost::rational<std::int64_t>;

class ExactComplex {
 public:
  constexpr ExactComplex() = default;
  ExactComplex(std::int64_t re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  ExactComplex(Rational re, Rational im = 0) : re_(re), im_(im) {}

  static ExactComplex i() { return {0, 1}; }

  [[nodiscard]] const Rational& re() const { return re_; }
  [[nodiscard]] const Rational& im() const { return im_; }

  [[nodiscard]] bool is_zero() const { return re_.numerator() == 0 && im_.numerator() == 0; }
  [[nodiscard]] Rational norm2() const { return re_ * re_ + im_ * im_; }
  [[nodiscard]] ExactComplex conj() const { return {re_, -im_}; }
  [[nodiscard]] std::complex<double> to_complex() const {
    return {boost::rational_cast<double>(re_), boost::rational_cast<double>(im_)};
  }

  ExactComplex operator-() const { return {-re_, -im_}; }
  ExactComplex& operator+=(const ExactComplex& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  ExactComplex& operator-=(const ExactComplex& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  ExactComplex& operator*=(const ExactComplex& o) {
    const Rational r = re_ * o.re_ - im_ * o.im_;
    im_ = re_ * o.im_ + im_ * o.re_;
    re_ = r;
    return *this;
  }
  ExactComplex& operator/=(const ExactComplex& o);

  friend ExactComplex operator+(ExactComplex a, const ExactComplex& b) { return a += b; }
  friend ExactComplex operator-(ExactComplex a, const ExactComplex& b) { return a -= b; }
  friend ExactComplex operator*(ExactComplex a, const ExactComplex& b) { return a *= b; }
  friend ExactComplex operator/(ExactComplex a, const ExactComplex& b) { return a /= b; }
  friend bool operator==(const ExactComplex& a, const ExactComplex& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const ExactComplex& a, const ExactComplex& b) { return !(a == b); }
  friend std::ostream& operator<<(std::ostream& os, const ExactComplex& z);

 private:
  Rational re_{0};
  Rational im_{0};
};

/// Dense 4x4 matrix over Q(i); the carrier for every spinor-space operator.
class SpinMatrix {
 public:
  SpinMatrix() = default;

  static SpinMatrix identity();
  static SpinMatrix zero() { return {}; }

  ExactComplex& operator()(int r, int c) { return a_[static_cast<std::size_t>(4 * r + c)]; }
  const ExactComplex& operator()(int r, int c) const {
    return a_[static_cast<std::size_t>(4 * r + c)];
  }

  [[nodiscard]] SpinMatrix transpose() const;
  [[nodiscard]] ExactComplex trace() const;
  [[nodiscard]] bool is_zero() const;
  /// Inverse by Gauss-Jordan; nullopt when singular.
  [[nodiscard]] std::optional<SpinMatrix> inverse() const;

  SpinMatrix operator-() const;
  SpinMatrix& operator+=(const SpinMatrix& o);
  SpinMatrix& operator-=(const SpinMatrix& o);
  SpinMatrix& operator*=(const ExactComplex& s);

  friend SpinMatrix operator+(SpinMatrix a, const SpinMatrix& b) { return a += b; }
  friend SpinMatrix operator-(SpinMatrix a, const SpinMatrix& b) { return a -= b; }
  friend SpinMatrix operator*(SpinMatrix a, const ExactComplex& s) { return a *= s; }
  friend SpinMatrix operator*(const ExactComplex& s, SpinMatrix a) { return a *= s; }
  friend SpinMatrix operator*(const SpinMatrix& a, const SpinMatrix& b);
  friend bool operator==(const SpinMatrix& a, const SpinMatrix& b) { return a.a_ == b.a_; }
  friend bool operator!=(const SpinMatrix& a, const SpinMatrix& b) { return !(a == b); }

 private:
  std::array<ExactComplex, 16> a_{};
};

/// Basis of the right nullspace of a dense matrix over Q(i) (row-major,
/// `cols` columns), computed by exact row reduction.
std::vector<std::vector<ExactComplex>> exact_nullspace(std::vector<std::vector<ExactComplex>> rows,
                                                       std::size_t cols);

}  // namespace bw

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "super/error.hpp"
#include "super/poly.hpp"
#include "super/scalar.hpp"

namespace sup {

template <class R>
struct RingOps;

template <>
struct RingOps<Scalar> {
  static Scalar zero_like(const Scalar& proto) {
    return proto.is_float() ? Scalar::flt(0.0) : Scalar(0);
  }
  static Scalar one_like(const Scalar& proto) {
    return proto.is_float() ? Scalar::flt(1.0) : Scalar(1);
  }
  static bool is_zero(const Scalar& x) { return x.is_zero(); }
  static Scalar scale(const Scalar& x, const Rational& q) {
    return x.is_float() ? Scalar::flt(q.get_d()) * x : Scalar(q) * x;
  }
};

template <>
struct RingOps<MultiPoly> {
  static MultiPoly zero_like(const MultiPoly& proto) { return MultiPoly(proto.vars()); }
  static MultiPoly one_like(const MultiPoly& proto) {
    return MultiPoly::constant(Scalar(1), proto.vars());
  }
  static bool is_zero(const MultiPoly& x) { return x.is_zero(); }
  static MultiPoly scale(const MultiPoly& x, const Rational& q) {
    return x.scaled(Scalar(q));
  }
};

template <class R>
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(std::size_t r, std::size_t c, const R& fill) : rows_(r), cols_(c), data_(r * c, fill) {}

  static Mat identity(std::size_t n, const R& proto) {
    Mat m(n, n, RingOps<R>::zero_like(proto));
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = RingOps<R>::one_like(proto);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  R& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const R& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool operator==(const Mat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }
  bool operator!=(const Mat& o) const { return !(*this == o); }

  Mat operator+(const Mat& o) const {
    require_same_shape(o);
    Mat r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = r.data_[i] + o.data_[i];
    return r;
  }
  Mat operator-(const Mat& o) const {
    require_same_shape(o);
    Mat r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = r.data_[i] - o.data_[i];
    return r;
  }
  Mat operator*(const Mat& o) const {
    if (cols_ != o.rows_) throw error("matrix shape mismatch in product");
    const R zero = RingOps<R>::zero_like(proto());
    Mat r(rows_, o.cols_, zero);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        if (RingOps<R>::is_zero(at(i, k))) continue;
        for (std::size_t j = 0; j < o.cols_; ++j)
          r.at(i, j) = r.at(i, j) + at(i, k) * o.at(k, j);
      }
    return r;
  }
  Mat scaled(const R& c) const {
    Mat r = *this;
    for (auto& x : r.data_) x = x * c;
    return r;
  }
  Mat transpose() const {
    Mat r(cols_, rows_, RingOps<R>::zero_like(proto()));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!RingOps<R>::is_zero(x)) return false;
    return true;
  }

  const R& proto() const {
    if (data_.empty()) throw error("empty matrix has no prototype element");
    return data_[0];
  }

 private:
  void require_same_shape(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw error("matrix shape mismatch");
  }

  std::size_t rows_, cols_;
  std::vector<R> data_;
};

using ScalarMat = Mat<Scalar>;
using PolyMat = Mat<MultiPoly>;

inline ScalarMat adjoint(const ScalarMat& m) {
  ScalarMat r(m.cols(), m.rows(), Scalar(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r.at(j, i) = m.at(i, j).conj();
  return r;
}

// exp of a nilpotent matrix as a finite sum; throws guard_error if powers do
// not vanish within max_terms.
template <class R>
Mat<R> exp_nilpotent(const Mat<R>& m, std::size_t max_terms = 64) {
  if (m.rows() != m.cols()) throw error("exp of non-square matrix");
  Mat<R> acc = Mat<R>::identity(m.rows(), m.proto());
  Mat<R> power = acc;
  Rational kfact(1);
  for (std::size_t k = 1; k <= max_terms; ++k) {
    power = power * m;
    if (power.is_zero()) return acc;
    kfact *= Rational(static_cast<long>(k));
    Mat<R> term = power;
    Rational inv = Rational(1) / kfact;
    for (std::size_t i = 0; i < term.rows(); ++i)
      for (std::size_t j = 0; j < term.cols(); ++j)
        term.at(i, j) = RingOps<R>::scale(power.at(i, j), inv);
    acc = acc + term;
  }
  throw guard_error("matrix is not nilpotent within term bound");
}

// log of a unipotent matrix (I + nilpotent), finite alternating sum.
template <class R>
Mat<R> log_unipotent(const Mat<R>& m, std::size_t max_terms = 64) {
  if (m.rows() != m.cols()) throw error("log of non-square matrix");
  Mat<R> x = m - Mat<R>::identity(m.rows(), m.proto());
  Mat<R> acc(m.rows(), m.cols(), RingOps<R>::zero_like(m.proto()));
  Mat<R> power = Mat<R>::identity(m.rows(), m.proto());
  for (std::size_t k = 1; k <= max_terms; ++k) {
    power = power * x;
    if (power.is_zero()) return acc;
    Rational c = (k % 2 == 1) ? Rational(1, static_cast<long>(k))
                              : Rational(-1, static_cast<long>(k));
    Mat<R> term = power;
    for (std::size_t i = 0; i < term.rows(); ++i)
      for (std::size_t j = 0; j < term.cols(); ++j)
        term.at(i, j) = RingOps<R>::scale(power.at(i, j), c);
    acc = acc + term;
  }
  throw guard_error("matrix is not unipotent within term bound");
}

// Inverse of a unipotent matrix via the finite Neumann series.
template <class R>
Mat<R> unipotent_inverse(const Mat<R>& m, std::size_t max_terms = 64) {
  if (m.rows() != m.cols()) throw error("inverse of non-square matrix");
  Mat<R> x = Mat<R>::identity(m.rows(), m.proto()) - m;
  Mat<R> acc = Mat<R>::identity(m.rows(), m.proto());
  Mat<R> power = acc;
  for (std::size_t k = 1; k <= max_terms; ++k) {
    power = power * x;
    if (power.is_zero()) return acc;
    acc = acc + power;
  }
  throw guard_error("matrix is not unipotent within term bound");
}

// Pivoted Hermitian LDL* factorization with semidefiniteness verdict.
// Exact entries give an exact verdict (tol ignored); float entries use tol.
struct LDLResult {
  bool psd = false;
  std::size_t rank = 0;
  std::vector<std::size_t> perm;            // perm[k] = original index at step k
  ScalarMat L;                              // unit lower triangular, permuted coords
  std::vector<Scalar> diag;                 // pivots; real, zeros past rank
  std::vector<Scalar> witness;              // if !psd: v with v*Av < 0 (original coords)
  Scalar witness_value = Scalar(0);         // v*Av for the witness
  std::vector<std::vector<Scalar>> null_basis;  // if psd: kernel basis (original coords)
};

LDLResult ldl_hermitian(const ScalarMat& a, double tol = 0.0);

// v* A v with conjugation on the left slot.
Scalar quad_form(const ScalarMat& a, const std::vector<Scalar>& v);

// Particular solution of A x = b by Gaussian elimination, empty if
// inconsistent. Exact entries decide consistency exactly.
std::optional<std::vector<Scalar>> gauss_solve(ScalarMat a, std::vector<Scalar> b,
                                               double tol = 0.0);

std::vector<Scalar> mat_vec(const ScalarMat& a, const std::vector<Scalar>& v);

}  // namespace sup

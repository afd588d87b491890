#include "super/matrix.hpp"

#include <cmath>
#include <cstdlib>

namespace sup {

namespace {

bool negligible(const Scalar& s, double tol) {
  if (s.is_exact()) return s.is_zero();
  return std::abs(s.to_complex()) <= tol;
}

// Sign of a real scalar after the zero test above: -1, 0, +1.
int real_sign(const Scalar& s, double tol) {
  if (s.is_exact()) {
    int sg = sgn(s.exact_re());
    return sg;
  }
  double v = s.to_complex().real();
  if (v > tol) return 1;
  if (v < -tol) return -1;
  return 0;
}

Scalar sum_start(const Scalar& first) { return RingOps<Scalar>::zero_like(first); }

}  // namespace

Scalar quad_form(const ScalarMat& a, const std::vector<Scalar>& v) {
  if (a.rows() != v.size() || a.cols() != v.size()) throw error("quad_form shape mismatch");
  bool started = false;
  Scalar sum(0);
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) {
      Scalar t = v[i].conj() * a.at(i, j) * v[j];
      if (!started) {
        sum = sum_start(t);
        started = true;
      }
      sum += t;
    }
  return sum;
}

std::vector<Scalar> mat_vec(const ScalarMat& a, const std::vector<Scalar>& v) {
  if (a.cols() != v.size()) throw error("mat_vec shape mismatch");
  std::vector<Scalar> out(a.rows(), Scalar(0));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    bool started = false;
    Scalar sum(0);
    for (std::size_t j = 0; j < v.size(); ++j) {
      Scalar t = a.at(i, j) * v[j];
      if (!started) {
        sum = sum_start(t);
        started = true;
      }
      sum += t;
    }
    out[i] = started ? sum : Scalar(0);
  }
  return out;
}

LDLResult ldl_hermitian(const ScalarMat& a, double tol) {
  if (a.rows() != a.cols()) throw error("ldl_hermitian needs a square matrix");
  const std::size_t n = a.rows();
  LDLResult res;
  res.perm.resize(n);
  for (std::size_t i = 0; i < n; ++i) res.perm[i] = i;
  if (n == 0) {
    res.psd = true;
    res.L = ScalarMat(0, 0, Scalar(0));
    return res;
  }
  const Scalar kzero = RingOps<Scalar>::zero_like(a.at(0, 0));
  const Scalar kone = RingOps<Scalar>::one_like(a.at(0, 0));
  res.diag.assign(n, kzero);

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Scalar defect = a.at(i, j) - a.at(j, i).conj();
      if (!negligible(defect, tol)) throw guard_error("ldl_hermitian: matrix is not Hermitian");
    }

  ScalarMat s = a;
  ScalarMat l = ScalarMat::identity(n, a.at(0, 0));
  std::size_t rank = 0;
  bool stopped = false;
  bool psd = true;
  std::vector<Scalar> trailing_witness;  // permuted coords, zeros outside [k, n)
  Scalar trailing_value(0);

  std::size_t k = 0;
  for (; k < n; ++k) {
    std::size_t best = k;
    double best_val = s.at(k, k).to_complex().real();
    for (std::size_t p = k + 1; p < n; ++p) {
      double v = s.at(p, p).to_complex().real();
      if (v > best_val) {
        best_val = v;
        best = p;
      }
    }
    if (real_sign(s.at(best, best), tol) > 0) {
      if (best != k) {
        for (std::size_t j = 0; j < n; ++j) std::swap(s.at(k, j), s.at(best, j));
        for (std::size_t i = 0; i < n; ++i) std::swap(s.at(i, k), s.at(i, best));
        std::swap(res.perm[k], res.perm[best]);
        for (std::size_t j = 0; j < k; ++j) std::swap(l.at(k, j), l.at(best, j));
      }
      Scalar d = s.at(k, k);
      res.diag[k] = d;
      ++rank;
      for (std::size_t i = k + 1; i < n; ++i) l.at(i, k) = s.at(i, k) / d;
      for (std::size_t i = k + 1; i < n; ++i)
        for (std::size_t j = k + 1; j < n; ++j)
          s.at(i, j) -= s.at(i, k) * s.at(j, k).conj() / d;
      continue;
    }

    // Max trailing diagonal is not positive. A negative diagonal or a nonzero
    // off-diagonal entry certifies indefiniteness; otherwise the trailing
    // block vanishes and the factorization is complete.
    std::size_t neg = n;
    for (std::size_t p = k; p < n; ++p)
      if (real_sign(s.at(p, p), tol) < 0) {
        neg = p;
        break;
      }
    if (neg < n) {
      trailing_witness.assign(n, kzero);
      trailing_witness[neg] = kone;
      trailing_value = s.at(neg, neg);
      psd = false;
      stopped = true;
      break;
    }
    std::size_t oi = n, oj = n;
    for (std::size_t i = k; i < n && oi == n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (!negligible(s.at(i, j), tol)) {
          oi = i;
          oj = j;
          break;
        }
    if (oi < n) {
      // Diagonals vanish here, so with alpha = -S[i][j] the value is
      // -2|S[i][j]|^2 plus negligible diagonal terms.
      trailing_witness.assign(n, kzero);
      trailing_witness[oi] = -s.at(oi, oj);
      trailing_witness[oj] = kone;
      Scalar va = trailing_witness[oi];
      trailing_value = va.conj() * s.at(oi, oj) + va * s.at(oi, oj).conj() +
                       va.conj() * va * s.at(oi, oi) + s.at(oj, oj);
      psd = false;
      stopped = true;
      break;
    }
    stopped = true;  // trailing block is zero: done, rank = k
    break;
  }
  (void)stopped;
  res.rank = rank;
  res.L = l;
  res.psd = psd;

  // Back substitution through the unit upper triangular L*.
  auto solve_lstar = [&](const std::vector<Scalar>& w) {
    std::vector<Scalar> x(n, kzero);
    for (std::size_t ii = n; ii-- > 0;) {
      Scalar acc = w[ii];
      for (std::size_t j = ii + 1; j < n; ++j) acc -= l.at(j, ii).conj() * x[j];
      x[ii] = acc;
    }
    return x;
  };
  auto unpermute = [&](const std::vector<Scalar>& x) {
    std::vector<Scalar> orig(n, kzero);
    for (std::size_t t = 0; t < n; ++t) orig[res.perm[t]] = x[t];
    return orig;
  };

  if (!psd) {
    res.witness = unpermute(solve_lstar(trailing_witness));
    res.witness_value = quad_form(a, res.witness);
    (void)trailing_value;
  } else if (rank < n) {
    for (std::size_t j = rank; j < n; ++j) {
      std::vector<Scalar> e(n, kzero);
      e[j] = kone;
      res.null_basis.push_back(unpermute(solve_lstar(e)));
    }
  }
  return res;
}

std::optional<std::vector<Scalar>> gauss_solve(ScalarMat a, std::vector<Scalar> b, double tol) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (b.size() != m) throw error("gauss_solve shape mismatch");
  std::vector<std::size_t> pivot_col_of_row(m, n);
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m; ++col) {
    std::size_t best = m;
    double best_abs = tol;
    for (std::size_t r = row; r < m; ++r) {
      if (negligible(a.at(r, col), tol)) continue;
      double v = std::abs(a.at(r, col).to_complex());
      if (best == m || v > best_abs) {
        best = r;
        best_abs = v;
      }
    }
    if (best == m) continue;
    if (best != row) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a.at(row, j), a.at(best, j));
      std::swap(b[row], b[best]);
    }
    Scalar d = a.at(row, col);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == row || negligible(a.at(r, col), tol)) continue;
      Scalar f = a.at(r, col) / d;
      for (std::size_t j = col; j < n; ++j) a.at(r, j) -= f * a.at(row, j);
      b[r] -= f * b[row];
    }
    pivot_col_of_row[row] = col;
    ++row;
  }
  for (std::size_t r = row; r < m; ++r)
    if (!negligible(b[r], tol)) return std::nullopt;
  Scalar zero = (m > 0 && n > 0) ? RingOps<Scalar>::zero_like(a.at(0, 0)) : Scalar(0);
  std::vector<Scalar> x(n, zero);
  for (std::size_t r = 0; r < row; ++r) {
    std::size_t c = pivot_col_of_row[r];
    x[c] = b[r] / a.at(r, c);
  }
  return x;
}

}  // namespace sup

#include "gaplcp/dense.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>

#include "gaplcp/error.hpp"

namespace gaplcp {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::RayTermination: return "RayTermination";
    case ErrorCode::PivotLimitExceeded: return "PivotLimitExceeded";
    case ErrorCode::NumericalBreakdown: return "NumericalBreakdown";
    case ErrorCode::MaxIterationsExceeded: return "MaxIterationsExceeded";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::DuplicatePositions: return "DuplicatePositions";
  }
  return "Unknown";
}

namespace {

void require_finite(std::span<const double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw Error(ErrorCode::NonFinite, "entry " + std::to_string(i) + " is not finite");
    }
  }
}

void require_same_size(const DenseVector& a, const DenseVector& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::DimensionMismatch, "vector lengths " + std::to_string(a.size()) +
                                                  " and " + std::to_string(b.size()));
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// DenseVector

DenseVector::DenseVector(std::size_t len, double fill) : entries_(len, fill) {
  require_finite(entries_);
}

DenseVector::DenseVector(std::vector<double> entries) : entries_(std::move(entries)) {
  require_finite(entries_);
}

DenseVector::DenseVector(std::initializer_list<double> entries) : entries_(entries) {
  require_finite(entries_);
}

double DenseVector::norm_inf() const noexcept {
  double m = 0.0;
  for (double v : entries_) m = std::max(m, std::abs(v));
  return m;
}

double DenseVector::min() const noexcept {
  double m = std::numeric_limits<double>::infinity();
  for (double v : entries_) m = std::min(m, v);
  return m;
}

DenseVector DenseVector::segment(std::size_t offset, std::size_t len) const {
  if (offset + len > entries_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "segment out of range");
  }
  return DenseVector(std::vector<double>(entries_.begin() + static_cast<std::ptrdiff_t>(offset),
                                         entries_.begin() + static_cast<std::ptrdiff_t>(offset + len)));
}

DenseVector operator+(const DenseVector& a, const DenseVector& b) {
  require_same_size(a, b);
  DenseVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

DenseVector operator-(const DenseVector& a, const DenseVector& b) {
  require_same_size(a, b);
  DenseVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

DenseVector operator*(double s, const DenseVector& a) {
  DenseVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = s * a[i];
  return out;
}

DenseVector concat(const DenseVector& a, const DenseVector& b) {
  std::vector<double> out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return DenseVector(std::move(out));
}

double dot(const DenseVector& a, const DenseVector& b) {
  require_same_size(a, b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double max_abs_diff(const DenseVector& a, const DenseVector& b) {
  require_same_size(a, b);
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// ---------------------------------------------------------------------------
// DenseMatrix

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), entries_(rows * cols, fill) {
  require_finite(entries_);
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw Error(ErrorCode::DimensionMismatch,
                "expected " + std::to_string(rows_ * cols_) + " entries, got " +
                    std::to_string(entries_.size()));
  }
  require_finite(entries_);
}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  entries_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "ragged matrix rows");
    entries_.insert(entries_.end(), r.begin(), r.end());
  }
  require_finite(entries_);
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = 1.0;
  return out;
}

DenseMatrix DenseMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.front().size();
  std::vector<double> flat;
  flat.reserve(r * c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) {
      throw Error(ErrorCode::DimensionMismatch, "row " + std::to_string(i) + " has " +
                                                    std::to_string(rows[i].size()) +
                                                    " entries, expected " + std::to_string(c));
    }
    flat.insert(flat.end(), rows[i].begin(), rows[i].end());
  }
  return DenseMatrix(r, c, std::move(flat));
}

double DenseMatrix::norm_max() const noexcept {
  double m = 0.0;
  for (double v : entries_) m = std::max(m, std::abs(v));
  return m;
}

double DenseMatrix::norm_inf() const noexcept {
  double m = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (double v : row(i)) s += std::abs(v);
    m = std::max(m, s);
  }
  return m;
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

namespace {

// Error-free transformations: a + b = s + e and a * b = p + e exactly.
void two_sum(double a, double b, double& s, double& e) {
  s = a + b;
  const double bv = s - a;
  e = (a - (s - bv)) + (b - bv);
}

void split(double a, double& hi, double& lo) {
  const double c = 134217729.0 * a;  // 2^27 + 1
  hi = c - (c - a);
  lo = a - hi;
}

void two_prod(double a, double b, double& p, double& e) {
  p = a * b;
  double ah, al, bh, bl;
  split(a, ah, al);
  split(b, bh, bl);
  e = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
}

// Sum of products a_j b_j carried as a nonoverlapping expansion and rounded
// once at the end, so a product that vanishes in exact arithmetic (e.g. equal
// terms of opposite sign) comes out as exactly zero.
double exact_dot(std::span<const double> a, std::span<const double> b,
                 std::vector<double>& expansion) {
  expansion.clear();
  const auto grow = [&expansion](double t) {
    std::size_t kept = 0;
    for (double e : expansion) {
      double s, err;
      two_sum(t, e, s, err);
      if (err != 0.0) expansion[kept++] = err;
      t = s;
    }
    expansion.resize(kept);
    if (t != 0.0) expansion.push_back(t);
  };
  for (std::size_t j = 0; j < a.size(); ++j) {
    double p, e;
    two_prod(a[j], b[j], p, e);
    if (!std::isfinite(e)) {
      // splitting overflowed; the plain product is the best available
      e = 0.0;
    }
    grow(p);
    grow(e);
  }
  double sum = 0.0;
  for (double e : expansion) sum += e;
  return sum;
}

}  // namespace

DenseVector matvec(const DenseMatrix& a, const DenseVector& x) {
  if (a.cols() != x.size()) {
    throw Error(ErrorCode::DimensionMismatch, "matvec: " + std::to_string(a.cols()) +
                                                  " columns vs vector of length " +
                                                  std::to_string(x.size()));
  }
  DenseVector out(a.rows());
  std::vector<double> expansion;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    out[i] = exact_dot(a.row(i), x.view(), expansion);
  }
  return out;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "matmul inner dimensions");
  DenseMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

DenseMatrix operator-(const DenseMatrix& a) {
  std::vector<double> e(a.entries());
  for (double& v : e) v = -v;
  return DenseMatrix(a.rows(), a.cols(), std::move(e));
}

bool is_symmetric(const DenseMatrix& a, double rel_tol) {
  if (!a.square()) return false;
  const double bound = rel_tol * a.norm_max();
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (std::abs(a(i, j) - a(j, i)) > bound) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Cholesky

LowerTriangularFactor spd_factor(const DenseMatrix& a) {
  if (!a.square()) {
    throw Error(ErrorCode::DimensionMismatch, "spd_factor needs a square matrix, got " +
                                                  std::to_string(a.rows()) + "x" +
                                                  std::to_string(a.cols()));
  }
  if (!is_symmetric(a, 1e-10)) throw Error(ErrorCode::NotSymmetric, "spd_factor input");

  const std::size_t n = a.rows();
  DenseMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double diag = a(j, j);
    for (std::size_t k = 0; k < j; ++k) diag -= l(j, k) * l(j, k);
    if (!(diag > 0.0)) {
      throw Error(ErrorCode::NotPositiveDefinite,
                  "pivot " + std::to_string(j) + " is " + std::to_string(diag));
    }
    const double ljj = std::sqrt(diag);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / ljj;
    }
  }
  return LowerTriangularFactor(std::move(l));
}

DenseVector spd_solve(const LowerTriangularFactor& factor, const DenseVector& b) {
  const std::size_t n = factor.dim();
  if (b.size() != n) {
    throw Error(ErrorCode::DimensionMismatch, "spd_solve: factor of dimension " +
                                                  std::to_string(n) + ", rhs of length " +
                                                  std::to_string(b.size()));
  }
  const DenseMatrix& l = factor.lower();
  DenseVector y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * y[k];
    y[i] = s / l(i, i);
  }
  DenseVector x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    double s = y[ii];
    for (std::size_t k = ii + 1; k < n; ++k) s -= l(k, ii) * x[k];
    x[ii] = s / l(ii, ii);
  }
  return x;
}

}  // namespace gaplcp

#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace gaplcp {

// Dense vector of finite doubles. Finiteness is checked at construction.
class DenseVector {
 public:
  DenseVector() = default;
  explicit DenseVector(std::size_t len, double fill = 0.0);
  explicit DenseVector(std::vector<double> entries);
  DenseVector(std::initializer_list<double> entries);

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  double operator[](std::size_t i) const { return entries_[i]; }
  double& operator[](std::size_t i) { return entries_[i]; }

  std::span<const double> view() const noexcept { return entries_; }
  std::span<double> view() noexcept { return entries_; }
  const std::vector<double>& entries() const noexcept { return entries_; }

  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }
  auto begin() noexcept { return entries_.begin(); }
  auto end() noexcept { return entries_.end(); }

  double norm_inf() const noexcept;
  double min() const noexcept;  // +inf for an empty vector

  // Contiguous sub-range [offset, offset + len).
  DenseVector segment(std::size_t offset, std::size_t len) const;

  friend bool operator==(const DenseVector&, const DenseVector&) = default;

 private:
  std::vector<double> entries_;
};

DenseVector operator+(const DenseVector& a, const DenseVector& b);
DenseVector operator-(const DenseVector& a, const DenseVector& b);
DenseVector operator*(double s, const DenseVector& a);
DenseVector concat(const DenseVector& a, const DenseVector& b);
double dot(const DenseVector& a, const DenseVector& b);
double max_abs_diff(const DenseVector& a, const DenseVector& b);

// Row-major dense matrix of finite doubles.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
  DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  double operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }

  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(entries_).subspan(i * cols_, cols_);
  }
  const std::vector<double>& entries() const noexcept { return entries_; }

  double norm_max() const noexcept;  // largest |a_ij|
  double norm_inf() const noexcept;  // largest absolute row sum
  DenseMatrix transpose() const;

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> entries_;
};

// Each entry is accumulated without intermediate rounding and rounded once, so
// rows whose exact product is zero give exactly zero.
DenseVector matvec(const DenseMatrix& a, const DenseVector& x);
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator-(const DenseMatrix& a);

// |a_ij - a_ji| <= rel_tol * max|a| for all pairs.
bool is_symmetric(const DenseMatrix& a, double rel_tol = 1e-10);

// Cholesky factor L (A = L L^T) of a symmetric positive definite matrix.
class LowerTriangularFactor {
 public:
  std::size_t dim() const noexcept { return lower_.rows(); }
  const DenseMatrix& lower() const noexcept { return lower_; }

 private:
  friend LowerTriangularFactor spd_factor(const DenseMatrix& a);
  explicit LowerTriangularFactor(DenseMatrix lower) : lower_(std::move(lower)) {}
  DenseMatrix lower_;
};

/// Cholesky factorization without pivoting. Throws NotSymmetric when the input
/// fails the relative 1e-10 symmetry test and NotPositiveDefinite on the first
/// nonpositive pivot. Only the lower triangle enters the factorization.
LowerTriangularFactor spd_factor(const DenseMatrix& a);

/// Solves A x = b with A = L L^T via forward and back substitution.
DenseVector spd_solve(const LowerTriangularFactor& factor, const DenseVector& b);

}  // namespace gaplcp

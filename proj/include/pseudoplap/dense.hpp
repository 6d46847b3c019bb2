#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace pseudoplap {

using Vector = std::vector<double>;

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

/// Small dense square matrix, row-major. Sizes here never exceed 6.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n, double fill = 0.0) : n_(n), a_(n * n, fill) {}
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> d);
  static Matrix outer(std::span<const double> a, std::span<const double> b);
  /// [[A, B], [C, D]] from four n x n blocks.
  static Matrix blocks(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d);

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(double s);

  Vector apply(std::span<const double> x) const;
  double quadratic_form(std::span<const double> x) const;
  double frobenius() const;
  Matrix transposed() const;
  /// (A + A^T) / 2.
  Matrix symmetrized() const;

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(double s, Matrix a);

struct EigenDecomposition {
  Vector values;   // ascending
  Matrix vectors;  // column j is the eigenvector of values[j]
  int sweeps = 0;
};

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm is below
/// rel_tol * |A|_F. The input is symmetrised first.
EigenDecomposition jacobi_eigen(const Matrix& a, double rel_tol = 1e-13, int max_sweeps = 100);

Vector eigenvalues(const Matrix& a);
double min_eigenvalue(const Matrix& a);
double max_eigenvalue(const Matrix& a);

/// |A| = max |lambda_i(A)| for symmetric A.
double spectral_norm(const Matrix& a);

}  // namespace pseudoplap

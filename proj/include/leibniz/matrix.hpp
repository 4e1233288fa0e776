#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "leibniz/scalar.hpp"

namespace leibniz {

// Dense row-major matrix over Scalar.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols);
  static Matrix diagonal(const Vector& diag);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vector row(std::size_t r) const;
  Vector col(std::size_t c) const;
  void set_row(std::size_t r, const Vector& v);
  std::vector<Vector> row_vectors() const;

  bool is_zero() const;
  Matrix transpose() const;

  Matrix operator*(const Matrix& other) const;
  Matrix operator+(const Matrix& other) const;
  Matrix operator-(const Matrix& other) const;
  Matrix operator*(const Scalar& s) const;
  Vector operator*(const Vector& v) const;
  bool operator==(const Matrix& other) const = default;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

// Row-times-matrix: returns v^T M.
Vector left_multiply(const Vector& v, const Matrix& m);

struct EchelonForm {
  Matrix reduced;                  // reduced row-echelon form, zero rows dropped
  std::vector<std::size_t> pivots; // pivot column of each nonzero row
};

EchelonForm rref(const Matrix& m);
std::size_t rank(const Matrix& m);

// Basis of {v : m v = 0}, one vector per free column, in the usual
// free-variable parametrisation.
std::vector<Vector> nullspace(const Matrix& m);

// Some solution of m x = b, or nullopt. Free variables are set to zero, so a
// zero right-hand side yields the zero solution.
std::optional<Vector> solve(const Matrix& m, const Vector& b);

Scalar determinant(const Matrix& m);
bool invertible(const Matrix& m);
Matrix inverse(const Matrix& m);  // throws SingularMatrixError

// m^exponent by binary exponentiation.
Matrix power(const Matrix& m, std::size_t exponent);

}  // namespace leibniz

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "boundrank/field.hpp"

namespace boundrank {

inline constexpr int kMaxMatrixDim = 16;

using Vector = std::vector<Elem>;

/// Dense row-major matrix over a small finite field. The C++ accessors are
/// 0-based; IndexSet and every JSON/CLI surface use the 1-based [n] convention.
class Matrix {
 public:
  Matrix(const Field& field, int rows, int cols);

  static Matrix zero(const Field& field, int n) { return Matrix(field, n, n); }
  static Matrix identity(const Field& field, int n);
  /// Entries are mapped through Field::from_int.
  static Matrix from_ints(const Field& field, const std::vector<std::vector<int>>& rows);
  /// e_i (x) e_j, 1-based.
  static Matrix unit(const Field& field, int n, int i, int j);

  const Field& field() const { return *field_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Elem operator()(int r, int c) const { return {data_[index(r, c)], field_->kind()}; }
  void set(int r, int c, Elem v);

  std::uint8_t raw(int r, int c) const { return data_[index(r, c)]; }
  void set_raw(int r, int c, std::uint8_t v) { data_[index(r, c)] = v; }
  std::span<const std::uint8_t> raw_data() const { return data_; }
  std::span<std::uint8_t> raw_data() { return data_; }

  bool is_zero() const;
  Matrix transposed() const;
  Matrix scaled(Elem c) const;
  std::vector<std::vector<int>> to_ints() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

  bool operator==(const Matrix& other) const {
    return field_->kind() == other.field_->kind() && rows_ == other.rows_ && cols_ == other.cols_ &&
           data_ == other.data_;
  }

 private:
  std::size_t index(int r, int c) const { return static_cast<std::size_t>(r) * cols_ + c; }
  void check_compatible(const Matrix& other) const;

  const Field* field_;
  int rows_;
  int cols_;
  std::vector<std::uint8_t> data_;
};

/// Strictly increasing 1-based indices i_1 < ... < i_k.
class IndexSet {
 public:
  IndexSet() = default;
  explicit IndexSet(std::vector<int> elems);

  const std::vector<int>& elems() const { return elems_; }
  int size() const { return static_cast<int>(elems_.size()); }
  int operator[](int a) const { return elems_[a]; }
  bool operator==(const IndexSet&) const = default;

 private:
  std::vector<int> elems_;
};

/// B(alpha, beta) = A(i_alpha, j_beta).
Matrix submatrix(const Matrix& a, const IndexSet& rows, const IndexSet& cols);

Vector unit_vector(const Field& field, int n, int i);
Matrix outer(const Vector& u, const Vector& v);
/// u (x) v - v (x) u.
Matrix wedge(const Vector& u, const Vector& v);
/// e_i ^ e_j, 1-based.
Matrix unit_wedge(const Field& field, int n, int i, int j);

/// A = -A^t with an explicitly zero diagonal.
bool is_alternating(const Matrix& a);

int gauss_rank(const Matrix& a);
/// Bit-packed elimination for GF(2) matrices; same result as gauss_rank.
int gauss_rank_gf2_packed(const Matrix& a);

}  // namespace boundrank

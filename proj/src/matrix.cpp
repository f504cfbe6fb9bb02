#include "boundrank/matrix.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace boundrank {

Matrix::Matrix(const Field& field, int rows, int cols) : field_(&field), rows_(rows), cols_(cols) {
  if (rows < 1 || cols < 1 || rows > kMaxMatrixDim || cols > kMaxMatrixDim)
    throw Error(ErrorCode::InvalidInput, "matrix shape " + std::to_string(rows) + "x" + std::to_string(cols) +
                                             " outside 1.." + std::to_string(kMaxMatrixDim));
  data_.assign(static_cast<std::size_t>(rows) * cols, 0);
}

Matrix Matrix::identity(const Field& field, int n) {
  Matrix m(field, n, n);
  for (int i = 0; i < n; ++i) m.set_raw(i, i, 1);
  return m;
}

Matrix Matrix::from_ints(const Field& field, const std::vector<std::vector<int>>& rows) {
  if (rows.empty() || rows.front().empty()) throw Error(ErrorCode::InvalidInput, "empty matrix");
  Matrix m(field, static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
  for (int r = 0; r < m.rows(); ++r) {
    if (static_cast<int>(rows[r].size()) != m.cols()) throw Error(ErrorCode::InvalidInput, "ragged matrix rows");
    for (int c = 0; c < m.cols(); ++c) m.set(r, c, field.from_int(rows[r][c]));
  }
  return m;
}

Matrix Matrix::unit(const Field& field, int n, int i, int j) {
  require(i >= 1 && i <= n && j >= 1 && j <= n, ErrorCode::InvalidIndexSet, "unit matrix index out of range");
  Matrix m(field, n, n);
  m.set_raw(i - 1, j - 1, 1);
  return m;
}

void Matrix::set(int r, int c, Elem v) {
  field_->check(v);
  data_[index(r, c)] = v.value;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](std::uint8_t v) { return v == 0; });
}

Matrix Matrix::transposed() const {
  Matrix t(*field_, cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t.set_raw(c, r, raw(r, c));
  return t;
}

Matrix Matrix::scaled(Elem c) const {
  field_->check(c);
  Matrix out = *this;
  for (auto& v : out.data_) v = field_->raw_mul(v, c.value);
  return out;
}

std::vector<std::vector<int>> Matrix::to_ints() const {
  std::vector<std::vector<int>> out(rows_, std::vector<int>(cols_));
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) out[r][c] = raw(r, c);
  return out;
}

void Matrix::check_compatible(const Matrix& other) const {
  if (field_->kind() != other.field_->kind())
    throw Error(ErrorCode::FieldMismatch, "matrices over " + field_->name() + " and " + other.field_->name());
  if (rows_ != other.rows_ || cols_ != other.cols_) throw Error(ErrorCode::InvalidInput, "matrix shape mismatch");
}

Matrix& Matrix::operator+=(const Matrix& other) {
  check_compatible(other);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] = field_->raw_add(data_[k], other.data_[k]);
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  check_compatible(other);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] = field_->raw_sub(data_[k], other.data_[k]);
  return *this;
}

IndexSet::IndexSet(std::vector<int> elems) : elems_(std::move(elems)) {
  for (std::size_t a = 0; a < elems_.size(); ++a) {
    if (elems_[a] < 1) throw Error(ErrorCode::InvalidIndexSet, "index sets are 1-based");
    if (a > 0 && elems_[a] <= elems_[a - 1])
      throw Error(ErrorCode::InvalidIndexSet, "index set must be strictly increasing");
  }
}

Matrix submatrix(const Matrix& a, const IndexSet& rows, const IndexSet& cols) {
  if (rows.size() != cols.size() || rows.size() == 0)
    throw Error(ErrorCode::InvalidIndexSet, "submatrix needs |I| = |J| >= 1");
  if (rows.elems().back() > a.rows() || cols.elems().back() > a.cols())
    throw Error(ErrorCode::InvalidIndexSet, "submatrix index out of range");
  Matrix b(a.field(), rows.size(), cols.size());
  for (int x = 0; x < rows.size(); ++x)
    for (int y = 0; y < cols.size(); ++y) b.set_raw(x, y, a.raw(rows[x] - 1, cols[y] - 1));
  return b;
}

Vector unit_vector(const Field& field, int n, int i) {
  require(i >= 1 && i <= n, ErrorCode::InvalidIndexSet, "unit vector index out of range");
  Vector v(n, field.zero());
  v[i - 1] = field.one();
  return v;
}

Matrix outer(const Vector& u, const Vector& v) {
  if (u.size() != v.size() || u.empty()) throw Error(ErrorCode::InvalidInput, "outer product needs equal lengths");
  const Field& f = Field::get(u.front().field);
  const int n = static_cast<int>(u.size());
  Matrix m(f, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.set(i, j, f.mul(u[i], v[j]));
  return m;
}

Matrix wedge(const Vector& u, const Vector& v) { return outer(u, v) - outer(v, u); }

Matrix unit_wedge(const Field& field, int n, int i, int j) {
  return wedge(unit_vector(field, n, i), unit_vector(field, n, j));
}

bool is_alternating(const Matrix& a) {
  if (!a.square()) return false;
  const Field& f = a.field();
  for (int i = 0; i < a.rows(); ++i) {
    if (a.raw(i, i) != 0) return false;
    for (int j = i + 1; j < a.cols(); ++j)
      if (a.raw(i, j) != f.raw_neg(a.raw(j, i))) return false;
  }
  return true;
}

int gauss_rank(const Matrix& a) {
  const Field& f = a.field();
  const int rows = a.rows();
  const int cols = a.cols();
  std::vector<std::uint8_t> m(a.raw_data().begin(), a.raw_data().end());
  auto at = [&](int r, int c) -> std::uint8_t& { return m[static_cast<std::size_t>(r) * cols + c]; };
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r)
      if (at(r, c) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != rank)
      for (int x = 0; x < cols; ++x) std::swap(at(pivot, x), at(rank, x));
    const std::uint8_t inv = f.raw_inv(at(rank, c));
    for (int r = rank + 1; r < rows; ++r) {
      if (at(r, c) == 0) continue;
      const std::uint8_t factor = f.raw_mul(at(r, c), inv);
      for (int x = c; x < cols; ++x) at(r, x) = f.raw_sub(at(r, x), f.raw_mul(factor, at(rank, x)));
    }
    ++rank;
  }
  return rank;
}

int gauss_rank_gf2_packed(const Matrix& a) {
  if (a.field().kind() != FieldKind::gf2)
    throw Error(ErrorCode::FieldMismatch, "packed elimination requires gf2");
  std::uint32_t rows[kMaxMatrixDim] = {};
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c)
      if (a.raw(r, c)) rows[r] |= 1u << c;
  int rank = 0;
  for (int r = 0; r < a.rows(); ++r) {
    const std::uint32_t row = rows[r];
    if (row == 0) continue;
    ++rank;
    const std::uint32_t low = row & (~row + 1u);
    for (int s = r + 1; s < a.rows(); ++s)
      if (rows[s] & low) rows[s] ^= row;
  }
  return rank;
}

}  // namespace boundrank

#include "boundrank/subspace.hpp"

#include <algorithm>
#include <string>

#include "boundrank/combinatorics.hpp"

namespace boundrank {

int coordinate_count(int n, Flavor flavor) { return flavor == Flavor::general ? n * n : n * (n - 1) / 2; }

Pair coordinate_position(int n, Flavor flavor, int coord) {
  if (flavor == Flavor::general) return {coord / n + 1, coord % n + 1};
  for (int i = 1; i <= n; ++i) {
    const int row_len = n - i;
    if (coord < row_len) return {i, i + 1 + coord};
    coord -= row_len;
  }
  throw Error(ErrorCode::InvalidIndexSet, "coordinate out of range");
}

int coordinate_index(int n, Flavor flavor, Pair pos) {
  if (flavor == Flavor::general) return (pos.i - 1) * n + (pos.j - 1);
  if (pos.i > pos.j) std::swap(pos.i, pos.j);
  require(pos.i < pos.j, ErrorCode::InvalidIndexSet, "alternating coordinates need i < j");
  int offset = 0;
  for (int r = 1; r < pos.i; ++r) offset += n - r;
  return offset + (pos.j - pos.i - 1);
}

std::vector<std::uint8_t> to_coordinates(const Matrix& a, Flavor flavor) {
  const int n = a.rows();
  std::vector<std::uint8_t> out;
  out.reserve(coordinate_count(n, flavor));
  for (int i = 0; i < n; ++i)
    for (int j = flavor == Flavor::general ? 0 : i + 1; j < n; ++j) out.push_back(a.raw(i, j));
  return out;
}

void write_coordinates(std::span<const std::uint8_t> coords, Flavor flavor, Matrix& out) {
  const int n = out.rows();
  if (flavor == Flavor::general) {
    std::copy(coords.begin(), coords.end(), out.raw_data().begin());
    return;
  }
  const Field& f = out.field();
  std::size_t c = 0;
  for (int i = 0; i < n; ++i) {
    out.set_raw(i, i, 0);
    for (int j = i + 1; j < n; ++j, ++c) {
      out.set_raw(i, j, coords[c]);
      out.set_raw(j, i, f.raw_neg(coords[c]));
    }
  }
}

Pair lex_leading_position(const Matrix& a) {
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (a.raw(i, j) != 0) return {i + 1, j + 1};
  throw Error(ErrorCode::PreconditionViolated, "q(A) is undefined for the zero matrix");
}

namespace {

// In-place reduced row echelon form; drops zero rows and returns pivots.
std::vector<int> reduce_rows(const Field& f, std::vector<std::vector<std::uint8_t>>& rows, int width) {
  std::vector<int> pivots;
  std::size_t rank = 0;
  for (int c = 0; c < width && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    auto& prow = rows[rank];
    const std::uint8_t inv = f.raw_inv(prow[c]);
    for (int x = c; x < width; ++x) prow[x] = f.raw_mul(prow[x], inv);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      const std::uint8_t factor = rows[r][c];
      for (int x = c; x < width; ++x) rows[r][x] = f.raw_sub(rows[r][x], f.raw_mul(factor, prow[x]));
    }
    pivots.push_back(c);
    ++rank;
  }
  rows.resize(rank);
  return pivots;
}

}  // namespace

MatrixSubspace MatrixSubspace::zero(const Field& field, int n, Flavor flavor) {
  require(n >= 1 && n <= kMaxMatrixDim, ErrorCode::InvalidInput, "subspace order out of range");
  return MatrixSubspace(field, n, flavor);
}

MatrixSubspace MatrixSubspace::from_coordinate_rows(const Field& field, int n, Flavor flavor,
                                                    std::vector<std::vector<std::uint8_t>> rows) {
  MatrixSubspace w = zero(field, n, flavor);
  const int width = boundrank::coordinate_count(n, flavor);
  for (const auto& r : rows)
    require(static_cast<int>(r.size()) == width, ErrorCode::InvalidInput, "coordinate vector of wrong length");
  w.pivots_ = reduce_rows(field, rows, width);
  w.rows_ = std::move(rows);
  return w;
}

MatrixSubspace MatrixSubspace::canonicalize(const Field& field, int n, Flavor flavor,
                                            std::span<const Matrix> matrices) {
  std::vector<std::vector<std::uint8_t>> rows;
  for (const Matrix& a : matrices) {
    if (a.field().kind() != field.kind())
      throw Error(ErrorCode::FieldMismatch, "matrix over " + a.field().name() + " in a " + field.name() + " subspace");
    require(a.rows() == n && a.cols() == n, ErrorCode::InvalidInput, "matrix shape does not match the subspace");
    if (flavor == Flavor::alternating && !is_alternating(a))
      throw Error(ErrorCode::NotAlternating, "alternating subspace given a non-alternating matrix");
    rows.push_back(to_coordinates(a, flavor));
  }
  return from_coordinate_rows(field, n, flavor, std::move(rows));
}

Matrix MatrixSubspace::basis_matrix(int t) const {
  Matrix m(*field_, n_, n_);
  write_coordinates(rows_.at(t), flavor_, m);
  return m;
}

std::vector<Matrix> MatrixSubspace::basis() const {
  std::vector<Matrix> out;
  for (int t = 0; t < dim(); ++t) out.push_back(basis_matrix(t));
  return out;
}

void MatrixSubspace::combine(std::span<const std::uint8_t> coeffs, Matrix& out) const {
  const int width = coordinate_count();
  std::uint8_t acc[kMaxMatrixDim * kMaxMatrixDim] = {};
  for (int t = 0; t < dim(); ++t) {
    const std::uint8_t c = coeffs[t];
    if (c == 0) continue;
    const auto& row = rows_[t];
    for (int x = 0; x < width; ++x)
      if (row[x] != 0) acc[x] = field_->raw_add(acc[x], field_->raw_mul(c, row[x]));
  }
  write_coordinates(std::span<const std::uint8_t>(acc, width), flavor_, out);
}

bool MatrixSubspace::contains(const Matrix& a) const {
  if (a.field().kind() != field_->kind()) throw Error(ErrorCode::FieldMismatch, "membership across fields");
  if (a.rows() != n_ || a.cols() != n_) return false;
  if (flavor_ == Flavor::alternating && !is_alternating(a)) return false;
  std::vector<std::uint8_t> v = to_coordinates(a, flavor_);
  for (int t = 0; t < dim(); ++t) {
    const std::uint8_t c = v[pivots_[t]];
    if (c == 0) continue;
    for (std::size_t x = 0; x < v.size(); ++x) v[x] = field_->raw_sub(v[x], field_->raw_mul(c, rows_[t][x]));
  }
  return std::all_of(v.begin(), v.end(), [](std::uint8_t x) { return x == 0; });
}

bool MatrixSubspace::contains(const MatrixSubspace& other) const {
  for (const Matrix& a : other.basis())
    if (!contains(a)) return false;
  return true;
}

std::vector<Pair> MatrixSubspace::pivot_positions() const {
  std::vector<Pair> out;
  for (int p : pivots_) out.push_back(coordinate_position(n_, flavor_, p));
  return out;
}

BipartiteSupport leading_support(const MatrixSubspace& w) {
  require(w.flavor() == Flavor::general, ErrorCode::InvalidInput, "B(W) is defined for general subspaces");
  return BipartiteSupport(w.n(), w.pivot_positions());
}

GraphSupport leading_support_alt(const MatrixSubspace& u) {
  require(u.flavor() == Flavor::alternating, ErrorCode::InvalidInput, "B_g(U) is defined for alternating subspaces");
  return GraphSupport(u.n(), u.pivot_positions());
}

MatrixSubspace coordinate_space(const Field& field, const BipartiteSupport& b) {
  const int n = std::max(b.n(), 1);
  std::vector<std::vector<std::uint8_t>> rows;
  for (const Pair& p : b.pairs()) {
    std::vector<std::uint8_t> r(coordinate_count(n, Flavor::general), 0);
    r[coordinate_index(n, Flavor::general, p)] = 1;
    rows.push_back(std::move(r));
  }
  return MatrixSubspace::from_coordinate_rows(field, n, Flavor::general, std::move(rows));
}

MatrixSubspace coordinate_space_alt(const Field& field, const GraphSupport& g) {
  const int n = std::max(g.n(), 2);
  std::vector<std::vector<std::uint8_t>> rows;
  for (const Pair& e : g.edges()) {
    std::vector<std::uint8_t> r(coordinate_count(n, Flavor::alternating), 0);
    r[coordinate_index(n, Flavor::alternating, e)] = 1;
    rows.push_back(std::move(r));
  }
  return MatrixSubspace::from_coordinate_rows(field, n, Flavor::alternating, std::move(rows));
}

std::uint64_t member_count(const MatrixSubspace& w, bool projective) {
  const std::uint64_t q = w.field().order();
  const std::uint64_t all = checked_pow(q, w.dim());
  if (!projective) return all;
  if (all == UINT64_MAX) return all;
  return (all - 1) / (q - 1);
}

void member_coefficients(const MatrixSubspace& w, bool projective, std::uint64_t index,
                         std::span<std::uint8_t> coeffs) {
  const int d = w.dim();
  const std::uint64_t q = w.field().order();
  std::fill(coeffs.begin(), coeffs.begin() + d, 0);
  int first_free = 0;
  if (projective) {
    int lead = 0;
    for (; lead < d; ++lead) {
      const std::uint64_t block = checked_pow(q, d - 1 - lead);
      if (index < block) break;
      index -= block;
    }
    require(lead < d, ErrorCode::InvalidInput, "member index out of range");
    coeffs[lead] = 1;
    first_free = lead + 1;
  }
  for (int t = d - 1; t >= first_free; --t) {
    coeffs[t] = static_cast<std::uint8_t>(index % q);
    index /= q;
  }
}

void for_each_member(const MatrixSubspace& w, bool projective, std::uint64_t budget,
                     const std::function<bool(const Matrix&)>& fn) {
  const std::uint64_t count = member_count(w, projective);
  if (count > budget) throw BudgetExceeded(count, budget, "member enumeration");
  Matrix m(w.field(), w.n(), w.n());
  std::vector<std::uint8_t> coeffs(std::max(w.dim(), 1));
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    member_coefficients(w, projective, idx, coeffs);
    w.combine(coeffs, m);
    if (!fn(m)) return;
  }
}

std::vector<Matrix> enumerate_members(const MatrixSubspace& w, bool projective, std::uint64_t budget) {
  std::vector<Matrix> out;
  for_each_member(w, projective, budget, [&](const Matrix& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

int rho_omega(const MatrixSubspace& w, const WeightFn& omega, std::uint64_t budget) {
  int best = 0;
  const int cap = w.n();
  for_each_member(w, true, budget, [&](const Matrix& m) {
    best = std::max(best, omega_rank(m, omega));
    return best < cap;
  });
  return best;
}

int rho(const MatrixSubspace& w, std::uint64_t budget) {
  int best = 0;
  const int cap = w.n();
  const bool packed = w.field().kind() == FieldKind::gf2;
  for_each_member(w, true, budget, [&](const Matrix& m) {
    best = std::max(best, packed ? gauss_rank_gf2_packed(m) : gauss_rank(m));
    return best < cap;
  });
  return best;
}

Ambient Ambient::of(const Field& field, const BipartiteSupport& b) {
  Ambient a{&field, std::max(b.n(), 1), Flavor::general, {}};
  for (const Pair& p : b.pairs()) a.coords.push_back(coordinate_index(a.n, a.flavor, p));
  std::sort(a.coords.begin(), a.coords.end());
  return a;
}

Ambient Ambient::of(const Field& field, const GraphSupport& g) {
  Ambient a{&field, std::max(g.n(), 2), Flavor::alternating, {}};
  for (const Pair& e : g.edges()) a.coords.push_back(coordinate_index(a.n, a.flavor, e));
  std::sort(a.coords.begin(), a.coords.end());
  return a;
}

SubspaceEnumerator::SubspaceEnumerator(Ambient ambient, int d) : ambient_(std::move(ambient)), d_(d) {
  const int big_n = ambient_.size();
  require(d >= 0 && d <= big_n, ErrorCode::InvalidInput, "subspace dimension outside 0..|support|");
  for_each_combination(big_n, d, [&](std::span<const int> pick) {
    pivot_sets_.emplace_back(pick.begin(), pick.end());
    return true;
  });
  // colex: compare from the largest element down
  std::sort(pivot_sets_.begin(), pivot_sets_.end(), [](const std::vector<int>& a, const std::vector<int>& b) {
    return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
  });
  const std::uint64_t q = ambient_.field->order();
  offsets_.push_back(0);
  for (const auto& piv : pivot_sets_) {
    int free = 0;
    for (int r = 0; r < d; ++r) free += (big_n - 1 - piv[r]) - (d - 1 - r);
    offsets_.push_back(sat_add(offsets_.back(), checked_pow(q, free)));
  }
  count_ = offsets_.back();
}

void SubspaceEnumerator::check_budget(std::uint64_t budget, const char* what) const {
  if (count_ > budget) throw BudgetExceeded(count_, budget, what);
}

MatrixSubspace SubspaceEnumerator::at(std::uint64_t index) const {
  require(index < count_, ErrorCode::InvalidInput, "subspace index out of range");
  const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), index);
  const std::size_t set = static_cast<std::size_t>(it - offsets_.begin()) - 1;
  std::uint64_t local = index - offsets_[set];
  const auto& piv = pivot_sets_[set];
  const int big_n = ambient_.size();
  const std::uint64_t q = ambient_.field->order();

  // Echelon rows over the ambient coordinates.
  std::vector<std::vector<std::uint8_t>> ech(d_, std::vector<std::uint8_t>(big_n, 0));
  std::vector<char> is_pivot(big_n, 0);
  for (int p : piv) is_pivot[p] = 1;
  for (int r = 0; r < d_; ++r) ech[r][piv[r]] = 1;
  for (int r = d_ - 1; r >= 0; --r)
    for (int c = big_n - 1; c > piv[r]; --c) {
      if (is_pivot[c]) continue;
      ech[r][c] = static_cast<std::uint8_t>(local % q);
      local /= q;
    }

  MatrixSubspace w(*ambient_.field, ambient_.n, ambient_.flavor);
  const int width = coordinate_count(ambient_.n, ambient_.flavor);
  for (int r = 0; r < d_; ++r) {
    std::vector<std::uint8_t> full(width, 0);
    for (int c = 0; c < big_n; ++c) full[ambient_.coords[c]] = ech[r][c];
    w.rows_.push_back(std::move(full));
    w.pivots_.push_back(ambient_.coords[piv[r]]);
  }
  return w;
}

}  // namespace boundrank

#include "boundrank/schur.hpp"

#include <array>
#include <charconv>
#include <random>

#include "boundrank/combinatorics.hpp"

namespace boundrank {

namespace {

void check_degree(int degree) {
  if (degree < 1 || degree > 10) throw Error(ErrorCode::DegreeOverflow, "weight tables support degrees 1..10");
}

}  // namespace

WeightFn WeightFn::sgn(const Field& field, int max_degree) {
  check_degree(max_degree);
  WeightFn w(field, WeightKind::sgn, "sgn");
  const std::uint8_t minus_one = field.raw_neg(1);
  for (int m = 1; m <= max_degree; ++m) {
    std::vector<std::uint8_t> t(factorial(m));
    std::vector<int> perm(m);
    for (int i = 0; i < m; ++i) perm[i] = i;
    std::size_t rank = 0;
    do {
      t[rank++] = permutation_sign(perm) > 0 ? 1 : minus_one;
    } while (std::next_permutation(perm.begin(), perm.end()));
    w.tables_.push_back(std::move(t));
  }
  return w;
}

WeightFn WeightFn::one(const Field& field, int max_degree) {
  check_degree(max_degree);
  WeightFn w(field, WeightKind::one, "one");
  for (int m = 1; m <= max_degree; ++m) w.tables_.emplace_back(factorial(m), 1);
  return w;
}

WeightFn WeightFn::random(const Field& field, std::uint64_t seed, int max_degree) {
  check_degree(max_degree);
  WeightFn w(field, WeightKind::random, "random:" + std::to_string(seed));
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(field.order()), static_cast<std::uint32_t>(field.characteristic()),
                    static_cast<std::uint32_t>(max_degree)};
  std::mt19937_64 gen(seq);
  std::uniform_int_distribution<int> dist(1, field.order() - 1);
  for (int m = 1; m <= max_degree; ++m) {
    std::vector<std::uint8_t> t(factorial(m));
    for (auto& v : t) v = static_cast<std::uint8_t>(dist(gen));
    w.tables_.push_back(std::move(t));
  }
  return w;
}

WeightFn WeightFn::from_tables(const Field& field, const std::vector<std::vector<int>>& values) {
  check_degree(static_cast<int>(values.size()));
  WeightFn w(field, WeightKind::table, "table");
  for (std::size_t d = 0; d < values.size(); ++d) {
    const int m = static_cast<int>(d) + 1;
    if (values[d].size() != factorial(m))
      throw Error(ErrorCode::InvalidInput, "degree " + std::to_string(m) + " table needs " +
                                               std::to_string(factorial(m)) + " values");
    std::vector<std::uint8_t> t;
    t.reserve(values[d].size());
    for (int v : values[d]) {
      const Elem e = field.canonical(v);
      if (e.is_zero()) throw Error(ErrorCode::InvalidInput, "weight values must be nonzero");
      t.push_back(e.value);
    }
    w.tables_.push_back(std::move(t));
  }
  return w;
}

WeightFn WeightFn::parse(const Field& field, std::string_view spec, int max_degree) {
  if (spec == "sgn") return sgn(field, max_degree);
  if (spec == "one") return one(field, max_degree);
  constexpr std::string_view prefix = "random:";
  if (spec.substr(0, prefix.size()) == prefix) {
    const std::string_view digits = spec.substr(prefix.size());
    std::uint64_t seed = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), seed);
    if (ec == std::errc() && ptr == digits.data() + digits.size() && !digits.empty())
      return random(field, seed, max_degree);
  }
  throw Error(ErrorCode::InvalidInput, "unknown weight function '" + std::string(spec) + "'");
}

std::span<const std::uint8_t> WeightFn::table(int degree) const {
  if (degree < 1 || degree > max_degree())
    throw Error(ErrorCode::DegreeOverflow,
                "degree " + std::to_string(degree) + " exceeds weight tables (max " + std::to_string(max_degree()) + ")");
  return tables_[degree - 1];
}

Elem WeightFn::at(std::span<const int> perm) const {
  const auto t = table(static_cast<int>(perm.size()));
  return {t[lehmer_rank(perm)], field_->kind()};
}

namespace {

// Depth-first permutation expansion. `rank` accumulates the Lehmer rank of
// the partial permutation so the weight lookup is a single table read.
struct Expansion {
  const std::uint8_t* block;
  int k;
  const Field& field;
  const std::uint8_t* weights;
  std::array<std::uint64_t, 17> fact{};
  std::uint8_t acc = 0;

  void run(int row, unsigned used, std::size_t rank, std::uint8_t prod) {
    if (row == k) {
      acc = field.raw_add(acc, field.raw_mul(prod, weights[rank]));
      return;
    }
    int smaller_unused = 0;
    for (int c = 0; c < k; ++c) {
      if (used & (1u << c)) continue;
      const std::uint8_t v = block[row * k + c];
      if (v != 0) run(row + 1, used | (1u << c), rank + smaller_unused * fact[k - 1 - row], field.raw_mul(prod, v));
      ++smaller_unused;
    }
  }
};

}  // namespace

std::uint8_t d_omega_raw(const std::uint8_t* block, int k, const WeightFn& omega) {
  const auto weights = omega.table(k);
  Expansion e{block, k, omega.field(), weights.data()};
  for (int i = 0; i <= 16; ++i) e.fact[i] = factorial(i);
  e.run(0, 0, 0, 1);
  return e.acc;
}

Elem d_omega(const Matrix& a, const WeightFn& omega) {
  if (!a.square()) throw Error(ErrorCode::InvalidInput, "D_omega needs a square matrix");
  if (a.field().kind() != omega.field().kind())
    throw Error(ErrorCode::FieldMismatch, "matrix and weight function over different fields");
  return {d_omega_raw(a.raw_data().data(), a.rows(), omega), a.field().kind()};
}

Elem permanent_ryser(const Matrix& a) {
  if (!a.square()) throw Error(ErrorCode::InvalidInput, "permanent needs a square matrix");
  const Field& f = a.field();
  const int n = a.rows();
  std::uint8_t total = 0;
  for (std::uint32_t s = 1; s < (1u << n); ++s) {
    std::uint8_t prod = 1;
    for (int i = 0; i < n && prod != 0; ++i) {
      std::uint8_t row_sum = 0;
      for (int j = 0; j < n; ++j)
        if (s & (1u << j)) row_sum = f.raw_add(row_sum, a.raw(i, j));
      prod = f.raw_mul(prod, row_sum);
    }
    // sign (-1)^(n - |S|)
    const bool negate = ((n - std::popcount(s)) & 1) != 0;
    total = f.raw_add(total, negate ? f.raw_neg(prod) : prod);
  }
  return {total, f.kind()};
}

Elem determinant_elim(const Matrix& a) {
  if (!a.square()) throw Error(ErrorCode::InvalidInput, "determinant needs a square matrix");
  const Field& f = a.field();
  const int n = a.rows();
  Matrix m = a;
  std::uint8_t det = 1;
  for (int c = 0; c < n; ++c) {
    int pivot = -1;
    for (int r = c; r < n; ++r)
      if (m.raw(r, c) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) return f.zero();
    if (pivot != c) {
      for (int x = 0; x < n; ++x) {
        const std::uint8_t t = m.raw(pivot, x);
        m.set_raw(pivot, x, m.raw(c, x));
        m.set_raw(c, x, t);
      }
      det = f.raw_neg(det);
    }
    det = f.raw_mul(det, m.raw(c, c));
    const std::uint8_t inv = f.raw_inv(m.raw(c, c));
    for (int r = c + 1; r < n; ++r) {
      if (m.raw(r, c) == 0) continue;
      const std::uint8_t factor = f.raw_mul(m.raw(r, c), inv);
      for (int x = c; x < n; ++x) m.set_raw(r, x, f.raw_sub(m.raw(r, x), f.raw_mul(factor, m.raw(c, x))));
    }
  }
  return {det, f.kind()};
}

namespace {

void extend_matchings(std::vector<int>& free, PerfectMatching& current, std::vector<PerfectMatching>& out) {
  if (free.empty()) {
    out.push_back(current);
    return;
  }
  const int i = free.front();
  for (std::size_t b = 1; b < free.size(); ++b) {
    const int j = free[b];
    std::vector<int> rest;
    rest.reserve(free.size() - 2);
    for (std::size_t c = 1; c < free.size(); ++c)
      if (c != b) rest.push_back(free[c]);
    current.pairs.emplace_back(i, j);
    extend_matchings(rest, current, out);
    current.pairs.pop_back();
  }
}

}  // namespace

std::vector<PerfectMatching> perfect_matchings(int order) {
  if (order < 0 || order % 2 != 0) throw Error(ErrorCode::NotAlternating, "perfect matchings need an even order");
  std::vector<int> free(order);
  for (int i = 0; i < order; ++i) free[i] = i + 1;
  std::vector<PerfectMatching> out;
  PerfectMatching current;
  extend_matchings(free, current, out);
  return out;
}

int matching_sign(const PerfectMatching& m) {
  std::vector<int> perm;
  perm.reserve(m.pairs.size() * 2);
  for (const auto& [i, j] : m.pairs) {
    perm.push_back(i - 1);
    perm.push_back(j - 1);
  }
  return permutation_sign(perm);
}

Elem pfaffian(const Matrix& a) {
  if (!is_alternating(a)) throw Error(ErrorCode::NotAlternating, "Pfaffian needs an alternating matrix");
  if (a.rows() % 2 != 0) throw Error(ErrorCode::NotAlternating, "Pfaffian needs an even order");
  const Field& f = a.field();
  std::uint8_t total = 0;
  for (const PerfectMatching& m : perfect_matchings(a.rows())) {
    std::uint8_t prod = 1;
    for (const auto& [i, j] : m.pairs) prod = f.raw_mul(prod, a.raw(i - 1, j - 1));
    if (prod == 0) continue;
    total = f.raw_add(total, matching_sign(m) > 0 ? prod : f.raw_neg(prod));
  }
  return {total, f.kind()};
}

namespace {

// True iff some m x m submatrix has nonzero D_omega.
bool has_nonzero_minor(const Matrix& a, const WeightFn& omega, int m) {
  std::array<std::uint8_t, kMaxMatrixDim * kMaxMatrixDim> block{};
  const int rows = a.rows();
  const int cols = a.cols();
  bool found = false;
  for_each_combination(rows, m, [&](std::span<const int> ri) {
    for_each_combination(cols, m, [&](std::span<const int> ci) {
      for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y) block[x * m + y] = a.raw(ri[x], ci[y]);
      found = d_omega_raw(block.data(), m, omega) != 0;
      return !found;
    });
    return !found;
  });
  return found;
}

void check_omega_field(const Matrix& a, const WeightFn& omega) {
  if (a.field().kind() != omega.field().kind())
    throw Error(ErrorCode::FieldMismatch, "matrix and weight function over different fields");
  const int top = std::min(a.rows(), a.cols());
  if (top > omega.max_degree())
    throw Error(ErrorCode::DegreeOverflow, "matrix order " + std::to_string(top) + " exceeds weight tables (max " +
                                               std::to_string(omega.max_degree()) + ")");
}

}  // namespace

int omega_rank(const Matrix& a, const WeightFn& omega) {
  check_omega_field(a, omega);
  if (a.is_zero()) return 0;
  for (int m = std::min(a.rows(), a.cols()); m >= 1; --m)
    if (has_nonzero_minor(a, omega, m)) return m;
  return 0;
}

bool omega_rank_exceeds(const Matrix& a, const WeightFn& omega, int k) {
  check_omega_field(a, omega);
  if (a.is_zero()) return false;
  for (int m = std::min(a.rows(), a.cols()); m > k && m >= 1; --m)
    if (has_nonzero_minor(a, omega, m)) return true;
  return false;
}

int rho_omega_of_list(std::span<const Matrix> list, const WeightFn& omega) {
  if (list.empty()) throw Error(ErrorCode::InvalidInput, "rho_omega of an empty list");
  int best = 0;
  for (const Matrix& a : list) {
    if (a.rows() != list.front().rows() || a.cols() != list.front().cols())
      throw Error(ErrorCode::InvalidInput, "matrices of different shapes");
    best = std::max(best, omega_rank(a, omega));
  }
  return best;
}

}  // namespace boundrank

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "boundrank/error.hpp"

namespace boundrank {

enum class FieldKind : std::uint8_t { gf2, gf3, gf4, gf5, gf7, gf11, gf13 };

inline constexpr int kMaxFieldOrder = 13;

/// A field element tagged with the field it belongs to. The value is the
/// canonical representative: 0..p-1 for GF(p); for GF(4) bit 1 is the
/// coefficient of the generator g and bit 0 the constant term, so
/// 0, 1, 2 = g, 3 = g + 1.
struct Elem {
  std::uint8_t value = 0;
  FieldKind field = FieldKind::gf2;

  bool is_zero() const { return value == 0; }
  friend bool operator==(const Elem&, const Elem&) = default;
};

/// Exact arithmetic in one of the supported small fields, backed by full
/// operation tables. Instances are immutable singletons obtained through get().
class Field {
 public:
  static const Field& get(FieldKind kind);
  /// Accepts "gf2" | "gf3" | "gf4" | "gf5" | "gf7" | "gf11" | "gf13".
  static const Field& parse(std::string_view name);
  static const std::vector<FieldKind>& supported();

  FieldKind kind() const { return kind_; }
  int order() const { return order_; }
  int characteristic() const { return characteristic_; }
  std::string name() const;

  Elem zero() const { return {0, kind_}; }
  Elem one() const { return {1, kind_}; }
  /// Maps an integer to the field. Prime fields reduce modulo p (negative
  /// values allowed); GF(4) requires a canonical representative 0..3.
  Elem from_int(long long v) const;
  /// Canonical representative 0..p-1 (prime) or 0..3 (GF(4)), checked.
  Elem canonical(int v) const;
  int to_int(Elem a) const;

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem mul(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  /// All q elements, zero first, then in increasing canonical value.
  std::vector<Elem> elements() const;

  // Unchecked table access on raw canonical values, for inner loops that
  // operate on matrix storage directly.
  std::uint8_t raw_add(std::uint8_t a, std::uint8_t b) const { return add_[a][b]; }
  std::uint8_t raw_sub(std::uint8_t a, std::uint8_t b) const { return add_[a][neg_[b]]; }
  std::uint8_t raw_mul(std::uint8_t a, std::uint8_t b) const { return mul_[a][b]; }
  std::uint8_t raw_neg(std::uint8_t a) const { return neg_[a]; }
  std::uint8_t raw_inv(std::uint8_t a) const { return inv_[a]; }

  void check(Elem a) const {
    if (a.field != kind_) throw Error(ErrorCode::FieldMismatch, "element from " + kind_name(a.field) + " used in " + name());
  }

  static std::string kind_name(FieldKind kind);

  bool operator==(const Field& other) const { return kind_ == other.kind_; }

 private:
  explicit Field(FieldKind kind);

  using Table = std::array<std::array<std::uint8_t, kMaxFieldOrder>, kMaxFieldOrder>;

  FieldKind kind_;
  int order_;
  int characteristic_;
  Table add_{};
  Table mul_{};
  std::array<std::uint8_t, kMaxFieldOrder> neg_{};
  std::array<std::uint8_t, kMaxFieldOrder> inv_{};
};

}  // namespace boundrank

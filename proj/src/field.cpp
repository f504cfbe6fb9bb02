#include "boundrank/field.hpp"

namespace boundrank {

namespace {

int prime_of(FieldKind kind) {
  switch (kind) {
    case FieldKind::gf2: return 2;
    case FieldKind::gf3: return 3;
    case FieldKind::gf5: return 5;
    case FieldKind::gf7: return 7;
    case FieldKind::gf11: return 11;
    case FieldKind::gf13: return 13;
    case FieldKind::gf4: return 0;
  }
  return 0;
}

// Carry-less product of two degree <= 1 polynomials over GF(2), reduced by x^2 + x + 1.
std::uint8_t gf4_mul(std::uint8_t a, std::uint8_t b) {
  unsigned prod = 0;
  for (int bit = 0; bit < 2; ++bit)
    if (b & (1u << bit)) prod ^= static_cast<unsigned>(a) << bit;
  if (prod & 4u) prod ^= 0b111u;
  return static_cast<std::uint8_t>(prod);
}

}  // namespace

Field::Field(FieldKind kind) : kind_(kind) {
  if (kind == FieldKind::gf4) {
    order_ = 4;
    characteristic_ = 2;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        add_[a][b] = static_cast<std::uint8_t>(a ^ b);
        mul_[a][b] = gf4_mul(static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b));
      }
  } else {
    const int p = prime_of(kind);
    order_ = p;
    characteristic_ = p;
    for (int a = 0; a < p; ++a)
      for (int b = 0; b < p; ++b) {
        add_[a][b] = static_cast<std::uint8_t>((a + b) % p);
        mul_[a][b] = static_cast<std::uint8_t>((a * b) % p);
      }
  }
  for (int a = 0; a < order_; ++a) {
    for (int b = 0; b < order_; ++b) {
      if (add_[a][b] == 0) neg_[a] = static_cast<std::uint8_t>(b);
      if (mul_[a][b] == 1) inv_[a] = static_cast<std::uint8_t>(b);
    }
  }
}

const Field& Field::get(FieldKind kind) {
  static const Field fields[] = {Field(FieldKind::gf2), Field(FieldKind::gf3), Field(FieldKind::gf4),
                                 Field(FieldKind::gf5), Field(FieldKind::gf7), Field(FieldKind::gf11),
                                 Field(FieldKind::gf13)};
  return fields[static_cast<int>(kind)];
}

const std::vector<FieldKind>& Field::supported() {
  static const std::vector<FieldKind> kinds = {FieldKind::gf2, FieldKind::gf3,  FieldKind::gf4, FieldKind::gf5,
                                               FieldKind::gf7, FieldKind::gf11, FieldKind::gf13};
  return kinds;
}

std::string Field::kind_name(FieldKind kind) {
  switch (kind) {
    case FieldKind::gf2: return "gf2";
    case FieldKind::gf3: return "gf3";
    case FieldKind::gf4: return "gf4";
    case FieldKind::gf5: return "gf5";
    case FieldKind::gf7: return "gf7";
    case FieldKind::gf11: return "gf11";
    case FieldKind::gf13: return "gf13";
  }
  return "?";
}

std::string Field::name() const { return kind_name(kind_); }

const Field& Field::parse(std::string_view name) {
  for (FieldKind kind : supported())
    if (kind_name(kind) == name) return get(kind);
  throw Error(ErrorCode::InvalidInput, "unknown field '" + std::string(name) + "'");
}

Elem Field::from_int(long long v) const {
  if (kind_ == FieldKind::gf4) return canonical(static_cast<int>(v));
  long long r = v % order_;
  if (r < 0) r += order_;
  return {static_cast<std::uint8_t>(r), kind_};
}

Elem Field::canonical(int v) const {
  if (v < 0 || v >= order_)
    throw Error(ErrorCode::InvalidInput, std::to_string(v) + " is not a canonical element of " + name());
  return {static_cast<std::uint8_t>(v), kind_};
}

int Field::to_int(Elem a) const {
  check(a);
  return a.value;
}

Elem Field::add(Elem a, Elem b) const {
  check(a);
  check(b);
  return {add_[a.value][b.value], kind_};
}

Elem Field::sub(Elem a, Elem b) const {
  check(a);
  check(b);
  return {raw_sub(a.value, b.value), kind_};
}

Elem Field::mul(Elem a, Elem b) const {
  check(a);
  check(b);
  return {mul_[a.value][b.value], kind_};
}

Elem Field::neg(Elem a) const {
  check(a);
  return {neg_[a.value], kind_};
}

Elem Field::inv(Elem a) const {
  check(a);
  if (a.value == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero in " + name());
  return {inv_[a.value], kind_};
}

std::vector<Elem> Field::elements() const {
  std::vector<Elem> out;
  out.reserve(order_);
  for (int v = 0; v < order_; ++v) out.push_back({static_cast<std::uint8_t>(v), kind_});
  return out;
}

}  // namespace boundrank

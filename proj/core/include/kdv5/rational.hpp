#ifndef KDV5_RATIONAL_HPP
#define KDV5_RATIONAL_HPP

#include <cstdint>
#include <numeric>
#include <optional>

namespace kdv5 {

/// Exact rational number on 64-bit components, normalized (den > 0, gcd = 1).
/// Arithmetic is checked: operations return nullopt instead of overflowing,
/// at which point callers fall back to double arithmetic.
class Rational {
 public:
  constexpr Rational() : num_(0), den_(1) {}
  constexpr Rational(long long n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)

  static std::optional<Rational> make(long long num, long long den);

  long long num() const { return num_; }
  long long den() const { return den_; }
  bool is_integer() const { return den_ == 1; }
  bool is_zero() const { return num_ == 0; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  static std::optional<Rational> add(const Rational& a, const Rational& b);
  static std::optional<Rational> sub(const Rational& a, const Rational& b);
  static std::optional<Rational> mul(const Rational& a, const Rational& b);
  static std::optional<Rational> div(const Rational& a, const Rational& b);  // b != 0
  static std::optional<Rational> pow(const Rational& a, long long e);
  std::optional<Rational> negated() const;

  friend bool operator==(const Rational& a, const Rational& b) = default;

 private:
  static std::optional<Rational> from_i128(__int128 num, __int128 den);

  long long num_;
  long long den_;
};

inline std::optional<Rational> Rational::from_i128(__int128 num, __int128 den) {
  if (den == 0) return std::nullopt;
  if (den < 0) {
    num = -num;
    den = -den;
  }
  __int128 a = num < 0 ? -num : num;
  __int128 b = den;
  while (b != 0) {
    __int128 r = a % b;
    a = b;
    b = r;
  }
  if (a != 0) {
    num /= a;
    den /= a;
  }
  constexpr __int128 lo = INT64_MIN, hi = INT64_MAX;
  if (num < lo || num > hi || den > hi) return std::nullopt;
  Rational r;
  r.num_ = static_cast<long long>(num);
  r.den_ = static_cast<long long>(den);
  return r;
}

inline std::optional<Rational> Rational::make(long long num, long long den) {
  return from_i128(num, den);
}

inline std::optional<Rational> Rational::add(const Rational& a, const Rational& b) {
  return from_i128(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                   static_cast<__int128>(a.den_) * b.den_);
}

inline std::optional<Rational> Rational::sub(const Rational& a, const Rational& b) {
  return from_i128(static_cast<__int128>(a.num_) * b.den_ - static_cast<__int128>(b.num_) * a.den_,
                   static_cast<__int128>(a.den_) * b.den_);
}

inline std::optional<Rational> Rational::mul(const Rational& a, const Rational& b) {
  return from_i128(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
}

inline std::optional<Rational> Rational::div(const Rational& a, const Rational& b) {
  if (b.num_ == 0) return std::nullopt;
  return from_i128(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
}

inline std::optional<Rational> Rational::pow(const Rational& a, long long e) {
  if (e < 0) {
    if (a.num_ == 0) return std::nullopt;
    auto inv = from_i128(a.den_, a.num_);
    if (!inv) return std::nullopt;
    return pow(*inv, -e);
  }
  if (e > 256) return std::nullopt;  // would overflow for any base with |base| > 1
  Rational acc(1);
  for (long long i = 0; i < e; ++i) {
    auto next = mul(acc, a);
    if (!next) return std::nullopt;
    acc = *next;
  }
  return acc;
}

inline std::optional<Rational> Rational::negated() const {
  return from_i128(-static_cast<__int128>(num_), den_);
}

}  // namespace kdv5

#endif  // KDV5_RATIONAL_HPP

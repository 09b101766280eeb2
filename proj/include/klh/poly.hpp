#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace klh {

// Coefficient arithmetic never wraps: every add/mul is range-checked and a
// failed check throws.  For the group sizes this library targets the values
// stay far inside 64 bits, so an overflow always means a logic error upstream.
class OverflowError : public std::runtime_error {
 public:
  explicit OverflowError(const std::string& msg) : std::runtime_error(msg) {}
};

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("coefficient overflow in addition");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("coefficient overflow in multiplication");
  return r;
}

// Dense polynomial in q with 64-bit integer coefficients.  coeff(i) is the
// coefficient of q^i.  Trailing zeros are trimmed, so the zero polynomial has
// an empty coefficient vector and degree() == -1 (the distinguished sentinel).
class IntPolynomial {
 public:
  IntPolynomial() = default;

  explicit IntPolynomial(std::vector<std::int64_t> coeffs) : c_(std::move(coeffs)) { trim(); }

  static IntPolynomial zero() { return IntPolynomial(); }
  static IntPolynomial one() { return monomial(0, 1); }
  static IntPolynomial q() { return monomial(1, 1); }

  static IntPolynomial monomial(int deg, std::int64_t coeff) {
    if (deg < 0) throw std::invalid_argument("monomial degree must be non-negative");
    if (coeff == 0) return IntPolynomial();
    std::vector<std::int64_t> c(static_cast<std::size_t>(deg) + 1, 0);
    c.back() = coeff;
    return IntPolynomial(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }

  std::int64_t coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
    return c_[static_cast<std::size_t>(i)];
  }

  const std::vector<std::int64_t>& coeffs() const { return c_; }

  bool operator==(const IntPolynomial& o) const { return c_ == o.c_; }
  bool operator!=(const IntPolynomial& o) const { return !(*this == o); }

  IntPolynomial& operator+=(const IntPolynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = checked_add(c_[i], o.c_[i]);
    trim();
    return *this;
  }

  IntPolynomial& operator-=(const IntPolynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = checked_add(c_[i], checked_mul(-1, o.c_[i]));
    trim();
    return *this;
  }

  friend IntPolynomial operator+(IntPolynomial a, const IntPolynomial& b) { return a += b; }
  friend IntPolynomial operator-(IntPolynomial a, const IntPolynomial& b) { return a -= b; }

  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return IntPolynomial();
    std::vector<std::int64_t> r(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j)
        r[i + j] = checked_add(r[i + j], checked_mul(a.c_[i], b.c_[j]));
    }
    return IntPolynomial(std::move(r));
  }

  IntPolynomial scaled(std::int64_t k) const {
    std::vector<std::int64_t> r(c_);
    for (auto& x : r) x = checked_mul(x, k);
    return IntPolynomial(std::move(r));
  }

  // q^k * this
  IntPolynomial shifted(int k) const {
    if (k < 0) throw std::invalid_argument("negative shift");
    if (is_zero()) return IntPolynomial();
    std::vector<std::int64_t> r(c_.size() + static_cast<std::size_t>(k), 0);
    for (std::size_t i = 0; i < c_.size(); ++i) r[i + static_cast<std::size_t>(k)] = c_[i];
    return IntPolynomial(std::move(r));
  }

  // q^d * this(1/q); requires d >= degree().
  IntPolynomial mirrored(int d) const {
    if (d < degree()) throw std::invalid_argument("mirror window below degree");
    if (is_zero()) return IntPolynomial();
    std::vector<std::int64_t> r(static_cast<std::size_t>(d) + 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) r[static_cast<std::size_t>(d) - i] = c_[i];
    return IntPolynomial(std::move(r));
  }

  // Drops all terms of degree > maxdeg (maxdeg < 0 yields zero).
  IntPolynomial truncated(int maxdeg) const {
    if (maxdeg < 0) return IntPolynomial();
    if (degree() <= maxdeg) return *this;
    std::vector<std::int64_t> r(c_.begin(), c_.begin() + maxdeg + 1);
    return IntPolynomial(std::move(r));
  }

  std::int64_t eval(std::int64_t x) const {
    std::int64_t acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = checked_add(checked_mul(acc, x), c_[i]);
    return acc;
  }

  bool all_nonnegative() const {
    for (auto x : c_)
      if (x < 0) return false;
    return true;
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      if (!s.empty()) s += c_[i] > 0 ? " + " : " - ";
      else if (c_[i] < 0) s += "-";
      std::int64_t a = c_[i] > 0 ? c_[i] : -c_[i];
      if (a != 1 || i == 0) s += std::to_string(a);
      if (i >= 1) s += i == 1 ? "q" : "q^" + std::to_string(i);
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<std::int64_t> c_;
};

}  // namespace klh

#pragma once

#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace klh {

// A non-negative integer or infinity.  Infinity is a distinguished value that
// compares above every finite one; it is how smooth elements report h.
class HValue {
 public:
  HValue() : v_(0) {}
  explicit HValue(std::int64_t v) : v_(v) {
    if (v < 0) throw std::invalid_argument("HValue must be non-negative");
  }

  static HValue infinity() {
    HValue h;
    h.v_ = kInf;
    return h;
  }

  bool is_infinite() const { return v_ == kInf; }

  std::int64_t value() const {
    if (is_infinite()) throw std::logic_error("value() on infinite HValue");
    return v_;
  }

  friend bool operator==(const HValue& a, const HValue& b) { return a.v_ == b.v_; }
  friend bool operator!=(const HValue& a, const HValue& b) { return a.v_ != b.v_; }
  friend bool operator<(const HValue& a, const HValue& b) { return a.v_ < b.v_; }
  friend bool operator<=(const HValue& a, const HValue& b) { return a.v_ <= b.v_; }
  friend bool operator>(const HValue& a, const HValue& b) { return a.v_ > b.v_; }
  friend bool operator>=(const HValue& a, const HValue& b) { return a.v_ >= b.v_; }

  static HValue min(const HValue& a, const HValue& b) { return a <= b ? a : b; }

  std::string str() const { return is_infinite() ? "inf" : std::to_string(v_); }

  friend std::ostream& operator<<(std::ostream& os, const HValue& h) { return os << h.str(); }

 private:
  static constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();
  std::int64_t v_;
};

}  // namespace klh

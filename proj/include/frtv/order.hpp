#pragma once

#include <limits>
#include <string>

namespace frtv {

/// Positive derivative order r = floor(r) + s with s in [0, 1).
class Order {
 public:
  explicit Order(double value);

  double value() const { return value_; }
  int floor() const { return floor_; }
  double frac() const { return frac_; }
  bool is_integer() const { return frac_ == 0.0; }

  friend bool operator==(const Order& a, const Order& b) { return a.value_ == b.value_; }
  friend bool operator<(const Order& a, const Order& b) { return a.value_ < b.value_; }

 private:
  double value_;
  int floor_;
  double frac_;
};

enum class Side { left, right, central };

Side parse_side(const std::string& text);
std::string to_string(Side side);

/// Exponent of the pointwise vector norm, p in [1, inf].
class EllP {
 public:
  explicit EllP(double p);
  static EllP infinity() { return EllP(std::numeric_limits<double>::infinity()); }

  double p() const { return p_; }
  bool is_infinity() const { return p_ == std::numeric_limits<double>::infinity(); }
  /// Hoelder conjugate q with 1/p + 1/q = 1.
  EllP dual() const;

  friend bool operator==(const EllP& a, const EllP& b) { return a.p_ == b.p_; }

 private:
  double p_;
};

EllP parse_ellp(const std::string& text);
std::string to_string(const EllP& p);

}  // namespace frtv

#include "frtv/order.hpp"

#include <cmath>
#include <stdexcept>

namespace frtv {

Order::Order(double value) : value_(value) {
  if (!std::isfinite(value) || value <= 0.0) {
    throw std::invalid_argument("order must be a positive finite number, got " +
                                std::to_string(value));
  }
  floor_ = static_cast<int>(std::floor(value));
  frac_ = value - floor_;
}

Side parse_side(const std::string& text) {
  if (text == "left") return Side::left;
  if (text == "right") return Side::right;
  if (text == "central") return Side::central;
  throw std::invalid_argument("side must be one of left, right, central; got '" + text + "'");
}

std::string to_string(Side side) {
  switch (side) {
    case Side::left:
      return "left";
    case Side::right:
      return "right";
    case Side::central:
      return "central";
  }
  return "?";
}

EllP::EllP(double p) : p_(p) {
  if (std::isnan(p) || p < 1.0) {
    throw std::invalid_argument("p must lie in [1, inf], got " + std::to_string(p));
  }
}

EllP EllP::dual() const {
  if (is_infinity()) return EllP(1.0);
  if (p_ == 1.0) return infinity();
  return EllP(p_ / (p_ - 1.0));
}

EllP parse_ellp(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "Inf") return EllP::infinity();
  std::size_t used = 0;
  double p = 0.0;
  try {
    p = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size()) throw std::invalid_argument("cannot parse p from '" + text + "'");
  return EllP(p);
}

std::string to_string(const EllP& p) {
  if (p.is_infinity()) return "inf";
  std::string s = std::to_string(p.p());
  s.erase(s.find_last_not_of('0') + 1);
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

}  // namespace frtv

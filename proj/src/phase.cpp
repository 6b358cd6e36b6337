#include "sgk/phase.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "sgk/error.hpp"

namespace sgk {

namespace {

double wrap_turns(double t) {
  t -= std::floor(t);
  return t >= 1.0 ? 0.0 : t;
}

}  // namespace

Phase Phase::turn(std::int64_t num, std::int64_t den) {
  if (den <= 0) throw Error("InvalidPhase", "phase denominator must be positive");
  num %= den;
  if (num < 0) num += den;
  std::int64_t g = std::gcd(num, den);
  Phase p;
  p.num_ = num / g;
  p.den_ = den / g;
  return p;
}

Phase Phase::approx(std::complex<double> z) {
  if (std::abs(std::abs(z) - 1.0) > kTolerance) {
    throw Error("NotUnimodular", "phase value is not on the unit circle");
  }
  Phase p;
  p.exact_ = false;
  p.approx_ = z / std::abs(z);
  return p;
}

double Phase::turns() const {
  if (exact_) return static_cast<double>(num_) / static_cast<double>(den_);
  return wrap_turns(std::arg(approx_) / (2.0 * std::numbers::pi));
}

std::complex<double> Phase::value() const {
  if (!exact_) return approx_;
  // Exact values for the quarter-turn lattice keep integer arithmetic exact.
  if (den_ == 1) return {1.0, 0.0};
  if (den_ == 2) return {-1.0, 0.0};
  if (den_ == 4) return num_ == 1 ? std::complex<double>{0.0, 1.0} : std::complex<double>{0.0, -1.0};
  return std::polar(1.0, 2.0 * std::numbers::pi * turns());
}

Phase Phase::operator*(const Phase& other) const {
  if (exact_ && other.exact_) {
    std::int64_t l = std::lcm(den_, other.den_);
    return turn(num_ * (l / den_) + other.num_ * (l / other.den_), l);
  }
  return approx(value() * other.value());
}

Phase Phase::conj() const {
  if (exact_) return turn(-num_, den_);
  return approx(std::conj(approx_));
}

Phase Phase::pow(std::int64_t k) const {
  if (exact_) {
    std::int64_t kk = k % den_;
    return turn(num_ * kk, den_);
  }
  return approx(std::polar(1.0, std::arg(approx_) * static_cast<double>(k)));
}

std::vector<Phase> Phase::roots(std::int64_t p) const {
  if (p <= 0) throw Error("InvalidArgument", "root order must be positive");
  std::vector<Phase> out;
  for (std::int64_t j = 0; j < p; ++j) {
    if (exact_) {
      // (q + j) / p with q = num/den
      out.push_back(turn(num_ + j * den_, den_ * p));
    } else {
      double t = (turns() + static_cast<double>(j)) / static_cast<double>(p);
      out.push_back(approx(std::polar(1.0, 2.0 * std::numbers::pi * t)));
    }
  }
  return out;
}

bool Phase::equals(const Phase& other) const {
  if (exact_ && other.exact_) return num_ == other.num_ && den_ == other.den_;
  return std::abs(value() - other.value()) <= kTolerance;
}

bool Phase::identical(const Phase& other) const {
  if (exact_ != other.exact_) return false;
  if (exact_) return num_ == other.num_ && den_ == other.den_;
  return approx_ == other.approx_;
}

bool Phase::less(const Phase& other) const {
  if (exact_ && other.exact_) {
    return num_ * other.den_ < other.num_ * den_;
  }
  if (equals(other)) return false;
  return turns() < other.turns();
}

std::string Phase::to_string() const {
  std::ostringstream out;
  if (exact_) {
    if (num_ == 0) return "1";
    out << "exp(2pi i " << num_ << "/" << den_ << ")";
  } else {
    out.precision(12);
    out << "(" << approx_.real() << (approx_.imag() < 0 ? "-" : "+")
        << std::abs(approx_.imag()) << "i)";
  }
  return out.str();
}

}  // namespace sgk

#include "sgk/series.hpp"

#include <cmath>

namespace sgk {

FormalElement FormalElement::monomial(const Path& mu, Complex c) {
  FormalElement a;
  a.add(mu, c);
  return a;
}

void FormalElement::add(const Path& mu, Complex c) {
  if (c == Complex{}) return;
  auto [it, inserted] = terms_.try_emplace(mu, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Complex{}) terms_.erase(it);
  }
}

Complex FormalElement::coeff(const Path& mu) const {
  auto it = terms_.find(mu);
  return it == terms_.end() ? Complex{} : it->second;
}

std::size_t FormalElement::degree() const {
  // map order is by length first
  return terms_.empty() ? 0 : terms_.rbegin()->first.length();
}

FormalElement& FormalElement::operator+=(const FormalElement& other) {
  for (const auto& [mu, c] : other.terms_) add(mu, c);
  return *this;
}

FormalElement operator*(Complex c, const FormalElement& a) {
  FormalElement out;
  for (const auto& [mu, x] : a.terms_) out.add(mu, c * x);
  return out;
}

bool approx_equal(const FormalElement& a, const FormalElement& b, double tol) {
  for (const auto& [mu, c] : a.terms()) {
    if (std::abs(c - b.coeff(mu)) > tol) return false;
  }
  for (const auto& [mu, c] : b.terms()) {
    if (std::abs(c - a.coeff(mu)) > tol) return false;
  }
  return true;
}

FormalElement formal_mul(const FormalElement& a, const FormalElement& b) {
  FormalElement out;
  for (const auto& [mu, x] : a.terms()) {
    for (const auto& [nu, y] : b.terms()) {
      if (auto p = compose(mu, nu)) out.add(*p, x * y);
    }
  }
  return out;
}

FormalElement fourier_coeff(const FormalElement& a, long long m) {
  FormalElement out;
  if (m < 0) return out;
  for (const auto& [mu, c] : a.terms()) {
    if (static_cast<long long>(mu.length()) == m) out.add(mu, c);
  }
  return out;
}

FormalElement cesaro(const FormalElement& a, std::size_t k) {
  if (k == 0) throw Error("InvalidArgument", "Cesaro index must be positive");
  FormalElement out;
  const double kk = static_cast<double>(k);
  for (const auto& [mu, c] : a.terms()) {
    if (mu.length() >= k) continue;
    out.add(mu, (1.0 - static_cast<double>(mu.length()) / kk) * c);
  }
  return out;
}

std::optional<std::size_t> graded_ideal_degree(const FormalElement& a) {
  if (a.is_zero()) return std::nullopt;
  return a.terms().begin()->first.length();
}

double l2_row_norm(const FormalElement& a, long long m, VertexIndex v) {
  double sum = 0.0;
  for (const auto& [mu, c] : a.terms()) {
    if (static_cast<long long>(mu.length()) == m && mu.source() == v) sum += std::norm(c);
  }
  return std::sqrt(sum);
}

FormalElement right_vertex(const FormalElement& a, VertexIndex v) {
  return formal_mul(a, FormalElement::monomial(Path(v)));
}

}  // namespace sgk

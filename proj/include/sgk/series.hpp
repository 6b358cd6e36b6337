#pragma once

// Finitely supported formal series sum_mu a_mu L_mu over the paths of a graph,
// with the grading, Cesaro means and graded-ideal calculus.

#include <complex>
#include <cstddef>
#include <map>
#include <optional>

#include "sgk/path.hpp"

namespace sgk {

using Complex = std::complex<double>;

class FormalElement {
 public:
  using Terms = std::map<Path, Complex>;

  FormalElement() = default;
  static FormalElement monomial(const Path& mu, Complex c = 1.0);

  // Adds c to the coefficient of mu; zero coefficients are never stored.
  void add(const Path& mu, Complex c);
  Complex coeff(const Path& mu) const;

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  // Largest path length present; 0 for the zero element.
  std::size_t degree() const;

  FormalElement& operator+=(const FormalElement& other);
  friend FormalElement operator+(FormalElement a, const FormalElement& b) { return a += b; }
  friend FormalElement operator*(Complex c, const FormalElement& a);

  friend bool operator==(const FormalElement&, const FormalElement&) = default;

 private:
  Terms terms_;
};

// Coefficient-wise comparison within tol.
bool approx_equal(const FormalElement& a, const FormalElement& b, double tol = 1e-9);

// Bilinear extension of L_mu L_nu = L_{mu nu} (0 when s(mu) != r(nu)).
FormalElement formal_mul(const FormalElement& a, const FormalElement& b);

// Grade-m part; zero for negative m.
FormalElement fourier_coeff(const FormalElement& a, long long m);

// sum_{|mu| < k} (1 - |mu|/k) a_mu L_mu; throws for k == 0.
FormalElement cesaro(const FormalElement& a, std::size_t k);

// Least length of a nonzero term, i.e. the largest k with a in the k-th
// graded ideal. nullopt for the zero element (member of every ideal).
std::optional<std::size_t> graded_ideal_degree(const FormalElement& a);

// (sum_{|mu| = m, s(mu) = v} |a_mu|^2)^{1/2}.
double l2_row_norm(const FormalElement& a, long long m, VertexIndex v);

// a multiplied on the right by L_v: keeps the terms with s(mu) = v.
FormalElement right_vertex(const FormalElement& a, VertexIndex v);

}  // namespace sgk

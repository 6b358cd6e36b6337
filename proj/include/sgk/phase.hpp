#pragma once

// Unimodular scalars. Exact phases are rational angles q (meaning
// exp(2 pi i q)) kept reduced in [0, 1); anything else is stored as an
// approximate complex number on the unit circle.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace sgk {

class Phase {
 public:
  static constexpr double kTolerance = 1e-9;

  // The phase 1.
  Phase() = default;
  // exp(2 pi i num/den); throws if den <= 0.
  static Phase turn(std::int64_t num, std::int64_t den);
  // Throws Error("NotUnimodular") when |z| differs from 1 beyond kTolerance.
  static Phase approx(std::complex<double> z);

  bool is_exact() const { return exact_; }
  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  // Angle as a fraction of a full turn, in [0, 1).
  double turns() const;
  std::complex<double> value() const;

  Phase operator*(const Phase& other) const;
  Phase& operator*=(const Phase& other) { return *this = *this * other; }
  Phase conj() const;
  Phase pow(std::int64_t k) const;

  // The p distinct p-th roots, ordered by angle. Exact input gives exact roots.
  std::vector<Phase> roots(std::int64_t p) const;

  // Exact comparison when both are exact, else within kTolerance.
  bool equals(const Phase& other) const;
  // Structural identity (used for golden outputs and round trips).
  bool identical(const Phase& other) const;

  // Total order compatible with equals() for exact phases: by angle.
  bool less(const Phase& other) const;

  std::string to_string() const;

 private:
  bool exact_ = true;
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::complex<double> approx_{1.0, 0.0};
};

}  // namespace sgk

#pragma once

// Column-compressed sparse complex matrices, just enough for verifying
// operator identities on truncated bases.

#include <complex>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace sgk {

class SparseMatrix {
 public:
  using Complex = std::complex<double>;
  using Column = std::map<std::size_t, Complex>;  // row -> entry, zeros never stored

  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
    data_.resize(cols);
  }
  static SparseMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Column& column(std::size_t c) const { return data_[c]; }
  Complex at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, Complex v);
  void add(std::size_t r, std::size_t c, Complex v);
  std::size_t nonzeros() const;

  SparseMatrix adjoint() const;
  SparseMatrix operator*(const SparseMatrix& b) const;
  SparseMatrix operator+(const SparseMatrix& b) const;
  SparseMatrix operator-(const SparseMatrix& b) const;
  friend SparseMatrix operator*(Complex s, const SparseMatrix& a);

  // Submatrix on the given rows and columns (in the given order).
  SparseMatrix select(const std::vector<std::size_t>& rows,
                      const std::vector<std::size_t>& cols) const;

  // Largest entry modulus among the given columns.
  double max_abs(const std::vector<std::size_t>& cols) const;
  double column_norm(std::size_t c) const;

  friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

  // "row col re im" lines for the nonzero entries, column-major.
  std::string to_coo() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Column> data_;
};

}  // namespace sgk

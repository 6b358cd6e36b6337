#include "sgk/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sgk/error.hpp"

namespace sgk {

SparseMatrix SparseMatrix::identity(std::size_t n) {
  SparseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i][i] = 1.0;
  return m;
}

SparseMatrix::Complex SparseMatrix::at(std::size_t r, std::size_t c) const {
  auto it = data_[c].find(r);
  return it == data_[c].end() ? Complex{} : it->second;
}

void SparseMatrix::set(std::size_t r, std::size_t c, Complex v) {
  if (v == Complex{}) {
    data_[c].erase(r);
  } else {
    data_[c][r] = v;
  }
}

void SparseMatrix::add(std::size_t r, std::size_t c, Complex v) {
  if (v == Complex{}) return;
  auto [it, fresh] = data_[c].try_emplace(r, v);
  if (!fresh) {
    it->second += v;
    if (it->second == Complex{}) data_[c].erase(it);
  }
}

std::size_t SparseMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& col : data_) n += col.size();
  return n;
}

SparseMatrix SparseMatrix::adjoint() const {
  SparseMatrix out(cols_, rows_);
  for (std::size_t c = 0; c < cols_; ++c) {
    for (const auto& [r, v] : data_[c]) out.data_[r][c] = std::conj(v);
  }
  return out;
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& b) const {
  if (cols_ != b.rows_) throw Error("DimensionMismatch", "matrix product shapes differ");
  SparseMatrix out(rows_, b.cols_);
  for (std::size_t c = 0; c < b.cols_; ++c) {
    for (const auto& [k, bv] : b.data_[c]) {
      for (const auto& [r, av] : data_[k]) out.add(r, c, av * bv);
    }
  }
  return out;
}

SparseMatrix SparseMatrix::operator+(const SparseMatrix& b) const {
  if (rows_ != b.rows_ || cols_ != b.cols_) {
    throw Error("DimensionMismatch", "matrix sum shapes differ");
  }
  SparseMatrix out = *this;
  for (std::size_t c = 0; c < cols_; ++c) {
    for (const auto& [r, v] : b.data_[c]) out.add(r, c, v);
  }
  return out;
}

SparseMatrix SparseMatrix::operator-(const SparseMatrix& b) const { return *this + (-1.0) * b; }

SparseMatrix operator*(SparseMatrix::Complex s, const SparseMatrix& a) {
  SparseMatrix out(a.rows_, a.cols_);
  for (std::size_t c = 0; c < a.cols_; ++c) {
    for (const auto& [r, v] : a.data_[c]) out.set(r, c, s * v);
  }
  return out;
}

SparseMatrix SparseMatrix::select(const std::vector<std::size_t>& rows,
                                  const std::vector<std::size_t>& cols) const {
  std::vector<std::size_t> where(rows_, rows_);
  for (std::size_t i = 0; i < rows.size(); ++i) where[rows[i]] = i;
  SparseMatrix out(rows.size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (const auto& [r, v] : data_[cols[j]]) {
      if (where[r] != rows_) out.data_[j][where[r]] = v;
    }
  }
  return out;
}

double SparseMatrix::max_abs(const std::vector<std::size_t>& cols) const {
  double m = 0.0;
  for (std::size_t c : cols) {
    for (const auto& [r, v] : data_[c]) m = std::max(m, std::abs(v));
  }
  return m;
}

double SparseMatrix::column_norm(std::size_t c) const {
  double s = 0.0;
  for (const auto& [r, v] : data_[c]) s += std::norm(v);
  return std::sqrt(s);
}

std::string SparseMatrix::to_coo() const {
  std::ostringstream out;
  out.precision(17);
  for (std::size_t c = 0; c < cols_; ++c) {
    for (const auto& [r, v] : data_[c]) {
      out << r << ' ' << c << ' ' << v.real() << ' ' << v.imag() << '\n';
    }
  }
  return out.str();
}

}  // namespace sgk

#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dzn/modulus.hpp"

namespace dzn {

/// Dense row-major matrix over Z/n.  Zero-dimensional shapes (0 x k, k x 0)
/// are first-class: products and stacks must work without special cases.
class MatZn {
public:
  MatZn(Modulus mod, std::size_t rows, std::size_t cols)
      : mod_(std::move(mod)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static MatZn from_rows(const Modulus& mod, std::size_t rows, std::size_t cols,
                         const std::vector<std::int64_t>& entries) {
    if (entries.size() != rows * cols)
      throw std::invalid_argument("from_rows: entry count mismatch");
    MatZn m(mod, rows, cols);
    for (std::size_t i = 0; i < entries.size(); ++i) m.data_[i] = mod.reduce(entries[i]);
    return m;
  }

  static MatZn from_rows(const Modulus& mod,
                         std::initializer_list<std::initializer_list<std::int64_t>> rows) {
    std::size_t r = rows.size();
    std::size_t c = r == 0 ? 0 : rows.begin()->size();
    MatZn m(mod, r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != c) throw std::invalid_argument("from_rows: ragged rows");
      std::size_t j = 0;
      for (auto v : row) m.set(i, j++, mod.reduce(v));
      ++i;
    }
    return m;
  }

  static MatZn identity(const Modulus& mod, std::size_t k) {
    MatZn m(mod, k, k);
    for (std::size_t i = 0; i < k; ++i) m.set(i, i, 1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Modulus& modulus() const { return mod_; }

  std::uint64_t operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  void set(std::size_t r, std::size_t c, std::uint64_t v) {
    data_[r * cols_ + c] = v % mod_.n();
  }

  std::vector<std::uint64_t> row(std::size_t r) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
  }

  const std::vector<std::uint64_t>& entries() const { return data_; }

  bool is_zero() const {
    for (auto v : data_)
      if (v != 0) return false;
    return true;
  }

  MatZn transpose() const {
    MatZn t(mod_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t.set(j, i, (*this)(i, j));
    return t;
  }

  MatZn scale(std::uint64_t r) const {
    MatZn out(mod_, rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = mod_.mul(data_[i], r % mod_.n());
    return out;
  }

  MatZn neg() const { return scale(mod_.n() - 1); }

  friend MatZn operator+(const MatZn& a, const MatZn& b) {
    a.check_same_shape(b, "add");
    MatZn out(a.mod_, a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i)
      out.data_[i] = a.mod_.add(a.data_[i], b.data_[i]);
    return out;
  }

  friend MatZn operator-(const MatZn& a, const MatZn& b) {
    a.check_same_shape(b, "sub");
    MatZn out(a.mod_, a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i)
      out.data_[i] = a.mod_.sub(a.data_[i], b.data_[i]);
    return out;
  }

  friend MatZn operator*(const MatZn& a, const MatZn& b) {
    if (a.mod_ != b.mod_) throw std::invalid_argument("mul: modulus mismatch");
    if (a.cols_ != b.rows_) throw std::invalid_argument("mul: inner dimension mismatch");
    MatZn out(a.mod_, a.rows_, b.cols_);
    const std::uint64_t n = a.mod_.n();
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const std::uint64_t aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          std::uint64_t v = out(i, j) + aik * b(k, j) % n;
          out.data_[i * out.cols_ + j] = v >= n ? v - n : v;
        }
      }
    return out;
  }

  friend bool operator==(const MatZn& a, const MatZn& b) {
    return a.mod_ == b.mod_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const MatZn& a, const MatZn& b) { return !(a == b); }

  /// Kronecker product; row index (i, k) flattens to i*b.rows + k.
  static MatZn kronecker(const MatZn& a, const MatZn& b) {
    if (a.mod_ != b.mod_) throw std::invalid_argument("kronecker: modulus mismatch");
    MatZn out(a.mod_, a.rows_ * b.rows_, a.cols_ * b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) {
        const std::uint64_t aij = a(i, j);
        if (aij == 0) continue;
        for (std::size_t k = 0; k < b.rows_; ++k)
          for (std::size_t l = 0; l < b.cols_; ++l)
            out.set(i * b.rows_ + k, j * b.cols_ + l, a.mod_.mul(aij, b(k, l)));
      }
    return out;
  }

  static MatZn hstack(const MatZn& a, const MatZn& b) {
    if (a.mod_ != b.mod_ || a.rows_ != b.rows_)
      throw std::invalid_argument("hstack: shape mismatch");
    MatZn out(a.mod_, a.rows_, a.cols_ + b.cols_);
    out.paste(0, 0, a);
    out.paste(0, a.cols_, b);
    return out;
  }

  static MatZn vstack(const MatZn& a, const MatZn& b) {
    if (a.mod_ != b.mod_ || a.cols_ != b.cols_)
      throw std::invalid_argument("vstack: shape mismatch");
    MatZn out(a.mod_, a.rows_ + b.rows_, a.cols_);
    out.paste(0, 0, a);
    out.paste(a.rows_, 0, b);
    return out;
  }

  /// Copy src into this matrix with top-left corner at (r0, c0).
  void paste(std::size_t r0, std::size_t c0, const MatZn& src) {
    if (r0 + src.rows_ > rows_ || c0 + src.cols_ > cols_)
      throw std::invalid_argument("paste: block out of range");
    for (std::size_t i = 0; i < src.rows_; ++i)
      for (std::size_t j = 0; j < src.cols_; ++j) set(r0 + i, c0 + j, src(i, j));
  }

  /// Matrix-vector product a * x for a column vector x.
  std::vector<std::uint64_t> apply(const std::vector<std::uint64_t>& x) const {
    if (x.size() != cols_) throw std::invalid_argument("apply: length mismatch");
    std::vector<std::uint64_t> out(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
      std::uint64_t acc = 0;
      for (std::size_t j = 0; j < cols_; ++j) acc = mod_.add(acc, mod_.mul((*this)(i, j), x[j] % mod_.n()));
      out[i] = acc;
    }
    return out;
  }

private:
  void check_same_shape(const MatZn& b, const char* what) const {
    if (mod_ != b.mod_ || rows_ != b.rows_ || cols_ != b.cols_)
      throw std::invalid_argument(std::string(what) + ": shape mismatch");
  }

  Modulus mod_;
  std::size_t rows_, cols_;
  std::vector<std::uint64_t> data_;
};

}  // namespace dzn

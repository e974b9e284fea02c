#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace flowcat {

/// Dense matrix over the prime field F_q, entries kept in [0, q).
class FqMatrix {
 public:
  FqMatrix() = default;
  FqMatrix(int q, std::size_t rows, std::size_t cols);
  FqMatrix(int q, std::size_t rows, std::size_t cols, std::vector<int> entries);

  static FqMatrix identity(int q, std::size_t n);

  int field() const { return q_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const std::vector<int>& entries() const { return a_; }

  int operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, long v);

  FqMatrix block(std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) const;
  void set_block(std::size_t r0, std::size_t c0, const FqMatrix& m);

  bool is_zero() const;
  std::size_t rank() const;
  std::optional<FqMatrix> inverse() const;

  friend FqMatrix operator*(const FqMatrix& a, const FqMatrix& b);
  friend FqMatrix operator+(const FqMatrix& a, const FqMatrix& b);
  friend FqMatrix operator-(const FqMatrix& a, const FqMatrix& b);
  friend bool operator==(const FqMatrix& a, const FqMatrix& b) {
    return a.q_ == b.q_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

  std::string to_string() const;

 private:
  int q_ = 2;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<int> a_;
};

bool is_small_prime(int q);
int fq_inverse(int x, int q);

/// Basis of the right null space {x : m x = 0}, each vector of length m.cols().
std::vector<std::vector<int>> null_space(const FqMatrix& m);

}  // namespace flowcat

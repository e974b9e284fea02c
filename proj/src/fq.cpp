#include "flowcat/fq.hpp"

#include <sstream>

#include "flowcat/error.hpp"

namespace flowcat {

bool is_small_prime(int q) { return q == 2 || q == 3 || q == 5 || q == 7; }

int fq_inverse(int x, int q) {
  x %= q;
  if (x < 0) x += q;
  for (int y = 1; y < q; ++y)
    if (x * y % q == 1) return y;
  throw Error(ErrorKind::InvalidArgument, "zero has no inverse mod " + std::to_string(q));
}

FqMatrix::FqMatrix(int q, std::size_t rows, std::size_t cols)
    : q_(q), rows_(rows), cols_(cols), a_(rows * cols, 0) {
  if (!is_small_prime(q)) throw Error(ErrorKind::InvalidArgument, "field size must be 2, 3, 5 or 7");
}

FqMatrix::FqMatrix(int q, std::size_t rows, std::size_t cols, std::vector<int> entries)
    : FqMatrix(q, rows, cols) {
  if (entries.size() != rows * cols)
    throw Error(ErrorKind::InvalidArgument, "matrix entry count does not match its shape");
  for (std::size_t k = 0; k < entries.size(); ++k) a_[k] = ((entries[k] % q) + q) % q;
}

FqMatrix FqMatrix::identity(int q, std::size_t n) {
  FqMatrix m(q, n, n);
  for (std::size_t i = 0; i < n; ++i) m.a_[i * n + i] = 1;
  return m;
}

void FqMatrix::set(std::size_t i, std::size_t j, long v) {
  a_[i * cols_ + j] = static_cast<int>(((v % q_) + q_) % q_);
}

FqMatrix FqMatrix::block(std::size_t r0, std::size_t c0, std::size_t rows,
                         std::size_t cols) const {
  if (r0 + rows > rows_ || c0 + cols > cols_)
    throw Error(ErrorKind::InvalidArgument, "block out of range");
  FqMatrix out(q_, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) out.a_[i * cols + j] = (*this)(r0 + i, c0 + j);
  return out;
}

void FqMatrix::set_block(std::size_t r0, std::size_t c0, const FqMatrix& m) {
  if (r0 + m.rows_ > rows_ || c0 + m.cols_ > cols_)
    throw Error(ErrorKind::InvalidArgument, "block out of range");
  for (std::size_t i = 0; i < m.rows_; ++i)
    for (std::size_t j = 0; j < m.cols_; ++j) a_[(r0 + i) * cols_ + c0 + j] = m(i, j);
}

bool FqMatrix::is_zero() const {
  for (int x : a_)
    if (x) return false;
  return true;
}

namespace {

// Row-reduces in place; returns pivot columns.
std::vector<std::size_t> rref(std::vector<int>& a, std::size_t rows, std::size_t cols, int q) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p * cols + c] == 0) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[p * cols + j], a[r * cols + j]);
    int inv = fq_inverse(a[r * cols + c], q);
    for (std::size_t j = 0; j < cols; ++j) a[r * cols + j] = a[r * cols + j] * inv % q;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i * cols + c] == 0) continue;
      int f = a[i * cols + c];
      for (std::size_t j = 0; j < cols; ++j)
        a[i * cols + j] = ((a[i * cols + j] - f * a[r * cols + j]) % q + q) % q;
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t FqMatrix::rank() const {
  auto a = a_;
  return rref(a, rows_, cols_, q_).size();
}

std::optional<FqMatrix> FqMatrix::inverse() const {
  if (rows_ != cols_) return std::nullopt;
  const std::size_t n = rows_, w = 2 * n;
  std::vector<int> aug(n * w, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i * w + j] = (*this)(i, j);
    aug[i * w + n + i] = 1;
  }
  auto piv = rref(aug, n, w, q_);
  if (piv.size() < n || (n && piv[n - 1] != n - 1)) return std::nullopt;
  FqMatrix out(q_, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.a_[i * n + j] = aug[i * w + n + j];
  return out;
}

FqMatrix operator*(const FqMatrix& a, const FqMatrix& b) {
  if (a.cols_ != b.rows_ || a.q_ != b.q_)
    throw Error(ErrorKind::IllTyped, "shape mismatch in F_q product");
  FqMatrix r(a.q_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      int x = a(i, k);
      if (!x) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) r.a_[i * b.cols_ + j] += x * b(k, j);
    }
  for (auto& x : r.a_) x %= a.q_;
  return r;
}

FqMatrix operator+(const FqMatrix& a, const FqMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.q_ != b.q_)
    throw Error(ErrorKind::IllTyped, "shape mismatch in F_q sum");
  FqMatrix r = a;
  for (std::size_t k = 0; k < r.a_.size(); ++k) r.a_[k] = (r.a_[k] + b.a_[k]) % a.q_;
  return r;
}

FqMatrix operator-(const FqMatrix& a, const FqMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.q_ != b.q_)
    throw Error(ErrorKind::IllTyped, "shape mismatch in F_q difference");
  FqMatrix r = a;
  for (std::size_t k = 0; k < r.a_.size(); ++k) r.a_[k] = (r.a_[k] - b.a_[k] + a.q_) % a.q_;
  return r;
}

std::string FqMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

std::vector<std::vector<int>> null_space(const FqMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  const int q = m.field();
  auto a = m.entries();
  auto piv = rref(a, rows, cols, q);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : piv) is_pivot[c] = true;
  std::vector<std::vector<int>> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<int> x(cols, 0);
    x[f] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = (q - a[r * cols + f]) % q;
    basis.push_back(std::move(x));
  }
  return basis;
}

}  // namespace flowcat

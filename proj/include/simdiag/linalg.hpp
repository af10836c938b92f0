#ifndef SIMDIAG_LINALG_HPP
#define SIMDIAG_LINALG_HPP

#include <cmath>
#include <cstddef>
#include <vector>

namespace simdiag {

using Vec = std::vector<double>;

/// Dense row-major matrix, zero-initialized.
class Mat {
public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, 0.0) {}

  double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return a_.empty(); }

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> a_;
};

/// Rank-3 array, zero-initialized.
class Tensor3 {
public:
  Tensor3() = default;
  Tensor3(std::size_t n0, std::size_t n1, std::size_t n2)
      : n0_(n0), n1_(n1), n2_(n2), a_(n0 * n1 * n2, 0.0) {}

  double& operator()(std::size_t i, std::size_t j, std::size_t k) {
    return a_[(i * n1_ + j) * n2_ + k];
  }
  double operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return a_[(i * n1_ + j) * n2_ + k];
  }

  std::size_t dim0() const { return n0_; }
  std::size_t dim1() const { return n1_; }
  std::size_t dim2() const { return n2_; }
  bool empty() const { return a_.empty(); }

private:
  std::size_t n0_ = 0, n1_ = 0, n2_ = 0;
  std::vector<double> a_;
};

/// Rank-4 array, zero-initialized.
class Tensor4 {
public:
  Tensor4() = default;
  Tensor4(std::size_t n0, std::size_t n1, std::size_t n2, std::size_t n3)
      : n0_(n0), n1_(n1), n2_(n2), n3_(n3), a_(n0 * n1 * n2 * n3, 0.0) {}

  double& operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
    return a_[((i * n1_ + j) * n2_ + k) * n3_ + l];
  }
  double operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
    return a_[((i * n1_ + j) * n2_ + k) * n3_ + l];
  }

  std::size_t dim0() const { return n0_; }
  bool empty() const { return a_.empty(); }

private:
  std::size_t n0_ = 0, n1_ = 0, n2_ = 0, n3_ = 0;
  std::vector<double> a_;
};

inline Mat identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(const Vec& v) { return std::sqrt(dot(v, v)); }

inline Vec matvec(const Mat& m, const Vec& v) {
  Vec out(m.rows(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
  return out;
}

inline bool all_finite(const Vec& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

} // namespace simdiag

#endif

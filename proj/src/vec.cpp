#include "srgkit/vec.hpp"

#include <cmath>
#include <cstdlib>
#include <ostream>
#include <stdexcept>
#include <utility>

namespace srgkit {

namespace {

void validate_coords(const std::vector<double>& c) {
  if (c.empty()) {
    throw std::invalid_argument("Vec: dimension must be at least 1");
  }
  for (double x : c) {
    if (!std::isfinite(x)) {
      throw std::invalid_argument("Vec: entries must be finite");
    }
  }
}

void require_same_dim(const Vec& a, const Vec& b) {
  if (a.size() != b.size() || a.size() == 0) {
    throw std::invalid_argument("Vec: dimension mismatch");
  }
}

}  // namespace

Vec::Vec(std::vector<double> coords) : c_(std::move(coords)) {
  validate_coords(c_);
}

Vec::Vec(std::initializer_list<double> coords)
    : Vec(std::vector<double>(coords)) {}

Vec Vec::zeros(std::size_t n) {
  if (n == 0) throw std::invalid_argument("Vec: dimension must be at least 1");
  Vec v;
  v.c_.assign(n, 0.0);
  return v;
}

Vec Vec::unit(std::size_t n, std::size_t i) {
  if (i >= n) throw std::invalid_argument("Vec::unit: index out of range");
  Vec v = zeros(n);
  v.c_[i] = 1.0;
  return v;
}

bool Vec::is_zero() const {
  for (double x : c_) {
    if (x != 0.0) return false;
  }
  return true;
}

Vec operator+(const Vec& a, const Vec& b) {
  require_same_dim(a, b);
  std::vector<double> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return Vec(std::move(c));
}

Vec operator-(const Vec& a, const Vec& b) {
  require_same_dim(a, b);
  std::vector<double> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return Vec(std::move(c));
}

Vec operator-(const Vec& a) { return -1.0 * a; }

Vec operator*(double s, const Vec& a) {
  std::vector<double> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = s * a[i];
  return Vec(std::move(c));
}

bool operator==(const Vec& a, const Vec& b) {
  return a.coords() == b.coords();
}

double dot(const Vec& a, const Vec& b) {
  require_same_dim(a, b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::ostream& operator<<(std::ostream& os, const Vec& v) {
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << v[i];
  }
  return os << ')';
}

Mat::Mat(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), a_(rows * cols, 0.0) {
  if (rows == 0 || cols == 0) {
    throw std::invalid_argument("Mat: dimensions must be at least 1");
  }
}

Mat::Mat(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  if (rows_ == 0) throw std::invalid_argument("Mat: no rows");
  cols_ = rows.begin()->size();
  if (cols_ == 0) throw std::invalid_argument("Mat: no columns");
  a_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) {
      throw std::invalid_argument("Mat: ragged rows");
    }
    for (double x : r) {
      if (!std::isfinite(x)) {
        throw std::invalid_argument("Mat: entries must be finite");
      }
      a_.push_back(x);
    }
  }
}

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Vec Mat::apply(const Vec& x) const {
  if (x.size() != cols_) {
    throw std::invalid_argument("Mat::apply: dimension mismatch");
  }
  std::vector<double> y(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * x[j];
    y[i] = s;
  }
  return Vec(std::move(y));
}

Mat Mat::transposed() const {
  Mat t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

Mat Mat::multiply(const Mat& b) const {
  if (cols_ != b.rows_) {
    throw std::invalid_argument("Mat::multiply: dimension mismatch");
  }
  Mat c(rows_, b.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const double aik = (*this)(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

Vec Mat::solve(const Vec& b) const {
  if (!is_square()) throw std::invalid_argument("Mat::solve: square required");
  if (b.size() != rows_) {
    throw std::invalid_argument("Mat::solve: dimension mismatch");
  }
  const std::size_t n = rows_;
  Mat lu = *this;
  std::vector<double> x = b.coords();
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(lu(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double m = std::abs(lu(i, k));
      if (m > best) {
        best = m;
        piv = i;
      }
    }
    if (best == 0.0) throw std::domain_error("Mat::solve: singular matrix");
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(piv, j));
      std::swap(x[k], x[piv]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = lu(i, k) / lu(k, k);
      lu(i, k) = f;
      for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
      x[i] -= f * x[k];
    }
  }
  for (std::size_t ii = n; ii-- > 0;) {
    double s = x[ii];
    for (std::size_t j = ii + 1; j < n; ++j) s -= lu(ii, j) * x[j];
    x[ii] = s / lu(ii, ii);
  }
  return Vec(std::move(x));
}

Mat Mat::inverse() const {
  if (!is_square()) {
    throw std::invalid_argument("Mat::inverse: square required");
  }
  Mat inv(rows_, rows_);
  for (std::size_t j = 0; j < rows_; ++j) {
    const Vec col = solve(Vec::unit(rows_, j));
    for (std::size_t i = 0; i < rows_; ++i) inv(i, j) = col[i];
  }
  return inv;
}

double Mat::frobenius_norm() const {
  double s = 0.0;
  for (double x : a_) s += x * x;
  return std::sqrt(s);
}

Mat operator+(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("Mat: dimension mismatch");
  }
  Mat c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
  }
  return c;
}

Mat operator*(double s, const Mat& a) {
  Mat c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = s * a(i, j);
  }
  return c;
}

bool operator==(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j) != b(i, j)) return false;
    }
  }
  return true;
}

}  // namespace srgkit

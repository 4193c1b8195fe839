#pragma once

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <vector>

namespace srgkit {

/// Dense real vector. Construction from data validates that the dimension is
/// at least one and every entry is finite. A default-constructed Vec is an
/// empty placeholder (as after a move) and must not be used in arithmetic.
class Vec {
 public:
  Vec() = default;
  explicit Vec(std::vector<double> coords);
  Vec(std::initializer_list<double> coords);

  static Vec zeros(std::size_t n);
  static Vec unit(std::size_t n, std::size_t i);

  std::size_t size() const { return c_.size(); }
  double operator[](std::size_t i) const { return c_[i]; }
  double& operator[](std::size_t i) { return c_[i]; }
  const std::vector<double>& coords() const { return c_; }
  bool is_zero() const;

 private:
  std::vector<double> c_;
};

Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator-(const Vec& a);
Vec operator*(double s, const Vec& a);
bool operator==(const Vec& a, const Vec& b);
inline bool operator!=(const Vec& a, const Vec& b) { return !(a == b); }
double dot(const Vec& a, const Vec& b);
std::ostream& operator<<(std::ostream& os, const Vec& v);

/// Dense row-major matrix.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols);
  Mat(std::initializer_list<std::initializer_list<double>> rows);

  static Mat identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  double operator()(std::size_t i, std::size_t j) const {
    return a_[i * cols_ + j];
  }
  double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }

  Vec apply(const Vec& x) const;
  Mat transposed() const;
  Mat multiply(const Mat& b) const;

  /// Solves a x = b by LU factorization with partial pivoting.
  Vec solve(const Vec& b) const;
  Mat inverse() const;

  double frobenius_norm() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> a_;
};

Mat operator+(const Mat& a, const Mat& b);
Mat operator*(double s, const Mat& a);
bool operator==(const Mat& a, const Mat& b);

}  // namespace srgkit

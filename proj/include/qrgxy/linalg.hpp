#pragma once

#include <cstddef>
#include <vector>

namespace qrgxy {

using Vec = std::vector<double>;

/// Dense row-major matrix of doubles. Sized for this problem: nothing here
/// exceeds 1024x1024.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0.0) {}

  static Mat identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  double* data() { return a_.data(); }
  const double* data() const { return a_.data(); }

  Mat transposed() const;

  Mat& operator+=(const Mat& o);
  Mat& operator-=(const Mat& o);
  Mat& operator*=(double s);

 private:
  std::size_t rows_ = 0, cols_ = 0;
  Vec a_;
};

Mat operator*(const Mat& a, const Mat& b);
Mat operator+(Mat a, const Mat& b);
Mat operator-(Mat a, const Mat& b);
Mat operator*(double s, Mat a);

Mat kron(const Mat& a, const Mat& b);
Vec matvec(const Mat& a, const Vec& x);

double frobenius_norm(const Mat& a);
double max_abs(const Mat& a);
double trace(const Mat& a);

double dot(const Vec& a, const Vec& b);
double norm2(const Vec& a);

}  // namespace qrgxy

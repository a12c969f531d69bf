#pragma once

#include <initializer_list>
#include <iosfwd>
#include <string>
#include <vector>

#include "symspace/errors.hpp"

namespace symspace {

// Dense real matrix, row-major. The universal carrier for group and algebra
// elements. Entries are validated to be finite when a matrix is built from
// user-supplied data (constructor from values, parsing); results of internal
// arithmetic are not re-checked entry by entry.
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols);  // zero-filled

  static Mat identity(int n);
  static Mat diag(const std::vector<double>& d);
  static Mat from_rows(std::initializer_list<std::initializer_list<double>> rows);
  static Mat from_data(int rows, int cols, std::vector<double> data);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  int size() const { return rows_ * cols_; }

  double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  const std::vector<double>& data() const { return a_; }
  std::vector<double>& data() { return a_; }

  Mat& operator+=(const Mat& o);
  Mat& operator-=(const Mat& o);
  Mat& operator*=(double s);

  bool all_finite() const;
  void require_square(const char* who) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> a_;
};

Mat operator+(Mat a, const Mat& b);
Mat operator-(Mat a, const Mat& b);
Mat operator*(double s, Mat a);
Mat operator*(Mat a, double s);
Mat operator-(Mat a);
Mat operator*(const Mat& a, const Mat& b);  // matrix product

Mat transpose(const Mat& a);
Mat commutator(const Mat& a, const Mat& b);  // [A,B] = AB - BA

double fro_norm(const Mat& a);
double max_abs(const Mat& a);
double fro_dist(const Mat& a, const Mat& b);

// Solves A X = B by LU with partial pivoting. Throws domain_error("singular...")
// when a pivot collapses.
Mat solve(Mat a, Mat b);
Mat inverse(const Mat& a);

// Thin Householder QR; returns Q (rows x rows, orthogonal) such that A = Q R.
Mat qr_orthogonal_factor(const Mat& a);

// Matrix text format: first line "rows cols", then `rows` lines of `cols`
// whitespace-separated entries. Round-trips 17 significant digits.
void write_mat_text(std::ostream& os, const Mat& a);
void write_mat_file(const std::string& path, const Mat& a);
Mat read_mat_text(std::istream& is);
Mat read_mat_file(const std::string& path);

std::string format_sig17(double v);

}  // namespace symspace

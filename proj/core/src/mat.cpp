#include "symspace/mat.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <utility>

namespace symspace {

namespace {

void check_same_shape(const Mat& a, const Mat& b, const char* who) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw shape_error(std::string(who) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                      std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                      std::to_string(b.cols()));
  }
}

}  // namespace

Mat::Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, 0.0) {
  if (rows <= 0 || cols <= 0) throw shape_error("Mat: dimensions must be positive");
}

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Mat Mat::diag(const std::vector<double>& d) {
  Mat m(static_cast<int>(d.size()), static_cast<int>(d.size()));
  for (size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
  if (!m.all_finite()) throw domain_error("Mat::diag: non-finite entry");
  return m;
}

Mat Mat::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  int r = static_cast<int>(rows.size());
  if (r == 0) throw shape_error("Mat::from_rows: empty");
  int c = static_cast<int>(rows.begin()->size());
  Mat m(r, c);
  int i = 0;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != c) throw shape_error("Mat::from_rows: ragged rows");
    int j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  if (!m.all_finite()) throw domain_error("Mat::from_rows: non-finite entry");
  return m;
}

Mat Mat::from_data(int rows, int cols, std::vector<double> data) {
  if (static_cast<size_t>(rows) * cols != data.size())
    throw shape_error("Mat::from_data: size mismatch");
  Mat m(rows, cols);
  m.a_ = std::move(data);
  if (!m.all_finite()) throw domain_error("Mat::from_data: non-finite entry");
  return m;
}

bool Mat::all_finite() const {
  for (double v : a_)
    if (!std::isfinite(v)) return false;
  return true;
}

void Mat::require_square(const char* who) const {
  if (!square()) throw shape_error(std::string(who) + ": matrix must be square, got " +
                                   std::to_string(rows_) + "x" + std::to_string(cols_));
}

Mat& Mat::operator+=(const Mat& o) {
  check_same_shape(*this, o, "Mat::operator+=");
  for (size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
  return *this;
}

Mat& Mat::operator-=(const Mat& o) {
  check_same_shape(*this, o, "Mat::operator-=");
  for (size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
  return *this;
}

Mat& Mat::operator*=(double s) {
  for (double& v : a_) v *= s;
  return *this;
}

Mat operator+(Mat a, const Mat& b) { return a += b; }
Mat operator-(Mat a, const Mat& b) { return a -= b; }
Mat operator*(double s, Mat a) { return a *= s; }
Mat operator*(Mat a, double s) { return a *= s; }
Mat operator-(Mat a) { return a *= -1.0; }

Mat operator*(const Mat& a, const Mat& b) {
  if (a.cols() != b.rows()) throw shape_error("matmul: inner dimensions differ");
  Mat c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

Mat transpose(const Mat& a) {
  Mat t(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

Mat commutator(const Mat& a, const Mat& b) { return a * b - b * a; }

double fro_norm(const Mat& a) {
  double s = 0.0;
  for (double v : a.data()) s += v * v;
  return std::sqrt(s);
}

double max_abs(const Mat& a) {
  double m = 0.0;
  for (double v : a.data()) m = std::max(m, std::fabs(v));
  return m;
}

double fro_dist(const Mat& a, const Mat& b) { return fro_norm(a - b); }

Mat solve(Mat a, Mat b) {
  a.require_square("solve");
  if (a.rows() != b.rows()) throw shape_error("solve: rhs row count mismatch");
  const int n = a.rows();
  const int m = b.cols();
  std::vector<int> piv(n);
  for (int i = 0; i < n; ++i) piv[i] = i;
  for (int k = 0; k < n; ++k) {
    int p = k;
    double best = std::fabs(a(k, k));
    for (int i = k + 1; i < n; ++i) {
      double v = std::fabs(a(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (!(best > 0.0)) throw domain_error("solve: singular matrix");
    if (p != k) {
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      for (int j = 0; j < m; ++j) std::swap(b(k, j), b(p, j));
    }
    const double pivot = a(k, k);
    for (int i = k + 1; i < n; ++i) {
      double f = a(i, k) / pivot;
      if (f == 0.0) continue;
      a(i, k) = 0.0;
      for (int j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
      for (int j = 0; j < m; ++j) b(i, j) -= f * b(k, j);
    }
  }
  for (int k = n - 1; k >= 0; --k) {
    for (int j = 0; j < m; ++j) {
      double s = b(k, j);
      for (int i = k + 1; i < n; ++i) s -= a(k, i) * b(i, j);
      b(k, j) = s / a(k, k);
    }
  }
  return b;
}

Mat inverse(const Mat& a) { return solve(a, Mat::identity(a.rows())); }

Mat qr_orthogonal_factor(const Mat& a) {
  a.require_square("qr_orthogonal_factor");
  const int n = a.rows();
  Mat r = a;
  Mat q = Mat::identity(n);
  std::vector<double> v(n);
  for (int k = 0; k < n - 1; ++k) {
    double norm = 0.0;
    for (int i = k; i < n; ++i) norm += r(i, k) * r(i, k);
    norm = std::sqrt(norm);
    if (norm == 0.0) continue;
    double alpha = (r(k, k) >= 0.0) ? -norm : norm;
    double vnorm2 = 0.0;
    for (int i = k; i < n; ++i) {
      v[i] = r(i, k) - (i == k ? alpha : 0.0);
      vnorm2 += v[i] * v[i];
    }
    if (vnorm2 == 0.0) continue;
    // apply H = I - 2 v v^T / (v^T v) on the left of R and the right of Q
    for (int j = k; j < n; ++j) {
      double s = 0.0;
      for (int i = k; i < n; ++i) s += v[i] * r(i, j);
      s *= 2.0 / vnorm2;
      for (int i = k; i < n; ++i) r(i, j) -= s * v[i];
    }
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int j = k; j < n; ++j) s += q(i, j) * v[j];
      s *= 2.0 / vnorm2;
      for (int j = k; j < n; ++j) q(i, j) -= s * v[j];
    }
  }
  return q;
}

std::string format_sig17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_mat_text(std::ostream& os, const Mat& a) {
  os << a.rows() << " " << a.cols() << "\n";
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      if (j) os << " ";
      os << format_sig17(a(i, j));
    }
    os << "\n";
  }
}

void write_mat_file(const std::string& path, const Mat& a) {
  std::ofstream f(path);
  if (!f) throw error("write_mat_file: cannot open " + path);
  write_mat_text(f, a);
  if (!f) throw error("write_mat_file: write failed for " + path);
}

Mat read_mat_text(std::istream& is) {
  int r = 0, c = 0;
  if (!(is >> r >> c)) throw error("read_mat_text: missing 'rows cols' header");
  if (r <= 0 || c <= 0) throw shape_error("read_mat_text: non-positive dimensions");
  std::vector<double> data(static_cast<size_t>(r) * c);
  for (auto& v : data) {
    if (!(is >> v)) throw error("read_mat_text: truncated entry list");
  }
  return Mat::from_data(r, c, std::move(data));
}

Mat read_mat_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw error("read_mat_file: cannot open " + path);
  return read_mat_text(f);
}

}  // namespace symspace

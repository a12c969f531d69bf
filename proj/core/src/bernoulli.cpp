#include "symspace/bernoulli.hpp"

#include <numeric>
#include <stdexcept>

namespace symspace {

namespace {

int64_t checked_narrow(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("Rational: 64-bit overflow");
  return static_cast<int64_t>(v);
}

}  // namespace

Rational::Rational(int64_t n, int64_t d) {
  if (d == 0) throw std::invalid_argument("Rational: zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  int64_t g = std::gcd(n < 0 ? -n : n, d);
  if (g == 0) g = 1;
  num = n / g;
  den = d / g;
}

Rational Rational::operator+(const Rational& o) const {
  __int128 n = static_cast<__int128>(num) * o.den + static_cast<__int128>(o.num) * den;
  __int128 d = static_cast<__int128>(den) * o.den;
  __int128 a = n < 0 ? -n : n;
  __int128 b = d;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  if (a == 0) a = 1;
  return Rational(checked_narrow(n / a), checked_narrow(d / a));
}

Rational Rational::operator*(const Rational& o) const {
  __int128 n = static_cast<__int128>(num) * o.num;
  __int128 d = static_cast<__int128>(den) * o.den;
  __int128 a = n < 0 ? -n : n;
  __int128 b = d;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  if (a == 0) a = 1;
  return Rational(checked_narrow(n / a), checked_narrow(d / a));
}

BernoulliTable::BernoulliTable(int max_index) {
  exact_.resize(max_index + 1);
  exact_[0] = Rational(1);
  // binomials C(m+1, k) fit easily in 64 bits for m <= 20
  for (int m = 1; m <= max_index; ++m) {
    // B_m = -1/(m+1) * sum_{k=0}^{m-1} C(m+1,k) B_k
    Rational sum(0);
    int64_t binom = 1;  // C(m+1, 0)
    for (int k = 0; k < m; ++k) {
      sum = sum + Rational(binom) * exact_[k];
      binom = binom * (m + 1 - k) / (k + 1);  // C(m+1, k+1)
    }
    exact_[m] = Rational(-1, m + 1) * sum;
  }
  values_.resize(max_index + 1);
  for (int j = 0; j <= max_index; ++j) values_[j] = exact_[j].to_double();
}

const Rational& BernoulliTable::exact(int j) const {
  if (j < 0 || j > max_index()) throw std::out_of_range("BernoulliTable: index out of range");
  return exact_[j];
}

double BernoulliTable::value(int j) const {
  if (j < 0 || j > max_index()) throw std::out_of_range("BernoulliTable: index out of range");
  return values_[j];
}

const BernoulliTable& BernoulliTable::standard() {
  static const BernoulliTable table(20);
  return table;
}

}  // namespace symspace

#pragma once

#include <cstdint>
#include <vector>

namespace symspace {

// Exact rational on 64-bit words; products go through 128-bit intermediates.
// Only needs to cover Bernoulli arithmetic up to B_20.
struct Rational {
  int64_t num = 0;
  int64_t den = 1;

  Rational() = default;
  Rational(int64_t n, int64_t d = 1);

  Rational operator+(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// Bernoulli numbers B_0..B_max (first-kind convention, B_1 = -1/2), computed
// once in exact rational arithmetic from
//   sum_{k=0}^{m} C(m+1,k) B_k = 0,  m >= 1.
class BernoulliTable {
 public:
  static const BernoulliTable& standard();  // j up to 20

  explicit BernoulliTable(int max_index);

  int max_index() const { return static_cast<int>(exact_.size()) - 1; }
  const Rational& exact(int j) const;
  double value(int j) const;

 private:
  std::vector<Rational> exact_;
  std::vector<double> values_;
};

}  // namespace symspace

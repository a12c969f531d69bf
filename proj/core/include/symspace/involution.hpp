#pragma once

#include <functional>
#include <string>
#include <vector>

#include "symspace/mat.hpp"

namespace symspace {

enum class InvolutionKind {
  TransposeInverse,  // sigma(x) = x^{-T},  dsigma(X) = -X^T
  Conjugate,         // complex conjugation on the 2x2-block real embedding
  Inner,             // sigma(x) = r x r with r involutive
};

// Paired group-level and algebra-level involutive automorphism.
class Involution {
 public:
  static Involution transpose_inverse();
  static Involution conjugate();
  static Involution inner(Mat r);  // rejects r unless r^2 = I to 1e-14

  InvolutionKind kind() const { return kind_; }
  const Mat& r() const;
  std::string id() const;

  Mat group_map(const Mat& x) const;
  Mat algebra_map(const Mat& x) const;

 private:
  explicit Involution(InvolutionKind kind) : kind_(kind) {}
  InvolutionKind kind_;
  Mat r_;  // Inner only
};

// String ids used by the CLI: "transpose-inverse", "conjugate",
// "inner:<path-to-r-matrix-file>".
Involution involution_from_id(const std::string& id);

// Canonical decomposition X = P + K with dsigma(P) = -P, dsigma(K) = K.
struct Splitting {
  Mat p;  // Lie-triple-system part
  Mat k;  // subalgebra part
};

Splitting split(const Mat& x, const Involution& inv);

// The pair of projections attached to an involutive matrix S:
// minus = (I-S)/2 onto the -1 eigenspace, plus = (I+S)/2 onto +1.
struct ProjectorPair {
  Mat plus;
  Mat minus;
};

ProjectorPair projectors(const Mat& s);  // requires S^2 = I to 1e-12

// Induces the group map from the algebra map: exp(dsigma(log x)).
// Must agree with group_map(x) wherever both are defined.
Mat lift_group_automorphism(const Involution& inv, const Mat& x);

// Numerical check of the symmetric-space product axioms
//   (i)  x*x = x, (ii) x*(x*y) = y, (iii) x*(y*z) = (x*y)*(x*z)
// over a sample list. Topological isolation of fixed points is not decidable
// from finite samples and is not checked.
struct AxiomReport {
  double max_idempotent = 0.0;
  double max_left_symmetry = 0.0;
  double max_distributive = 0.0;
  int product_failures = 0;
  std::vector<std::string> failure_notes;
  double tolerance = 1e-10;

  bool pass() const {
    return product_failures == 0 && max_idempotent <= tolerance &&
           max_left_symmetry <= tolerance && max_distributive <= tolerance;
  }
};

using MatProduct = std::function<Mat(const Mat&, const Mat&)>;

AxiomReport check_symmetric_space_axioms(const MatProduct& product,
                                         const std::vector<Mat>& samples,
                                         double tolerance = 1e-10);

}  // namespace symspace

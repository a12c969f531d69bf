#include "symspace/involution.hpp"

#include <cmath>

#include "symspace/matfun.hpp"

namespace symspace {

namespace {

// Conjugation matrix of the real embedding A + iB -> [[A,-B],[B,A]]:
// complex conjugation is the similarity by diag(I, -I).
Mat embedding_flip(int n) {
  if (n % 2 != 0)
    throw shape_error("Involution(Conjugate): real embedding needs even dimension");
  Mat t = Mat::identity(n);
  for (int i = n / 2; i < n; ++i) t(i, i) = -1.0;
  return t;
}

}  // namespace

Involution Involution::transpose_inverse() { return Involution(InvolutionKind::TransposeInverse); }

Involution Involution::conjugate() { return Involution(InvolutionKind::Conjugate); }

Involution Involution::inner(Mat r) {
  r.require_square("Involution::inner");
  if (max_abs(r * r - Mat::identity(r.rows())) > 1e-14)
    throw domain_error("Involution::inner: r is not involutive (r^2 != I to 1e-14)");
  Involution inv(InvolutionKind::Inner);
  inv.r_ = std::move(r);
  return inv;
}

const Mat& Involution::r() const {
  if (kind_ != InvolutionKind::Inner) throw error("Involution::r: only Inner carries r");
  return r_;
}

std::string Involution::id() const {
  switch (kind_) {
    case InvolutionKind::TransposeInverse:
      return "transpose-inverse";
    case InvolutionKind::Conjugate:
      return "conjugate";
    case InvolutionKind::Inner:
      return "inner";
  }
  return "?";
}

Mat Involution::group_map(const Mat& x) const {
  x.require_square("Involution::group_map");
  switch (kind_) {
    case InvolutionKind::TransposeInverse:
      return transpose(inverse(x));
    case InvolutionKind::Conjugate: {
      Mat t = embedding_flip(x.rows());
      return t * x * t;
    }
    case InvolutionKind::Inner:
      if (r_.rows() != x.rows()) throw shape_error("Involution::group_map: r/x shape mismatch");
      return r_ * x * r_;
  }
  throw error("Involution::group_map: unreachable");
}

Mat Involution::algebra_map(const Mat& x) const {
  x.require_square("Involution::algebra_map");
  switch (kind_) {
    case InvolutionKind::TransposeInverse:
      return -transpose(x);
    case InvolutionKind::Conjugate: {
      Mat t = embedding_flip(x.rows());
      return t * x * t;
    }
    case InvolutionKind::Inner:
      if (r_.rows() != x.rows()) throw shape_error("Involution::algebra_map: r/x shape mismatch");
      return r_ * x * r_;
  }
  throw error("Involution::algebra_map: unreachable");
}

Involution involution_from_id(const std::string& id) {
  if (id == "transpose-inverse") return Involution::transpose_inverse();
  if (id == "conjugate") return Involution::conjugate();
  const std::string prefix = "inner:";
  if (id.rfind(prefix, 0) == 0) {
    Mat r = read_mat_file(id.substr(prefix.size()));
    return Involution::inner(std::move(r));
  }
  throw error("unknown involution id '" + id +
              "' (expected transpose-inverse | conjugate | inner:<file>)");
}

Splitting split(const Mat& x, const Involution& inv) {
  Mat dsx = inv.algebra_map(x);
  return Splitting{0.5 * (x - dsx), 0.5 * (x + dsx)};
}

ProjectorPair projectors(const Mat& s) {
  s.require_square("projectors");
  if (max_abs(s * s - Mat::identity(s.rows())) > 1e-12)
    throw domain_error("projectors: S is not involutive (S^2 != I to 1e-12)");
  Mat eye = Mat::identity(s.rows());
  return ProjectorPair{0.5 * (eye + s), 0.5 * (eye - s)};
}

Mat lift_group_automorphism(const Involution& inv, const Mat& x) {
  return expm(inv.algebra_map(logm(x)));
}

AxiomReport check_symmetric_space_axioms(const MatProduct& product,
                                         const std::vector<Mat>& samples,
                                         double tolerance) {
  AxiomReport rep;
  rep.tolerance = tolerance;
  const int n = static_cast<int>(samples.size());
  if (n == 0) return rep;
  auto guarded = [&](const Mat& a, const Mat& b, const char* where) -> Mat {
    try {
      return product(a, b);
    } catch (const std::exception& e) {
      ++rep.product_failures;
      rep.failure_notes.push_back(std::string(where) + ": " + e.what());
      throw;
    }
  };
  for (int i = 0; i < n; ++i) {
    const Mat& x = samples[i];
    const Mat& y = samples[(i + 1) % n];
    const Mat& z = samples[(i + 2) % n];
    try {
      rep.max_idempotent = std::max(rep.max_idempotent, fro_dist(guarded(x, x, "x*x"), x));
      Mat xy = guarded(x, y, "x*y");
      rep.max_left_symmetry =
          std::max(rep.max_left_symmetry, fro_dist(guarded(x, xy, "x*(x*y)"), y));
      Mat yz = guarded(y, z, "y*z");
      Mat lhs = guarded(x, yz, "x*(y*z)");
      Mat xz = guarded(x, z, "x*z");
      Mat rhs = guarded(xy, xz, "(x*y)*(x*z)");
      rep.max_distributive = std::max(rep.max_distributive, fro_dist(lhs, rhs));
    } catch (const std::exception&) {
      // already recorded; move on to the next sample triple
      continue;
    }
  }
  return rep;
}

}  // namespace symspace

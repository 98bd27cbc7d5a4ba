#pragma once

// Matrix kernel for K = SO(d) and its Lie algebra so(d).

#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace pathgroup {

using Matrix = Eigen::MatrixXd;

/// Number of independent coordinates of so(d), d(d-1)/2.
constexpr int algebra_dimension(int dim) { return dim * (dim - 1) / 2; }

class GroupMatrix;

/// Element of so(d): a skew-symmetric d x d matrix.
class AlgebraVector {
 public:
  AlgebraVector() = default;

  /// Throws std::invalid_argument unless `entries` is square and
  /// skew-symmetric entrywise within 1e-12.
  explicit AlgebraVector(Matrix entries);

  static AlgebraVector zero(int dim);

  /// Builds sum_k coords[k] * B_k over the standard orthonormal basis.
  static AlgebraVector from_coordinates(int dim, std::span<const double> coords);

  /// Skew part (A - A^T) / 2 of an arbitrary square matrix.
  static AlgebraVector skew_part(const Matrix& a);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& matrix() const { return entries_; }

  /// Coordinates in the standard basis; length algebra_dimension(dim()).
  std::vector<double> coordinates() const;
  void write_coordinates(std::span<double> out) const;

  AlgebraVector& operator+=(const AlgebraVector& other);
  AlgebraVector& operator-=(const AlgebraVector& other);
  AlgebraVector& operator*=(double s);

  friend AlgebraVector operator+(AlgebraVector a, const AlgebraVector& b) { return a += b; }
  friend AlgebraVector operator-(AlgebraVector a, const AlgebraVector& b) { return a -= b; }
  friend AlgebraVector operator*(double s, AlgebraVector a) { return a *= s; }
  friend AlgebraVector operator*(AlgebraVector a, double s) { return a *= s; }
  AlgebraVector operator-() const { return AlgebraVector(Matrix(-entries_), Trusted{}); }

 private:
  friend class GroupMatrix;
  friend AlgebraVector adjoint(const GroupMatrix& u, const AlgebraVector& x);
  struct Trusted {};
  AlgebraVector(Matrix entries, Trusted) : entries_(std::move(entries)) {}

  Matrix entries_;
};

/// Element of SO(d).
class GroupMatrix {
 public:
  GroupMatrix() = default;

  /// Throws std::invalid_argument unless ||U^T U - I||_HS <= 1e-10 and
  /// |det U - 1| <= 1e-10.
  explicit GroupMatrix(Matrix entries);

  static GroupMatrix identity(int dim);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& matrix() const { return entries_; }

  /// U^{-1} = U^T.
  GroupMatrix inverse() const { return GroupMatrix(Matrix(entries_.transpose()), Trusted{}); }

  friend GroupMatrix operator*(const GroupMatrix& a, const GroupMatrix& b);

 private:
  friend GroupMatrix exp_matrix(const AlgebraVector& x);
  friend GroupMatrix exp_rodrigues(const AlgebraVector& x);
  friend GroupMatrix exp_pade(const AlgebraVector& x);
  struct Trusted {};
  GroupMatrix(Matrix entries, Trusted) : entries_(std::move(entries)) {}

  Matrix entries_;
};

/// Orthonormal basis (E_ij - E_ji)/sqrt(2), i < j, in row-major order of (i, j).
class AlgebraBasis {
 public:
  explicit AlgebraBasis(int dim);

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(elements_.size()); }
  const AlgebraVector& operator[](int k) const { return elements_[static_cast<std::size_t>(k)]; }
  const std::vector<AlgebraVector>& elements() const { return elements_; }

 private:
  int dim_;
  std::vector<AlgebraVector> elements_;
};

/// Frobenius pairing tr(X^T Y).
double hs_inner(const AlgebraVector& x, const AlgebraVector& y);
double hs_norm(const AlgebraVector& x);

/// Largest singular value.
double uniform_norm(const Matrix& a);

/// Matrix exponential so(d) -> SO(d). Rodrigues for d = 3, closed form for
/// d = 2, scaling and squaring with a degree-13 Pade approximant otherwise.
GroupMatrix exp_matrix(const AlgebraVector& x);

/// Rodrigues formula; d must be 3.
GroupMatrix exp_rodrigues(const AlgebraVector& x);

/// General-purpose scaling and squaring path, any d.
GroupMatrix exp_pade(const AlgebraVector& x);

/// Scaling-and-squaring Pade exponential of an arbitrary square matrix.
Matrix expm(const Matrix& a);

/// Ad_u X = u X u^{-1}.
AlgebraVector adjoint(const GroupMatrix& u, const AlgebraVector& x);

}  // namespace pathgroup

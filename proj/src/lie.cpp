#include "pathgroup/lie.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pathgroup {

namespace {

constexpr double kSkewTolerance = 1e-12;
constexpr double kGroupTolerance = 1e-10;

void require_same_dim(int a, int b, const char* what) {
  if (a != b) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                                " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

AlgebraVector::AlgebraVector(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) {
    throw std::invalid_argument("AlgebraVector: matrix is not square");
  }
  const double asym = (entries_ + entries_.transpose()).cwiseAbs().maxCoeff();
  if (entries_.size() > 0 && asym > kSkewTolerance) {
    throw std::invalid_argument("AlgebraVector: matrix is not skew-symmetric");
  }
}

AlgebraVector AlgebraVector::zero(int dim) { return {Matrix::Zero(dim, dim), Trusted{}}; }

AlgebraVector AlgebraVector::from_coordinates(int dim, std::span<const double> coords) {
  if (static_cast<int>(coords.size()) != algebra_dimension(dim)) {
    throw std::invalid_argument("AlgebraVector::from_coordinates: expected " +
                                std::to_string(algebra_dimension(dim)) + " coordinates, got " +
                                std::to_string(coords.size()));
  }
  Matrix m = Matrix::Zero(dim, dim);
  std::size_t k = 0;
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      const double v = coords[k++] * M_SQRT1_2;
      m(i, j) = v;
      m(j, i) = -v;
    }
  }
  return {std::move(m), Trusted{}};
}

AlgebraVector AlgebraVector::skew_part(const Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("skew_part: matrix is not square");
  return {Matrix(0.5 * (a - a.transpose())), Trusted{}};
}

std::vector<double> AlgebraVector::coordinates() const {
  std::vector<double> out(static_cast<std::size_t>(algebra_dimension(dim())));
  write_coordinates(out);
  return out;
}

void AlgebraVector::write_coordinates(std::span<double> out) const {
  const int d = dim();
  std::size_t k = 0;
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) out[k++] = M_SQRT2 * entries_(i, j);
  }
}

AlgebraVector& AlgebraVector::operator+=(const AlgebraVector& other) {
  require_same_dim(dim(), other.dim(), "AlgebraVector::operator+");
  entries_ += other.entries_;
  return *this;
}

AlgebraVector& AlgebraVector::operator-=(const AlgebraVector& other) {
  require_same_dim(dim(), other.dim(), "AlgebraVector::operator-");
  entries_ -= other.entries_;
  return *this;
}

AlgebraVector& AlgebraVector::operator*=(double s) {
  entries_ *= s;
  return *this;
}

GroupMatrix::GroupMatrix(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) {
    throw std::invalid_argument("GroupMatrix: matrix is not square");
  }
  const auto n = entries_.rows();
  const double orth = (entries_.transpose() * entries_ - Matrix::Identity(n, n)).norm();
  if (orth > kGroupTolerance) throw std::invalid_argument("GroupMatrix: matrix is not orthogonal");
  if (std::abs(entries_.determinant() - 1.0) > kGroupTolerance) {
    throw std::invalid_argument("GroupMatrix: determinant is not 1");
  }
}

GroupMatrix GroupMatrix::identity(int dim) { return {Matrix::Identity(dim, dim), Trusted{}}; }

GroupMatrix operator*(const GroupMatrix& a, const GroupMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "GroupMatrix::operator*");
  return {Matrix(a.entries_ * b.entries_), GroupMatrix::Trusted{}};
}

AlgebraBasis::AlgebraBasis(int dim) : dim_(dim) {
  if (dim < 2) throw std::invalid_argument("AlgebraBasis: dimension must be at least 2");
  const int n = algebra_dimension(dim);
  elements_.reserve(static_cast<std::size_t>(n));
  std::vector<double> coords(static_cast<std::size_t>(n), 0.0);
  for (int k = 0; k < n; ++k) {
    coords[static_cast<std::size_t>(k)] = 1.0;
    elements_.push_back(AlgebraVector::from_coordinates(dim, coords));
    coords[static_cast<std::size_t>(k)] = 0.0;
  }
}

double hs_inner(const AlgebraVector& x, const AlgebraVector& y) {
  require_same_dim(x.dim(), y.dim(), "hs_inner");
  return x.matrix().cwiseProduct(y.matrix()).sum();
}

double hs_norm(const AlgebraVector& x) { return x.matrix().norm(); }

double uniform_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

Matrix expm(const Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("expm: matrix is not square");
  const auto n = a.rows();
  const Matrix id = Matrix::Identity(n, n);
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();

  // Higham (2005) degree thresholds for double precision.
  static constexpr std::array<double, 4> kTheta = {1.495585217958292e-2, 2.539398330063230e-1,
                                                   9.504178996162932e-1, 2.097847961257068e0};
  static constexpr std::array<int, 4> kDegree = {3, 5, 7, 9};
  static constexpr std::array<std::array<double, 10>, 4> kLow = {{
      {120.0, 60.0, 12.0, 1.0},
      {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0},
      {17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0},
      {17643225600.0, 8821612800.0, 2075673600.0, 302702400.0, 30270240.0, 2162160.0, 110880.0,
       3960.0, 90.0, 1.0},
  }};

  auto solve = [&](const Matrix& u, const Matrix& v) -> Matrix {
    return (v - u).partialPivLu().solve(v + u);
  };

  for (std::size_t idx = 0; idx < kTheta.size(); ++idx) {
    if (norm1 <= kTheta[idx]) {
      const auto& b = kLow[idx];
      const int m = kDegree[idx];
      const Matrix a2 = a * a;
      Matrix power = id;
      Matrix u_inner = b[1] * id;
      Matrix v = b[0] * id;
      for (int k = 2; k <= m; k += 2) {
        power = power * a2;
        v += b[static_cast<std::size_t>(k)] * power;
        u_inner += b[static_cast<std::size_t>(k + 1)] * power;
      }
      return solve(a * u_inner, v);
    }
  }

  static constexpr double kTheta13 = 5.371920351148152e0;
  static constexpr std::array<double, 14> b = {
      64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
      129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
      1323241920.0,        40840800.0,          960960.0,           16380.0,
      182.0,               1.0};
  int squarings = 0;
  if (norm1 > kTheta13) squarings = static_cast<int>(std::ceil(std::log2(norm1 / kTheta13)));
  const Matrix as = a / std::ldexp(1.0, squarings);
  const Matrix a2 = as * as;
  const Matrix a4 = a2 * a2;
  const Matrix a6 = a4 * a2;
  const Matrix u = as * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 +
                         b[3] * a2 + b[1] * id);
  const Matrix v =
      a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
  Matrix r = solve(u, v);
  for (int k = 0; k < squarings; ++k) r = r * r;
  return r;
}

GroupMatrix exp_pade(const AlgebraVector& x) { return {expm(x.matrix()), GroupMatrix::Trusted{}}; }

GroupMatrix exp_rodrigues(const AlgebraVector& x) {
  if (x.dim() != 3) throw std::invalid_argument("exp_rodrigues: requires d = 3");
  const Matrix& m = x.matrix();
  const double theta = std::sqrt(m(2, 1) * m(2, 1) + m(0, 2) * m(0, 2) + m(1, 0) * m(1, 0));
  double a;  // sin(theta) / theta
  double b;  // (1 - cos(theta)) / theta^2
  if (theta < 1e-4) {
    const double t2 = theta * theta;
    a = 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
    b = 0.5 - t2 / 24.0 + t2 * t2 / 720.0;
  } else {
    a = std::sin(theta) / theta;
    const double s = std::sin(0.5 * theta) / theta;
    b = 2.0 * s * s;
  }
  Matrix r = Matrix::Identity(3, 3) + a * m + b * (m * m);
  return {std::move(r), GroupMatrix::Trusted{}};
}

GroupMatrix exp_matrix(const AlgebraVector& x) {
  switch (x.dim()) {
    case 3:
      return exp_rodrigues(x);
    case 2: {
      const double angle = x.matrix()(1, 0);
      Matrix r(2, 2);
      r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
      return {std::move(r), GroupMatrix::Trusted{}};
    }
    default:
      return exp_pade(x);
  }
}

AlgebraVector adjoint(const GroupMatrix& u, const AlgebraVector& x) {
  require_same_dim(u.dim(), x.dim(), "adjoint");
  // SO(2) is abelian: Ad is the identity.
  if (x.dim() == 2) return x;
  const Matrix c = u.matrix() * x.matrix() * u.matrix().transpose();
  return {Matrix(0.5 * (c - c.transpose())), AlgebraVector::Trusted{}};
}

}  // namespace pathgroup

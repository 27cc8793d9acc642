// Copyright 2026 The kcbs-nv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef KCBS_QUTRIT_HPP
#define KCBS_QUTRIT_HPP

// Spin-1 (qutrit) linear algebra.
//
// Two bases are supported:
//   Zeeman     {|+1>, |0>, |-1>}  (eigenbasis of S_z, in this order)
//   Cartesian  {|x>, |y>, |z>}    with |x> = (|-1> - |+1>)/sqrt2,
//                                      |y> = i(|-1> + |+1>)/sqrt2,
//                                      |z> = |0>.
// In the Cartesian basis (S_k)_{ab} = -i eps_{kab}, so the eigenvalue-0
// eigenstate of l.S has the real amplitudes (l_x, l_y, l_z).
//
// Every state and operator carries its basis tag. Binary operations convert
// the right-hand argument into the basis of the left-hand one.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "kcbs/errors.hpp"

namespace kcbs {

enum class Basis { Cartesian, Zeeman };

/// Index of each Zeeman level in a Zeeman-basis vector.
enum class ZeemanLevel : int { Plus = 0, Zero = 1, Minus = 2 };

template <typename Scalar>
using Vector3r = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar>
using Vector3c = Eigen::Matrix<std::complex<Scalar>, 3, 1>;
template <typename Scalar>
using Matrix3c = Eigen::Matrix<std::complex<Scalar>, 3, 3>;

/// Tolerances shared by the invariant checks; widened for short scalars.
template <typename Scalar>
struct Tolerance {
  static constexpr Scalar kAlgebraic = std::max(Scalar(1e-12), Scalar(64) * std::numeric_limits<Scalar>::epsilon());
  static constexpr Scalar kEigen = std::max(Scalar(1e-10), Scalar(1024) * std::numeric_limits<Scalar>::epsilon());
};

// ---------------------------------------------------------------------------
// Direction

template <typename Scalar>
class BasicDirection {
 public:
  using Vector = Vector3r<Scalar>;

  BasicDirection() : v_(Scalar(0), Scalar(0), Scalar(1)) {}

  BasicDirection(Scalar x, Scalar y, Scalar z) : v_(x, y, z) {
    if (!(std::abs(v_.squaredNorm() - Scalar(1)) <= Tolerance<Scalar>::kAlgebraic)) {
      throw InvalidInput("direction is not unit-norm (|v|^2 = " + std::to_string(double(v_.squaredNorm())) +
                         ")");
    }
  }

  explicit BasicDirection(const Vector& v) : BasicDirection(v.x(), v.y(), v.z()) {}

  /// Rescales any non-zero vector onto the unit sphere.
  static BasicDirection normalized(const Vector& v) {
    const Scalar n = v.norm();
    if (!(n > Scalar(0)) || !std::isfinite(double(n))) {
      throw InvalidInput("cannot normalize a zero or non-finite vector");
    }
    BasicDirection d;
    d.v_ = v / n;
    return d;
  }

  /// Polar angle theta from +z, azimuth phi from +x.
  static BasicDirection spherical(Scalar theta, Scalar phi) {
    using std::cos;
    using std::sin;
    return normalized(Vector(sin(theta) * cos(phi), sin(theta) * sin(phi), cos(theta)));
  }

  [[nodiscard]] Scalar x() const { return v_.x(); }
  [[nodiscard]] Scalar y() const { return v_.y(); }
  [[nodiscard]] Scalar z() const { return v_.z(); }
  [[nodiscard]] const Vector& vector() const { return v_; }
  [[nodiscard]] Scalar dot(const BasicDirection& other) const { return v_.dot(other.v_); }

 private:
  Vector v_;
};

// ---------------------------------------------------------------------------
// Basis change matrix

/// Columns hold the Cartesian basis vectors expressed in Zeeman coordinates,
/// so that zeeman_amplitudes = cartesian_to_zeeman() * cartesian_amplitudes.
template <typename Scalar>
const Matrix3c<Scalar>& cartesian_to_zeeman() {
  static const Matrix3c<Scalar> t = [] {
    using C = std::complex<Scalar>;
    const Scalar r = Scalar(1) / std::sqrt(Scalar(2));
    Matrix3c<Scalar> m;
    m << C(-r, 0), C(0, r), C(0, 0),  //
        C(0, 0), C(0, 0), C(1, 0),    //
        C(r, 0), C(0, r), C(0, 0);
    return m;
  }();
  return t;
}

/// Unitary mapping coordinates in basis `from` to coordinates in basis `to`.
template <typename Scalar>
Matrix3c<Scalar> basis_transform(Basis from, Basis to) {
  if (from == to) return Matrix3c<Scalar>::Identity();
  if (from == Basis::Cartesian) return cartesian_to_zeeman<Scalar>();
  return cartesian_to_zeeman<Scalar>().adjoint();
}

// ---------------------------------------------------------------------------
// Pure states

template <typename Scalar>
class BasicQutritState {
 public:
  using Amplitudes = Vector3c<Scalar>;

  BasicQutritState(const Amplitudes& amplitudes, Basis basis) : amplitudes_(amplitudes), basis_(basis) {
    if (!(std::abs(amplitudes_.squaredNorm() - Scalar(1)) <= Tolerance<Scalar>::kAlgebraic)) {
      throw InvalidInput("qutrit state is not normalized");
    }
  }

  /// Renormalizes a non-zero vector.
  static BasicQutritState normalized(const Amplitudes& amplitudes, Basis basis) {
    const Scalar n = amplitudes.norm();
    if (!(n > Scalar(0))) throw InvalidInput("cannot normalize a zero state vector");
    return BasicQutritState(amplitudes / n, basis);
  }

  /// Zeeman basis state |m_s>.
  static BasicQutritState zeeman(ZeemanLevel level) {
    Amplitudes a = Amplitudes::Zero();
    a(static_cast<int>(level)) = Scalar(1);
    return BasicQutritState(a, Basis::Zeeman);
  }

  [[nodiscard]] const Amplitudes& amplitudes() const { return amplitudes_; }
  [[nodiscard]] Basis basis() const { return basis_; }

 private:
  Amplitudes amplitudes_;
  Basis basis_;
};

template <typename Scalar>
BasicQutritState<Scalar> basis_change(const BasicQutritState<Scalar>& s, Basis target) {
  if (s.basis() == target) return s;
  return BasicQutritState<Scalar>::normalized(basis_transform<Scalar>(s.basis(), target) * s.amplitudes(), target);
}

/// <a|b>, with b converted into a's basis.
template <typename Scalar>
std::complex<Scalar> inner(const BasicQutritState<Scalar>& a, const BasicQutritState<Scalar>& b) {
  return a.amplitudes().dot(basis_change(b, a.basis()).amplitudes());
}

// ---------------------------------------------------------------------------
// Operators

template <typename Scalar>
class BasicHermitianOp {
 public:
  using Matrix = Matrix3c<Scalar>;

  BasicHermitianOp(const Matrix& entries, Basis basis) : entries_(entries), basis_(basis) {
    if (!((entries_ - entries_.adjoint()).norm() <= Tolerance<Scalar>::kAlgebraic)) {
      throw InvalidInput("operator is not Hermitian");
    }
  }

  static BasicHermitianOp identity(Basis basis = Basis::Zeeman) { return BasicHermitianOp(Matrix::Identity(), basis); }

  [[nodiscard]] const Matrix& matrix() const { return entries_; }
  [[nodiscard]] Basis basis() const { return basis_; }

  /// Matrix in the requested basis.
  [[nodiscard]] Matrix matrix_in(Basis target) const {
    if (target == basis_) return entries_;
    const Matrix t = basis_transform<Scalar>(basis_, target);
    return t * entries_ * t.adjoint();
  }

 private:
  Matrix entries_;
  Basis basis_;
};

template <typename Scalar>
BasicHermitianOp<Scalar> basis_change(const BasicHermitianOp<Scalar>& op, Basis target) {
  if (op.basis() == target) return op;
  Matrix3c<Scalar> m = op.matrix_in(target);
  m = Scalar(0.5) * (m + m.adjoint()).eval();
  return BasicHermitianOp<Scalar>(m, target);
}

// ---------------------------------------------------------------------------
// Density matrices

template <typename Scalar>
class BasicDensityMatrix {
 public:
  using Matrix = Matrix3c<Scalar>;

  /// Validates Hermiticity, unit trace and positivity.
  BasicDensityMatrix(const Matrix& entries, Basis basis) : entries_(entries), basis_(basis) {
    if (!((entries_ - entries_.adjoint()).norm() <= Tolerance<Scalar>::kAlgebraic)) {
      throw InvalidInput("density matrix is not Hermitian");
    }
    if (!(std::abs(entries_.trace() - std::complex<Scalar>(1)) <= Tolerance<Scalar>::kAlgebraic)) {
      throw InvalidInput("density matrix trace differs from 1");
    }
    if (min_eigenvalue() < -Tolerance<Scalar>::kEigen) {
      throw InvalidInput("density matrix has a negative eigenvalue");
    }
  }

  /// Skips validation. For outputs of trace-preserving maps on valid inputs.
  static BasicDensityMatrix trusted(const Matrix& entries, Basis basis) {
    return BasicDensityMatrix(entries, basis, Unchecked{});
  }

  static BasicDensityMatrix pure(const BasicQutritState<Scalar>& s) {
    return trusted(s.amplitudes() * s.amplitudes().adjoint(), s.basis());
  }

  static BasicDensityMatrix maximally_mixed(Basis basis = Basis::Zeeman) {
    return trusted(Matrix::Identity() / Scalar(3), basis);
  }

  [[nodiscard]] const Matrix& matrix() const { return entries_; }
  [[nodiscard]] Basis basis() const { return basis_; }

  [[nodiscard]] Matrix matrix_in(Basis target) const {
    if (target == basis_) return entries_;
    const Matrix t = basis_transform<Scalar>(basis_, target);
    return t * entries_ * t.adjoint();
  }

  [[nodiscard]] Scalar trace() const { return entries_.trace().real(); }

  [[nodiscard]] Scalar hermiticity_error() const { return (entries_ - entries_.adjoint()).norm(); }

  [[nodiscard]] Scalar min_eigenvalue() const {
    const Matrix h = Scalar(0.5) * (entries_ + entries_.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
  }

  /// Population of a Zeeman level, <m|rho|m>.
  [[nodiscard]] Scalar population(ZeemanLevel level) const {
    const int k = static_cast<int>(level);
    if (basis_ == Basis::Zeeman) return entries_(k, k).real();
    return matrix_in(Basis::Zeeman)(k, k).real();
  }

 private:
  struct Unchecked {};
  BasicDensityMatrix(const Matrix& entries, Basis basis, Unchecked) : entries_(entries), basis_(basis) {}

  Matrix entries_;
  Basis basis_;
};

template <typename Scalar>
BasicDensityMatrix<Scalar> basis_change(const BasicDensityMatrix<Scalar>& rho, Basis target) {
  if (rho.basis() == target) return rho;
  return BasicDensityMatrix<Scalar>::trusted(rho.matrix_in(target), target);
}

// ---------------------------------------------------------------------------
// Spin-1 operators

/// S_x, S_y, S_z in the Zeeman basis {|+1>, |0>, |-1>}.
template <typename Scalar>
struct SpinMatrices {
  Matrix3c<Scalar> x, y, z;

  static const SpinMatrices& get() {
    static const SpinMatrices s = [] {
      using C = std::complex<Scalar>;
      const Scalar r = Scalar(1) / std::sqrt(Scalar(2));
      SpinMatrices m;
      m.x << C(0), C(r), C(0),  //
          C(r), C(0), C(r),     //
          C(0), C(r), C(0);
      m.y << C(0), C(0, -r), C(0),  //
          C(0, r), C(0), C(0, -r),  //
          C(0), C(0, r), C(0);
      m.z = Matrix3c<Scalar>::Zero();
      m.z(0, 0) = C(1);
      m.z(2, 2) = C(-1);
      return m;
    }();
    return s;
  }
};

/// Spin component l.S along a unit axis, in the Zeeman basis.
template <typename Scalar>
BasicHermitianOp<Scalar> spin_operator(const BasicDirection<Scalar>& axis) {
  const auto& s = SpinMatrices<Scalar>::get();
  return BasicHermitianOp<Scalar>(axis.x() * s.x + axis.y() * s.y + axis.z() * s.z, Basis::Zeeman);
}

/// (l.S)^2 in the Zeeman basis.
template <typename Scalar>
BasicHermitianOp<Scalar> spin_squared(const BasicDirection<Scalar>& axis) {
  const Matrix3c<Scalar> s = spin_operator(axis).matrix();
  Matrix3c<Scalar> sq = s * s;
  sq = Scalar(0.5) * (sq + sq.adjoint()).eval();
  return BasicHermitianOp<Scalar>(sq, Basis::Zeeman);
}

/// Eigenvalue-0 eigenstate of l.S, returned in the Cartesian basis.
///
/// Phase convention: the largest-magnitude Cartesian amplitude is real and
/// positive (first index wins ties).
template <typename Scalar>
BasicQutritState<Scalar> neutrally_polarized_state(const BasicDirection<Scalar>& axis) {
  const Vector3r<Scalar>& v = axis.vector();
  int lead = 0;
  for (int k = 1; k < 3; ++k) {
    if (std::abs(v(k)) > std::abs(v(lead)) + Tolerance<Scalar>::kAlgebraic) lead = k;
  }
  const Scalar sign = v(lead) < Scalar(0) ? Scalar(-1) : Scalar(1);
  return BasicQutritState<Scalar>::normalized((sign * v).template cast<std::complex<Scalar>>(), Basis::Cartesian);
}

/// L = 1 - (l.S)^2 = |l><l|, in the Zeeman basis.
template <typename Scalar>
BasicHermitianOp<Scalar> projector(const BasicDirection<Scalar>& axis) {
  const Matrix3c<Scalar> l = Matrix3c<Scalar>::Identity() - spin_squared(axis).matrix();
  return BasicHermitianOp<Scalar>(l, Basis::Zeeman);
}

/// |s><s| as an operator in the state's basis.
template <typename Scalar>
BasicHermitianOp<Scalar> outer(const BasicQutritState<Scalar>& s) {
  return BasicHermitianOp<Scalar>(s.amplitudes() * s.amplitudes().adjoint(), s.basis());
}

template <typename Scalar>
Scalar expectation(const BasicHermitianOp<Scalar>& op, const BasicQutritState<Scalar>& state) {
  const Vector3c<Scalar> a = basis_change(state, op.basis()).amplitudes();
  return a.dot(op.matrix() * a).real();
}

template <typename Scalar>
Scalar expectation(const BasicHermitianOp<Scalar>& op, const BasicDensityMatrix<Scalar>& rho) {
  return (op.matrix() * rho.matrix_in(op.basis())).trace().real();
}

/// [A, B] with B converted to A's basis.
template <typename Scalar>
Matrix3c<Scalar> commutator(const BasicHermitianOp<Scalar>& a, const BasicHermitianOp<Scalar>& b) {
  const Matrix3c<Scalar> bm = b.matrix_in(a.basis());
  return a.matrix() * bm - bm * a.matrix();
}

// ---------------------------------------------------------------------------
// Double-precision aliases used throughout the library.

using Direction = BasicDirection<double>;
using QutritState = BasicQutritState<double>;
using HermitianOp = BasicHermitianOp<double>;
using DensityMatrix = BasicDensityMatrix<double>;
using Vector3cd = Vector3c<double>;
using Matrix3cd = Matrix3c<double>;

}  // namespace kcbs

#endif  // KCBS_QUTRIT_HPP

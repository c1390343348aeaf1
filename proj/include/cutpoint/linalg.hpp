#pragma once

#include <initializer_list>

#include <Eigen/Core>

#include "cutpoint/errors.hpp"
#include "cutpoint/rational.hpp"
#include "cutpoint/scalar_expr.hpp"

namespace Eigen {

template <>
struct NumTraits<cutpoint::Expr> : GenericNumTraits<cutpoint::Expr> {
  using Real = cutpoint::Expr;
  using NonInteger = cutpoint::Expr;
  using Nested = cutpoint::Expr;
  using Literal = cutpoint::Expr;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 8,
    MulCost = 8
  };
};

template <>
struct NumTraits<cutpoint::Rational> : GenericNumTraits<cutpoint::Rational> {
  using Real = cutpoint::Rational;
  using NonInteger = cutpoint::Rational;
  using Nested = cutpoint::Rational;
  using Literal = cutpoint::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 4,
    MulCost = 4
  };
};

}  // namespace Eigen

namespace cutpoint {

template <class Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Square matrix over symbolic scalars; exact whenever every entry is.
using Matrix = MatrixX<Expr>;
using Vector = VectorX<Expr>;
using Index = Eigen::Index;

/// Row-major literal helper: make_matrix({{1, 0}, {0, 1}}).
Matrix make_matrix(std::initializer_list<std::initializer_list<Expr>> rows);

/// True iff all entries are exact literals (rationals or one quadratic field).
bool is_exact(const Matrix& m);
bool is_exact(const Vector& v);

/// m^k by square-and-multiply; m^0 is the identity. Works for any scalar
/// type with ring operations (double, Rational, Expr).
template <class Derived>
MatrixX<typename Derived::Scalar> mat_pow(const Eigen::MatrixBase<Derived>& m, unsigned long k) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() != m.cols()) throw DimensionMismatch("mat_pow needs a square matrix");
  MatrixX<Scalar> result = MatrixX<Scalar>::Identity(m.rows(), m.cols());
  MatrixX<Scalar> base = m;
  while (k > 0) {
    if (k & 1UL) result = result.lazyProduct(base).eval();
    k >>= 1;
    if (k > 0) base = base.lazyProduct(base).eval();
  }
  return result;
}

enum class StateKind { Probabilistic, Quantum };

// Column state of an automaton: a distribution (probabilistic) or a real
// amplitude vector (quantum).
class StateVector {
 public:
  StateVector(Vector entries, StateKind kind) : entries_(std::move(entries)), kind_(kind) {}
  /// Zero-one vector with a 1 in position `index` (0-based).
  static StateVector basis(Index dimension, Index index, StateKind kind);

  const Vector& entries() const { return entries_; }
  const Expr& operator[](Index i) const { return entries_(i); }
  Index dimension() const { return entries_.size(); }
  StateKind kind() const { return kind_; }
  bool is_exact() const { return cutpoint::is_exact(entries_); }

  /// Sum of entries (probabilistic) or of squared entries (quantum).
  Expr total_mass() const;

 private:
  Vector entries_;
  StateKind kind_;
};

/// Probabilistic: entries >= 0 and summing to 1; quantum: squared entries
/// summing to 1. Exact states are checked exactly; others at max_bits.
bool is_valid_state(const StateVector& v, int max_bits = kDefaultMaxBits);

/// Throws DimensionMismatch.
StateVector mat_vec(const Matrix& m, const StateVector& v);

/// Every entry certifiably >= 0 and every column summing to exactly 1.
/// Columns of non-exact matrices only pass when the sum folds to 1.
/// PrecisionExhausted propagates for entries whose sign cannot be settled.
bool is_column_stochastic(const Matrix& m, int max_bits = kDefaultMaxBits);

/// m^T m == I. Exact entries are compared exactly; a non-exact Gram entry
/// passes when its enclosure at max_bits lies within 2^(1-max_bits) of the
/// target and fails as soon as it is certified different.
bool is_unitary(const Matrix& m, int max_bits = kDefaultMaxBits);

}  // namespace cutpoint

#include "cutpoint/linalg.hpp"

#include <algorithm>

namespace cutpoint {

Matrix make_matrix(std::initializer_list<std::initializer_list<Expr>> rows) {
  const Index n = static_cast<Index>(rows.size());
  const Index m = n == 0 ? 0 : static_cast<Index>(rows.begin()->size());
  Matrix out(n, m);
  Index i = 0;
  for (const auto& row : rows) {
    if (static_cast<Index>(row.size()) != m) throw DimensionMismatch("ragged matrix literal");
    Index j = 0;
    for (const auto& e : row) out(i, j++) = e;
    ++i;
  }
  return out;
}

bool is_exact(const Matrix& m) {
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_exact()) return false;
  return true;
}

bool is_exact(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const Expr& e) { return e.is_exact(); });
}

StateVector StateVector::basis(Index dimension, Index index, StateKind kind) {
  if (index < 0 || index >= dimension) throw DimensionMismatch("basis index out of range");
  Vector v = Vector::Zero(dimension);
  v(index) = Expr(1);
  return StateVector(std::move(v), kind);
}

Expr StateVector::total_mass() const {
  Expr sum;
  for (const Expr& e : entries_) sum += kind_ == StateKind::Probabilistic ? e : e * e;
  return sum;
}

namespace {

// |value - target| certified below 2^(1-max_bits), or certified nonzero.
bool matches(const Expr& value, const Rational& target, int max_bits) {
  Expr diff = value - Expr(target);
  if (const Quadratic* q = diff.exact_value()) return q->sign() == 0;
  Enclosure enc = eval(diff, max_bits);
  if (enc.sign() != 0) return false;
  return enc.width() <= Rational::pow2(1 - max_bits);
}

bool nonnegative(const Expr& e, int max_bits) {
  if (const Quadratic* q = e.exact_value()) return q->sign() >= 0;
  return certified_sign(e, max_bits) == Sign::Positive;
}

}  // namespace

bool is_valid_state(const StateVector& v, int max_bits) {
  if (v.kind() == StateKind::Probabilistic) {
    for (const Expr& e : v.entries())
      if (!nonnegative(e, max_bits)) return false;
  }
  return matches(v.total_mass(), Rational(1), max_bits);
}

StateVector mat_vec(const Matrix& m, const StateVector& v) {
  if (m.cols() != v.dimension())
    throw DimensionMismatch("matrix has " + std::to_string(m.cols()) + " columns, vector has " +
                            std::to_string(v.dimension()) + " entries");
  Vector out = m.lazyProduct(v.entries());
  return StateVector(std::move(out), v.kind());
}

bool is_column_stochastic(const Matrix& m, int max_bits) {
  if (m.rows() != m.cols()) throw DimensionMismatch("stochasticity is defined for square matrices");
  for (Index j = 0; j < m.cols(); ++j) {
    Expr sum;
    for (Index i = 0; i < m.rows(); ++i) {
      if (!nonnegative(m(i, j), max_bits)) return false;
      sum += m(i, j);
    }
    const Quadratic* q = sum.exact_value();
    if (!q || !(*q == Quadratic(1))) return false;
  }
  return true;
}

bool is_unitary(const Matrix& m, int max_bits) {
  if (m.rows() != m.cols()) throw DimensionMismatch("unitarity is defined for square matrices");
  Matrix gram = m.transpose().lazyProduct(m);
  for (Index i = 0; i < gram.rows(); ++i)
    for (Index j = 0; j < gram.cols(); ++j)
      if (!matches(gram(i, j), Rational(i == j ? 1 : 0), max_bits)) return false;
  return true;
}

}  // namespace cutpoint

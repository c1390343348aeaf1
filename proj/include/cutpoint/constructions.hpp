#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "cutpoint/automata.hpp"
#include "cutpoint/irrational_param.hpp"

namespace cutpoint {

/// Rabin's 2-state binary PFA: f(w) = bin(reverse(w)).
PFA rabin_pfa();

/// Scaled variant accepting with probability alpha * bin(reverse(w)).
/// alpha = 1 gives rabin_pfa(). Throws RangeError unless alpha is in (0, 1].
PFA rabin_alpha_pfa(const Expr& alpha, int max_bits = kDefaultMaxBits);

/// Value of reverse(w) read as a binary fraction; 0 for the empty word.
/// Throws SymbolError for characters other than '0' and '1'.
Rational bin_reverse_oracle(std::string_view word);

// Rotation angle held as its cosine and sine. Either 2*pi*alpha for a
// parameter alpha, or a point (c, s) on the unit circle given exactly.
class RotationAngle {
 public:
  /// Throws RangeError unless alpha lies in (0, 1).
  static RotationAngle turns(const IrrationalParam& alpha);
  /// Throws RangeError unless c^2 + s^2 == 1.
  static RotationAngle unit_point(const Rational& c, const Rational& s);

  const Expr& cos() const { return cos_; }
  const Expr& sin() const { return sin_; }
  const std::optional<IrrationalParam>& param() const { return param_; }
  bool is_exact() const { return !param_.has_value(); }
  std::string to_string() const;

 private:
  RotationAngle(Expr c, Expr s, std::optional<IrrationalParam> param)
      : cos_(std::move(c)), sin_(std::move(s)), param_(std::move(param)) {}
  Expr cos_;
  Expr sin_;
  std::optional<IrrationalParam> param_;
};

/// The 3-4-5 rotation: cos = 3/5, sin = 4/5.
RotationAngle fixed_rotation();

/// Unary 2-state QFA rotating counter-clockwise by the angle; accepts in state 1.
QFA rotation_qfa(const RotationAngle& angle, int max_bits = kDefaultMaxBits);

/// cos^2(j * angle). Exact for unit points (Chebyshev doubling on the
/// cosine); symbolic cos(2*pi*j*alpha)^2 otherwise.
Expr qfa_prob_oracle(const RotationAngle& angle, unsigned long j);

/// Unary 3-state PFA with matrix [[0,0,x],[1,0,x],[0,1,1-2x]], start 1, accept 3.
/// Throws RangeError unless x is in (0, 1/2].
PFA unary_pfa_Bx(const Expr& x, int max_bits = kDefaultMaxBits);
Matrix matrix_Bx(const Expr& x);

// Coefficients of f(0^m) = a + 2*amplitude*x^(m/2)*cos(m*theta + gamma).
struct ClosedFormCoefficients {
  Expr x;
  Expr a;
  Expr b;
  Expr c;
  Expr amplitude;  // sqrt(b^2 + c^2)
  Expr theta;      // arccos(-sqrt(x))
  Expr gamma;      // arccos(b / amplitude)
  Expr eigen_re;   // -x
  Expr eigen_im;   // sqrt(x - x^2)
};

/// Throws RangeError unless x is in (0, 1/2].
ClosedFormCoefficients closed_form_coeffs(const Expr& x);

/// a + 2*amplitude*x^(m/2)*cos(m*theta + gamma).
Expr closed_form_prob(const Expr& x, unsigned long m);
Expr closed_form_prob(const ClosedFormCoefficients& k, unsigned long m);

/// a + 2*Re[(b + ci)(-x + sqrt(x - x^2) i)^m], the same closed form before
/// the polar rewrite. Exact whenever x is rational.
Expr eigenform_prob(const Expr& x, unsigned long m);

/// 1 / (3x + 1).
Expr cutpoint_lambda(const Expr& x);

/// [[1-a, 1-a, 1+x-a], [a, a-1, a+x-1], [0, 1, 1-2x]] for alpha a.
/// Throws RangeError unless x is in (0, 1/10) and alpha in (1/2, 1].
Matrix matrix_Bxalpha(const Expr& x, const Expr& alpha);

/// Entry-wise polynomial form of matrix_Bxalpha(x, alpha)^3.
Matrix displayed_cube(const Expr& x, const Expr& alpha);

/// (3x + 1) / 2, the alpha that makes the constant term exactly 1/2.
Expr qprime_alpha(const Expr& x);

/// Unary 3-state PFA whose matrix is the cube of B_{x,(3x+1)/2}. For exact
/// x the computed cube is checked against displayed_cube. Throws RangeError
/// unless x is exact and in (0, 1/10); ValidationError if not stochastic.
PFA qprime_pfa(const Expr& x, int max_bits = kDefaultMaxBits);

struct PrimedCoefficients {
  Expr a;
  Expr b;
  Expr c;
};

/// (alpha*a, alpha*b, alpha*c).
PrimedCoefficients primed_coefficients(const Expr& x, const Expr& alpha);

/// alpha / (3x + 1) with alpha = (3x + 1)/2.
Expr primed_constant_term(const Expr& x);

/// 1/2 + 2*alpha*amplitude*x^(3m/2)*cos(3m*theta + gamma), alpha = (3x+1)/2.
Expr primed_closed_form_prob(const Expr& x, unsigned long m);

/// alpha * eigenform_prob(x, 3m); exact for rational x.
Expr primed_eigenform_prob(const Expr& x, unsigned long m);

struct ComplexPair {
  Expr re;
  Expr im;
};

/// 1, -x + sqrt(x - x^2) i, -x - sqrt(x - x^2) i.
std::array<ComplexPair, 3> eigenvalues_Bx(const Expr& x);

}  // namespace cutpoint

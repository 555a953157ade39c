#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace cqh {

using Exponents = std::vector<int>;

class AlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a division that must be exact leaves a remainder.
class NotDivisible : public AlgebraError {
 public:
  using AlgebraError::AlgebraError;
};

class NegativeCoefficient : public AlgebraError {
 public:
  using AlgebraError::AlgebraError;
};

class DimensionMismatch : public AlgebraError {
 public:
  using AlgebraError::AlgebraError;
};

// Graded-lex order: total degree first, then lexicographic. Used descending so
// that the first stored term is the leading term.
struct GradedLexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

struct Monomial {
  Exponents exps;

  static Monomial unit(std::size_t nvars) { return Monomial{Exponents(nvars, 0)}; }
  static Monomial var(std::size_t nvars, std::size_t i, int power = 1);

  std::size_t nvars() const { return exps.size(); }
  bool is_unit() const;
  Monomial operator*(const Monomial& o) const;
  Monomial operator/(const Monomial& o) const;
  Monomial inverse() const;
  Monomial pow(int k) const;
  bool operator==(const Monomial& o) const { return exps == o.exps; }
  bool operator!=(const Monomial& o) const { return exps != o.exps; }
};

// Elements of the tropical semifield over m frozen generators: multiplication
// adds exponents, tropical addition takes the componentwise minimum.
struct FrozenMonomial {
  Exponents exps;

  static FrozenMonomial unit(std::size_t m) { return FrozenMonomial{Exponents(m, 0)}; }
  static FrozenMonomial gen(std::size_t m, std::size_t i, int power = 1);

  std::size_t size() const { return exps.size(); }
  bool is_unit() const;
  FrozenMonomial operator*(const FrozenMonomial& o) const;
  FrozenMonomial operator/(const FrozenMonomial& o) const;
  FrozenMonomial inverse() const;
  FrozenMonomial pow(int k) const;
  bool operator==(const FrozenMonomial& o) const { return exps == o.exps; }
  bool operator!=(const FrozenMonomial& o) const { return exps != o.exps; }
  bool operator<(const FrozenMonomial& o) const { return exps < o.exps; }
};

FrozenMonomial trop_add(const FrozenMonomial& a, const FrozenMonomial& b);

class LaurentPoly {
 public:
  using TermMap = std::map<Exponents, mpz_class, GradedLexGreater>;

  LaurentPoly() = default;
  explicit LaurentPoly(std::size_t nvars) : nvars_(nvars) {}

  static LaurentPoly zero(std::size_t nvars) { return LaurentPoly(nvars); }
  static LaurentPoly constant(std::size_t nvars, const mpz_class& c);
  static LaurentPoly one(std::size_t nvars) { return constant(nvars, 1); }
  static LaurentPoly var(std::size_t nvars, std::size_t i, int power = 1);
  static LaurentPoly monomial(const Monomial& m, const mpz_class& c = 1);

  std::size_t nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t num_terms() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  // Adds c * x^e, dropping the term if the coefficient cancels.
  void add_term(const Exponents& e, const mpz_class& c);

  // Leading and trailing terms in graded-lex order. Precondition: nonzero.
  const Exponents& leading_exponents() const { return terms_.begin()->first; }
  const mpz_class& leading_coefficient() const { return terms_.begin()->second; }

  // Returns the single monomial if this polynomial is c * x^e with c == 1.
  std::optional<Monomial> as_monomial() const;
  bool all_coefficients_positive() const;

  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator-() const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly operator*(const Monomial& m) const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);
  bool operator==(const LaurentPoly& o) const;
  bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

  // Nonnegative powers only; negative powers are allowed for monomials.
  LaurentPoly pow(int k) const;

  // Componentwise min and max exponent over all terms, per variable.
  Exponents min_exponents() const;
  Exponents max_exponents() const;

  std::string to_string(const std::vector<std::string>& names = {}) const;

 private:
  void check_same(const LaurentPoly& o) const;

  std::size_t nvars_ = 0;
  TermMap terms_;
};

LaurentPoly add(const LaurentPoly& f, const LaurentPoly& g);
LaurentPoly mul(const LaurentPoly& f, const LaurentPoly& g);

// Exact quotient f / g. Throws NotDivisible if no Laurent polynomial q satisfies q * g == f.
LaurentPoly exact_div(const LaurentPoly& f, const LaurentPoly& g);

std::optional<LaurentPoly> try_exact_div(const LaurentPoly& f, const LaurentPoly& g);

// Monomial q with f == q * g, if one exists.
std::optional<Monomial> monomial_ratio(const LaurentPoly& f, const LaurentPoly& g);

// Like monomial_ratio, but only accepts ratios that involve no variable below
// `num_mutable`. Returns the frozen part of the ratio.
std::optional<FrozenMonomial> frozen_ratio(const LaurentPoly& f, const LaurentPoly& g,
                                           std::size_t num_mutable);

// Image in the tropical semifield after sending the first `num_mutable` variables to 1.
FrozenMonomial tropicalize(const LaurentPoly& f, std::size_t num_mutable);

// Frozen monomial q as a Laurent monomial in an ambient whose frozen variables start at `num_mutable`.
LaurentPoly embed_frozen(const FrozenMonomial& q, std::size_t num_mutable);

// Ring homomorphism sending variable i to images[i]. Negative exponents need
// monomial images; otherwise NotDivisible is thrown.
LaurentPoly substitute(const LaurentPoly& f, const std::vector<LaurentPoly>& images);

// Like substitute, but negative exponents are cleared first and the common
// denominator is divided out exactly at the end. Throws NotDivisible if the
// image is not a Laurent polynomial in the target ring.
LaurentPoly substitute_exact(const LaurentPoly& f, const std::vector<LaurentPoly>& images);

// A formal quotient num / den, compared by cross-multiplication.
struct Fraction {
  LaurentPoly num;
  LaurentPoly den;

  static Fraction of(const LaurentPoly& p) { return {p, LaurentPoly::one(p.nvars())}; }
  Fraction operator*(const Fraction& o) const { return {num * o.num, den * o.den}; }
  Fraction operator/(const Fraction& o) const { return {num * o.den, den * o.num}; }
  Fraction operator+(const Fraction& o) const {
    return {num * o.den + o.num * den, den * o.den};
  }
  Fraction inverse() const { return {den, num}; }
  Fraction pow(int k) const;
  bool equals(const Fraction& o) const { return num * o.den == o.num * den; }
};

nlohmann::json to_json(const LaurentPoly& f, const std::vector<std::string>& names);
LaurentPoly laurent_from_json(const nlohmann::json& j, std::vector<std::string>* names = nullptr);

// Names x1..xn followed by u1..um, used when no names are supplied.
std::vector<std::string> default_var_names(std::size_t n, std::size_t m);

}  // namespace cqh

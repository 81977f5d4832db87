#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace walg {

using Rat = mpq_class;

inline Rat frac(long n, long d) {
  Rat r(n, d);
  r.canonicalize();
  return r;
}

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Variable ids for the coefficient ring Q[k, s, h, D] with the relation
// s^2 = k.  k is the level, s its formal square root; h and D are spare
// indeterminates used by the Zhu-module computations.
enum Var : int { VarK = 0, VarS = 1, VarH = 2, VarD = 3 };
constexpr int kNumVars = 4;

// Monomial: four packed 16-bit exponents, k in the top bits so that the
// packed value is lex-comparable with k > s > h > D.
struct Mono {
  uint64_t bits = 0;

  static Mono var(int v, int e = 1) {
    Mono m;
    m.bits = uint64_t(e) << (16 * (3 - v));
    return m;
  }
  int exp(int v) const { return int((bits >> (16 * (3 - v))) & 0xffff); }
  int tdeg() const { return exp(0) + exp(1) + exp(2) + exp(3); }
  bool operator==(const Mono& o) const { return bits == o.bits; }
};

// deg-lex order, largest first inside Poly
inline bool monoLess(const Mono& a, const Mono& b) {
  int da = a.tdeg(), db = b.tdeg();
  if (da != db) return da < db;
  return a.bits < b.bits;
}

class Poly {
 public:
  // terms sorted descending in monoLess, no zero coefficients
  std::vector<std::pair<Mono, Rat>> t;

  Poly() = default;
  static Poly zero() { return Poly(); }
  static Poly constant(const Rat& c);
  static Poly variable(int v);

  bool isZero() const { return t.empty(); }
  bool isConstant() const { return t.empty() || (t.size() == 1 && t[0].first.bits == 0); }
  Rat constantValue() const;  // requires isConstant()
  int degree(int v) const;
  int sigmaDegree() const { return degree(VarS); }
  bool usesVar(int v) const { return degree(v) > 0; }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  bool operator==(const Poly& o) const { return t == o.t; }

  Poly scaled(const Rat& c) const;
  // substitute variable v by value p (s^2 -> k reduction re-applied)
  Poly subst(int v, const Poly& p) const;
  // leading coefficient and monomial in deg-lex
  const Rat& lc() const { return t.front().second; }
  const Mono& lm() const { return t.front().first; }

  std::string str() const;

  static Poly gcd(const Poly& a, const Poly& b);
  // exact division; throws if not divisible
  static Poly divExact(const Poly& a, const Poly& b);

 private:
  void normalize();
  friend Poly mulReduce(const Poly& a, const Poly& b);
};

// Exact value a + b*sqrt(k0) produced by specialization.
struct SpecValue {
  Rat rat;   // rational part
  Rat irr;   // coefficient of the formal sqrt(k0)
  bool operator==(const SpecValue& o) const { return rat == o.rat && irr == o.irr; }
};

// Element of Q(k, h, D)[s]/(s^2 - k): numerator may contain s, the
// denominator never does.  Always stored reduced with a monic denominator.
class Scalar {
 public:
  Scalar() : num_(), den_(Poly::constant(1)) {}
  Scalar(int n) : Scalar(Rat(n)) {}
  Scalar(const Rat& c) : num_(Poly::constant(c)), den_(Poly::constant(1)) {}
  Scalar(Poly num, Poly den);

  static Scalar kappa() { return Scalar(Poly::variable(VarK), Poly::constant(1)); }
  static Scalar sigma() { return Scalar(Poly::variable(VarS), Poly::constant(1)); }
  static Scalar var(int v) { return Scalar(Poly::variable(v), Poly::constant(1)); }

  bool isZero() const { return num_.isZero(); }
  bool isRational() const { return num_.isConstant() && den_.isConstant(); }
  Rat rationalValue() const;
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }
  bool operator==(const Scalar& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  Scalar inverse() const;
  Scalar pow(int e) const;

  bool usesVar(int v) const { return num_.usesVar(v) || den_.usesVar(v); }
  bool usesSigma() const { return usesVar(VarS); }
  // true when every k-exponent in numerator and denominator is even and no
  // sigma is present
  bool evenInKappa() const;

  // substitute a variable by another scalar (s not substitutable)
  Scalar subst(int v, const Scalar& value) const;

  // evaluate at k = k0 (s -> branch * sqrt(k0) kept formal).
  // Throws "critical level" when k0 == 0 and kappaCritical is true,
  // "pole at specialization" when the denominator vanishes.
  SpecValue specialize(const Rat& k0, int sigmaBranch = +1,
                       bool kappaCritical = true) const;

  std::string str() const;

  // parse an expression in k, s, h, D with + - * / ^ and rationals
  static Scalar parse(const std::string& text);

 private:
  Poly num_, den_;
  void reduce();
};

inline Scalar operator*(const Rat& c, const Scalar& s) { return Scalar(c) * s; }

}  // namespace walg

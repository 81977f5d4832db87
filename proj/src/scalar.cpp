#include "walg/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace walg {

namespace {
const char* kVarNames[kNumVars] = {"k", "s", "h", "D"};
}

Poly Poly::constant(const Rat& c) {
  Poly p;
  if (c != 0) p.t.push_back({Mono{}, c});
  return p;
}

Poly Poly::variable(int v) {
  Poly p;
  p.t.push_back({Mono::var(v), Rat(1)});
  return p;
}

Rat Poly::constantValue() const {
  if (t.empty()) return Rat(0);
  return t[0].second;
}

int Poly::degree(int v) const {
  int d = 0;
  for (auto& [m, c] : t) d = std::max(d, m.exp(v));
  return d;
}

void Poly::normalize() {
  std::sort(t.begin(), t.end(), [](const auto& a, const auto& b) {
    return monoLess(b.first, a.first);
  });
  std::vector<std::pair<Mono, Rat>> out;
  for (auto& [m, c] : t) {
    if (!out.empty() && out.back().first == m)
      out.back().second += c;
    else
      out.push_back({m, c});
  }
  std::erase_if(out, [](const auto& p) { return p.second == 0; });
  t = std::move(out);
}

Poly Poly::operator+(const Poly& o) const {
  Poly r;
  r.t.reserve(t.size() + o.t.size());
  size_t i = 0, j = 0;
  while (i < t.size() && j < o.t.size()) {
    if (t[i].first == o.t[j].first) {
      Rat c = t[i].second + o.t[j].second;
      if (c != 0) r.t.push_back({t[i].first, c});
      ++i, ++j;
    } else if (monoLess(o.t[j].first, t[i].first)) {
      r.t.push_back(t[i++]);
    } else {
      r.t.push_back(o.t[j++]);
    }
  }
  while (i < t.size()) r.t.push_back(t[i++]);
  while (j < o.t.size()) r.t.push_back(o.t[j++]);
  return r;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [m, c] : r.t) c = -c;
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

// multiply monomials with the s^2 -> k rewrite
static Mono monoMulReduce(const Mono& a, const Mono& b) {
  Mono r;
  int e[4];
  for (int v = 0; v < 4; ++v) e[v] = a.exp(v) + b.exp(v);
  e[VarK] += e[VarS] / 2;
  e[VarS] %= 2;
  r.bits = (uint64_t(e[0]) << 48) | (uint64_t(e[1]) << 32) |
           (uint64_t(e[2]) << 16) | uint64_t(e[3]);
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  Poly r;
  if (isZero() || o.isZero()) return r;
  r.t.reserve(t.size() * o.t.size());
  for (auto& [ma, ca] : t)
    for (auto& [mb, cb] : o.t) r.t.push_back({monoMulReduce(ma, mb), ca * cb});
  r.normalize();
  return r;
}

Poly Poly::scaled(const Rat& c) const {
  if (c == 0) return Poly();
  Poly r = *this;
  for (auto& [m, x] : r.t) x *= c;
  return r;
}

Poly Poly::subst(int v, const Poly& p) const {
  Poly r;
  for (auto& [m, c] : t) {
    int e = m.exp(v);
    Mono rest = m;
    rest.bits &= ~(uint64_t(0xffff) << (16 * (3 - v)));
    Poly term;
    term.t.push_back({rest, c});
    for (int i = 0; i < e; ++i) term = term * p;
    r = r + term;
  }
  return r;
}

std::string Poly::str() const {
  if (t.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [m, c] : t) {
    Rat a = c;
    if (first) {
      if (a < 0) {
        os << "-";
        a = -a;
      }
    } else {
      os << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    first = false;
    bool hasVar = m.bits != 0;
    if (!hasVar || a != 1) {
      os << a.get_str();
      if (hasVar) os << "*";
    }
    bool firstVar = true;
    for (int v = 0; v < 4; ++v) {
      int e = m.exp(v);
      if (e == 0) continue;
      if (!firstVar) os << "*";
      firstVar = false;
      os << kVarNames[v];
      if (e > 1) os << "^" << e;
    }
  }
  return os.str();
}

// ---- gcd machinery -------------------------------------------------------

namespace {

// view p as univariate in v: coefficient polys by degree
std::vector<Poly> coeffsIn(const Poly& p, int v) {
  std::vector<Poly> out(p.degree(v) + 1);
  for (auto& [m, c] : p.t) {
    int e = m.exp(v);
    Mono rest = m;
    rest.bits &= ~(uint64_t(0xffff) << (16 * (3 - v)));
    out[e].t.push_back({rest, c});
  }
  for (auto& q : out)
    std::sort(q.t.begin(), q.t.end(),
              [](const auto& a, const auto& b) { return monoLess(b.first, a.first); });
  return out;
}

Poly fromCoeffs(const std::vector<Poly>& cs, int v) {
  Poly r;
  for (size_t e = 0; e < cs.size(); ++e) {
    for (auto& [m, c] : cs[e].t) {
      Mono mm = m;
      mm.bits |= uint64_t(e) << (16 * (3 - v));
      r.t.push_back({mm, c});
    }
  }
  std::sort(r.t.begin(), r.t.end(),
            [](const auto& a, const auto& b) { return monoLess(b.first, a.first); });
  return r;
}

int mainVar(const Poly& a, const Poly& b) {
  for (int v = 3; v >= 0; --v)
    if (a.degree(v) > 0 || b.degree(v) > 0) return v;
  return -1;
}

// make rational-coefficient content 1 and leading coefficient positive
Poly primitivePart(const Poly& p, Rat* contentOut = nullptr) {
  if (p.isZero()) {
    if (contentOut) *contentOut = 0;
    return p;
  }
  mpz_class num = 0, den = 1;
  for (auto& [m, c] : p.t) {
    num = gcd(num, c.get_num());
    den = lcm(den, c.get_den());
  }
  Rat content(num, den);
  content.canonicalize();
  if (p.lc() < 0) content = -content;
  if (contentOut) *contentOut = content;
  return p.scaled(1 / content);
}

}  // namespace

Poly Poly::gcd(const Poly& a, const Poly& b) {
  if (a.isZero()) return primitivePart(b);
  if (b.isZero()) return primitivePart(a);
  int v = mainVar(a, b);
  if (v < 0) return Poly::constant(1);
  if (a.degree(v) == 0 || b.degree(v) == 0) {
    // gcd of contents w.r.t. v
    auto ca = coeffsIn(a, v), cb = coeffsIn(b, v);
    Poly g;
    for (auto& q : ca) g = gcd(g, q);
    for (auto& q : cb) g = gcd(g, q);
    return g;
  }
  // contents and primitive parts w.r.t. v
  auto contentOf = [&](const Poly& p) {
    auto cs = coeffsIn(p, v);
    Poly g;
    for (auto& q : cs) g = gcd(g, q);
    return g;
  };
  Poly ca = contentOf(a), cb = contentOf(b);
  Poly A = divExact(a, ca), B = divExact(b, cb);
  Poly cg = gcd(ca, cb);
  // primitive PRS
  while (!B.isZero()) {
    int da = A.degree(v), db = B.degree(v);
    if (da < db) {
      std::swap(A, B);
      continue;
    }
    // pseudo-remainder of A by B in v
    auto Ac = coeffsIn(A, v), Bc = coeffsIn(B, v);
    Poly blc = Bc.back();
    Poly R = A;
    for (int d = da; d >= db; --d) {
      auto Rc = coeffsIn(R, v);
      if ((int)Rc.size() <= d || Rc[d].isZero()) continue;
      Poly q = Rc[d];
      // R = blc*R - q*x^{d-db}*B
      Poly shiftB;
      {
        std::vector<Poly> sc(Bc.size() + d - db);
        for (size_t i = 0; i < Bc.size(); ++i) sc[i + d - db] = Bc[i];
        shiftB = fromCoeffs(sc, v);
      }
      R = blc * R - q * shiftB;
    }
    A = B;
    if (R.isZero()) {
      B = Poly();
    } else {
      B = primitivePart(divExact(R, contentOf(R)));
    }
  }
  return primitivePart(cg * primitivePart(A));
}

Poly Poly::divExact(const Poly& a, const Poly& b) {
  if (a.isZero()) return Poly();
  if (b.isZero()) throw Error("division by zero polynomial");
  if (b.isConstant()) return a.scaled(1 / b.constantValue());
  int v = mainVar(a, b);
  auto ac = coeffsIn(a, v), bc = coeffsIn(b, v);
  int da = int(ac.size()) - 1, db = int(bc.size()) - 1;
  if (da < db) throw Error("inexact polynomial division");
  std::vector<Poly> q(da - db + 1);
  std::vector<Poly> r = ac;
  for (int d = da; d >= db; --d) {
    if (r[d].isZero()) continue;
    Poly qd = divExact(r[d], bc[db]);
    q[d - db] = qd;
    for (int i = 0; i <= db; ++i) r[d - db + i] = r[d - db + i] - qd * bc[i];
  }
  for (auto& rest : r)
    if (!rest.isZero()) throw Error("inexact polynomial division");
  return fromCoeffs(q, v);
}

// ---- Scalar ---------------------------------------------------------------

Scalar::Scalar(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.isZero()) throw Error("zero denominator");
  if (den_.sigmaDegree() > 0) throw Error("sigma in denominator");
  reduce();
}

void Scalar::reduce() {
  if (num_.isZero()) {
    den_ = Poly::constant(1);
    return;
  }
  if (!den_.isConstant()) {
    // split numerator into sigma-even and sigma-odd parts for the gcd
    Poly p, q;
    for (auto& [m, c] : num_.t) {
      if (m.exp(VarS) == 0)
        p.t.push_back({m, c});
      else
        q.t.push_back({m, c});
    }
    Poly g = Poly::gcd(Poly::gcd(p, q), den_);
    if (!g.isConstant()) {
      num_ = Poly::divExact(num_, g);
      den_ = Poly::divExact(den_, g);
    }
  }
  Rat lc = den_.lc();
  if (lc != 1) {
    den_ = den_.scaled(1 / lc);
    num_ = num_.scaled(1 / lc);
  }
}

Rat Scalar::rationalValue() const {
  if (!isRational()) throw Error("scalar is not rational: " + str());
  return num_.constantValue() / den_.constantValue();
}

Scalar Scalar::operator+(const Scalar& o) const {
  if (isZero()) return o;
  if (o.isZero()) return *this;
  if (den_ == o.den_) return Scalar(num_ + o.num_, den_);
  return Scalar(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.num_ = -r.num_;
  return r;
}

Scalar Scalar::operator*(const Scalar& o) const {
  if (isZero() || o.isZero()) return Scalar();
  return Scalar(num_ * o.num_, den_ * o.den_);
}

Scalar Scalar::inverse() const {
  if (isZero()) throw Error("zero denominator");
  if (num_.sigmaDegree() == 0) return Scalar(den_, num_);
  // (p + s q)^{-1} = (p - s q) den / (p^2 - k q^2)
  Poly p, sq;
  for (auto& [m, c] : num_.t) {
    if (m.exp(VarS) == 0)
      p.t.push_back({m, c});
    else {
      Mono mm = m;
      mm.bits &= ~(uint64_t(0xffff) << (16 * (3 - VarS)));
      sq.t.push_back({mm, c});
    }
  }
  Poly k = Poly::variable(VarK);
  Poly norm = p * p - k * sq * sq;
  Poly s = Poly::variable(VarS);
  Poly conj = p - s * sq;
  return Scalar(conj * den_, norm);
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

Scalar Scalar::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  Scalar r(1);
  for (int i = 0; i < e; ++i) r = r * (*this);
  return r;
}

bool Scalar::evenInKappa() const {
  if (usesSigma()) return false;
  for (auto& [m, c] : num_.t)
    if (m.exp(VarK) % 2) return false;
  for (auto& [m, c] : den_.t)
    if (m.exp(VarK) % 2) return false;
  return true;
}

Scalar Scalar::subst(int v, const Scalar& value) const {
  if (v == VarS) throw Error("cannot substitute sigma directly");
  if (!usesVar(v)) return *this;
  // write num = sum_i c_i(v-free) * v^i, likewise den, then evaluate
  auto evalPoly = [&](const Poly& p) {
    Scalar acc(0);
    for (auto& [m, c] : p.t) {
      int e = m.exp(v);
      Mono rest = m;
      rest.bits &= ~(uint64_t(0xffff) << (16 * (3 - v)));
      Poly restP;
      restP.t.push_back({rest, c});
      acc += Scalar(restP, Poly::constant(1)) * value.pow(e);
    }
    return acc;
  };
  return evalPoly(num_) / evalPoly(den_);
}

SpecValue Scalar::specialize(const Rat& k0, int sigmaBranch, bool kappaCritical) const {
  if (kappaCritical && k0 == 0) throw Error("critical level");
  auto evalAt = [&](const Poly& p, Rat* rat, Rat* irr) {
    *rat = 0;
    *irr = 0;
    for (auto& [m, c] : p.t) {
      if (m.exp(VarH) || m.exp(VarD))
        throw Error("specialize: free h or D variable in " + str());
      Rat v = c;
      for (int i = 0; i < m.exp(VarK); ++i) v *= k0;
      if (m.exp(VarS))
        *irr += v;
      else
        *rat += v;
    }
  };
  Rat dr, di;
  evalAt(den_, &dr, &di);
  if (dr == 0) throw Error("pole at specialization");
  Rat nr, ni;
  evalAt(num_, &nr, &ni);
  if (sigmaBranch < 0) ni = -ni;
  // try to resolve sqrt(k0) exactly when k0 is a square of a rational
  if (ni != 0 && k0 >= 0) {
    mpz_class ns = sqrt(k0.get_num()), ds = sqrt(k0.get_den());
    if (ns * ns == k0.get_num() && ds * ds == k0.get_den()) {
      Rat root(ns, ds);
      root.canonicalize();
      nr += ni * root;
      ni = 0;
    }
  }
  return SpecValue{nr / dr, ni / dr};
}

std::string Scalar::str() const {
  if (den_.isConstant() && den_.constantValue() == 1) return num_.str();
  std::string n = num_.str();
  if (num_.t.size() > 1) n = "(" + n + ")";
  std::string d = den_.str();
  if (den_.t.size() > 1) d = "(" + d + ")";
  return n + "/" + d;
}

// ---- parser ---------------------------------------------------------------

namespace {

struct Parser {
  const std::string& s;
  size_t i = 0;
  explicit Parser(const std::string& text) : s(text) {}

  void skip() {
    while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
  }
  bool eat(char c) {
    skip();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw Error("parse error in scalar '" + s + "': " + msg);
  }

  Scalar expr() {
    Scalar v = term();
    for (;;) {
      skip();
      if (eat('+'))
        v += term();
      else if (eat('-'))
        v -= term();
      else
        return v;
    }
  }
  Scalar term() {
    Scalar v = factor();
    for (;;) {
      skip();
      if (eat('*'))
        v *= factor();
      else if (eat('/'))
        v /= factor();
      else
        return v;
    }
  }
  Scalar factor() {
    skip();
    if (eat('-')) return -factor();
    if (eat('+')) return factor();
    Scalar base = atom();
    skip();
    if (eat('^')) {
      skip();
      bool neg = eat('-');
      size_t j = i;
      while (j < s.size() && std::isdigit((unsigned char)s[j])) ++j;
      if (j == i) fail("exponent expected");
      int e = std::stoi(s.substr(i, j - i));
      i = j;
      return base.pow(neg ? -e : e);
    }
    return base;
  }
  Scalar atom() {
    skip();
    if (eat('(')) {
      Scalar v = expr();
      if (!eat(')')) fail("missing )");
      return v;
    }
    if (i < s.size() && std::isdigit((unsigned char)s[i])) {
      size_t j = i;
      while (j < s.size() && std::isdigit((unsigned char)s[j])) ++j;
      mpz_class z(s.substr(i, j - i));
      i = j;
      return Scalar(Rat(z));
    }
    if (i < s.size() && std::isalpha((unsigned char)s[i])) {
      size_t j = i;
      while (j < s.size() && std::isalnum((unsigned char)s[j])) ++j;
      std::string name = s.substr(i, j - i);
      i = j;
      for (int v = 0; v < kNumVars; ++v)
        if (name == kVarNames[v]) return Scalar::var(v);
      if (name == "kappa") return Scalar::var(VarK);
      if (name == "sigma") return Scalar::var(VarS);
      if (name == "m") fail("free symbol m outside family rule");
      fail("unknown symbol " + name);
    }
    fail("unexpected character");
  }
};

}  // namespace

Scalar Scalar::parse(const std::string& text) {
  Parser p(text);
  Scalar v = p.expr();
  p.skip();
  if (p.i != text.size()) p.fail("trailing input");
  return v;
}

}  // namespace walg

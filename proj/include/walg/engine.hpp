#pragma once

#include <map>
#include <utility>

#include "walg/algebra.hpp"
#include "walg/state.hpp"

namespace walg {

// Lambda-bracket calculus over one algebra table.  States are immutable;
// the engine memoizes word-pair brackets and normally ordered products.
class Engine {
 public:
  explicit Engine(const AlgebraTable& t) : T_(t) {}
  const AlgebraTable& table() const { return T_; }

  VState gen(const std::string& name, int d = 0);
  VState genState(int g, int d = 0);
  VState canonicalize(const std::vector<Factor>& rightNested);

  // [a lambda b]
  LambdaPoly bracket(const VState& a, const VState& b);
  // a_(n) b for n >= -1; n = -1 is the normally ordered product
  VState nproduct(const VState& a, int n, const VState& b);
  VState normalOrder(const VState& a, const VState& b);
  VState derive(const VState& a, int times = 1);

  struct JacobiResult {
    bool ok = true;
    // residual coefficients of lambda^i mu^j
    std::map<std::pair<int, int>, VState> residual;
  };
  JacobiResult checkJacobi(const VState& a, const VState& b, const VState& c);

  // conformal-vector helpers
  // [L lambda x] with L = T_.conformal; checks x primary of weight w2/2
  bool isPrimary(const VState& x, int w2);
  // extract central charge from [L lambda L] (lambda^3 coefficient = c/12)
  Scalar centralChargeOf(const VState& L);

  size_t cacheSize() const { return lbCache_.size() + norCache_.size(); }

 private:
  const AlgebraTable& T_;
  std::map<std::pair<Word, Word>, LambdaPoly,
           bool (*)(const std::pair<Word, Word>&, const std::pair<Word, Word>&)>
      lbCache_{pairLess};
  std::map<std::pair<Word, Word>, VState,
           bool (*)(const std::pair<Word, Word>&, const std::pair<Word, Word>&)>
      norCache_{pairLess};
  int depth_ = 0;

  static bool pairLess(const std::pair<Word, Word>& a, const std::pair<Word, Word>& b) {
    WordLess wl;
    if (wl(a.first, b.first)) return true;
    if (wl(b.first, a.first)) return false;
    return wl(a.second, b.second);
  }

  struct DepthGuard;

  LambdaPoly bracketGG(int g1, int g2);
  LambdaPoly skewed(const LambdaPoly& p, bool bothOdd);
  LambdaPoly lbWords(const Word& a, const Word& b);
  LambdaPoly lbFactorWord(const Factor& f, const Word& b);
  LambdaPoly lbGenWord(int g, const Word& b);
  VState insertFactor(const Factor& f, const VState& x);
  VState insertFactorWord(const Factor& f, const Word& w);
  VState norWords(const Word& a, const Word& b);
  VState deriveWord(const Word& w);
};

}  // namespace walg

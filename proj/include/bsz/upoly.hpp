#ifndef BSZ_UPOLY_HPP
#define BSZ_UPOLY_HPP

#include <algorithm>
#include <cstddef>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bsz/rational.hpp"

namespace bsz {

// Dense univariate polynomial in the parameter s, coefficients low to high.
// The coefficient vector never has trailing zeros; the zero polynomial is
// the empty vector.
class UPoly {
public:
  UPoly() = default;
  explicit UPoly(std::vector<BigRat> coeffs) : c_(std::move(coeffs)) { trim(); }
  UPoly(std::initializer_list<BigRat> coeffs) : c_(coeffs) { trim(); }

  static UPoly constant(const BigRat& c) { return UPoly({c}); }

  static UPoly monomial(unsigned degree, const BigRat& c = 1) {
    std::vector<BigRat> v(degree + 1);
    v[degree] = c;
    return UPoly(std::move(v));
  }

  // s - root
  static UPoly linear(const BigRat& root) { return UPoly({-root, BigRat(1)}); }

  static UPoly from_roots(const std::vector<std::pair<BigRat, unsigned>>& roots) {
    UPoly r = constant(1);
    for (const auto& [root, mult] : roots)
      for (unsigned i = 0; i < mult; ++i) r *= linear(root);
    return r;
  }

  const std::vector<BigRat>& coeffs() const noexcept { return c_; }
  bool is_zero() const noexcept { return c_.empty(); }
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  const BigRat& leading() const { return c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }

  BigRat coeff(std::size_t i) const { return i < c_.size() ? c_[i] : BigRat(0); }

  BigRat eval(const BigRat& s) const {
    BigRat acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * s + *it;
    return acc;
  }

  UPoly monic() const {
    UPoly r = *this;
    if (r.is_zero()) return r;
    BigRat lc = r.leading();
    for (auto& x : r.c_) x /= lc;
    return r;
  }

  UPoly& operator+=(const UPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  UPoly& operator-=(const UPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }

  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigRat> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return UPoly(std::move(r));
  }
  UPoly& operator*=(const UPoly& o) { return *this = *this * o; }

  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<BigRat> c_;
};

// Quotient and remainder. Precondition: divisor nonzero.
inline std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw InvalidArgument("UPoly division by zero");
  std::vector<BigRat> rem = a.coeffs();
  int db = b.degree();
  if (a.degree() < db) return {UPoly(), a};
  std::vector<BigRat> q(a.degree() - db + 1);
  for (int k = a.degree() - db; k >= 0; --k) {
    BigRat t = rem[k + db] / b.leading();
    q[k] = t;
    for (int j = 0; j <= db; ++j) rem[k + j] -= t * b.coeffs()[j];
  }
  return {UPoly(std::move(q)), UPoly(std::move(rem))};
}

struct RootFactorization {
  // Distinct rational roots, ascending, with multiplicities.
  std::vector<std::pair<BigRat, unsigned>> roots;
  // Cofactor without rational roots; carries the leading coefficient.
  UPoly remainder;

  unsigned multiplicity(const BigRat& root) const {
    for (const auto& [r, m] : roots)
      if (r == root) return m;
    return 0;
  }
};

namespace detail {

// Positive divisors of |n| by trial division. A cofactor left above the trial
// bound is treated as prime; a missed candidate only ends up in the remainder.
inline std::vector<BigInt> divisors(const BigInt& n_in) {
  BigInt n = abs(n_in);
  std::vector<std::pair<BigInt, unsigned>> fac;
  for (BigInt p = 2; p * p <= n && p < 1000000; ++p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) fac.emplace_back(p, e);
  }
  if (n > 1) fac.emplace_back(n, 1);
  std::vector<BigInt> divs{BigInt(1)};
  for (const auto& [p, e] : fac) {
    std::size_t base = divs.size();
    BigInt pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

}  // namespace detail

// Extracts all rational roots with multiplicity (rational root theorem plus
// deflation). b == remainder * prod (s - root)^mult holds exactly.
inline RootFactorization rational_roots(const UPoly& b) {
  if (b.is_zero()) throw InvalidArgument("rational_roots: zero polynomial");
  RootFactorization out;
  UPoly work = b;

  unsigned zero_mult = 0;
  while (work.degree() > 0 && work.coeff(0) == 0) {
    work = divmod(work, UPoly::monomial(1)).first;
    ++zero_mult;
  }

  std::vector<std::pair<BigRat, unsigned>> found;
  if (zero_mult) found.emplace_back(BigRat(0), zero_mult);

  if (work.degree() > 0) {
    BigInt lcm_den = 1;
    for (const auto& c : work.coeffs()) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
    BigInt a0 = BigRat(work.coeff(0) * lcm_den).get_num();
    BigInt an = BigRat(work.leading() * lcm_den).get_num();

    std::set<BigRat> candidates;
    for (const auto& p : detail::divisors(a0))
      for (const auto& q : detail::divisors(an)) {
        BigRat c(p, q);
        c.canonicalize();
        candidates.insert(c);
        candidates.insert(-c);
      }

    for (const auto& cand : candidates) {
      if (work.degree() <= 0) break;
      unsigned mult = 0;
      while (work.degree() > 0 && work.eval(cand) == 0) {
        work = divmod(work, UPoly::linear(cand)).first;
        ++mult;
      }
      if (mult) found.emplace_back(cand, mult);
    }
  }

  std::sort(found.begin(), found.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  out.roots = std::move(found);
  out.remainder = std::move(work);
  return out;
}

inline std::string to_string(const UPoly& p, const std::string& var = "s") {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = p.degree(); k >= 0; --k) {
    const BigRat& c = p.coeffs()[k];
    if (c == 0) continue;
    BigRat mag = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0 || mag != 1) {
      os << to_string(mag);
      if (k > 0) os << '*';
    }
    if (k > 0) os << var;
    if (k > 1) os << '^' << k;
  }
  return os.str();
}

// Product form over the rational roots, e.g. "(s+1)^2*(s+1/2)".
inline std::string to_factored_string(const UPoly& p, const std::string& var = "s") {
  if (p.is_zero()) return "0";
  RootFactorization f = rational_roots(p);
  std::ostringstream os;
  bool any = false;
  UPoly rem = f.remainder;
  if (!(rem.degree() == 0 && rem.coeff(0) == 1)) {
    if (rem.degree() == 0) {
      os << to_string(rem.coeff(0));
    } else {
      os << '(' << to_string(rem, var) << ')';
    }
    any = true;
  }
  for (const auto& [r, m] : f.roots) {
    if (any) os << '*';
    if (r == 0) {
      os << var;
    } else {
      os << '(' << var << (r < 0 ? "+" : "-") << to_string(BigRat(abs(r))) << ')';
    }
    if (m > 1) os << '^' << m;
    any = true;
  }
  if (!any) return "1";
  return os.str();
}

}  // namespace bsz

#endif  // BSZ_UPOLY_HPP

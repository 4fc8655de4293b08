#ifndef BSZ_INVARIANTS_HPP
#define BSZ_INVARIANTS_HPP

#include <optional>
#include <string>

#include "bsz/upoly.hpp"

namespace bsz {

// A positive rational or +infinity.
struct ExtendedRat {
  std::optional<BigRat> value;  // nullopt means infinity

  static ExtendedRat infinity() { return {}; }
  bool is_infinite() const { return !value.has_value(); }
  friend bool operator==(const ExtendedRat& a, const ExtendedRat& b) { return a.value == b.value; }
};

inline std::string to_string(const ExtendedRat& v) { return v.is_infinite() ? "infinity" : to_string(*v.value); }

namespace detail {

inline RootFactorization complete_factorization(const UPoly& b, const char* what) {
  RootFactorization f = rational_roots(b);
  if (f.remainder.degree() > 0)
    throw IrrationalRootResidue(std::string(what) + ": factor " + to_string(f.remainder) + " has no rational roots");
  return f;
}

}  // namespace detail

// Negative of the largest root of the reduced polynomial; infinity when it is 1.
inline ExtendedRat minimal_exponent(const UPoly& b_reduced) {
  if (!b_reduced.is_monic()) throw InvalidArgument("minimal_exponent: polynomial must be monic");
  if (b_reduced.degree() == 0) return ExtendedRat::infinity();
  RootFactorization f = detail::complete_factorization(b_reduced, "minimal_exponent");
  return {-f.roots.back().first};
}

// Negative of the largest root of the Bernstein-Sato polynomial of an ideal.
inline BigRat lct_from_ideal_bs(const UPoly& b_a) {
  if (!b_a.is_monic() || b_a.degree() < 1) throw InvalidArgument("lct_from_ideal_bs: b must be monic and nonconstant");
  RootFactorization f = detail::complete_factorization(b_a, "lct_from_ideal_bs");
  return -f.roots.back().first;
}

// For a reduced complete intersection of pure codimension r (hypotheses are
// the caller's responsibility): rational singularities iff the minimal
// exponent of g equals r and -r is a simple root of the reduced b of g.
inline bool rational_sing_predicate(const UPoly& b_g_reduced, unsigned r) {
  if (r == 0) throw InvalidArgument("rational_sing_predicate: r must be positive");
  ExtendedRat alpha = minimal_exponent(b_g_reduced);
  if (alpha.is_infinite() || *alpha.value != BigRat(r)) return false;
  return rational_roots(b_g_reduced).multiplicity(BigRat(-static_cast<long>(r))) == 1;
}

}  // namespace bsz

#endif  // BSZ_INVARIANTS_HPP

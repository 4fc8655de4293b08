#ifndef BSZ_IGUSA_HPP
#define BSZ_IGUSA_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "bsz/mpoly.hpp"
#include "bsz/upoly.hpp"

namespace bsz {

inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 26;

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

struct PadicConfig {
  std::uint64_t p = 2;
  unsigned M = 3;  // highest order computed

  void validate() const {
    if (!is_prime(p)) throw InvalidArgument("p = " + std::to_string(p) + " is not prime");
  }
};

struct CountOptions {
  std::uint64_t budget = kDefaultBudget;  // max residue points per level
  unsigned threads = 1;
};

// mu[m] = Haar measure of { x in Z_p^n : ord(x) = m } for m = 0..M.
struct MeasureTable {
  PadicConfig cfg;
  std::size_t n_vars = 0;
  std::vector<BigRat> mu;
};

// Truncated power series in t = p^-s.
struct ZetaSeries {
  PadicConfig cfg;
  std::vector<BigRat> coeffs;
};

namespace detail {

inline BigRat pow_p(std::uint64_t p, unsigned e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, e);
  return BigRat(r);
}

// Subject polynomial reduced modulo q with exponents over the space variables.
struct ModPoly {
  std::vector<std::pair<std::uint64_t, std::vector<unsigned>>> terms;
};

inline ModPoly reduce_mod(const MPoly& f, std::uint64_t q) {
  const std::size_t nv = f.context()->num_vars();
  ModPoly out;
  BigInt qz(std::to_string(q));
  for (const auto& [e, c] : f.terms()) {
    BigInt r = c.get_num() % qz;
    if (r < 0) r += qz;
    std::uint64_t rv = std::stoull(r.get_str());
    if (rv == 0) continue;
    out.terms.emplace_back(rv, std::vector<unsigned>(e.begin(), e.begin() + nv));
  }
  return out;
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % q);
}

// Counts points of (Z/q)^n, q = p^e, by p-adic order of the subject (min over
// generators, capped at e). Digits of variable 0 are split into contiguous
// blocks, one per worker; block histograms are summed in block order.
inline std::vector<std::uint64_t> ord_histogram(const std::vector<MPoly>& subject, std::uint64_t p, unsigned e,
                                                unsigned threads) {
  std::uint64_t q = 1;
  for (unsigned i = 0; i < e; ++i) q *= p;
  const std::size_t n = subject.front().context()->num_vars();
  std::vector<ModPoly> polys;
  std::vector<unsigned> max_deg(n, 0);
  for (const auto& f : subject) {
    polys.push_back(reduce_mod(f, q));
    for (const auto& [c, ex] : polys.back().terms)
      for (std::size_t v = 0; v < n; ++v) max_deg[v] = std::max(max_deg[v], ex[v]);
  }

  auto ord_of = [&](std::uint64_t v) -> unsigned {
    if (v == 0) return e;
    unsigned k = 0;
    while (v % p == 0) {
      v /= p;
      ++k;
    }
    return k;
  };

  auto count_block = [&](std::uint64_t lo, std::uint64_t hi, std::vector<std::uint64_t>& hist) {
    hist.assign(e + 1, 0);
    if (n == 0) {
      unsigned best = e;
      for (const auto& pm : polys) {
        std::uint64_t acc = 0;
        for (const auto& [c, ex] : pm.terms) acc = (acc + c) % q;
        best = std::min(best, ord_of(acc));
      }
      if (lo == 0 && hi > 0) ++hist[best];
      return;
    }
    std::vector<std::uint64_t> digit(n, 0);
    digit[0] = lo;
    std::vector<std::vector<std::uint64_t>> pw(n);
    auto refresh = [&](std::size_t v) {
      pw[v].assign(max_deg[v] + 1, 1 % q);
      for (unsigned k = 1; k <= max_deg[v]; ++k) pw[v][k] = mulmod(pw[v][k - 1], digit[v] % q, q);
    };
    for (std::size_t v = 0; v < n; ++v) refresh(v);
    if (lo >= hi) return;
    while (true) {
      unsigned best = e;
      for (const auto& pm : polys) {
        std::uint64_t acc = 0;
        for (const auto& [c, ex] : pm.terms) {
          std::uint64_t t = c;
          for (std::size_t v = 0; v < n; ++v)
            if (ex[v]) t = mulmod(t, pw[v][ex[v]], q);
          acc += t;
          if (acc >= q) acc -= q;
        }
        best = std::min(best, ord_of(acc));
        if (best == 0) break;
      }
      ++hist[best];
      // odometer: last variable fastest, variable 0 bounded by [lo, hi)
      std::size_t v = n;
      while (v-- > 0) {
        ++digit[v];
        std::uint64_t limit = v == 0 ? hi : q;
        if (digit[v] < limit) {
          refresh(v);
          break;
        }
        if (v == 0) return;
        digit[v] = 0;
        refresh(v);
      }
    }
  };

  std::uint64_t span = n == 0 ? 1 : q;
  unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::min<std::uint64_t>(span, 1024))));
  std::vector<std::vector<std::uint64_t>> partial(workers);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> ranges;
  for (unsigned w = 0; w < workers; ++w) ranges.emplace_back(span * w / workers, span * (w + 1) / workers);
  if (workers == 1) {
    count_block(ranges[0].first, ranges[0].second, partial[0]);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] { count_block(ranges[w].first, ranges[w].second, partial[w]); });
    for (auto& t : pool) t.join();
  }
  std::vector<std::uint64_t> hist(e + 1, 0);
  for (const auto& h : partial)
    for (unsigned k = 0; k <= e; ++k) hist[k] += h[k];
  return hist;
}

inline void check_subject(const std::vector<MPoly>& subject) {
  if (subject.empty()) throw InvalidArgument("empty subject");
  for (const auto& f : subject) {
    require_same_context(subject.front().context(), f.context(), "measure subject");
    if (f.is_zero()) throw InvalidArgument("subject polynomials must be nonzero");
    if (!f.has_integer_coefficients()) throw InvalidArgument("subject must have integer coefficients");
    if (!f.only_uses(0, f.context()->num_vars())) throw InvalidArgument("subject must not involve parameters");
  }
}

inline void check_budget(std::uint64_t p, unsigned e, std::size_t n, std::uint64_t budget) {
  BigInt points;
  mpz_ui_pow_ui(points.get_mpz_t(), p, static_cast<unsigned long>(e) * n);
  if (points > BigInt(std::to_string(budget)))
    throw BudgetExceeded("counting needs " + points.get_str() + " points (p^" + std::to_string(e * n) +
                         "), budget is " + std::to_string(budget));
}

}  // namespace detail

// mu_m from counting residues modulo p^level (level >= m + 1). By the cylinder
// property the answer does not depend on the level.
inline BigRat measure_at_level(const std::vector<MPoly>& subject, std::uint64_t p, unsigned m, unsigned level,
                               const CountOptions& opts = {}) {
  detail::check_subject(subject);
  if (level < m + 1) throw InvalidArgument("level must exceed the order");
  const std::size_t n = subject.front().context()->num_vars();
  detail::check_budget(p, level, n, opts.budget);
  auto hist = detail::ord_histogram(subject, p, level, opts.threads);
  return BigRat(BigInt(std::to_string(hist[m]))) / detail::pow_p(p, level * static_cast<unsigned>(n));
}

// Exact measure profile of a tuple (ord = min over generators) or of a single
// polynomial; mu_m is counted modulo p^(m+1).
inline MeasureTable measure_profile(const std::vector<MPoly>& subject, const PadicConfig& cfg,
                                    const CountOptions& opts = {}) {
  cfg.validate();
  detail::check_subject(subject);
  const std::size_t n = subject.front().context()->num_vars();
  detail::check_budget(cfg.p, cfg.M + 1, n, opts.budget);
  MeasureTable t;
  t.cfg = cfg;
  t.n_vars = n;
  for (unsigned m = 0; m <= cfg.M; ++m) {
    auto hist = detail::ord_histogram(subject, cfg.p, m + 1, opts.threads);
    t.mu.push_back(BigRat(BigInt(std::to_string(hist[m]))) / detail::pow_p(cfg.p, (m + 1) * static_cast<unsigned>(n)));
  }
  return t;
}

inline MeasureTable measure_profile(const MPoly& f, const PadicConfig& cfg, const CountOptions& opts = {}) {
  return measure_profile(std::vector<MPoly>{f}, cfg, opts);
}

inline ZetaSeries zeta_series(const MeasureTable& table) { return {table.cfg, table.mu}; }

// Measure of { v in Z_p^r : ord(u'.v) = m - d } for a base point whose ideal
// order is d: (p - 1) / p^(m - d + 1).
inline BigRat fiber_measure(unsigned d, unsigned m, std::uint64_t p) {
  if (d > m) throw InvalidArgument("fiber_measure: d must not exceed m");
  return BigRat(BigInt(std::to_string(p - 1))) / detail::pow_p(p, m - d + 1);
}

// Predicted profile of g = sum f_i y_i from the ideal profile:
//   mu_g(m) = sum_{d<=m} mu_a(d) (p-1)/p^(m-d+1).
inline MeasureTable convolve_prediction(const MeasureTable& table_a, std::size_t r, const PadicConfig& cfg) {
  if (table_a.mu.size() < static_cast<std::size_t>(cfg.M) + 1)
    throw InvalidArgument("convolve_prediction: ideal table is truncated below M");
  if (table_a.cfg.p != cfg.p) throw InvalidArgument("convolve_prediction: prime mismatch");
  MeasureTable g;
  g.cfg = cfg;
  g.n_vars = table_a.n_vars + r;
  for (unsigned m = 0; m <= cfg.M; ++m) {
    BigRat acc(0);
    for (unsigned d = 0; d <= m; ++d) acc += table_a.mu[d] * fiber_measure(d, m, cfg.p);
    g.mu.push_back(acc);
  }
  return g;
}

// Truncated product of two series.
inline std::vector<BigRat> series_mul(const std::vector<BigRat>& a, const std::vector<BigRat>& b, std::size_t len) {
  std::vector<BigRat> r(len, BigRat(0));
  for (std::size_t i = 0; i < std::min(a.size(), len); ++i)
    for (std::size_t j = 0; j < b.size() && i + j < len; ++j) r[i + j] += a[i] * b[j];
  return r;
}

// Z_a * (1 - p^-1) / (1 - t/p), expanded to the same truncation.
inline ZetaSeries apply_rational_factor(const ZetaSeries& z_a) {
  const std::size_t len = z_a.coeffs.size();
  const BigRat p(BigInt(std::to_string(z_a.cfg.p)));
  std::vector<BigRat> factor;
  BigRat c = 1 - 1 / p;
  for (std::size_t k = 0; k < len; ++k) {
    factor.push_back(c);
    c /= p;
  }
  return {z_a.cfg, series_mul(z_a.coeffs, factor, len)};
}

struct Theorem14Report {
  PadicConfig cfg;
  std::vector<BigRat> mu_a;
  std::vector<BigRat> mu_g_direct;
  std::vector<BigRat> mu_g_convolved;
  std::vector<BigRat> mu_g_factored;
  bool agree = false;
};

// Direct count of g, the fiber convolution and the rational factor, compared
// coefficientwise. `g` must be sum f_i y_i for the generators `F`.
inline Theorem14Report theorem14_check(const std::vector<MPoly>& F, const MPoly& g, const PadicConfig& cfg,
                                       const CountOptions& opts = {}) {
  cfg.validate();
  detail::check_budget(cfg.p, cfg.M + 1, g.context()->num_vars(), opts.budget);
  MeasureTable a = measure_profile(F, cfg, opts);
  MeasureTable direct = measure_profile(g, cfg, opts);
  MeasureTable conv = convolve_prediction(a, F.size(), cfg);
  ZetaSeries fact = apply_rational_factor(zeta_series(a));
  Theorem14Report rep;
  rep.cfg = cfg;
  rep.mu_a = a.mu;
  rep.mu_g_direct = direct.mu;
  rep.mu_g_convolved = conv.mu;
  rep.mu_g_factored = fact.coeffs;
  rep.agree = direct.mu == conv.mu && conv.mu == fact.coeffs;
  return rep;
}

// Candidate denominator factor 1 - t^N / p^v.
struct PoleFactor {
  unsigned N = 1;
  unsigned v = 0;
  friend bool operator==(const PoleFactor&, const PoleFactor&) = default;
};

struct RationalFit {
  PadicConfig cfg;
  std::vector<PoleFactor> factors;
  UPoly numerator;       // in t
  bool residual = true;  // set when the product did not truncate to a polynomial
  unsigned guard = 1;    // top coefficients required to vanish
};

inline UPoly factor_poly(const PoleFactor& f, std::uint64_t p) {
  std::vector<BigRat> c(f.N + 1, BigRat(0));
  c[0] = 1;
  c[f.N] = -1 / detail::pow_p(p, f.v);
  return UPoly(std::move(c));
}

inline unsigned default_guard(unsigned M) { return std::max(1u, (M + 1) / 2); }

// Multiplies the truncated series by prod (1 - t^N_j / p^v_j). If every
// coefficient above M - guard vanishes the low part is the numerator and the
// residual flag is cleared. At finite truncation this is a heuristic.
inline RationalFit fit_rational(const ZetaSeries& z, const std::vector<PoleFactor>& factors,
                                std::optional<unsigned> guard = std::nullopt) {
  if (factors.empty()) throw InvalidArgument("fit_rational: at least one candidate factor is required");
  for (const auto& f : factors)
    if (f.N == 0) throw InvalidArgument("fit_rational: factor exponent N must be positive");
  const std::size_t len = z.coeffs.size();
  const unsigned M = len == 0 ? 0 : static_cast<unsigned>(len - 1);
  RationalFit fit;
  fit.cfg = z.cfg;
  fit.factors = factors;
  fit.guard = guard.value_or(default_guard(M));
  std::vector<BigRat> prod = z.coeffs;
  for (const auto& f : factors) prod = series_mul(prod, factor_poly(f, z.cfg.p).coeffs(), len);
  if (fit.guard > M) {
    fit.residual = true;
    fit.numerator = UPoly(prod);
    return fit;
  }
  bool clean = true;
  for (std::size_t k = M - fit.guard + 1; k < len; ++k)
    if (prod[k] != 0) clean = false;
  fit.residual = !clean;
  prod.resize(clean ? M - fit.guard + 1 : len);
  fit.numerator = UPoly(std::move(prod));
  return fit;
}

// Series of numerator / prod factors through order M.
inline ZetaSeries expand(const RationalFit& fit, unsigned M) {
  const std::size_t len = M + 1;
  std::vector<BigRat> s = fit.numerator.coeffs();
  s.resize(len, BigRat(0));
  for (const auto& f : fit.factors) {
    // divide by 1 - c t^N: s_k += c s_{k-N}
    BigRat c = 1 / detail::pow_p(fit.cfg.p, f.v);
    for (std::size_t k = f.N; k < len; ++k) s[k] += c * s[k - f.N];
  }
  return {fit.cfg, s};
}

// Real part -v/N of the poles contributed by a factor.
inline BigRat pole_real_part(const PoleFactor& f) {
  BigRat r(-static_cast<long>(f.v), f.N);
  r.canonicalize();
  return r;
}

// Order of the pole at each real point s = lambda, i.e. at t = p^(-lambda).
// Every factor with ratio v/N = v'/N' (lowest terms) vanishes simply at that
// point, and t^N' - p^v' is irreducible over Q, so the numerator's
// multiplicity there is its multiplicity of divisibility by that polynomial.
inline std::map<BigRat, unsigned> pole_orders(const RationalFit& fit) {
  if (fit.residual) throw InvalidArgument("pole_orders: fit has a residual");
  std::map<BigRat, std::pair<unsigned, PoleFactor>> groups;
  for (const auto& f : fit.factors) {
    unsigned g = std::gcd(f.N, f.v);
    PoleFactor red{f.N / g, f.v / g};
    auto& slot = groups[pole_real_part(f)];
    slot.first += 1;
    slot.second = red;
  }
  std::map<BigRat, unsigned> out;
  for (const auto& [lambda, entry] : groups) {
    const auto& [count, red] = entry;
    UPoly irreducible = factor_poly(red, fit.cfg.p);
    unsigned mult = 0;
    UPoly num = fit.numerator;
    while (!num.is_zero() && mult < count) {
      auto [q, r] = divmod(num, irreducible);
      if (!r.is_zero()) break;
      num = q;
      ++mult;
    }
    if (count > mult) out[lambda] = count - mult;
  }
  return out;
}

struct PoleLine {
  BigRat lambda;
  unsigned order_a = 0;
  unsigned order_g = 0;
  std::string rule;  // "equal", "increment" or "descriptive"
  bool rule_ok = true;
  unsigned root_multiplicity = 0;  // multiplicity of lambda as a root of b_a
  std::optional<bool> dominated;   // root multiplicity >= order_a, when order_a > 0
};

struct PoleRootReport {
  std::vector<PoleLine> lines;
  bool relations_ok = true;
  bool monodromy_ok = true;
};

// Compares pole orders of Z(a) and Z(g): equal away from -1, and one higher
// for g at -1 when Z(a) already has a pole there. Each pole of Z(a) is also
// checked against the roots of b_a.
inline PoleRootReport pole_root_report(const RationalFit& fit_a, const RationalFit& fit_g, const UPoly& b_a,
                                       std::uint64_t p) {
  if (fit_a.residual || fit_g.residual) throw InvalidArgument("pole_root_report: residual-flagged fit");
  if (!is_prime(p)) throw InvalidArgument("p = " + std::to_string(p) + " is not prime");
  if (fit_a.cfg.p != p || fit_g.cfg.p != p) throw InvalidArgument("pole_root_report: prime mismatch");
  auto pa = pole_orders(fit_a);
  auto pg = pole_orders(fit_g);
  RootFactorization roots = rational_roots(b_a);

  std::map<BigRat, PoleLine> merged;
  for (const auto& [l, o] : pa) merged[l].order_a = o;
  for (const auto& [l, o] : pg) merged[l].order_g = o;

  PoleRootReport rep;
  const BigRat minus_one(-1);
  for (auto& [l, line] : merged) {
    line.lambda = l;
    if (l != minus_one) {
      line.rule = "equal";
      line.rule_ok = line.order_a == line.order_g;
    } else if (line.order_a >= 1) {
      line.rule = "increment";
      line.rule_ok = line.order_g == line.order_a + 1;
    } else {
      line.rule = "descriptive";
      line.rule_ok = true;
    }
    line.root_multiplicity = roots.multiplicity(l);
    if (line.order_a > 0) line.dominated = line.root_multiplicity >= line.order_a;
    rep.relations_ok = rep.relations_ok && line.rule_ok;
    if (line.dominated) rep.monodromy_ok = rep.monodromy_ok && *line.dominated;
    rep.lines.push_back(line);
  }
  return rep;
}

}  // namespace bsz

#endif  // BSZ_IGUSA_HPP

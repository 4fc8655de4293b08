// bsz: command-line front end.
//
//   bsz bs principal --input f.json        bsz zeta profile --input f.json --prime 2 --trunc 3
//   bsz bs ideal --ideal F.json            bsz zeta check14 --ideal F.json
//   bsz verify --cert c.json --input f.json
//   bsz transport --cert g_cert.json --ideal F.json
//   bsz lct --ideal F.json                 bsz zeta fit --input f.json --factor 1:1
//   bsz ratsing --ideal F.json             bsz report poles --ideal F.json --factor-a 1:2 --factor-g 1:2 --factor-g 1:1
//
// Exit codes: 0 ok, 1 verification failure or disagreement, 2 usage or
// resource error, 3 no certificate within the search bounds.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bsz/bsz.hpp"
#include "bsz/json_io.hpp"

namespace {

using bsz::Json;

enum Opt : unsigned {
  kInput = 1,
  kIdeal = 2,
  kCert = 4,
  kBounds = 8,
  kPadic = 16,
  kFactor = 32,
  kFactorAG = 64,
};

struct RunConfig {
  std::string command;
  unsigned opts = 0;
  std::string input, ideal, cert;
  unsigned order = 2, xdeg = 1, sdeg = 1, bdeg = 4;
  std::optional<unsigned> shift_bound;
  std::uint64_t prime = 2;
  unsigned trunc = 3;
  std::uint64_t budget = bsz::kDefaultBudget;
  unsigned threads = 1;
  std::string format = "json";
  std::vector<std::string> factor, factor_a, factor_g;
  std::optional<unsigned> guard;

  bsz::SearchBounds bounds() const {
    bsz::SearchBounds b;
    b.op_order = order;
    b.x_degree = xdeg;
    b.s_degree = sdeg;
    b.shift_bound = shift_bound;
    b.b_degree = bdeg;
    return b;
  }
  bsz::PadicConfig padic() const { return {prime, trunc}; }
  bsz::CountOptions counting() const { return {budget, threads}; }
};

// Threads are left out on purpose: output must not depend on them.
Json config_json(const RunConfig& c) {
  Json j;
  j["command"] = c.command;
  if (!c.input.empty()) j["input"] = c.input;
  if (!c.ideal.empty()) j["ideal"] = c.ideal;
  if (!c.cert.empty()) j["cert"] = c.cert;
  if (c.opts & kBounds) {
    bsz::SearchBounds b = c.bounds();
    j["bounds"] = Json{{"order", b.op_order},
                       {"xdeg", b.x_degree},
                       {"sdeg", b.s_degree},
                       {"shift_bound", b.effective_shift_bound()},
                       {"bdeg", b.b_degree}};
  }
  if (c.opts & kPadic) {
    j["prime"] = c.prime;
    j["trunc"] = c.trunc;
    j["budget"] = c.budget;
  }
  if (c.opts & kFactor) {
    j["factor"] = c.factor;
    if (c.guard) j["guard"] = *c.guard;
  }
  if (c.opts & kFactorAG) {
    j["factor_a"] = c.factor_a;
    j["factor_g"] = c.factor_g;
    if (c.guard) j["guard"] = *c.guard;
  }
  j["format"] = c.format;
  return j;
}

// Controlled non-zero exit carrying a partial report.
struct Failure {
  int code;
  std::string kind;
  std::string message;
  Json report = Json::object();
};

struct Outcome {
  Json report = Json::object();
  std::vector<std::string> text;
};

Json read_json(const std::string& path, const char* flag) {
  if (path.empty()) throw Failure{2, "usage", std::string("missing required option ") + flag};
  std::ifstream in(path);
  if (!in) throw Failure{2, "io_error", "cannot open '" + path + "'"};
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw bsz::ParseError(path + ": " + e.what());
  }
}

bsz::MPoly read_poly(const RunConfig& c) { return bsz::mpoly_from_json(read_json(c.input, "--input")); }
bsz::GenTuple read_ideal(const RunConfig& c) { return bsz::ideal_from_json(read_json(c.ideal, "--ideal")); }
bsz::CertDocument read_cert(const RunConfig& c) { return bsz::cert_from_json(read_json(c.cert, "--cert")); }

// Subject of a count: --input or --ideal, exactly one.
std::vector<bsz::MPoly> read_subject(const RunConfig& c) {
  if (c.input.empty() == c.ideal.empty()) throw Failure{2, "usage", "give exactly one of --input and --ideal"};
  if (!c.input.empty()) return {read_poly(c)};
  return read_ideal(c).generators();
}

std::vector<bsz::PoleFactor> parse_factors(const std::vector<std::string>& specs, const char* flag) {
  std::vector<bsz::PoleFactor> out;
  for (const auto& s : specs) {
    auto colon = s.find(':');
    bool ok = colon != std::string::npos && colon > 0 && colon + 1 < s.size() &&
              s.find_first_not_of("0123456789:") == std::string::npos && s.find(':', colon + 1) == std::string::npos;
    if (!ok) throw Failure{2, "usage", std::string(flag) + " expects N:v with nonnegative integers, got '" + s + "'"};
    out.push_back({static_cast<unsigned>(std::stoul(s.substr(0, colon))),
                   static_cast<unsigned>(std::stoul(s.substr(colon + 1)))});
  }
  if (out.empty()) throw Failure{2, "usage", std::string("at least one ") + flag + " is required"};
  return out;
}

Json factors_json(const std::vector<bsz::PoleFactor>& fs) {
  Json a = Json::array();
  for (const auto& f : fs) a.push_back(Json::array({f.N, f.v}));
  return a;
}

std::string join(const std::vector<bsz::BigRat>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + bsz::to_string(v[i]);
  return s;
}

std::string join_degrees(const std::vector<unsigned>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s.empty() ? "none" : s;
}

std::string op_text(const bsz::WeylOp& op) { return bsz::to_string(op); }

template <class Cert>
void require_found(const bsz::BSResult<Cert>& res, const std::string& what) {
  if (res.found()) return;
  Failure f{3, "not_found_within_bounds",
            "no " + what + " certificate within the search bounds; this says nothing about existence"};
  f.report["status"] = "not_found_within_bounds";
  f.report["infeasible_degrees"] = res.infeasible_degrees;
  throw f;
}

// --- commands --------------------------------------------------------------

Outcome cmd_bs_principal(const RunConfig& c) {
  bsz::MPoly f = read_poly(c);
  auto res = bsz::solve_principal(f, c.bounds());
  require_found(res, "principal");
  const auto& cert = *res.cert;
  Outcome o;
  o.report["status"] = "found";
  o.report["b"] = bsz::to_json(cert.b);
  o.report["b_factored"] = bsz::to_factored_string(cert.b);
  o.report["infeasible_degrees"] = res.infeasible_degrees;
  o.report["certificate"] = bsz::cert_to_json(cert);
  o.text = {"f = " + bsz::to_string(f), "b(s) = " + bsz::to_factored_string(cert.b),
            "P = " + op_text(cert.op), "infeasible degrees: " + join_degrees(res.infeasible_degrees)};
  return o;
}

Outcome cmd_bs_ideal(const RunConfig& c) {
  bsz::GenTuple F = read_ideal(c);
  auto res = bsz::solve_ideal(F, c.bounds());
  require_found(res, "ideal");
  const auto& cert = *res.cert;
  bsz::ContextPtr ctx = bsz::twisted(F).context();
  Outcome o;
  o.report["status"] = "found";
  o.report["b"] = bsz::to_json(cert.b);
  o.report["b_factored"] = bsz::to_factored_string(cert.b);
  o.report["infeasible_degrees"] = res.infeasible_degrees;
  o.report["certificate"] = bsz::cert_to_json(cert, ctx);
  o.text = {"b_a(s) = " + bsz::to_factored_string(cert.b)};
  for (std::size_t k = 0; k < cert.shifts.size(); ++k) {
    std::string u;
    for (int v : cert.shifts[k]) u += (u.empty() ? "" : ",") + std::to_string(v);
    o.text.push_back("Q(" + u + ") = " + op_text(cert.ops[k]));
  }
  o.text.push_back("infeasible degrees: " + join_degrees(res.infeasible_degrees));
  return o;
}

Outcome cmd_verify(const RunConfig& c) {
  bsz::CertDocument doc = read_cert(c);
  bsz::VerifyResult v;
  if (doc.kind == "principal") {
    if (c.input.empty()) throw Failure{2, "usage", "a principal certificate is verified against --input"};
    v = bsz::verify_principal(*doc.principal, read_poly(c));
  } else {
    if (c.ideal.empty()) throw Failure{2, "usage", "an ideal certificate is verified against --ideal"};
    v = bsz::verify_ideal(*doc.ideal, read_ideal(c));
  }
  if (!v) {
    Failure f{1, "verification_failed", v.first_failure};
    f.report["kind"] = doc.kind;
    f.report["valid"] = false;
    f.report["first_failure"] = v.first_failure;
    throw f;
  }
  Outcome o;
  o.report["kind"] = doc.kind;
  o.report["valid"] = true;
  o.text = {doc.kind + " certificate: valid"};
  return o;
}

Outcome cmd_transport(const RunConfig& c) {
  bsz::CertDocument doc = read_cert(c);
  if (!doc.principal) throw Failure{2, "usage", "transport needs a principal certificate for g"};
  bsz::GenTuple F = read_ideal(c);
  // The certificate lists all variables flat; the trailing r become y.
  const bsz::ContextPtr& flat = doc.ctx;
  std::vector<std::string> vars = flat->space_vars();
  std::vector<std::string> xs = F.context()->space_vars();
  if (vars.size() != xs.size() + F.size() || !std::equal(xs.begin(), xs.end(), vars.begin()))
    throw bsz::ContextMismatch("certificate variables must be the generators' variables followed by one per generator");
  bsz::ContextPtr split = bsz::VarContext::make(xs, std::vector<std::string>(vars.begin() + xs.size(), vars.end()),
                                                flat->params());
  bsz::PrincipalCert cert{doc.principal->b, bsz::to_context(doc.principal->op, split)};
  bsz::IdealCert out;
  try {
    out = bsz::transport_certificate(cert, F);
  } catch (const bsz::TransportError& e) {
    throw Failure{1, e.kind(), e.what()};
  }
  Outcome o;
  o.report["b"] = bsz::to_json(out.b);
  o.report["b_factored"] = bsz::to_factored_string(out.b);
  o.report["certificate"] = bsz::cert_to_json(out, bsz::twisted(F).context());
  o.text = {"b_a(s) = " + bsz::to_factored_string(out.b)};
  for (std::size_t k = 0; k < out.shifts.size(); ++k) {
    std::string u;
    for (int v : out.shifts[k]) u += (u.empty() ? "" : ",") + std::to_string(v);
    o.text.push_back("Q(" + u + ") = " + op_text(out.ops[k]));
  }
  return o;
}

Outcome cmd_lct(const RunConfig& c) {
  if (c.input.empty() == c.ideal.empty()) throw Failure{2, "usage", "give exactly one of --input and --ideal"};
  Outcome o;
  if (!c.input.empty()) {
    bsz::MPoly f = read_poly(c);
    auto res = bsz::solve_principal(f, c.bounds());
    require_found(res, "principal");
    bsz::UPoly b = res.cert->b;
    bsz::BigRat lct = bsz::lct_from_ideal_bs(b);
    bsz::ExtendedRat alpha = bsz::minimal_exponent(bsz::reduce_bs(b));
    o.report["b"] = bsz::to_json(b);
    o.report["b_factored"] = bsz::to_factored_string(b);
    o.report["lct"] = bsz::to_string(lct);
    o.report["minimal_exponent"] = bsz::to_string(alpha);
    o.text = {"b(s) = " + bsz::to_factored_string(b), "lct = " + bsz::to_string(lct),
              "minimal exponent = " + bsz::to_string(alpha)};
    return o;
  }
  bsz::GenTuple F = read_ideal(c);
  bsz::UPoly b;
  if (!c.cert.empty()) {
    bsz::CertDocument doc = read_cert(c);
    if (!doc.ideal) throw Failure{2, "usage", "lct --cert needs an ideal certificate"};
    if (bsz::VerifyResult v = bsz::verify_ideal(*doc.ideal, F); !v)
      throw Failure{1, "verification_failed", v.first_failure};
    b = doc.ideal->b;
  } else {
    auto res = bsz::solve_ideal(F, c.bounds());
    require_found(res, "ideal");
    b = res.cert->b;
  }
  bsz::BigRat lct = bsz::lct_from_ideal_bs(b);
  o.report["b_a"] = bsz::to_json(b);
  o.report["b_a_factored"] = bsz::to_factored_string(b);
  o.report["lct"] = bsz::to_string(lct);
  o.text = {"b_a(s) = " + bsz::to_factored_string(b), "lct = " + bsz::to_string(lct)};
  return o;
}

Outcome cmd_ratsing(const RunConfig& c) {
  bsz::GenTuple F = read_ideal(c);
  bsz::MPoly g = bsz::build_g(F);
  auto res = bsz::solve_principal(g, c.bounds());
  require_found(res, "principal");
  bsz::UPoly b = res.cert->b;
  bsz::UPoly reduced = bsz::reduce_bs(b);
  unsigned r = static_cast<unsigned>(F.size());
  bsz::ExtendedRat alpha = bsz::minimal_exponent(reduced);
  bool rational = bsz::rational_sing_predicate(reduced, r);
  Outcome o;
  o.report["g"] = bsz::to_string(g);
  o.report["b_g"] = bsz::to_json(b);
  o.report["b_g_reduced"] = bsz::to_json(reduced);
  o.report["b_g_reduced_factored"] = bsz::to_factored_string(reduced);
  o.report["minimal_exponent"] = bsz::to_string(alpha);
  o.report["r"] = r;
  o.report["rational_singularities"] = rational;
  o.report["note"] = "assumes the ideal defines a reduced complete intersection of pure codimension r";
  o.text = {"g = " + bsz::to_string(g), "reduced b_g(s) = " + bsz::to_factored_string(reduced),
            "minimal exponent = " + bsz::to_string(alpha), "r = " + std::to_string(r),
            std::string("rational singularities: ") + (rational ? "yes" : "no")};
  return o;
}

Outcome cmd_zeta_profile(const RunConfig& c) {
  std::vector<bsz::MPoly> subject = read_subject(c);
  bsz::MeasureTable t = bsz::measure_profile(subject, c.padic(), c.counting());
  bsz::BigRat mass(0);
  for (const auto& m : t.mu) mass += m;
  Outcome o;
  o.report["p"] = t.cfg.p;
  o.report["M"] = t.cfg.M;
  o.report["n_vars"] = t.n_vars;
  o.report["mu"] = bsz::rationals_to_json(t.mu);
  o.report["mass"] = bsz::to_string(mass);
  o.text = {"p = " + std::to_string(t.cfg.p) + ", M = " + std::to_string(t.cfg.M),
            "mu = [" + join(t.mu) + "]", "mass = " + bsz::to_string(mass)};
  return o;
}

Outcome cmd_zeta_check14(const RunConfig& c) {
  bsz::GenTuple F = read_ideal(c);
  bsz::MPoly g = bsz::build_g(F);
  bsz::Theorem14Report rep = bsz::theorem14_check(F.generators(), g, c.padic(), c.counting());
  Json report = bsz::to_json(rep);
  std::vector<std::string> text = {"mu_a           = [" + join(rep.mu_a) + "]",
                                   "mu_g direct    = [" + join(rep.mu_g_direct) + "]",
                                   "mu_g convolved = [" + join(rep.mu_g_convolved) + "]",
                                   "mu_g factored  = [" + join(rep.mu_g_factored) + "]",
                                   std::string("agree: ") + (rep.agree ? "yes" : "no")};
  if (!rep.agree) throw Failure{1, "disagreement", "the three g-profiles differ", report};
  return {report, text};
}

Json poles_json(const std::map<bsz::BigRat, unsigned>& poles) {
  Json a = Json::array();
  for (const auto& [l, o] : poles) a.push_back(Json{{"real_part", bsz::to_string(l)}, {"order", o}});
  return a;
}

Json fit_json(const bsz::RationalFit& fit) {
  Json j;
  j["factors"] = factors_json(fit.factors);
  j["guard"] = fit.guard;
  j["residual"] = fit.residual;
  j["numerator"] = bsz::to_json(fit.numerator);
  if (!fit.residual) j["poles"] = poles_json(bsz::pole_orders(fit));
  return j;
}

Outcome cmd_zeta_fit(const RunConfig& c) {
  std::vector<bsz::PoleFactor> factors = parse_factors(c.factor, "--factor");
  std::vector<bsz::MPoly> subject = read_subject(c);
  bsz::ZetaSeries z = bsz::zeta_series(bsz::measure_profile(subject, c.padic(), c.counting()));
  bsz::RationalFit fit = bsz::fit_rational(z, factors, c.guard);
  Json report;
  report["p"] = z.cfg.p;
  report["M"] = z.cfg.M;
  report["series"] = bsz::rationals_to_json(z.coeffs);
  report.update(fit_json(fit));
  report["heuristic"] = "fit from a truncated series; poles are those of the fitted form";
  std::vector<std::string> text = {"series = [" + join(z.coeffs) + "]",
                                   "numerator = " + bsz::to_string(fit.numerator, "t"),
                                   std::string("residual: ") + (fit.residual ? "yes" : "no")};
  if (fit.residual) throw Failure{1, "residual", "series times the candidate factors is not a polynomial", report};
  for (const auto& [l, o] : bsz::pole_orders(fit))
    text.push_back("pole at Re(s) = " + bsz::to_string(l) + ", order " + std::to_string(o));
  return {report, text};
}

Outcome cmd_report_poles(const RunConfig& c) {
  std::vector<bsz::PoleFactor> fa = parse_factors(c.factor_a, "--factor-a");
  std::vector<bsz::PoleFactor> fg = parse_factors(c.factor_g, "--factor-g");
  bsz::GenTuple F = read_ideal(c);
  bsz::MPoly g = bsz::build_g(F);
  bsz::ZetaSeries za = bsz::zeta_series(bsz::measure_profile(F.generators(), c.padic(), c.counting()));
  bsz::ZetaSeries zg = bsz::zeta_series(bsz::measure_profile(g, c.padic(), c.counting()));
  bsz::RationalFit fit_a = bsz::fit_rational(za, fa, c.guard);
  bsz::RationalFit fit_g = bsz::fit_rational(zg, fg, c.guard);
  Json report;
  report["p"] = c.prime;
  report["M"] = c.trunc;
  report["fit_a"] = fit_json(fit_a);
  report["fit_g"] = fit_json(fit_g);
  if (fit_a.residual || fit_g.residual)
    throw Failure{1, "residual", "a candidate denominator does not fit its series", report};
  auto res = bsz::solve_ideal(F, c.bounds());
  require_found(res, "ideal");
  const bsz::UPoly& b_a = res.cert->b;
  bsz::PoleRootReport rep = bsz::pole_root_report(fit_a, fit_g, b_a, c.prime);
  report["b_a"] = bsz::to_json(b_a);
  report["b_a_factored"] = bsz::to_factored_string(b_a);
  Json lines = Json::array();
  std::vector<std::string> text = {"b_a(s) = " + bsz::to_factored_string(b_a)};
  for (const auto& l : rep.lines) {
    Json j;
    j["real_part"] = bsz::to_string(l.lambda);
    j["order_a"] = l.order_a;
    j["order_g"] = l.order_g;
    j["rule"] = l.rule;
    j["rule_ok"] = l.rule_ok;
    j["root_multiplicity"] = l.root_multiplicity;
    if (l.dominated) j["root_dominates"] = *l.dominated;
    lines.push_back(std::move(j));
    std::string t = "Re(s) = " + bsz::to_string(l.lambda) + ": order a " + std::to_string(l.order_a) + ", order g " +
                    std::to_string(l.order_g) + ", rule " + l.rule + (l.rule_ok ? " ok" : " FAILS") +
                    ", root multiplicity in b_a " + std::to_string(l.root_multiplicity);
    if (l.dominated) t += *l.dominated ? " (dominates)" : " (too small)";
    text.push_back(t);
  }
  report["poles"] = std::move(lines);
  report["relations_ok"] = rep.relations_ok;
  report["roots_dominate_poles"] = rep.monodromy_ok;
  report["heuristic"] = "pole orders come from fits of truncated series";
  if (!rep.relations_ok) throw Failure{1, "relation_violated", "pole orders of Z_a and Z_g break the order relation", report};
  return {report, text};
}

int error_code_for(const bsz::Error& e) {
  const std::string& k = e.kind();
  if (k == "budget_exceeded" || k == "parse_error" || k == "invalid_argument" || k == "context_mismatch" ||
      k == "unknown_variable")
    return 2;
  return 1;
}

void emit(const RunConfig& c, const Json& report, const std::vector<std::string>& text,
          const std::optional<Json>& error) {
  if (c.format == "text") {
    for (const auto& line : text) std::cout << line << '\n';
    if (error) std::cout << Json{{"error", *error}}.dump() << '\n';
    return;
  }
  Json out;
  out["config"] = config_json(c);
  for (auto it = report.begin(); it != report.end(); ++it) out[it.key()] = it.value();
  if (error) out["error"] = *error;
  std::cout << out.dump(2) << '\n';
}

std::uint64_t env_budget() {
  const char* v = std::getenv("BSZ_BUDGET");
  if (!v || !*v) return bsz::kDefaultBudget;
  std::string s(v);
  if (s.find_first_not_of("0123456789") != std::string::npos)
    throw Failure{2, "usage", "BSZ_BUDGET must be a positive integer, got '" + s + "'"};
  return std::stoull(s);
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  try {
    cfg.budget = env_budget();
  } catch (const Failure& f) {
    std::cout << Json{{"error", {{"kind", f.kind}, {"message", f.message}}}}.dump() << '\n';
    return 2;
  }

  CLI::App app{"Bernstein-Sato certificates and p-adic zeta profiles"};
  app.require_subcommand(1);
  using Handler = Outcome (*)(const RunConfig&);
  std::vector<std::tuple<CLI::App*, std::string, unsigned, Handler>> leaves;

  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& desc, const std::string& full,
                  unsigned opts, Handler h) {
    CLI::App* s = parent->add_subcommand(name, desc);
    if (opts & kInput) s->add_option("--input", cfg.input, "polynomial JSON file");
    if (opts & kIdeal) s->add_option("--ideal", cfg.ideal, "ideal generators JSON file");
    if (opts & kCert) s->add_option("--cert", cfg.cert, "certificate JSON file");
    if (opts & kBounds) {
      s->add_option("--order", cfg.order, "max total order of partials")->capture_default_str();
      s->add_option("--xdeg", cfg.xdeg, "max coefficient degree in the space variables")->capture_default_str();
      s->add_option("--sdeg", cfg.sdeg, "max coefficient degree in the parameters")->capture_default_str();
      s->add_option("--shift-bound", cfg.shift_bound, "max negative shift entry (default: --order)");
      s->add_option("--bdeg", cfg.bdeg, "largest degree of b tried")->capture_default_str();
    }
    if (opts & kPadic) {
      s->add_option("--prime", cfg.prime, "prime p")->capture_default_str();
      s->add_option("--trunc", cfg.trunc, "truncation M")->capture_default_str();
      s->add_option("--budget", cfg.budget, "max residue points per level (env BSZ_BUDGET)")->capture_default_str();
      s->add_option("--threads", cfg.threads, "counting threads")->capture_default_str()->check(CLI::PositiveNumber);
    }
    if (opts & kFactor) {
      s->add_option("--factor", cfg.factor, "candidate factor 1 - t^N/p^v as N:v (repeatable)");
      s->add_option("--guard", cfg.guard, "top coefficients required to vanish");
    }
    if (opts & kFactorAG) {
      s->add_option("--factor-a", cfg.factor_a, "candidate factor N:v for Z_a (repeatable)");
      s->add_option("--factor-g", cfg.factor_g, "candidate factor N:v for Z_g (repeatable)");
      s->add_option("--guard", cfg.guard, "top coefficients required to vanish");
    }
    s->add_option("--format", cfg.format, "json or text")->capture_default_str()->check(CLI::IsMember({"json", "text"}));
    leaves.emplace_back(s, full, opts, h);
  };

  CLI::App* bs = app.add_subcommand("bs", "Bernstein-Sato search");
  bs->require_subcommand(1);
  leaf(bs, "principal", "b-function of a polynomial", "bs principal", kInput | kBounds, cmd_bs_principal);
  leaf(bs, "ideal", "b-function of an ideal", "bs ideal", kIdeal | kBounds, cmd_bs_ideal);
  leaf(&app, "verify", "check a certificate", "verify", kInput | kIdeal | kCert, cmd_verify);
  leaf(&app, "transport", "turn a certificate for g into one for the ideal", "transport", kIdeal | kCert,
       cmd_transport);
  leaf(&app, "lct", "log canonical threshold", "lct", kInput | kIdeal | kCert | kBounds, cmd_lct);
  leaf(&app, "ratsing", "rational-singularity test through g", "ratsing", kIdeal | kBounds, cmd_ratsing);
  CLI::App* zeta = app.add_subcommand("zeta", "p-adic zeta profiles");
  zeta->require_subcommand(1);
  leaf(zeta, "profile", "measure profile", "zeta profile", kInput | kIdeal | kPadic, cmd_zeta_profile);
  leaf(zeta, "check14", "three-way check for g", "zeta check14", kIdeal | kPadic, cmd_zeta_check14);
  leaf(zeta, "fit", "fit a rational function", "zeta fit", kInput | kIdeal | kPadic | kFactor, cmd_zeta_fit);
  CLI::App* rep = app.add_subcommand("report", "reports");
  rep->require_subcommand(1);
  leaf(rep, "poles", "pole orders versus roots of b_a", "report poles", kIdeal | kPadic | kBounds | kFactorAG,
       cmd_report_poles);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cout << Json{{"error", {{"kind", "usage"}, {"message", e.what()}}}}.dump() << '\n';
    return 2;
  }

  Handler handler = nullptr;
  for (const auto& [s, full, opts, h] : leaves) {
    if (s->parsed()) {
      cfg.command = full;
      cfg.opts = opts;
      handler = h;
    }
  }
  if (!handler) {
    std::cout << Json{{"error", {{"kind", "usage"}, {"message", "no command given"}}}}.dump() << '\n';
    return 2;
  }

  try {
    Outcome o = handler(cfg);
    emit(cfg, o.report, o.text, std::nullopt);
    return 0;
  } catch (const Failure& f) {
    emit(cfg, f.report, {}, Json{{"kind", f.kind}, {"message", f.message}});
    return f.code;
  } catch (const bsz::Error& e) {
    emit(cfg, Json::object(), {}, Json{{"kind", e.kind()}, {"message", e.what()}});
    return error_code_for(e);
  } catch (const std::exception& e) {
    emit(cfg, Json::object(), {}, Json{{"kind", "internal"}, {"message", e.what()}});
    return 1;
  }
}

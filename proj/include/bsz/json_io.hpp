#ifndef BSZ_JSON_IO_HPP
#define BSZ_JSON_IO_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include <json.hpp>

#include "bsz/bs.hpp"
#include "bsz/igusa.hpp"
#include "bsz/parse.hpp"

namespace bsz {

// Insertion-ordered so that emitted documents are stable byte for byte.
using Json = nlohmann::ordered_json;

namespace detail {

inline std::vector<std::string> string_list(const Json& j, const char* key) {
  if (!j.contains(key)) return {};
  const Json& a = j.at(key);
  if (!a.is_array()) throw ParseError(std::string("'") + key + "' must be an array of names");
  std::vector<std::string> out;
  for (const auto& v : a) {
    if (!v.is_string()) throw ParseError(std::string("'") + key + "' entries must be strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

inline BigRat rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return BigRat(BigInt(j.dump()));
  throw ParseError("coefficient must be a string \"num/den\" or an integer, got " + j.dump());
}

template <class T>
std::vector<T> int_list(const Json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
  std::vector<T> out;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw ParseError(std::string(what) + " entries must be integers");
    if constexpr (std::is_unsigned_v<T>) {
      if (v.get<long long>() < 0) throw ParseError(std::string(what) + " entries must be nonnegative");
    }
    out.push_back(v.get<T>());
  }
  return out;
}

}  // namespace detail

// Context from {"vars": [...], "params": [...]}. All vars are x-variables.
inline ContextPtr context_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("vars")) throw ParseError("object with a 'vars' list expected");
  return VarContext::make(detail::string_list(j, "vars"), {}, detail::string_list(j, "params"));
}

// {"vars": [...], "params": [...], "terms": [{"coeff": "3/2", "exps": [...]}, ...]}
// Terms are written leading term first.
inline Json to_json(const MPoly& p) {
  Json j;
  j["vars"] = p.context()->space_vars();
  j["params"] = p.context()->params();
  Json terms = Json::array();
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it)
    terms.push_back(Json{{"coeff", to_string(it->second)}, {"exps", it->first}});
  j["terms"] = std::move(terms);
  return j;
}

// Accepts the term form above, an {"vars", "params", "expr": "..."} object,
// or (given a context) a bare expression string. A document whose context
// equals `hint` is read into `hint` itself.
inline MPoly mpoly_from_json(const Json& j, const ContextPtr& hint = nullptr) {
  if (j.is_string()) {
    if (!hint) throw ParseError("a bare polynomial string needs surrounding 'vars'");
    return parse_mpoly(j.get<std::string>(), hint);
  }
  ContextPtr ctx;
  if (j.is_object() && j.contains("vars")) {
    ctx = context_from_json(j);
    if (hint && *hint == *ctx) ctx = hint;
  } else if (hint) {
    ctx = hint;
  } else {
    throw ParseError("polynomial must carry a 'vars' list");
  }
  if (j.contains("expr")) {
    if (!j.at("expr").is_string()) throw ParseError("'expr' must be a string");
    return parse_mpoly(j.at("expr").get<std::string>(), ctx);
  }
  if (!j.contains("terms") || !j.at("terms").is_array()) throw ParseError("polynomial needs 'terms' or 'expr'");
  MPoly p(ctx);
  for (const auto& t : j.at("terms")) {
    if (!t.is_object() || !t.contains("coeff") || !t.contains("exps"))
      throw ParseError("term needs 'coeff' and 'exps'");
    Exponents e = detail::int_list<unsigned>(t.at("exps"), "exps");
    if (e.size() != ctx->num_slots())
      throw ParseError("exps has " + std::to_string(e.size()) + " entries, context has " +
                       std::to_string(ctx->num_slots()) + " slots");
    p.add_term(e, detail::rational_from_json(t.at("coeff")));
  }
  return p;
}

// Coefficients as strings, low to high.
inline Json to_json(const UPoly& b) {
  Json a = Json::array();
  for (const auto& c : b.coeffs()) a.push_back(to_string(c));
  return a;
}

inline UPoly upoly_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("univariate polynomial must be an array of coefficients, low to high");
  std::vector<BigRat> c;
  for (const auto& v : j) c.push_back(detail::rational_from_json(v));
  return UPoly(std::move(c));
}

// [{"partials": [...], "coeff": MPoly-JSON}, ...]
inline Json to_json(const WeylOp& op) {
  Json a = Json::array();
  for (const auto& [beta, c] : op.terms()) a.push_back(Json{{"partials", beta}, {"coeff", to_json(c)}});
  return a;
}

inline WeylOp weylop_from_json(const Json& j, const ContextPtr& ctx) {
  if (!j.is_array()) throw ParseError("operator must be an array of {partials, coeff}");
  WeylOp op(ctx);
  for (const auto& t : j) {
    if (!t.is_object() || !t.contains("partials") || !t.contains("coeff"))
      throw ParseError("operator term needs 'partials' and 'coeff'");
    Partials b = detail::int_list<unsigned>(t.at("partials"), "partials");
    if (b.size() != ctx->num_vars())
      throw ParseError("partials has " + std::to_string(b.size()) + " entries, expected " +
                       std::to_string(ctx->num_vars()));
    MPoly c = mpoly_from_json(t.at("coeff"), ctx);
    if (!same_context(c.context(), ctx)) throw ContextMismatch("operator coefficient has a different context");
    op.add_term(b, c);
  }
  return op;
}

inline Json cert_to_json(const PrincipalCert& c) {
  Json j;
  j["kind"] = "principal";
  j["vars"] = c.op.context()->space_vars();
  j["params"] = c.op.context()->params();
  j["b"] = to_json(c.b);
  j["shifts"] = Json::array({Json::array({1})});
  j["ops"] = Json::array({to_json(c.op)});
  return j;
}

inline Json cert_to_json(const IdealCert& c, const ContextPtr& ctx) {
  Json j;
  j["kind"] = "ideal";
  j["vars"] = ctx->space_vars();
  j["params"] = ctx->params();
  j["b"] = to_json(c.b);
  j["shifts"] = c.shifts;
  Json ops = Json::array();
  for (const auto& op : c.ops) ops.push_back(to_json(op));
  j["ops"] = std::move(ops);
  return j;
}

struct CertDocument {
  std::string kind;  // "principal" or "ideal"
  ContextPtr ctx;
  std::optional<PrincipalCert> principal;
  std::optional<IdealCert> ideal;
};

inline CertDocument cert_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("certificate must be a JSON object");
  for (const char* k : {"kind", "b", "ops"})
    if (!j.contains(k)) throw ParseError(std::string("certificate is missing '") + k + "'");
  CertDocument doc;
  doc.kind = j.at("kind").get<std::string>();
  if (j.contains("vars")) {
    doc.ctx = context_from_json(j);
  } else {
    const Json& ops = j.at("ops");
    if (!ops.is_array() || ops.empty() || !ops[0].is_array() || ops[0].empty())
      throw ParseError("certificate without 'vars' needs a nonempty first operator");
    doc.ctx = context_from_json(ops[0][0].at("coeff"));
  }
  UPoly b = upoly_from_json(j.at("b"));
  std::vector<WeylOp> ops;
  if (!j.at("ops").is_array()) throw ParseError("'ops' must be an array");
  for (const auto& o : j.at("ops")) ops.push_back(weylop_from_json(o, doc.ctx));
  if (doc.kind == "principal") {
    if (ops.size() != 1) throw ParseError("principal certificate needs exactly one operator");
    doc.principal = PrincipalCert{b, ops.front()};
  } else if (doc.kind == "ideal") {
    if (!j.contains("shifts")) throw ParseError("ideal certificate is missing 'shifts'");
    IdealCert c;
    c.b = b;
    for (const auto& u : j.at("shifts")) c.shifts.push_back(detail::int_list<int>(u, "shift"));
    c.ops = std::move(ops);
    if (c.shifts.size() != c.ops.size()) throw ParseError("'shifts' and 'ops' differ in length");
    doc.ideal = std::move(c);
  } else {
    throw ParseError("certificate kind must be 'principal' or 'ideal'");
  }
  return doc;
}

// {"generators": [...]} (optionally with shared "vars") or a bare array.
inline GenTuple ideal_from_json(const Json& j) {
  const Json* gens = &j;
  ContextPtr shared;
  if (j.is_object()) {
    if (!j.contains("generators")) throw ParseError("ideal object needs 'generators'");
    gens = &j.at("generators");
    if (j.contains("vars")) shared = context_from_json(j);
  }
  if (!gens->is_array() || gens->empty()) throw ParseError("generators must be a nonempty array");
  std::vector<MPoly> out;
  for (const auto& g : *gens) {
    MPoly p = mpoly_from_json(g, shared);
    if (!shared) shared = p.context();
    if (!same_context(shared, p.context())) throw ContextMismatch("generators use different variable lists");
    out.push_back(std::move(p));
  }
  return GenTuple(std::move(out));
}

inline Json rationals_to_json(const std::vector<BigRat>& v) {
  Json a = Json::array();
  for (const auto& q : v) a.push_back(to_string(q));
  return a;
}

inline Json to_json(const Theorem14Report& r) {
  Json j;
  j["p"] = r.cfg.p;
  j["M"] = r.cfg.M;
  j["mu_a"] = rationals_to_json(r.mu_a);
  j["mu_g_direct"] = rationals_to_json(r.mu_g_direct);
  j["mu_g_convolved"] = rationals_to_json(r.mu_g_convolved);
  j["mu_g_factored"] = rationals_to_json(r.mu_g_factored);
  j["agree"] = r.agree;
  return j;
}

}  // namespace bsz

#endif  // BSZ_JSON_IO_HPP

#include "posicert/certificate.hpp"

#include <json.hpp>

#include "posicert/poly_io.hpp"
#include "posicert/random.hpp"

namespace posicert {

using ordered_json = nlohmann::ordered_json;

std::string to_string(CertKind kind) {
  return kind == CertKind::module ? "module" : "preordering";
}

CertKind parse_cert_kind(const std::string& text) {
  if (text == "module") return CertKind::module;
  if (text == "preordering") return CertKind::preordering;
  throw ParseError("unknown certificate kind '" + text + "'", 0);
}

template <std::size_t N>
Certificate<N> random_certificate(const GeneratorSet<N>& gs, unsigned degree_bound,
                                  unsigned term_count, std::uint64_t seed, CertKind kind) {
  gs.validate();
  if (term_count == 0) throw PreconditionError("term count must be positive");
  Rng rng(seed);
  Certificate<N> c;
  c.genset = gs;
  c.kind = kind;
  const std::size_t m = gs.size();
  for (unsigned t = 0; t < term_count; ++t) {
    CertTerm<N> term;
    term.exponent.assign(m, 0);
    if (kind == CertKind::module) {
      const long pick = rng.uniform(-1, static_cast<long>(m) - 1);
      if (pick >= 0) term.exponent[static_cast<std::size_t>(pick)] = 1;
    } else {
      for (auto& e : term.exponent) e = rng.coin() ? 1 : 0;
    }
    const long squares = rng.uniform(1, 2);
    for (long s = 0; s < squares; ++s) {
      Rational w = abs(rng.nonzero_rational(4, 3));
      term.sos.squares.push_back({w, random_poly<N>(rng, degree_bound)});
    }
    c.terms.push_back(std::move(term));
  }
  return c;
}

template <std::size_t N>
std::string certificate_to_json(const Certificate<N>& c, int indent) {
  ordered_json j;
  j["variables"] = N;
  ordered_json gens = ordered_json::array();
  for (const auto& g : c.genset.gens) gens.push_back(to_string(g));
  j["generators"] = gens;
  j["kind"] = to_string(c.kind);
  ordered_json terms = ordered_json::array();
  for (const auto& t : c.terms) {
    ordered_json jt;
    ordered_json e = ordered_json::array();
    for (auto v : t.exponent) e.push_back(static_cast<int>(v));
    jt["exponent"] = e;
    ordered_json sos = ordered_json::array();
    for (const auto& ws : t.sos.squares) {
      ordered_json s;
      s["coeff"] = ws.coeff.get_str();
      s["square"] = to_string(ws.square);
      sos.push_back(s);
    }
    jt["sos"] = sos;
    terms.push_back(jt);
  }
  j["terms"] = terms;
  return j.dump(indent);
}

namespace {

ordered_json parse_json(const std::string& text) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), e.byte);
  }
}

const ordered_json& require(const ordered_json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(std::string("certificate JSON is missing \"") + key + "\"", 0);
  }
  return j.at(key);
}

std::string require_string(const ordered_json& j, const std::string& what) {
  if (!j.is_string()) throw ParseError(what + " must be a string", 0);
  return j.get<std::string>();
}

template <std::size_t N>
Poly<N> parse_field_poly(const ordered_json& j, const std::string& what) {
  const std::string s = require_string(j, what);
  try {
    return parse_poly<N>(s);
  } catch (const ParseError& e) {
    throw ParseError(what + " \"" + s + "\": " + e.what(), e.position());
  }
}

}  // namespace

std::size_t certificate_arity(const std::string& json_text) {
  const auto j = parse_json(json_text);
  const auto& v = require(j, "variables");
  if (!v.is_number_integer()) throw ParseError("\"variables\" must be an integer", 0);
  const auto n = v.get<long>();
  if (n < 1 || n > 3) throw ArityError("certificates support 1, 2 or 3 variables, got " + std::to_string(n));
  return static_cast<std::size_t>(n);
}

template <std::size_t N>
Certificate<N> certificate_from_json(const std::string& json_text) {
  const auto j = parse_json(json_text);
  if (certificate_arity(json_text) != N) {
    throw ArityError("certificate declares " + std::to_string(certificate_arity(json_text)) +
                     " variables, expected " + std::to_string(N));
  }
  Certificate<N> c;
  const auto& gens = require(j, "generators");
  if (!gens.is_array()) throw ParseError("\"generators\" must be an array", 0);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    c.genset.gens.push_back(parse_field_poly<N>(gens[i], "generator " + std::to_string(i + 1)));
  }
  c.kind = parse_cert_kind(require_string(require(j, "kind"), "\"kind\""));
  const auto& terms = require(j, "terms");
  if (!terms.is_array()) throw ParseError("\"terms\" must be an array", 0);
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const std::string where = "term " + std::to_string(t + 1);
    CertTerm<N> term;
    const auto& e = require(terms[t], "exponent");
    if (!e.is_array()) throw ParseError(where + ": \"exponent\" must be an array", 0);
    for (const auto& v : e) {
      if (!v.is_number_integer() || v.get<long>() < 0 || v.get<long>() > 1) {
        throw ParseError(where + ": exponent entries must be 0 or 1", 0);
      }
      term.exponent.push_back(static_cast<std::uint8_t>(v.get<long>()));
    }
    const auto& sos = require(terms[t], "sos");
    if (!sos.is_array()) throw ParseError(where + ": \"sos\" must be an array", 0);
    for (const auto& s : sos) {
      const std::string coeff = require_string(require(s, "coeff"), where + " coeff");
      term.sos.squares.push_back(
          {parse_rational(coeff), parse_field_poly<N>(require(s, "square"), where + " square")});
    }
    c.terms.push_back(std::move(term));
  }
  c.validate();
  return c;
}

#define POSICERT_INSTANTIATE(N)                                                            \
  template Certificate<N> random_certificate<N>(const GeneratorSet<N>&, unsigned, unsigned, \
                                                std::uint64_t, CertKind);                   \
  template std::string certificate_to_json<N>(const Certificate<N>&, int);                  \
  template Certificate<N> certificate_from_json<N>(const std::string&);

POSICERT_INSTANTIATE(1)
POSICERT_INSTANTIATE(2)
POSICERT_INSTANTIATE(3)

#undef POSICERT_INSTANTIATE

}  // namespace posicert

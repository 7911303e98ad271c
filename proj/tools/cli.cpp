#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "posicert/certificate.hpp"
#include "posicert/diagnostics.hpp"
#include "posicert/poly_io.hpp"
#include "posicert/saturate_1d.hpp"
#include "posicert/transforms.hpp"

namespace posicert::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

struct Context {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
  std::string format = "text";

  bool json() const { return format == "json"; }
};

std::string read_source(Context& ctx, const std::string& path) {
  std::stringstream ss;
  if (path.empty() || path == "-") {
    ss << ctx.in.rdbuf();
  } else {
    std::ifstream f(path);
    if (!f) throw PreconditionError("cannot open '" + path + "'");
    ss << f.rdbuf();
  }
  return ss.str();
}

template <std::size_t N>
std::vector<Poly<N>> parse_list(const std::string& text) {
  std::vector<Poly<N>> out;
  for (const auto& item : split_list(text)) out.push_back(parse_poly<N>(item));
  return out;
}

template <std::size_t N>
GeneratorSet<N> genset_of(const std::string& text) {
  GeneratorSet<N> gs;
  gs.gens = parse_list<N>(text);
  gs.label = "command line";
  gs.validate();
  return gs;
}

std::string point_string(const std::array<Rational, 2>& p) {
  return "(" + p[0].get_str() + ", " + p[1].get_str() + ")";
}

template <std::size_t N>
void emit(Context& ctx, const Certificate<N>& c) {
  ctx.out << certificate_to_json(c) << "\n";
}

template <std::size_t N>
int verify_as(Context& ctx, const std::string& poly_text, const std::string& cert_text) {
  const auto cert = certificate_from_json<N>(cert_text);
  const auto f = parse_poly<N>(poly_text);
  const auto v = verify(cert, f);
  if (ctx.json()) {
    ordered_json j;
    j["verdict"] = v ? "accept" : "reject";
    if (!v) {
      j["monomial"] = to_string(Poly<N>::monomial(Rational(1), *v.monomial));
      j["certificate_coeff"] = v.certificate_coeff.get_str();
      j["target_coeff"] = v.target_coeff.get_str();
    }
    ctx.out << j.dump(2) << "\n";
  } else {
    ctx.out << describe(v) << "\n";
  }
  return v ? kOk : kRejected;
}

template <std::size_t N>
int expand_as(Context& ctx, const std::string& cert_text) {
  const auto cert = certificate_from_json<N>(cert_text);
  const std::string p = to_string(expand(cert));
  if (ctx.json()) {
    ordered_json j;
    j["variables"] = N;
    j["polynomial"] = p;
    ctx.out << j.dump(2) << "\n";
  } else {
    ctx.out << p << "\n";
  }
  return kOk;
}

template <std::size_t N>
int rand_cert_as(Context& ctx, const std::string& gens, unsigned degree, unsigned terms,
                 std::uint64_t seed, const std::string& kind) {
  emit(ctx, random_certificate(genset_of<N>(gens), degree, terms, seed, parse_cert_kind(kind)));
  return kOk;
}

template <typename F>
int dispatch_arity(std::size_t n, F&& f) {
  switch (n) {
    case 1:
      return f(std::integral_constant<std::size_t, 1>{});
    case 2:
      return f(std::integral_constant<std::size_t, 2>{});
    case 3:
      return f(std::integral_constant<std::size_t, 3>{});
  }
  throw ArityError("unsupported number of variables " + std::to_string(n));
}

ordered_json fiber_json(const FiberSet& f) {
  ordered_json j;
  j["at"] = f.c.get_str();
  j["fiber"] = to_string(f);
  ordered_json pieces = ordered_json::array();
  for (const auto& p : f.pieces) {
    ordered_json jp;
    jp["lo"] = p.lo ? to_string(*p.lo) : "-inf";
    jp["lo_closed"] = p.lo ? p.lo->closed : false;
    jp["hi"] = p.hi ? to_string(*p.hi) : "inf";
    jp["hi_closed"] = p.hi ? p.hi->closed : false;
    pieces.push_back(jp);
  }
  j["pieces"] = pieces;
  j["notes"] = f.notes;
  return j;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Context ctx{in, out, err};
  CLI::App app{"Exact sums-of-squares certificates on intervals, strips and half-strips", "posicert"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", ctx.format, "Report format (certificates are always JSON)")
      ->check(CLI::IsMember({"json", "text"}));

  std::function<int()> action;
  std::string poly, set, cert_path, gens, q_text, at, kind = "preordering", auto_from;
  std::string box = "-1,1";
  bool module_form = false;
  bool endpoint = false;
  unsigned n = 0, budget = 1000, samples = 16, degree = 2, terms = 3, vars = 0;
  std::uint64_t seed = 1;

  auto add_cert = [&](CLI::App* sub) {
    sub->add_option("--cert", cert_path, "Certificate JSON file ('-' or absent: standard input)");
  };

  auto* certify = app.add_subcommand("certify-1d", "Certificate of f >= 0 on an interval union");
  certify->add_option("--poly", poly, "Polynomial in x")->required();
  certify->add_option("--set", set, "Interval union, e.g. [0,1]u[2,3]")->required();
  certify->add_flag("--module-form", module_form, "Quadratic-module form (single interval only)");
  certify->callback([&] {
    action = [&] {
      const auto u = IntervalUnion::parse(set);
      auto c = certify_nonneg_1d(parse_poly<1>(poly), u);
      if (module_form) {
        if (u.size() != 1) throw PreconditionError("--module-form needs a single interval");
        c = module_form_single_interval(c);
      }
      emit(ctx, c);
      return kOk;
    };
  });

  auto* verify_cmd = app.add_subcommand("verify", "Check a certificate against a polynomial");
  verify_cmd->add_option("--poly", poly, "Target polynomial")->required();
  add_cert(verify_cmd);
  verify_cmd->callback([&] {
    action = [&] {
      const std::string text = read_source(ctx, cert_path);
      return dispatch_arity(certificate_arity(text), [&](auto arity) {
        return verify_as<decltype(arity)::value>(ctx, poly, text);
      });
    };
  });

  auto* lift = app.add_subcommand("lift-halfstrip", "Strip certificate of f(x,y^2) to half-strip certificate of f");
  lift->add_option("--set", set, "Interval union U")->required();
  add_cert(lift);
  lift->callback([&] {
    action = [&] {
      const auto c = certificate_from_json<2>(read_source(ctx, cert_path));
      emit(ctx, lift_halfstrip(c, IntervalUnion::parse(set)));
      return kOk;
    };
  });

  auto* shift = app.add_subcommand("shift", "Half-strip certificate of g(x, y - q(x))");
  shift->add_option("--q", q_text, "Polynomial q(x) >= 0 on U")->required();
  add_cert(shift);
  shift->callback([&] {
    action = [&] {
      const auto c = certificate_from_json<2>(read_source(ctx, cert_path));
      emit(ctx, shift_halfstrip(c, parse_poly<1>(q_text)));
      return kOk;
    };
  });

  auto* xycut = app.add_subcommand("xycut", "Certificate over {x - x^2, xy - 1} from one over {u - u^2, v - 1}");
  auto* n_opt = xycut->add_option("--n", n, "Power n in x^(2n) f = g(x, xy)");
  auto* auto_opt = xycut->add_option("--auto-from", auto_from, "Pick the smallest n for this f(x, y)");
  n_opt->excludes(auto_opt);
  add_cert(xycut);
  xycut->callback([&] {
    action = [&] {
      if (n_opt->count() == 0 && auto_opt->count() == 0) throw CLI::RequiredError("--n");
      if (auto_opt->count() > 0) n = xy_cut_auto_n(parse_poly<2>(auto_from));
      const auto c = certificate_from_json<2>(read_source(ctx, cert_path));
      emit(ctx, xy_cut_transform(c, n));
      return kOk;
    };
  });

  auto* surface = app.add_subcommand("surface-z", "Certificate on z = x^2 from a strip certificate of f(x,y,x^2)");
  surface->add_option("--poly", poly, "f(x, y, z)")->required();
  add_cert(surface);
  surface->callback([&] {
    action = [&] {
      const auto c = certificate_from_json<2>(read_source(ctx, cert_path));
      emit(ctx, surface_z_transform(parse_poly<3>(poly), c));
      return kOk;
    };
  });

  auto* refute = app.add_subcommand("refute", "Search for a point of the region where f < 0");
  refute->add_option("--poly", poly, "f(x, y)")->required();
  auto* set_opt = refute->add_option("--set", set, "U for a strip or half-strip region");
  auto* q_opt = refute->add_option("--q", q_text, "Half-strip lower boundary y = q(x)");
  auto* gens_opt = refute->add_option("--gens", gens, "Custom region: ';'-separated g_i(x, y) >= 0");
  refute->add_option("--box", box, "x range for a custom region, lo,hi");
  refute->add_option("--budget", budget, "Number of sample points")->check(CLI::PositiveNumber);
  q_opt->needs(set_opt);
  gens_opt->excludes(set_opt);
  refute->callback([&] {
    action = [&] {
      Region region;
      if (gens_opt->count() > 0) {
        const auto parts = split_list(box, ',');
        if (parts.size() != 2) throw ParseError("--box expects lo,hi", 0);
        region = Region::custom(parse_list<2>(gens), parse_rational(parts[0]), parse_rational(parts[1]));
      } else if (set_opt->count() > 0) {
        const auto u = IntervalUnion::parse(set);
        region = q_opt->count() > 0 ? Region::halfstrip(u, parse_poly<1>(q_text)) : Region::strip(u);
      } else {
        throw CLI::RequiredError("--set or --gens");
      }
      const auto w = sample_refute_2d(parse_poly<2>(poly), region, budget);
      if (ctx.json()) {
        ordered_json j;
        j["found"] = w.has_value();
        if (w) {
          j["x"] = (*w)[0].get_str();
          j["y"] = (*w)[1].get_str();
          j["value"] = eval(parse_poly<2>(poly), *w).get_str();
        }
        j["budget"] = budget;
        ctx.out << j.dump(2) << "\n";
      } else if (w) {
        ctx.out << "witness " << point_string(*w) << " value " << eval(parse_poly<2>(poly), *w).get_str() << "\n";
      } else {
        ctx.out << "no witness in " << budget << " samples\n";
      }
      return w ? kRejected : kOk;
    };
  });

  auto* fiber = app.add_subcommand("fiber", "Fiber {y : g_i(c, y) >= 0} at x = c");
  fiber->add_option("--gens", gens, "';'-separated g_i(x, y)")->required();
  fiber->add_option("--at", at, "x = c")->required();
  fiber->add_flag("--endpoint", endpoint, "Also test whether the ray endpoint appears among the g_i");
  fiber->callback([&] {
    action = [&] {
      const auto g = parse_list<2>(gens);
      const Rational c = parse_rational(at);
      const FiberSet f = fiber_set(g, c);
      ordered_json j = fiber_json(f);
      std::string extra;
      if (endpoint) {
        const auto rep = endpoint_generator_check(g, c);
        j["endpoint_check"] = to_string(rep.status);
        j["candidates"] = rep.candidates;
        j["detail"] = rep.detail;
        extra = to_string(rep.status) + ": " + rep.detail + "\n";
      }
      if (ctx.json()) {
        ctx.out << j.dump(2) << "\n";
      } else {
        ctx.out << to_string(f) << "\n" << extra;
        for (const auto& note : f.notes) ctx.err << "note: " << note << "\n";
      }
      return kOk;
    };
  });

  auto* obstruct = app.add_subcommand("obstruct", "Scan the endpoint condition over sample points of U");
  obstruct->add_option("--gens", gens, "';'-separated g_i(x, y)")->required();
  obstruct->add_option("--set", set, "Interval union U")->default_val("[0,1]");
  obstruct->add_option("--samples", samples, "Number of sample points")->check(CLI::PositiveNumber);
  obstruct->callback([&] {
    action = [&] {
      const auto rep = obstruction_scan(parse_list<2>(gens), IntervalUnion::parse(set), samples);
      if (ctx.json()) {
        ordered_json j;
        j["samples"] = rep.samples.size();
        j["applicable"] = rep.applicable;
        j["holds"] = rep.holds;
        j["fails"] = rep.fails;
        j["undecided"] = rep.undecided;
        j["failure_fraction"] = rep.failure_fraction();
        ordered_json pts = ordered_json::array();
        for (const auto& s : rep.samples) {
          ordered_json p;
          p["c"] = s.c.get_str();
          p["fiber"] = s.fiber;
          p["status"] = s.applicable ? to_string(s.status) : "not-applicable";
          pts.push_back(p);
        }
        j["points"] = pts;
        j["summary"] = rep.summary;
        ctx.out << j.dump(2) << "\n";
      } else {
        for (const auto& s : rep.samples) {
          ctx.out << "c = " << s.c.get_str() << "  fiber " << s.fiber << "  "
                  << (s.applicable ? to_string(s.status) : "not-applicable") << "\n";
        }
        ctx.out << rep.summary << "\n";
      }
      return kOk;
    };
  });

  auto* gen = app.add_subcommand("gen", "Natural generators of an interval union");
  gen->add_option("--set", set, "Interval union U")->required();
  gen->callback([&] {
    action = [&] {
      const auto gs = natural_generators(IntervalUnion::parse(set));
      if (ctx.json()) {
        ordered_json j;
        j["set"] = set;
        ordered_json list = ordered_json::array();
        for (const auto& g : gs.gens) list.push_back(to_string(g));
        j["generators"] = list;
        ctx.out << j.dump(2) << "\n";
      } else {
        for (std::size_t i = 0; i < gs.size(); ++i) ctx.out << (i ? "; " : "") << to_string(gs[i]);
        ctx.out << "\n";
      }
      return kOk;
    };
  });

  auto* rand_cert = app.add_subcommand("rand-cert", "Random certificate fixture");
  rand_cert->add_option("--gens", gens, "';'-separated generators")->required();
  rand_cert->add_option("--vars", vars, "Number of variables (default: smallest that fits)")
      ->check(CLI::Range(1, 3));
  rand_cert->add_option("--degree", degree, "Degree bound of the squared polynomials");
  rand_cert->add_option("--terms", terms, "Number of terms")->check(CLI::PositiveNumber);
  rand_cert->add_option("--seed", seed, "Random seed");
  rand_cert->add_option("--kind", kind, "module or preordering")->check(CLI::IsMember({"module", "preordering"}));
  rand_cert->callback([&] {
    action = [&] {
      std::size_t arity = vars;
      if (arity == 0) {
        arity = 1;
        for (const auto& item : split_list(gens)) arity = std::max(arity, detect_arity(item));
      }
      return dispatch_arity(arity, [&](auto a) {
        return rand_cert_as<decltype(a)::value>(ctx, gens, degree, terms, seed, kind);
      });
    };
  });

  auto* expand_cmd = app.add_subcommand("expand", "Expand a certificate into its polynomial");
  add_cert(expand_cmd);
  expand_cmd->callback([&] {
    action = [&] {
      const std::string text = read_source(ctx, cert_path);
      return dispatch_arity(certificate_arity(text), [&](auto a) {
        return expand_as<decltype(a)::value>(ctx, text);
      });
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    return action ? action() : kUsage;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  } catch (const NegativeOnSetError& e) {
    err << "rejected: " << e.what() << "\n";
    return kRejected;
  } catch (const CutDivisibilityError& e) {
    err << "rejected: " << e.what() << "\n";
    return kRejected;
  } catch (const CapabilityError& e) {
    err << "capability limit: " << e.what() << "\n";
    return kCapability;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace posicert::cli

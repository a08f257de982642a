#ifndef STARIMAGE_CLI_HPP
#define STARIMAGE_CLI_HPP

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "starimage/cones.hpp"
#include "starimage/decompose.hpp"
#include "starimage/image2.hpp"
#include "starimage/json_io.hpp"
#include "starimage/lie4.hpp"
#include "starimage/star_poly.hpp"

namespace starimage::cli {

struct Config {
  std::string involution = "transpose";
  std::string backend = "exact";
  uint64_t seed = 1;
  std::string output = "json";
  int max_degree = 12;
};

namespace detail {

inline InvolutionCtx m2_ctx(const Config& cfg) {
  return InvolutionCtx(cfg.involution == "symplectic" ? Involution::Symplectic
                                                      : Involution::Transpose,
                       2);
}

inline StarPolynomial load_poly(const Config& cfg, const std::string& text,
                                const std::string& file) {
  std::string src = text;
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) throw DomainError("cannot open polynomial file: " + file);
    std::stringstream ss;
    ss << in.rdbuf();
    src = ss.str();
  }
  if (src.empty()) throw DomainError("no polynomial given");
  StarPolynomial p = parse_star_polynomial(src);
  if (p.degree() > cfg.max_degree)
    throw DomainError("polynomial degree " + std::to_string(p.degree()) +
                      " exceeds max degree " + std::to_string(cfg.max_degree));
  return p;
}

inline json load_json_arg(const std::string& inline_json,
                          const std::string& file) {
  std::string src = inline_json;
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) throw DomainError("cannot open file: " + file);
    std::stringstream ss;
    ss << in.rdbuf();
    src = ss.str();
  }
  if (src.empty()) throw DomainError("no matrix given");
  json j = json::parse(src, nullptr, false);
  if (j.is_discarded()) throw DomainError("malformed JSON input");
  return j;
}

inline json span_to_json(const SubspaceBasis<Rational>& span) {
  json basis = json::array();
  for (const auto& m : span.matrices(2)) basis.push_back(matrix_to_json(m));
  return basis;
}

inline json predicates_to_json(const PredicateRecord& r) {
  return json{{"is_identity", r.is_identity},
              {"is_central", r.is_central},
              {"skew_part_identity", r.skew_part_identity},
              {"sym_part_identity", r.sym_part_identity},
              {"trace_vanishes", r.trace_vanishes},
              {"cyclic_zero", r.cyclic_zero}};
}

inline void emit(const Config& cfg, std::ostream& out, const json& j,
                 const std::string& text) {
  if (cfg.output == "json")
    out << j.dump() << "\n";
  else
    out << text << "\n";
}

inline ComponentSet components_from_json(const json& j) {
  if (!j.is_array()) throw DomainError("components must be a JSON array");
  ComponentSet c;
  for (const auto& e : j) {
    std::string s = e.get<std::string>();
    if (s == "Z") c.insert(Component::Z);
    else if (s == "K1") c.insert(Component::K1);
    else if (s == "K2") c.insert(Component::K2);
    else if (s == "SK") c.insert(Component::SK);
    else throw DomainError("unknown component: " + s);
  }
  return c;
}

inline json components_to_json(const ComponentSet& c) {
  json out = json::array();
  for (Component x : c) out.push_back(to_string(x));
  return out;
}

}  // namespace detail

/// Runs the command line. Exit codes: 0 success, 2 usage error, 3 domain
/// error. Output is deterministic for a fixed seed.
inline int run(std::vector<std::string> args, std::ostream& out,
               std::ostream& err) {
  Config cfg;
  CLI::App app{"images of multilinear *-polynomials on matrix algebras"};
  app.require_subcommand(1);
  app.add_option("--involution", cfg.involution, "transpose or symplectic")
      ->check(CLI::IsMember({"transpose", "symplectic"}));
  app.add_option("--backend", cfg.backend, "exact or real")
      ->check(CLI::IsMember({"exact", "real"}));
  app.add_option("--seed", cfg.seed, "64-bit seed for randomized steps");
  app.add_option("--output", cfg.output, "json or text")
      ->check(CLI::IsMember({"json", "text"}));
  app.add_option("--max-degree", cfg.max_degree, "reject longer polynomials")
      ->check(CLI::PositiveNumber);

  std::string poly_text, poly_file, matrix_json, matrix2_json, file_arg;

  auto* classify = app.add_subcommand("classify", "classify the image of a *-polynomial");
  classify->add_option("polynomial", poly_text);
  classify->add_option("--file", poly_file);

  auto* span_cmd = app.add_subcommand("span", "echelon basis of the image span");
  span_cmd->add_option("polynomial", poly_text);
  span_cmd->add_option("--file", poly_file);

  auto* reduce = app.add_subcommand("reduce", "replace skew variables by commutators");
  reduce->add_option("polynomial", poly_text);
  reduce->add_option("--file", poly_file);

  auto* dec = app.add_subcommand("decompose", "constructive commutator decompositions");
  dec->require_subcommand(1);
  auto* dcomm = dec->add_subcommand("comm", "trace-zero symmetric = [sym, skew]");
  auto* dskew = dec->add_subcommand("skewcomm", "skew = [sym, sym]");
  auto* dtwo = dec->add_subcommand("twosym", "any matrix = sym * sym");
  for (auto* s : {dcomm, dskew, dtwo}) {
    s->add_option("--matrix", matrix_json);
    s->add_option("--file", file_arg);
  }

  auto* cone = app.add_subcommand("cone", "irreducible O(2)-invariant cone of a 2x2 matrix");
  cone->add_option("--matrix", matrix_json);
  cone->add_option("--file", file_arg);

  auto* orbit = app.add_subcommand("orbit-eq", "same O(2)-orbit test for two 2x2 matrices");
  orbit->add_option("--matrix", matrix_json);
  orbit->add_option("--matrix2", matrix2_json);

  std::string xs_json, ys_json;
  auto* witness = app.add_subcommand("witness", "nonzero-witness chain for a *-polynomial");
  witness->add_option("polynomial", poly_text);
  witness->add_option("--x-tuple", xs_json);
  witness->add_option("--y-tuple", ys_json);

  std::string mats_json, comps_json;
  auto* lie4 = app.add_subcommand("lie4", "Lie skew-ideal lattice of M_4");
  lie4->require_subcommand(1);
  auto* lclassify = lie4->add_subcommand("classify", "component set of a Lie skew-ideal");
  lclassify->add_option("--matrices", mats_json);
  auto* lproject = lie4->add_subcommand("project", "coordinates in Z + K1 + K2 + SK");
  lproject->add_option("--matrix", matrix_json);
  auto* lgenerate = lie4->add_subcommand("generate", "Lie skew-ideal generated by matrices");
  lgenerate->add_option("--matrices", mats_json);
  auto* lcollapse = lie4->add_subcommand("collapse", "O(4)-invariance of a component set");
  lcollapse->add_option("--components", comps_json);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  if (const char* env_seed = std::getenv("STARIMAGE_SEED"))
    cfg.seed = std::strtoull(env_seed, nullptr, 10);

  try {
    const InvolutionCtx ctx = detail::m2_ctx(cfg);

    if (*classify) {
      StarPolynomial p = detail::load_poly(cfg, poly_text, poly_file);
      ImageClass ic = ctx.kind == Involution::Transpose
                          ? classify_image_transpose(p)
                          : classify_image_symplectic(p);
      SpanLabel label = bresar_klep_label(p, ctx);
      SubspaceBasis<Rational> span = ctx.kind == Involution::Transpose
                                         ? image_span_transpose(p)
                                         : image_span_symplectic(p);
      PredicateRecord pred = predicates(p, ctx);
      json j{{"image_class", to_string(ic)},
             {"span_label", to_string(label)},
             {"span_dim", span.dim()},
             {"span_basis", detail::span_to_json(span)},
             {"predicates", detail::predicates_to_json(pred)}};
      detail::emit(cfg, out, j,
                   "image class: " + to_string(ic) + "\nspan label:  " +
                       to_string(label) + " (" + describe(label, ctx.kind) +
                       ")\nspan dim:    " + std::to_string(span.dim()));
      return 0;
    }
    if (*span_cmd) {
      StarPolynomial p = detail::load_poly(cfg, poly_text, poly_file);
      SubspaceBasis<Rational> span = ctx.kind == Involution::Transpose
                                         ? image_span_transpose(p)
                                         : image_span_symplectic(p);
      json j{{"span_dim", span.dim()},
             {"span_basis", detail::span_to_json(span)}};
      detail::emit(cfg, out, j, "span dim: " + std::to_string(span.dim()));
      return 0;
    }
    if (*reduce) {
      StarPolynomial p = detail::load_poly(cfg, poly_text, poly_file);
      StarPolynomial g = substitute_commutators(p);
      json j{{"polynomial", to_string(g)},
             {"sym_arity", g.sym_arity()},
             {"monomials", g.monomial_count()}};
      detail::emit(cfg, out, j, to_string(g));
      return 0;
    }
    if (*dec) {
      json mj = detail::load_json_arg(matrix_json, file_arg);
      if (*dtwo) {
        if (cfg.backend == "exact") {
          auto a = matrix_from_json<Rational>(mj);
          auto [s1, s2] = two_symmetric_factors(a, cfg.seed);
          json j{{"S1", matrix_to_json(s1)}, {"S2", matrix_to_json(s2)},
                 {"exact", true}};
          detail::emit(cfg, out, j, "S1 * S2 = A (exact)");
        } else {
          auto a = matrix_from_json<double>(mj);
          auto [s1, s2] = two_symmetric_factors(a, cfg.seed);
          double res = starimage::detail::frobenius(s1 * s2 - a);
          json j{{"S1", matrix_to_json(s1)}, {"S2", matrix_to_json(s2)},
                 {"residual", res}};
          detail::emit(cfg, out, j, "residual: " + std::to_string(res));
        }
        return 0;
      }
      auto a = matrix_from_json<double>(mj);
      CommutatorPair pair = *dcomm ? sym_traceless_to_commutator(a)
                                   : skew_to_sym_commutator(a);
      double res = starimage::detail::frobenius(commutator(pair.B, pair.C) - a);
      json j{{"B", matrix_to_json(pair.B)},
             {"C", matrix_to_json(pair.C)},
             {"residual", res}};
      detail::emit(cfg, out, j, "residual: " + std::to_string(res));
      return 0;
    }
    if (*cone || *orbit) {
      if (ctx.kind == Involution::Symplectic)
        throw DomainError("cone subcommands are defined for the transpose case");
      if (*cone) {
        json mj = detail::load_json_arg(matrix_json, file_arg);
        if (cfg.backend == "exact") {
          auto c = classify_cone(matrix_from_json<Rational>(mj));
          json j{{"tag", to_string(c.tag)}};
          if (c.tag == ConeTag::Diagonal || c.tag == ConeTag::General)
            j["a_sq"] = scalar_traits<Rational>::to_string(c.a_sq);
          if (c.tag == ConeTag::General)
            j["s_sq"] = scalar_traits<Rational>::to_string(c.s_sq);
          detail::emit(cfg, out, j, "cone: " + to_string(c.tag));
        } else {
          auto c = classify_cone(matrix_from_json<double>(mj));
          json j{{"tag", to_string(c.tag)}};
          if (c.tag == ConeTag::Diagonal || c.tag == ConeTag::General)
            j["a_sq"] = c.a_sq;
          if (c.tag == ConeTag::General) j["s_sq"] = c.s_sq;
          detail::emit(cfg, out, j, "cone: " + to_string(c.tag));
        }
      } else {
        json ma = detail::load_json_arg(matrix_json, "");
        json mb = detail::load_json_arg(matrix2_json, "");
        bool same = cfg.backend == "exact"
                        ? same_orbit(matrix_from_json<Rational>(ma),
                                     matrix_from_json<Rational>(mb))
                        : same_orbit(matrix_from_json<double>(ma),
                                     matrix_from_json<double>(mb));
        detail::emit(cfg, out, json{{"same_orbit", same}},
                     same ? "same orbit" : "different orbits");
      }
      return 0;
    }
    if (*witness) {
      StarPolynomial p = detail::load_poly(cfg, poly_text, poly_file);
      json xj = detail::load_json_arg(xs_json, ""), yj = detail::load_json_arg(ys_json, "");
      if (!xj.is_array() || !yj.is_array())
        throw DomainError("tuples must be JSON arrays of matrices");
      std::vector<Matrix<Rational>> xs, ys;
      for (const auto& e : xj) xs.push_back(matrix_from_json<Rational>(e));
      for (const auto& e : yj) ys.push_back(matrix_from_json<Rational>(e));
      auto w = witness_search(p, xs, ys, ctx);
      json tup = json::array();
      for (const auto& m : w.tuple) tup.push_back(matrix_to_json(m));
      json j{{"index", w.index},
             {"tuple", std::move(tup)},
             {"alternate", matrix_to_json(w.alternate)}};
      detail::emit(cfg, out, j, "witness index: " + std::to_string(w.index));
      return 0;
    }
    if (*lie4) {
      if (*lproject) {
        json mj = detail::load_json_arg(matrix_json, "");
        M4Projection pr = project_m4(matrix_from_json<Rational>(mj));
        auto rs = [](const Rational& x) {
          return scalar_traits<Rational>::to_string(x);
        };
        json j{{"z", rs(pr.z)},
               {"k1", {rs(pr.k1[0]), rs(pr.k1[1]), rs(pr.k1[2])}},
               {"k2", {rs(pr.k2[0]), rs(pr.k2[1]), rs(pr.k2[2])}}};
        json sk = json::array();
        for (const auto& x : pr.sk) sk.push_back(rs(x));
        j["sk"] = std::move(sk);
        detail::emit(cfg, out, j, "z: " + rs(pr.z));
        return 0;
      }
      if (*lcollapse) {
        ComponentSet c = detail::components_from_json(
            detail::load_json_arg(comps_json, ""));
        O4Collapse col = o4_collapse(c);
        json j{{"invariant", col.invariant},
               {"collapsed", detail::components_to_json(col.collapsed)}};
        detail::emit(cfg, out, j,
                     col.invariant ? "O(4)-invariant" : "not O(4)-invariant");
        return 0;
      }
      json mj = detail::load_json_arg(mats_json, "");
      if (!mj.is_array()) throw DomainError("--matrices must be a JSON array");
      std::vector<Matrix<Rational>> mats;
      for (const auto& e : mj) mats.push_back(matrix_from_json<Rational>(e));
      if (*lgenerate) {
        auto span = generate_lie_skew_ideal(mats, 4);
        ComponentSet c = classify_lie_skew_ideal(span);
        json j{{"dim", span.dim()},
               {"components", detail::components_to_json(c)}};
        detail::emit(cfg, out, j, "dim: " + std::to_string(span.dim()));
      } else {
        auto span = SubspaceBasis<Rational>::from_matrices(mats);
        ComponentSet c = classify_lie_skew_ideal(span);
        json j{{"dim", span.dim()},
               {"components", detail::components_to_json(c)}};
        detail::emit(cfg, out, j, "dim: " + std::to_string(span.dim()));
      }
      return 0;
    }
    err << "usage error: no subcommand\n";
    return 2;
  } catch (const ParseError& e) {
    if (cfg.output == "json")
      out << json{{"error", e.what()}}.dump() << "\n";
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const DomainError& e) {
    if (cfg.output == "json")
      out << json{{"error", e.what()}}.dump() << "\n";
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    if (cfg.output == "json")
      out << json{{"error", e.what()}}.dump() << "\n";
    err << "internal error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace starimage::cli

#endif

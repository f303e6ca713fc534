#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "btq/acceptance.hpp"
#include "btq/errors.hpp"
#include "btq/formulas.hpp"
#include "btq/presentation.hpp"
#include "btq/quotient.hpp"
#include "json.hpp"

namespace {

constexpr int kUsage = 2;
constexpr int kInconsistent = 3;

struct Options {
  std::uint32_t p = 2;
  std::uint32_t s = 1;
  std::string modulus;
  std::string level;
  int depth = 10;
  int window = 3;
  std::string format = "text";
  std::string out;
  bool brute_force = false;
  int threads = 1;
  std::string vertex;
  std::string other;
  std::uint64_t g2 = 1;
  std::uint64_t index_theorem = 1;
  std::uint64_t index_lema4 = 1;
  std::string pic_r = "1";
};

// An answer that contradicts a theorem or an oracle.
struct Inconsistent {
  std::string what;
};

std::vector<std::uint32_t> parse_modulus(const std::string& text) {
  std::vector<std::uint32_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    const unsigned long v = std::stoul(item, &used);
    if (used != item.size()) throw btq::ParseError("bad modulus coefficient '" + item + "'", 0);
    out.push_back(static_cast<std::uint32_t>(v));
  }
  return out;
}

btq::Field make_field(const Options& o) {
  btq::FieldSpec spec{o.p, o.s, {}};
  if (!o.modulus.empty()) spec.modulus = parse_modulus(o.modulus);
  return btq::Field(spec);
}

btq::PicardData picard(const Options& o) {
  btq::PicardData pic;
  pic.g2_order = o.g2;
  pic.index_theorem = o.index_theorem;
  pic.index_lema4 = o.index_lema4;
  if (o.pic_r == "infinite") {
    pic.pic_R_order.reset();
  } else {
    pic.pic_R_order = std::stoull(o.pic_r);
  }
  pic.validate();
  return pic;
}

btq::QuotientGraph built(const btq::Level& level, const Options& o) {
  btq::QuotientGraph q = btq::build_quotient(level, o.depth, {o.threads});
  q.cusps = btq::certify_cusps(q, o.window);
  if (o.brute_force) {
    auto v = btq::edge_consistency_violations(q);
    for (const auto& x : btq::neighbor_accounting_violations(q)) v.push_back(x);
    for (const auto& x : btq::bipartite_violations(q)) v.push_back(x);
    if (!v.empty()) throw Inconsistent{v.front()};
  }
  return q;
}

std::string run_quotient(const Options& o) {
  const btq::Field field = make_field(o);
  const btq::Level level = btq::parse_level(o.level, field);
  const btq::QuotientGraph q = built(level, o);
  if (o.format == "dot") return btq::export_dot(q);
  if (o.format == "json") return btq::export_json(q);
  return btq::export_text(q);
}

std::string run_cusps(const Options& o, bool& mismatch) {
  const btq::Field field = make_field(o);
  const btq::Level level = btq::parse_level(o.level, field);
  const btq::QuotientGraph q = built(level, o);
  const btq::CuspCount f = btq::cusp_count(level, field.order(), picard(o));
  mismatch = f.exact ? q.cusps.size() != f.c_HD : q.cusps.size() > f.c_HD;
  std::ostringstream os;
  os << "certified=" << q.cusps.size() << " formula=" << f.c_HD << " exact=" << (f.exact ? "true" : "false") << "\n";
  if (f.serre_case) os << "serre_case=true\n";
  for (const auto& c : q.cusps) {
    os << "cusp germ=(" << c.germ.first << "," << c.germ.second << ") splitness=" << btq::to_string(c.splitness)
       << " stab_tower=";
    for (std::size_t k = 0; k < c.stab_tower.size(); ++k) os << (k ? "," : "") << c.stab_tower[k];
    os << "\n";
  }
  if (mismatch) os << "MISMATCH: certified count contradicts the formula\n";
  return os.str();
}

std::string run_formula(const Options& o) {
  const btq::Field field = make_field(o);
  const btq::Level level = btq::parse_level(o.level, field);
  const btq::FormulaReport r = btq::formula_report(level, field.order(), picard(o));
  if (o.format != "json") return btq::format_report(r);
  nlohmann::ordered_json j;
  j["alpha"] = r.alpha ? nlohmann::ordered_json(r.alpha->to_string()) : nlohmann::ordered_json(nullptr);
  j["c_HD"] = r.c_HD;
  j["exact"] = r.exact;
  j["serre_case"] = r.serre_case;
  j["card_D"] = r.split ? nlohmann::ordered_json(r.split->card_D) : nlohmann::ordered_json(nullptr);
  j["card_I"] = r.split ? nlohmann::ordered_json(r.split->card_I) : nlohmann::ordered_json(nullptr);
  j["verdict"] = btq::to_string(r.abelianization);
  return j.dump(2) + "\n";
}

std::string run_reduce(const Options& o) {
  const btq::Field field = make_field(o);
  const btq::BallVertex v = btq::parse_vertex(o.vertex, field);
  const btq::ReductionResult red = btq::reduce(v, field);
  if (!(btq::act(red.g, v) == btq::nagao_vertex(red.level_n))) throw Inconsistent{"reduction word misses v_n"};
  std::ostringstream os;
  os << "level " << red.level_n << "\nword [";
  for (std::size_t i = 0; i < red.word.size(); ++i) os << (i ? ", " : "") << red.word[i].to_string();
  os << "]\ng " << btq::format_matrix(red.g) << "\n";
  return os.str();
}

std::string run_stab(const Options& o) {
  const btq::Field field = make_field(o);
  const btq::Level level = btq::parse_level(o.level, field);
  const btq::BallVertex v = btq::parse_vertex(o.vertex, field);
  const btq::StabDescriptor sd = btq::stabilizer(v, level);
  std::ostringstream os;
  os << "vertex " << btq::format_vertex(v) << "\nlevel " << sd.level_n << "\norder " << sd.order() << "\n";
  os << "split_torus " << (sd.has_split_torus() ? "true" : "false") << "\n";
  const auto gens = btq::generators(sd);
  for (std::size_t k = 0; k < gens.size(); ++k) os << "g" << k << " " << btq::format_matrix(gens[k]) << "\n";
  if (o.brute_force) {
    const auto brute = btq::stabilizer_brute(v, level);
    bool same = brute.size() == sd.order();
    for (const auto& m : brute) same = same && sd.contains(m);
    os << "brute_force order " << brute.size() << (same ? " agrees" : " DISAGREES") << "\n";
    if (!same) throw Inconsistent{os.str()};
  }
  return os.str();
}

std::string run_orbit(const Options& o) {
  const btq::Field field = make_field(o);
  const btq::Level level = btq::parse_level(o.level, field);
  const btq::BallVertex v = btq::parse_vertex(o.vertex, field);
  const btq::BallVertex w = btq::parse_vertex(o.other, field);
  const auto h = btq::orbit_equivalent(v, w, level);
  std::ostringstream os;
  os << "equivalent " << (h ? "true" : "false") << "\n";
  if (h) {
    if (!btq::is_member(*h, level) || !(btq::act(*h, v) == w)) throw Inconsistent{"orbit witness fails"};
    os << "h " << btq::format_matrix(*h) << "\n";
  }
  if (o.brute_force) {
    const auto b = btq::orbit_equivalent_brute(v, w, level);
    os << "brute_force " << (b.has_value() == h.has_value() ? "agrees" : "DISAGREES") << "\n";
    if (b.has_value() != h.has_value()) throw Inconsistent{os.str()};
  }
  return os.str();
}

std::string run_amalgam(const Options& o) {
  const btq::Field field = make_field(o);
  const btq::Level level = btq::parse_level(o.level, field);
  const btq::QuotientGraph q = built(level, o);
  const btq::GraphOfGroups g = btq::build_graph_of_groups(q);
  const btq::Presentation p = btq::emit_presentation(g);
  if (o.format == "json") return btq::presentation_json(p);
  std::string out = btq::presentation_text(p);
  out += "ABELIANIZATION\n";
  try {
    const btq::AbelianGroup ab = btq::abelianization_of_line_amalgam(g);
    out += ab.to_string() + " (order " + std::to_string(ab.order) + ")\n";
  } catch (const btq::PreconditionError& e) {
    out += std::string("not computed: ") + e.what() + "\n";
  }
  return out;
}

std::string run_selftest(const Options& o, bool& failed) {
  btq::AcceptanceOptions a;
  a.threads = o.threads;
  std::string out;
  failed = false;
  for (const auto& r : btq::run_acceptance(a)) {
    out += btq::format_result(r, o.brute_force);
    failed = failed || !r.pass;
  }
  return out;
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + o.out);
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quotients of the Bruhat-Tits tree by Hecke congruence subgroups of GL2(F_q[t])"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--p", o.p, "characteristic")->check(CLI::PositiveNumber);
    sub->add_option("--s", o.s, "degree of F_q over F_p")->check(CLI::PositiveNumber);
    sub->add_option("--modulus", o.modulus, "F_q modulus over F_p, little-endian comma-separated coefficients");
    sub->add_option("--level", o.level, "level D, e.g. \"t^3;t+1\"; empty for D = 0");
    sub->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--out", o.out, "write output to this path");
    sub->add_flag("--brute-force", o.brute_force, "cross-check against the brute-force oracles");
  };
  auto add_graph = [&](CLI::App* sub) {
    sub->add_option("--depth", o.depth, "BFS depth")->check(CLI::PositiveNumber);
    sub->add_option("--window", o.window, "cusp certification window")->check(CLI::PositiveNumber);
  };
  auto add_format = [&](CLI::App* sub, std::vector<std::string> allowed) {
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember(allowed));
  };

  auto* quotient = app.add_subcommand("quotient", "build the quotient graph and export it");
  add_common(quotient);
  add_graph(quotient);
  add_format(quotient, {"text", "dot", "json"});

  auto* cusps = app.add_subcommand("cusps", "certify cusps and compare with the cusp formula");
  add_common(cusps);
  add_graph(cusps);

  auto* formula = app.add_subcommand("formula", "evaluate the cusp formulas and the abelianization verdict");
  add_common(formula);
  add_format(formula, {"text", "json"});
  formula->add_option("--g2", o.g2, "order of g(2)")->check(CLI::PositiveNumber);
  formula->add_option("--index-theorem", o.index_theorem, "[2Pic(C)+<P_inf> : <P_inf>]")->check(CLI::PositiveNumber);
  formula->add_option("--index-lema4", o.index_lema4, "[2Pic(C)+<P_a1..P_au,P_inf> : <P_inf>]")
      ->check(CLI::PositiveNumber);
  formula->add_option("--pic-r", o.pic_r, "|Pic(R)| or \"infinite\"");

  auto* reduce = app.add_subcommand("reduce", "reduce a vertex onto the Nagao ray");
  add_common(reduce);
  reduce->add_option("--vertex", o.vertex, "vertex, e.g. \"r=2;a=1*s^-1\"")->required();

  auto* stab = app.add_subcommand("stab", "stabilizer of a vertex in H_D");
  add_common(stab);
  stab->add_option("--vertex", o.vertex, "vertex")->required();

  auto* orbit = app.add_subcommand("orbit", "decide whether two vertices are H_D-equivalent");
  add_common(orbit);
  orbit->add_option("--vertex", o.vertex, "first vertex")->required();
  orbit->add_option("--other", o.other, "second vertex")->required();

  auto* amalgam = app.add_subcommand("amalgam", "emit the graph-of-groups presentation");
  add_common(amalgam);
  add_graph(amalgam);
  add_format(amalgam, {"text", "json"});

  auto* selftest = app.add_subcommand("selftest", "run the acceptance battery (--brute-force shows details)");
  add_common(selftest);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*quotient) {
      emit(o, run_quotient(o));
    } else if (*cusps) {
      bool mismatch = false;
      emit(o, run_cusps(o, mismatch));
      if (mismatch) return kInconsistent;
    } else if (*formula) {
      emit(o, run_formula(o));
    } else if (*reduce) {
      emit(o, run_reduce(o));
    } else if (*stab) {
      emit(o, run_stab(o));
    } else if (*orbit) {
      emit(o, run_orbit(o));
    } else if (*amalgam) {
      emit(o, run_amalgam(o));
    } else if (*selftest) {
      bool failed = false;
      emit(o, run_selftest(o, failed));
      if (failed) return kInconsistent;
    }
  } catch (const Inconsistent& e) {
    std::cerr << "inconsistent: " << e.what << "\n";
    return kInconsistent;
  } catch (const btq::ConsistencyError& e) {
    std::cerr << "inconsistent: " << e.what() << "\n";
    return kInconsistent;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return 0;
}

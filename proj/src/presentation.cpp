#include "btq/presentation.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "btq/errors.hpp"
#include "btq/linear.hpp"
#include "json.hpp"

namespace btq {

namespace {

const OrbitClass& cls(const QuotientGraph& q, int id) { return q.classes[static_cast<std::size_t>(id)]; }

FieldElement constant_entry(const RationalFunction& x) {
  return x.is_zero() ? FieldElement{0} : x.num().coeff(0);
}

Word inverse(const Word& w) {
  Word out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->generator, -it->exponent});
  return out;
}

Word concat(Word a, const Word& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

Word to_word(const GeneratorWord& gw, const std::string& prefix) {
  Word out;
  for (const auto& [i, e] : gw) out.push_back({prefix + "_g" + std::to_string(i), e});
  return out;
}

std::string vertex_prefix(int id) { return "v" + std::to_string(id); }

std::string torus_description(const StabDescriptor& sd, std::uint32_t q) {
  if (q == 2) return "trivial";
  return sd.has_split_torus() ? "F*xF*" : "F*";
}

// F_q-dimension of the frame elements [[1, b], [0, 1]].
int unipotent_fq_dimension(const StabDescriptor& sd) {
  const Field& field = *sd.field;
  if (sd.level_n >= 1) return sd.unipotent_dimension();
  std::uint64_t count = 0;
  for (const auto& block : sd.blocks) {
    const Matrix2& m = block.element;
    if (m.c.is_zero() && constant_entry(m.a) == field.one() && constant_entry(m.d) == field.one()) ++count;
  }
  int dim = 0;
  for (std::uint64_t x = 1; x < count; x *= field.order()) ++dim;
  return dim;
}

}  // namespace

bool GraphOfGroups::in_finite_part(int id) const {
  return std::binary_search(finite_part.begin(), finite_part.end(), id);
}

GraphOfGroups build_graph_of_groups(const QuotientGraph& q, std::uint64_t element_cap) {
  const Field& field = *q.field;
  GraphOfGroups g;
  g.base = &q;
  g.tail_of.assign(q.classes.size(), -1);

  std::set<int> ends;
  for (std::size_t i = 0; i < q.cusps.size(); ++i) {
    const CuspDescriptor& cusp = q.cusps[i];
    std::vector<int> chain = cusp.chain;
    ends.insert(chain.back());
    for (int id : chain) {
      if (g.tail_of[static_cast<std::size_t>(id)] >= 0) throw PreconditionError("cusp chains overlap");
      g.tail_of[static_cast<std::size_t>(id)] = static_cast<int>(i);
    }
    while (true) {
      const int p = cls(q, chain.front()).parent;
      if (p < 0 || g.tail_of[static_cast<std::size_t>(p)] >= 0 || !closing_step(q, p, chain.front())) break;
      g.tail_of[static_cast<std::size_t>(p)] = static_cast<int>(i);
      chain.insert(chain.begin(), p);
    }
    g.tail_of[static_cast<std::size_t>(chain.front())] = -1;

    CuspGroupDescriptor t;
    t.cusp = static_cast<int>(i);
    t.chain = chain;
    t.splitness = cusp.splitness;
    t.torus_description = torus_description(cls(q, chain.back()).stab, field.order());
    for (int id : chain) {
      const StabDescriptor& sd = cls(q, id).stab;
      t.unipotent_tower.push_back(unipotent_fq_dimension(sd));
      t.stab_tower.push_back(sd.order());
    }
    const OrbitClass& junction = cls(q, chain[0]);
    t.germ_edge_group_order =
        stabilizer(junction.representative, q.level, {cls(q, chain[1]).representative}).order();
    g.tails.push_back(std::move(t));
  }
  for (const auto& c : q.classes) {
    if (c.depth == q.depth && !ends.count(c.id)) {
      throw PreconditionError("boundary class " + std::to_string(c.id) + " lies on no certified cusp");
    }
  }

  for (const auto& c : q.classes) {
    if (g.tail_of[static_cast<std::size_t>(c.id)] >= 0) continue;
    if (!c.expanded) throw PreconditionError("finite part reaches the search boundary at class " + std::to_string(c.id));
    g.finite_part.push_back(c.id);
  }
  for (int id : g.finite_part) {
    const StabDescriptor& sd = cls(q, id).stab;
    g.vertex_elements.push_back(sd.order() <= element_cap ? materialize(sd, element_cap) : std::vector<Matrix2>{});
  }

  for (int a : g.finite_part) {
    const OrbitClass& src = cls(q, a);
    for (std::size_t k = 0; k < src.orbits.size(); ++k) {
      const NeighborOrbit& o = src.orbits[k];
      if (o.target <= a || !g.in_finite_part(o.target)) continue;
      const OrbitClass& dst = cls(q, o.target);
      GroupEdge e;
      e.id = static_cast<int>(g.edges.size());
      e.src = a;
      e.dst = o.target;
      e.orbit_index = static_cast<int>(k);
      e.in_tree = dst.parent == a && o.vertex == dst.representative;
      e.g = e.in_tree ? Matrix2::identity(field) : o.witness;
      e.group = stabilizer(src.representative, q.level, {o.vertex});
      e.group_generators = generators(e.group);
      for (const auto& b : e.group_generators) {
        if (!(act(e.to_dst(b), dst.representative) == dst.representative)) {
          throw ConsistencyError("edge injection misses the stabilizer of class " + std::to_string(dst.id));
        }
      }
      g.edges.push_back(std::move(e));
    }
  }
  return g;
}

Word reduce_word(Word w) {
  Word out;
  for (auto& l : w) {
    if (l.exponent == 0) continue;
    if (!out.empty() && out.back().generator == l.generator) {
      out.back().exponent += l.exponent;
      if (out.back().exponent == 0) out.pop_back();
    } else {
      out.push_back(std::move(l));
    }
  }
  return out;
}

std::string format_word(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (const auto& l : w) {
    if (!out.empty()) out += ' ';
    out += l.generator;
    if (l.exponent != 1) out += '^' + std::to_string(l.exponent);
  }
  return out;
}

Matrix2 evaluate_word(const Word& w, const std::vector<NamedGenerator>& gens, const Field& field) {
  std::map<std::string, const Matrix2*> by_name;
  for (const auto& g : gens) by_name[g.name] = &g.matrix;
  Matrix2 out = Matrix2::identity(field);
  for (const auto& l : w) {
    const auto it = by_name.find(l.generator);
    if (it == by_name.end()) throw DomainError("unknown generator " + l.generator);
    const Matrix2 m = l.exponent < 0 ? it->second->inverse() : *it->second;
    for (int k = 0; k < std::abs(l.exponent); ++k) out = out * m;
  }
  return out;
}

Presentation emit_presentation(const GraphOfGroups& g) {
  const QuotientGraph& q = *g.base;
  const Field& field = *q.field;
  Presentation p;

  for (std::size_t i = 0; i < g.finite_part.size(); ++i) {
    const int id = g.finite_part[i];
    const StabDescriptor& sd = cls(q, id).stab;
    const auto gens = generators(sd);
    for (std::size_t k = 0; k < gens.size(); ++k) {
      p.generators.push_back({vertex_prefix(id) + "_g" + std::to_string(k), gens[k], vertex_prefix(id)});
    }
  }
  for (const auto& e : g.edges) {
    if (!e.in_tree) p.generators.push_back({"h" + std::to_string(e.id), e.g, "e" + std::to_string(e.id)});
  }

  // Vertex groups: W(x) s W(xs)^-1 over all elements x and generators s.
  for (std::size_t i = 0; i < g.finite_part.size(); ++i) {
    const int id = g.finite_part[i];
    const StabDescriptor& sd = cls(q, id).stab;
    const auto& elements = g.vertex_elements[i];
    if (elements.empty()) {
      throw SizeError("vertex group of class " + std::to_string(id) + " is too large to present");
    }
    const std::string prefix = vertex_prefix(id);
    std::map<std::string, Word> words;
    for (const auto& x : elements) words[format_matrix(x)] = to_word(express(sd, sd.to_frame(x)), prefix);
    const auto gens = generators(sd);
    std::set<std::string> seen;
    int count = 0;
    for (const auto& x : elements) {
      const Word& wx = words.at(format_matrix(x));
      for (std::size_t k = 0; k < gens.size(); ++k) {
        const auto it = words.find(format_matrix(x * gens[k]));
        if (it == words.end()) throw ConsistencyError("vertex group of class " + std::to_string(id) + " is not closed");
        Word r = reduce_word(concat(concat(wx, {{prefix + "_g" + std::to_string(k), 1}}), inverse(it->second)));
        if (r.empty() || !seen.insert(format_word(r)).second) continue;
        p.relations.push_back({prefix + ".r" + std::to_string(count++), std::move(r)});
      }
    }
  }

  for (const auto& e : g.edges) {
    const StabDescriptor& src = cls(q, e.src).stab;
    const StabDescriptor& dst = cls(q, e.dst).stab;
    const std::string h = "h" + std::to_string(e.id);
    for (std::size_t j = 0; j < e.group_generators.size(); ++j) {
      const Matrix2& b = e.group_generators[j];
      Word into_dst = to_word(express(dst, dst.to_frame(e.to_dst(b))), vertex_prefix(e.dst));
      if (!e.in_tree) into_dst = concat(concat({{h, 1}}, into_dst), {{h, -1}});
      const Word into_src = to_word(express(src, src.to_frame(b)), vertex_prefix(e.src));
      Word r = reduce_word(concat(into_dst, inverse(into_src)));
      if (r.empty()) continue;
      p.relations.push_back({"e" + std::to_string(e.id) + ".r" + std::to_string(j), std::move(r)});
    }
  }

  for (const auto& rel : p.relations) {
    if (!(evaluate_word(rel.word, p.generators, field) == Matrix2::identity(field))) {
      throw ConsistencyError("relation " + rel.label + " does not evaluate to the identity");
    }
  }

  for (std::size_t i = 0; i < g.tails.size(); ++i) {
    const auto& t = g.tails[i];
    std::ostringstream os;
    os << "tail " << i << ": junction=v" << t.chain.front() << " chain=";
    for (std::size_t k = 0; k < t.chain.size(); ++k) os << (k ? "," : "") << t.chain[k];
    os << " splitness=" << to_string(t.splitness) << " torus=" << t.torus_description << " unipotent_tower=";
    for (std::size_t k = 0; k < t.unipotent_tower.size(); ++k) os << (k ? "," : "") << t.unipotent_tower[k];
    os << " stab_tower=";
    for (std::size_t k = 0; k < t.stab_tower.size(); ++k) os << (k ? "," : "") << t.stab_tower[k];
    os << " germ_edge_group=" << t.germ_edge_group_order;
    p.tail_summaries.push_back(os.str());
  }
  return p;
}

std::string presentation_text(const Presentation& p) {
  std::ostringstream os;
  os << "GENERATORS\n";
  for (const auto& g : p.generators) os << g.name << " = " << format_matrix(g.matrix) << "\n";
  os << "RELATIONS\n";
  for (const auto& r : p.relations) os << r.label << ": " << format_word(r.word) << "\n";
  os << "TAILS\n";
  for (const auto& t : p.tail_summaries) os << t << "\n";
  return os.str();
}

std::string presentation_json(const Presentation& p) {
  nlohmann::ordered_json j;
  j["generators"] = nlohmann::ordered_json::array();
  for (const auto& g : p.generators) {
    j["generators"].push_back({{"name", g.name}, {"owner", g.owner}, {"matrix", format_matrix(g.matrix)}});
  }
  j["relations"] = nlohmann::ordered_json::array();
  for (const auto& r : p.relations) {
    nlohmann::ordered_json word = nlohmann::ordered_json::array();
    for (const auto& l : r.word) word.push_back({l.generator, l.exponent});
    j["relations"].push_back({{"label", r.label}, {"word", word}});
  }
  j["tails"] = p.tail_summaries;
  return j.dump(2) + "\n";
}

FieldSpec field_spec_for_order(std::uint32_t q) {
  for (std::uint32_t p = 2; p <= q; ++p) {
    if (!is_prime(p) || q % p != 0) continue;
    std::uint32_t s = 0;
    std::uint32_t x = q;
    while (x % p == 0) {
      x /= p;
      ++s;
    }
    if (x != 1) break;
    return {p, s, {}};
  }
  throw DomainError("q = " + std::to_string(q) + " is not a prime power");
}

AmalgamReport amalgam_example_check(std::uint32_t q, int depth, int threads) {
  AmalgamReport report;
  const Field field(field_spec_for_order(q));
  const Level level = parse_level("t", field);
  QuotientGraph Q = build_quotient(level, depth, {threads});
  Q.cusps = certify_cusps(Q, 3);

  bool pass = true;
  auto check = [&](bool ok, const std::string& what) {
    report.diagnostics.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
    pass = pass && ok;
  };
  check(is_path(Q), "quotient is a path");
  check(Q.cusps.size() == 2, "two certified cusps (found " + std::to_string(Q.cusps.size()) + ")");
  if (!pass) {
    report.pass = false;
    return report;
  }

  const GraphOfGroups G = build_graph_of_groups(Q);
  check(G.tails.size() == 2 && G.finite_part.size() == 2 && G.edges.size() == 1,
        "finite part is one edge between the two tail junctions");
  if (!pass) {
    report.pass = false;
    return report;
  }

  const GroupEdge& e = G.edges.front();
  const std::uint64_t torus = static_cast<std::uint64_t>(q - 1) * (q - 1);
  bool diagonal = e.group.order() == torus;
  for (const auto& x : materialize(e.group, torus)) {
    diagonal = diagonal && x.b.is_zero() && x.c.is_zero() && x.a.is_constant() && x.d.is_constant();
  }
  check(diagonal, "edge group is the diagonal torus of order " + std::to_string(torus));

  const Polynomial& modulus = level.modulus();
  auto tail_is = [&](const CuspGroupDescriptor& t, bool upper) {
    for (int id : t.chain) {
      for (const auto& x : generators(cls(Q, id).stab)) {
        if (!x.a.is_constant() || !x.d.is_constant() || !x.b.is_polynomial() || !x.c.is_polynomial()) return false;
        if (upper && !x.c.is_zero()) return false;
        if (!upper && (!x.b.is_zero() || !(x.c.num() % modulus).is_zero())) return false;
      }
    }
    return true;
  };
  const bool first_upper = tail_is(G.tails[0], true);
  const auto& up = first_upper ? G.tails[0] : G.tails[1];
  const auto& low = first_upper ? G.tails[1] : G.tails[0];
  check(tail_is(up, true), "one tail is upper triangular over (F*, F[t])");
  check(tail_is(low, false), "the other tail is lower triangular with c in tF[t]");

  const std::string expected_torus = q == 2 ? "trivial" : "F*xF*";
  for (const auto& t : G.tails) {
    check(t.torus_description == expected_torus, "tail at v" + std::to_string(t.chain.front()) + " has torus " +
                                                      t.torus_description);
    bool tower = true;
    for (std::size_t k = 1; k < t.unipotent_tower.size(); ++k) {
      tower = tower && t.unipotent_tower[k] == t.unipotent_tower[k - 1] + 1;
    }
    check(tower, "unipotent tower grows by one along the tail at v" + std::to_string(t.chain.front()));
    check(t.germ_edge_group_order == t.stab_tower.front(), "germ edge group equals the junction stabilizer");
  }

  try {
    const Presentation p = emit_presentation(G);
    check(true, "presentation emitted with " + std::to_string(p.relations.size()) + " verified relations");
  } catch (const ConsistencyError& err) {
    check(false, std::string("presentation: ") + err.what());
  }
  report.pass = pass;
  return report;
}

std::string AbelianGroup::to_string() const {
  if (invariants.empty()) return "trivial";
  std::string out;
  for (auto n : invariants) {
    if (!out.empty()) out += " x ";
    out += "Z/" + std::to_string(n);
  }
  return out;
}

AbelianGroup abelianization_of_line_amalgam(const GraphOfGroups& g) {
  const QuotientGraph& q = *g.base;
  const Field& field = *q.field;
  const std::uint32_t order = field.order();
  if (!is_path(q) || g.tails.size() != 2 || g.finite_part.size() != 2 || g.edges.size() != 1) {
    throw PreconditionError("not a line amalgam: need a path with two tails joined by one edge");
  }
  if (order == 2) throw PreconditionError("q = 2: the tails carry no torus, so their unipotent parts survive");
  const GroupEdge& e = g.edges.front();

  // P_i^ab = F* x F*: the full torus commutes the unipotent part away.
  std::vector<const StabDescriptor*> frames;
  std::vector<int> junctions;
  for (const auto& t : g.tails) {
    if (t.splitness != Splitness::split) throw PreconditionError("tail at v" + std::to_string(t.chain.front()) + " is not split");
    const StabDescriptor& sd = cls(q, t.chain.back()).stab;
    std::set<std::pair<std::uint32_t, std::uint32_t>> pairs;
    for (const auto& b : sd.blocks) pairs.insert({b.alpha.code, b.beta.code});
    if (pairs.size() != static_cast<std::size_t>(order - 1) * (order - 1)) {
      throw PreconditionError("tail torus is not all of F* x F*");
    }
    frames.push_back(&sd);
    junctions.push_back(t.chain.front());
  }

  const std::int64_t m = order - 1;
  std::vector<std::vector<std::int64_t>> rows;
  for (int k = 0; k < 4; ++k) {
    std::vector<std::int64_t> r(4, 0);
    r[static_cast<std::size_t>(k)] = m;
    rows.push_back(r);
  }
  for (const auto& b : e.group_generators) {
    std::vector<std::int64_t> r;
    for (std::size_t i = 0; i < 2; ++i) {
      const Matrix2 x = junctions[i] == e.src ? b : e.to_dst(b);
      const Matrix2 s = frames[i]->to_frame(x);
      if (!frames[i]->contains_frame(s)) throw ConsistencyError("edge group does not embed in its tail");
      r.push_back(field.discrete_log(constant_entry(s.a)));
      r.push_back(field.discrete_log(constant_entry(s.d)));
    }
    rows.push_back(r);
  }

  AbelianGroup out;
  for (auto d : smith_diagonal(rows)) {
    if (d == 0) throw ConsistencyError("abelianization has a free part");
    if (d > 1) {
      out.invariants.push_back(d);
      out.order *= static_cast<std::uint64_t>(d);
    }
  }
  std::sort(out.invariants.begin(), out.invariants.end());
  return out;
}

}  // namespace btq

#include "btq/quotient.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "json.hpp"

#include "btq/errors.hpp"

namespace btq {

std::string to_string(Splitness s) {
  switch (s) {
    case Splitness::split:
      return "split";
    case Splitness::nonsplit:
      return "nonsplit";
    case Splitness::indeterminate:
      return "indeterminate";
  }
  return "indeterminate";
}

std::optional<int> OrbitClass::valency() const {
  if (!expanded) return std::nullopt;
  return static_cast<int>(orbits.size());
}

namespace {

struct Expansion {
  std::vector<BallVertex> nbrs;
  std::vector<NeighborOrbit> orbits;
  std::vector<ReductionResult> reductions;  // one per orbit
};

int find_root(std::vector<int>& parent, int x) {
  while (parent[static_cast<std::size_t>(x)] != x) {
    parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    x = parent[static_cast<std::size_t>(x)];
  }
  return x;
}

// Stab-orbits on the neighbors of v, ordered by their first member.
std::vector<NeighborOrbit> neighbor_orbits(const std::vector<BallVertex>& nbrs,
                                           const std::vector<Matrix2>& gens) {
  std::unordered_map<BallVertex, int, VertexHash> index;
  for (std::size_t i = 0; i < nbrs.size(); ++i) index.emplace(nbrs[i], static_cast<int>(i));
  std::vector<int> parent(nbrs.size());
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& g : gens) {
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      const auto it = index.find(act(g, nbrs[i]));
      if (it == index.end()) throw ConsistencyError("stabilizer element moved a neighbor off the star");
      const int a = find_root(parent, static_cast<int>(i));
      const int b = find_root(parent, it->second);
      if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
  }
  std::map<int, NeighborOrbit> by_root;
  for (std::size_t i = 0; i < nbrs.size(); ++i) {
    const int root = find_root(parent, static_cast<int>(i));
    auto& orbit = by_root[root];
    if (orbit.size == 0) {
      orbit.neighbor_index = static_cast<int>(i);
      orbit.vertex = nbrs[i];
    }
    ++orbit.size;
  }
  std::vector<NeighborOrbit> out;
  for (auto& kv : by_root) out.push_back(std::move(kv.second));
  return out;
}

Expansion expand(const OrbitClass& c, const Field& field) {
  Expansion e;
  e.nbrs = neighbors(c.representative, field);
  e.orbits = neighbor_orbits(e.nbrs, generators(c.stab));
  for (const auto& orbit : e.orbits) e.reductions.push_back(reduce(orbit.vertex, field));
  return e;
}

template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
  const std::size_t workers = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, threads)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += workers) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

OrbitClass make_class(int id, BallVertex rep, ReductionResult reduction, int depth, int parent) {
  OrbitClass c;
  c.id = id;
  c.representative = std::move(rep);
  c.level_n = reduction.level_n;
  c.reduction = std::move(reduction);
  c.depth = depth;
  c.parent = parent;
  return c;
}

}  // namespace

QuotientGraph build_quotient(const Level& level, int depth, const BuildOptions& options) {
  if (depth < 1) throw BoundError("depth must be at least 1");
  const Field& field = level.field();
  QuotientGraph q(level);
  q.depth = depth;

  const BallVertex base = nagao_vertex(0);
  q.classes.push_back(make_class(0, base, reduce(base, field), 0, -1));
  std::map<int, std::vector<int>> buckets{{0, {0}}};

  std::vector<int> layer{0};
  for (int d = 0; d < depth && !layer.empty(); ++d) {
    std::vector<Expansion> results(layer.size());
    parallel_for(layer.size(), options.threads, [&](std::size_t i) {
      OrbitClass& c = q.classes[static_cast<std::size_t>(layer[i])];
      c.stab = stabilizer(c.representative, level);
      results[i] = expand(c, field);
    });

    std::vector<int> next;
    for (std::size_t i = 0; i < layer.size(); ++i) {
      const int src = layer[i];
      Expansion& e = results[i];
      for (std::size_t k = 0; k < e.orbits.size(); ++k) {
        NeighborOrbit& orbit = e.orbits[k];
        const ReductionResult& red = e.reductions[k];
        auto& bucket = buckets[red.level_n];
        for (int cand : bucket) {
          auto h = orbit_equivalent(q.classes[static_cast<std::size_t>(cand)].reduction, red, level);
          if (h) {
            orbit.target = cand;
            orbit.witness = std::move(*h);
            break;
          }
        }
        if (orbit.target < 0) {
          const int id = static_cast<int>(q.classes.size());
          q.classes.push_back(make_class(id, orbit.vertex, red, d + 1, src));
          bucket.push_back(id);
          next.push_back(id);
          orbit.target = id;
          orbit.witness = Matrix2::identity(field);
        }
      }
      OrbitClass& c = q.classes[static_cast<std::size_t>(src)];
      c.orbits = std::move(e.orbits);
      c.expanded = true;
    }
    layer = std::move(next);
  }

  std::vector<int> pending;
  for (const auto& c : q.classes) {
    if (!c.expanded) pending.push_back(c.id);
  }
  parallel_for(pending.size(), options.threads, [&](std::size_t i) {
    OrbitClass& c = q.classes[static_cast<std::size_t>(pending[i])];
    c.stab = stabilizer(c.representative, level);
  });

  std::map<std::pair<int, int>, QuotientEdge> edges;
  for (const auto& c : q.classes) {
    for (const auto& orbit : c.orbits) {
      const int a = std::min(c.id, orbit.target);
      const int b = std::max(c.id, orbit.target);
      auto& edge = edges[{a, b}];
      edge.src = a;
      edge.dst = b;
      if (c.id == a) {
        ++edge.multiplicity;
      } else {
        edge.reverse = edge.reverse.value_or(0) + 1;
      }
    }
  }
  for (auto& kv : edges) q.edges.push_back(kv.second);
  return q;
}

bool closing_step(const QuotientGraph& q, int from, int to) {
  const OrbitClass& v = q.classes[static_cast<std::size_t>(from)];
  const OrbitClass& next = q.classes[static_cast<std::size_t>(to)];
  if (!v.expanded) return false;
  // (d): the stabilizer of v fixes the next vertex.
  for (const auto& g : generators(v.stab)) {
    if (!(act(g, next.representative) == next.representative)) return false;
  }
  // (e): the remaining q neighbors form one orbit.
  if (v.orbits.size() != 2) return false;
  const bool first = v.orbits[0].vertex == next.representative;
  const auto& to_next = first ? v.orbits[0] : v.orbits[1];
  const auto& rest = first ? v.orbits[1] : v.orbits[0];
  if (!(to_next.vertex == next.representative) || to_next.size != 1) return false;
  if (rest.size != static_cast<int>(q.field->order())) return false;
  return next.stab.order() == v.stab.order() * q.field->order();
}

std::vector<CuspDescriptor> certify_cusps(const QuotientGraph& q, int window) {
  if (window < 2) throw BoundError("window must be at least 2");
  if (q.depth < window + 2) {
    throw BoundError("depth " + std::to_string(q.depth) + " is too small for window " + std::to_string(window));
  }
  std::vector<CuspDescriptor> out;
  for (const auto& boundary : q.classes) {
    if (boundary.depth != q.depth) continue;
    std::vector<int> chain{boundary.id};
    while (static_cast<int>(chain.size()) < window + 1 && q.classes[static_cast<std::size_t>(chain.back())].parent >= 0) {
      chain.push_back(q.classes[static_cast<std::size_t>(chain.back())].parent);
    }
    if (static_cast<int>(chain.size()) < window + 1) continue;
    std::reverse(chain.begin(), chain.end());

    bool ok = true;
    for (int k = 0; k < window && ok; ++k) {
      ok = closing_step(q, chain[static_cast<std::size_t>(k)], chain[static_cast<std::size_t>(k) + 1]);
    }
    if (!ok) continue;

    CuspDescriptor cusp;
    cusp.germ = {chain[0], chain[1]};
    cusp.certified_depth = window;
    cusp.chain = chain;
    for (int id : chain) cusp.stab_tower.push_back(q.classes[static_cast<std::size_t>(id)].stab.order());
    cusp.splitness = classify_splitness(cusp, q);
    out.push_back(std::move(cusp));
  }
  return out;
}

Splitness classify_splitness(const CuspDescriptor& c, const QuotientGraph& q) {
  if (q.field->order() == 2) return Splitness::indeterminate;
  for (int id : c.chain) {
    if (q.classes[static_cast<std::size_t>(id)].stab.has_split_torus()) return Splitness::split;
  }
  return Splitness::nonsplit;
}

std::vector<std::string> edge_consistency_violations(const QuotientGraph& q) {
  std::vector<std::string> out;
  for (const auto& e : q.edges) {
    const bool both = q.classes[static_cast<std::size_t>(e.src)].expanded &&
                      q.classes[static_cast<std::size_t>(e.dst)].expanded;
    if (both && e.reverse.value_or(-1) != e.multiplicity) {
      out.push_back("edge " + std::to_string(e.src) + "-" + std::to_string(e.dst) + ": " +
                    std::to_string(e.multiplicity) + " vs " + std::to_string(e.reverse.value_or(-1)));
    }
  }
  return out;
}

std::vector<std::string> neighbor_accounting_violations(const QuotientGraph& q) {
  std::vector<std::string> out;
  const auto valency = static_cast<std::uint64_t>(q.field->order()) + 1;
  for (const auto& c : q.classes) {
    if (!c.expanded) continue;
    std::uint64_t total = 0;
    const auto nbrs = neighbors(c.representative, *q.field);
    for (const auto& orbit : c.orbits) {
      // Orbit-stabilizer with the pointwise stabilizer solved independently.
      const StabDescriptor edge = stabilizer(c.representative, q.level, {orbit.vertex});
      const std::uint64_t size = c.stab.order() / edge.order();
      if (size * edge.order() != c.stab.order() || size != static_cast<std::uint64_t>(orbit.size)) {
        out.push_back("class " + std::to_string(c.id) + ": orbit size mismatch");
      }
      total += size;
    }
    if (total != valency) out.push_back("class " + std::to_string(c.id) + ": neighbors sum to " + std::to_string(total));
  }
  return out;
}

std::vector<std::string> bipartite_violations(const QuotientGraph& q) {
  std::vector<std::string> out;
  for (const auto& e : q.edges) {
    const int a = q.classes[static_cast<std::size_t>(e.src)].representative.r;
    const int b = q.classes[static_cast<std::size_t>(e.dst)].representative.r;
    if (((a - b) % 2 + 2) % 2 != 1) {
      out.push_back("edge " + std::to_string(e.src) + "-" + std::to_string(e.dst) + " joins equal parities");
    }
  }
  return out;
}

namespace {

std::vector<int> degrees(const QuotientGraph& q) {
  std::vector<int> deg(q.classes.size(), 0);
  for (const auto& e : q.edges) {
    deg[static_cast<std::size_t>(e.src)] += e.multiplicity;
    deg[static_cast<std::size_t>(e.dst)] += e.multiplicity;
  }
  return deg;
}

}  // namespace

bool is_path(const QuotientGraph& q) {
  if (q.classes.empty()) return false;
  if (q.edges.size() + 1 != q.classes.size()) return false;
  for (const auto& e : q.edges) {
    if (e.multiplicity != 1 || e.src == e.dst) return false;
  }
  const auto deg = degrees(q);
  // Every class is reached from v0 by its parent chain, so the graph is
  // connected; with |E| = |V| - 1 it is a tree.
  return std::all_of(deg.begin(), deg.end(), [](int d) { return d <= 2; });
}

bool is_ray_from_base(const QuotientGraph& q) {
  if (!is_path(q)) return false;
  return q.classes.size() == 1 || degrees(q)[0] == 1;
}

namespace {

std::vector<const OrbitClass*> sorted_classes(const QuotientGraph& q) {
  std::vector<const OrbitClass*> out;
  for (const auto& c : q.classes) out.push_back(&c);
  std::stable_sort(out.begin(), out.end(), [](const OrbitClass* a, const OrbitClass* b) {
    if (a->level_n != b->level_n) return a->level_n < b->level_n;
    if (vertex_less(a->representative, b->representative)) return true;
    if (vertex_less(b->representative, a->representative)) return false;
    return a->id < b->id;
  });
  return out;
}

std::optional<Splitness> cusp_at(const QuotientGraph& q, int id) {
  for (const auto& c : q.cusps) {
    if (c.chain.back() == id) return c.splitness;
  }
  return std::nullopt;
}

}  // namespace

std::string export_dot(const QuotientGraph& q) {
  std::ostringstream out;
  out << "graph quotient {\n";
  out << "  label=\"F_" << q.field->order() << " D=" << q.level.to_string() << " depth=" << q.depth << "\";\n";
  for (const OrbitClass* c : sorted_classes(q)) {
    out << "  c" << c->id << " [label=\"n=" << c->level_n << "\\n|S|=" << c->stab.order();
    if (auto s = cusp_at(q, c->id)) out << "\\ncusp " << to_string(*s);
    out << "\"];\n";
  }
  for (const auto& e : q.edges) {
    out << "  c" << e.src << " -- c" << e.dst;
    if (e.multiplicity > 1) out << " [label=\"" << e.multiplicity << "\"]";
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::string export_json(const QuotientGraph& q) {
  nlohmann::ordered_json j;
  j["field"] = {{"p", q.field->characteristic()}, {"s", q.field->degree()}};
  j["level"] = q.level.to_string();
  j["depth"] = q.depth;
  j["classes"] = nlohmann::ordered_json::array();
  for (const OrbitClass* c : sorted_classes(q)) {
    nlohmann::ordered_json cj;
    cj["id"] = c->id;
    cj["rep"] = format_vertex(c->representative);
    cj["level_n"] = c->level_n;
    cj["stab_order"] = c->stab.order();
    if (auto v = c->valency()) {
      cj["valency"] = *v;
    } else {
      cj["valency"] = nullptr;
    }
    j["classes"].push_back(std::move(cj));
  }
  j["edges"] = nlohmann::ordered_json::array();
  for (const auto& e : q.edges) j["edges"].push_back({{"src", e.src}, {"dst", e.dst}, {"mult", e.multiplicity}});
  j["cusps"] = nlohmann::ordered_json::array();
  for (const auto& c : q.cusps) {
    j["cusps"].push_back({{"germ", {c.germ.first, c.germ.second}},
                          {"split", to_string(c.splitness)},
                          {"tower", c.stab_tower}});
  }
  return j.dump(2) + "\n";
}

std::string export_text(const QuotientGraph& q) {
  std::ostringstream out;
  out << "field F_" << q.field->order() << " level " << q.level.to_string() << " depth " << q.depth << "\n";
  out << "classes " << q.classes.size() << "\n";
  for (const OrbitClass* c : sorted_classes(q)) {
    out << "  " << c->id << " rep " << format_vertex(c->representative) << " n=" << c->level_n
        << " |S|=" << c->stab.order() << " valency=";
    if (auto v = c->valency()) {
      out << *v;
    } else {
      out << "-";
    }
    out << "\n";
  }
  out << "edges " << q.edges.size() << "\n";
  for (const auto& e : q.edges) out << "  " << e.src << " -- " << e.dst << " x" << e.multiplicity << "\n";
  out << "cusps " << q.cusps.size() << "\n";
  for (const auto& c : q.cusps) {
    out << "  germ (" << c.germ.first << "," << c.germ.second << ") " << to_string(c.splitness) << " tower";
    for (auto t : c.stab_tower) out << ' ' << t;
    out << "\n";
  }
  return out.str();
}

}  // namespace btq

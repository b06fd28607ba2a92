#include "gvm/graphing.hpp"

#include <algorithm>
#include <stdexcept>

namespace gvm {

WeightMonoid WeightMonoid::generic(GenericTable table) {
  const std::size_t n = table.names.size();
  if (n == 0 || table.unit >= n || table.table.size() != n)
    throw std::invalid_argument("malformed monoid table");
  for (const auto& row : table.table) {
    if (row.size() != n) throw std::invalid_argument("malformed monoid table");
    for (auto v : row)
      if (v >= n) throw std::invalid_argument("monoid table entry out of range");
  }
  const auto& t = table.table;
  for (std::size_t a = 0; a < n; ++a) {
    if (t[a][table.unit] != a || t[table.unit][a] != a) throw std::invalid_argument("monoid unit law fails");
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (t[t[a][b]][c] != t[a][t[b][c]]) throw std::invalid_argument("monoid table is not associative");
  }
  WeightMonoid m(Kind::Generic);
  m.table_ = std::move(table);
  return m;
}

std::string to_string(const WeightMonoid& m) {
  switch (m.kind()) {
    case WeightMonoid::Kind::Trivial: return "trivial";
    case WeightMonoid::Kind::Probabilities: return "probabilities";
    case WeightMonoid::Kind::Generic: {
      std::string out = "generic(";
      for (std::size_t i = 0; i < m.table().names.size(); ++i) out += (i ? "," : "") + m.table().names[i];
      return out + ")";
    }
  }
  return "?";
}

bool Weight::operator==(const Weight& other) const {
  if (is_rational() != other.is_rational()) return false;
  return is_rational() ? rational() == other.rational() : index() == other.index();
}

std::strong_ordering Weight::operator<=>(const Weight& other) const {
  if (is_rational() != other.is_rational())
    return is_rational() ? std::strong_ordering::less : std::strong_ordering::greater;
  return is_rational() ? compare(rational(), other.rational()) : index() <=> other.index();
}

std::string to_string(const Weight& w) {
  return w.is_rational() ? to_string(w.rational()) : "#" + std::to_string(w.index());
}

Weight unit_of(const WeightMonoid& m) {
  if (m.kind() == WeightMonoid::Kind::Generic) return Weight::element(m.table().unit);
  return Weight(Rational(1));
}

bool belongs(const Weight& w, const WeightMonoid& m) {
  switch (m.kind()) {
    case WeightMonoid::Kind::Trivial: return w.is_rational() && w.rational() == 1;
    case WeightMonoid::Kind::Probabilities:
      return w.is_rational() && w.rational() >= 0 && w.rational() <= 1;
    case WeightMonoid::Kind::Generic: return !w.is_rational() && w.index() < m.table().names.size();
  }
  return false;
}

Weight multiply(const WeightMonoid& m, const Weight& a, const Weight& b) {
  if (m.kind() == WeightMonoid::Kind::Generic) return Weight::element(m.table().table[a.index()][b.index()]);
  return Weight(Rational(a.rational() * b.rational()));
}

WeightMonoid common_monoid(const WeightMonoid& a, const WeightMonoid& b) {
  if (a == b) return a;
  using K = WeightMonoid::Kind;
  if (a.kind() != K::Generic && b.kind() != K::Generic) return WeightMonoid::probabilities();
  throw std::invalid_argument("weight monoids " + to_string(a) + " and " + to_string(b) + " do not match");
}

std::vector<Violation> validate(const Graphing& g) {
  std::vector<Violation> out;
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    const Edge& e = g.edges[k];
    if (!belongs(e.weight, g.weights)) out.push_back({k, "weight not in monoid"});
    if (!is_subset(e.source, g.carrier)) out.push_back({k, "source not in carrier"});
    auto member = in_microcosm(e.realizer, g.microcosm);
    if (!member.member)
      out.push_back({k, member.bounded ? "realizer not in microcosm (word search bound reached)"
                                       : "realizer not in microcosm"});
    if (domain_of(e.realizer, e.source) != e.source) {
      out.push_back({k, "source outside realizer domain"});
      continue;
    }
    if (!is_subset(e.target(), g.carrier)) out.push_back({k, "target not in carrier"});
  }
  return out;
}

std::string to_string(GraphingClass c) {
  switch (c) {
    case GraphingClass::Deterministic: return "deterministic";
    case GraphingClass::NonDeterministic: return "nondeterministic";
    case GraphingClass::Probabilistic: return "probabilistic";
    case GraphingClass::General: return "general";
  }
  return "?";
}

namespace {

bool all_unit(const Graphing& g) {
  Weight unit = unit_of(g.weights);
  return std::all_of(g.edges.begin(), g.edges.end(), [&](const Edge& e) { return e.weight == unit; });
}

bool sources_disjoint(const Graphing& g) {
  for (std::size_t a = 0; a < g.edges.size(); ++a)
    for (std::size_t b = a + 1; b < g.edges.size(); ++b)
      if (intersects(g.edges[a].source, g.edges[b].source)) return false;
  return true;
}

}  // namespace

bool is_probabilistic(const Graphing& g) {
  if (g.weights.kind() == WeightMonoid::Kind::Generic) return all_unit(g) && sources_disjoint(g);
  for (const auto& e : g.edges)
    if (!e.weight.is_rational() || e.weight.rational() < 0 || e.weight.rational() > 1) return false;
  std::vector<MeasurableSet> sources;
  for (const auto& e : g.edges) sources.push_back(e.source);
  for (const auto& atom : refine_with_membership(sources)) {
    Rational sum(0);
    for (auto k : atom.members) sum += g.edges[k].weight.rational();
    if (sum > 1) return false;
  }
  return true;
}

GraphingClass classify(const Graphing& g) {
  if (all_unit(g)) return sources_disjoint(g) ? GraphingClass::Deterministic : GraphingClass::NonDeterministic;
  return is_probabilistic(g) ? GraphingClass::Probabilistic : GraphingClass::General;
}

Rational cost(const Graphing& g) {
  Rational total(0);
  for (const auto& e : g.edges) total += measure(e.source);
  return total;
}

Graphing disjoint_union(const Graphing& f, const Graphing& g) {
  if (intersects(f.carrier, g.carrier)) throw std::invalid_argument("disjoint_union: carriers overlap");
  Graphing out;
  out.weights = common_monoid(f.weights, g.weights);
  out.microcosm = join(f.microcosm, g.microcosm);
  out.carrier = unite(f.carrier, g.carrier);
  out.edges = f.edges;
  out.edges.insert(out.edges.end(), g.edges.begin(), g.edges.end());
  return out;
}

Graphing canonical(const Graphing& g) {
  Graphing out = g;
  std::erase_if(out.edges, [](const Edge& e) { return e.source.empty(); });
  std::sort(out.edges.begin(), out.edges.end(), [](const Edge& a, const Edge& b) {
    if (auto c = a.source <=> b.source; c != 0) return c < 0;
    if (auto c = a.realizer <=> b.realizer; c != 0) return c < 0;
    return a.weight < b.weight;
  });
  return out;
}

bool same_graphing(const Graphing& a, const Graphing& b) {
  if (!(a.weights == b.weights) || !(a.carrier == b.carrier)) return false;
  auto ca = canonical(a);
  auto cb = canonical(b);
  if (ca.edges.size() != cb.edges.size()) return false;
  for (std::size_t k = 0; k < ca.edges.size(); ++k) {
    const auto& x = ca.edges[k];
    const auto& y = cb.edges[k];
    if (!(x.source == y.source) || !(x.realizer == y.realizer) || !(x.weight == y.weight)) return false;
  }
  return true;
}

}  // namespace gvm

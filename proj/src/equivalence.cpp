#include "gvm/equivalence.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace gvm {

std::string to_string(const Word& w) {
  if (w.empty()) return "e";
  std::string out;
  for (const auto& l : w) {
    if (!out.empty()) out += " ";
    out += "g" + std::to_string(l.generator);
    if (l.exponent < 0) out += "^-1";
  }
  return out;
}

namespace {

Realizer letter_map(const std::vector<Realizer>& generators, const Letter& l) {
  const Realizer& g = generators.at(l.generator);
  return l.exponent < 0 ? invert(g) : g;
}

// Image of `current` under one more letter, restricted to where it is defined.
MeasurableSet step(const Realizer& map, const MeasurableSet& current) {
  return apply(map, domain_of(map, current));
}

struct WordSearch {
  std::vector<PhiWord> words;
  bool exhausted = false;
};

WordSearch enumerate_words(const std::vector<Realizer>& generators, std::size_t k, bool positive_only,
                           const MeasurableSet& within) {
  struct Entry {
    PhiWord word;
    MeasurableSet image;
  };
  WordSearch out;
  std::set<std::pair<Realizer, MeasurableSet>> seen;
  std::vector<Entry> layer;
  if (!within.empty()) {
    seen.emplace(Realizer::identity(), within);
    layer.push_back(Entry{PhiWord{{}, Realizer::identity(), within}, within});
    out.words.push_back(layer.back().word);
  }
  for (std::size_t len = 1; len <= k; ++len) {
    std::vector<Entry> next;
    for (const auto& e : layer) {
      for (std::size_t g = 0; g < generators.size(); ++g) {
        for (int exponent : {1, -1}) {
          if (exponent < 0 && positive_only) continue;
          Letter l{g, exponent};
          Realizer map = letter_map(generators, l);
          MeasurableSet image = step(map, e.image);
          if (image.empty()) continue;
          Realizer composite = compose(e.word.composite, map);
          MeasurableSet domain = apply(invert(composite), image);
          if (!seen.emplace(composite, domain).second) continue;
          Word letters = e.word.letters;
          letters.push_back(l);
          next.push_back(Entry{PhiWord{std::move(letters), std::move(composite), std::move(domain)}, std::move(image)});
          out.words.push_back(next.back().word);
        }
      }
    }
    if (next.empty()) {
      out.exhausted = true;
      break;
    }
    layer = std::move(next);
  }
  return out;
}

}  // namespace

Realizer word_map(const std::vector<Realizer>& generators, const Word& word) {
  Realizer r = Realizer::identity();
  for (const auto& l : word) r = compose(r, letter_map(generators, l));
  return r;
}

MeasurableSet word_domain(const std::vector<Realizer>& generators, const Word& word, const MeasurableSet& within) {
  MeasurableSet current = within;
  for (const auto& l : word) current = step(letter_map(generators, l), current);
  return apply(invert(word_map(generators, word)), current);
}

std::vector<PhiWord> phi_words(const std::vector<Realizer>& generators, std::size_t k, bool positive_only,
                               const MeasurableSet& within) {
  return enumerate_words(generators, k, positive_only, within).words;
}

// ---------------------------------------------------------------- points

bool Point::operator==(const Point& other) const { return cell == other.cell && coords == other.coords; }

bool Point::operator<(const Point& other) const {
  if (cell != other.cell) return cell < other.cell;
  auto a = coords.begin();
  auto b = other.coords.begin();
  for (; a != coords.end() && b != other.coords.end(); ++a, ++b) {
    if (a->first != b->first) return a->first < b->first;
    if (a->second != b->second) return a->second < b->second;
  }
  return a == coords.end() && b != other.coords.end();
}

std::string to_string(const Point& p) {
  std::string out = "(" + std::to_string(p.cell);
  for (const auto& [j, v] : p.coords) out += ", x" + std::to_string(j) + "=" + to_string(v);
  return out + ")";
}

std::optional<Point> apply(const Realizer& r, const Point& p) {
  std::set<CoordIndex> touched;
  for (const auto& [j, v] : p.coords) touched.insert(j);
  for (const auto& [i, j] : r.perm()) touched.insert(i);
  for (const auto& [j, c] : r.offsets()) touched.insert(r.preimage_of(j));
  Point out{p.cell + r.shift(), p.coords};
  for (CoordIndex i : touched) out.coords.erase(i);
  for (CoordIndex i : touched) {
    auto it = p.coords.find(i);
    Rational x = it == p.coords.end() ? Rational(0) : it->second;
    CoordIndex j = r.image_of(i);
    Rational y = x + r.offset(j);
    if (y < 0 || y >= 1) return std::nullopt;
    if (y != 0) out.coords[j] = y;
  }
  return out;
}

std::set<Point> orbit(const Point& p, const std::vector<Realizer>& generators, std::size_t k, bool positive_only) {
  Point start = p;
  std::erase_if(start.coords, [](const auto& kv) { return kv.second == 0; });
  std::set<Point> seen{start};
  std::vector<Point> layer{start};
  for (std::size_t len = 1; len <= k && !layer.empty(); ++len) {
    std::vector<Point> next;
    for (const auto& q : layer)
      for (const auto& g : generators) {
        std::vector<Realizer> maps{g};
        if (!positive_only) maps.push_back(invert(g));
        for (const auto& m : maps)
          if (auto image = apply(m, q); image && seen.insert(*image).second) next.push_back(*image);
      }
    layer = std::move(next);
  }
  return seen;
}

// ---------------------------------------------------------------- compilation

CompileSearch is_compilable(const Realizer& target, const std::vector<Realizer>& generators,
                            std::size_t max_word_len, std::size_t max_parts, const MeasurableSet& domain,
                            const std::vector<Realizer>& theta) {
  CompileSearch out;
  auto search = enumerate_words(generators, max_word_len, true, domain);
  out.words_exhausted = search.exhausted;

  std::vector<Realizer> all = generators;
  all.insert(all.end(), theta.begin(), theta.end());
  struct Candidate {
    Word word;
    MeasurableSet domain;
  };
  std::vector<Candidate> candidates;
  for (const auto& w : search.words) {
    if (w.composite == target) candidates.push_back({w.letters, w.domain});
    for (std::size_t t = 0; t < theta.size(); ++t) {
      if (!(compose(w.composite, theta[t]) == target)) continue;
      Word word = w.letters;
      word.push_back(Letter{generators.size() + t, 1});
      candidates.push_back({word, word_domain(all, word, domain)});
    }
  }

  MeasurableSet remaining = domain;
  CompilationWitness witness;
  for (const auto& c : candidates) {
    if (remaining.empty()) break;
    MeasurableSet piece = intersect(remaining, c.domain);
    if (piece.empty()) continue;
    witness.partition.push_back(piece);
    witness.words.push_back(c.word);
    remaining = subtract(remaining, piece);
  }
  if (remaining.empty() && witness.partition.size() <= max_parts) out.witness = std::move(witness);
  return out;
}

std::optional<std::string> check_witness(const Realizer& target, const MeasurableSet& domain,
                                         const CompilationWitness& witness, const std::vector<Realizer>& generators) {
  if (witness.partition.size() != witness.words.size()) return "partition and word lists differ in length";
  MeasurableSet covered;
  for (std::size_t p = 0; p < witness.partition.size(); ++p) {
    const MeasurableSet& part = witness.partition[p];
    std::string where = "part " + std::to_string(p) + ": ";
    if (part.empty()) return where + "empty";
    if (intersects(covered, part)) return where + "overlaps an earlier part";
    covered = unite(covered, part);
    for (const auto& l : witness.words[p])
      if (l.generator >= generators.size()) return where + "unknown generator";
    if (!(word_map(generators, witness.words[p]) == target)) return where + "word does not realize the map";
    if (!(word_domain(generators, witness.words[p], part) == part)) return where + "word undefined on part";
  }
  if (!(covered == domain)) return "parts do not cover the domain";
  return std::nullopt;
}

Graphing compile_graphing(const Graphing& g, const std::vector<CompilationWitness>& witnesses,
                          const std::vector<Realizer>& generators) {
  if (witnesses.size() != g.edges.size()) throw std::invalid_argument("one witness per edge is required");
  Graphing out;
  out.weights = g.weights;
  out.carrier = g.carrier;
  std::size_t longest = 8;
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    const Edge& e = g.edges[k];
    if (auto problem = check_witness(e.realizer, e.source, witnesses[k], generators))
      throw std::invalid_argument("edge " + std::to_string(k) + " " + *problem);
    for (std::size_t p = 0; p < witnesses[k].partition.size(); ++p) {
      longest = std::max(longest, witnesses[k].words[p].size());
      out.edges.push_back(Edge{e.weight, witnesses[k].partition[p], word_map(generators, witnesses[k].words[p])});
    }
  }
  out.microcosm = Microcosm::generated(generators, longest);
  return out;
}

std::vector<Realizer> m_generators(CoordIndex i) {
  std::vector<Realizer> gens{Realizer::translation(1), Realizer::translation(-1)};
  for (CoordIndex j = 2; j <= i; ++j) gens.push_back(Realizer::head_swap(j));
  return gens;
}

// ---------------------------------------------------------------- treeings

Rational factorial(CoordIndex i) {
  BigInt f = 1;
  for (CoordIndex k = 2; k <= i; ++k) f *= k;
  return Rational(f);
}

namespace {

using Ranks = std::vector<std::size_t>;

// Spanning tree of the Cayley graph of S_i for the transpositions (1 j),
// acting on rank vectors: (parent, j, child).
std::vector<std::tuple<Ranks, CoordIndex, Ranks>> cayley_tree(CoordIndex i) {
  Ranks id(i);
  for (std::size_t k = 0; k < i; ++k) id[k] = k;
  std::set<Ranks> seen{id};
  std::deque<Ranks> queue{id};
  std::vector<std::tuple<Ranks, CoordIndex, Ranks>> edges;
  while (!queue.empty()) {
    Ranks r = queue.front();
    queue.pop_front();
    for (CoordIndex j = 2; j <= i; ++j) {
      Ranks s = r;
      std::swap(s[0], s[j - 1]);
      if (seen.insert(s).second) {
        edges.emplace_back(r, j, s);
        queue.push_back(s);
      }
    }
  }
  return edges;
}

void collect_resolved(CoordIndex i, std::size_t level, std::size_t depth, std::vector<std::int64_t>& a,
                      std::map<Ranks, std::vector<Box>>& regions) {
  std::vector<std::int64_t> sorted = a;
  std::sort(sorted.begin(), sorted.end());
  bool distinct = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
  if (distinct) {
    Ranks ranks(i);
    Box::Coords coords;
    const std::int64_t den = std::int64_t{1} << level;
    for (std::size_t k = 0; k < i; ++k) {
      ranks[k] = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), a[k]) - sorted.begin());
      coords.emplace(static_cast<CoordIndex>(k + 1), Interval(rat(a[k], den), rat(a[k] + 1, den)));
    }
    regions[ranks].emplace_back(0, std::move(coords));
    return;
  }
  if (level == depth) return;
  const std::size_t children = std::size_t{1} << i;
  std::vector<std::int64_t> child(i);
  for (std::size_t bits = 0; bits < children; ++bits) {
    for (std::size_t k = 0; k < i; ++k) child[k] = 2 * a[k] + static_cast<std::int64_t>((bits >> k) & 1);
    collect_resolved(i, level + 1, depth, child, regions);
  }
}

}  // namespace

Graphing build_treeing(CoordIndex i, std::size_t depth) {
  if (i < 2) throw std::invalid_argument("treeing needs i >= 2");
  if (depth > 62 / i) throw std::invalid_argument("treeing depth too large to materialize");
  std::map<Ranks, std::vector<Box>> boxes;
  std::vector<std::int64_t> root(i, 0);
  collect_resolved(i, 0, depth, root, boxes);

  Graphing g;
  g.weights = WeightMonoid::trivial();
  g.microcosm = Microcosm::m(i);
  g.carrier = MeasurableSet::unit_cell(0);
  for (const auto& [parent, j, child] : cayley_tree(i)) {
    auto it = boxes.find(parent);
    if (it == boxes.end()) continue;
    g.edges.push_back(Edge{Weight(), MeasurableSet(it->second), Realizer::head_swap(j)});
  }
  return g;
}

namespace {

using Pattern = std::vector<std::size_t>;  // sorted sizes of groups of tied coordinates

BigInt binomial(std::size_t n, std::size_t k) {
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

// Every way the tied groups of a pattern split one level down, with multiplicity.
void refine(const Pattern& p, std::size_t g, Pattern& acc, const BigInt& ways, std::map<Pattern, BigInt>& out) {
  if (g == p.size()) {
    Pattern sorted = acc;
    std::sort(sorted.begin(), sorted.end());
    out[sorted] += ways;
    return;
  }
  const std::size_t s = p[g];
  for (std::size_t a = 0; a <= s; ++a) {
    std::size_t pushed = 0;
    if (a > 0) acc.push_back(a), ++pushed;
    if (s - a > 0) acc.push_back(s - a), ++pushed;
    refine(p, g + 1, acc, ways * binomial(s, a), out);
    acc.resize(acc.size() - pushed);
  }
}

}  // namespace

TreeingCost treeing_cost(CoordIndex i, std::size_t depth) {
  if (i < 2) throw std::invalid_argument("treeing needs i >= 2");
  TreeingCost out;
  out.i = i;
  out.depth = depth;
  const Rational fact = factorial(i);
  out.exact_total = Rational(1) - Rational(1) / fact;
  auto edges = cayley_tree(i);
  if (Rational(static_cast<long>(edges.size())) / fact != out.exact_total)
    throw std::logic_error("spanning tree does not have i! - 1 edges");

  std::map<Pattern, BigInt> tied{{Pattern{i}, BigInt(1)}};
  Rational resolved(0);
  out.level_mass.push_back(Rational(0));
  out.partials.push_back(Rational(0));
  for (std::size_t d = 1; d <= depth; ++d) {
    std::map<Pattern, BigInt> next;
    for (const auto& [p, count] : tied) {
      Pattern acc;
      refine(p, 0, acc, count, next);
    }
    BigInt boxes = 0;
    if (auto it = next.find(Pattern(i, 1)); it != next.end()) {
      boxes = it->second;
      next.erase(it);
    }
    BigInt volume = 1;
    volume <<= static_cast<mp_bitcnt_t>(d * i);
    Rational mass(boxes, volume);
    mass.canonicalize();
    out.level_mass.push_back(mass);
    resolved += mass;
    out.partials.push_back(out.exact_total * resolved);
    tied = std::move(next);
  }
  out.partial = out.partials.back();
  return out;
}

Rational treeing_closed_form(CoordIndex i, std::size_t depth) {
  BigInt scale = 1;
  scale <<= static_cast<mp_bitcnt_t>(depth);
  Rational resolved(1);
  for (CoordIndex k = 1; k < i; ++k) {
    Rational factor = Rational(1) - Rational(BigInt(k), scale);
    factor.canonicalize();
    if (factor <= 0) return Rational(0);
    resolved *= factor;
  }
  return (Rational(1) - Rational(1) / factorial(i)) * resolved;
}

SeparationReport separation_experiment(CoordIndex i, CoordIndex j, SeparationBounds bounds) {
  if (i < 2 || j <= i) throw std::invalid_argument("separation needs 2 <= i < j");
  SeparationReport r;
  r.i = i;
  r.j = j;
  r.bounds = bounds;
  MeasurableSet domain = MeasurableSet::unit_cell(0);
  r.forward = is_compilable(Realizer::head_swap(j), m_generators(i), bounds.max_word_len, bounds.max_parts, domain);
  r.backward = is_compilable(Realizer::head_swap(i), m_generators(j), bounds.max_word_len, bounds.max_parts, domain);
  r.total_i = Rational(1) - Rational(1) / factorial(i);
  r.total_j = Rational(1) - Rational(1) / factorial(j);
  r.costs_differ = r.total_i != r.total_j;
  r.label = "bounded consistency check";
  return r;
}

}  // namespace gvm

#include "gvm/realizer.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace gvm {

DomainError::DomainError(const Box& box, CoordIndex coord)
    : std::runtime_error("box " + to_string(box) + " leaves the realizer domain on coordinate " +
                         std::to_string(coord)),
      box_(box),
      coord_(coord) {}

Realizer::Realizer(Cell shift, Permutation perm, Offsets offsets)
    : shift_(shift), perm_(std::move(perm)), offsets_(std::move(offsets)) {
  std::set<CoordIndex> keys, values;
  for (auto it = perm_.begin(); it != perm_.end();) {
    if (it->first == 0 || it->second == 0) throw std::invalid_argument("coordinate indices start at 1");
    if (it->first == it->second) {
      it = perm_.erase(it);
      continue;
    }
    keys.insert(it->first);
    values.insert(it->second);
    ++it;
  }
  if (keys != values) throw std::invalid_argument("realizer permutation is not a bijection");
  for (auto it = offsets_.begin(); it != offsets_.end();) {
    if (it->first == 0) throw std::invalid_argument("coordinate indices start at 1");
    if (it->second == 0)
      it = offsets_.erase(it);
    else
      ++it;
  }
}

Realizer Realizer::swap(CoordIndex a, CoordIndex b) {
  if (a == b) return identity();
  return Realizer(0, {{a, b}, {b, a}}, {});
}

CoordIndex Realizer::image_of(CoordIndex i) const {
  auto it = perm_.find(i);
  return it == perm_.end() ? i : it->second;
}

CoordIndex Realizer::preimage_of(CoordIndex j) const {
  for (const auto& [i, k] : perm_)
    if (k == j) return i;
  return j;
}

Rational Realizer::offset(CoordIndex j) const {
  auto it = offsets_.find(j);
  return it == offsets_.end() ? Rational(0) : it->second;
}

CoordIndex Realizer::max_moved() const { return perm_.empty() ? 0 : perm_.rbegin()->first; }

std::strong_ordering Realizer::operator<=>(const Realizer& other) const {
  if (auto c = shift_ <=> other.shift_; c != 0) return c;
  if (auto c = perm_ <=> other.perm_; c != 0) return c;
  auto a = offsets_.begin();
  auto b = other.offsets_.begin();
  for (; a != offsets_.end() && b != other.offsets_.end(); ++a, ++b) {
    if (auto c = a->first <=> b->first; c != 0) return c;
    if (auto c = compare(a->second, b->second); c != 0) return c;
  }
  if (a == offsets_.end() && b == other.offsets_.end()) return std::strong_ordering::equal;
  return a == offsets_.end() ? std::strong_ordering::less : std::strong_ordering::greater;
}

std::string to_string(const Realizer& r) {
  std::ostringstream os;
  os << "shift=" << r.shift() << "; perm=";
  if (r.perm().empty()) os << "()";
  std::set<CoordIndex> seen;
  for (const auto& [start, next] : r.perm()) {
    if (seen.count(start)) continue;
    os << "(";
    CoordIndex c = start;
    bool first = true;
    do {
      if (!first) os << " ";
      first = false;
      os << c;
      seen.insert(c);
      c = r.image_of(c);
    } while (c != start);
    os << ")";
  }
  os << "; offsets=";
  bool first = true;
  for (const auto& [j, c] : r.offsets()) {
    if (!first) os << ",";
    first = false;
    os << j << ":" << to_string(c);
  }
  return os.str();
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

CoordIndex parse_coord(std::string_view s) {
  s = trim(s);
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw std::invalid_argument("bad coordinate index '" + std::string(s) + "'");
  return static_cast<CoordIndex>(std::stoul(std::string(s)));
}

}  // namespace

Realizer parse_realizer(std::string_view text) {
  Cell shift = 0;
  Realizer::Permutation perm;
  Realizer::Offsets offsets;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto semi = text.find(';', pos);
    auto part = trim(text.substr(pos, semi == std::string_view::npos ? std::string_view::npos : semi - pos));
    pos = semi == std::string_view::npos ? text.size() + 1 : semi + 1;
    if (part.empty()) continue;
    auto eq = part.find('=');
    if (eq == std::string_view::npos) throw std::invalid_argument("realizer field without '='");
    auto key = trim(part.substr(0, eq));
    auto value = trim(part.substr(eq + 1));
    if (key == "shift") {
      shift = std::stoll(std::string(value));
    } else if (key == "perm") {
      std::size_t p = 0;
      while (p < value.size()) {
        if (value[p] == ' ') {
          ++p;
          continue;
        }
        if (value[p] != '(') throw std::invalid_argument("bad permutation '" + std::string(value) + "'");
        auto close = value.find(')', p);
        if (close == std::string_view::npos) throw std::invalid_argument("unclosed cycle");
        std::vector<CoordIndex> cycle;
        std::istringstream is{std::string(value.substr(p + 1, close - p - 1))};
        std::string tok;
        while (is >> tok) cycle.push_back(parse_coord(tok));
        for (std::size_t k = 0; k < cycle.size(); ++k) {
          if (!perm.emplace(cycle[k], cycle[(k + 1) % cycle.size()]).second)
            throw std::invalid_argument("coordinate repeated in permutation");
        }
        p = close + 1;
      }
    } else if (key == "offsets") {
      std::size_t p = 0;
      while (p < value.size()) {
        auto comma = value.find(',', p);
        auto item = trim(value.substr(p, comma == std::string_view::npos ? std::string_view::npos : comma - p));
        p = comma == std::string_view::npos ? value.size() : comma + 1;
        if (item.empty()) continue;
        auto colon = item.find(':');
        if (colon == std::string_view::npos) throw std::invalid_argument("offset without ':'");
        offsets[parse_coord(item.substr(0, colon))] = parse_rational(trim(item.substr(colon + 1)));
      }
    } else {
      throw std::invalid_argument("unknown realizer field '" + std::string(key) + "'");
    }
  }
  return Realizer(shift, std::move(perm), std::move(offsets));
}

Realizer compose(const Realizer& first, const Realizer& second) {
  Realizer::Permutation perm;
  std::set<CoordIndex> support;
  for (const auto& [i, j] : first.perm()) support.insert(i);
  for (const auto& [i, j] : second.perm()) support.insert(i);
  for (CoordIndex i : support) perm[i] = second.image_of(first.image_of(i));

  Realizer::Offsets offsets;
  for (const auto& [j, c] : first.offsets()) offsets[second.image_of(j)] += c;
  for (const auto& [j, c] : second.offsets()) offsets[j] += c;
  return Realizer(first.shift() + second.shift(), std::move(perm), std::move(offsets));
}

Realizer invert(const Realizer& r) {
  Realizer::Permutation perm;
  for (const auto& [i, j] : r.perm()) perm[j] = i;
  Realizer::Offsets offsets;
  for (const auto& [j, c] : r.offsets()) offsets[r.preimage_of(j)] = -c;
  return Realizer(-r.shift(), std::move(perm), std::move(offsets));
}

Box apply(const Realizer& r, const Box& box) {
  Box::Coords out;
  for (const auto& [i, itv] : box.coords()) {
    CoordIndex j = r.image_of(i);
    auto moved = itv.translated(r.offset(j));
    if (!moved) throw DomainError(box, i);
    out.emplace(j, *moved);
  }
  for (const auto& [j, c] : r.offsets()) {
    CoordIndex i = r.preimage_of(j);
    if (!box.coords().count(i)) throw DomainError(box, i);
  }
  return Box(box.cell() + r.shift(), std::move(out));
}

MeasurableSet apply(const Realizer& r, const MeasurableSet& s) {
  std::vector<Box> out;
  out.reserve(s.boxes().size());
  for (const auto& b : s.boxes()) out.push_back(apply(r, b));
  return MeasurableSet(std::move(out));
}

std::optional<Box> domain_of(const Realizer& r, const Box& within) {
  Box out = within;
  for (const auto& [j, c] : r.offsets()) {
    CoordIndex i = r.preimage_of(j);
    Rational lo = c < 0 ? Rational(-c) : Rational(0);
    Rational hi = c > 0 ? Rational(1 - c) : Rational(1);
    if (!(lo < hi)) return std::nullopt;
    auto meet = out.interval(i).intersect(Interval(lo, hi));
    if (!meet) return std::nullopt;
    out = out.with(i, *meet);
  }
  return out;
}

MeasurableSet domain_of(const Realizer& r, const MeasurableSet& within) {
  std::vector<Box> out;
  for (const auto& b : within.boxes())
    if (auto d = domain_of(r, b)) out.push_back(std::move(*d));
  return MeasurableSet(std::move(out));
}

// ---------------------------------------------------------------- microcosms

Microcosm Microcosm::m(CoordIndex i) {
  if (i == 0) throw std::invalid_argument("m_i needs i >= 1");
  if (i == 1) return {Translations{}};
  return {Heads{i}};
}

bool Microcosm::operator==(const Microcosm& other) const {
  if (kind.index() != other.kind.index()) return false;
  if (auto* h = std::get_if<Heads>(&kind)) return h->heads == std::get<Heads>(other.kind).heads;
  if (auto* g = std::get_if<FinitelyGenerated>(&kind)) {
    const auto& o = std::get<FinitelyGenerated>(other.kind);
    return g->generators == o.generators && g->search_bound == o.search_bound;
  }
  return true;
}

std::string to_string(const Microcosm& m) {
  return std::visit(
      [](const auto& k) -> std::string {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Microcosm::Translations>) return "m1";
        else if constexpr (std::is_same_v<K, Microcosm::Heads>) return "m" + std::to_string(k.heads);
        else if constexpr (std::is_same_v<K, Microcosm::AllHeads>) return "m_inf";
        else if constexpr (std::is_same_v<K, Microcosm::Macrocosm>) return "macrocosm";
        else {
          std::string out = "fg{";
          for (std::size_t i = 0; i < k.generators.size(); ++i) {
            if (i) out += " | ";
            out += to_string(k.generators[i]);
          }
          return out + "}";
        }
      },
      m.kind);
}

namespace {

// Rank in the chain m1 < m2 < ... < m_inf; nullopt outside the chain.
std::optional<CoordIndex> chain_rank(const Microcosm& m) {
  if (std::holds_alternative<Microcosm::Translations>(m.kind)) return 1;
  if (auto* h = std::get_if<Microcosm::Heads>(&m.kind)) return h->heads;
  if (std::holds_alternative<Microcosm::AllHeads>(m.kind)) return std::numeric_limits<CoordIndex>::max();
  return std::nullopt;
}

std::optional<std::vector<Realizer>> generators_of(const Microcosm& m) {
  if (auto* g = std::get_if<Microcosm::FinitelyGenerated>(&m.kind)) return g->generators;
  auto rank = chain_rank(m);
  if (!rank || *rank == std::numeric_limits<CoordIndex>::max()) return std::nullopt;
  std::vector<Realizer> gens{Realizer::translation(1), Realizer::translation(-1)};
  for (CoordIndex j = 2; j <= *rank; ++j) gens.push_back(Realizer::head_swap(j));
  return gens;
}

std::size_t bound_of(const Microcosm& m) {
  if (auto* g = std::get_if<Microcosm::FinitelyGenerated>(&m.kind)) return g->search_bound;
  return 0;
}

}  // namespace

Microcosm join(const Microcosm& a, const Microcosm& b) {
  if (std::holds_alternative<Microcosm::Macrocosm>(a.kind) ||
      std::holds_alternative<Microcosm::Macrocosm>(b.kind))
    return Microcosm::macrocosm();
  auto ra = chain_rank(a);
  auto rb = chain_rank(b);
  if (ra && rb) return *ra >= *rb ? a : b;
  if (a == b) return a;
  auto ga = generators_of(a);
  auto gb = generators_of(b);
  if (!ga || !gb) return Microcosm::macrocosm();
  std::vector<Realizer> gens = *ga;
  for (const auto& g : *gb)
    if (std::find(gens.begin(), gens.end(), g) == gens.end()) gens.push_back(g);
  return Microcosm::generated(std::move(gens), std::max({bound_of(a), bound_of(b), std::size_t{8}}));
}

MembershipResult in_microcosm(const Realizer& r, const Microcosm& m) {
  return std::visit(
      [&r](const auto& k) -> MembershipResult {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Microcosm::Translations>) {
          return {r.perm().empty() && r.offsets().empty(), std::nullopt, false};
        } else if constexpr (std::is_same_v<K, Microcosm::Heads>) {
          return {r.offsets().empty() && r.max_moved() <= k.heads, std::nullopt, false};
        } else if constexpr (std::is_same_v<K, Microcosm::AllHeads>) {
          return {r.offsets().empty(), std::nullopt, false};
        } else if constexpr (std::is_same_v<K, Microcosm::Macrocosm>) {
          return {true, std::nullopt, false};
        } else {
          // Breadth-first over positive words, one representative word per map.
          struct Node {
            Realizer map;
            std::vector<std::size_t> word;
          };
          std::set<Realizer> seen{Realizer::identity()};
          std::deque<Node> frontier{Node{Realizer::identity(), {}}};
          if (r.is_identity()) return {true, std::vector<std::size_t>{}, false};
          for (std::size_t len = 1; len <= k.search_bound; ++len) {
            std::deque<Node> next;
            for (const auto& node : frontier) {
              for (std::size_t g = 0; g < k.generators.size(); ++g) {
                Realizer step = compose(node.map, k.generators[g]);
                if (!seen.insert(step).second) continue;
                auto word = node.word;
                word.push_back(g);
                if (step == r) return {true, word, false};
                next.push_back(Node{std::move(step), std::move(word)});
              }
            }
            if (next.empty()) return {false, std::nullopt, false};
            frontier = std::move(next);
          }
          return {false, std::nullopt, true};
        }
      },
      m.kind);
}

}  // namespace gvm

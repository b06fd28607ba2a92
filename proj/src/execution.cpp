#include "gvm/execution.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <sstream>

namespace gvm {

std::string to_string(const StepSequence& steps) {
  std::string out;
  for (const auto& s : steps) {
    if (!out.empty()) out += " ";
    out += (s.side == Side::F ? "F" : "G") + std::to_string(s.edge);
  }
  return out;
}

bool PlugResult::has_partial() const {
  return std::any_of(unresolved.begin(), unresolved.end(),
                     [](const Unresolved& u) { return u.kind == UnresolvedKind::Partial; });
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

Side other(Side s) { return s == Side::F ? Side::G : Side::F; }

// In-cut parts of edge sources, grouped by cell.
using CellIndex = std::map<Cell, std::vector<std::pair<std::size_t, Box>>>;

CellIndex index_in_cut(const Graphing& g, const MeasurableSet& cut) {
  CellIndex index;
  for (std::size_t k = 0; k < g.edges.size(); ++k)
    for (const auto& b : g.edges[k].source.boxes())
      for (auto& piece : box_meet(b, cut)) index[piece.cell()].emplace_back(k, std::move(piece));
  return index;
}

struct Accumulator {
  std::vector<Box> origins;
  Realizer realizer;
  Weight weight;
};

class Explorer {
 public:
  Explorer(const Graphing& f, const Graphing& g, MeasurableSet cut, const PlugOptions& options)
      : f_(f), g_(g), cut_(std::move(cut)), options_(options),
        monoid_(common_monoid(f.weights, g.weights)),
        index_{index_in_cut(f, cut_), index_in_cut(g, cut_)} {}

  PlugResult run() {
    for (Side s : {Side::F, Side::G}) {
      const Graphing& gr = side(s);
      for (std::size_t k = 0; k < gr.edges.size(); ++k)
        for (const auto& b : gr.edges[k].source.boxes())
          for (auto& piece : box_minus(b, cut_))
            queue_.push_back(Work{kNone, Step{s, k}, std::move(piece), Realizer::identity(), unit_of(monoid_), 0});
    }
    while (!queue_.empty()) {
      Work w = std::move(queue_.front());
      queue_.pop_front();
      process(std::move(w));
    }

    PlugResult out;
    out.work = work_;
    out.graphing.weights = monoid_;
    out.graphing.microcosm = join(f_.microcosm, g_.microcosm);
    out.graphing.carrier = subtract(unite(f_.carrier, g_.carrier), cut_);
    for (auto& [steps, acc] : results_) {
      out.graphing.edges.push_back(Edge{acc.weight, MeasurableSet(std::move(acc.origins)), acc.realizer});
      out.paths.push_back(steps);
    }
    for (auto& [key, acc] : unresolved_)
      out.unresolved.push_back(
          Unresolved{key.first, MeasurableSet(std::move(acc.origins)), acc.weight, key.second});
    return out;
  }

 private:
  struct Work {
    std::size_t parent;
    Step step;
    Box box;  // where the edge of `step` is applied
    Realizer composite;
    Weight weight;
    std::size_t length;  // edges applied before this one
  };
  struct Node {
    std::size_t parent;
    Step step;
    Box before;
  };

  const Graphing& side(Side s) const { return s == Side::F ? f_ : g_; }

  StepSequence steps_of(std::size_t node) const {
    StepSequence steps;
    for (; node != kNone; node = nodes_[node].parent) steps.push_back(nodes_[node].step);
    std::reverse(steps.begin(), steps.end());
    return steps;
  }

  bool revisits(const Work& w) const {
    for (std::size_t n = w.parent; n != kNone; n = nodes_[n].parent)
      if (nodes_[n].step == w.step && nodes_[n].before == w.box) return true;
    return false;
  }

  void record(std::map<StepSequence, Accumulator>& into, StepSequence steps, Box origin, const Realizer& r,
              const Weight& weight) {
    auto [it, fresh] = into.try_emplace(std::move(steps), Accumulator{{}, r, weight});
    it->second.origins.push_back(std::move(origin));
  }

  void unresolved(UnresolvedKind kind, const Work& w) {
    StepSequence steps = steps_of(w.parent);
    steps.push_back(w.step);
    Box origin = apply(invert(w.composite), w.box);
    auto [it, fresh] = unresolved_.try_emplace({kind, std::move(steps)}, Accumulator{{}, w.composite, w.weight});
    it->second.origins.push_back(std::move(origin));
  }

  void process(Work w) {
    if (w.length >= options_.max_steps || work_ >= options_.max_work) {
      unresolved(UnresolvedKind::Partial, w);
      return;
    }
    if (revisits(w)) {
      unresolved(UnresolvedKind::Looping, w);
      return;
    }
    ++work_;
    const Edge& e = side(w.step.side).edges[w.step.edge];
    Box image = apply(e.realizer, w.box);
    Realizer composite = compose(w.composite, e.realizer);
    Weight weight = multiply(monoid_, w.weight, e.weight);
    std::size_t node = nodes_.size();
    nodes_.push_back(Node{w.parent, w.step, std::move(w.box)});

    auto exits = box_minus(image, cut_);
    if (!exits.empty()) {
      StepSequence steps = steps_of(node);
      Realizer back = invert(composite);
      for (auto& piece : exits) record(results_, steps, apply(back, piece), composite, weight);
    }

    Side next = other(w.step.side);
    const CellIndex& index = index_[static_cast<int>(next)];
    for (auto& inside : box_meet(image, cut_)) {
      auto it = index.find(inside.cell());
      if (it == index.end()) continue;
      for (const auto& [k, source] : it->second)
        if (auto part = inside.intersect(source))
          queue_.push_back(Work{node, Step{next, k}, std::move(*part), composite, weight, w.length + 1});
    }
  }

  const Graphing& f_;
  const Graphing& g_;
  MeasurableSet cut_;
  PlugOptions options_;
  WeightMonoid monoid_;
  CellIndex index_[2];
  std::deque<Work> queue_;
  std::vector<Node> nodes_;
  std::size_t work_ = 0;
  std::map<StepSequence, Accumulator> results_;
  std::map<std::pair<UnresolvedKind, StepSequence>, Accumulator> unresolved_;
};

MeasurableSet default_cut(const Graphing& f, const Graphing& g, const std::optional<MeasurableSet>& cut) {
  return cut ? *cut : intersect(f.carrier, g.carrier);
}

}  // namespace

PlugResult plug(const Graphing& f, const Graphing& g, const PlugOptions& options) {
  return Explorer(f, g, default_cut(f, g, options.cut), options).run();
}

std::vector<MeasurableSet> replay(const Graphing& f, const Graphing& g, const StepSequence& steps,
                                  const MeasurableSet& origin) {
  std::vector<MeasurableSet> out;
  MeasurableSet current = origin;
  for (const auto& s : steps) {
    const Edge& e = (s.side == Side::F ? f : g).edges.at(s.edge);
    current = intersect(current, e.source);
    out.push_back(current);
    current = apply(e.realizer, current);
  }
  return out;
}

// ---------------------------------------------------------------- cycles

namespace {

bool is_primitive(const StepSequence& s) {
  const std::size_t n = s.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool periodic = true;
    for (std::size_t k = p; k < n && periodic; ++k) periodic = s[k] == s[k - p];
    if (periodic) return false;
  }
  return true;
}

// Least among rotations that start on an F step.
bool is_canonical_rotation(const StepSequence& s) {
  for (std::size_t r = 2; r < s.size(); r += 2) {
    StepSequence rotated(s.begin() + static_cast<std::ptrdiff_t>(r), s.end());
    rotated.insert(rotated.end(), s.begin(), s.begin() + static_cast<std::ptrdiff_t>(r));
    if (rotated < s) return false;
  }
  return true;
}

}  // namespace

CycleResult cycles(const Graphing& f, const Graphing& g, std::optional<MeasurableSet> cut, std::size_t max_len) {
  MeasurableSet c = default_cut(f, g, cut);
  WeightMonoid monoid = common_monoid(f.weights, g.weights);
  CellIndex index[2] = {index_in_cut(f, c), index_in_cut(g, c)};

  struct State {
    StepSequence steps;
    Box box;
    Realizer composite;
    Weight weight;
  };
  std::deque<State> queue;
  for (const auto& [cell, entries] : index[0])
    for (const auto& [k, box] : entries)
      queue.push_back(State{{Step{Side::F, k}}, box, Realizer::identity(), unit_of(monoid)});

  CycleResult out;
  std::map<StepSequence, std::pair<std::vector<Box>, Weight>> found;
  while (!queue.empty()) {
    State s = std::move(queue.front());
    queue.pop_front();
    const Step& last = s.steps.back();
    const Edge& e = (last.side == Side::F ? f : g).edges[last.edge];
    Box image = apply(e.realizer, s.box);
    Realizer composite = compose(s.composite, e.realizer);
    Weight weight = multiply(monoid, s.weight, e.weight);

    if (s.steps.size() % 2 == 0 && composite.is_identity() && is_primitive(s.steps) &&
        is_canonical_rotation(s.steps)) {
      auto [it, fresh] = found.try_emplace(s.steps, std::vector<Box>{}, weight);
      it->second.first.push_back(image);
    }

    Side next = other(last.side);
    for (auto& inside : box_meet(image, c)) {
      auto it = index[static_cast<int>(next)].find(inside.cell());
      if (it == index[static_cast<int>(next)].end()) continue;
      for (const auto& [k, source] : it->second) {
        auto part = inside.intersect(source);
        if (!part) continue;
        if (s.steps.size() >= max_len) {
          out.truncated = true;
          continue;
        }
        StepSequence steps = s.steps;
        steps.push_back(Step{next, k});
        queue.push_back(State{std::move(steps), std::move(*part), composite, weight});
      }
    }
  }
  for (auto& [steps, data] : found)
    out.cycles.push_back(AlternatingCycle{steps, MeasurableSet(std::move(data.first)), data.second});
  return out;
}

MeasurementMap constant_measurement(ExtRational value) {
  return [value](const Weight&) { return value; };
}

MeasurementMap identity_measurement() {
  return [](const Weight& w) -> ExtRational {
    if (!w.is_rational()) throw std::invalid_argument("identity measurement needs rational weights");
    return ExtRational(w.rational());
  };
}

MeasurementMap table_measurement(std::vector<ExtRational> values) {
  return [values = std::move(values)](const Weight& w) { return values.at(w.index()); };
}

Measurement measurement(const Graphing& f, const Graphing& g, const MeasurementMap& m, std::size_t max_len) {
  auto found = cycles(f, g, std::nullopt, max_len);
  Measurement out;
  out.truncated = found.truncated;
  for (const auto& c : found.cycles) out.value = out.value + m(c.weight) * measure(c.support);
  return out;
}

// ---------------------------------------------------------------- tests

Test Test::prob(Rational cutpoint) {
  if (cutpoint < 0 || cutpoint >= 1) throw std::invalid_argument("cutpoint must lie in [0,1)");
  return {Kind::Prob, std::move(cutpoint)};
}

std::string to_string(const Test& t) {
  switch (t.kind) {
    case Test::Kind::Det: return "det";
    case Test::Kind::Nl: return "nl";
    case Test::Kind::CoNl: return "conl";
    case Test::Kind::Prob: return "prob(" + to_string(t.cutpoint) + ")";
  }
  return "?";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Accept: return "accept";
    case Verdict::Reject: return "reject";
    case Verdict::Undetermined: return "undetermined";
  }
  return "?";
}

std::string to_string(BoolResult b) {
  switch (b) {
    case BoolResult::True: return "true";
    case BoolResult::False: return "false";
    case BoolResult::Other: return "other";
  }
  return "?";
}

Masses masses(const PlugResult& result, const TestRegions& regions) {
  Rational total = measure(regions.initial);
  if (total == 0) throw std::invalid_argument("test needs a nonempty initial region");
  if (regions.accept.empty() || regions.reject.empty()) throw std::invalid_argument("test needs accept and reject regions");
  auto scalar = [](const Weight& w) -> const Rational& {
    if (!w.is_rational()) throw std::invalid_argument("tests need rational weights");
    return w.rational();
  };
  Masses m;
  const auto& edges = result.graphing.edges;
  for (const auto& e : edges) {
    MeasurableSet start = intersect(e.source, regions.initial);
    if (start.empty()) continue;
    MeasurableSet end = apply(e.realizer, start);
    m.accept += scalar(e.weight) * measure(intersect(end, regions.accept));
    m.reject += scalar(e.weight) * measure(intersect(end, regions.reject));
  }
  for (const auto& u : result.unresolved) {
    Rational mass = scalar(u.weight) * measure(intersect(u.origin, regions.initial));
    (u.kind == UnresolvedKind::Looping ? m.looping : m.partial) += mass;
  }
  m.accept /= total;
  m.reject /= total;
  m.looping /= total;
  m.partial /= total;
  return m;
}

Verdict evaluate_test(const PlugResult& result, const Test& t, const TestRegions& regions) {
  Masses m = masses(result, regions);
  switch (t.kind) {
    case Test::Kind::Det:
      if (m.accept == 1 && m.reject == 0) return Verdict::Accept;
      return m.partial > 0 ? Verdict::Undetermined : Verdict::Reject;
    case Test::Kind::Nl:
      if (m.accept > 0) return Verdict::Accept;
      return m.partial > 0 ? Verdict::Undetermined : Verdict::Reject;
    case Test::Kind::CoNl:
      if (m.reject > 0) return Verdict::Reject;
      return m.partial > 0 ? Verdict::Undetermined : Verdict::Accept;
    case Test::Kind::Prob:
      if (m.accept > t.cutpoint) return Verdict::Accept;
      return m.partial > 0 || m.looping > 0 ? Verdict::Undetermined : Verdict::Reject;
  }
  return Verdict::Undetermined;
}

BoolResult classify_result(const PlugResult& result, const TestRegions& regions) {
  Masses m = masses(result, regions);
  if (m.accept == 1 && m.reject == 0) return BoolResult::True;
  if (m.reject == 1 && m.accept == 0) return BoolResult::False;
  return BoolResult::Other;
}

}  // namespace gvm

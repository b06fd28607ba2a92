#include "gvm/oracle.hpp"

#include "gvm/encodings.hpp"

#include <deque>
#include <map>
#include <set>
#include <stdexcept>

namespace gvm {

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Accept: return "accept";
    case Outcome::Reject: return "reject";
    case Outcome::Stuck: return "stuck";
    case Outcome::Diverge: return "diverge";
  }
  return "?";
}

namespace {

char symbol_at(const std::string& word, std::size_t p) { return p == 0 ? kEndMarker : word[p - 1]; }

}  // namespace

Configuration initial_configuration(const MachineSpec& spec, const std::string& word) {
  Configuration c;
  c.heads.assign(spec.heads, 0);
  c.heads[0] = 1 % (word.size() + 1);
  return c;
}

std::vector<Successor> successors(const MachineSpec& spec, const std::string& word, const Configuration& c) {
  const std::size_t cells = word.size() + 1;
  const auto* actions = spec.actions(spec.states[c.state], symbol_at(word, c.heads[0]));
  std::vector<Successor> out;
  if (!actions) return out;
  for (const auto& a : *actions) {
    if (a.move == Move::Accept) {
      out.push_back({a.weight, Outcome::Accept});
      continue;
    }
    if (a.move == Move::Reject) {
      out.push_back({a.weight, Outcome::Reject});
      continue;
    }
    Configuration next = c;
    if (a.swap) {
      std::swap(next.heads[0], next.heads[*a.swap - 1]);
      if (symbol_at(word, next.heads[0]) != a.swap_symbol) {
        out.push_back({a.weight, Outcome::Stuck});
        continue;
      }
    }
    next.heads[0] = a.move == Move::Advance ? (next.heads[0] + 1) % cells : (next.heads[0] + cells - 1) % cells;
    next.state = spec.state_index(a.next);
    out.push_back({a.weight, std::move(next)});
  }
  return out;
}

Outcome dfa_run(const MachineSpec& spec, const std::string& word) {
  Configuration c = initial_configuration(spec, word);
  std::set<Configuration> seen;
  while (seen.insert(c).second) {
    auto next = successors(spec, word, c);
    if (next.empty()) return Outcome::Stuck;
    if (next.size() > 1) throw std::invalid_argument("dfa_run on a machine with several actions");
    if (auto* o = std::get_if<Outcome>(&next[0].next)) return *o;
    c = std::get<Configuration>(next[0].next);
  }
  return Outcome::Diverge;
}

bool dfa_accepts(const MachineSpec& spec, const std::string& word) { return dfa_run(spec, word) == Outcome::Accept; }

namespace {

// Explicit finite chain of reachable configurations.
struct Chain {
  static constexpr std::size_t kAccept = static_cast<std::size_t>(-1);
  static constexpr std::size_t kReject = static_cast<std::size_t>(-2);
  static constexpr std::size_t kStuck = static_cast<std::size_t>(-3);
  static bool halts(std::size_t to) { return to >= kStuck; }
  struct Arc {
    Rational weight;
    std::size_t to;  // configuration index or one of the halting sinks
  };
  std::vector<Configuration> configs;
  std::vector<std::vector<Arc>> arcs;
};

Chain build_chain(const MachineSpec& spec, const std::string& word) {
  Chain chain;
  std::map<Configuration, std::size_t> index;
  std::deque<std::size_t> queue;
  auto intern = [&](const Configuration& c) {
    auto [it, fresh] = index.emplace(c, chain.configs.size());
    if (fresh) {
      chain.configs.push_back(c);
      chain.arcs.emplace_back();
      queue.push_back(it->second);
    }
    return it->second;
  };
  intern(initial_configuration(spec, word));
  while (!queue.empty()) {
    std::size_t k = queue.front();
    queue.pop_front();
    Configuration c = chain.configs[k];
    Rational total(0);
    std::vector<Chain::Arc> arcs;
    for (auto& s : successors(spec, word, c)) {
      total += s.weight;
      if (auto* o = std::get_if<Outcome>(&s.next))
        arcs.push_back({s.weight, *o == Outcome::Accept   ? Chain::kAccept
                                  : *o == Outcome::Reject ? Chain::kReject
                                                          : Chain::kStuck});
      else
        arcs.push_back({s.weight, intern(std::get<Configuration>(s.next))});
    }
    // Missing mass halts without a verdict; this covers configurations without transitions.
    if (spec.mode == Mode::Prob && total < 1) arcs.push_back({Rational(1) - total, Chain::kStuck});
    if (spec.mode != Mode::Prob && arcs.empty()) arcs.push_back({Rational(1), Chain::kStuck});
    chain.arcs[k] = std::move(arcs);
  }
  return chain;
}

// Configurations from which some arc satisfying `hit` is reachable.
template <typename Pred>
std::vector<bool> can_reach(const Chain& chain, Pred hit) {
  const std::size_t n = chain.configs.size();
  std::vector<bool> reach(n, false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t k = 0; k < n; ++k) {
      if (reach[k]) continue;
      for (const auto& a : chain.arcs[k]) {
        if (hit(a.to) || (!Chain::halts(a.to) && reach[a.to])) {
          reach[k] = true;
          changed = true;
          break;
        }
      }
    }
  }
  return reach;
}

// Solves x = P x + b on the `unknown` configurations by exact elimination;
// `fixed` gives values elsewhere; accepting arcs are worth accept_value and
// the other halting arcs reject_value.
std::vector<Rational> solve(const Chain& chain, const std::vector<bool>& unknown, const std::vector<Rational>& fixed,
                            Rational accept_value, Rational reject_value) {
  const std::size_t n = chain.configs.size();
  std::vector<std::size_t> var(n, static_cast<std::size_t>(-1));
  std::vector<std::size_t> of;
  for (std::size_t k = 0; k < n; ++k)
    if (unknown[k]) {
      var[k] = of.size();
      of.push_back(k);
    }
  const std::size_t m = of.size();
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m + 1, Rational(0)));
  for (std::size_t r = 0; r < m; ++r) {
    a[r][r] += 1;
    for (const auto& arc : chain.arcs[of[r]]) {
      if (arc.to == Chain::kAccept)
        a[r][m] += arc.weight * accept_value;
      else if (Chain::halts(arc.to))
        a[r][m] += arc.weight * reject_value;
      else if (unknown[arc.to])
        a[r][var[arc.to]] -= arc.weight;
      else
        a[r][m] += arc.weight * fixed[arc.to];
    }
  }
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t pivot = col;
    while (pivot < m && a[pivot][col] == 0) ++pivot;
    if (pivot == m) throw std::logic_error("singular absorption system");
    std::swap(a[col], a[pivot]);
    Rational inv = Rational(1) / a[col][col];
    for (std::size_t c = col; c <= m; ++c) a[col][c] *= inv;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rational factor = a[r][col];
      for (std::size_t c = col; c <= m; ++c) a[r][c] -= factor * a[col][c];
    }
  }
  std::vector<Rational> x = fixed;
  for (std::size_t r = 0; r < m; ++r) x[of[r]] = a[r][m];
  return x;
}

}  // namespace

bool nfa_accepts(const MachineSpec& spec, const std::string& word) {
  Chain chain = build_chain(spec, word);
  return can_reach(chain, [](std::size_t to) { return to == Chain::kAccept; })[0];
}

bool nfa_can_reject(const MachineSpec& spec, const std::string& word) {
  Chain chain = build_chain(spec, word);
  return can_reach(chain, [](std::size_t to) { return to == Chain::kReject; })[0];
}

Absorption pfa_absorption(const MachineSpec& spec, const std::string& word) {
  if (spec.mode == Mode::Nondet) throw std::invalid_argument("absorption needs a det or prob machine");
  Chain chain = build_chain(spec, word);
  const std::size_t n = chain.configs.size();
  std::vector<Rational> zeros(n, Rational(0));

  auto acc_reach = can_reach(chain, [](std::size_t to) { return to == Chain::kAccept; });
  auto rej_reach = can_reach(chain, [](std::size_t to) { return Chain::halts(to) && to != Chain::kAccept; });
  auto halt_reach = can_reach(chain, [](std::size_t to) { return Chain::halts(to); });

  Absorption out;
  out.accept = solve(chain, acc_reach, zeros, 1, 0)[0];
  out.reject = solve(chain, rej_reach, zeros, 0, 1)[0];

  // Divergence: mass absorbed by configurations that can never halt.
  std::vector<Rational> stuck_forever(n, Rational(0));
  std::vector<bool> trapped(n);
  for (std::size_t k = 0; k < n; ++k) {
    trapped[k] = !halt_reach[k];
    if (trapped[k]) stuck_forever[k] = 1;
  }
  std::vector<bool> unknown(n, false);
  {
    bool changed = true;
    std::vector<bool> reach = trapped;
    while (changed) {
      changed = false;
      for (std::size_t k = 0; k < n; ++k) {
        if (reach[k]) continue;
        for (const auto& a : chain.arcs[k])
          if (!Chain::halts(a.to) && reach[a.to]) {
            reach[k] = true;
            unknown[k] = true;
            changed = true;
            break;
          }
      }
    }
  }
  out.diverge = solve(chain, unknown, stuck_forever, 0, 0)[0];
  if (out.accept + out.reject + out.diverge != 1) throw std::logic_error("absorption probabilities do not sum to 1");
  return out;
}

Rational pfa_accept_prob(const MachineSpec& spec, const std::string& word) {
  return pfa_absorption(spec, word).accept;
}

std::vector<std::string> oracle_language(const MachineSpec& spec, std::size_t max_len, const Test& test) {
  std::vector<std::string> out;
  for (const auto& w : words_up_to(spec.alphabet, max_len)) {
    bool accepted = false;
    switch (test.kind) {
      case Test::Kind::Det: accepted = dfa_accepts(spec, w); break;
      case Test::Kind::Nl: accepted = nfa_accepts(spec, w); break;
      case Test::Kind::CoNl: accepted = !nfa_can_reject(spec, w); break;
      case Test::Kind::Prob: accepted = pfa_accept_prob(spec, w) > test.cutpoint; break;
    }
    if (accepted) out.push_back(w);
  }
  return out;
}

}  // namespace gvm

#ifndef GVM_ORACLE_HPP
#define GVM_ORACLE_HPP

// Direct simulation of multihead automata on the cyclic end-marked word,
// independent of the graphing machinery.

#include "gvm/execution.hpp"
#include "gvm/machine.hpp"

#include <compare>
#include <string>
#include <variant>
#include <vector>

namespace gvm {

struct Configuration {
  std::size_t state = 0;
  /// Head positions in 0..n; entry 0 is the active head.
  std::vector<std::size_t> heads;
  auto operator<=>(const Configuration&) const = default;
};

enum class Outcome { Accept, Reject, Stuck, Diverge };
std::string to_string(Outcome o);

/// The first move asks for the first symbol: the active head starts on
/// position 1 (position 0 for the empty word), parked heads on the marker.
Configuration initial_configuration(const MachineSpec& spec, const std::string& word);

struct Successor {
  Rational weight;
  /// A terminal outcome (Accept, Reject or Stuck) or the next configuration.
  std::variant<Configuration, Outcome> next;
};

/// One step; an empty result means no transition applies.
std::vector<Successor> successors(const MachineSpec& spec, const std::string& word, const Configuration& c);

/// Deterministic run; a repeated configuration yields Diverge.
Outcome dfa_run(const MachineSpec& spec, const std::string& word);
bool dfa_accepts(const MachineSpec& spec, const std::string& word);
/// Some run reaches Accept.
bool nfa_accepts(const MachineSpec& spec, const std::string& word);
/// Some run reaches a Reject move (stuck runs do not count).
bool nfa_can_reject(const MachineSpec& spec, const std::string& word);

struct Absorption {
  Rational accept{0};
  /// Reject moves, stuck runs and missing weight.
  Rational reject{0};
  Rational diverge{0};
};

/// Exact absorption probabilities, each solved separately.
Absorption pfa_absorption(const MachineSpec& spec, const std::string& word);
Rational pfa_accept_prob(const MachineSpec& spec, const std::string& word);

/// Words accepted under the given test: det uses dfa_accepts, nl nfa_accepts,
/// conl the absence of rejecting runs, prob the strict cutpoint.
std::vector<std::string> oracle_language(const MachineSpec& spec, std::size_t max_len, const Test& test);

}  // namespace gvm

#endif  // GVM_ORACLE_HPP

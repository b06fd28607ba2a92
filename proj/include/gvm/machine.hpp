#ifndef GVM_MACHINE_HPP
#define GVM_MACHINE_HPP

// Multihead automaton descriptions and their text format.
//
//   name: ones
//   alphabet: 01
//   heads: 1
//   states: q            # first state is initial
//   mode: det            # det | nondet | prob
//   twoway: false
//   q, *  -> reject
//   q, 0  -> advance
//   q, 1  -> accept
//
// Transition lines read `state, symbol -> [weight] action [swap j [at s]] [goto state]`
// where action is advance, retreat, accept or reject and `*` is the end marker.
// Without `goto` the state is unchanged. `swap j` exchanges the active head with
// head j before moving; `at s` names the symbol the newly active head is
// expected to read (default `*`, where parked heads start). A swap on accept
// or reject only exchanges the heads; no symbol is checked.

#include "gvm/rational.hpp"
#include "gvm/space.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gvm {

inline constexpr char kEndMarker = '*';

enum class Mode { Det, Nondet, Prob };
enum class Move { Advance, Retreat, Accept, Reject };

std::string to_string(Mode m);
std::string to_string(Move m);

struct Action {
  Rational weight{1};
  Move move = Move::Advance;
  std::optional<CoordIndex> swap;
  char swap_symbol = kEndMarker;
  /// Empty for terminal moves.
  std::string next;

  bool terminal() const { return move == Move::Accept || move == Move::Reject; }
};

struct MachineSpec {
  std::string name;
  /// Input symbols, without the end marker.
  std::string alphabet;
  CoordIndex heads = 1;
  /// The first state is initial.
  std::vector<std::string> states;
  Mode mode = Mode::Det;
  bool two_way = false;
  std::map<std::pair<std::string, char>, std::vector<Action>> transitions;

  std::size_t state_index(const std::string& state) const;
  const std::vector<Action>* actions(const std::string& state, char symbol) const;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message);
  /// 1-based; 0 when the problem is not tied to a line.
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Parses and checks a machine; throws ParseError.
MachineSpec parse_machine(std::string_view text);
MachineSpec load_machine(const std::string& path);
std::string to_text(const MachineSpec& spec);

/// Violated invariants of a spec, empty when it is well formed.
std::vector<std::string> check(const MachineSpec& spec);

}  // namespace gvm

#endif  // GVM_MACHINE_HPP

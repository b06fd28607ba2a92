#include "gvm/machine.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace gvm {

std::string to_string(Mode m) {
  switch (m) {
    case Mode::Det: return "det";
    case Mode::Nondet: return "nondet";
    case Mode::Prob: return "prob";
  }
  return "?";
}

std::string to_string(Move m) {
  switch (m) {
    case Move::Advance: return "advance";
    case Move::Retreat: return "retreat";
    case Move::Accept: return "accept";
    case Move::Reject: return "reject";
  }
  return "?";
}

std::size_t MachineSpec::state_index(const std::string& state) const {
  auto it = std::find(states.begin(), states.end(), state);
  if (it == states.end()) throw std::out_of_range("unknown state '" + state + "'");
  return static_cast<std::size_t>(it - states.begin());
}

const std::vector<Action>* MachineSpec::actions(const std::string& state, char symbol) const {
  auto it = transitions.find({state, symbol});
  return it == transitions.end() ? nullptr : &it->second;
}

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> tokens(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

bool valid_name(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '\'';
  });
}

struct PendingLine {
  std::size_t line;
  std::string state;
  char symbol;
  Action action;
};

}  // namespace

MachineSpec parse_machine(std::string_view text) {
  MachineSpec spec;
  std::set<std::string> seen_headers;
  std::vector<PendingLine> pending;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;

    auto arrow = line.find("->");
    if (arrow == std::string::npos) {
      auto colon = line.find(':');
      if (colon == std::string::npos) throw ParseError(lineno, "expected 'key: value' or a transition");
      std::string key = trim(line.substr(0, colon));
      std::string value = trim(line.substr(colon + 1));
      if (!seen_headers.insert(key).second) throw ParseError(lineno, "duplicate header '" + key + "'");
      if (key == "name") {
        spec.name = value;
      } else if (key == "alphabet") {
        std::string symbols;
        for (char c : value)
          if (c != ' ' && c != ',') symbols.push_back(c);
        std::set<char> distinct(symbols.begin(), symbols.end());
        if (distinct.size() != symbols.size()) throw ParseError(lineno, "repeated alphabet symbol");
        if (distinct.count(kEndMarker)) throw ParseError(lineno, "'*' is the end marker, not an input symbol");
        if (distinct.count('#') || distinct.count('-') || distinct.count('>'))
          throw ParseError(lineno, "reserved character in alphabet");
        spec.alphabet = symbols;
      } else if (key == "heads") {
        try {
          long h = std::stol(value);
          if (h < 1 || std::to_string(h) != value) throw std::invalid_argument("");
          spec.heads = static_cast<CoordIndex>(h);
        } catch (const std::exception&) {
          throw ParseError(lineno, "heads must be a positive integer");
        }
      } else if (key == "states") {
        for (char& c : value)
          if (c == ',') c = ' ';
        spec.states = tokens(value);
        std::set<std::string> distinct(spec.states.begin(), spec.states.end());
        if (spec.states.empty()) throw ParseError(lineno, "no states");
        if (distinct.size() != spec.states.size()) throw ParseError(lineno, "repeated state name");
        for (const auto& s : spec.states)
          if (!valid_name(s)) throw ParseError(lineno, "bad state name '" + s + "'");
      } else if (key == "mode") {
        if (value == "det") spec.mode = Mode::Det;
        else if (value == "nondet") spec.mode = Mode::Nondet;
        else if (value == "prob") spec.mode = Mode::Prob;
        else throw ParseError(lineno, "mode must be det, nondet or prob");
      } else if (key == "twoway") {
        if (value == "true") spec.two_way = true;
        else if (value == "false") spec.two_way = false;
        else throw ParseError(lineno, "twoway must be true or false");
      } else {
        throw ParseError(lineno, "unknown header '" + key + "'");
      }
      continue;
    }

    std::string lhs = line.substr(0, arrow);
    auto comma = lhs.find(',');
    if (comma == std::string::npos) throw ParseError(lineno, "expected 'state, symbol' before '->'");
    PendingLine p{lineno, trim(lhs.substr(0, comma)), 0, {}};
    std::string sym = trim(lhs.substr(comma + 1));
    if (sym.size() != 1) throw ParseError(lineno, "symbol must be a single character");
    p.symbol = sym[0];

    auto rhs = tokens(line.substr(arrow + 2));
    std::size_t k = 0;
    if (k < rhs.size() && !rhs[k].empty() && (std::isdigit(static_cast<unsigned char>(rhs[k][0])))) {
      try {
        p.action.weight = parse_rational(rhs[k]);
      } catch (const std::invalid_argument&) {
        throw ParseError(lineno, "bad weight '" + rhs[k] + "'");
      }
      ++k;
    }
    if (k >= rhs.size()) throw ParseError(lineno, "missing action");
    const std::string& act = rhs[k++];
    if (act == "advance") p.action.move = Move::Advance;
    else if (act == "retreat") p.action.move = Move::Retreat;
    else if (act == "accept") p.action.move = Move::Accept;
    else if (act == "reject") p.action.move = Move::Reject;
    else throw ParseError(lineno, "unknown action '" + act + "'");

    while (k < rhs.size()) {
      const std::string& word = rhs[k++];
      if (word == "swap") {
        if (k >= rhs.size()) throw ParseError(lineno, "swap needs a head number");
        try {
          long j = std::stol(rhs[k]);
          if (j < 2 || std::to_string(j) != rhs[k]) throw std::invalid_argument("");
          p.action.swap = static_cast<CoordIndex>(j);
        } catch (const std::exception&) {
          throw ParseError(lineno, "swap head must be an integer >= 2");
        }
        ++k;
        if (k < rhs.size() && rhs[k] == "at") {
          if (p.action.terminal()) throw ParseError(lineno, "terminal actions read no symbol after a swap");
          ++k;
          if (k >= rhs.size() || rhs[k].size() != 1) throw ParseError(lineno, "'at' needs a symbol");
          p.action.swap_symbol = rhs[k++][0];
        }
      } else if (word == "goto") {
        if (p.action.terminal()) throw ParseError(lineno, "terminal actions have no next state");
        if (k >= rhs.size()) throw ParseError(lineno, "goto needs a state");
        p.action.next = rhs[k++];
      } else {
        throw ParseError(lineno, "unexpected '" + word + "'");
      }
    }
    if (!p.action.terminal() && p.action.next.empty()) p.action.next = p.state;
    pending.push_back(std::move(p));
  }

  for (const char* required : {"alphabet", "heads", "states", "mode", "twoway"})
    if (!seen_headers.count(required)) throw ParseError(0, std::string("missing header '") + required + "'");

  auto known_symbol = [&](char c) { return c == kEndMarker || spec.alphabet.find(c) != std::string::npos; };
  auto known_state = [&](const std::string& s) {
    return std::find(spec.states.begin(), spec.states.end(), s) != spec.states.end();
  };
  std::map<std::pair<std::string, char>, Rational> totals;
  for (auto& p : pending) {
    if (!known_state(p.state)) throw ParseError(p.line, "unknown state '" + p.state + "'");
    if (!known_symbol(p.symbol)) throw ParseError(p.line, std::string("unknown symbol '") + p.symbol + "'");
    const Action& a = p.action;
    if (!a.terminal() && !known_state(a.next)) throw ParseError(p.line, "unknown state '" + a.next + "'");
    if (a.swap && *a.swap > spec.heads) throw ParseError(p.line, "swap head exceeds the number of heads");
    if (a.swap && !known_symbol(a.swap_symbol))
      throw ParseError(p.line, std::string("unknown symbol '") + a.swap_symbol + "'");
    if (a.move == Move::Retreat && !spec.two_way) throw ParseError(p.line, "retreat needs twoway: true");
    if (a.weight > 1 || a.weight < 0) throw ParseError(p.line, "weight outside [0,1]");
    if (spec.mode != Mode::Prob && a.weight != 1) throw ParseError(p.line, "weights other than 1 need mode: prob");
    auto key = std::make_pair(p.state, p.symbol);
    auto& list = spec.transitions[key];
    if (spec.mode == Mode::Det && !list.empty())
      throw ParseError(p.line, "second action for (" + p.state + ", " + p.symbol + ") in a det machine");
    totals[key] += a.weight;
    if (spec.mode == Mode::Prob && totals[key] > 1) throw ParseError(p.line, "weights for (" + p.state + ", " + p.symbol + ") exceed 1");
    list.push_back(std::move(p.action));
  }
  return spec;
}

MachineSpec load_machine(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_machine(buf.str());
}

std::string to_text(const MachineSpec& spec) {
  std::ostringstream os;
  os << "name: " << spec.name << "\n";
  os << "alphabet: " << spec.alphabet << "\n";
  os << "heads: " << spec.heads << "\n";
  os << "states:";
  for (const auto& s : spec.states) os << " " << s;
  os << "\nmode: " << to_string(spec.mode) << "\n";
  os << "twoway: " << (spec.two_way ? "true" : "false") << "\n";
  for (const auto& state : spec.states) {
    for (const auto& [key, actions] : spec.transitions) {
      if (key.first != state) continue;
      for (const auto& a : actions) {
        os << state << ", " << key.second << " -> ";
        if (spec.mode == Mode::Prob) os << to_string(a.weight) << " ";
        os << to_string(a.move);
        if (a.swap) {
          os << " swap " << *a.swap;
          if (a.swap_symbol != kEndMarker) os << " at " << a.swap_symbol;
        }
        if (!a.terminal() && a.next != state) os << " goto " << a.next;
        os << "\n";
      }
    }
  }
  return os.str();
}

std::vector<std::string> check(const MachineSpec& spec) {
  std::vector<std::string> out;
  if (spec.states.empty()) out.push_back("no states");
  if (spec.heads < 1) out.push_back("heads must be at least 1");
  for (const auto& [key, actions] : spec.transitions) {
    std::string where = "(" + key.first + ", " + key.second + ")";
    if (std::find(spec.states.begin(), spec.states.end(), key.first) == spec.states.end())
      out.push_back("unknown state in " + where);
    if (key.second != kEndMarker && spec.alphabet.find(key.second) == std::string::npos)
      out.push_back("unknown symbol in " + where);
    if (spec.mode == Mode::Det && actions.size() > 1) out.push_back("several actions for " + where);
    Rational total(0);
    for (const auto& a : actions) {
      total += a.weight;
      if (spec.mode != Mode::Prob && a.weight != 1) out.push_back("weight other than 1 in " + where);
      if (a.move == Move::Retreat && !spec.two_way) out.push_back("retreat in one-way machine at " + where);
      if (a.swap && (*a.swap < 2 || *a.swap > spec.heads)) out.push_back("bad swap head in " + where);
      if (!a.terminal() &&
          std::find(spec.states.begin(), spec.states.end(), a.next) == spec.states.end())
        out.push_back("unknown next state in " + where);
    }
    if (spec.mode == Mode::Prob && total > 1) out.push_back("weights exceed 1 in " + where);
  }
  return out;
}

}  // namespace gvm

#include "gvm/machine.hpp"

#include <gtest/gtest.h>

using namespace gvm;

namespace {

const char* kHeader =
    "alphabet: 01\n"
    "heads: 2\n"
    "states: a b\n"
    "mode: det\n"
    "twoway: false\n";

std::size_t error_line(const std::string& text) {
  try {
    parse_machine(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  ADD_FAILURE() << "no parse error for:\n" << text;
  return 0;
}

}  // namespace

TEST(Machine, ParsesTransitions) {
  MachineSpec m = parse_machine(std::string("name: demo  # comment\n") + kHeader +
                                "\n"
                                "a, 0 -> advance\n"
                                "a, 1 -> advance swap 2 goto b\n"
                                "b, * -> advance\n"
                                "b, 0 -> accept swap 2\n");
  EXPECT_EQ(m.name, "demo");
  EXPECT_EQ(m.heads, 2u);
  EXPECT_EQ(m.states, (std::vector<std::string>{"a", "b"}));
  const auto* a1 = m.actions("a", '1');
  ASSERT_NE(a1, nullptr);
  EXPECT_EQ(a1->at(0).swap, CoordIndex{2});
  EXPECT_EQ(a1->at(0).swap_symbol, kEndMarker);
  EXPECT_EQ(a1->at(0).next, "b");
  // Without goto the state is kept.
  EXPECT_EQ(m.actions("a", '0')->at(0).next, "a");
  EXPECT_EQ(m.actions("b", '1'), nullptr);
  EXPECT_TRUE(m.actions("b", '0')->at(0).terminal());
}

TEST(Machine, RetreatNeedsTwoWay) {
  std::string text = std::string(kHeader) + "a, * -> retreat\n";
  EXPECT_EQ(error_line(text), 6u);
}

TEST(Machine, ErrorsCarryLineNumbers) {
  std::string h = kHeader;  // five lines
  EXPECT_EQ(error_line(h + "a, 0 -> jump\n"), 6u);
  EXPECT_EQ(error_line(h + "a, 0 -> advance\na, 0 -> advance\n"), 7u);
  EXPECT_EQ(error_line(h + "a, 2 -> advance\n"), 6u);
  EXPECT_EQ(error_line(h + "c, 0 -> advance\n"), 6u);
  EXPECT_EQ(error_line(h + "a, 0 -> advance goto c\n"), 6u);
  EXPECT_EQ(error_line(h + "a, 0 -> advance swap 3\n"), 6u);
  EXPECT_EQ(error_line(h + "a, 0 -> advance swap 1\n"), 6u);
  EXPECT_EQ(error_line(h + "a, 0 -> 1/2 advance\n"), 6u);
  EXPECT_EQ(error_line(h + "a, 0 -> accept goto b\n"), 6u);
  EXPECT_EQ(error_line(h + "a, 0 -> accept swap 2 at 0\n"), 6u);
  EXPECT_EQ(error_line(h + "a 0 advance\n"), 6u);
  EXPECT_EQ(error_line("alphabet: 01\nheads: 0\nstates: a\nmode: det\ntwoway: false\n"), 2u);
  EXPECT_EQ(error_line("alphabet: 01\nheads: 1\nstates: a\nmode: maybe\ntwoway: false\n"), 4u);
  EXPECT_EQ(error_line("alphabet: 0*\nheads: 1\nstates: a\nmode: det\ntwoway: false\n"), 1u);
}

TEST(Machine, MissingHeaderIsNotTiedToALine) {
  EXPECT_EQ(error_line("alphabet: 01\nheads: 1\nmode: det\ntwoway: false\n"), 0u);
}

TEST(Machine, ModesConstrainWeights) {
  std::string prob = "alphabet: 01\nheads: 1\nstates: q\nmode: prob\ntwoway: false\n";
  MachineSpec m = parse_machine(prob + "q, 0 -> 1/3 advance\nq, 0 -> 2/3 accept\n");
  EXPECT_EQ(m.actions("q", '0')->at(0).weight, rat(1, 3));
  EXPECT_EQ(error_line(prob + "q, 0 -> 2/3 advance\nq, 0 -> 2/3 accept\n"), 7u);
  EXPECT_EQ(error_line(prob + "q, 0 -> -1/3 advance\n"), 6u);

  // Nondeterministic machines may offer any number of unit-weight actions.
  std::string nondet = "alphabet: 01\nheads: 1\nstates: q\nmode: nondet\ntwoway: false\n";
  m = parse_machine(nondet + "q, 0 -> advance\nq, 0 -> accept\nq, 0 -> reject\n");
  EXPECT_EQ(m.actions("q", '0')->size(), 3u);
  EXPECT_TRUE(check(m).empty());
}

TEST(Machine, TextRoundTrip) {
  MachineSpec m = parse_machine(std::string("name: rt\n") +
                                "alphabet: ab\nheads: 3\nstates: s t\nmode: prob\ntwoway: true\n"
                                "s, a -> 1/2 advance swap 3 at b goto t\n"
                                "s, a -> 1/4 retreat\n"
                                "t, * -> accept\n");
  MachineSpec again = parse_machine(to_text(m));
  EXPECT_EQ(to_text(again), to_text(m));
  EXPECT_EQ(again.actions("s", 'a')->at(0).swap_symbol, 'b');
  EXPECT_TRUE(check(again).empty());
}

TEST(Machine, CheckFindsHandBuiltProblems) {
  MachineSpec m;
  m.alphabet = "01";
  m.states = {"q"};
  m.transitions[{"q", '0'}] = {Action{Rational(1), Move::Retreat, std::nullopt, kEndMarker, "q"},
                               Action{Rational(1), Move::Advance, CoordIndex{2}, kEndMarker, "r"}};
  auto problems = check(m);
  EXPECT_GE(problems.size(), 4u);
}

TEST(Machine, ShippedExamplesLoad) {
  for (const char* name : {"one", "ten", "contains01", "coin"}) {
    MachineSpec m = load_machine(std::string(GVM_MACHINES) + "/" + name + ".gm");
    EXPECT_EQ(m.name, name);
    EXPECT_TRUE(check(m).empty()) << name;
  }
  EXPECT_THROW(load_machine(std::string(GVM_MACHINES) + "/missing.gm"), ParseError);
}

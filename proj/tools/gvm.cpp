// Command-line front end: run machines on words, compare languages with the
// direct simulator, dump encodings and run the equivalence experiments.
//
// Exit codes: 0 success, 1 usage or other error, 2 machine parse error,
// 3 undetermined verdict, 4 language mismatch or failed experiment.

#include "gvm/export.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace gvm;

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kParseError = 2;
constexpr int kUndetermined = 3;
constexpr int kMismatch = 4;

struct Config {
  std::string test;
  std::string cutpoint = "1/2";
  std::size_t max_steps = 10000;
  std::size_t max_len = 6;
  std::string out_dir;
  bool json = false;
  bool dot = false;
};

Test make_test(const Config& cfg, const MachineSpec& spec) {
  if (cfg.test.empty()) {
    Test t = default_test(spec);
    if (t.kind == Test::Kind::Prob) t = Test::prob(parse_rational(cfg.cutpoint));
    return t;
  }
  if (cfg.test == "det") return Test::det();
  if (cfg.test == "nl") return Test::nl();
  if (cfg.test == "conl") return Test::conl();
  if (cfg.test == "prob") return Test::prob(parse_rational(cfg.cutpoint));
  throw std::invalid_argument("unknown test '" + cfg.test + "'");
}

PlugOptions plug_options(const Config& cfg) {
  PlugOptions o;
  o.max_steps = cfg.max_steps;
  return o;
}

std::string join(const std::vector<std::string>& words) {
  std::string out = "{";
  for (std::size_t k = 0; k < words.size(); ++k) out += (k ? ", " : "") + (words[k].empty() ? "\"\"" : words[k]);
  return out + "}";
}

/// Writes `text` to out_dir/name, creating the directory.
void write_file(const Config& cfg, const std::string& name, const std::string& text) {
  std::filesystem::path dir = cfg.out_dir.empty() ? "." : cfg.out_dir;
  std::filesystem::create_directories(dir);
  std::ofstream os(dir / name);
  if (!os) throw std::runtime_error("cannot write " + (dir / name).string());
  os << text;
  std::cout << "wrote " << (dir / name).string() << "\n";
}

std::string lines_text(const std::vector<Json>& records) {
  std::ostringstream os;
  write_lines(os, records);
  return os.str();
}

std::string stem(const MachineSpec& spec, const std::string& word) {
  return (spec.name.empty() ? "machine" : spec.name) + "_" + (word.empty() ? "empty" : word);
}

int cmd_run(const std::string& path, const std::string& word, const Config& cfg) {
  MachineSpec spec = load_machine(path);
  Test test = make_test(cfg, spec);
  Graphing machine = encode_machine(spec);
  Run run = run_machine(spec, machine, word, plug_options(cfg));
  Verdict v = evaluate_test(run.result, test, run.word.regions);
  Masses m = masses(run.result, run.word.regions);
  std::cout << "machine: " << spec.name << "\n"
            << "word: *" << word << "\n"
            << "test: " << to_string(test) << "\n"
            << "paths: " << run.result.graphing.edges.size() << "\n"
            << "accept: " << to_string(m.accept) << "\n"
            << "reject: " << to_string(m.reject) << "\n"
            << "looping: " << to_string(m.looping) << "\n"
            << "partial: " << to_string(m.partial) << "\n"
            << "verdict: " << to_string(v) << "\n";
  if (cfg.json) {
    auto records = trace_records(machine, run.word.graphing, run.result);
    Json head{{"type", "run"}, {"machine", spec.name}, {"word", word}, {"test", to_string(test)},
              {"verdict", to_string(v)}, {"masses", to_json(m)}};
    records.insert(records.begin(), head);
    write_file(cfg, stem(spec, word) + ".trace.jsonl", lines_text(records));
  }
  if (cfg.dot) write_file(cfg, stem(spec, word) + ".dot", run_dot(spec, machine, run));
  return v == Verdict::Undetermined ? kUndetermined : kOk;
}

std::vector<std::string> minus(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::string> out;
  for (const auto& w : a)
    if (std::find(b.begin(), b.end(), w) == b.end()) out.push_back(w);
  return out;
}

int cmd_language(const std::string& path, const Config& cfg) {
  MachineSpec spec = load_machine(path);
  Test test = make_test(cfg, spec);
  Graphing machine = encode_machine(spec);
  TapeLayout layout = TapeLayout::for_machine(spec);
  LanguageResult got = language(machine, test, layout, cfg.max_len, !spec.two_way, plug_options(cfg));
  auto expected = oracle_language(spec, cfg.max_len, test);

  std::cout << "machine: " << spec.name << "\n"
            << "test: " << to_string(test) << "\n"
            << "max length: " << cfg.max_len << "\n"
            << "graphing: " << join(got.accepted) << "\n"
            << "oracle: " << join(expected) << "\n";
  auto extra = minus(got.accepted, expected);
  auto missing = minus(expected, got.accepted);
  std::cout << "only graphing: " << join(extra) << "\n"
            << "only oracle: " << join(missing) << "\n"
            << "undetermined: " << join(got.undetermined) << "\n";

  std::vector<Json> records;
  bool prob_mismatch = false;
  if (spec.mode == Mode::Prob) {
    std::cout << "word\taccept mass\toracle\tverdict\n";
    for (const auto& wv : got.verdicts) {
      Rational p = pfa_accept_prob(spec, wv.word);
      if (p != wv.masses.accept) prob_mismatch = true;
      std::cout << (wv.word.empty() ? "\"\"" : wv.word) << "\t" << to_string(wv.masses.accept) << "\t" << to_string(p)
                << "\t" << to_string(wv.verdict) << "\n";
    }
  }
  if (cfg.json) {
    for (const auto& wv : got.verdicts) {
      Json r{{"type", "word"}, {"word", wv.word}, {"verdict", to_string(wv.verdict)}, {"masses", to_json(wv.masses)}};
      if (spec.mode == Mode::Prob) r["oracle_accept"] = to_string(pfa_accept_prob(spec, wv.word));
      records.push_back(r);
    }
    records.insert(records.begin(), Json{{"type", "language"},
                                         {"machine", spec.name},
                                         {"test", to_string(test)},
                                         {"max_len", cfg.max_len},
                                         {"graphing", got.accepted},
                                         {"oracle", expected},
                                         {"undetermined", got.undetermined}});
    write_file(cfg, (spec.name.empty() ? "machine" : spec.name) + ".language.jsonl", lines_text(records));
  }
  if (!extra.empty() || !missing.empty() || prob_mismatch) return kMismatch;
  if (!got.undetermined.empty()) return kUndetermined;
  return kOk;
}

int cmd_encode_word(const std::string& word, const std::string& alphabet, std::size_t rows, CoordIndex heads,
                    bool one_way, const Config& cfg) {
  TapeLayout layout(alphabet, rows, heads);
  WordEncoding enc = encode_word(word, layout, one_way);
  auto records = graphing_records(enc.graphing, "*" + word);
  records.push_back(Json{{"type", "regions"},
                         {"initial", to_json(enc.regions.initial)},
                         {"accept", to_json(enc.regions.accept)},
                         {"reject", to_json(enc.regions.reject)}});
  std::string text = lines_text(records);
  if (cfg.out_dir.empty())
    std::cout << text;
  else
    write_file(cfg, "word_" + (word.empty() ? std::string("empty") : word) + ".jsonl", text);
  return kOk;
}

int cmd_encode_machine(const std::string& path, const Config& cfg) {
  MachineSpec spec = load_machine(path);
  std::string text = lines_text(graphing_records(encode_machine(spec), spec.name));
  if (cfg.out_dir.empty())
    std::cout << text;
  else
    write_file(cfg, (spec.name.empty() ? "machine" : spec.name) + ".graphing.jsonl", text);
  return kOk;
}

int cmd_validate(const std::string& path) {
  MachineSpec spec = load_machine(path);
  Graphing g = encode_machine(spec);
  auto violations = validate(g);
  for (const auto& v : violations) std::cout << "edge " << v.edge << ": " << v.message << "\n";
  if (!violations.empty()) return kError;
  std::cout << spec.name << ": ok (" << to_string(spec.mode) << ", " << spec.heads << " head"
            << (spec.heads == 1 ? "" : "s") << ", " << (spec.two_way ? "two-way" : "one-way") << ", "
            << g.edges.size() << " edges, class " << to_string(classify(g)) << ")\n";
  return kOk;
}

struct ExperimentArgs {
  std::string kind;
  CoordIndex i = 2;
  CoordIndex j = 3;
  std::size_t depth = 4;
  std::size_t n = 200;
  std::uint64_t seed = 1;
  std::string cls = "det";
  std::string machine;
  /// 0 picks the experiment's default: 6 for separation, 8 for compile.
  std::size_t word_len = 0;
  std::size_t parts = 8;
};

GraphingClass parse_class(const std::string& s) {
  if (s == "det") return GraphingClass::Deterministic;
  if (s == "nondet") return GraphingClass::NonDeterministic;
  if (s == "prob") return GraphingClass::Probabilistic;
  throw std::invalid_argument("unknown class '" + s + "'");
}

Json compile_json(const MachineSpec& spec, const MachineCompileReport& r) {
  Json edges = Json::array();
  for (std::size_t k = 0; k < r.searches.size(); ++k) {
    Json e = to_json(r.searches[k]);
    e["edge"] = k;
    edges.push_back(e);
  }
  Json out{{"type", "compile"},
           {"machine", spec.name},
           {"generators", "m" + std::to_string(spec.heads)},
           {"compiled", r.compiled},
           {"cost_before", to_string(r.cost_before)},
           {"edges", edges}};
  if (r.compiled) {
    out["cost_after"] = to_string(r.cost_after);
    out["max_len"] = r.max_len;
    out["accepted_before"] = r.language_before.size();
    out["accepted_after"] = r.language_after.size();
    out["language_equal"] = r.language_equal();
  }
  return out;
}

int cmd_experiment(const ExperimentArgs& a, const Config& cfg) {
  std::vector<Json> records;
  bool ok = true;
  if (a.kind == "cost") {
    TreeingCost c = treeing_cost(a.i, a.depth);
    records.push_back(to_json(c));
    std::cout << "cost i=" << a.i << " depth=" << a.depth << ": partial " << to_string(c.partial) << ", total "
              << to_string(c.exact_total) << "\n";
  } else if (a.kind == "separation") {
    SeparationReport r = separation_experiment(a.i, a.j, {a.word_len ? a.word_len : 6, a.parts});
    records.push_back(to_json(r));
    std::cout << r.label << " m" << a.i << " vs m" << a.j << ": s_" << a.j << " in m" << a.i << " "
              << (r.forward.witness ? "compilable" : "no witness within bounds") << "; s_" << a.i << " in m" << a.j
              << " " << (r.backward.witness ? "compilable" : "no witness within bounds") << "; totals "
              << to_string(r.total_i) << " vs " << to_string(r.total_j) << "\n";
    ok = !r.forward.witness && r.backward.witness && r.costs_differ;
  } else if (a.kind == "closure") {
    ClosureReport r = closure_experiment(parse_class(a.cls), a.n, a.seed);
    records.push_back(to_json(r));
    std::cout << "closure " << a.cls << " seed=" << a.seed << ": " << r.preserved << "/" << r.clean << " preserved ("
              << r.attempts << " attempts)\n";
    ok = r.passed();
  } else if (a.kind == "associativity") {
    AssociativityReport r = associativity_experiment(a.n, a.seed);
    records.push_back(to_json(r));
    std::cout << "associativity seed=" << a.seed << ": " << r.equal << "/" << r.clean << " equal (" << r.attempts
              << " attempts)\n";
    ok = r.passed();
  } else if (a.kind == "compile") {
    if (a.machine.empty()) throw std::invalid_argument("compile needs --machine");
    MachineSpec spec = load_machine(a.machine);
    MachineCompileReport r = compile_machine_experiment(spec, cfg.max_len, {a.word_len ? a.word_len : 8, a.parts});
    records.push_back(compile_json(spec, r));
    std::cout << "compile " << spec.name << " into m" << spec.heads << " generators: "
              << (r.compiled ? "compiled" : "no witness within bounds") << "\n";
    if (r.compiled)
      std::cout << "cost " << to_string(r.cost_before) << " -> " << to_string(r.cost_after) << "; language up to "
                << r.max_len << (r.language_equal() ? " unchanged" : " changed") << "\n";
    ok = r.language_equal();
  } else {
    throw std::invalid_argument("unknown experiment '" + a.kind + "'");
  }
  std::string text = lines_text(records);
  if (cfg.json || !cfg.out_dir.empty())
    write_file(cfg, a.kind + ".jsonl", text);
  else
    std::cout << text;
  return ok ? kOk : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact interaction graphing machine"};
  app.require_subcommand(1);
  Config cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--max-steps", cfg.max_steps, "Longest path explored")->check(CLI::PositiveNumber);
    sub->add_option("--out", cfg.out_dir, "Output directory");
    sub->add_flag("--json", cfg.json, "Write JSON-lines records");
  };
  auto add_test = [&](CLI::App* sub) {
    sub->add_option("--test", cfg.test, "det, nl, conl or prob (default from the machine mode)")
        ->check(CLI::IsMember({"det", "nl", "conl", "prob"}));
    sub->add_option("--cutpoint", cfg.cutpoint, "Cutpoint p/q of the prob test, in [0,1)");
  };

  std::string machine, word;
  auto* run = app.add_subcommand("run", "Run a machine on one word");
  run->add_option("machine", machine, "Machine file")->required();
  run->add_option("word", word, "Input word (may be empty)")->required();
  add_test(run);
  add_common(run);
  run->add_flag("--dot", cfg.dot, "Write a DOT drawing of the computation");

  auto* lang = app.add_subcommand("language", "Compare the language with the direct simulator");
  lang->add_option("machine", machine, "Machine file")->required();
  lang->add_option("--max-len", cfg.max_len, "Longest word")->check(CLI::NonNegativeNumber);
  add_test(lang);
  add_common(lang);

  auto* encode = app.add_subcommand("encode", "Dump a word or machine graphing");
  encode->require_subcommand(1);
  std::string alphabet = "01";
  std::size_t rows = 1;
  CoordIndex heads = 1;
  bool one_way = false;
  auto* enc_word = encode->add_subcommand("word", "Word graphing");
  enc_word->add_option("word", word, "Input word (may be empty)")->required();
  enc_word->add_option("--alphabet", alphabet, "Input symbols");
  enc_word->add_option("--rows", rows, "State rows")->check(CLI::PositiveNumber);
  enc_word->add_option("--heads", heads, "Heads")->check(CLI::PositiveNumber);
  enc_word->add_flag("--one-way", one_way, "Omit the backward edges");
  enc_word->add_option("--out", cfg.out_dir, "Output directory");
  auto* enc_machine = encode->add_subcommand("machine", "Machine graphing");
  enc_machine->add_option("machine", machine, "Machine file")->required();
  enc_machine->add_option("--out", cfg.out_dir, "Output directory");

  auto* val = app.add_subcommand("validate", "Parse a machine and validate its graphing");
  val->add_option("machine", machine, "Machine file")->required();

  ExperimentArgs ex;
  auto* exp = app.add_subcommand("experiment", "Equivalence and property experiments");
  exp->add_option("kind", ex.kind, "cost, compile, separation, closure or associativity")
      ->required()
      ->check(CLI::IsMember({"cost", "compile", "separation", "closure", "associativity"}));
  exp->add_option("--i", ex.i, "Heads of the smaller microcosm / permuted coordinates")->check(CLI::PositiveNumber);
  exp->add_option("--j", ex.j, "Heads of the larger microcosm")->check(CLI::PositiveNumber);
  exp->add_option("--depth", ex.depth, "Dyadic depth of the treeing");
  exp->add_option("--n", ex.n, "Number of random samples")->check(CLI::PositiveNumber);
  exp->add_option("--seed", ex.seed, "Random seed (default 1)");
  exp->add_option("--class", ex.cls, "det, nondet or prob")->check(CLI::IsMember({"det", "nondet", "prob"}));
  exp->add_option("--machine", ex.machine, "Machine file (compile)");
  exp->add_option("--word-len", ex.word_len, "Longest word in compilation searches (default 6, 8 for compile)")
      ->check(CLI::PositiveNumber);
  exp->add_option("--parts", ex.parts, "Most parts in a compilation witness")->check(CLI::PositiveNumber);
  exp->add_option("--max-len", cfg.max_len, "Longest input word (compile)");
  exp->add_option("--out", cfg.out_dir, "Output directory");
  exp->add_flag("--json", cfg.json, "Write the report to a file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(machine, word, cfg);
    if (*lang) return cmd_language(machine, cfg);
    if (*enc_word) return cmd_encode_word(word, alphabet, rows, heads, one_way, cfg);
    if (*enc_machine) return cmd_encode_machine(machine, cfg);
    if (*val) return cmd_validate(machine);
    if (*exp) return cmd_experiment(ex, cfg);
  } catch (const ParseError& e) {
    std::cerr << (machine.empty() ? ex.machine : machine) << ": " << e.what() << "\n";
    return kParseError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}

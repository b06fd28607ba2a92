#ifndef GVM_ENCODINGS_HPP
#define GVM_ENCODINGS_HPP

// Words and automata as graphings.
//
// Every symbol of the alphabet (plus the end marker `*`, symbol index 0) owns
// two cells per state row, In and Out, followed by the accept and reject cells
// of that row. A word of length n slices coordinate 1 into n+1 positions;
// position 0 holds the end marker and the word is read cyclically. Coordinates
// 2..heads hold the positions of parked heads.

#include "gvm/execution.hpp"
#include "gvm/machine.hpp"

#include <string>
#include <vector>

namespace gvm {

enum class Port { In, Out };

class TapeLayout {
 public:
  TapeLayout(std::string alphabet, std::size_t rows = 1, CoordIndex heads = 1);
  static TapeLayout for_machine(const MachineSpec& spec);

  const std::string& alphabet() const { return alphabet_; }
  std::size_t rows() const { return rows_; }
  CoordIndex heads() const { return heads_; }
  std::size_t symbol_count() const { return alphabet_.size() + 1; }
  Cell row_stride() const { return static_cast<Cell>(2 * symbol_count() + 2); }

  /// 0 for the end marker; throws std::invalid_argument on unknown symbols.
  std::size_t symbol_index(char symbol) const;
  char symbol_at(std::size_t index) const;

  Cell cell(char symbol, Port port, std::size_t row) const;
  Cell accept_cell(std::size_t row) const;
  Cell reject_cell(std::size_t row) const;

  /// What a cell stands for; nullopt outside the layout.
  struct Region {
    enum class Kind { Symbol, Accept, Reject } kind;
    char symbol = 0;
    Port port = Port::In;
    std::size_t row = 0;
  };
  std::optional<Region> region_of(Cell cell) const;
  /// e.g. "*i", "0o", "accept", with "@row" appended when rows > 1 or
  /// a row name is supplied.
  std::string region_name(Cell cell, const std::vector<std::string>& row_names = {}) const;

  MeasurableSet symbol_cells() const;
  MeasurableSet all_cells() const;

 private:
  std::string alphabet_;
  std::size_t rows_;
  CoordIndex heads_;
};

struct WordEncoding {
  std::string word;
  bool one_way = false;
  Graphing graphing;
  TestRegions regions;
};

/// Throws std::invalid_argument on symbols outside the alphabet.
WordEncoding encode_word(const std::string& word, const TapeLayout& layout, bool one_way = false);

/// Machine graphing in m_heads; weights are trivial unless mode is prob.
Graphing encode_machine(const MachineSpec& spec);

/// Words of length <= max_len over the alphabet, by length then in
/// lexicographic order of the sorted symbols.
std::vector<std::string> words_up_to(const std::string& alphabet, std::size_t max_len);

struct WordVerdict {
  std::string word;
  Verdict verdict;
  Masses masses;
};

struct LanguageResult {
  std::vector<std::string> accepted;
  std::vector<std::string> undetermined;
  std::vector<WordVerdict> verdicts;
};

/// Runs `program` against every word of length <= max_len.
LanguageResult language(const Graphing& program, const Test& test, const TapeLayout& layout, std::size_t max_len,
                        bool one_way, const PlugOptions& options = {});

struct Run {
  WordEncoding word;
  PlugResult result;
};

/// Plugs a machine against one word, using one-way words for one-way machines.
Run run_machine(const MachineSpec& spec, const Graphing& machine, const std::string& word,
                const PlugOptions& options = {});

}  // namespace gvm

#endif  // GVM_ENCODINGS_HPP

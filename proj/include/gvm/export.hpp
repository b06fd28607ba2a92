#ifndef GVM_EXPORT_HPP
#define GVM_EXPORT_HPP

// JSON-lines records and DOT drawings. Rationals are always "p/q" strings;
// plain integers are used only for cells, indices and counts.

#include "gvm/encodings.hpp"
#include "gvm/equivalence.hpp"
#include "gvm/experiments.hpp"
#include "gvm/oracle.hpp"

#include <json.hpp>

#include <ostream>
#include <set>
#include <string>
#include <vector>

namespace gvm {

using Json = nlohmann::ordered_json;

Json to_json(const Interval& i);
Json to_json(const Box& b);
Json to_json(const MeasurableSet& s);
Json to_json(const Realizer& r);
Json to_json(const Weight& w);
Json to_json(const Masses& m);

/// One header record followed by one record per edge.
std::vector<Json> graphing_records(const Graphing& g, const std::string& label);

/// One record per result path (with the regions visited at every step) and
/// one per unresolved piece.
std::vector<Json> trace_records(const Graphing& f, const Graphing& g, const PlugResult& result);

Json to_json(const TreeingCost& c);
Json to_json(const CompileSearch& s);
Json to_json(const SeparationReport& r);
Json to_json(const ClosureReport& r);
Json to_json(const AssociativityReport& r);

void write_lines(std::ostream& os, const std::vector<Json>& records);

/// Edges (side, index) lying on a path from the initial region into accept.
std::set<Step> accepting_steps(const PlugResult& result, const TestRegions& regions);

/// Machine and word edges between named regions. Dashed edges permute
/// coordinates; bold edges lie on an accepting path.
std::string run_dot(const MachineSpec& spec, const Graphing& machine, const Run& run);

/// Whether a DOT text marks any edge bold.
bool dot_has_bold(const std::string& dot);

}  // namespace gvm

#endif  // GVM_EXPORT_HPP

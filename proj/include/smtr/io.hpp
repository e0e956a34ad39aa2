#pragma once

#include <string>

#include "smtr/instance.hpp"
#include "smtr/reductions.hpp"
#include "smtr/sat.hpp"

namespace smtr {

// Syntax error with the 1-based input line it was found on.
class ParseError : public ValidationError {
 public:
  ParseError(int line, const std::string& message)
      : ValidationError("line " + std::to_string(line) + ": " + message), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct ParsedInstance {
  Instance instance;
  RestrictedEdgeSets restricted;
};

// Instance file format (indices 1-based per side, '#' lines are comments):
//   instance <n_men> <n_women>
//   m <i>: <group>(; <group>)*     groups: "3" or "(1 4)"
//   w <j>: <group>(; <group>)*
//   forbidden <i> <j>
//   forced <i> <j>
//   free <i> <j>
// Missing list lines mean empty lists. Reciprocity and restriction
// invariants are checked before returning.
ParsedInstance parse_instance(const std::string& text);
std::string serialize_instance(const Instance& inst, const RestrictedEdgeSets& r);

// Matching files: one `<i> <j>` pair per line, 1-based.
Matching parse_matching(const std::string& text, const Instance& inst);
std::string serialize_matching(const Matching& m);

// Formula files: header `p 1in3 <nvars> <nclauses>`, then one clause per
// line as three 1-based variable indices.
SatFormula parse_formula(const std::string& text);
std::string serialize_formula(const SatFormula& f);

// Line-oriented gadget registry: `vertex <id> role <name>`, `edge <i> <j>
// stage <tag>`, and a `master <side> <groups>` line when present. Vertex ids
// carry their side ("m3", "w5").
std::string serialize_registry(const ReductionOutput& out);

}  // namespace smtr

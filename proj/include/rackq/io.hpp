#pragma once

#include "rackq/coset.hpp"
#include "rackq/freequandle.hpp"
#include "rackq/rack.hpp"

#include <iosfwd>
#include <string>

namespace rackq {

// Rack files, two formats:
//   JSON: {"size": n, "table": [[...], ...]}
//   text: header "RACK n" or "QUANDLE n", then n rows of n integers
// The parser sniffs the format, reports positions on parse errors, and
// validates the table (axiom failures are ValidationErrors).
FiniteRack parse_rack(const std::string& text);
FiniteRack parse_rack_stream(std::istream& in);

std::string emit_rack_json(const FiniteRack& r);  // canonical, byte-stable
std::string emit_rack_text(const FiniteRack& r);

// Group-spec files:
//   PERM n
//   (0 1)(2 3)          one generator per line, disjoint cycles, 0-based
//   ...
//   PAIR (0 1) : (0 1)  optional coset-rack pairs: element s, then generators of H_s
// '#' starts a comment; '()' is the identity.
struct GroupSpec {
    int degree = 0;
    std::vector<Perm> generators;
    std::vector<CosetPair> pairs;
};
GroupSpec parse_group_spec(const std::string& text);
CosetRackSpec coset_spec_from_group_spec(const GroupSpec& gs);  // requires PAIR lines

Perm parse_cycles(const std::string& text, int degree);  // "(0 1)(2 3)", "()" = identity

// Free-quandle element syntax: CONJUGATOR@GENERATOR with generator x or y and
// the conjugator a word over {x,y,X,Y} (capitals = inverses) or power tokens
// like "x^3 y^-2"; empty conjugator allowed ("@x").
FQElement parse_fq_element(const std::string& text);
std::string emit_fq_element(const FQElement& e);

} // namespace rackq

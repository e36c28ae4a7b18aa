#pragma once

#include "intset.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace shiftlab {

// Parser for set description files: one `name = rule` per line, `#`
// comments, later rules may reference earlier names. Rule constructors:
//
//   catalog(thick_powers2)
//   finite{2, 3, 5}
//   intervals(n from 1: [2^n, 2^n + n])
//   grid(mod=18, residues={0,1}, min=18)
//   finitesums(10^n, depth=20)
//   shift(REF, -2)
//   complement(REF)
//   union(REF, REF, ...)
//   intersect(REF, REF, ...)
//   diffset(REF, within=100000)
//
// REF is a previously defined name or a nested rule.
struct ParsedSets {
    std::map<std::string, IntSet> by_name;
    std::vector<std::string> order;
};

ParsedSets parse_set_description(std::string_view text);

// Convenience: parse the description and return the named set, or the
// last-defined set when name is empty.
IntSet parse_set_selection(std::string_view text, const std::string& name);

} // namespace shiftlab

#pragma once

#include "gpic/group.hpp"

#include <string>
#include <vector>

namespace gpic {

/// Parsed form of the group-spec grammar:
///
///   name := ("C"|"D"|"S"|"A") digits | "Q8" | "V4" | "EA(" p "," r ")"
///   expr := name ("x" name)* | "perm:" cycles
///
/// Cycle notation is 1-based with whitespace-separated points, e.g.
/// "(1 2 3)(4 5)"; multiple generators are separated by commas.
struct GroupAtom {
    enum class Family { C, D, S, A, Q8, V4, EA, Perm };
    Family family;
    int n = 0;               // C/D/S/A parameter
    int p = 0, r = 0;        // EA parameters
    std::vector<Perm> gens;  // Perm generators (0-based, trailing fixed points trimmed)

    bool operator==(const GroupAtom& o) const {
        return family == o.family && n == o.n && p == o.p && r == o.r && gens == o.gens;
    }
};

struct GroupSpec {
    std::vector<GroupAtom> atoms; // direct product; a Perm atom stands alone

    bool operator==(const GroupSpec& o) const { return atoms == o.atoms; }
};

/// Parses the grammar above.  Throws ParseError (with position) or
/// UnsupportedFamily.
GroupSpec parse_group_spec(const std::string& text);

/// Canonical text; parse(print(spec)) == spec.
std::string print_group_spec(const GroupSpec& spec);

/// Builds the group: named families on standard permutation domains,
/// direct products on disjoint domains.
FiniteGroup realize(const GroupSpec& spec, std::size_t cap = 256);

/// parse + realize in one step.
FiniteGroup realize_group(const std::string& text, std::size_t cap = 256);

} // namespace gpic

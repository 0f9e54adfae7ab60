#pragma once

#include "gpic/cohomology.hpp"
#include "gpic/group_spec.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gpic {

/// One ramified orbit of a G-action on a curve: the inertia subgroup of a
/// point in the orbit.  `declared_cyclic` records what the fixture asserted
/// (validation compares it against the resolved subgroup).
struct OrbitRecord {
    Subgroup inertia;
    bool declared_cyclic = true;
    int multiplicity = 1;
};

/// Ramification data of a G-action: finitely many ramified orbits plus,
/// by default, one generic free orbit (the action has infinitely many free
/// orbits; one representative carries all the degree information).
struct RamificationDatum {
    std::vector<OrbitRecord> orbits;
    bool has_generic_orbit = true;
};

/// Inertia spec as it appears in fixture files: either a plain order or a
/// group-spec string to match structurally.
struct InertiaSpec {
    std::optional<long long> order;
    std::optional<std::string> spec;
    bool cyclic = true;
    int multiplicity = 1;
};

/// Resolves an inertia spec to a concrete subgroup of G (cyclic subgroups
/// first, then budgeted two-generator closures).  Throws InertiaNotSubgroup
/// if nothing matches.
Subgroup resolve_inertia(const FiniteGroup& g, const InertiaSpec& spec);

/// Rejects tame records with non-cyclic inertia: when char = 0 or char does
/// not divide |I| the action at the orbit is tame, and tame inertia on a
/// curve is cyclic.  Wild records may be non-cyclic.
void validate_tameness(const RamificationDatum& ram, long long characteristic);

/// b = gcd of the orbit degrees [G:I], including |G| for the generic orbit.
long long b_invariant(const FiniteGroup& g, const RamificationDatum& ram);

/// H^1(G, Div_0) = Z/b.
FinAbGroup h1_div0(const FiniteGroup& g, const RamificationDatum& ram);

/// Independent route: cokernel of the degree map on the G-fixed sublattice
/// of the finite divisor model.  Must agree with h1_div0.
FinAbGroup h1_div0_bar_check(const FiniteGroup& g, const RamificationDatum& ram,
                             const CohomologyOptions& opt = {});

/// The finite G-stable chunk of Div(X): one induced module per ramified
/// orbit plus a regular summand for the generic orbit.
ZGModule divisor_module(const FiniteGroup& g, const RamificationDatum& ram);

/// Cokernel of Div(X)^G -> Pic(X)^G: equals H^2(G, F*), curve-independent.
FinAbGroup pic_coker(const FiniteGroup& g, long long characteristic,
                     const CohomologyOptions& opt = {});

/// All orders |C| compatible with (G, char, ram): divisors c of b such that
/// a cyclic group of order c is a quotient of H^2(G, F*).
std::vector<long long> c_constraints(const FiniteGroup& g, long long characteristic,
                                     const RamificationDatum& ram,
                                     const CohomologyOptions& opt = {});

/// |coker(Div_0^G -> Pic_0^G)| forced by exactness when |C| = c:
/// |H^2(G,F*)| / c.  Throws InadmissibleC when c is not in c_constraints.
long long pic0_coker_order(const FiniteGroup& g, long long characteristic,
                           const RamificationDatum& ram, long long c,
                           const CohomologyOptions& opt = {});

/// A scenario fixture: a (group, char, ramification) datum plus the
/// curve-dependent declared |C| (the tool validates declared values, it
/// never invents them).
struct Scenario {
    std::string group_spec;
    long long characteristic = 0;
    std::vector<InertiaSpec> orbit_specs;
    bool has_generic_orbit = true;
    std::optional<long long> declared_c;
    std::string provenance;
};

Scenario scenario_from_json_text(const std::string& text);
std::string scenario_to_json_text(const Scenario& s);
Scenario load_scenario(const std::string& path);

struct ResolvedScenario {
    FiniteGroup group;
    RamificationDatum ram;
    Scenario raw;
};
ResolvedScenario resolve_scenario(const Scenario& s, std::size_t cap = 256);

/// Full obstruction report for one scenario.
struct ObstructionReport {
    std::string group;
    long long characteristic;
    FinAbGroup h2;          // H^2(G, F*)
    long long b;
    FinAbGroup h1_div0;     // Z/b
    FinAbGroup h1_div0_lattice; // independent degree-cokernel route
    FinAbGroup pic_coker;
    std::vector<long long> c_divisors;
    std::vector<long long> pic0_coker_orders; // aligned with c_divisors
    std::optional<long long> declared_c;
    std::optional<long long> declared_pic0_order;
};

ObstructionReport obstruction_report(const ResolvedScenario& rs,
                                     const CohomologyOptions& opt = {});

/// Quotient consistency check (X, G) -> (Y = X/N, Q = G/N): N must be
/// normal and act freely relative to the ramification of X, the quotient
/// must match Y's group structurally, and then |C(Y)| must divide |C(X)|.
bool godown_check(const ResolvedScenario& x, const ResolvedScenario& y,
                  const Subgroup& n);

} // namespace gpic

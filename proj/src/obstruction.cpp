#include "gpic/obstruction.hpp"

#include "gpic/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

using json = nlohmann::ordered_json;

namespace gpic {

Subgroup resolve_inertia(const FiniteGroup& g, const InertiaSpec& spec) {
    long long order = 0;
    bool want_abelian = false;
    std::vector<long long> want_invariants;
    bool structure_known = false;

    if (spec.order) {
        order = *spec.order;
    } else if (spec.spec) {
        FiniteGroup model = realize_group(*spec.spec);
        order = model.order();
        structure_known = true;
        want_abelian = model.is_abelian();
        if (want_abelian)
            want_invariants = abelian_invariants(model);
        if (spec.cyclic && !(want_abelian && want_invariants.size() <= 1))
            throw InvalidDatum("record flagged cyclic but spec '" + *spec.spec +
                               "' is not cyclic");
    } else {
        throw InvalidDatum("inertia record needs an order or a group spec");
    }

    if (order < 1 || g.order() % order != 0)
        throw InertiaNotSubgroup("no subgroup of order " + std::to_string(order) +
                                 " in a group of order " + std::to_string(g.order()));

    auto matches = [&](const Subgroup& h) {
        if (h.order() != order)
            return false;
        if (spec.cyclic && !is_cyclic(h))
            return false;
        if (structure_known) {
            auto [hg, map] = subgroup_as_group(h);
            (void)map;
            if (hg.is_abelian() != want_abelian)
                return false;
            if (want_abelian && abelian_invariants(hg) != want_invariants)
                return false;
        }
        return true;
    };

    for (int x = 0; x < g.order(); ++x) {
        if (g.element_order(x) != order)
            continue;
        Subgroup h = cyclic_subgroup(g, x);
        if (matches(h))
            return h;
    }
    if (order == 1)
        return trivial_subgroup(g);
    for (const Subgroup& h : subgroups_of_order(g, static_cast<int>(order)))
        if (matches(h))
            return h;
    throw InertiaNotSubgroup("no matching subgroup of order " + std::to_string(order));
}

void validate_tameness(const RamificationDatum& ram, long long characteristic) {
    for (auto& rec : ram.orbits) {
        bool tame = characteristic == 0 || rec.inertia.order() % characteristic != 0;
        if (tame && !is_cyclic(rec.inertia))
            throw InvalidDatum("tame inertia must be cyclic (order " +
                               std::to_string(rec.inertia.order()) + ", characteristic " +
                               std::to_string(characteristic) + ")");
        if (!is_cyclic(rec.inertia) && rec.declared_cyclic)
            throw InvalidDatum("record declared cyclic but the resolved subgroup is not");
    }
}

long long b_invariant(const FiniteGroup& g, const RamificationDatum& ram) {
    long long b = 0;
    if (ram.has_generic_orbit)
        b = g.order();
    for (auto& rec : ram.orbits) {
        if (g.order() % rec.inertia.order() != 0)
            throw InertiaNotSubgroup("inertia order does not divide |G|");
        b = std::gcd(b, static_cast<long long>(g.order() / rec.inertia.order()));
    }
    if (b == 0)
        throw InvalidDatum("empty ramification datum with no generic orbit");
    return b;
}

FinAbGroup h1_div0(const FiniteGroup& g, const RamificationDatum& ram) {
    return FinAbGroup::cyclic(Int(b_invariant(g, ram)));
}

ZGModule divisor_module(const FiniteGroup& g, const RamificationDatum& ram) {
    std::vector<ZGModule> parts;
    for (auto& rec : ram.orbits)
        for (int i = 0; i < rec.multiplicity; ++i)
            parts.push_back(induced_module(g, rec.inertia));
    if (ram.has_generic_orbit)
        parts.push_back(induced_module(g, trivial_subgroup(g)));
    if (parts.empty())
        throw InvalidDatum("empty ramification datum with no generic orbit");
    ZGModule m = std::move(parts.front());
    for (size_t i = 1; i < parts.size(); ++i)
        m = m.direct_sum(parts[i]);
    return m;
}

FinAbGroup h1_div0_bar_check(const FiniteGroup& g, const RamificationDatum& ram,
                             const CohomologyOptions& opt) {
    ZGModule div = divisor_module(g, ram);
    if (div.rank() > opt.budget)
        throw BudgetExceeded(div.rank(), opt.budget);
    FixedPoints fp = fixed_points(div);
    // deg is the all-ones functional; the cokernel of deg restricted to the
    // fixed sublattice is Z/gcd of the basis degrees
    IntMat deg_on_fixed(1, fp.rank);
    for (int j = 0; j < fp.rank; ++j) {
        Int s = 0;
        for (int i = 0; i < div.rank(); ++i)
            s += fp.basis.at(i, j);
        deg_on_fixed.at(0, j) = s;
    }
    SNFResult r = smith_normal_form(deg_on_fixed);
    if (r.rank() == 0)
        throw InvalidDatum("degree map vanished on the fixed lattice");
    return FinAbGroup::cyclic(r.diag[0]);
}

FinAbGroup pic_coker(const FiniteGroup& g, long long characteristic,
                     const CohomologyOptions& opt) {
    return h2_units(g, characteristic, opt);
}

std::vector<long long> c_constraints(const FiniteGroup& g, long long characteristic,
                                     const RamificationDatum& ram,
                                     const CohomologyOptions& opt) {
    long long b = b_invariant(g, ram);
    FinAbGroup h2 = h2_units(g, characteristic, opt);
    // a finite abelian group has a cyclic quotient of order c exactly when
    // c divides its exponent
    long long bound = std::gcd(b, to_ll(h2.exponent()));
    for (auto& rec : ram.orbits)
        if (rec.inertia.order() == g.order())
            bound = 1; // totally ramified point forces C = 1
    std::vector<long long> cs;
    for (long long c = 1; c <= bound; ++c)
        if (bound % c == 0)
            cs.push_back(c);
    return cs;
}

long long pic0_coker_order(const FiniteGroup& g, long long characteristic,
                           const RamificationDatum& ram, long long c,
                           const CohomologyOptions& opt) {
    std::vector<long long> cs = c_constraints(g, characteristic, ram, opt);
    if (std::find(cs.begin(), cs.end(), c) == cs.end())
        throw InadmissibleC("declared |C| = " + std::to_string(c) +
                            " is not admissible for this scenario");
    return to_ll(h2_units(g, characteristic, opt).order()) / c;
}

// ---------------------------------------------------------------------------
// fixtures

namespace {

InertiaSpec inertia_from_json(const json& j) {
    InertiaSpec s;
    if (!j.contains("inertia"))
        throw IoError("orbit record without 'inertia'");
    const auto& in = j.at("inertia");
    if (in.is_number_integer())
        s.order = in.get<long long>();
    else if (in.is_string())
        s.spec = in.get<std::string>();
    else
        throw IoError("'inertia' must be an order or a group spec string");
    s.cyclic = j.value("cyclic", true);
    s.multiplicity = j.value("multiplicity", 1);
    if (s.multiplicity < 1)
        throw IoError("multiplicity must be >= 1");
    return s;
}

} // namespace

Scenario scenario_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw IoError(std::string("bad scenario JSON: ") + e.what());
    }
    Scenario s;
    if (!j.contains("group"))
        throw IoError("scenario without 'group'");
    s.group_spec = j.at("group").get<std::string>();
    s.characteristic = j.value("char", 0LL);
    if (s.characteristic != 0 && !is_prime(s.characteristic))
        throw IoError("'char' must be 0 or prime");
    if (j.contains("orbits"))
        for (const auto& rec : j.at("orbits"))
            s.orbit_specs.push_back(inertia_from_json(rec));
    s.has_generic_orbit = j.value("generic_orbit", true);
    if (j.contains("declared_c") && !j.at("declared_c").is_null())
        s.declared_c = j.at("declared_c").get<long long>();
    s.provenance = j.value("provenance", std::string{});
    return s;
}

std::string scenario_to_json_text(const Scenario& s) {
    json j;
    j["group"] = s.group_spec;
    j["char"] = s.characteristic;
    j["orbits"] = json::array();
    for (auto& o : s.orbit_specs) {
        json rec;
        if (o.spec)
            rec["inertia"] = *o.spec;
        else
            rec["inertia"] = *o.order;
        rec["cyclic"] = o.cyclic;
        if (o.multiplicity != 1)
            rec["multiplicity"] = o.multiplicity;
        j["orbits"].push_back(rec);
    }
    j["generic_orbit"] = s.has_generic_orbit;
    if (s.declared_c)
        j["declared_c"] = *s.declared_c;
    else
        j["declared_c"] = nullptr;
    j["provenance"] = s.provenance;
    return j.dump(2) + "\n";
}

Scenario load_scenario(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw IoError("cannot open scenario file " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return scenario_from_json_text(buf.str());
}

ResolvedScenario resolve_scenario(const Scenario& s, std::size_t cap) {
    ResolvedScenario rs{realize_group(s.group_spec, cap), {}, s};
    rs.ram.has_generic_orbit = s.has_generic_orbit;
    for (auto& os : s.orbit_specs) {
        OrbitRecord rec;
        rec.inertia = resolve_inertia(rs.group, os);
        rec.declared_cyclic = os.cyclic;
        rec.multiplicity = os.multiplicity;
        rs.ram.orbits.push_back(std::move(rec));
    }
    validate_tameness(rs.ram, s.characteristic);
    return rs;
}

ObstructionReport obstruction_report(const ResolvedScenario& rs,
                                     const CohomologyOptions& opt) {
    ObstructionReport rep;
    rep.group = rs.raw.group_spec;
    rep.characteristic = rs.raw.characteristic;
    rep.h2 = h2_units(rs.group, rs.raw.characteristic, opt);
    rep.b = b_invariant(rs.group, rs.ram);
    rep.h1_div0 = h1_div0(rs.group, rs.ram);
    rep.h1_div0_lattice = h1_div0_bar_check(rs.group, rs.ram, opt);
    rep.pic_coker = rep.h2;
    rep.c_divisors = c_constraints(rs.group, rs.raw.characteristic, rs.ram, opt);
    for (long long c : rep.c_divisors)
        rep.pic0_coker_orders.push_back(to_ll(rep.h2.order()) / c);
    rep.declared_c = rs.raw.declared_c;
    if (rs.raw.declared_c) {
        rep.declared_pic0_order = pic0_coker_order(rs.group, rs.raw.characteristic,
                                                   rs.ram, *rs.raw.declared_c, opt);
    }
    return rep;
}

bool godown_check(const ResolvedScenario& x, const ResolvedScenario& y,
                  const Subgroup& n) {
    if (n.parent != &x.group)
        throw InvalidDatum("N must be a subgroup of the X scenario's group");
    if (!is_subgroup(n))
        throw InvalidDatum("N is not a subgroup");
    if (!is_normal(n))
        throw NotNormal("N is not normal in G");
    // freeness: no conjugate of an inertia group meets N (normality makes
    // one representative per orbit enough)
    for (auto& rec : x.ram.orbits)
        for (int m : rec.inertia.members)
            if (m != 0 && n.contains(m))
                throw NotFree("N meets the inertia group of a ramified orbit");

    FiniteGroup q = quotient_group(x.group, n);
    if (q.order() != y.group.order())
        throw InvalidDatum("G/N and the Y scenario's group have different orders");
    if (q.is_abelian() != y.group.is_abelian() ||
        (q.is_abelian() && abelian_invariants(q) != abelian_invariants(y.group)))
        throw InvalidDatum("G/N does not match the Y scenario's group");
    if (q.exponent() != y.group.exponent())
        throw InvalidDatum("G/N does not match the Y scenario's group (exponent)");

    if (!x.raw.declared_c || !y.raw.declared_c)
        throw InvalidDatum("godown check needs declared |C| on both scenarios");
    return *x.raw.declared_c % *y.raw.declared_c == 0;
}

} // namespace gpic

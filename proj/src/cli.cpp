#include "gpic/cli.hpp"

#include "gpic/cohomology.hpp"
#include "gpic/errors.hpp"
#include "gpic/obstruction.hpp"
#include "gpic/toric.hpp"
#include "gpic/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

using json = nlohmann::ordered_json;

namespace gpic {

namespace {

json finab_json(const FinAbGroup& g) {
    json factors = json::array();
    for (auto& d : g.factors())
        factors.push_back(to_ll(d));
    return factors;
}

void emit(std::ostream& out, const json& j, const std::string& format,
          const std::string& text) {
    if (format == "json")
        out << j.dump() << "\n";
    else
        out << text;
}

struct CommonOpts {
    std::string group;
    long long characteristic = 0;
    std::string ramification;
    std::string format = "text";
    long long budget = 5'000'000;
    unsigned seed = 0;
};

void add_format(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--budget", o.budget, "bar-resolution size budget");
    cmd->add_option("--seed", o.seed, "seed for sampling-based checks");
}

long long parse_char(const std::string& s) {
    long long v = std::stoll(s);
    if (v != 0 && !is_prime(v))
        throw InvalidDatum("--char must be 0 or prime");
    return v;
}

/// Scenario from --group/--char/--ramification: the file may carry group
/// and char itself; explicit flags win.
Scenario assemble_scenario(const CommonOpts& o, bool need_file) {
    Scenario s;
    if (!o.ramification.empty()) {
        s = load_scenario(o.ramification);
    } else if (need_file) {
        throw InvalidDatum("--ramification <file> is required");
    }
    if (!o.group.empty())
        s.group_spec = o.group;
    if (s.group_spec.empty())
        throw InvalidDatum("no group given (--group or fixture)");
    if (o.characteristic != 0 || o.ramification.empty())
        s.characteristic = o.characteristic;
    return s;
}

int cmd_schur(const CommonOpts& o, std::ostream& out) {
    CohomologyOptions copt{o.budget};
    FiniteGroup g = realize_group(o.group);
    FinAbGroup m = schur_multiplier(g, copt);
    json j;
    j["schema"] = 1;
    j["group"] = o.group;
    j["schur"] = finab_json(m);
    emit(out, j, o.format,
         "Schur multiplier of " + o.group + ": " + m.str() + "\n");
    return 0;
}

int cmd_h2_units(const CommonOpts& o, std::ostream& out) {
    CohomologyOptions copt{o.budget};
    FiniteGroup g = realize_group(o.group);
    FinAbGroup m = h2_units(g, o.characteristic, copt);
    json j;
    j["schema"] = 1;
    j["group"] = o.group;
    j["char"] = o.characteristic;
    j["h2_units"] = finab_json(m);
    emit(out, j, o.format,
         "H^2(G, F*) for " + o.group + " in characteristic " +
             std::to_string(o.characteristic) + ": " + m.str() + "\n");
    return 0;
}

int cmd_h1(const CommonOpts& o, std::ostream& out) {
    CohomologyOptions copt{o.budget};
    Scenario s = assemble_scenario(o, false);
    ResolvedScenario rs = resolve_scenario(s);
    ZGModule div = divisor_module(rs.group, rs.ram);
    // summand by summand: H^1 of a direct sum is the direct sum
    FinAbGroup h1;
    std::vector<Subgroup> parts;
    for (auto& rec : rs.ram.orbits)
        for (int i = 0; i < rec.multiplicity; ++i)
            parts.push_back(rec.inertia);
    if (rs.ram.has_generic_orbit)
        parts.push_back(trivial_subgroup(rs.group));
    for (auto& h : parts)
        h1 = h1.direct_sum(
            cohomology_group(rs.group, induced_module(rs.group, h), 1, 0, copt));
    json j;
    j["schema"] = 1;
    j["group"] = s.group_spec;
    j["module_rank"] = div.rank();
    j["h1"] = finab_json(h1);
    if (h1.free_rank() != 0)
        j["free_rank"] = h1.free_rank();
    emit(out, j, o.format,
         "H^1(G, Div model) for " + s.group_spec + " (rank " +
             std::to_string(div.rank()) + "): " + h1.str() + "\n");
    return 0;
}

int cmd_fixed(const CommonOpts& o, std::ostream& out) {
    Scenario s = assemble_scenario(o, false);
    ResolvedScenario rs = resolve_scenario(s);
    ZGModule div = divisor_module(rs.group, rs.ram);
    FixedPoints fp = fixed_points(div);
    json j;
    j["schema"] = 1;
    j["group"] = s.group_spec;
    j["module_rank"] = div.rank();
    j["fixed_rank"] = fp.rank;
    json basis = json::array();
    json degrees = json::array();
    for (int col = 0; col < fp.rank; ++col) {
        json vec = json::array();
        Int deg = 0;
        for (int i = 0; i < div.rank(); ++i) {
            vec.push_back(to_ll(fp.basis.at(i, col)));
            deg += fp.basis.at(i, col);
        }
        basis.push_back(std::move(vec));
        degrees.push_back(to_ll(deg));
    }
    j["degrees"] = degrees;
    j["basis"] = basis;
    std::ostringstream text;
    text << "fixed sublattice of " << s.group_spec << ": rank " << fp.rank
         << ", degrees";
    for (auto& d : degrees)
        text << " " << d;
    text << "\n";
    emit(out, j, o.format, text.str());
    return 0;
}

json report_json(const ObstructionReport& rep) {
    json j;
    j["schema"] = 1;
    j["group"] = rep.group;
    j["char"] = rep.characteristic;
    j["h2_units"] = finab_json(rep.h2);
    j["b"] = rep.b;
    j["h1_div0"] = finab_json(rep.h1_div0);
    j["h1_div0_lattice"] = finab_json(rep.h1_div0_lattice);
    j["pic_coker"] = finab_json(rep.pic_coker);
    j["c_divisors"] = rep.c_divisors;
    j["pic0_coker_order_range"] = rep.pic0_coker_orders;
    if (rep.declared_c) {
        j["declared_c"] = *rep.declared_c;
        j["declared_pic0_coker_order"] = *rep.declared_pic0_order;
    } else {
        j["declared_c"] = nullptr;
    }
    return j;
}

std::string report_text(const ObstructionReport& rep) {
    std::ostringstream os;
    os << "group " << rep.group << ", characteristic " << rep.characteristic << "\n"
       << "  H^2(G, F*) = " << rep.h2.str() << "  (= coker Div^G -> Pic^G)\n"
       << "  b = " << rep.b << ", H^1(G, Div_0) = " << rep.h1_div0.str()
       << " (lattice route: " << rep.h1_div0_lattice.str() << ")\n"
       << "  admissible |C|:";
    for (size_t i = 0; i < rep.c_divisors.size(); ++i)
        os << " " << rep.c_divisors[i] << "->coker " << rep.pic0_coker_orders[i];
    os << "\n";
    if (rep.declared_c)
        os << "  declared |C| = " << *rep.declared_c
           << ", coker(Div_0^G -> Pic_0^G) order " << *rep.declared_pic0_order << "\n";
    return os.str();
}

int cmd_obstruction(const CommonOpts& o, std::ostream& out) {
    CohomologyOptions copt{o.budget};
    Scenario s = assemble_scenario(o, false);
    ResolvedScenario rs = resolve_scenario(s);
    ObstructionReport rep = obstruction_report(rs, copt);
    emit(out, report_json(rep), o.format, report_text(rep));
    return 0;
}

int cmd_pic0(const CommonOpts& o, std::ostream& out) {
    CohomologyOptions copt{o.budget};
    Scenario s = assemble_scenario(o, true);
    ResolvedScenario rs = resolve_scenario(s);
    ObstructionReport rep = obstruction_report(rs, copt);
    json j;
    j["schema"] = 1;
    j["group"] = rep.group;
    j["char"] = rep.characteristic;
    j["c_divisors"] = rep.c_divisors;
    j["pic0_coker_order_range"] = rep.pic0_coker_orders;
    std::ostringstream text;
    if (rep.declared_c) {
        j["declared_c"] = *rep.declared_c;
        j["pic0_coker_order"] = *rep.declared_pic0_order;
        text << "coker(Div_0^G -> Pic_0^G) for declared |C| = " << *rep.declared_c
             << ": order " << *rep.declared_pic0_order << "\n";
    } else {
        j["declared_c"] = nullptr;
        text << "no declared |C|; possible coker orders:";
        for (long long v : rep.pic0_coker_orders)
            text << " " << v;
        text << "\n";
    }
    emit(out, j, o.format, text.str());
    return 0;
}

struct ToricOpts {
    std::string fan_file;
    std::string aut_file;
    std::string cycle_file;
};

std::vector<IntMat> load_aut_matrices(const std::string& path, int rank) {
    std::ifstream f(path);
    if (!f)
        throw IoError("cannot open automorphism file " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    json j;
    try {
        j = json::parse(buf.str());
    } catch (const json::exception& e) {
        throw IoError(std::string("bad automorphism JSON: ") + e.what());
    }
    const json& arr = j.is_array() ? j : j.at("matrices");
    std::vector<IntMat> mats;
    for (const auto& mj : arr) {
        IntMat m(rank, rank);
        for (int r = 0; r < rank; ++r)
            for (int c = 0; c < rank; ++c)
                m.at(r, c) = mj.at(r).at(c).get<long long>();
        mats.push_back(std::move(m));
    }
    return mats;
}

const char* completeness_str(Completeness c) {
    switch (c) {
    case Completeness::CompleteExact: return "complete (verified)";
    case Completeness::CompleteSampled: return "complete (sampled)";
    case Completeness::Incomplete: return "incomplete";
    default: return "not checked";
    }
}

int cmd_toric(const CommonOpts& o, const ToricOpts& t, std::ostream& out) {
    Fan fan = load_fan(t.fan_file);
    FanReport rep = validate_fan(fan, o.seed, 1000);
    json j;
    j["schema"] = 1;
    j["rank"] = fan.rank;
    j["rays"] = fan.rays.size();
    j["valid"] = rep.valid();
    j["violations"] = rep.violations;
    j["completeness"] = completeness_str(rep.completeness);
    std::ostringstream text;
    text << "fan: rank " << fan.rank << ", " << fan.rays.size() << " rays, "
         << fan.cones.size() << " higher cones; " << completeness_str(rep.completeness)
         << "\n";
    for (auto& v : rep.violations)
        text << "  violation: " << v << "\n";

    if (rep.valid()) {
        ClassGroup cg = divisor_class_group(fan);
        json cgj;
        cgj["free_rank"] = cg.group.free_rank();
        cgj["torsion"] = finab_json(cg.group);
        j["class_group"] = cgj;
        text << "divisor class group: " << cg.group.str() << "\n";

        if (!t.aut_file.empty()) {
            ToricAutGroup aut = toric_automorphisms(fan, load_aut_matrices(t.aut_file, fan.rank));
            j["aut_order"] = aut.group.order();
            json orbits_j = json::object();
            text << "automorphism group of order " << aut.group.order() << "\n";
            for (int k = 1; k <= fan.max_cone_dim(); ++k) {
                auto orbits = cone_orbits(aut, k);
                json ok = json::array();
                for (auto& orb : orbits)
                    ok.push_back(orb);
                orbits_j[std::to_string(k)] = ok;
                text << "  dim-" << k << " cones: " << orbits.size() << " orbit(s)\n";
            }
            j["cone_orbits"] = orbits_j;

            if (!t.cycle_file.empty()) {
                TCycle z = load_cycle(t.cycle_file);
                if (z.cone_dim == 1) {
                    InvariantDivisorResult res = invariant_divisor_in_class(fan, aut, z);
                    if (res.divisor) {
                        json coeffs = json::object();
                        for (auto& [c, v] : res.divisor->coeffs)
                            coeffs[std::to_string(c)] = to_ll(v);
                        j["invariant_divisor"] = coeffs;
                        json uj = json::array();
                        for (auto& v : *res.character)
                            uj.push_back(to_ll(v));
                        j["character"] = uj;
                        j["certified"] = res.certificate_checked;
                        text << "invariant representative found; certificate "
                             << (res.certificate_checked ? "verified" : "FAILED") << "\n";
                    } else {
                        json cert;
                        json nums = json::array();
                        for (auto& v : res.infeasibility->numerator)
                            nums.push_back(to_ll(v));
                        cert["numerators"] = nums;
                        cert["denominator"] = to_ll(res.infeasibility->denominator);
                        j["infeasibility_certificate"] = cert;
                        text << "no toric invariant representative (certified infeasible)\n";
                    }
                } else {
                    RepresentativeResult res = invariant_representative(aut, z);
                    if (res.cycle) {
                        json coeffs = json::object();
                        for (auto& [c, v] : res.cycle->coeffs)
                            coeffs[std::to_string(c)] = to_ll(v);
                        j["invariant_cycle"] = coeffs;
                        j["averaged"] = res.averaged;
                        j["certified"] = res.certificate_checked;
                        text << (res.averaged ? "orbit-averaged cycle"
                                              : "cycle already orbit-constant")
                             << "; certificate "
                             << (res.certificate_checked ? "verified" : "FAILED") << "\n";
                    } else {
                        j["offending_orbit"] = *res.offending_orbit;
                        text << "not orbit-constant and not averageable\n";
                    }
                }
            }
        }
    }
    emit(out, j, o.format, text.str());
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"group-cohomological obstructions for invariant divisors"};
    app.require_subcommand(1);

    CommonOpts o;
    ToricOpts t;
    std::string char_str = "0";
    std::string corpus_dir = "corpus";

    auto add_group = [&](CLI::App* cmd, bool required) {
        auto* opt = cmd->add_option("--group", o.group, "group spec, e.g. A5 or C2xC4");
        if (required)
            opt->required();
    };
    auto add_char = [&](CLI::App* cmd) {
        cmd->add_option("--char", char_str, "field characteristic (0 or prime)");
    };
    auto add_ram = [&](CLI::App* cmd) {
        cmd->add_option("--ramification", o.ramification, "scenario fixture (JSON)");
    };

    CLI::App* schur = app.add_subcommand("schur", "Schur multiplier of a group");
    add_group(schur, true);
    add_format(schur, o);

    CLI::App* h2u = app.add_subcommand("h2-units", "H^2(G, F*) for a characteristic");
    add_group(h2u, true);
    add_char(h2u);
    add_format(h2u, o);

    CLI::App* h1 = app.add_subcommand("h1", "H^1(G, Div model) (vanishes by Shapiro)");
    add_group(h1, false);
    add_char(h1);
    add_ram(h1);
    add_format(h1, o);

    CLI::App* fixed = app.add_subcommand("fixed", "G-fixed divisors of the finite model");
    add_group(fixed, false);
    add_char(fixed);
    add_ram(fixed);
    add_format(fixed, o);

    CLI::App* obs = app.add_subcommand("obstruction", "full obstruction report");
    add_group(obs, false);
    add_char(obs);
    add_ram(obs);
    add_format(obs, o);

    CLI::App* pic0 = app.add_subcommand("pic0", "degree-0 cokernel for a declared |C|");
    add_group(pic0, false);
    add_char(pic0);
    add_ram(pic0);
    add_format(pic0, o);

    CLI::App* toric = app.add_subcommand("toric", "fan validation and invariant cycles");
    toric->add_option("--fan", t.fan_file, "fan file (JSON)")->required();
    toric->add_option("--aut", t.aut_file, "automorphism matrices (JSON)");
    toric->add_option("--cycle", t.cycle_file, "cycle file (JSON)");
    add_format(toric, o);

    CLI::App* verify = app.add_subcommand("verify", "run the cross-verification suite");
    verify->add_option("corpus", corpus_dir, "corpus directory");
    add_format(verify, o);

    try {
        std::vector<std::string> argv = args;
        std::reverse(argv.begin(), argv.end());
        app.parse(argv);
        o.characteristic = parse_char(char_str);

        if (*schur)
            return cmd_schur(o, out);
        if (*h2u)
            return cmd_h2_units(o, out);
        if (*h1)
            return cmd_h1(o, out);
        if (*fixed)
            return cmd_fixed(o, out);
        if (*obs)
            return cmd_obstruction(o, out);
        if (*pic0)
            return cmd_pic0(o, out);
        if (*toric)
            return cmd_toric(o, t, out);
        if (*verify) {
            VerifyOptions vopt;
            vopt.seed = o.seed;
            vopt.budget = o.budget;
            const char* no_color = std::getenv("NO_COLOR");
            vopt.color = no_color == nullptr && false; // plain output by default
            int failures = run_verification(corpus_dir, out, vopt);
            return failures == 0 ? 0 : 1;
        }
        err << "error:cli: no subcommand\n";
        return 2;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            out << app.help();
            return 0;
        }
        err << "error:cli: " << e.what() << "\n";
        return 2;
    } catch (const BudgetExceeded& e) {
        err << "error:" << e.code() << ": " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        err << "error:" << e.code() << ": " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error:internal: " << e.what() << "\n";
        return 4;
    }
}

} // namespace gpic

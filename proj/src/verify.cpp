#include "gpic/verify.hpp"

#include "gpic/cohomology.hpp"
#include "gpic/errors.hpp"
#include "gpic/obstruction.hpp"
#include "gpic/toric.hpp"

#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace gpic {

namespace {

struct Checker {
    std::ostream& out;
    bool color;
    int failures = 0;

    void report(const std::string& name, bool ok, const std::string& detail) {
        const char* pass = color ? "\033[32mPASS\033[0m" : "PASS";
        const char* fail = color ? "\033[31mFAIL\033[0m" : "FAIL";
        out << (ok ? pass : fail) << " " << name;
        if (!detail.empty())
            out << ": " << detail;
        out << "\n";
        if (!ok)
            ++failures;
    }

    void run(const std::string& name, const std::function<std::string()>& body) {
        try {
            std::string detail = body();
            report(name, true, detail);
        } catch (const std::exception& e) {
            report(name, false, e.what());
        }
    }
};

[[noreturn]] void check_fail(const std::string& msg) { throw std::runtime_error(msg); }

std::vector<std::string> read_group_manifest(const fs::path& corpus) {
    fs::path manifest = corpus / "groups.txt";
    std::ifstream f(manifest);
    if (!f)
        throw CorpusMissing("missing " + manifest.string());
    std::vector<std::string> specs;
    std::string line;
    while (std::getline(f, line)) {
        auto h = line.find('#');
        if (h != std::string::npos)
            line = line.substr(0, h);
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back())))
            line.pop_back();
        size_t s = 0;
        while (s < line.size() && std::isspace(static_cast<unsigned char>(line[s])))
            ++s;
        line = line.substr(s);
        if (!line.empty())
            specs.push_back(line);
    }
    if (specs.empty())
        throw CorpusMissing("empty group manifest " + manifest.string());
    return specs;
}

std::vector<fs::path> json_files(const fs::path& dir) {
    std::vector<fs::path> out;
    if (!fs::exists(dir))
        return out;
    for (auto& e : fs::directory_iterator(dir))
        if (e.path().extension() == ".json")
            out.push_back(e.path());
    std::sort(out.begin(), out.end());
    return out;
}

SparseMat sparse_mul(const SparseMat& a, const SparseMat& b) {
    SparseMat c(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (auto& [k, va] : a.row[i])
            for (auto& [j, vb] : b.row[k])
                c.add(i, j, va * vb);
    c.finalize();
    return c;
}

// chains d1 | d2 | ... with product n, ascending
void chains_of_order(long long n, long long min_factor, std::vector<Int>& acc,
                     std::vector<std::vector<Int>>& out) {
    if (n == 1) {
        out.push_back(acc);
        return;
    }
    for (long long d = min_factor; d <= n; ++d)
        if (n % d == 0 && (acc.empty() || d % to_ll(acc.back()) == 0)) {
            acc.push_back(Int(d));
            chains_of_order(n / d, d, acc, out);
            acc.pop_back();
        }
}

std::string spec_for_chain(const std::vector<Int>& chain) {
    std::string s;
    for (auto& d : chain) {
        if (!s.empty())
            s += "x";
        s += "C" + d.get_str();
    }
    return s.empty() ? "C1" : s;
}

} // namespace

int run_verification(const std::string& corpus_dir, std::ostream& out,
                     const VerifyOptions& opt) {
    fs::path corpus(corpus_dir);
    if (!fs::is_directory(corpus))
        throw CorpusMissing("corpus directory " + corpus_dir + " not found");

    Checker ck{out, opt.color};
    CohomologyOptions copt;
    copt.budget = opt.budget;

    std::vector<std::string> specs = read_group_manifest(corpus);
    std::vector<FiniteGroup> groups;
    for (auto& s : specs)
        groups.push_back(realize_group(s));

    ck.run("group-axioms", [&] {
        for (size_t i = 0; i < groups.size(); ++i)
            if (!check_group_axioms(groups[i]))
                check_fail(specs[i]);
        return std::to_string(groups.size()) + " groups";
    });

    ck.run("lagrange-cosets", [&] {
        int checked = 0;
        for (size_t i = 0; i < groups.size(); ++i)
            for (auto& h : standard_subgroups(groups[i])) {
                auto cs = cosets(groups[i], h);
                if (static_cast<int>(cs.size()) * h.order() != groups[i].order())
                    check_fail(specs[i]);
                ++checked;
            }
        return std::to_string(checked) + " subgroups";
    });

    ck.run("spec-roundtrip", [&] {
        std::vector<std::string> texts = specs;
        texts.push_back("perm:(1 2 3)(4 5),(1 2)");
        texts.push_back("perm:()");
        texts.push_back("EA(3,2)xC4");
        for (auto& t : texts) {
            GroupSpec sp = parse_group_spec(t);
            if (!(parse_group_spec(print_group_spec(sp)) == sp))
                check_fail(t);
        }
        return std::to_string(texts.size()) + " specs";
    });

    ck.run("dd-zero", [&] {
        int checked = 0;
        for (size_t i = 0; i < groups.size(); ++i) {
            if (groups[i].order() > 12 || groups[i].order() < 2)
                continue;
            ZGModule m = induced_module(groups[i], standard_subgroups(groups[i])[1]);
            BarComplex bar{&groups[i], &m};
            SparseMat d0 = bar.coboundary(0, copt.budget);
            SparseMat d1 = bar.coboundary(1, copt.budget);
            SparseMat d2 = bar.coboundary(2, copt.budget);
            if (sparse_mul(d1, d0).nnz() != 0 || sparse_mul(d2, d1).nnz() != 0)
                check_fail(specs[i] + " cochain");
            SparseMat b2 = bar_boundary_trivial(groups[i], 2, copt.budget);
            SparseMat b3 = bar_boundary_trivial(groups[i], 3, copt.budget);
            if (sparse_mul(b2, b3).nnz() != 0)
                check_fail(specs[i] + " chain");
            ++checked;
        }
        return std::to_string(checked) + " complexes";
    });

    ck.run("h0-fixed-points", [&] {
        std::mt19937 rng(opt.seed + 1);
        int checked = 0;
        for (int t = 0; t < 50; ++t) {
            const FiniteGroup& g = groups[rng() % groups.size()];
            if (g.order() > 16)
                continue;
            auto subs = standard_subgroups(g);
            ZGModule m = induced_module(g, subs[rng() % subs.size()]);
            FinAbGroup h0 = cohomology_group(g, m, 0, 0, copt);
            if (h0.free_rank() != fixed_points(m).rank || !h0.factors().empty())
                check_fail("H^0 mismatch at order " + std::to_string(g.order()));
            ++checked;
        }
        return std::to_string(checked) + " instances";
    });

    ck.run("shapiro-vanishing", [&] {
        int checked = 0;
        for (size_t i = 0; i < groups.size(); ++i) {
            const FiniteGroup& g = groups[i];
            if (g.order() > 24)
                continue;
            for (auto& h : standard_subgroups(g)) {
                FinAbGroup h1 = cohomology_group(g, induced_module(g, h), 1, 0, copt);
                if (!h1.is_trivial())
                    check_fail(specs[i] + " subgroup of order " +
                               std::to_string(h.order()) + " gives " + h1.str());
                ++checked;
            }
        }
        return std::to_string(checked) + " induced modules";
    });

    ck.run("abelian-wedge-oracle", [&] {
        int checked = 0;
        for (long long n = 1; n <= 36; ++n) {
            std::vector<std::vector<Int>> chains;
            std::vector<Int> acc;
            chains_of_order(n, 2, acc, chains);
            for (auto& chain : chains) {
                FiniteGroup g = realize_group(spec_for_chain(chain));
                FinAbGroup bar = schur_multiplier(g, copt);
                FinAbGroup wedge = schur_multiplier_abelian(chain);
                if (bar != wedge)
                    check_fail(spec_for_chain(chain) + ": bar " + bar.str() +
                               " vs wedge " + wedge.str());
                ++checked;
            }
        }
        return std::to_string(checked) + " abelian groups";
    });

    ck.run("brute-force-h2", [&] {
        int checked = 0;
        for (size_t i = 0; i < groups.size(); ++i) {
            if (groups[i].order() > 8)
                continue;
            ZGModule triv = trivial_module(groups[i]);
            for (long long m : {2, 3, 4}) {
                FinAbGroup a = cohomology_group(groups[i], triv, 2, m, copt);
                FinAbGroup b = brute_force_h2(groups[i], m);
                if (a != b)
                    check_fail(specs[i] + " mod " + std::to_string(m) + ": " + a.str() +
                               " vs " + b.str());
                ++checked;
            }
        }
        return std::to_string(checked) + " comparisons";
    });

    ck.run("sylow-restriction", [&] {
        int checked = 0;
        for (size_t i = 0; i < groups.size(); ++i) {
            if (groups[i].order() > 30)
                continue;
            FinAbGroup mult = schur_multiplier(groups[i], copt);
            for (long long p : prime_divisors(groups[i].order())) {
                auto [syl, map] = subgroup_as_group(sylow_subgroup(groups[i], p));
                (void)map;
                FinAbGroup smult = schur_multiplier(syl, copt);
                if (mult.order_valuation(Int(p)) > smult.order_valuation(Int(p)))
                    check_fail(specs[i] + " at p=" + std::to_string(p));
                ++checked;
            }
        }
        return std::to_string(checked) + " restrictions";
    });

    ck.run("sylow-cyclic-corollary", [&] {
        int checked = 0;
        for (size_t i = 0; i < groups.size(); ++i) {
            if (groups[i].order() > 30 || !all_sylow_cyclic(groups[i]))
                continue;
            for (long long c : {0LL, 2LL, 3LL})
                if (c == 0 || is_prime(c))
                    if (!pic_coker(groups[i], c, copt).is_trivial())
                        check_fail(specs[i]);
            ++checked;
        }
        return std::to_string(checked) + " Sylow-cyclic groups";
    });

    ck.run("snf-certificates", [&] {
        std::mt19937 rng(opt.seed + 2);
        std::uniform_int_distribution<int> dim(1, 6), val(-9, 9);
        for (int t = 0; t < 200; ++t) {
            IntMat a(dim(rng), dim(rng));
            for (int i = 0; i < a.rows(); ++i)
                for (int j = 0; j < a.cols(); ++j)
                    a.at(i, j) = val(rng);
            SNFResult r = smith_normal_form(a, true, true);
            if (!snf_certificate_ok(a, r))
                check_fail("U*A*V != D");
            for (size_t i = 1; i < r.diag.size(); ++i)
                if (r.diag[i] % r.diag[i - 1] != 0)
                    check_fail("diagonal not a chain");
            IntMat k = kernel_basis(a);
            if (k.cols() > 0) {
                SNFResult ks = smith_normal_form(k);
                for (auto& d : ks.diag)
                    if (d != 1)
                        check_fail("kernel basis not saturated");
            }
        }
        return "200 random matrices";
    });

    // --- scenario fixtures ---
    std::vector<fs::path> scen_files = json_files(corpus / "scenarios");
    std::vector<ResolvedScenario> scenarios;
    ck.run("scenario-validation", [&] {
        if (scen_files.empty())
            check_fail("no scenario fixtures under " + (corpus / "scenarios").string());
        for (auto& p : scen_files) {
            ResolvedScenario rs = resolve_scenario(load_scenario(p.string()));
            long long b = b_invariant(rs.group, rs.ram);
            if (rs.group.order() % b != 0)
                check_fail(p.filename().string() + ": b does not divide |G|");
            scenarios.push_back(std::move(rs));
        }
        return std::to_string(scenarios.size()) + " fixtures";
    });

    ck.run("guralnik-bar-check", [&] {
        for (auto& rs : scenarios)
            if (h1_div0(rs.group, rs.ram) != h1_div0_bar_check(rs.group, rs.ram, copt))
                check_fail(rs.raw.group_spec);
        return std::to_string(scenarios.size()) + " fixtures";
    });

    ck.run("gcd-monotonicity", [&] {
        int checked = 0;
        for (auto& rs : scenarios) {
            long long b_all = b_invariant(rs.group, rs.ram);
            RamificationDatum partial{{}, rs.ram.has_generic_orbit};
            for (auto& rec : rs.ram.orbits) {
                partial.orbits.push_back(rec);
                long long b_partial = b_invariant(rs.group, partial);
                if (b_partial % b_all != 0)
                    check_fail(rs.raw.group_spec + ": b grew when adding a record");
                ++checked;
            }
        }
        return std::to_string(checked) + " prefixes";
    });

    ck.run("exactness-audit", [&] {
        int checked = 0;
        for (auto& rs : scenarios) {
            FinAbGroup h2 = h2_units(rs.group, rs.raw.characteristic, copt);
            auto cs = c_constraints(rs.group, rs.raw.characteristic, rs.ram, copt);
            for (long long c : cs) {
                long long o = pic0_coker_order(rs.group, rs.raw.characteristic, rs.ram,
                                               c, copt);
                if (o * c != to_ll(h2.order()))
                    check_fail(rs.raw.group_spec + " at c=" + std::to_string(c));
                ++checked;
            }
            if (rs.raw.declared_c &&
                std::find(cs.begin(), cs.end(), *rs.raw.declared_c) == cs.end())
                check_fail(rs.raw.group_spec + ": declared |C|=" +
                           std::to_string(*rs.raw.declared_c) + " not admissible");
        }
        return std::to_string(checked) + " exactness products";
    });

    ck.run("tame-rule", [&] {
        // a tame non-cyclic record must be rejected
        FiniteGroup a4 = realize_group("A4");
        RamificationDatum bad;
        bad.orbits.push_back({full_subgroup(a4), false, 1});
        try {
            validate_tameness(bad, 0);
            check_fail("non-cyclic tame inertia was accepted");
        } catch (const InvalidDatum&) {
        }
        validate_tameness(bad, 2); // wild at 2: fine
        return "rejection verified";
    });

    ck.run("ea-fixed-point-rule", [&] {
        for (int r = 2; r <= 4; ++r) {
            FiniteGroup g = realize_group("EA(2," + std::to_string(r) + ")");
            RamificationDatum ram;
            ram.orbits.push_back({resolve_inertia(g, InertiaSpec{2, {}, true, 1}), true, 1});
            long long expect = 1LL << (r - 1);
            if (b_invariant(g, ram) != expect)
                check_fail("EA(2," + std::to_string(r) + ")");
        }
        return "r = 2..4";
    });

    ck.run("godown-fixtures", [&] {
        auto files = json_files(corpus / "godown");
        if (files.empty())
            check_fail("no godown fixtures");
        for (auto& p : files) {
            std::ifstream f(p);
            std::ostringstream buf;
            buf << f.rdbuf();
            json j = json::parse(buf.str());
            ResolvedScenario x =
                resolve_scenario(load_scenario((p.parent_path() / j.at("X").get<std::string>()).string()));
            ResolvedScenario y =
                resolve_scenario(load_scenario((p.parent_path() / j.at("Y").get<std::string>()).string()));
            std::vector<int> seed;
            for (const auto& gen : j.at("N_generators")) {
                GroupSpec sp = parse_group_spec("perm:" + gen.get<std::string>());
                // locate the element with this permutation in X's group
                const auto& perms = x.group.permutations();
                Perm target = perm_identity(static_cast<int>(perms[0].size()));
                const Perm& parsed = sp.atoms[0].gens[0];
                if (parsed.size() > target.size())
                    check_fail(p.filename().string() + ": generator degree too large");
                for (size_t t = 0; t < parsed.size(); ++t)
                    target[t] = parsed[t];
                int found = -1;
                for (size_t e = 0; e < perms.size(); ++e)
                    if (perms[e] == target) {
                        found = static_cast<int>(e);
                        break;
                    }
                if (found < 0)
                    check_fail(p.filename().string() + ": generator not in group");
                seed.push_back(found);
            }
            Subgroup n = closure_subgroup(x.group, seed);
            if (!godown_check(x, y, n))
                check_fail(p.filename().string() + ": |C(Y)| does not divide |C(X)|");
        }
        return std::to_string(files.size()) + " fixtures";
    });

    ck.run("toric-certificates", [&] {
        auto files = json_files(corpus / "toric");
        if (files.empty())
            check_fail("no toric fixtures");
        std::mt19937 rng(opt.seed + 3);
        std::uniform_int_distribution<long long> small(-5, 5);
        int samples_total = 0;
        for (auto& p : files) {
            std::ifstream f(p);
            std::ostringstream buf;
            buf << f.rdbuf();
            json j = json::parse(buf.str());
            Fan fan = fan_from_json_text(j.at("fan").dump());
            FanReport rep = validate_fan(fan, opt.seed, 500);
            if (!rep.valid())
                check_fail(p.filename().string() + ": " + rep.violations.front());
            ClassGroup cg = divisor_class_group(fan);
            if (rep.completeness != Completeness::Incomplete &&
                (!cg.group.factors().empty() ||
                 cg.group.free_rank() !=
                     static_cast<int>(fan.rays.size()) - fan.rank))
                check_fail(p.filename().string() + ": class group " + cg.group.str());
            std::vector<IntMat> mats;
            for (const auto& mj : j.at("automorphisms")) {
                IntMat m(fan.rank, fan.rank);
                for (int r = 0; r < fan.rank; ++r)
                    for (int c = 0; c < fan.rank; ++c)
                        m.at(r, c) = mj.at(r).at(c).get<long long>();
                mats.push_back(std::move(m));
            }
            ToricAutGroup aut = toric_automorphisms(fan, mats);
            // orbit partition sanity
            for (int k = 1; k <= fan.max_cone_dim(); ++k) {
                auto orbits = cone_orbits(aut, k);
                size_t total = 0;
                for (auto& o : orbits) {
                    total += o.size();
                    if (aut.group.order() % o.size() != 0)
                        check_fail(p.filename().string() + ": orbit size");
                }
                if (total != fan.cones_of_dim(k).size())
                    check_fail(p.filename().string() + ": orbit partition");
            }
            int samples = j.value("samples", 25);
            for (int s = 0; s < samples; ++s) {
                // random invariant class: symmetrized divisor plus principal
                std::vector<Int> base(fan.rays.size());
                for (auto& v : base)
                    v = small(rng);
                TCycle d;
                d.cone_dim = 1;
                for (int e = 0; e < aut.group.order(); ++e)
                    for (size_t i = 0; i < fan.rays.size(); ++i)
                        d.coeffs[aut.ray_perm[e][i]] += base[i];
                std::vector<Int> u(fan.rank);
                for (auto& v : u)
                    v = small(rng);
                for (size_t i = 0; i < fan.rays.size(); ++i)
                    for (int t = 0; t < fan.rank; ++t)
                        d.coeffs[static_cast<int>(i)] += Int(fan.rays[i][t]) * u[t];
                InvariantDivisorResult res = invariant_divisor_in_class(fan, aut, d);
                if (!res.divisor || !res.certificate_checked)
                    check_fail(p.filename().string() + ": sample " + std::to_string(s));
                ++samples_total;
            }
        }
        return std::to_string(samples_total) + " invariant classes certified";
    });

    out << "summary: "
        << (ck.failures == 0 ? "all checks passed"
                             : std::to_string(ck.failures) + " check(s) failed")
        << "\n";
    return ck.failures;
}

} // namespace gpic

#include "gpic/toric.hpp"

#include "gpic/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

using json = nlohmann::ordered_json;

namespace gpic {

std::vector<std::vector<int>> Fan::cones_of_dim(int k) const {
    std::vector<std::vector<int>> out;
    if (k == 1) {
        for (int i = 0; i < static_cast<int>(rays.size()); ++i)
            out.push_back({i});
        return out;
    }
    for (auto& c : cones)
        if (static_cast<int>(c.size()) == k)
            out.push_back(c);
    std::sort(out.begin(), out.end());
    return out;
}

int Fan::max_cone_dim() const {
    int m = rays.empty() ? 0 : 1;
    for (auto& c : cones)
        m = std::max(m, static_cast<int>(c.size()));
    return m;
}

Fan fan_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw IoError(std::string("bad fan JSON: ") + e.what());
    }
    Fan fan;
    fan.rank = j.at("rank").get<int>();
    if (fan.rank < 1)
        throw IoError("fan rank must be >= 1");
    for (const auto& rv : j.at("rays")) {
        std::vector<long long> ray = rv.get<std::vector<long long>>();
        if (static_cast<int>(ray.size()) != fan.rank)
            throw IoError("ray length does not match the fan rank");
        fan.rays.push_back(std::move(ray));
    }
    std::set<std::vector<int>> seen;
    for (const auto& cv : j.at("cones")) {
        std::vector<int> cone = cv.get<std::vector<int>>();
        for (int r : cone)
            if (r < 0 || r >= static_cast<int>(fan.rays.size()))
                throw IoError("cone references a missing ray");
        std::sort(cone.begin(), cone.end());
        cone.erase(std::unique(cone.begin(), cone.end()), cone.end());
        if (cone.size() <= 1)
            continue; // rays are implicit 1-cones
        if (seen.insert(cone).second)
            fan.cones.push_back(std::move(cone));
    }
    std::sort(fan.cones.begin(), fan.cones.end(),
              [](const auto& a, const auto& b) {
                  return a.size() != b.size() ? a.size() < b.size() : a < b;
              });
    return fan;
}

Fan load_fan(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw IoError("cannot open fan file " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return fan_from_json_text(buf.str());
}

namespace {

IntMat rays_as_matrix(const Fan& fan, const std::vector<int>& cone) {
    IntMat m(static_cast<int>(cone.size()), fan.rank);
    for (size_t i = 0; i < cone.size(); ++i)
        for (int j = 0; j < fan.rank; ++j)
            m.at(static_cast<int>(i), j) = fan.rays[cone[i]][j];
    return m;
}

bool extends_to_basis(const Fan& fan, const std::vector<int>& cone) {
    IntMat m = rays_as_matrix(fan, cone);
    SNFResult r = smith_normal_form(m);
    if (r.rank() != static_cast<int>(cone.size()))
        return false;
    for (auto& d : r.diag)
        if (d != 1)
            return false;
    return true;
}

// exact angular comparator for rank-2 completeness
bool ccw_less(const std::vector<long long>& a, const std::vector<long long>& b) {
    auto half = [](const std::vector<long long>& v) {
        return (v[1] > 0 || (v[1] == 0 && v[0] > 0)) ? 0 : 1;
    };
    int ha = half(a), hb = half(b);
    if (ha != hb)
        return ha < hb;
    long long cross = a[0] * b[1] - a[1] * b[0];
    return cross > 0;
}

} // namespace

FanReport validate_fan(const Fan& fan, unsigned seed, int samples) {
    FanReport rep;
    auto violate = [&](const std::string& s) { rep.violations.push_back(s); };

    // primitivity
    for (size_t i = 0; i < fan.rays.size(); ++i) {
        long long g = 0;
        for (long long v : fan.rays[i])
            g = std::gcd(g, v < 0 ? -v : v);
        if (g != 1) {
            rep.primitive_ok = false;
            violate("NotPrimitive: ray " + std::to_string(i));
        }
    }
    {
        std::set<std::vector<long long>> seen(fan.rays.begin(), fan.rays.end());
        if (seen.size() != fan.rays.size()) {
            rep.primitive_ok = false;
            violate("NotPrimitive: duplicate rays");
        }
    }

    // face closure: every facet of every listed cone of dim >= 3 is listed
    std::set<std::vector<int>> cone_set(fan.cones.begin(), fan.cones.end());
    for (auto& c : fan.cones) {
        if (c.size() < 3)
            continue;
        for (size_t drop = 0; drop < c.size(); ++drop) {
            std::vector<int> facet;
            for (size_t i = 0; i < c.size(); ++i)
                if (i != drop)
                    facet.push_back(c[i]);
            if (!cone_set.count(facet)) {
                rep.faces_ok = false;
                std::string s = "FaceClosureViolation: cone {";
                for (int r : c)
                    s += std::to_string(r) + " ";
                s += "} misses a facet";
                violate(s);
            }
        }
    }

    // smoothness: the rays of every cone extend to a lattice basis
    if (rep.primitive_ok)
        for (auto& c : fan.cones)
            if (!extends_to_basis(fan, c)) {
                rep.smooth_ok = false;
                std::string s = "NotSmooth: cone {";
                for (int r : c)
                    s += std::to_string(r) + " ";
                s += "}";
                violate(s);
            }

    // completeness
    if (!rep.primitive_ok || !rep.smooth_ok || !rep.faces_ok) {
        rep.completeness = Completeness::NotChecked;
        return rep;
    }
    if (fan.rank == 1) {
        bool plus = false, minus = false;
        for (auto& r : fan.rays) {
            plus |= r[0] > 0;
            minus |= r[0] < 0;
        }
        rep.completeness = plus && minus ? Completeness::CompleteExact
                                         : Completeness::Incomplete;
        if (rep.completeness == Completeness::Incomplete)
            violate("Incomplete: missing a ray direction");
        return rep;
    }
    if (fan.rank == 2) {
        // sort rays by angle; complete iff every consecutive pair spans a
        // listed 2-cone with a positive turn of less than pi
        std::vector<int> order(fan.rays.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            return ccw_less(fan.rays[a], fan.rays[b]);
        });
        std::set<std::vector<int>> cone_set2(fan.cones.begin(), fan.cones.end());
        bool complete = !fan.rays.empty();
        for (size_t i = 0; i < order.size() && complete; ++i) {
            int a = order[i], b = order[(i + 1) % order.size()];
            const auto &va = fan.rays[a], &vb = fan.rays[b];
            long long cross = va[0] * vb[1] - va[1] * vb[0];
            std::vector<int> key{std::min(a, b), std::max(a, b)};
            if (cross <= 0 || !cone_set2.count(key))
                complete = false;
        }
        rep.completeness = complete ? Completeness::CompleteExact
                                    : Completeness::Incomplete;
        if (!complete)
            violate("Incomplete: ray fan does not cover the plane");
        return rep;
    }

    // rank >= 3: sampled membership check over the maximal cones
    std::vector<std::vector<int>> maximal;
    for (auto& c : fan.cones)
        if (static_cast<int>(c.size()) == fan.rank)
            maximal.push_back(c);
    if (maximal.empty()) {
        rep.completeness = Completeness::Incomplete;
        violate("Incomplete: no full-dimensional cones");
        return rep;
    }
    std::vector<IntMat> inverses; // adjugate-free: smooth cones have det +-1
    std::vector<Int> dets;
    for (auto& c : maximal) {
        IntMat m = rays_as_matrix(fan, c).transposed(); // columns = rays
        dets.push_back(determinant(m));
        inverses.push_back(std::move(m));
    }
    std::mt19937 rng(seed);
    std::uniform_int_distribution<long long> coord(-1000, 1000);
    for (int s = 0; s < samples; ++s) {
        std::vector<Int> v(fan.rank);
        bool zero = true;
        for (auto& x : v) {
            long long c = coord(rng);
            x = c;
            zero = zero && c == 0;
        }
        if (zero)
            continue;
        bool inside_any = false;
        for (size_t ci = 0; ci < maximal.size() && !inside_any; ++ci) {
            // Cramer coordinates; smooth full cones have |det| = 1 so the
            // coordinates are integers
            IntMat& m = inverses[ci];
            bool all_nonneg = true;
            for (int col = 0; col < fan.rank && all_nonneg; ++col) {
                IntMat repl = m;
                for (int row = 0; row < fan.rank; ++row)
                    repl.at(row, col) = v[row];
                Int coeff = determinant(repl) / dets[ci];
                if (coeff < 0)
                    all_nonneg = false;
            }
            inside_any = all_nonneg;
        }
        if (!inside_any) {
            rep.completeness = Completeness::Incomplete;
            violate("Incomplete: sampled direction outside every maximal cone");
            return rep;
        }
    }
    rep.completeness = Completeness::CompleteSampled;
    return rep;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<long long> apply_matrix(const IntMat& m, const std::vector<long long>& v) {
    std::vector<long long> out(m.rows(), 0);
    for (int i = 0; i < m.rows(); ++i) {
        Int s = 0;
        for (int j = 0; j < m.cols(); ++j)
            s += m.at(i, j) * Int(v[j]);
        out[i] = to_ll(s);
    }
    return out;
}

std::string matrix_str(const IntMat& m) {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < m.rows(); ++i) {
        os << "[";
        for (int j = 0; j < m.cols(); ++j)
            os << m.at(i, j) << (j + 1 < m.cols() ? "," : "");
        os << "]";
    }
    os << "]";
    return os.str();
}

} // namespace

ToricAutGroup toric_automorphisms(const Fan& fan, const std::vector<IntMat>& generators,
                                  std::size_t cap) {
    for (auto& m : generators) {
        if (m.rows() != fan.rank || m.cols() != fan.rank)
            throw NotUnimodular("automorphism matrix has wrong shape");
        Int d = determinant(m);
        if (d != 1 && d != -1)
            throw NotUnimodular("matrix with determinant " + d.get_str());
    }

    std::map<std::vector<long long>, int> ray_index;
    for (size_t i = 0; i < fan.rays.size(); ++i)
        ray_index[fan.rays[i]] = static_cast<int>(i);

    auto ray_permutation = [&](const IntMat& m) {
        std::vector<int> perm(fan.rays.size());
        std::vector<bool> hit(fan.rays.size(), false);
        for (size_t i = 0; i < fan.rays.size(); ++i) {
            auto img = apply_matrix(m, fan.rays[i]);
            auto it = ray_index.find(img);
            if (it == ray_index.end() || hit[it->second])
                throw NotFanPreserving("matrix " + matrix_str(m) +
                                       " does not permute the rays");
            perm[i] = it->second;
            hit[it->second] = true;
        }
        return perm;
    };

    // close the matrix set
    std::vector<IntMat> elems{IntMat::identity(fan.rank)};
    std::map<std::string, int> index{{matrix_str(elems[0]), 0}};
    std::vector<std::pair<int, int>> parent{{-1, -1}};
    std::vector<IntMat> gens = generators;
    for (size_t head = 0; head < elems.size(); ++head)
        for (size_t k = 0; k < gens.size(); ++k) {
            IntMat w = elems[head] * gens[k];
            std::string key = matrix_str(w);
            if (!index.count(key)) {
                index[key] = static_cast<int>(elems.size());
                elems.push_back(w);
                parent.push_back({static_cast<int>(head), static_cast<int>(k)});
                if (elems.size() > cap)
                    throw ClosureExceedsCap(cap);
            }
        }

    const int n = static_cast<int>(elems.size());
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            table[a][b] = index.at(matrix_str(elems[a] * elems[b]));

    ToricAutGroup aut;
    aut.fan = &fan;
    std::vector<int> order_old;
    aut.group = FiniteGroup::from_table(table, &order_old);
    aut.matrices.reserve(n);
    for (int i = 0; i < n; ++i)
        aut.matrices.push_back(elems[order_old[i]]);

    // per-element ray and cone permutations, with fan preservation checks
    aut.ray_perm.resize(n);
    int max_dim = fan.max_cone_dim();
    aut.cone_perm.assign(max_dim, {});
    std::vector<std::map<std::vector<int>, int>> cone_index(max_dim + 1);
    std::vector<std::vector<std::vector<int>>> strata(max_dim + 1);
    for (int k = 1; k <= max_dim; ++k) {
        strata[k] = fan.cones_of_dim(k);
        for (size_t i = 0; i < strata[k].size(); ++i)
            cone_index[k][strata[k][i]] = static_cast<int>(i);
        aut.cone_perm[k - 1].assign(n, {});
    }
    for (int e = 0; e < n; ++e) {
        aut.ray_perm[e] = ray_permutation(aut.matrices[e]);
        for (int k = 1; k <= max_dim; ++k) {
            std::vector<int>& out = aut.cone_perm[k - 1][e];
            out.resize(strata[k].size());
            for (size_t ci = 0; ci < strata[k].size(); ++ci) {
                std::vector<int> img;
                for (int r : strata[k][ci])
                    img.push_back(aut.ray_perm[e][r]);
                std::sort(img.begin(), img.end());
                auto it = cone_index[k].find(img);
                if (it == cone_index[k].end())
                    throw NotFanPreserving("element " + std::to_string(e) +
                                           " maps a cone outside the fan");
                out[ci] = it->second;
            }
        }
    }
    return aut;
}

std::vector<std::vector<int>> cone_orbits(const ToricAutGroup& aut, int k) {
    auto strata = aut.fan->cones_of_dim(k);
    const int n = static_cast<int>(strata.size());
    if (k < 1 || k > static_cast<int>(aut.cone_perm.size()))
        return {};
    std::vector<int> orbit_id(n, -1);
    std::vector<std::vector<int>> orbits;
    for (int start = 0; start < n; ++start) {
        if (orbit_id[start] >= 0)
            continue;
        std::vector<int> orbit{start};
        orbit_id[start] = static_cast<int>(orbits.size());
        for (size_t head = 0; head < orbit.size(); ++head)
            for (int gen : aut.group.generators()) {
                int img = aut.cone_perm[k - 1][gen][orbit[head]];
                if (orbit_id[img] < 0) {
                    orbit_id[img] = orbit_id[start];
                    orbit.push_back(img);
                }
            }
        std::sort(orbit.begin(), orbit.end());
        orbits.push_back(std::move(orbit));
    }
    return orbits;
}

TCycle cycle_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw IoError(std::string("bad cycle JSON: ") + e.what());
    }
    TCycle z;
    z.cone_dim = j.at("dim").get<int>();
    for (auto& [key, val] : j.at("coeffs").items())
        z.coeffs[std::stoi(key)] = Int(val.get<long long>());
    return z;
}

TCycle load_cycle(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw IoError("cannot open cycle file " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return cycle_from_json_text(buf.str());
}

TCycle apply_to_cycle(const ToricAutGroup& aut, int elem, const TCycle& z) {
    TCycle out;
    out.cone_dim = z.cone_dim;
    const auto& perm = aut.cone_perm[z.cone_dim - 1][elem];
    for (auto& [c, v] : z.coeffs)
        if (v != 0)
            out.coeffs[perm[c]] = v;
    return out;
}

RepresentativeResult invariant_representative(const ToricAutGroup& aut, const TCycle& z) {
    const int k = z.cone_dim;
    auto strata = aut.fan->cones_of_dim(k);
    if (k < 1 || k > static_cast<int>(aut.cone_perm.size()))
        throw DimensionMismatch("cycle dimension " + std::to_string(k) +
                                " has no cones in this fan");
    for (auto& [c, v] : z.coeffs)
        if (c < 0 || c >= static_cast<int>(strata.size()))
            throw DimensionMismatch("cycle coefficient on missing cone " +
                                    std::to_string(c));

    RepresentativeResult res;
    auto coeff = [&](int c) {
        auto it = z.coeffs.find(c);
        return it == z.coeffs.end() ? Int(0) : it->second;
    };

    TCycle out;
    out.cone_dim = k;
    bool needed_average = false;
    for (auto& orbit : cone_orbits(aut, k)) {
        Int first = coeff(orbit[0]);
        bool constant = true;
        Int sum = 0;
        for (int c : orbit) {
            Int v = coeff(c);
            constant = constant && v == first;
            sum += v;
        }
        Int value;
        if (constant) {
            value = first;
        } else {
            needed_average = true;
            if (sum % Int(static_cast<long>(orbit.size())) != 0) {
                res.offending_orbit = orbit;
                return res;
            }
            value = sum / Int(static_cast<long>(orbit.size()));
        }
        if (value != 0)
            for (int c : orbit)
                out.coeffs[c] = value;
    }
    res.averaged = needed_average;

    // invariance certificate: g.Z = Z for every generator
    res.certificate_checked = true;
    for (int gen : aut.group.generators())
        if (!(apply_to_cycle(aut, gen, out) == out)) {
            res.certificate_checked = false;
            break;
        }
    res.cycle = std::move(out);
    return res;
}

ClassGroup divisor_class_group(const Fan& fan) {
    const int nrays = static_cast<int>(fan.rays.size());
    IntMat rmat(nrays, fan.rank);
    for (int i = 0; i < nrays; ++i)
        for (int j = 0; j < fan.rank; ++j)
            rmat.at(i, j) = fan.rays[i][j];
    SNFResult r = smith_normal_form(rmat);
    if (r.rank() != fan.rank)
        throw RaysDoNotSpan("rays span a proper subspace (rank " +
                            std::to_string(r.rank()) + " of " + std::to_string(fan.rank) +
                            ")");
    std::vector<Int> torsion;
    for (auto& d : r.diag)
        if (d > 1)
            torsion.push_back(d);
    ClassGroup cg;
    cg.group = FinAbGroup::from_diagonal(std::move(torsion), nrays - fan.rank);
    cg.ray_matrix = std::move(rmat);
    cg.snf_diag = r.diag;
    return cg;
}

InvariantDivisorResult invariant_divisor_in_class(const Fan& fan, const ToricAutGroup& aut,
                                                  const TCycle& d) {
    if (d.cone_dim != 1)
        throw DimensionMismatch("invariant_divisor_in_class needs a codimension-1 cycle");
    const int nrays = static_cast<int>(fan.rays.size());
    std::vector<Int> coeffs(nrays, 0);
    for (auto& [c, v] : d.coeffs) {
        if (c < 0 || c >= nrays)
            throw DimensionMismatch("divisor coefficient on missing ray " +
                                    std::to_string(c));
        coeffs[c] = v;
    }

    ClassGroup cg = divisor_class_group(fan);

    // the class of D must be fixed: g.D - D principal for every generator
    for (int gen : aut.group.generators()) {
        std::vector<Int> delta(nrays);
        for (int i = 0; i < nrays; ++i)
            delta[aut.ray_perm[gen][i]] = coeffs[i];
        for (int i = 0; i < nrays; ++i)
            delta[i] -= coeffs[i];
        if (!solve_integral(cg.ray_matrix, delta))
            throw ClassNotInvariant("generator " + std::to_string(gen) +
                                    " moves the class of D");
    }

    // orbit-constancy conditions: for rays in one orbit, coefficients of
    // D + div(u) agree; unknowns are the character u
    auto orbits = cone_orbits(aut, 1);
    std::vector<std::vector<Int>> rows;
    std::vector<Int> rhs;
    for (auto& orbit : orbits)
        for (size_t t = 1; t < orbit.size(); ++t) {
            int r0 = orbit[0], rt = orbit[t];
            std::vector<Int> row(fan.rank);
            for (int j = 0; j < fan.rank; ++j)
                row[j] = Int(fan.rays[rt][j]) - Int(fan.rays[r0][j]);
            rows.push_back(std::move(row));
            rhs.push_back(coeffs[r0] - coeffs[rt]);
        }
    IntMat a(static_cast<int>(rows.size()), fan.rank);
    std::vector<Int> b(rows.size());
    for (size_t i = 0; i < rows.size(); ++i) {
        for (int j = 0; j < fan.rank; ++j)
            a.at(static_cast<int>(i), j) = rows[i][j];
        b[i] = rhs[i];
    }

    InvariantDivisorResult res;
    SolveOutcome sol = solve_or_certify(a, b);
    if (!sol.solution) {
        res.infeasibility = sol.certificate;
        return res;
    }
    const std::vector<Int>& u = *sol.solution;
    TCycle out;
    out.cone_dim = 1;
    for (int i = 0; i < nrays; ++i) {
        Int v = coeffs[i];
        for (int j = 0; j < fan.rank; ++j)
            v += Int(fan.rays[i][j]) * u[j];
        if (v != 0)
            out.coeffs[i] = v;
    }
    res.certificate_checked = true;
    for (int gen : aut.group.generators())
        if (!(apply_to_cycle(aut, gen, out) == out)) {
            res.certificate_checked = false;
            break;
        }
    res.character = u;
    res.divisor = std::move(out);
    return res;
}

} // namespace gpic

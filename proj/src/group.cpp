#include "gpic/group.hpp"

#include "gpic/errors.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <set>

namespace gpic {

Perm perm_identity(int m) {
    Perm p(m);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

Perm perm_compose(const Perm& a, const Perm& b) {
    assert(a.size() == b.size());
    Perm c(a.size());
    for (size_t x = 0; x < b.size(); ++x)
        c[x] = a[b[x]];
    return c;
}

Perm perm_inverse(const Perm& a) {
    Perm inv(a.size());
    for (size_t x = 0; x < a.size(); ++x)
        inv[a[x]] = static_cast<int>(x);
    return inv;
}

FiniteGroup FiniteGroup::from_permutations(std::vector<Perm> generators, std::size_t cap) {
    int m = 1;
    for (auto& g : generators)
        m = std::max(m, static_cast<int>(g.size()));
    for (auto& g : generators) {
        Perm padded = perm_identity(m);
        for (size_t x = 0; x < g.size(); ++x)
            padded[x] = g[x];
        std::vector<bool> seen(m, false);
        for (int v : padded) {
            if (v < 0 || v >= m || seen[v])
                throw InvalidPermutation("generator is not a bijection");
            seen[v] = true;
        }
        g = std::move(padded);
    }

    FiniteGroup grp;
    grp.degree_ = m;

    std::vector<Perm> elems;
    std::map<Perm, int> index;
    elems.push_back(perm_identity(m));
    index[elems[0]] = 0;
    grp.bfs_parent_.push_back({-1, -1});

    // breadth-first closure; processing elements in id order with generators
    // in list order yields the word-length/lexicographic canonical order
    for (size_t head = 0; head < elems.size(); ++head) {
        for (size_t k = 0; k < generators.size(); ++k) {
            Perm w = perm_compose(elems[head], generators[k]);
            if (index.emplace(w, static_cast<int>(elems.size())).second) {
                elems.push_back(w);
                grp.bfs_parent_.push_back({static_cast<int>(head), static_cast<int>(k)});
                if (elems.size() > cap)
                    throw ClosureExceedsCap(cap);
            }
        }
    }

    const int n = static_cast<int>(elems.size());
    grp.mul_.assign(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            grp.mul_[a][b] = index.at(perm_compose(elems[a], elems[b]));
    grp.perms_ = std::move(elems);
    for (auto& g : generators)
        grp.gens_.push_back(index.at(g));
    grp.finish_tables();
    return grp;
}

namespace {

int find_identity(const std::vector<std::vector<int>>& mul) {
    const int n = static_cast<int>(mul.size());
    for (int e = 0; e < n; ++e) {
        bool ok = true;
        for (int g = 0; g < n && ok; ++g)
            ok = mul[e][g] == g && mul[g][e] == g;
        if (ok)
            return e;
    }
    throw InvalidDatum("multiplication table has no identity");
}

// Greedy minimal-ish generating set: repeatedly add the smallest id not yet
// generated.  Deterministic.
std::vector<int> greedy_generators(const std::vector<std::vector<int>>& mul, int identity) {
    const int n = static_cast<int>(mul.size());
    std::vector<int> gens;
    std::vector<bool> closed(n, false);
    closed[identity] = true;
    int count = 1;
    while (count < n) {
        int pick = -1;
        for (int g = 0; g < n; ++g)
            if (!closed[g]) {
                pick = g;
                break;
            }
        gens.push_back(pick);
        std::fill(closed.begin(), closed.end(), false);
        closed[identity] = true;
        count = 1;
        std::vector<int> frontier{identity};
        while (!frontier.empty()) {
            std::vector<int> next;
            for (int x : frontier)
                for (int k : gens) {
                    int y = mul[x][k];
                    if (!closed[y]) {
                        closed[y] = true;
                        ++count;
                        next.push_back(y);
                    }
                }
            frontier = std::move(next);
        }
    }
    return gens;
}

} // namespace

FiniteGroup FiniteGroup::from_table(const std::vector<std::vector<int>>& mul,
                                    std::vector<int>* order_out) {
    const int n = static_cast<int>(mul.size());
    if (n == 0)
        throw InvalidDatum("empty multiplication table");
    for (auto& row : mul)
        if (static_cast<int>(row.size()) != n)
            throw InvalidDatum("multiplication table is not square");

    const int identity = find_identity(mul);
    std::vector<int> gens = greedy_generators(mul, identity);

    // relabel by BFS over generator words so id 0 is the identity and the
    // ordering matches the permutation-built convention
    std::vector<int> new_id(n, -1);
    std::vector<int> order_old{identity}; // new id -> old id
    FiniteGroup grp;
    new_id[identity] = 0;
    grp.bfs_parent_.push_back({-1, -1});
    for (size_t head = 0; head < order_old.size(); ++head)
        for (size_t k = 0; k < gens.size(); ++k) {
            int w = mul[order_old[head]][gens[k]];
            if (new_id[w] < 0) {
                new_id[w] = static_cast<int>(order_old.size());
                order_old.push_back(w);
                grp.bfs_parent_.push_back({static_cast<int>(head), static_cast<int>(k)});
            }
        }
    if (static_cast<int>(order_old.size()) != n)
        throw InvalidDatum("multiplication table is not closed");

    grp.mul_.assign(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            grp.mul_[a][b] = new_id[mul[order_old[a]][order_old[b]]];
    for (int k : gens)
        grp.gens_.push_back(new_id[k]);
    grp.finish_tables();
    if (order_out)
        *order_out = std::move(order_old);
    return grp;
}

void FiniteGroup::finish_tables() {
    const int n = order();
    inv_.assign(n, -1);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (mul_[a][b] == 0) {
                inv_[a] = b;
                break;
            }
    for (int a = 0; a < n; ++a)
        if (inv_[a] < 0)
            throw InvalidDatum("element without inverse");
}

int FiniteGroup::element_order(int g) const {
    int ord = 1;
    int x = g;
    while (x != 0) {
        x = mul(x, g);
        ++ord;
    }
    return ord;
}

int FiniteGroup::exponent() const {
    long long e = 1;
    for (int g = 0; g < order(); ++g)
        e = std::lcm(e, static_cast<long long>(element_order(g)));
    return static_cast<int>(e);
}

bool FiniteGroup::is_abelian() const {
    for (int a = 0; a < order(); ++a)
        for (int b = a + 1; b < order(); ++b)
            if (mul(a, b) != mul(b, a))
                return false;
    return true;
}

bool check_group_axioms(const FiniteGroup& g, int exhaustive_limit) {
    const int n = g.order();
    for (int a = 0; a < n; ++a)
        if (g.mul(0, a) != a || g.mul(a, 0) != a || g.mul(a, g.inv(a)) != 0)
            return false;
    if (n <= exhaustive_limit) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
                        return false;
    }
    // generators generate everything
    std::set<int> closed{0};
    std::vector<int> frontier{0};
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int x : frontier)
            for (int k : g.generators()) {
                int y = g.mul(x, k);
                if (closed.insert(y).second)
                    next.push_back(y);
            }
        frontier = std::move(next);
    }
    return static_cast<int>(closed.size()) == n;
}

// ---------------------------------------------------------------------------

bool Subgroup::contains(int g) const {
    return std::binary_search(members.begin(), members.end(), g);
}

Subgroup trivial_subgroup(const FiniteGroup& g) { return {&g, {0}}; }

Subgroup full_subgroup(const FiniteGroup& g) {
    Subgroup h{&g, std::vector<int>(g.order())};
    std::iota(h.members.begin(), h.members.end(), 0);
    return h;
}

Subgroup closure_subgroup(const FiniteGroup& g, std::vector<int> seed) {
    std::set<int> members{0};
    std::vector<int> frontier{0};
    for (int s : seed)
        if (members.insert(s).second)
            frontier.push_back(s);
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int x : frontier)
            for (int s : seed) {
                int y = g.mul(x, s);
                if (members.insert(y).second)
                    next.push_back(y);
                int z = g.mul(x, g.inv(s));
                if (members.insert(z).second)
                    next.push_back(z);
            }
        frontier = std::move(next);
    }
    return {&g, std::vector<int>(members.begin(), members.end())};
}

Subgroup cyclic_subgroup(const FiniteGroup& g, int elem) {
    std::vector<int> members{0};
    int x = elem;
    while (x != 0) {
        members.push_back(x);
        x = g.mul(x, elem);
    }
    std::sort(members.begin(), members.end());
    return {&g, members};
}

bool is_subgroup(const Subgroup& h) {
    if (h.members.empty() || h.members[0] != 0)
        return false;
    if (h.parent->order() % h.order() != 0)
        return false; // Lagrange
    for (int a : h.members)
        for (int b : h.members)
            if (!h.contains(h.parent->mul(a, b)))
                return false;
    for (int a : h.members)
        if (!h.contains(h.parent->inv(a)))
            return false;
    return true;
}

bool is_cyclic(const Subgroup& h) {
    for (int g : h.members)
        if (h.parent->element_order(g) == h.order())
            return true;
    return false;
}

bool is_normal(const Subgroup& h) {
    const FiniteGroup& g = *h.parent;
    for (int x = 0; x < g.order(); ++x)
        for (int m : h.members)
            if (!h.contains(g.mul(g.mul(x, m), g.inv(x))))
                return false;
    return true;
}

Subgroup normalizer(const FiniteGroup& g, const Subgroup& h) {
    std::vector<int> members;
    for (int x = 0; x < g.order(); ++x) {
        bool normalizes = true;
        for (int m : h.members)
            if (!h.contains(g.mul(g.mul(x, m), g.inv(x)))) {
                normalizes = false;
                break;
            }
        if (normalizes)
            members.push_back(x);
    }
    return {&g, members};
}

bool is_prime(long long n) {
    if (n < 2)
        return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

std::vector<long long> prime_divisors(long long n) {
    std::vector<long long> ps;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            ps.push_back(d);
            while (n % d == 0)
                n /= d;
        }
    if (n > 1)
        ps.push_back(n);
    return ps;
}

Subgroup sylow_subgroup(const FiniteGroup& g, long long ell) {
    long long target = 1;
    {
        long long n = g.order();
        while (n % ell == 0) {
            n /= ell;
            target *= ell;
        }
    }
    Subgroup s = trivial_subgroup(g);
    if (target == 1)
        return s;
    auto is_ell_power_order = [&](int x) {
        long long o = g.element_order(x);
        while (o % ell == 0)
            o /= ell;
        return o == 1;
    };
    while (s.order() < target) {
        // an ell-element of the normalizer outside S extends S to a strictly
        // larger ell-subgroup; one always exists while S is not Sylow
        Subgroup n = normalizer(g, s);
        int pick = -1;
        for (int x : n.members)
            if (x != 0 && !s.contains(x) && is_ell_power_order(x)) {
                pick = x;
                break;
            }
        if (pick < 0)
            throw InvalidDatum("Sylow growth stalled (corrupt group table?)");
        std::vector<int> seed = s.members;
        seed.push_back(pick);
        s = closure_subgroup(g, seed);
    }
    return s;
}

bool all_sylow_cyclic(const FiniteGroup& g) {
    for (long long p : prime_divisors(g.order()))
        if (!is_cyclic(sylow_subgroup(g, p)))
            return false;
    return true;
}

std::vector<std::vector<int>> cosets(const FiniteGroup& g, const Subgroup& h) {
    std::vector<bool> assigned(g.order(), false);
    std::vector<std::vector<int>> out;
    for (int x = 0; x < g.order(); ++x) {
        if (assigned[x])
            continue;
        std::vector<int> coset;
        for (int m : h.members) {
            int y = g.mul(m, x); // right coset Hx
            coset.push_back(y);
            assigned[y] = true;
        }
        std::sort(coset.begin(), coset.end());
        out.push_back(std::move(coset));
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a[0] < b[0]; });
    return out;
}

std::pair<FiniteGroup, std::vector<int>> subgroup_as_group(const Subgroup& h) {
    const int k = h.order();
    std::vector<int> pos(h.parent->order(), -1);
    for (int i = 0; i < k; ++i)
        pos[h.members[i]] = i;
    std::vector<std::vector<int>> table(k, std::vector<int>(k));
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            int p = h.parent->mul(h.members[a], h.members[b]);
            if (pos[p] < 0)
                throw InvalidDatum("member set is not closed under multiplication");
            table[a][b] = pos[p];
        }
    std::vector<int> order_old;
    FiniteGroup grp = FiniteGroup::from_table(table, &order_old);
    std::vector<int> map_new_to_parent(k);
    for (int i = 0; i < k; ++i)
        map_new_to_parent[i] = h.members[order_old[i]];
    return {std::move(grp), std::move(map_new_to_parent)};
}

FiniteGroup quotient_group(const FiniteGroup& g, const Subgroup& n) {
    if (!is_normal(n))
        throw NotNormal("subgroup is not normal");
    auto cs = cosets(g, n);
    const int q = static_cast<int>(cs.size());
    std::vector<int> coset_of(g.order(), -1);
    for (int i = 0; i < q; ++i)
        for (int x : cs[i])
            coset_of[x] = i;
    std::vector<std::vector<int>> table(q, std::vector<int>(q));
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            table[a][b] = coset_of[g.mul(cs[a][0], cs[b][0])];
    return FiniteGroup::from_table(table);
}

std::vector<Subgroup> standard_subgroups(const FiniteGroup& g) {
    std::set<std::vector<int>> seen;
    std::vector<Subgroup> out;
    for (int x = 0; x < g.order(); ++x) {
        Subgroup h = cyclic_subgroup(g, x);
        if (seen.insert(h.members).second)
            out.push_back(h);
    }
    for (long long p : prime_divisors(g.order())) {
        Subgroup s = sylow_subgroup(g, p);
        if (seen.insert(s.members).second)
            out.push_back(s);
    }
    return out;
}

std::vector<Subgroup> subgroups_of_order(const FiniteGroup& g, int order) {
    std::set<std::vector<int>> seen;
    std::vector<Subgroup> out;
    if (order < 1 || g.order() % order != 0)
        return out;
    if (order == 1) {
        out.push_back(trivial_subgroup(g));
        return out;
    }
    if (order == g.order()) {
        out.push_back(full_subgroup(g));
        return out;
    }
    for (int x = 0; x < g.order(); ++x) {
        Subgroup h = cyclic_subgroup(g, x);
        if (h.order() == order && seen.insert(h.members).second)
            out.push_back(h);
    }
    for (int a = 1; a < g.order(); ++a) {
        if (order % g.element_order(a) != 0)
            continue;
        for (int b = a + 1; b < g.order(); ++b) {
            Subgroup h = closure_subgroup(g, {a, b});
            if (h.order() == order && seen.insert(h.members).second)
                out.push_back(h);
        }
    }
    return out;
}

std::vector<long long> abelian_invariants(const FiniteGroup& g) {
    if (!g.is_abelian())
        throw InvalidDatum("abelian_invariants called on a non-abelian group");
    const long long n = g.order();
    // per prime: recover the partition (lambda_1 >= lambda_2 >= ...) of the
    // p-part from counts of elements of order dividing p^j
    std::map<long long, std::vector<int>> partitions;
    for (long long p : prime_divisors(n)) {
        std::vector<long long> counts{1};
        for (int j = 1;; ++j) {
            long long pj = 1;
            for (int t = 0; t < j; ++t)
                pj *= p;
            long long c = 0;
            for (int x = 0; x < g.order(); ++x)
                if (pj % g.element_order(x) == 0)
                    ++c;
            counts.push_back(c);
            if (c == counts[static_cast<size_t>(j) - 1])
                break;
        }
        std::vector<int> parts;
        for (size_t j = 1; j < counts.size(); ++j) {
            int m = 0;
            long long ratio = counts[j] / counts[j - 1];
            while (ratio > 1) {
                ratio /= p;
                ++m;
            }
            // m parts have size >= j
            while (static_cast<int>(parts.size()) < m)
                parts.push_back(0);
            for (int t = 0; t < m; ++t)
                parts[t] += 1;
        }
        partitions[p] = parts;
    }
    size_t k = 0;
    for (auto& [p, parts] : partitions)
        k = std::max(k, parts.size());
    std::vector<long long> factors(k, 1);
    for (auto& [p, parts] : partitions)
        for (size_t i = 0; i < parts.size(); ++i) {
            long long pe = 1;
            for (int t = 0; t < parts[i]; ++t)
                pe *= p;
            factors[k - 1 - i] *= pe;
        }
    std::vector<long long> out;
    for (long long f : factors)
        if (f > 1)
            out.push_back(f);
    return out;
}

} // namespace gpic

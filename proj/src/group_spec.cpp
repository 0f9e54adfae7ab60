#include "gpic/group_spec.hpp"

#include "gpic/errors.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace gpic {

namespace {

struct Cursor {
    const std::string& s;
    size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
            ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    char take() {
        skip_ws();
        if (pos >= s.size())
            throw ParseError(pos, "unexpected end of input");
        return s[pos++];
    }
    void expect(char c) {
        char got = take();
        if (got != c)
            throw ParseError(pos - 1, std::string("expected '") + c + "', got '" + got + "'");
    }
    int integer() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
            ++pos;
        if (pos == start)
            throw ParseError(start, "expected a number");
        long long v = 0;
        for (size_t i = start; i < pos; ++i) {
            v = v * 10 + (s[i] - '0');
            if (v > 1'000'000)
                throw ParseError(start, "number too large");
        }
        return static_cast<int>(v);
    }
};

// trims trailing fixed points so equal permutations compare equal
void trim_perm(Perm& p) {
    while (p.size() > 1 && p.back() == static_cast<int>(p.size()) - 1)
        p.pop_back();
}

Perm parse_generator(Cursor& cur) {
    // one generator: a nonempty sequence of parenthesized cycles
    std::vector<std::vector<int>> cycles;
    std::vector<bool> used;
    while (cur.peek() == '(') {
        cur.expect('(');
        std::vector<int> cycle;
        while (cur.peek() != ')') {
            int pt = cur.integer();
            if (pt < 1)
                throw ParseError(cur.pos, "points are 1-based");
            cycle.push_back(pt - 1);
            if (static_cast<size_t>(pt) > used.size())
                used.resize(pt, false);
            if (used[pt - 1])
                throw InvalidPermutation("point " + std::to_string(pt) +
                                         " appears twice in one generator");
            used[pt - 1] = true;
        }
        cur.expect(')');
        cycles.push_back(std::move(cycle));
    }
    if (cycles.empty())
        throw ParseError(cur.pos, "expected a cycle '('");
    Perm p = perm_identity(static_cast<int>(used.size()));
    if (p.empty())
        p = perm_identity(1);
    for (auto& cycle : cycles)
        for (size_t i = 0; i < cycle.size(); ++i)
            p[cycle[i]] = cycle[(i + 1) % cycle.size()];
    trim_perm(p);
    return p;
}

GroupAtom parse_atom(Cursor& cur) {
    GroupAtom a;
    char c = cur.take();
    switch (c) {
    case 'C':
    case 'D':
    case 'S':
    case 'A': {
        a.n = cur.integer();
        if (a.n < 1)
            throw UnsupportedFamily(std::string(1, c) + "0 is not a group");
        a.family = c == 'C'   ? GroupAtom::Family::C
                   : c == 'D' ? GroupAtom::Family::D
                   : c == 'S' ? GroupAtom::Family::S
                              : GroupAtom::Family::A;
        return a;
    }
    case 'Q':
        cur.expect('8');
        a.family = GroupAtom::Family::Q8;
        return a;
    case 'V':
        cur.expect('4');
        a.family = GroupAtom::Family::V4;
        return a;
    case 'E': {
        cur.expect('A');
        cur.expect('(');
        a.p = cur.integer();
        cur.expect(',');
        a.r = cur.integer();
        cur.expect(')');
        if (!is_prime(a.p))
            throw UnsupportedFamily("EA(" + std::to_string(a.p) + ",...): p must be prime");
        if (a.r < 1)
            throw UnsupportedFamily("EA(p,r): r must be >= 1");
        a.family = GroupAtom::Family::EA;
        return a;
    }
    default:
        throw ParseError(cur.pos - 1, std::string("unknown family letter '") + c + "'");
    }
}

std::string print_perm(const Perm& p) {
    std::ostringstream os;
    std::vector<bool> seen(p.size(), false);
    bool any = false;
    for (size_t start = 0; start < p.size(); ++start) {
        if (seen[start] || p[start] == static_cast<int>(start))
            continue;
        os << '(';
        size_t x = start;
        bool first = true;
        do {
            seen[x] = true;
            if (!first)
                os << ' ';
            os << (x + 1);
            first = false;
            x = static_cast<size_t>(p[x]);
        } while (x != start);
        os << ')';
        any = true;
    }
    if (!any)
        os << "()"; // identity generator
    return os.str();
}

// quaternion unit group: elements (unit, sign), unit in {1,i,j,k}
int quat_mul(int a, int b) {
    static const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int sign[4][4] = {{+1, +1, +1, +1},
                                   {+1, -1, +1, -1},
                                   {+1, -1, -1, +1},
                                   {+1, +1, -1, -1}};
    int ua = a & 3, sa = a >> 2, ub = b & 3, sb = b >> 2;
    int u = unit[ua][ub];
    int s = (sa ^ sb) ^ (sign[ua][ub] < 0 ? 1 : 0);
    return u | (s << 2);
}

std::vector<Perm> family_generators(const GroupAtom& a) {
    using F = GroupAtom::Family;
    std::vector<Perm> gens;
    switch (a.family) {
    case F::C: {
        if (a.n == 1)
            break;
        Perm rot(a.n);
        for (int i = 0; i < a.n; ++i)
            rot[i] = (i + 1) % a.n;
        gens.push_back(rot);
        break;
    }
    case F::D: {
        // symmetries of the n-gon, order 2n; n <= 2 is degenerate on the
        // polygon so use explicit faithful domains
        if (a.n == 1) {
            gens.push_back({1, 0});
        } else if (a.n == 2) {
            gens.push_back({1, 0});
            gens.push_back({0, 1, 3, 2});
        } else {
            Perm rot(a.n), flip(a.n);
            for (int i = 0; i < a.n; ++i) {
                rot[i] = (i + 1) % a.n;
                flip[i] = a.n - 1 - i;
            }
            gens.push_back(rot);
            gens.push_back(flip);
        }
        break;
    }
    case F::S: {
        if (a.n == 1)
            break;
        Perm swap = perm_identity(a.n);
        std::swap(swap[0], swap[1]);
        gens.push_back(swap);
        if (a.n > 2) {
            Perm rot(a.n);
            for (int i = 0; i < a.n; ++i)
                rot[i] = (i + 1) % a.n;
            gens.push_back(rot);
        }
        break;
    }
    case F::A: {
        if (a.n <= 2)
            break;
        Perm three = perm_identity(a.n);
        three[0] = 1;
        three[1] = 2;
        three[2] = 0;
        gens.push_back(three);
        if (a.n > 3) {
            Perm big = perm_identity(a.n);
            if (a.n % 2 == 1) {
                for (int i = 0; i < a.n; ++i)
                    big[i] = (i + 1) % a.n;
            } else {
                for (int i = 1; i < a.n; ++i)
                    big[i] = 1 + (i % (a.n - 1));
            }
            gens.push_back(big);
        }
        break;
    }
    case F::Q8: {
        // right regular action of the quaternion units on themselves
        for (int gen : {1, 2}) { // i and j
            Perm p(8);
            for (int x = 0; x < 8; ++x)
                p[x] = quat_mul(x, gen);
            gens.push_back(p);
        }
        break;
    }
    case F::V4:
        gens.push_back({1, 0});
        gens.push_back({0, 1, 3, 2});
        break;
    case F::EA: {
        long long domain = static_cast<long long>(a.p) * a.r;
        if (domain > 100000)
            throw UnsupportedFamily("EA(p,r) domain too large");
        for (int i = 0; i < a.r; ++i) {
            Perm p = perm_identity(static_cast<int>(domain));
            for (int t = 0; t < a.p; ++t)
                p[i * a.p + t] = i * a.p + (t + 1) % a.p;
            gens.push_back(p);
        }
        break;
    }
    case F::Perm:
        gens = a.gens;
        break;
    }
    for (auto& g : gens)
        trim_perm(g);
    return gens;
}

} // namespace

GroupSpec parse_group_spec(const std::string& text) {
    Cursor cur{text};
    GroupSpec spec;
    if (cur.eof())
        throw ParseError(0, "empty group spec");

    // "perm:" prefix?
    {
        size_t save = cur.pos;
        cur.skip_ws();
        if (text.compare(cur.pos, 5, "perm:") == 0) {
            cur.pos += 5;
            GroupAtom a;
            a.family = GroupAtom::Family::Perm;
            a.gens.push_back(parse_generator(cur));
            while (!cur.eof()) {
                cur.expect(',');
                a.gens.push_back(parse_generator(cur));
            }
            spec.atoms.push_back(std::move(a));
            return spec;
        }
        cur.pos = save;
    }

    spec.atoms.push_back(parse_atom(cur));
    while (!cur.eof()) {
        cur.expect('x');
        spec.atoms.push_back(parse_atom(cur));
    }
    return spec;
}

std::string print_group_spec(const GroupSpec& spec) {
    using F = GroupAtom::Family;
    std::ostringstream os;
    bool first = true;
    for (auto& a : spec.atoms) {
        if (!first)
            os << 'x';
        first = false;
        switch (a.family) {
        case F::C: os << 'C' << a.n; break;
        case F::D: os << 'D' << a.n; break;
        case F::S: os << 'S' << a.n; break;
        case F::A: os << 'A' << a.n; break;
        case F::Q8: os << "Q8"; break;
        case F::V4: os << "V4"; break;
        case F::EA: os << "EA(" << a.p << "," << a.r << ")"; break;
        case F::Perm: {
            os << "perm:";
            for (size_t i = 0; i < a.gens.size(); ++i) {
                if (i)
                    os << ',';
                os << print_perm(a.gens[i]);
            }
            break;
        }
        }
    }
    return os.str();
}

FiniteGroup realize(const GroupSpec& spec, std::size_t cap) {
    // each atom acts on its own block of points
    std::vector<Perm> gens;
    int offset = 0;
    for (auto& a : spec.atoms) {
        std::vector<Perm> local = family_generators(a);
        int degree = 1;
        for (auto& g : local)
            degree = std::max(degree, static_cast<int>(g.size()));
        for (auto& g : local) {
            Perm shifted = perm_identity(offset + degree);
            for (size_t x = 0; x < g.size(); ++x)
                shifted[offset + x] = offset + g[x];
            gens.push_back(std::move(shifted));
        }
        offset += degree;
    }
    return FiniteGroup::from_permutations(std::move(gens), cap);
}

FiniteGroup realize_group(const std::string& text, std::size_t cap) {
    return realize(parse_group_spec(text), cap);
}

} // namespace gpic

#include "gpic/finab.hpp"

#include "gpic/errors.hpp"
#include "gpic/snf.hpp"

#include <sstream>

namespace gpic {

FinAbGroup FinAbGroup::from_diagonal(std::vector<Int> diag, int free_rank) {
    for (auto& d : diag)
        if (d == 0)
            throw InvalidChain("zero entry in torsion diagonal");
    FinAbGroup g;
    g.free_rank_ = free_rank;
    std::vector<Int> chain = canonical_chain(std::move(diag));
    for (auto& d : chain)
        if (d > 1)
            g.factors_.push_back(d);
    return g;
}

FinAbGroup FinAbGroup::cyclic(const Int& n) {
    if (n < 1)
        throw InvalidChain("cyclic group order must be positive");
    FinAbGroup g;
    if (n > 1)
        g.factors_.push_back(n);
    return g;
}

Int FinAbGroup::order() const {
    Int o = 1;
    for (auto& d : factors_)
        o *= d;
    return o;
}

Int FinAbGroup::exponent() const {
    return factors_.empty() ? Int(1) : factors_.back();
}

FinAbGroup FinAbGroup::direct_sum(const FinAbGroup& o) const {
    std::vector<Int> all = factors_;
    all.insert(all.end(), o.factors_.begin(), o.factors_.end());
    return from_diagonal(std::move(all), free_rank_ + o.free_rank_);
}

FinAbGroup FinAbGroup::prime_to_part(const Int& p) const {
    std::vector<Int> stripped;
    for (Int d : factors_) {
        while (d % p == 0)
            d /= p;
        if (d > 1)
            stripped.push_back(d);
    }
    return from_diagonal(std::move(stripped), free_rank_);
}

int FinAbGroup::order_valuation(const Int& p) const {
    int v = 0;
    for (Int d : factors_)
        while (d % p == 0) {
            d /= p;
            ++v;
        }
    return v;
}

std::string FinAbGroup::str() const {
    if (is_trivial())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& d : factors_) {
        if (!first)
            os << " + ";
        os << "Z/" << d;
        first = false;
    }
    if (free_rank_ > 0) {
        if (!first)
            os << " + ";
        os << "Z";
        if (free_rank_ > 1)
            os << "^" << free_rank_;
    }
    return os.str();
}

} // namespace gpic

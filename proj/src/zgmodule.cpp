#include "gpic/zgmodule.hpp"

#include "gpic/errors.hpp"
#include "gpic/snf.hpp"

#include <random>

namespace gpic {

ZGModule::ZGModule(const FiniteGroup& g, int rank, std::vector<IntMat> gen_action)
    : group_(&g), rank_(rank) {
    if (gen_action.size() != g.generators().size())
        throw InvalidDatum("one action matrix per generator required");
    for (auto& m : gen_action) {
        if (m.rows() != rank || m.cols() != rank)
            throw InvalidDatum("action matrix has wrong shape");
        Int d = determinant(m);
        if (d != 1 && d != -1)
            throw InvalidDatum("action matrix is not invertible over Z");
    }
    cache_.resize(g.order());
    cache_[0] = std::make_unique<IntMat>(IntMat::identity(rank));
    for (size_t k = 0; k < gen_action.size(); ++k) {
        int id = g.generators()[k];
        if (id == 0)
            continue; // trivial generator of the trivial group
        cache_[id] = std::make_unique<IntMat>(std::move(gen_action[k]));
    }
}

const IntMat& ZGModule::action(int g) const {
    if (cache_[g])
        return *cache_[g];
    auto [parent, genk] = group_->bfs_parent(g);
    const IntMat& pm = action(parent);
    const IntMat& gm = action(group_->generators()[genk]);
    cache_[g] = std::make_unique<IntMat>(pm * gm);
    return *cache_[g];
}

std::vector<std::tuple<int, int, Int>> ZGModule::action_sparse(int g) const {
    const IntMat& m = action(g);
    std::vector<std::tuple<int, int, Int>> out;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (m.at(i, j) != 0)
                out.emplace_back(i, j, m.at(i, j));
    return out;
}

ZGModule ZGModule::direct_sum(const ZGModule& other) const {
    if (group_ != other.group_ && !(*group_ == *other.group_))
        throw InvalidDatum("direct sum needs modules over the same group");
    std::vector<IntMat> gen_action;
    for (size_t k = 0; k < group_->generators().size(); ++k) {
        int id = group_->generators()[k];
        const IntMat& a = action(id);
        const IntMat& b = other.action(id);
        IntMat s(rank_ + other.rank_, rank_ + other.rank_);
        for (int i = 0; i < a.rows(); ++i)
            for (int j = 0; j < a.cols(); ++j)
                s.at(i, j) = a.at(i, j);
        for (int i = 0; i < b.rows(); ++i)
            for (int j = 0; j < b.cols(); ++j)
                s.at(rank_ + i, rank_ + j) = b.at(i, j);
        gen_action.push_back(std::move(s));
    }
    return ZGModule(*group_, rank_ + other.rank_, std::move(gen_action));
}

ZGModule trivial_module(const FiniteGroup& g, int rank) {
    std::vector<IntMat> gen_action(g.generators().size(), IntMat::identity(rank));
    return ZGModule(g, rank, std::move(gen_action));
}

ZGModule induced_module(const FiniteGroup& g, const Subgroup& h) {
    auto cs = cosets(g, h);
    const int k = static_cast<int>(cs.size());
    std::vector<int> coset_of(g.order());
    for (int i = 0; i < k; ++i)
        for (int x : cs[i])
            coset_of[x] = i;
    std::vector<IntMat> gen_action;
    for (int gen : g.generators()) {
        // right-translation action: g sends the coset Hx to Hxg^-1, which
        // makes g |-> matrix a left action on the coset basis
        IntMat m(k, k);
        int ginv = g.inv(gen);
        for (int i = 0; i < k; ++i) {
            int img = coset_of[g.mul(cs[i][0], ginv)];
            m.at(img, i) = 1;
        }
        gen_action.push_back(std::move(m));
    }
    return ZGModule(g, k, std::move(gen_action));
}

bool check_module(const ZGModule& m, int exhaustive_limit, int samples, unsigned seed) {
    const FiniteGroup& g = m.group();
    if (!(m.action(0) == IntMat::identity(m.rank())))
        return false;
    auto check_pair = [&](int a, int b) {
        return m.action(a) * m.action(b) == m.action(g.mul(a, b));
    };
    if (g.order() <= exhaustive_limit) {
        for (int a = 0; a < g.order(); ++a)
            for (int b = 0; b < g.order(); ++b)
                if (!check_pair(a, b))
                    return false;
    } else {
        std::mt19937 rng(seed);
        std::uniform_int_distribution<int> pick(0, g.order() - 1);
        for (int t = 0; t < samples; ++t)
            if (!check_pair(pick(rng), pick(rng)))
                return false;
    }
    return true;
}

FixedPoints fixed_points(const ZGModule& m) {
    const FiniteGroup& g = m.group();
    const int r = m.rank();
    std::vector<int> gens = g.generators();
    if (gens.empty())
        gens.push_back(0);
    IntMat stacked(static_cast<int>(gens.size()) * r, r);
    for (size_t k = 0; k < gens.size(); ++k) {
        const IntMat& a = m.action(gens[k]);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
                stacked.at(static_cast<int>(k) * r + i, j) = a.at(i, j) - (i == j ? 1 : 0);
    }
    IntMat basis = kernel_basis(stacked);
    return {basis.cols(), std::move(basis)};
}

} // namespace gpic

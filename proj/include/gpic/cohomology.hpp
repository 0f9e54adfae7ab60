#pragma once

#include "gpic/bar.hpp"
#include "gpic/finab.hpp"

namespace gpic {

struct CohomologyOptions {
    /// Cap on the largest cochain space touched (rank(M) * (|G|-1)^(n+1)).
    long long budget = 5'000'000;
    /// Cap for the dense finite-coefficient path.
    long long dense_budget = 20'000;
};

/// H^n(G, M) for n in {0,1,2} in canonical invariant-factor form, computed
/// from the normalized bar resolution by exact integer elimination.
///
/// `modulus` = 0 computes cohomology of the free module M itself;
/// `modulus` = m > 0 computes cohomology with coefficients M/mM (the
/// uniform-annihilator case, enough for the Z/m oracles).
FinAbGroup cohomology_group(const FiniteGroup& g, const ZGModule& m, int n,
                            long long modulus = 0, const CohomologyOptions& opt = {});

/// Schur multiplier H_2(G, Z) from the normalized bar homology complex.
/// For finite G this equals H^2(G, Q/Z) (divisible coefficients kill the
/// Ext term in universal coefficients), which is the group written
/// multiplicatively as H^2(G, F*) in characteristic zero.
FinAbGroup schur_multiplier(const FiniteGroup& g, const CohomologyOptions& opt = {});

/// H^2(G, F*) for an algebraically closed field of the given characteristic:
/// the Schur multiplier when char = 0, its p'-part when char = p > 0.
FinAbGroup h2_units(const FiniteGroup& g, long long characteristic,
                    const CohomologyOptions& opt = {});

/// Closed form for abelian groups: the multiplier of Z/d1 + ... + Z/dk
/// (a divisibility chain) is the exterior square, the sum of Z/di over all
/// pairs i < j.  Serves as an independent oracle for the bar computation.
FinAbGroup schur_multiplier_abelian(const std::vector<Int>& chain);

/// Independent dense oracle for H^2(G, Z/m) with trivial action: builds the
/// explicit normalized 2-cocycle condition and eliminates over Z/p^k (CRT
/// over the prime powers of m).  Shares no code with cohomology_group.
/// Requires |G| <= 12.
FinAbGroup brute_force_h2(const FiniteGroup& g, long long m);

} // namespace gpic

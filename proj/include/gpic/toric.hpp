#pragma once

#include "gpic/finab.hpp"
#include "gpic/group.hpp"
#include "gpic/snf.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gpic {

/// A rational polyhedral fan: primitive ray vectors plus simplicial cones
/// given as sorted ray-index sets.  Rays double as the 1-cones; the zero
/// cone is implicit.  Cones of dimension >= 2 must be listed together with
/// all their faces of dimension >= 2.
struct Fan {
    int rank = 0;
    std::vector<std::vector<long long>> rays;
    std::vector<std::vector<int>> cones; // dim >= 2, each sorted

    /// Cones of dimension k in canonical order (k = 1 gives the rays).
    std::vector<std::vector<int>> cones_of_dim(int k) const;
    int max_cone_dim() const;
};

Fan fan_from_json_text(const std::string& text);
Fan load_fan(const std::string& path);

enum class Completeness { CompleteExact, CompleteSampled, Incomplete, NotChecked };

struct FanReport {
    std::vector<std::string> violations; // empty = structurally valid
    bool primitive_ok = true;
    bool faces_ok = true;
    bool smooth_ok = true;
    Completeness completeness = Completeness::NotChecked;
    bool valid() const { return violations.empty(); }
};

/// Structural validation; never throws on bad input, reports violations.
/// Completeness is exact for rank <= 2 and sampled (seeded random
/// directions) for higher rank.
FanReport validate_fan(const Fan& fan, unsigned seed = 0, int samples = 1000);

/// A finite group of fan automorphisms: unimodular matrices permuting the
/// rays and the cones.  Carries the induced permutations per element.
struct ToricAutGroup {
    const Fan* fan = nullptr;
    FiniteGroup group;
    std::vector<IntMat> matrices;            // by element id
    std::vector<std::vector<int>> ray_perm;  // [elem][ray] -> ray
    // cone_perm[k][elem][i] -> index within cones_of_dim(k+1)
    std::vector<std::vector<std::vector<int>>> cone_perm;
};

/// Closes the given unimodular matrices into a group (cap on the order),
/// verifying fan preservation for every element.
ToricAutGroup toric_automorphisms(const Fan& fan, const std::vector<IntMat>& generators,
                                  std::size_t cap = 256);

/// Orbits of the k-dimensional cones, canonical order.
std::vector<std::vector<int>> cone_orbits(const ToricAutGroup& aut, int k);

/// An integer cycle supported on the k-dimensional cones (codimension
/// rank - k): coefficient per cone index within cones_of_dim(k).
struct TCycle {
    int cone_dim = 1;
    std::map<int, Int> coeffs;

    bool operator==(const TCycle& o) const {
        return cone_dim == o.cone_dim && coeffs == o.coeffs;
    }
};

TCycle cycle_from_json_text(const std::string& text);
TCycle load_cycle(const std::string& path);

/// g applied to a cycle: coefficients pushed forward along the cone
/// permutation.
TCycle apply_to_cycle(const ToricAutGroup& aut, int elem, const TCycle& z);

struct RepresentativeResult {
    std::optional<TCycle> cycle;
    bool averaged = false;
    std::optional<std::vector<int>> offending_orbit; // set when no result
    bool certificate_checked = false; // g.Z = Z verified for all generators
};

/// If the coefficients are constant on every cone orbit the cycle is
/// already G-invariant and is returned with a certificate; otherwise the
/// orbit-averaged cycle is returned when the orbit sums divide evenly, else
/// the offending orbit.
RepresentativeResult invariant_representative(const ToricAutGroup& aut, const TCycle& z);

/// Divisor class group of the fan: cokernel of the ray matrix acting on
/// characters.  Smooth complete fans give a free group of rank
/// (#rays - rank).
struct ClassGroup {
    FinAbGroup group;
    IntMat ray_matrix; // #rays x rank presentation
    std::vector<Int> snf_diag;
};
ClassGroup divisor_class_group(const Fan& fan);

struct InvariantDivisorResult {
    std::optional<TCycle> divisor;        // D' = D + div(u), orbit-constant
    std::optional<std::vector<Int>> character; // the u that was added
    std::optional<InfeasibilityCertificate> infeasibility;
    bool certificate_checked = false;
};

/// Finds an orbit-constant divisor in the class of D by solving the
/// integer system over characters.  Throws ClassNotInvariant when the class
/// of D is not fixed by the group; returns a checked infeasibility
/// certificate when the class is fixed but no toric representative exists.
InvariantDivisorResult invariant_divisor_in_class(const Fan& fan, const ToricAutGroup& aut,
                                                  const TCycle& d);

} // namespace gpic

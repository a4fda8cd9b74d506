// Exact rational polyhedral cones in the Neron-Severi space: duality under
// the intersection pairing (double description), membership (exact simplex),
// conic faces of the Mori cone, and ray permutations of linear self-maps.
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "delpezzo/lattice.hpp"
#include "delpezzo/numeric.hpp"

namespace dp::cones {

// Cone spanned by primitive, pairwise non-proportional integer generators,
// stored in lexicographic order so equal cones compare equal.  The pairing
// diag(1, -1, ..., -1) of the ambient lattice drives duality.
struct RationalCone {
    int rank = 0;
    std::vector<IVec> generators;

    bool operator==(const RationalCone& o) const {
        return rank == o.rank && generators == o.generators;
    }
};

// Normalizes a generator list: primitivize, drop zeros and positive-multiple
// duplicates, sort.
RationalCone make_cone(int rank, std::vector<IVec> gens);

// Intersection pairing of the ambient lattice: <a,b> = a0 b0 - sum a_i b_i.
Int pair_form(const IVec& a, const IVec& b);

// Mori cone of the degree 9-r del Pezzo surface.  For 2 <= r <= 7 the
// generators are the (-1)-classes.  In the low ranks the extremal rays are
// not all (-1)-classes and are supplied explicitly:
//   r = 0:  {H}                        (the plane)
//   r = 1:  {E_1, H - E_1}             ((-1)-section and fiber of F_1)
// r = 8 is unsupported.
RationalCone mori_cone(const lattice::PicLattice& L);

// Dual cone {x : <x, g> >= 0 for all generators g} under the intersection
// pairing, computed by exact double description.  A non-full-dimensional
// input yields a dual with lineality, returned as +/- basis vector pairs
// together with the extreme rays of the pointed part.
RationalCone dual_cone(const RationalCone& c);

// Exact membership: is v a non-negative rational combination of the
// generators?  Phase-1 simplex with Bland's rule over mpq.
bool contains(const RationalCone& c, const IVec& v);

// Subcone of the Mori cone spanned by the line classes orthogonal to the
// conic class C.  C must be a conic class and nef.
RationalCone face_of_conic(const lattice::PicLattice& L, const lattice::DivisorClass& C);

struct RayPermutation {
    std::vector<int> perm;  // generator i maps onto a positive multiple of generator perm[i]
    unsigned long long order = 1;
};

// Outcome of trying to read off a ray permutation: either the permutation or
// the first generator whose image is not a positive multiple of a generator.
struct RayPermutationResult {
    std::optional<RayPermutation> permutation;
    int violating_index = -1;
    IVec violating_image;

    bool ok() const { return permutation.has_value(); }
};

RayPermutationResult ray_permutation(const IMat& m, const RationalCone& c);

unsigned long long permutation_order(const std::vector<int>& perm);

// Smallest k (the order of the induced ray permutation) with M^k mapping
// every generator to a positive multiple of itself; returns (k, M^k).
// Throws if M does not permute the rays.
std::pair<unsigned long long, IMat> iterate_to_fix_rays(const IMat& m, const RationalCone& c);

// Adjoint of m with respect to the intersection pairing: <m a, b> = <a, m* b>.
IMat form_adjoint(const IMat& m);

}  // namespace dp::cones

// Validation pipeline for pullback actions on the Neron-Severi lattice:
// nef-cone preservation, the lattice automorphism pool, blow-down descent,
// conic-bundle multipliers, the identity-forcing argument and the degree
// obstruction on the base of a conic bundle.
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "delpezzo/cones.hpp"
#include "delpezzo/lattice.hpp"
#include "delpezzo/numeric.hpp"

namespace dp::endo {

// Candidate pullback action f^* on N^1, an integer matrix in the
// (H, E_1..E_r) basis.  Properties are validated, never assumed.
struct PullbackAction {
    lattice::PicLattice lat;
    IMat matrix;

    PullbackAction(lattice::PicLattice l, IMat m);
};

struct ValidationReport {
    Int det = 0;
    bool invertible = false;
    bool nef_forward = false;    // every nef generator maps into the nef cone
    bool nef_preimage = false;   // every nef generator has a nef preimage direction
    bool nef_preserved = false;  // the action permutes the nef extreme rays
    // Induced permutations of the Mori extreme rays, extracted for the matrix
    // itself and for its pairing-adjoint; either may fail independently.
    std::optional<cones::RayPermutation> ne_rays;
    std::optional<cones::RayPermutation> ne_rays_adjoint;
    std::optional<cones::RayPermutation> nef_rays;

    bool valid() const { return invertible && nef_preserved; }
};

ValidationReport validate_pullback(const PullbackAction& a);

// All integer matrices preserving the intersection form and fixing K.
// Exhaustive search over images of the exceptional basis among pairwise
// orthogonal line classes; supported for r <= 5.
std::vector<IMat> enumerate_lattice_automorphisms(const lattice::PicLattice& L);

// Descends an action along the contraction of the basis class D = E_i.
// Requires A * D to be a positive multiple of D.
PullbackAction descend_action(const PullbackAction& a, const lattice::DivisorClass& D);

// For a ray-fixing action, the positive integer m_j with A * C_j = m_j C_j
// for every conic class C_j; throws if an image is not such a multiple.
std::vector<std::pair<lattice::DivisorClass, Int>> conic_multipliers(const PullbackAction& a);

struct IdentityForcing {
    bool forced_identity = false;
    // Witness conic class and multiplier > 1 when the action is not forced.
    std::optional<std::pair<lattice::DivisorClass, Int>> witness;
};

// On the degree 5 surface the conic classes span N^1, so a ray-fixing action
// with all multipliers 1 must be the identity; otherwise some multiplier
// exceeds 1 and is returned as the witness.
IdentityForcing identity_forcing_check(const PullbackAction& a);

// Degree of K + Delta minus its pullback under a degree deg_h self-map of
// the line: (n_critical - 2) * (1 - deg_h).  A negative value certifies that
// no global section can exist, contradicting deg_h > 1.
long long log_degree_obstruction(long long deg_h, long long n_critical);

}  // namespace dp::endo

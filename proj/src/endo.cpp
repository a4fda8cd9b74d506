#include "delpezzo/endo.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace dp::endo {

using lattice::DivisorClass;
using lattice::PicLattice;

PullbackAction::PullbackAction(PicLattice l, IMat m) : lat(l), matrix(std::move(m)) {
    if (matrix.size() != static_cast<size_t>(lat.rank()))
        throw DomainError("pullback action: matrix rank does not match the lattice");
    for (const auto& row : matrix)
        if (row.size() != matrix.size())
            throw DomainError("pullback action: matrix is not square");
}

namespace {

// Solves M x = v over the rationals; returns the solution scaled to a
// primitive integer vector, or nullopt if singular/inconsistent.
std::optional<IVec> solve_direction(const IMat& m, const IVec& v) {
    size_t n = m.size();
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n + 1));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) a[i][j] = Rat(m[i][j]);
        a[i][n] = Rat(v[i]);
    }
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(a[col], a[piv]);
        Rat p = a[col][col];
        for (size_t j = col; j <= n; ++j) a[col][j] /= p;
        for (size_t i = 0; i < n; ++i) {
            if (i == col || a[i][col] == 0) continue;
            Rat f = a[i][col];
            for (size_t j = col; j <= n; ++j) a[i][j] -= f * a[col][j];
        }
    }
    Int den = 1;
    for (size_t i = 0; i < n; ++i) den = int_lcm(den, a[i][n].get_den());
    IVec x(n);
    for (size_t i = 0; i < n; ++i) x[i] = Int(a[i][n] * Rat(den));
    return ivec_primitive(x);
}

}  // namespace

ValidationReport validate_pullback(const PullbackAction& a) {
    ValidationReport rep;
    rep.det = imat_det(a.matrix);
    rep.invertible = rep.det != 0;

    cones::RationalCone ne = cones::mori_cone(a.lat);
    cones::RationalCone nef = cones::dual_cone(ne);

    rep.nef_forward = true;
    for (const auto& g : nef.generators)
        if (!cones::contains(nef, imat_apply(a.matrix, g))) {
            rep.nef_forward = false;
            break;
        }
    rep.nef_preimage = rep.invertible;
    if (rep.invertible)
        for (const auto& g : nef.generators) {
            auto pre = solve_direction(a.matrix, g);
            if (!pre || !cones::contains(nef, *pre)) {
                rep.nef_preimage = false;
                break;
            }
        }

    auto nef_perm = cones::ray_permutation(a.matrix, nef);
    if (nef_perm.ok()) rep.nef_rays = *nef_perm.permutation;
    rep.nef_preserved = rep.invertible && nef_perm.ok();

    auto ne_perm = cones::ray_permutation(a.matrix, ne);
    if (ne_perm.ok()) rep.ne_rays = *ne_perm.permutation;
    auto ne_adj = cones::ray_permutation(cones::form_adjoint(a.matrix), ne);
    if (ne_adj.ok()) rep.ne_rays_adjoint = *ne_adj.permutation;
    return rep;
}

std::vector<IMat> enumerate_lattice_automorphisms(const PicLattice& L) {
    if (L.r > 5)
        throw DomainError("enumerate_lattice_automorphisms: supported for r <= 5 only");
    int n = L.rank();
    if (L.r == 0) return {imat_identity(1)};

    auto lines = lattice::enumerate_lines(L);
    DivisorClass mk = L.anticanonical();

    // An automorphism preserving the form and fixing K sends each E_i to a
    // line class, the images are pairwise orthogonal, and the image of H is
    // then (-K + sum of images)/3, which must be integral of square one and
    // orthogonal to each image.  Conversely any such tuple extends to an
    // automorphism, since the Gram matrix of the images equals the form.
    std::set<IMat> found;
    std::vector<const DivisorClass*> chosen;
    std::vector<std::vector<bool>> orth(lines.size(), std::vector<bool>(lines.size(), false));
    for (size_t i = 0; i < lines.size(); ++i)
        for (size_t j = 0; j < lines.size(); ++j)
            orth[i][j] = lattice::intersect(L, lines[i], lines[j]) == 0;
    std::vector<size_t> pick;

    auto emit = [&]() {
        DivisorClass sum = mk;
        for (auto* d : chosen) sum = sum + *d;
        for (long long x : sum.c)
            if (x % 3 != 0) return;
        DivisorClass ah(std::vector<long long>(sum.c.size()));
        for (size_t i = 0; i < sum.c.size(); ++i) ah.c[i] = sum.c[i] / 3;
        if (lattice::intersect(L, ah, ah) != 1) return;
        for (auto* d : chosen)
            if (lattice::intersect(L, ah, *d) != 0) return;
        IMat m(n, IVec(n));
        for (int i = 0; i < n; ++i) {
            m[i][0] = Int(static_cast<long>(ah.c[i]));
            for (int j = 1; j < n; ++j) m[i][j] = Int(static_cast<long>(chosen[j - 1]->c[i]));
        }
        found.insert(std::move(m));
    };

    std::function<void()> rec = [&]() {
        if (static_cast<int>(pick.size()) == L.r) {
            emit();
            return;
        }
        for (size_t cand = 0; cand < lines.size(); ++cand) {
            bool ok = true;
            for (size_t used : pick)
                if (used == cand || !orth[used][cand]) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            pick.push_back(cand);
            chosen.push_back(&lines[cand]);
            rec();
            chosen.pop_back();
            pick.pop_back();
        }
    };
    rec();
    return {found.begin(), found.end()};
}

PullbackAction descend_action(const PullbackAction& a, const DivisorClass& D) {
    IVec dv = D.to_ivec();
    IVec image = imat_apply(a.matrix, dv);
    IVec prim = ivec_primitive(image);
    if (!(prim == ivec_primitive(dv)))
        throw DomainError("descend_action: the action does not fix the ray of the contracted class");
    auto bd = lattice::blow_down(a.lat, D);
    int drop = bd.dropped_index;
    int n = a.lat.rank();
    IMat sub;
    for (int i = 0; i < n; ++i) {
        if (i == drop) continue;
        IVec row;
        for (int j = 0; j < n; ++j)
            if (j != drop) row.push_back(a.matrix[i][j]);
        sub.push_back(std::move(row));
    }
    return PullbackAction(bd.image, std::move(sub));
}

std::vector<std::pair<DivisorClass, Int>> conic_multipliers(const PullbackAction& a) {
    cones::RationalCone ne = cones::mori_cone(a.lat);
    for (const auto& g : ne.generators) {
        IVec image = ivec_primitive(imat_apply(a.matrix, g));
        if (!(image == g))
            throw DomainError(
                "conic_multipliers: action does not fix every Mori ray; iterate it first");
    }
    std::vector<std::pair<DivisorClass, Int>> out;
    for (const auto& c : lattice::enumerate_conics(a.lat)) {
        IVec cv = c.to_ivec();
        IVec image = imat_apply(a.matrix, cv);
        // image must equal m * cv for a positive integer m
        Int m = 0;
        bool proportional = true;
        for (size_t i = 0; i < cv.size() && proportional; ++i) {
            if (cv[i] == 0) {
                if (image[i] != 0) proportional = false;
            } else {
                Int q = image[i] / cv[i];
                if (q * cv[i] != image[i]) proportional = false;
                if (m == 0)
                    m = q;
                else if (q != m)
                    proportional = false;
            }
        }
        if (!proportional || m <= 0)
            throw DomainError("conic_multipliers: image of a conic class is not a positive "
                              "integer multiple of it");
        out.emplace_back(c, m);
    }
    return out;
}

IdentityForcing identity_forcing_check(const PullbackAction& a) {
    if (a.lat.r != 4)
        throw DomainError("identity_forcing_check: defined on the degree 5 surface (r = 4)");
    auto mults = conic_multipliers(a);
    IdentityForcing out;
    for (const auto& [c, m] : mults)
        if (m > 1) {
            out.witness = {c, m};
            return out;
        }
    // All multipliers are 1 and the conic classes span N^1, so the action is
    // the identity; verify and report.
    IMat id = imat_identity(a.matrix.size());
    if (!(a.matrix == id))
        throw DomainError("identity_forcing_check: all multipliers are 1 but the matrix is not "
                          "the identity (conic classes failed to span?)");
    out.forced_identity = true;
    return out;
}

long long log_degree_obstruction(long long deg_h, long long n_critical) {
    if (deg_h < 1) throw DomainError("log_degree_obstruction: degree must be >= 1");
    if (n_critical < 0) throw DomainError("log_degree_obstruction: negative critical count");
    return (n_critical - 2) * (1 - deg_h);
}

}  // namespace dp::endo

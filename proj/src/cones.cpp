#include "delpezzo/cones.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace dp::cones {

namespace {

// Small dynamic bitset for active-constraint bookkeeping in the double
// description method.
struct Bits {
    std::vector<uint64_t> w;

    explicit Bits(size_t n = 0) : w((n + 63) / 64, 0) {}
    void set(size_t i) { w[i / 64] |= (uint64_t{1} << (i % 64)); }
    bool subset_of(const Bits& o) const {
        for (size_t i = 0; i < w.size(); ++i)
            if (w[i] & ~o.w[i]) return false;
        return true;
    }
    Bits and_with(const Bits& o) const {
        Bits r;
        r.w.resize(w.size());
        for (size_t i = 0; i < w.size(); ++i) r.w[i] = w[i] & o.w[i];
        return r;
    }
};

Int dot(const IVec& a, const IVec& b) {
    Int s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Row space and kernel of an integer matrix, over the rationals.
struct RowSpace {
    std::vector<int> independent_rows;
    std::vector<IVec> kernel;  // primitive integer basis of the null space
};

RowSpace row_space(const std::vector<IVec>& rows, int n) {
    std::vector<std::vector<Rat>> m;
    std::vector<int> chosen;
    std::vector<int> pivot_col;
    for (size_t ri = 0; ri < rows.size(); ++ri) {
        std::vector<Rat> v(n);
        for (int j = 0; j < n; ++j) v[j] = Rat(rows[ri][j]);
        // reduce against accepted rows
        for (size_t k = 0; k < m.size(); ++k) {
            Rat f = v[pivot_col[k]] / m[k][pivot_col[k]];
            if (f != 0)
                for (int j = 0; j < n; ++j) v[j] -= f * m[k][j];
        }
        int pc = -1;
        for (int j = 0; j < n; ++j)
            if (v[j] != 0) {
                pc = j;
                break;
            }
        if (pc >= 0) {
            m.push_back(v);
            pivot_col.push_back(pc);
            chosen.push_back(static_cast<int>(ri));
        }
    }
    // back-substitute to reduced echelon form
    for (size_t k = m.size(); k-- > 0;) {
        Rat p = m[k][pivot_col[k]];
        for (int j = 0; j < n; ++j) m[k][j] /= p;
        for (size_t l = 0; l < k; ++l) {
            Rat f = m[l][pivot_col[k]];
            if (f != 0)
                for (int j = 0; j < n; ++j) m[l][j] -= f * m[k][j];
        }
    }
    std::vector<bool> is_pivot(n, false);
    for (int pc : pivot_col) is_pivot[pc] = true;
    RowSpace out;
    out.independent_rows = chosen;
    for (int j = 0; j < n; ++j) {
        if (is_pivot[j]) continue;
        // kernel vector: x_j = 1, x_pivot = -entry
        std::vector<Rat> x(n, Rat(0));
        x[j] = 1;
        for (size_t k = 0; k < m.size(); ++k) x[pivot_col[k]] = -m[k][j];
        Int den = 1;
        for (auto& q : x) den = int_lcm(den, q.get_den());
        IVec ix(n);
        for (int t = 0; t < n; ++t) ix[t] = Int(x[t] * Rat(den));
        out.kernel.push_back(ivec_primitive(ix));
    }
    return out;
}

// Double description for a pointed cone {x : u_i . x >= 0} with the
// constraint rows spanning rank n.  Follows Motzkin's incremental scheme
// with the combinatorial adjacency test.
std::vector<IVec> dd_pointed(const std::vector<IVec>& constraints, int n,
                             const std::vector<int>& basis_rows) {
    size_t m = constraints.size();

    // Initial simplicial cone from n independent constraints: the columns of
    // the (sign-fixed) adjugate of the basis matrix.
    IMat b(n, IVec(n));
    for (int i = 0; i < n; ++i) b[i] = constraints[basis_rows[i]];
    Int det = imat_det(b);
    IMat adj(n, IVec(n));  // adj[i][j] = cofactor so that B * adj = det * I
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            IMat minor(n - 1, IVec(n - 1));
            for (int r = 0, rr = 0; r < n; ++r) {
                if (r == j) continue;
                for (int c = 0, cc = 0; c < n; ++c) {
                    if (c == i) continue;
                    minor[rr][cc++] = b[r][c];
                }
                ++rr;
            }
            Int cof = imat_det(minor);
            if ((i + j) % 2 == 1) cof = -cof;
            adj[i][j] = cof;
        }
    struct Ray {
        IVec v;
        std::vector<Int> dots;  // against every constraint
        Bits zero;
    };
    auto make_ray = [&](IVec v) {
        Ray r;
        r.v = ivec_primitive(std::move(v));
        r.dots.resize(m);
        r.zero = Bits(m);
        for (size_t i = 0; i < m; ++i) {
            r.dots[i] = dot(constraints[i], r.v);
            if (r.dots[i] == 0) r.zero.set(i);
        }
        return r;
    };

    std::vector<Ray> rays;
    for (int j = 0; j < n; ++j) {
        IVec col(n);
        for (int i = 0; i < n; ++i) col[i] = det > 0 ? adj[i][j] : Int(-adj[i][j]);
        rays.push_back(make_ray(std::move(col)));
    }

    Bits processed(m);
    std::vector<bool> done(m, false);
    for (int i : basis_rows) {
        processed.set(i);
        done[i] = true;
    }

    for (size_t t = 0; t < m; ++t) {
        if (done[t]) continue;
        std::vector<size_t> pos, neg;
        for (size_t i = 0; i < rays.size(); ++i) {
            int s = sgn(rays[i].dots[t]);
            if (s > 0)
                pos.push_back(i);
            else if (s < 0)
                neg.push_back(i);
        }
        processed.set(t);
        done[t] = true;
        if (neg.empty()) continue;

        std::vector<Ray> created;
        for (size_t p : pos)
            for (size_t q : neg) {
                Bits z = rays[p].zero.and_with(rays[q].zero).and_with(processed);
                bool adjacent = true;
                for (size_t o = 0; o < rays.size() && adjacent; ++o) {
                    if (o == p || o == q) continue;
                    if (z.subset_of(rays[o].zero.and_with(processed))) adjacent = false;
                }
                if (!adjacent) continue;
                IVec w(n);
                for (int i = 0; i < n; ++i)
                    w[i] = rays[p].dots[t] * rays[q].v[i] - rays[q].dots[t] * rays[p].v[i];
                created.push_back(make_ray(std::move(w)));
            }
        std::vector<Ray> next;
        for (size_t i = 0; i < rays.size(); ++i)
            if (rays[i].dots[t] >= 0) next.push_back(std::move(rays[i]));
        for (auto& r : created) next.push_back(std::move(r));
        rays = std::move(next);
    }

    std::vector<IVec> out;
    out.reserve(rays.size());
    for (auto& r : rays) out.push_back(std::move(r.v));
    return out;
}

}  // namespace

RationalCone make_cone(int rank, std::vector<IVec> gens) {
    std::set<IVec> seen;
    for (auto& g : gens) {
        if (static_cast<int>(g.size()) != rank)
            throw DomainError("cone generator rank mismatch");
        IVec p = ivec_primitive(g);
        if (ivec_is_zero(p)) continue;
        seen.insert(std::move(p));
    }
    RationalCone c;
    c.rank = rank;
    c.generators.assign(seen.begin(), seen.end());
    return c;
}

Int pair_form(const IVec& a, const IVec& b) {
    if (a.size() != b.size()) throw DomainError("pairing rank mismatch");
    Int s = a[0] * b[0];
    for (size_t i = 1; i < a.size(); ++i) s -= a[i] * b[i];
    return s;
}

RationalCone mori_cone(const lattice::PicLattice& L) {
    if (L.r == 8)
        throw DomainError("mori_cone: r = 8 is unsupported (extremal rays exceed the line classes)");
    std::vector<IVec> gens;
    if (L.r == 0) {
        gens.push_back(L.hyperplane().to_ivec());
    } else if (L.r == 1) {
        // On F_1 the fiber class H - E_1 is extremal alongside the section E_1.
        gens.push_back(L.exceptional(1).to_ivec());
        gens.push_back((L.hyperplane() - L.exceptional(1)).to_ivec());
    } else {
        for (auto& d : lattice::enumerate_lines(L)) gens.push_back(d.to_ivec());
    }
    return make_cone(L.rank(), std::move(gens));
}

RationalCone dual_cone(const RationalCone& c) {
    int n = c.rank;
    // Constraints in the standard dot product: twist each generator by the
    // pairing matrix diag(1, -1, ..., -1).
    std::vector<IVec> constraints;
    for (const auto& g : c.generators) {
        IVec u = g;
        for (int i = 1; i < n; ++i) u[i] = -u[i];
        constraints.push_back(std::move(u));
    }
    RowSpace rs = row_space(constraints, n);
    int k = static_cast<int>(rs.independent_rows.size());

    std::vector<IVec> gens;
    // Lineality part of the dual: the kernel of the constraint matrix.
    for (const auto& v : rs.kernel) {
        gens.push_back(v);
        IVec neg = v;
        for (auto& x : neg) x = -x;
        gens.push_back(std::move(neg));
    }
    if (k > 0) {
        // Pointed part, computed in coordinates of the constraint row space.
        std::vector<IVec> basis;  // columns of the embedding n x k
        for (int i : rs.independent_rows) basis.push_back(constraints[i]);
        std::vector<IVec> reduced;  // k-dim constraints u_i . (B y) = (B^T u_i) . y
        for (const auto& u : constraints) {
            IVec v(k);
            for (int j = 0; j < k; ++j) v[j] = dot(basis[j], u);
            reduced.push_back(std::move(v));
        }
        RowSpace rrs = row_space(reduced, k);
        std::vector<IVec> rays = dd_pointed(reduced, k, rrs.independent_rows);
        for (const auto& y : rays) {
            IVec x(n, 0);
            for (int j = 0; j < k; ++j)
                for (int i = 0; i < n; ++i) x[i] += y[j] * basis[j][i];
            gens.push_back(std::move(x));
        }
    }
    return make_cone(n, std::move(gens));
}

bool contains(const RationalCone& c, const IVec& v) {
    int n = c.rank;
    if (static_cast<int>(v.size()) != n) throw DomainError("contains: vector rank mismatch");
    size_t m = c.generators.size();
    if (ivec_is_zero(v)) return true;
    if (m == 0) return false;

    // Phase-1 simplex: minimize the sum of artificials subject to
    // sum lambda_j g_j + artificials = v, all variables >= 0.
    size_t cols = m + static_cast<size_t>(n);
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(cols + 1, Rat(0)));
    for (int i = 0; i < n; ++i) {
        bool flip = v[i] < 0;
        for (size_t j = 0; j < m; ++j)
            a[i][j] = Rat(flip ? Int(-c.generators[j][i]) : c.generators[j][i]);
        a[i][m + i] = 1;
        a[i][cols] = Rat(flip ? Int(-v[i]) : v[i]);
    }
    std::vector<size_t> basis(n);
    for (int i = 0; i < n; ++i) basis[i] = m + i;
    // Reduced objective row for minimizing the artificial sum: start from
    // z_j = sum_i a_ij on structural columns, zero on basic artificials.
    std::vector<Rat> obj(cols + 1, Rat(0));
    for (size_t j = 0; j <= cols; ++j) {
        Rat s(0);
        for (int i = 0; i < n; ++i) s += a[i][j];
        bool artificial = j >= m && j < cols;
        obj[j] = s - (artificial ? Rat(1) : Rat(0));
    }

    while (true) {
        // Bland's rule: first column with positive reduced value enters.
        size_t enter = cols;
        for (size_t j = 0; j < cols; ++j)
            if (obj[j] > 0) {
                enter = j;
                break;
            }
        if (enter == cols) break;
        // Ratio test, ties by smallest basis variable index.
        int leave = -1;
        Rat best(0);
        for (int i = 0; i < n; ++i) {
            if (a[i][enter] <= 0) continue;
            Rat ratio = a[i][cols] / a[i][enter];
            if (leave < 0 || ratio < best ||
                (ratio == best && basis[i] < basis[static_cast<size_t>(leave)])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave < 0) break;  // unbounded cannot happen in phase 1
        Rat piv = a[leave][enter];
        for (size_t j = 0; j <= cols; ++j) a[leave][j] /= piv;
        for (int i = 0; i < n; ++i) {
            if (i == leave || a[i][enter] == 0) continue;
            Rat f = a[i][enter];
            for (size_t j = 0; j <= cols; ++j) a[i][j] -= f * a[leave][j];
        }
        Rat f = obj[enter];
        if (f != 0)
            for (size_t j = 0; j <= cols; ++j) obj[j] -= f * a[leave][j];
        basis[leave] = enter;
    }
    // Optimal artificial sum is -obj[cols] with this sign convention.
    return obj[cols] == 0;
}

RationalCone face_of_conic(const lattice::PicLattice& L, const lattice::DivisorClass& C) {
    auto conics = lattice::enumerate_conics(L);
    if (std::find(conics.begin(), conics.end(), C) == conics.end())
        throw DomainError("face_of_conic: class is not a conic class");
    RationalCone ne = mori_cone(L);
    IVec cv = C.to_ivec();
    for (const auto& g : ne.generators)
        if (pair_form(cv, g) < 0) throw DomainError("face_of_conic: class is not nef");
    std::vector<IVec> gens;
    for (const auto& d : lattice::enumerate_lines(L))
        if (lattice::intersect(L, C, d) == 0) gens.push_back(d.to_ivec());
    return make_cone(L.rank(), std::move(gens));
}

unsigned long long permutation_order(const std::vector<int>& perm) {
    size_t n = perm.size();
    std::vector<bool> seen(n, false);
    unsigned long long order = 1;
    for (size_t i = 0; i < n; ++i) {
        if (seen[i]) continue;
        unsigned long long len = 0;
        size_t j = i;
        while (!seen[j]) {
            seen[j] = true;
            j = static_cast<size_t>(perm[j]);
            ++len;
        }
        order = std::lcm(order, len);
    }
    return order;
}

RayPermutationResult ray_permutation(const IMat& m, const RationalCone& c) {
    RayPermutationResult res;
    if (m.size() != static_cast<size_t>(c.rank))
        throw DomainError("ray_permutation: matrix rank mismatch");
    std::vector<int> perm(c.generators.size(), -1);
    std::vector<bool> used(c.generators.size(), false);
    for (size_t i = 0; i < c.generators.size(); ++i) {
        IVec image = imat_apply(m, c.generators[i]);
        IVec p = ivec_primitive(image);
        auto it = std::lower_bound(c.generators.begin(), c.generators.end(), p);
        bool found = it != c.generators.end() && *it == p && !ivec_is_zero(p);
        size_t target = found ? static_cast<size_t>(it - c.generators.begin()) : 0;
        if (!found || used[target]) {
            res.violating_index = static_cast<int>(i);
            res.violating_image = std::move(image);
            return res;
        }
        used[target] = true;
        perm[i] = static_cast<int>(target);
    }
    RayPermutation rp;
    rp.order = permutation_order(perm);
    rp.perm = std::move(perm);
    res.permutation = std::move(rp);
    return res;
}

std::pair<unsigned long long, IMat> iterate_to_fix_rays(const IMat& m, const RationalCone& c) {
    auto rp = ray_permutation(m, c);
    if (!rp.ok())
        throw DomainError("iterate_to_fix_rays: matrix does not permute the cone's rays (generator " +
                          std::to_string(rp.violating_index) + ")");
    unsigned long long k = rp.permutation->order;
    IMat mk = imat_pow(m, k);
    for (const auto& g : c.generators) {
        IVec image = ivec_primitive(imat_apply(mk, g));
        if (!(image == g))
            throw DomainError("iterate_to_fix_rays: internal error, M^k does not fix a ray");
    }
    return {k, mk};
}

IMat form_adjoint(const IMat& m) {
    size_t n = m.size();
    IMat a(n, IVec(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            Int v = m[j][i];
            bool qi = i > 0, qj = j > 0;
            a[i][j] = (qi == qj) ? v : Int(-v);
        }
    return a;
}

}  // namespace dp::cones

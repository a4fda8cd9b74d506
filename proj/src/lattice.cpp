#include "delpezzo/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <functional>
#include <set>
#include <sstream>

namespace dp::lattice {

DivisorClass DivisorClass::operator+(const DivisorClass& o) const {
    if (c.size() != o.c.size()) throw DomainError("class rank mismatch in addition");
    DivisorClass s;
    s.c.resize(c.size());
    for (size_t i = 0; i < c.size(); ++i) s.c[i] = c[i] + o.c[i];
    return s;
}

DivisorClass DivisorClass::operator-(const DivisorClass& o) const {
    if (c.size() != o.c.size()) throw DomainError("class rank mismatch in subtraction");
    DivisorClass s;
    s.c.resize(c.size());
    for (size_t i = 0; i < c.size(); ++i) s.c[i] = c[i] - o.c[i];
    return s;
}

DivisorClass DivisorClass::operator*(long long s) const {
    DivisorClass m;
    m.c.resize(c.size());
    for (size_t i = 0; i < c.size(); ++i) m.c[i] = s * c[i];
    return m;
}

bool DivisorClass::is_zero() const {
    for (long long x : c)
        if (x != 0) return false;
    return true;
}

IVec DivisorClass::to_ivec() const {
    IVec v(c.size());
    for (size_t i = 0; i < c.size(); ++i) v[i] = Int(static_cast<long>(c[i]));
    return v;
}

std::string to_string(const DivisorClass& d) {
    // Pretty form aH - b1 E1 - ... with the raw vector kept in JSON output.
    std::ostringstream os;
    bool first = true;
    auto term = [&](long long coeff, const std::string& name) {
        if (coeff == 0) return;
        if (first) {
            if (coeff == -1)
                os << "-";
            else if (coeff != 1)
                os << coeff;
            os << name;
            first = false;
        } else {
            os << (coeff > 0 ? " + " : " - ");
            long long a = std::llabs(coeff);
            if (a != 1) os << a;
            os << name;
        }
    };
    term(d.c.empty() ? 0 : d.c[0], "H");
    for (size_t i = 1; i < d.c.size(); ++i) term(d.c[i], "E" + std::to_string(i));
    if (first) os << "0";
    return os.str();
}

PicLattice::PicLattice(int blowups) : r(blowups) {
    if (r < 0 || r > 8) throw DomainError("lattice supports 0 <= r <= 8 blow-ups");
}

DivisorClass PicLattice::hyperplane() const {
    DivisorClass d;
    d.c.assign(rank(), 0);
    d.c[0] = 1;
    return d;
}

DivisorClass PicLattice::exceptional(int i) const {
    if (i < 1 || i > r) throw DomainError("exceptional index out of range");
    DivisorClass d;
    d.c.assign(rank(), 0);
    d.c[i] = 1;
    return d;
}

DivisorClass PicLattice::canonical() const {
    DivisorClass d;
    d.c.assign(rank(), 1);
    d.c[0] = -3;
    return d;
}

DivisorClass PicLattice::anticanonical() const { return canonical() * -1; }

long long intersect(const PicLattice& L, const DivisorClass& a, const DivisorClass& b) {
    if (static_cast<int>(a.rank()) != L.rank() || static_cast<int>(b.rank()) != L.rank())
        throw DomainError("class rank does not match the lattice");
    long long s = a.c[0] * b.c[0];
    for (int i = 1; i < L.rank(); ++i) s -= a.c[i] * b.c[i];
    return s;
}

namespace {

// Enumerates integer vectors (b_1..b_r) with sum b = s and sum b^2 = q,
// |b_i| <= bound, by depth-first search with feasibility pruning.  The
// Cauchy-Schwarz inequality s^2 <= m*q on the remaining m slots is the
// workhorse prune and also the exhaustiveness argument for the caller's
// outer bound on a (see enumerate_lines).
void search_b(int r, long long bound, long long s, long long q, std::vector<long long>& cur,
              const std::function<void(const std::vector<long long>&)>& emit) {
    int pos = static_cast<int>(cur.size());
    if (pos == r) {
        if (s == 0 && q == 0) emit(cur);
        return;
    }
    long long m = r - pos;
    if (q < 0) return;
    if (std::llabs(s) > m * bound) return;
    if (q > m * bound * bound) return;
    if (s * s > m * q) return;  // Cauchy-Schwarz
    for (long long b = -bound; b <= bound; ++b) {
        cur.push_back(b);
        search_b(r, bound, s - b, q - b * b, cur, emit);
        cur.pop_back();
    }
}

std::vector<DivisorClass> enumerate_by_invariants(int r, long long kdeg, long long self,
                                                  long long a_min, long long a_max,
                                                  bool primitive_only) {
    // Solves D = aH - sum b_i E_i with D*(-K) = kdeg and D*D = self:
    //   sum b_i = 3a - kdeg,   sum b_i^2 = a^2 - self.
    std::set<std::vector<long long>> found;
    for (long long a = a_min; a <= a_max; ++a) {
        std::vector<long long> cur;
        search_b(r, a + 1, 3 * a - kdeg, a * a - self, cur,
                 [&](const std::vector<long long>& b) {
                     std::vector<long long> v(r + 1);
                     v[0] = a;
                     for (int i = 0; i < r; ++i) v[i + 1] = -b[i];
                     if (primitive_only) {
                         long long g = 0;
                         for (long long x : v) g = std::gcd(g, std::llabs(x));
                         if (g != 1) return;
                     }
                     found.insert(v);
                 });
    }
    std::vector<DivisorClass> out;
    out.reserve(found.size());
    for (auto& v : found) out.push_back(DivisorClass(v));
    return out;
}

}  // namespace

std::vector<DivisorClass> enumerate_lines(const PicLattice& L) {
    if (L.r == 0) return {};  // the plane has no (-1)-curves
    // Bound a <= 6: from sum b = 3a - 1 and sum b^2 = a^2 + 1, Cauchy-Schwarz
    // gives (3a-1)^2 <= r(a^2+1) <= 8(a^2+1), i.e. a^2 - 6a - 7 <= 0, so
    // a <= 7; a = 7 attains equality, which would force all b_i = 20/8, not
    // an integer.  Hence a <= 6, and |b_i| <= sqrt(a^2+1) <= a + 1.
    return enumerate_by_invariants(L.r, 1, -1, 0, 6, false);
}

std::vector<DivisorClass> enumerate_conics(const PicLattice& L) {
    if (L.r == 0) return {};
    // Bound a <= 11: (3a-2)^2 <= r*a^2 <= 8a^2 gives a^2 - 12a + 4 <= 0,
    // so a <= 11.  (a = 0 would need sum b^2 = 0 with sum b = -2.)
    return enumerate_by_invariants(L.r, 2, 0, 1, 11, true);
}

int LineGraph::degree(int v) const {
    int d = 0;
    for (auto& e : edges)
        if (e.first == v || e.second == v) ++d;
    return d;
}

bool LineGraph::is_regular(int k) const {
    for (size_t v = 0; v < vertices.size(); ++v)
        if (degree(static_cast<int>(v)) != k) return false;
    return true;
}

LineGraph line_graph(const PicLattice& L) {
    LineGraph g;
    g.vertices = enumerate_lines(L);
    int n = static_cast<int>(g.vertices.size());
    g.adjacency.assign(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (intersect(L, g.vertices[i], g.vertices[j]) == 1) {
                g.edges.emplace_back(i, j);
                g.adjacency[i][j] = g.adjacency[j][i] = true;
            }
    return g;
}

std::optional<int> graph_girth(const LineGraph& g) {
    int n = static_cast<int>(g.vertices.size());
    int best = -1;
    for (int s = 0; s < n; ++s) {
        std::vector<int> dist(n, -1), parent(n, -1);
        std::deque<int> queue{s};
        dist[s] = 0;
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            for (int w = 0; w < n; ++w) {
                if (!g.adjacency[u][w]) continue;
                if (dist[w] < 0) {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if (w != parent[u]) {
                    int cycle = dist[u] + dist[w] + 1;
                    if (best < 0 || cycle < best) best = cycle;
                }
            }
        }
    }
    if (best < 0) return std::nullopt;
    return best;
}

namespace {

void automorphism_backtrack(const LineGraph& g, std::vector<int>& image, std::vector<bool>& used,
                            std::vector<std::vector<int>>& out) {
    int n = static_cast<int>(g.vertices.size());
    int k = static_cast<int>(image.size());
    if (k == n) {
        out.push_back(image);
        return;
    }
    for (int c = 0; c < n; ++c) {
        if (used[c]) continue;
        bool ok = true;
        for (int i = 0; i < k && ok; ++i)
            if (g.adjacency[k][i] != g.adjacency[c][image[i]]) ok = false;
        if (!ok) continue;
        used[c] = true;
        image.push_back(c);
        automorphism_backtrack(g, image, used, out);
        image.pop_back();
        used[c] = false;
    }
}

}  // namespace

std::vector<std::vector<int>> graph_automorphisms(const LineGraph& g) {
    std::vector<std::vector<int>> out;
    std::vector<int> image;
    std::vector<bool> used(g.vertices.size(), false);
    automorphism_backtrack(g, image, used, out);
    return out;
}

bool graph_vertex_transitive(const LineGraph& g) {
    auto autos = graph_automorphisms(g);
    std::set<int> orbit;
    for (auto& a : autos)
        if (!a.empty()) orbit.insert(a[0]);
    return orbit.size() == g.vertices.size();
}

std::vector<std::pair<DivisorClass, DivisorClass>> singular_fibers(const PicLattice& L,
                                                                   const DivisorClass& C) {
    auto conics = enumerate_conics(L);
    if (std::find(conics.begin(), conics.end(), C) == conics.end())
        throw DomainError("singular_fibers: class is not a conic class of this lattice");
    auto lines = enumerate_lines(L);
    std::vector<std::pair<DivisorClass, DivisorClass>> fibers;
    for (size_t i = 0; i < lines.size(); ++i)
        for (size_t j = i + 1; j < lines.size(); ++j)
            if (lines[i] + lines[j] == C) fibers.emplace_back(lines[i], lines[j]);
    return fibers;
}

long long euler_singular_fiber_count(long long e_total, long long e_base, long long e_fiber,
                                     long long e_sing) {
    // e_total = e_base*e_fiber + s*(e_sing - e_fiber) for s singular fibers,
    // each replacing a copy of the general fiber in the product count.
    if (e_sing == e_fiber) throw DomainError("euler count: e_sing must differ from e_fiber");
    long long num = e_total - e_base * e_fiber;
    long long den = e_sing - e_fiber;
    if (num % den != 0)
        throw DomainError("euler count: inconsistent Euler characteristics (non-integral count)");
    return num / den;
}

bool sum_of_lines_identity(const PicLattice& L) {
    auto lines = enumerate_lines(L);
    DivisorClass sum;
    sum.c.assign(L.rank(), 0);
    for (auto& d : lines) sum = sum + d;
    return sum == L.canonical() * -2;
}

DivisorClass BlowDown::apply(const DivisorClass& d) const {
    if (static_cast<int>(d.rank()) != image.rank() + 1)
        throw DomainError("blow-down projection: class rank mismatch");
    DivisorClass out;
    out.c.reserve(image.rank());
    for (size_t i = 0; i < d.c.size(); ++i)
        if (static_cast<int>(i) != dropped_index) out.c.push_back(d.c[i]);
    return out;
}

BlowDown blow_down(const PicLattice& L, const DivisorClass& D) {
    if (L.r == 0) throw DomainError("cannot blow down the plane");
    if (static_cast<int>(D.rank()) != L.rank()) throw DomainError("blow_down: class rank mismatch");
    int idx = -1;
    for (int i = 1; i <= L.r; ++i)
        if (D == L.exceptional(i)) idx = i;
    if (idx < 0)
        throw DomainError(
            "blow_down: class is not a basis exceptional class; move it to basis position with a "
            "lattice automorphism first");
    return BlowDown{PicLattice(L.r - 1), idx};
}

}  // namespace dp::lattice

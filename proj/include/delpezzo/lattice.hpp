// Neron-Severi lattice of a blow-up of the projective plane at r general
// points: intersection form, canonical class, (-1)/conic class enumeration,
// the incidence graph of lines, and blow-down descent.
#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "delpezzo/numeric.hpp"

namespace dp::lattice {

// Divisor class in the (H, E_1, ..., E_r) basis; c[0] is the H coefficient.
struct DivisorClass {
    std::vector<long long> c;

    DivisorClass() = default;
    explicit DivisorClass(std::vector<long long> coeffs) : c(std::move(coeffs)) {}

    size_t rank() const { return c.size(); }
    bool operator==(const DivisorClass& o) const { return c == o.c; }
    bool operator<(const DivisorClass& o) const { return c < o.c; }

    DivisorClass operator+(const DivisorClass& o) const;
    DivisorClass operator-(const DivisorClass& o) const;
    DivisorClass operator*(long long s) const;
    bool is_zero() const;

    IVec to_ivec() const;
};

std::string to_string(const DivisorClass& d);

// Rank r+1 lattice with form diag(1, -1, ..., -1) and K = -3H + sum E_i.
struct PicLattice {
    int r = 0;

    explicit PicLattice(int blowups);

    int rank() const { return r + 1; }
    int degree() const { return 9 - r; }  // (-K)^2

    DivisorClass hyperplane() const;
    DivisorClass exceptional(int i) const;  // E_i, 1-based
    DivisorClass canonical() const;
    DivisorClass anticanonical() const;

    bool operator==(const PicLattice& o) const { return r == o.r; }
};

// a^T diag(1,-1,...,-1) b; symmetric; throws on rank mismatch.
long long intersect(const PicLattice& L, const DivisorClass& a, const DivisorClass& b);

// All classes D with D*D = -1 and D*(-K) = 1, sorted lexicographically.
// r = 0 yields the empty set; r > 8 is unsupported.
std::vector<DivisorClass> enumerate_lines(const PicLattice& L);

// All primitive classes C with C*C = 0, C*(-K) = 2 and positive H coefficient.
std::vector<DivisorClass> enumerate_conics(const PicLattice& L);

// Incidence graph of the line classes: an edge joins D, D' with D*D' = 1.
struct LineGraph {
    std::vector<DivisorClass> vertices;            // sorted
    std::vector<std::pair<int, int>> edges;        // i < j, sorted
    std::vector<std::vector<bool>> adjacency;

    int degree(int v) const;
    bool is_regular(int k) const;
};

LineGraph line_graph(const PicLattice& L);

// Shortest cycle length, or nullopt for a forest.
std::optional<int> graph_girth(const LineGraph& g);

// All adjacency-preserving vertex bijections, found by backtracking.
std::vector<std::vector<int>> graph_automorphisms(const LineGraph& g);

bool graph_vertex_transitive(const LineGraph& g);

// Unordered pairs {D, D'} of line classes with D + D' = C.
// C must be a conic class of L.
std::vector<std::pair<DivisorClass, DivisorClass>> singular_fibers(const PicLattice& L,
                                                                   const DivisorClass& C);

// Solves e_total = e_base*e_fiber + s*(e_sing - e_fiber) for the number of
// singular fibers s; throws if s is not a non-negative... integer solution.
long long euler_singular_fiber_count(long long e_total, long long e_base, long long e_fiber,
                                     long long e_sing);

// Whether the sum of all line classes equals -2K coefficient-wise.
bool sum_of_lines_identity(const PicLattice& L);

// Contraction of a basis class E_i: the image lattice together with the
// coordinate projection on classes.
struct BlowDown {
    PicLattice image;
    int dropped_index;  // 1-based exceptional index that was contracted

    DivisorClass apply(const DivisorClass& d) const;
};

BlowDown blow_down(const PicLattice& L, const DivisorClass& D);

}  // namespace dp::lattice

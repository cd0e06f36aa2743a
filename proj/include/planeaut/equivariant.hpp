#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "planeaut/group.hpp"

namespace pa {

// S-hat ⊇ T ⊇ D ⊇ Z inside Aff ∩ E.
enum class SubgroupTag { S_hat, T, D, Z };
std::string to_string(SubgroupTag t);

// f = s o e_{q_m} o tau o ... o tau o e_{q_1}, e_q = (z1 + z2 q(z2), z2),
// s = (alpha z1 + alpha1, beta z2 + beta1), tau the transposition.
struct FiberNormalForm {
    Scalar alpha, beta, alpha1, beta1;
    std::vector<SPoly> q;
    std::vector<int> d;

    const Field& field() const { return alpha.field(); }
    bool operator==(const FiberNormalForm& o) const;
    bool s_in(SubgroupTag t) const;
};

PlaneAut build_fiber(const FiberNormalForm& fnf);
FiberNormalForm extract_fiber(const PlaneAut& f);
// g^-1 o f o g for g = (lambda0 z1, lambda1 z2), by the closed formula.
FiberNormalForm conjugate_by_diagonal(const Scalar& lambda0, const Scalar& lambda1, const FiberNormalForm& fnf);

// a_{0,l} = (z1, l z1 + z2), a_{1,l} = (l z1 + z2, z1).
Affine section_map(int chart, const Scalar& l);

// Diagonal linear group: finite, generated by (zeta_k^a z1, zeta_k^b z2),
// or the torus lambda -> (lambda^a z1, lambda^b z2) with gens = {(a, b)}.
struct DiagonalGroup {
    bool torus = false;
    int k = 1;
    std::vector<std::pair<int, int>> gens;

    static DiagonalGroup cyclic(int k, int a, int b) { return {false, k, {{a, b}}}; }
    static DiagonalGroup torus_weights(int a, int b) { return {true, 0, {{a, b}}}; }
    // Q(zeta_k) for finite groups (Q when k <= 2), Q(x) with lambda = x for a torus.
    Field oracle_field() const;
    std::vector<Affine> matrices(const Field& f) const;
    bool is_cyclic() const;
    GroupAction action(const Field& f) const;
};

// Exponent test for f o g = g o f on every generator.
bool diagonal_equivariant(const PlaneEndo& f, const DiagonalGroup& G);

// G = {(lambda^d1 z1, lambda z2) : lambda in H}; k = 0 means H is the full
// multiplicative group, k = 1 the trivial group.
struct HdGroup {
    int d1 = 2;
    int k = 1;
    bool swapped = false;  // the shape holds after conjugating by tau
};

// Tries e = d1 (mod k) and then the swapped roles.
std::optional<HdGroup> normalize_group(int d1, const DiagonalGroup& G);

enum class CentralizerCase { fiber, bundle, two_fibers, single_fiber, affine_gl2g, one_parameter };
std::string to_string(CentralizerCase c);

struct CentralizerDescription {
    CentralizerCase kind = CentralizerCase::fiber;
    std::vector<int> d;
    bool empty = false;
    std::string reason;
    HdGroup group;
    SubgroupTag s_tag = SubgroupTag::S_hat;
    // q_j = z2^(l_j - 1) qhat(z2^k); k = 0 forces the monomial z2^(l_j - 1).
    int k = 1;
    std::vector<int> l;
    int v = 0;
    DiagonalGroup source;  // the group, for the affine-GL2G case
    // Coordinates of the fiber: units and free affine coordinates.
    int units = 0, affine_coords = 0;

    bool contains(const FiberNormalForm& f) const;
    // Membership in A_d^G for the classify_Ad_centralizer cases.
    bool contains(const PlaneAut& f) const;
};

CentralizerDescription classify_fiber_centralizer(const std::vector<int>& d, const HdGroup& G);
CentralizerDescription classify_fiber_centralizer(const std::vector<int>& d, const DiagonalGroup& G);
CentralizerDescription classify_Ad_centralizer(const std::vector<int>& d, const DiagonalGroup& G);
CentralizerDescription centralizer_structure_noncyclic(const DiagonalGroup& G);

// Solution space of f o g = g o f for f of degree <= bound.
struct CommutantSpace {
    Field field;
    int bound = 0;
    std::vector<Mono> monos;        // column order, per component
    std::vector<PlaneEndo> basis;
    std::vector<std::vector<Scalar>> constraints;  // reduced rows

    bool contains(const PlaneEndo& f) const;
    // The side condition for membership in Aut^G.
    static bool invertible(const PlaneEndo& f);
};

constexpr int kMaxBruteBound = 10;
CommutantSpace solve_commutant_bruteforce(int bound, const std::vector<Affine>& gens);
CommutantSpace solve_commutant_bruteforce(int bound, const DiagonalGroup& G);

}  // namespace pa

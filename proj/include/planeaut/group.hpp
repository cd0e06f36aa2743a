#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "planeaut/plane.hpp"

namespace pa {

struct GroupAction {
    enum class Kind { cyclic, finite_abelian, torus };
    Kind kind = Kind::cyclic;
    Field field;                     // the field the generators live over
    std::vector<int> orders;         // one per generator (finite kinds)
    std::vector<PlaneAut> generators;
    // torus: lambda -> conj o (lambda^w1 z1, lambda^w2 z2) o conj^-1
    std::pair<int, int> weights{0, 0};
    std::optional<PlaneAut> torus_conj;

    static GroupAction cyclic(const PlaneAut& g, int n);
    static GroupAction finite_abelian(const std::vector<PlaneAut>& gens, const std::vector<int>& orders);
    static GroupAction torus(const Field& f, int w1, int w2, std::optional<PlaneAut> conj = std::nullopt);
    bool finite() const { return kind != Kind::torus; }
};

// One 2x2 matrix per generator, or torus weights.
struct LinearRep {
    std::vector<Affine> images;
    std::optional<std::pair<int, int>> torus_weights;
};

PlaneEndo power(const PlaneEndo& g, int n);
PlaneAut to_aut(const Affine& a);
PlaneAut to_aut(const Elementary& e);
// (alpha z1 + p(z2), beta z2 + beta1) if f has that shape.
std::optional<Elementary> elementary_from_endo(const PlaneEndo& f);

// reduced = conjugator^-1 o g o conjugator, reduced in Aff or E.
struct CyclicReduction {
    PlaneAut conjugator;
    PlaneAut reduced;
    int steps = 0;
};
CyclicReduction cyclic_reduce(const PlaneAut& g);

// Translation to the barycenter of the orbit of the origin.
Affine barycenter_translation(const std::vector<Affine>& gens);

struct Linearization {
    PlaneAut psi;
    LinearRep rho;
};
Linearization linearize_over_field(const GroupAction& G);
bool verify_linearization(const PlaneAut& psi, const GroupAction& G, const LinearRep& rho);

// Weight test: f commutes with every (lambda^w1 z1, lambda^w2 z2).
bool torus_equivariant(const PlaneEndo& f, int w1, int w2);
bool is_equivariant(const PlaneEndo& f, const GroupAction& G);

// Common eigenbasis P and eigenvalues for commuting finite-order matrices:
// P^-1 M_i P = diag(d_i).
struct Diagonalization {
    Affine P;
    std::vector<Affine> diag;
};
Diagonalization diagonalize(const std::vector<Affine>& mats, const std::vector<int>& orders);

}  // namespace pa

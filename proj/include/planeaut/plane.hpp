#pragma once

#include <optional>
#include <vector>

#include "planeaut/poly.hpp"

namespace pa {

// (z1, z2) -> (m11 z1 + m12 z2 + b1, m21 z1 + m22 z2 + b2)
struct Affine {
    Scalar m11, m12, m21, m22, b1, b2;

    static Affine identity(const Field& f);
    static Affine linear(const Scalar& a, const Scalar& b, const Scalar& c, const Scalar& d);
    static Affine diagonal(const Scalar& a, const Scalar& d);
    static Affine translation(const Scalar& b1, const Scalar& b2);
    static std::optional<Affine> from_endo(const PlaneEndo& f);

    const Field& field() const { return m11.field(); }
    Scalar det() const { return m11 * m22 - m12 * m21; }
    bool in_E() const { return m21.is_zero(); }
    bool is_linear() const { return b1.is_zero() && b2.is_zero(); }
    Affine inverse() const;
    PlaneEndo to_endo() const;
    PlaneEndo left_apply(const PlaneEndo& h) const;  // this o h
    bool operator==(const Affine& o) const;
};

Affine operator*(const Affine& a, const Affine& b);  // a o b

// (z1, z2) -> (alpha z1 + p(z2), beta z2 + beta1)
struct Elementary {
    Scalar alpha, beta, beta1;
    SPoly p;

    static Elementary shear(const Field& f, const SPoly& p);
    const Field& field() const { return alpha.field(); }
    int degree() const { return std::max(1, up::deg(p)); }
    Elementary inverse() const;
    PlaneEndo to_endo() const;
    PlaneEndo left_apply(const PlaneEndo& h) const;
    bool operator==(const Elementary& o) const;
};

Elementary operator*(const Elementary& a, const Elementary& b);

// f = a[m] o e[m-1] o a[m-1] o ... o e[0] o a[0]
struct TameDecomposition {
    std::vector<Affine> a;
    std::vector<Elementary> e;

    PlaneEndo recompose() const;
    // Applies the word to h on the left, factor by factor.
    PlaneEndo apply_to(const PlaneEndo& h) const;
    TameDecomposition inverse() const;
    std::vector<int> polydegree() const;
    bool is_identity() const;
    static TameDecomposition of(const Affine& x);
};

// Concatenated and reduced, but not in canonical form.
TameDecomposition operator*(const TameDecomposition& f, const TameDecomposition& g);

struct PlaneAut {
    PlaneEndo forward, inverse;
    const Field& field() const { return forward.field(); }
    PlaneAut inv() const { return {inverse, forward}; }
};

TameDecomposition decompose(const PlaneEndo& f);
inline TameDecomposition decompose(const PlaneAut& f) { return decompose(f.forward); }
PlaneAut invert(const PlaneEndo& f);
PlaneAut compose(const PlaneAut& f, const PlaneAut& g);
std::vector<int> polydegree(const PlaneEndo& f);
inline std::vector<int> polydegree(const PlaneAut& f) { return polydegree(f.forward); }

// Exact check of g o f = id through the tame word of g.
bool is_left_inverse(const PlaneEndo& g, const PlaneEndo& f);

// Point of P^1 in the chart {z2 = lambda z1}; inf means {z1 = 0}.
struct ProjPoint {
    bool inf = false;
    Scalar value;
    bool operator==(const ProjPoint& o) const { return inf == o.inf && (inf || value == o.value); }
};

ProjPoint anchor_line(const PlaneEndo& f);
inline ProjPoint anchor_line(const PlaneAut& f) { return anchor_line(f.forward); }

}  // namespace pa

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "planeaut/group.hpp"

namespace pa {

// Coefficientwise min of valuations. ZeroEndomorphism if f = 0.
Val endo_valuation(const PlaneEndo& f, const DVRContext& ctx);
Val poly_valuation(const BiPoly& p, const DVRContext& ctx);

struct EndoValuationReport {
    Val v = 0;
    int w1 = 0, w2 = 0;
    bool integral = false;  // f in Aut over the local ring
    int w() const { return w1 + w2; }
};

// w_j = max(0, -v((f^-1)_j)); needs v(f) >= 0.
EndoValuationReport w_invariant(const PlaneAut& f, const DVRContext& ctx);
bool is_integral_aut(const PlaneAut& f, const DVRContext& ctx);

// Moving between kappa(x) and its constants kappa.
PlaneEndo residue_endo(const PlaneEndo& f, const DVRContext& ctx);
PlaneEndo lift_endo(const PlaneEndo& f, const Field& to);
BiPoly lift_poly(const BiPoly& p, const Field& to);
Affine lift_affine(const Affine& a, const Field& to);
Affine constant_affine(const Affine& a);  // back down to kappa; throws if x occurs

// rho as matrices over kappa. A torus with weights (a, b) is represented by
// diag(2^a, 2^b): for polynomial maps, commuting with it or being an
// eigenvector of it is the same as for the whole torus.
std::vector<Affine> rho_matrices(const LinearRep& rho, const Field& kappa);

struct StepResult {
    PlaneAut alpha, psi;
};

StepResult normalize_valuation(const PlaneAut& psi, const GroupAction& G, const LinearRep& rho, const DVRContext& ctx);

// Generator of the kernel of kappa[u,v] -> kappa[z1,z2], u, v -> residues of psi.
BiPoly image_curve_mod_t(const PlaneEndo& psi, const DVRContext& ctx);
// Same for a map already over kappa.
BiPoly implicit_curve(const PlaneEndo& residues);

struct CoordinateMate {
    BiPoly h;
    PlaneAut tau;  // (f, h) over kappa
};
// rho given by matrices over kappa.
CoordinateMate coordinate_mate(const BiPoly& f, const std::vector<Affine>& rho);

struct KRStep {
    int w_before = 0, w_after = 0;
    BiPoly curve;
    PlaneAut tau;
    Val r1 = 0, r2 = 0;
    PlaneAut alpha;
};

struct KRStepResult {
    KRStep step;
    PlaneAut psi;
};
KRStepResult kr_step(const PlaneAut& psi, const GroupAction& G, const LinearRep& rho, const DVRContext& ctx);

struct KRTrace {
    std::vector<KRStep> steps;
    int initial_w = 0;
};

struct PoleRemoval {
    PlaneAut alpha;  // psi o alpha = psi_integral
    PlaneAut psi;
    KRTrace trace;
};
PoleRemoval remove_pole(const PlaneAut& psi, const GroupAction& G, const LinearRep& rho, const DVRContext& ctx);

// r = s d v0 for the tuple alpha_1, ..., alpha_m (applied in that order).
struct PerturbationBound {
    long r = 0;
    long s = 0, d = 0, v0 = 0;
    std::vector<Mono> support;  // the index set I
};
PerturbationBound perturbation_bound(const std::vector<PlaneEndo>& alphas, const DVRContext& ctx);
// alpha_m o ... o alpha_1
PlaneEndo compose_tuple(const std::vector<PlaneEndo>& alphas);

}  // namespace pa

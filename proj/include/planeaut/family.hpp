#pragma once

#include <optional>
#include <string>
#include <vector>

#include "planeaut/dvr.hpp"

namespace pa {

// A family is a GroupAction over kappa(x) whose generators (and torus
// conjugator) have polynomial coefficients in x, together with their inverses.
void validate_family(const GroupAction& nu);

// psi over kappa(x), rho with constant entries.
Linearization linearize_family_generic(const GroupAction& nu);

struct PoleSet {
    std::vector<Num> centers;           // ascending
    std::vector<std::string> warnings;  // one per non-rational factor
    std::vector<NPoly> nonrational;     // monic, squarefree
    bool empty() const { return centers.empty() && nonrational.empty(); }
};

// kappa-rational roots of the denominators of psi and psi^-1.
PoleSet pole_set(const PlaneAut& psi);
// Rational roots of a polynomial with rational coefficients, ascending.
std::vector<mpq_class> rational_roots(const up::Poly<mpq_class>& p);

struct PoleDigest {
    Num center;
    int initial_w = 0;
    std::vector<int> w;  // w after each step
};

struct LinearizationReport {
    PlaneAut psi;
    LinearRep rho;
    std::string method = "none";  // none, sequential, glued
    std::vector<Num> removed;
    std::vector<Num> residual;
    std::vector<std::string> warnings;
    std::vector<PoleDigest> digests;
    PlaneAut alpha;                         // psi_in o alpha = psi
    std::optional<PlaneEndo> centralizer;   // glued element A with psi = A o psi_in
    bool verified = false;
};

LinearizationReport remove_all_poles(const PlaneAut& psi, const LinearRep& rho, const GroupAction& nu);
// Re-run on a report; unchanged when it already verifies.
LinearizationReport remove_all_poles(const LinearizationReport& report, const GroupAction& nu);

bool verify_family(const LinearizationReport& report, const GroupAction& nu);
// The linearization identity after substituting x = a.
bool verify_specialization(const LinearizationReport& report, const GroupAction& nu, const Num& a);

PlaneAut specialize(const PlaneAut& f, const Num& a);

// True when the finite group generated by the diagonal rho is cyclic.
bool rho_group_cyclic(const LinearRep& rho);

}  // namespace pa

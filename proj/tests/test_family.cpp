#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "corpus.hpp"

using namespace pa;
using namespace pa::testing;

namespace {

const Field Q = Field::rationals();
const Field Fx = Q.over();
const Field F3x = Field::cyclotomic(3).over();

BiPoly Z1(const Field& f = Fx) { return BiPoly::z1(f); }
BiPoly Z2(const Field& f = Fx) { return BiPoly::z2(f); }
Scalar c(long v, const Field& f = Fx) { return Scalar::from_int(f, v); }
Scalar X(long e = 1, const Field& f = Fx) { return x_power(f, e); }

bool polynomial_in_x(const PlaneAut& f)
{
    for (const PlaneEndo* e : {&f.forward, &f.inverse})
        for (int i = 0; i < 2; ++i)
            for (const auto& [m, s] : (*e)[i].terms())
                if (up::deg(s.denom()) > 0) return false;
    return true;
}

// Conjugating each generator by psi, symbolically, independent of verify_family.
bool conjugates_to_rho(const PlaneAut& psi, const GroupAction& nu, const LinearRep& rho)
{
    for (size_t i = 0; i < nu.generators.size(); ++i)
        if (compose(compose(psi, nu.generators[i]), psi.inv()).forward != rho.images[i].to_endo()) return false;
    return true;
}

std::vector<Num> random_points(Rng& rng, int k, int n)
{
    std::vector<Num> pts;
    while (static_cast<int>(pts.size()) < n) pts.push_back(random_num(rng, k, 20));
    return pts;
}

}  // namespace

TEST_CASE("validate_family")
{
    auto G = GroupAction::cyclic(to_aut(Affine::diagonal(c(-1), c(1))), 2);
    CHECK_NOTHROW(validate_family(G));
    auto H = GroupAction::cyclic(to_aut(Affine::linear(c(0), X(-1), X(), c(0))), 2);
    CHECK_THROWS_WITH_AS(validate_family(H), doctest::Contains("InvalidFamily"), MathError);
    auto K = GroupAction::cyclic(to_aut(Affine::diagonal(c(-1, Q), c(1, Q))), 2);
    CHECK_THROWS_WITH_AS(validate_family(K), doctest::Contains("InvalidFamily"), MathError);
}

TEST_CASE("linearize_family_generic examples")
{
    Affine R = Affine::diagonal(c(-1), c(1));
    auto lin0 = linearize_family_generic(GroupAction::cyclic(to_aut(R), 2));
    CHECK(lin0.psi.forward.is_identity());
    CHECK(lin0.rho.images[0] == R);

    PlaneAut phi = invert(PlaneEndo{Z1() + Z2().pow(3) * X(), Z2()});
    auto nu = GroupAction::cyclic(compose(compose(phi, to_aut(R)), phi.inv()), 2);
    auto lin = linearize_family_generic(nu);
    CHECK(conjugates_to_rho(lin.psi, nu, lin.rho));

    Scalar w = Scalar::zeta(F3x, 3);
    Affine R3 = Affine::diagonal(w, w * w);
    PlaneAut phi3 = invert(compose(PlaneEndo{Z1(F3x) + Z2(F3x).pow(2) * X(1, F3x), Z2(F3x)}, PlaneEndo{Z1(F3x), Z2(F3x) + Z1(F3x).pow(2) * c(2, F3x)}));
    auto nu3 = GroupAction::cyclic(compose(compose(phi3, to_aut(R3)), phi3.inv()), 3);
    auto lin3 = linearize_family_generic(nu3);
    CHECK(conjugates_to_rho(lin3.psi, nu3, lin3.rho));
    // the eigenvalues of rho are {zeta3, zeta3^2}
    const Affine& r = lin3.rho.images[0];
    CHECK((r.m11 + r.m22) == w + w * w);
    CHECK(r.det() == c(1, F3x));
}

TEST_CASE("rational_roots")
{
    using P = up::Poly<mpq_class>;
    CHECK(rational_roots(P{0, -1, 1}) == std::vector<mpq_class>{0, 1});
    CHECK(rational_roots(P{1, 0, 1}).empty());
    // 6x^2 - x - 1 = (2x - 1)(3x + 1)
    CHECK(rational_roots(P{-1, -1, 6}) == std::vector<mpq_class>{mpq_class(-1, 3), mpq_class(1, 2)});
    CHECK(rational_roots(P{mpq_class(1, 4), 0, -1}) == std::vector<mpq_class>{mpq_class(-1, 2), mpq_class(1, 2)});
    CHECK(rational_roots(P{5}).empty());
}

TEST_CASE("pole_set examples")
{
    CHECK(pole_set(to_aut(Affine::diagonal(c(2), c(1)))).empty());
    Scalar f = Scalar::fraction(Fx, {Num(1, 1)}, {Num(1, 0), Num(1, -1), Num(1, 1)});
    auto ps = pole_set(invert(PlaneEndo{Z1() + Z2() * Z2() * f, Z2()}));
    REQUIRE(ps.centers.size() == 2);
    CHECK(ps.centers[0] == Num(1, 0));
    CHECK(ps.centers[1] == Num(1, 1));
    CHECK(ps.warnings.empty());

    Scalar g = Scalar::fraction(Fx, {Num(1, 1)}, {Num(1, 1), Num(1, 0), Num(1, 1)});
    auto pg = pole_set(invert(PlaneEndo{Z1() + Z2() * Z2() * g, Z2()}));
    CHECK(pg.centers.empty());
    REQUIRE(pg.warnings.size() == 1);
    CHECK(pg.warnings[0] == "non-rational pole factor x^2+1");
    CHECK(!pg.empty());

    // a pole of the inverse only
    auto pi = pole_set(to_aut(Affine::diagonal(X() - c(2), c(1))));
    REQUIRE(pi.centers.size() == 1);
    CHECK(pi.centers[0] == Num(1, 2));

    // over Q(zeta3), x^2 + x + 1 splits but its roots are not searched
    Scalar h = Scalar::fraction(F3x, {Num(3, 1)}, {Num(3, 1), Num(3, 1), Num(3, 1)});
    auto ph = pole_set(to_aut(Affine::diagonal(h, c(1, F3x))));
    CHECK(ph.centers.empty());
    CHECK(ph.nonrational.size() == 1);
}

TEST_CASE("ordering of centers")
{
    Scalar f = Scalar::fraction(Fx, {Num(1, 1)}, up::mul(up::mul(NPoly{Num(1, 2), Num(1, 1)}, NPoly{Num(1, -3), Num(1, 1)}),
                                                        NPoly{Num(1, mpq_class(1, 2)), Num(1, 1)}));
    auto ps = pole_set(to_aut(Affine::diagonal(f, c(1))));
    REQUIRE(ps.centers.size() == 3);
    CHECK(ps.centers[0] == Num(1, -2));
    CHECK(ps.centers[1] == Num(1, mpq_class(-1, 2)));
    CHECK(ps.centers[2] == Num(1, 3));
}

TEST_CASE("rho_group_cyclic")
{
    CHECK(rho_group_cyclic(LinearRep{{Affine::diagonal(c(-1, Q), c(1, Q))}, {}}));
    CHECK(!rho_group_cyclic(LinearRep{{Affine::diagonal(c(-1, Q), c(1, Q)), Affine::diagonal(c(1, Q), c(-1, Q))}, {}}));
    // Z2 x Z3 is cyclic
    Scalar w = Scalar::zeta(Field::cyclotomic(3), 3);
    Scalar one = Scalar::one(Field::cyclotomic(3));
    CHECK(rho_group_cyclic(LinearRep{{Affine::diagonal(-one, one), Affine::diagonal(one, w)}, {}}));
    CHECK(!rho_group_cyclic(LinearRep{{}, std::pair{2, 1}}));
}

TEST_CASE("sequential removal on the shear family")
{
    Affine R = Affine::diagonal(c(1), c(-1));
    Scalar f = Scalar::fraction(Fx, {Num(1, 1)}, {Num(1, 0), Num(1, -1), Num(1, 1)});
    PlaneAut bad = invert(PlaneEndo{Z1() + Z2() * Z2() * X(-1), Z2()});
    PlaneAut bad2 = invert(PlaneEndo{Z1() + Z2() * Z2() * f, Z2()});
    PlaneAut phi = invert(PlaneEndo{Z1(), Z2() + Z1() * Z1() * X()});
    auto nu = GroupAction::cyclic(compose(compose(phi.inv(), to_aut(R)), phi), 2);
    LinearRep rho{{R}, {}};
    for (const auto& b : {bad, bad2}) {
        PlaneAut psi = compose(b, phi);
        REQUIRE(conjugates_to_rho(psi, nu, rho));
        auto rep = remove_all_poles(psi, rho, nu);
        CHECK(rep.method == "sequential");
        CHECK(rep.verified);
        CHECK(rep.residual.empty());
        CHECK(polynomial_in_x(rep.psi));
        CHECK(conjugates_to_rho(rep.psi, nu, rho));
        CHECK(compose(psi, rep.alpha).forward == rep.psi.forward);
        CHECK(is_equivariant(rep.alpha.forward, nu));
        CHECK(rep.removed.size() == pole_set(psi).centers.size());
        for (const auto& d : rep.digests) {
            int prev = d.initial_w;
            for (int w : d.w) {
                CHECK(w < prev);
                prev = w;
            }
            CHECK(prev == 0);
        }
    }
}

TEST_CASE("non-rational poles are refused")
{
    auto G = GroupAction::cyclic(to_aut(Affine::diagonal(c(-1), c(1))), 2);
    Scalar g = Scalar::fraction(Fx, {Num(1, 1)}, {Num(1, 1), Num(1, 0), Num(1, 1)});
    PlaneAut psi = to_aut(Affine::diagonal(g, c(1)));
    LinearRep rho{{Affine::diagonal(c(-1), c(1))}, {}};
    REQUIRE(verify_linearization(psi, G, rho));
    CHECK_THROWS_WITH_AS(remove_all_poles(psi, rho, G), doctest::Contains("ResidualNonRationalPoles"), MathError);
}

TEST_CASE("torus (2,1) family is glued by partial fractions")
{
    Scalar x = X(), y = X() - c(1);
    PlaneAut phi = invert(PlaneEndo{Z1() + Z2() * Z2() * (x + c(2)), Z2() + BiPoly::constant(c(1))});
    auto nu = GroupAction::torus(Fx, 2, 1, phi.inv());
    LinearRep rho{{}, std::pair{2, 1}};
    PlaneAut bad = invert(PlaneEndo{Z1() * (x * y).inv() + Z2() * Z2() * (x * x * y).inv(), Z2() * x * y.inv()});
    PlaneAut psi = compose(bad, phi);
    REQUIRE(verify_linearization(psi, nu, rho));
    REQUIRE(pole_set(psi).centers.size() == 2);

    auto rep = remove_all_poles(psi, rho, nu);
    CHECK(rep.method == "glued");
    CHECK(rep.verified);
    CHECK(polynomial_in_x(rep.psi));
    REQUIRE(rep.centralizer);
    // A = (a1 z1 + b z2^2, a2 z2)
    const PlaneEndo& A = *rep.centralizer;
    auto a1 = A.p1.coeff(1, 0), b = A.p1.coeff(0, 2), a2 = A.p2.coeff(0, 1);
    CHECK(A == PlaneEndo{Z1() * a1 + BiPoly::monomial(b, 0, 2), Z2() * a2});
    CHECK(torus_equivariant(A, 2, 1));
    CHECK(compose(A, psi.forward) == rep.psi.forward);
    CHECK(torus_equivariant(compose(rep.psi.forward, phi.inverse), 2, 1));

    Rng rng(7);
    for (const auto& a : random_points(rng, 1, 10)) CHECK(verify_specialization(rep, nu, a));
}

TEST_CASE("Klein four family is glued by a diagonal matrix")
{
    Scalar x = X(), y = X() - c(1);
    PlaneAut phi = invert(compose(PlaneEndo{Z1() + Z2() * Z2() * x, Z2()}, PlaneEndo{Z1(), Z2() + Z1() * Z1() * c(3)}));
    Affine R1 = Affine::diagonal(c(-1), c(1)), R2 = Affine::diagonal(c(1), c(-1));
    auto nu = GroupAction::finite_abelian({compose(compose(phi.inv(), to_aut(R1)), phi), compose(compose(phi.inv(), to_aut(R2)), phi)}, {2, 2});
    LinearRep rho{{R1, R2}, {}};
    PlaneAut psi = compose(to_aut(Affine::diagonal(x.inv() * y * y, y.inv())), phi);
    REQUIRE(conjugates_to_rho(psi, nu, rho));
    auto rep = remove_all_poles(psi, rho, nu);
    CHECK(rep.method == "glued");
    CHECK(rep.verified);
    CHECK(polynomial_in_x(rep.psi));
    CHECK(conjugates_to_rho(rep.psi, nu, rho));
    REQUIRE(rep.centralizer);
    const PlaneEndo& A = *rep.centralizer;
    CHECK(A == Affine::diagonal(A.p1.coeff(1, 0), A.p2.coeff(0, 1)).to_endo());
}

TEST_CASE("generated families with poles at 0 and 1")
{
    Rng rng(2026);
    for (auto kind : {FamilyKind::z2, FamilyKind::z3, FamilyKind::torus21}) {
        for (int i = 0; i < 2; ++i) {
            auto fc = family_case(rng, kind);
            REQUIRE(verify_linearization(fc.psi, fc.nu, fc.rho));
            auto rep = remove_all_poles(fc.psi, fc.rho, fc.nu);
            CHECK(rep.method == (kind == FamilyKind::torus21 ? "glued" : "sequential"));
            CHECK(rep.verified);
            CHECK(polynomial_in_x(rep.psi));
            if (kind != FamilyKind::torus21) CHECK(conjugates_to_rho(rep.psi, fc.nu, fc.rho));
            for (const auto& a : random_points(rng, fc.nu.field.k, 10)) CHECK(verify_specialization(rep, fc.nu, a));
        }
    }
}

TEST_CASE("verification catches tampering and reruns are idempotent")
{
    Rng rng(5);
    auto fc = family_case(rng, FamilyKind::z2);
    auto rep = remove_all_poles(fc.psi, fc.rho, fc.nu);
    REQUIRE(rep.verified);
    CHECK(verify_family(rep, fc.nu));

    auto again = remove_all_poles(rep, fc.nu);
    CHECK(again.psi.forward == rep.psi.forward);
    CHECK(again.removed.size() == rep.removed.size());

    auto bad = rep;
    bad.psi.forward.p1 += Z2() * Z2() * Z2();
    CHECK(!verify_family(bad, fc.nu));
    auto pole = rep;
    pole.psi = compose(to_aut(Affine::diagonal(X(-1), X(-1))), rep.psi);
    CHECK(!verify_family(pole, fc.nu));
    // agreement between the symbolic check and specializations
    int agree = 0;
    for (const auto& a : random_points(rng, 1, 10)) agree += verify_specialization(rep, fc.nu, a);
    CHECK(agree == 10);
    CHECK(!verify_specialization(bad, fc.nu, Num(1, 2)));
}

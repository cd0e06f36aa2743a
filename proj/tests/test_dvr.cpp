#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "corpus.hpp"

using namespace pa;
using namespace pa::testing;

namespace {

const Field Q = Field::rationals();
const Field Fx = Q.over();
const DVRContext at0(Fx, Num(1, 0));

BiPoly Z1(const Field& f = Fx) { return BiPoly::z1(f); }
BiPoly Z2(const Field& f = Fx) { return BiPoly::z2(f); }
Scalar c(long v, const Field& f = Fx) { return Scalar::from_int(f, v); }
Scalar X(long e = 1) { return x_power(Fx, e); }

PlaneAut id_aut(const Field& f = Fx) { return {PlaneEndo::identity(f), PlaneEndo::identity(f)}; }

bool proportional(const BiPoly& a, const BiPoly& b)
{
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    const auto& [m, lc] = *b.terms().rbegin();
    return a * lc == b * a.coeff(m.first, m.second);
}

}  // namespace

TEST_CASE("endo_valuation examples")
{
    PlaneEndo f{Z1() + Z2() * Z2(), Z2() * (X() + c(1))};
    CHECK(endo_valuation(f, at0) == 0);
    PlaneEndo g{Z2() * Z2() * X(-1), Z2()};
    CHECK(endo_valuation(g, at0) == -1);
    PlaneEndo g3{g.p1 * X(3), g.p2 * X(3)};
    CHECK(endo_valuation(g3, at0) == 2);
    CHECK_THROWS_WITH_AS(endo_valuation(PlaneEndo{BiPoly(Fx), BiPoly(Fx)}, at0), doctest::Contains("ZeroEndomorphism"), MathError);
}

TEST_CASE("w_invariant examples")
{
    auto e = invert(PlaneEndo{Z1() * c(3) + Z2() * Z2() * X(), Z2() - BiPoly::constant(c(1))});
    auto r = w_invariant(e, at0);
    CHECK(r.w1 == 0);
    CHECK(r.w2 == 0);
    CHECK(r.integral);
    auto s = w_invariant(invert(PlaneEndo{Z1() * X() + Z2() * Z2(), Z2()}), at0);
    CHECK(s.w1 == 1);
    CHECK(s.w2 == 0);
    CHECK(!s.integral);
    auto d = w_invariant(invert(PlaneEndo{Z1() * X(), Z2()}), at0);
    CHECK((d.w1 == 1 && d.w2 == 0));
    CHECK_THROWS_WITH_AS(w_invariant(invert(PlaneEndo{Z1() + Z2() * Z2() * X(-1), Z2()}), at0),
                         doctest::Contains("NotIntegralInput"), MathError);
    // the other center sees no pole
    DVRContext at1(Fx, Num(1, 1));
    CHECK(w_invariant(invert(PlaneEndo{Z1() * X(), Z2()}), at1).integral);
}

TEST_CASE("normalize_valuation examples")
{
    Affine R = Affine::diagonal(c(1), c(-1));
    auto G = GroupAction::cyclic(to_aut(R), 2);
    LinearRep rho{{R}, {}};
    auto n0 = normalize_valuation(id_aut(), G, rho, at0);
    CHECK(n0.alpha.forward.is_identity());

    PlaneAut psi = to_aut(Affine::diagonal(X(), X()));
    auto n1 = normalize_valuation(psi, G, rho, at0);
    CHECK(endo_valuation(n1.psi.forward, at0) == 0);
    CHECK(n1.alpha.forward == Affine::diagonal(X(-1), X(-1)).to_endo());
    CHECK(n1.psi.forward == compose(psi, n1.alpha).forward);

    PlaneAut sh = invert(PlaneEndo{Z1() + Z2() * Z2() * X(-1), Z2()});
    auto n2 = normalize_valuation(sh, G, rho, at0);
    CHECK(endo_valuation(n2.psi.forward, at0) == 0);
    CHECK(is_equivariant(n2.alpha.forward, G));
    CHECK(n2.psi.forward == compose(sh, n2.alpha).forward);

    auto H = GroupAction::cyclic(to_aut(Affine::diagonal(c(-1), c(1))), 2);
    CHECK_THROWS_WITH_AS(normalize_valuation(sh, H, rho, at0), doctest::Contains("NotLinearizing"), MathError);
}

TEST_CASE("implicit curve examples")
{
    BiPoly u = Z1(Q), v = Z2(Q);
    CHECK(proportional(implicit_curve({Z1(Q), Z1(Q) * Z1(Q)}), v - u * u));
    CHECK(proportional(implicit_curve({Z2(Q), Z2(Q)}), u - v));
    CHECK(proportional(implicit_curve({Z1(Q).pow(2), Z1(Q).pow(3)}), v * v - u.pow(3)));
    CHECK_THROWS_WITH_AS(implicit_curve({Z1(Q), Z2(Q)}), doctest::Contains("NotDegenerate"), MathError);

    PlaneEndo psi{Z1() + Z2() * X(), Z1() * Z1() + Z2() * X(2)};
    CHECK(proportional(image_curve_mod_t(psi, at0), v - u * u));
    PlaneEndo scaled{psi.p1 * X(), psi.p2 * X()};
    CHECK_THROWS_WITH_AS(image_curve_mod_t(scaled, at0), doctest::Contains("NotNormalized"), MathError);
}

TEST_CASE("coordinate_mate examples")
{
    Affine D = Affine::diagonal(c(-1, Q), c(1, Q));
    auto m0 = coordinate_mate(Z2(Q), {D});
    CHECK(m0.h == Z1(Q));
    CHECK(m0.tau.forward == PlaneEndo::swap(Q));

    auto m1 = coordinate_mate(Z2(Q) + Z1(Q) * Z1(Q), {Affine::identity(Q)});
    CHECK(m1.h == Z1(Q));
    CHECK(m1.tau.forward == PlaneEndo{Z2(Q) + Z1(Q) * Z1(Q), Z1(Q)});
    CHECK(decompose(m1.tau.forward).recompose() == m1.tau.forward);

    auto m2 = coordinate_mate(Z2(Q) + Z1(Q) * Z1(Q), {D});
    CHECK(m2.h == Z1(Q));

    CHECK_THROWS_WITH_AS(coordinate_mate(Z1(Q) * Z2(Q), {Affine::identity(Q)}), doctest::Contains("NotACoordinate"), MathError);
    CHECK_THROWS_WITH_AS(coordinate_mate(Z1(Q) + Z2(Q), {D}), doctest::Contains("NotInvariantLine"), MathError);

    // non-diagonal rho: the swap, with invariant line z1 + z2
    Affine S = Affine::linear(c(0, Q), c(1, Q), c(1, Q), c(0, Q));
    auto m3 = coordinate_mate(Z1(Q) + Z2(Q), {S});
    PlaneEndo s = S.to_endo();
    CHECK(m3.h.compose(s.p1, s.p2) == -m3.h);
    // tau rho tau^-1 is diagonal
    auto conj = compose(m3.tau.forward, compose(s, m3.tau.inverse));
    CHECK(conj == Affine::diagonal(c(1, Q), c(-1, Q)).to_endo());
}

TEST_CASE("kr_step and remove_pole on the shear example")
{
    Affine R = Affine::diagonal(c(1), c(-1));
    PlaneAut psi = invert(PlaneEndo{Z1() + Z2() * Z2() * X(-1), Z2()});
    // psi commutes with R, so G = <R> and rho(g) = R
    auto G = GroupAction::cyclic(to_aut(R), 2);
    LinearRep rho{{R}, {}};
    REQUIRE(verify_linearization(psi, G, rho));

    auto res = remove_pole(psi, G, rho, at0);
    CHECK(res.trace.initial_w == 4);
    REQUIRE(res.trace.steps.size() == 2);
    CHECK(res.trace.steps[0].w_before == 4);
    CHECK(res.trace.steps[0].w_after == 1);
    CHECK(res.trace.steps[1].w_after == 0);
    CHECK(res.psi.forward == PlaneEndo{Z1() + Z2() * Z2(), Z2()});
    CHECK(is_integral_aut(res.psi, at0));
    CHECK(is_equivariant(res.alpha.forward, G));
    CHECK(verify_linearization(res.psi, G, rho));
    CHECK(compose(psi, res.alpha).forward == res.psi.forward);

    // already integral
    auto done = remove_pole(res.psi, G, rho, at0);
    CHECK(done.trace.steps.empty());
    CHECK(done.alpha.forward.is_identity());
    CHECK_THROWS_WITH_AS(kr_step(res.psi, G, rho, at0), doctest::Contains("AlreadyIntegral"), MathError);
}

TEST_CASE("one step strips a diagonal t factor")
{
    Affine R = Affine::diagonal(c(-1), c(1));
    auto G = GroupAction::cyclic(to_aut(R), 2);
    LinearRep rho{{R}, {}};
    PlaneAut psi = to_aut(Affine::diagonal(X(), c(1)));
    auto s = kr_step(psi, G, rho, at0);
    CHECK(s.step.w_before == 1);
    CHECK(s.step.w_after == 0);
    CHECK(s.step.r1 == 1);
    CHECK(s.psi.forward.is_identity());
    CHECK(is_equivariant(s.step.alpha.forward, G));
}

TEST_CASE("remove_pole on generated pole-carrying linearizers")
{
    Rng rng(41);
    for (const Field& F : {Fx, Field::cyclotomic(3).over()}) {
        DVRContext ctx(F, Num(F.k, 0));
        for (int i = 0; i < 8; ++i) {
            auto inst = pole_instance(rng, F);
            REQUIRE(verify_linearization(inst.psi, inst.G, inst.rho));
            auto res = remove_pole(inst.psi, inst.G, inst.rho, ctx);
            int prev = res.trace.initial_w;
            for (const auto& st : res.trace.steps) {
                CHECK(st.w_before <= prev);
                CHECK(st.w_after < st.w_before);
                prev = st.w_after;
            }
            CHECK(static_cast<int>(res.trace.steps.size()) <= res.trace.initial_w);
            CHECK(is_integral_aut(res.psi, ctx));
            CHECK(is_equivariant(res.alpha.forward, inst.G));
            CHECK(verify_linearization(res.psi, inst.G, inst.rho));
            CHECK(compose(inst.psi, res.alpha).forward == res.psi.forward);
        }
    }
}

TEST_CASE("perturbation_bound examples")
{
    PlaneEndo a{Z1() * c(2) + Z2() * Z2(), Z2()};
    auto b0 = perturbation_bound({a}, at0);
    CHECK(b0.v0 == 0);
    CHECK(b0.r == 0);
    CHECK(perturbation_bound({a, a}, at0).r == 0);

    PlaneEndo p{Z1() * X(-1), Z2()}, q{Z1() * X(), Z2()};
    auto b = perturbation_bound({p, q}, at0);
    CHECK(b.v0 == 1);
    CHECK(b.s == 8);
    CHECK(b.d == 2);
    CHECK(b.r == 16);
    CHECK_THROWS_WITH_AS(perturbation_bound({p, p}, at0), doctest::Contains("CompositionNotIntegral"), MathError);
}

TEST_CASE("perturbation_bound soundness")
{
    Rng rng(42);
    PlaneEndo p{Z1() * X(-1), Z2()}, q{Z1() * X(), Z2()};
    std::vector<PlaneEndo> tuple{p, q};
    auto b = perturbation_bound(tuple, at0);
    for (int i = 0; i < 50; ++i) {
        auto pert = tuple;
        for (auto& f : pert)
            for (auto [u, w] : b.support) {
                f.p1.add_term(u, w, random_int_scalar(rng, Fx, -3, 3) * X(b.r));
                f.p2.add_term(u, w, random_int_scalar(rng, Fx, -3, 3) * X(b.r));
            }
        CHECK(endo_valuation(compose_tuple(pert), at0) >= 0);
    }
}

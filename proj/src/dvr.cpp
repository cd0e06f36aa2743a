#include "planeaut/dvr.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "planeaut/linalg.hpp"

namespace pa {

Val poly_valuation(const BiPoly& p, const DVRContext& ctx)
{
    Val v = kValInf;
    for (const auto& [m, c] : p.terms()) v = std::min(v, valuation(c, ctx));
    return v;
}

Val endo_valuation(const PlaneEndo& f, const DVRContext& ctx)
{
    Val v = std::min(poly_valuation(f.p1, ctx), poly_valuation(f.p2, ctx));
    if (v == kValInf) fail("ZeroEndomorphism");
    return v;
}

EndoValuationReport w_invariant(const PlaneAut& f, const DVRContext& ctx)
{
    EndoValuationReport r;
    r.v = endo_valuation(f.forward, ctx);
    if (r.v < 0) fail("NotIntegralInput", "valuation " + std::to_string(r.v));
    auto w = [&](const BiPoly& p) {
        Val v = poly_valuation(p, ctx);
        return v == kValInf ? 0 : static_cast<int>(std::max<Val>(0, -v));
    };
    r.w1 = w(f.inverse.p1);
    r.w2 = w(f.inverse.p2);
    r.integral = r.w1 == 0 && r.w2 == 0;
    return r;
}

bool is_integral_aut(const PlaneAut& f, const DVRContext& ctx)
{
    return endo_valuation(f.forward, ctx) >= 0 && endo_valuation(f.inverse, ctx) >= 0;
}

PlaneEndo residue_endo(const PlaneEndo& f, const DVRContext& ctx)
{
    return f.map(ctx.field.base(), [&](const Scalar& c) { return residue(c, ctx); });
}

BiPoly lift_poly(const BiPoly& p, const Field& to)
{
    return p.map(to, [&](const Scalar& c) { return Scalar::from_num(to, c.num_value()); });
}

PlaneEndo lift_endo(const PlaneEndo& f, const Field& to) { return {lift_poly(f.p1, to), lift_poly(f.p2, to)}; }

Affine lift_affine(const Affine& a, const Field& to)
{
    auto l = [&](const Scalar& c) { return Scalar::from_num(to, c.num_value()); };
    return {l(a.m11), l(a.m12), l(a.m21), l(a.m22), l(a.b1), l(a.b2)};
}

Affine constant_affine(const Affine& a)
{
    if (!a.field().ratfun) return a;
    Field K = a.field().base();
    auto c = [&](const Scalar& s) {
        if (!s.is_constant()) fail("NotConstant", s.str());
        return Scalar::from_num(K, s.constant_value());
    };
    return {c(a.m11), c(a.m12), c(a.m21), c(a.m22), c(a.b1), c(a.b2)};
}

std::vector<Affine> rho_matrices(const LinearRep& rho, const Field& kappa)
{
    if (rho.torus_weights) {
        Scalar two = Scalar::from_int(kappa, 2);
        return {Affine::diagonal(two.pow(rho.torus_weights->first), two.pow(rho.torus_weights->second))};
    }
    std::vector<Affine> out;
    for (const auto& m : rho.images) out.push_back(m.field() == kappa ? m : constant_affine(m));
    return out;
}

namespace {

PlaneAut identity_aut(const Field& f) { return {PlaneEndo::identity(f), PlaneEndo::identity(f)}; }

BiPoly scaled(const BiPoly& p, const Scalar& c) { return p * c; }

}  // namespace

StepResult normalize_valuation(const PlaneAut& psi, const GroupAction& G, const LinearRep& rho, const DVRContext& ctx)
{
    if (!verify_linearization(psi, G, rho)) fail("NotLinearizing");
    const Field& F = ctx.field;
    Val v = endo_valuation(psi.forward, ctx);
    if (v == 0) return {identity_aut(F), psi};
    // beta = t^-v id commutes with rho, so alpha = psi^-1 beta psi is equivariant
    Scalar t = ctx.uniformizer();
    Scalar b = t.pow(-v);
    PlaneAut psi1{{scaled(psi.forward.p1, b), scaled(psi.forward.p2, b)},
                  compose(psi.inverse, Affine::diagonal(b.inv(), b.inv()).to_endo())};
    return {compose(psi.inv(), psi1), psi1};
}

BiPoly implicit_curve(const PlaneEndo& P)
{
    const Field& K = P.field();
    BiPoly J = P.p1.d_z1() * P.p2.d_z2() - P.p1.d_z2() * P.p2.d_z1();
    if (!J.is_zero()) fail("NotDegenerate", "the residues are algebraically independent");
    int D = P.degree();
    if (D < 1) fail("NotDegenerate", "the residue map is constant");
    std::vector<BiPoly> pw1{BiPoly::constant(Scalar::one(K))}, pw2 = pw1;
    for (int e = 1; e <= D; ++e) {
        pw1.push_back(pw1.back() * P.p1);
        pw2.push_back(pw2.back() * P.p2);
    }
    // smallest total degree first: a kernel element of minimal degree generates the (principal, prime) kernel
    for (int e = 1; e <= D; ++e) {
        std::vector<Mono> cols;
        for (int t = 0; t <= e; ++t)
            for (int i = 0; i <= t; ++i) cols.push_back({i, t - i});
        std::vector<BiPoly> imgs;
        std::set<Mono, GrLex> rowset;
        for (auto [i, j] : cols) {
            imgs.push_back(pw1[i] * pw2[j]);
            for (const auto& [m, c] : imgs.back().terms()) rowset.insert(m);
        }
        std::vector<Mono> rows(rowset.begin(), rowset.end());
        Matrix M(rows.size(), std::vector<Scalar>(cols.size(), Scalar::zero(K)));
        for (size_t c = 0; c < cols.size(); ++c)
            for (size_t r = 0; r < rows.size(); ++r) M[r][c] = imgs[c].coeff(rows[r].first, rows[r].second);
        auto ns = nullspace(M, cols.size(), K);
        if (ns.empty()) continue;
        BiPoly f(K);
        for (size_t c = 0; c < cols.size(); ++c)
            if (!ns[0][c].is_zero()) f.add_term(cols[c].first, cols[c].second, ns[0][c]);
        return f * f.terms().rbegin()->second.inv();
    }
    fail("EliminationFailed", "no relation up to degree " + std::to_string(D));
}

BiPoly image_curve_mod_t(const PlaneEndo& psi, const DVRContext& ctx)
{
    Val v = endo_valuation(psi, ctx);
    if (v != 0) fail("NotNormalized", "valuation " + std::to_string(v));
    return implicit_curve(residue_endo(psi, ctx));
}

namespace {

BiPoly pull(const BiPoly& f, const Affine& M)
{
    PlaneEndo m = M.to_endo();
    return f.compose(m.p1, m.p2);
}

// f o M = lambda f
std::optional<Scalar> character(const BiPoly& f, const Affine& M)
{
    BiPoly g = pull(f, M);
    const auto& [mono, c] = *f.terms().rbegin();
    Scalar l = g.coeff(mono.first, mono.second) / c;
    if (g != f * l) return std::nullopt;
    return l;
}

int finite_order(const Affine& M)
{
    Affine P = M;
    for (int n = 1; n <= 1000; ++n) {
        if (P == Affine::identity(M.field())) return n;
        P = M * P;
    }
    fail("NotFiniteOrder", "representation matrix");
}

BiPoly linear_form(const Scalar& a, const Scalar& b)
{
    BiPoly h(a.field());
    h.add_term(1, 0, a);
    h.add_term(0, 1, b);
    return h;
}

// Left eigenvectors of the commuting rho matrices, as linear forms.
std::vector<BiPoly> eigen_forms(const std::vector<Affine>& rho, const Field& K)
{
    bool diag = std::all_of(rho.begin(), rho.end(), [](const Affine& m) { return m.m12.is_zero() && m.m21.is_zero(); });
    if (diag) return {BiPoly::z1(K), BiPoly::z2(K)};
    std::vector<int> orders;
    for (const auto& m : rho) orders.push_back(finite_order(m));
    Affine Pi = diagonalize(rho, orders).P.inverse();
    return {linear_form(Pi.m11, Pi.m12), linear_form(Pi.m21, Pi.m22)};
}

}  // namespace

CoordinateMate coordinate_mate(const BiPoly& f, const std::vector<Affine>& rho)
{
    const Field& K = f.field();
    if (f.degree() < 1) fail("NotACoordinate", "constant polynomial");
    for (const auto& M : rho)
        if (!character(f, M)) fail("NotInvariantLine", "f o rho(g) is not a multiple of f");

    BiPoly h(K);
    if (f.degree() == 1) {
        Scalar a = f.coeff(1, 0), b = f.coeff(0, 1);
        for (const auto& c : eigen_forms(rho, K))
            if (!(a * c.coeff(0, 1) - b * c.coeff(1, 0)).is_zero()) {
                h = c;
                break;
            }
    } else {
        // slice equation f_z1 h_z2 - f_z2 h_z1 = 1, h without constant term
        BiPoly fz1 = f.d_z1(), fz2 = f.d_z2();
        for (int e = 1; e <= std::max(1, f.degree() - 1) && h.is_zero(); ++e) {
            std::vector<Mono> cols;
            for (int t = 1; t <= e; ++t)
                for (int i = 0; i <= t; ++i) cols.push_back({i, t - i});
            std::vector<BiPoly> imgs;
            std::set<Mono, GrLex> rowset{{0, 0}};
            for (auto [i, j] : cols) {
                BiPoly m = BiPoly::monomial(Scalar::one(K), i, j);
                imgs.push_back(fz1 * m.d_z2() - fz2 * m.d_z1());
                for (const auto& [mm, c] : imgs.back().terms()) rowset.insert(mm);
            }
            std::vector<Mono> rows(rowset.begin(), rowset.end());
            Matrix M(rows.size(), std::vector<Scalar>(cols.size(), Scalar::zero(K)));
            std::vector<Scalar> rhs(rows.size(), Scalar::zero(K));
            for (size_t r = 0; r < rows.size(); ++r) {
                if (rows[r] == Mono{0, 0}) rhs[r] = Scalar::one(K);
                for (size_t c = 0; c < cols.size(); ++c) M[r][c] = imgs[c].coeff(rows[r].first, rows[r].second);
            }
            std::vector<Scalar> sol;
            if (!solve_linear(M, rhs, cols.size(), sol)) continue;
            for (size_t c = 0; c < cols.size(); ++c)
                if (!sol[c].is_zero()) h.add_term(cols[c].first, cols[c].second, sol[c]);
        }
        if (h.is_zero()) fail("NotACoordinate", "no mate of degree < " + std::to_string(f.degree()));
        h = h * h.terms().rbegin()->second.inv();
        // h o rho(g) = mu h + c_g; shift h so that every c_g vanishes
        std::optional<Scalar> shift;
        std::vector<std::pair<Scalar, Scalar>> cocycle;
        for (const auto& M : rho) {
            BiPoly g = pull(h, M);
            const auto& [mono, lc] = *h.terms().rbegin();
            Scalar mu = g.coeff(mono.first, mono.second) / lc;
            BiPoly rest = g - h * mu;
            if (rest.degree() > 0) fail("NotInvariantLine", "mate is not semi-invariant");
            Scalar cg = rest.constant_term();
            cocycle.push_back({mu, cg});
            if (!shift && !(mu - Scalar::one(K)).is_zero()) shift = cg / (mu - Scalar::one(K));
        }
        Scalar c = shift.value_or(Scalar::zero(K));
        for (const auto& [mu, cg] : cocycle)
            if (cg != c * (mu - Scalar::one(K))) fail("NotInvariantLine", "character of the mate is not constant");
        h += BiPoly::constant(c);
    }
    if (h.is_zero()) fail("NotACoordinate", "no complementary eigenline");
    PlaneAut tau;
    try {
        tau = invert(PlaneEndo{f, h});
    } catch (const MathError&) {
        fail("NotACoordinate", "(f, h) is not invertible");
    }
    return {h, tau};
}

KRStepResult kr_step(const PlaneAut& psi, const GroupAction& G, const LinearRep& rho, const DVRContext& ctx)
{
    const Field& F = ctx.field;
    auto rep = w_invariant(psi, ctx);
    if (rep.v != 0) fail("NotNormalized", "valuation " + std::to_string(rep.v));
    if (rep.integral) fail("AlreadyIntegral", "psi is invertible over the local ring");

    KRStep st;
    st.w_before = rep.w();
    st.curve = image_curve_mod_t(psi.forward, ctx);
    auto mate = coordinate_mate(st.curve, rho_matrices(rho, F.base()));
    st.tau = mate.tau;
    PlaneAut tau{lift_endo(mate.tau.forward, F), lift_endo(mate.tau.inverse, F)};

    PlaneEndo X = compose(tau.forward, psi.forward);
    st.r1 = poly_valuation(X.p1, ctx);
    st.r2 = poly_valuation(X.p2, ctx);
    if (st.r1 < 1) fail("InternalError", "t does not divide the first component of tau o psi");
    Scalar t = ctx.uniformizer();
    Scalar g1 = t.pow(-st.r1), g2 = t.pow(-st.r2);
    // psi1 = tau^-1 gamma tau psi
    PlaneAut psi1;
    psi1.forward = compose(tau.inverse, PlaneEndo{X.p1 * g1, X.p2 * g2});
    PlaneEndo gi_tau{tau.forward.p1 * g1.inv(), tau.forward.p2 * g2.inv()};
    psi1.inverse = compose(psi.inverse, compose(tau.inverse, gi_tau));

    st.alpha = compose(psi.inv(), psi1);
    if (!is_equivariant(st.alpha.forward, G)) fail("InternalError", "step is not equivariant");
    st.w_after = w_invariant(psi1, ctx).w();
    if (st.w_after >= st.w_before) fail("InternalError", "w did not decrease");
    return {st, psi1};
}

namespace {

std::optional<StepResult> recenter(const PlaneAut& psi, const LinearRep& rho, const DVRContext& ctx)
{
    PlaneEndo P = residue_endo(psi.forward, ctx);
    if (P.degree() > 0) return std::nullopt;
    // a constant residue map lands on a rho-fixed point; translating it to the
    // origin is integral and commutes with rho
    const Field& F = ctx.field;
    Scalar c1 = P.p1.constant_term(), c2 = P.p2.constant_term();
    for (const auto& M : rho_matrices(rho, F.base()))
        if (M.m11 * c1 + M.m12 * c2 != c1 || M.m21 * c1 + M.m22 * c2 != c2)
            fail("InternalError", "constant residue is not a fixed point");
    Affine T = lift_affine(Affine::translation(-c1, -c2), F);
    PlaneAut psi1{T.left_apply(psi.forward), compose(psi.inverse, T.inverse().to_endo())};
    return StepResult{compose(psi.inv(), psi1), psi1};
}

}  // namespace

PoleRemoval remove_pole(const PlaneAut& psi, const GroupAction& G, const LinearRep& rho, const DVRContext& ctx)
{
    auto n = normalize_valuation(psi, G, rho, ctx);
    PoleRemoval out{n.alpha, n.psi, {}};
    auto settle = [&] {
        // each pass raises the valuation of a nonzero map, so this ends
        for (int guard = 0;; ++guard) {
            if (guard > 64) fail("InternalError", "recentering does not settle");
            if (endo_valuation(out.psi.forward, ctx) != 0) {
                auto m = normalize_valuation(out.psi, G, rho, ctx);
                out.alpha = compose(out.alpha, m.alpha);
                out.psi = m.psi;
            }
            if (is_integral_aut(out.psi, ctx)) return;
            auto r = recenter(out.psi, rho, ctx);
            if (!r) return;
            out.alpha = compose(out.alpha, r->alpha);
            out.psi = r->psi;
        }
    };
    settle();
    out.trace.initial_w = w_invariant(out.psi, ctx).w();
    while (!is_integral_aut(out.psi, ctx)) {
        if (static_cast<int>(out.trace.steps.size()) >= out.trace.initial_w)
            fail("InternalError", "iteration cap " + std::to_string(out.trace.initial_w) + " reached");
        auto s = kr_step(out.psi, G, rho, ctx);
        out.alpha = compose(out.alpha, s.step.alpha);
        out.psi = s.psi;
        out.trace.steps.push_back(std::move(s.step));
        settle();
    }
    if (!verify_linearization(out.psi, G, rho)) fail("InternalError", "result no longer linearizes");
    return out;
}

PlaneEndo compose_tuple(const std::vector<PlaneEndo>& alphas)
{
    if (alphas.empty()) throw SchemaError("empty composition tuple");
    PlaneEndo r = alphas[0];
    for (size_t j = 1; j < alphas.size(); ++j) r = compose(alphas[j], r);
    return r;
}

PerturbationBound perturbation_bound(const std::vector<PlaneEndo>& alphas, const DVRContext& ctx)
{
    PlaneEndo comp = compose_tuple(alphas);
    if (!comp.p1.is_zero() || !comp.p2.is_zero())
        if (endo_valuation(comp, ctx) < 0) fail("CompositionNotIntegral");
    PerturbationBound b;
    Val vmin = 0;
    std::set<Mono, GrLex> I;
    for (const auto& a : alphas)
        for (int i = 0; i < 2; ++i)
            for (const auto& [m, c] : a[i].terms()) {
                I.insert(m);
                vmin = std::min(vmin, valuation(c, ctx));
            }
    b.support.assign(I.begin(), I.end());
    b.v0 = -vmin;
    long m = static_cast<long>(alphas.size());
    b.s = m * static_cast<long>(I.size()) * 2;
    // The generic composition has nonnegative integer coefficients, so its
    // degree in the coefficients follows d_j = 1 + D d_(j-1) with no cancellation.
    long D = 0;
    for (auto [i, j] : I) D = std::max<long>(D, i + j);
    b.d = 1;
    for (long j = 1; j < m; ++j) b.d = 1 + D * b.d;
    b.r = b.s * b.d * b.v0;
    return b;
}

}  // namespace pa

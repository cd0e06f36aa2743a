#include "planeaut/family.hpp"

#include <algorithm>
#include <map>

namespace pa {

namespace {

bool polynomial_in_x(const PlaneEndo& f)
{
    for (int i = 0; i < 2; ++i)
        for (const auto& [m, c] : f[i].terms())
            if (up::deg(c.denom()) > 0) return false;
    return true;
}

PlaneAut identity_aut(const Field& f) { return {PlaneEndo::identity(f), PlaneEndo::identity(f)}; }

std::string poly_str(const NPoly& p, char var)
{
    std::string s;
    for (int i = up::deg(p); i >= 0; --i) {
        if (p[i].is_zero()) continue;
        std::string c = p[i].str();
        bool one = p[i].is_one(), minus_one = (-p[i]).is_one();
        std::string term;
        if (i == 0) term = c;
        else if (one) term = "";
        else if (minus_one) term = "-";
        else term = c + "*";
        if (i > 0) term += std::string(1, var) + (i > 1 ? "^" + std::to_string(i) : "");
        if (!s.empty() && term[0] != '-') s += "+";
        s += term;
    }
    return s.empty() ? "0" : s;
}

std::vector<mpz_class> divisors(mpz_class n)
{
    n = abs(n);
    std::map<mpz_class, int> fac;
    for (mpz_class p = 2; p * p <= n && p <= 1000000; ++p)
        while (n % p == 0) {
            ++fac[p];
            n /= p;
        }
    // a cofactor left after trial division is taken as prime
    if (n > 1) ++fac[n];
    std::vector<mpz_class> out{1};
    for (const auto& [p, e] : fac) {
        size_t sz = out.size();
        mpz_class pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (size_t i = 0; i < sz; ++i) out.push_back(out[i] * pk);
        }
    }
    return out;
}

bool less_num(const Num& a, const Num& b) { return a.compare(b) < 0; }

}  // namespace

void validate_family(const GroupAction& nu)
{
    if (!nu.field.ratfun) fail("InvalidFamily", "a family lives over kappa(x)");
    for (const auto& g : nu.generators)
        if (!polynomial_in_x(g.forward) || !polynomial_in_x(g.inverse))
            fail("InvalidFamily", "generator coefficients must be polynomial in x");
    if (nu.torus_conj && (!polynomial_in_x(nu.torus_conj->forward) || !polynomial_in_x(nu.torus_conj->inverse)))
        fail("InvalidFamily", "torus conjugator must be polynomial in x");
}

Linearization linearize_family_generic(const GroupAction& nu)
{
    validate_family(nu);
    auto lin = linearize_over_field(nu);
    for (const auto& m : lin.rho.images) {
        try {
            constant_affine(m);
        } catch (const MathError&) {
            fail("NonConstantRepresentation", "rho depends on x");
        }
    }
    return lin;
}

std::vector<mpq_class> rational_roots(const up::Poly<mpq_class>& p0)
{
    up::Poly<mpq_class> p = p0;
    up::trim(p);
    std::vector<mpq_class> roots;
    if (up::deg(p) < 1) return roots;
    size_t low = 0;
    while (sgn(p[low]) == 0) ++low;
    if (low > 0) roots.push_back(0);
    mpz_class l = 1;
    for (const auto& c : p) l = lcm(l, mpz_class(c.get_den()));
    mpz_class a0 = mpz_class(p[low] * l), an = mpz_class(p.back() * l);
    auto num = divisors(a0), den = divisors(an);
    for (const auto& d : num)
        for (const auto& e : den)
            for (int s : {1, -1}) {
                mpq_class r(s * d, e);
                r.canonicalize();
                if (sgn(up::eval(p, r)) == 0 && std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
            }
    std::sort(roots.begin(), roots.end());
    return roots;
}

PoleSet pole_set(const PlaneAut& psi)
{
    PoleSet ps;
    const Field& F = psi.field();
    if (!F.ratfun) return ps;
    std::vector<NPoly> dens;
    for (const PlaneEndo* f : {&psi.forward, &psi.inverse})
        for (int i = 0; i < 2; ++i)
            for (const auto& [m, c] : (*f)[i].terms())
                if (up::deg(c.denom()) > 0 && std::find(dens.begin(), dens.end(), c.denom()) == dens.end())
                    dens.push_back(c.denom());
    for (NPoly d : dens) {
        if (std::all_of(d.begin(), d.end(), [](const Num& c) { return c.rational(); })) {
            up::Poly<mpq_class> q;
            for (const auto& c : d) q.push_back(c.to_rational());
            for (const auto& r : rational_roots(q)) {
                Num a(F.k, r);
                if (std::none_of(ps.centers.begin(), ps.centers.end(), [&](const Num& b) { return b == a; }))
                    ps.centers.push_back(a);
                NPoly lin{-a, Num(F.k, 1)};
                for (;;) {
                    auto [quo, rem] = up::divmod(d, lin);
                    if (!rem.empty()) break;
                    d = quo;
                }
            }
        }
        if (up::deg(d) < 1) continue;
        NPoly sf = up::monic(up::divmod(d, up::gcd(d, up::derivative(d))).first);
        if (std::find(ps.nonrational.begin(), ps.nonrational.end(), sf) == ps.nonrational.end()) {
            ps.nonrational.push_back(sf);
            ps.warnings.push_back("non-rational pole factor " + poly_str(sf, F.var));
        }
    }
    std::sort(ps.centers.begin(), ps.centers.end(), less_num);
    return ps;
}

PlaneAut specialize(const PlaneAut& f, const Num& a)
{
    Field K = f.field().base();
    auto s = [&](const Scalar& c) { return c.specialize(a); };
    return {f.forward.map(K, s), f.inverse.map(K, s)};
}

bool rho_group_cyclic(const LinearRep& rho)
{
    if (rho.torus_weights) return false;
    if (rho.images.empty()) return true;
    std::vector<Affine> gens;
    for (const auto& m : rho.images) gens.push_back(constant_affine(m));
    const Field& K = gens[0].field();
    std::vector<Affine> elems{Affine::identity(K)};
    for (size_t i = 0; i < elems.size(); ++i) {
        if (elems.size() > 10000) fail("NotFiniteOrder", "representation group too large");
        for (const auto& g : gens) {
            Affine h = g * elems[i];
            if (std::find(elems.begin(), elems.end(), h) == elems.end()) elems.push_back(h);
        }
    }
    for (const auto& e : elems) {
        size_t n = 1;
        for (Affine p = e; !(p == Affine::identity(K)); p = e * p) ++n;
        if (n == elems.size()) return true;
    }
    return false;
}

namespace {

// The centralizer {(a1 z1 + b z2^v, a2 z2)} of a diagonal rho (v = 0: diagonal
// matrices), after swapping the coordinates when `swapped`.
struct GlueShape {
    int v = 0;
    bool swapped = false;
};

std::optional<GlueShape> glue_shape(const LinearRep& rho)
{
    if (rho.torus_weights) {
        auto [w1, w2] = *rho.torus_weights;
        if (w1 == 0 || w2 == 0 || w1 == w2 || (w1 > 0) != (w2 > 0)) return std::nullopt;
        if (w1 % w2 == 0) return GlueShape{w1 / w2, false};
        if (w2 % w1 == 0) return GlueShape{w2 / w1, true};
        return GlueShape{};
    }
    if (rho_group_cyclic(rho)) return std::nullopt;
    for (const auto& m : rho.images)
        if (!m.m12.is_zero() || !m.m21.is_zero() || !m.is_linear()) return std::nullopt;
    return GlueShape{};
}

PlaneEndo swapped_endo(const PlaneEndo& f)
{
    PlaneEndo s = PlaneEndo::swap(f.field());
    return compose(s, compose(f, s));
}

NPoly power_of_linear(const Num& a, int e)
{
    NPoly p{Num(a.k(), 1)};
    NPoly lin{-a, Num(a.k(), 1)};
    for (int i = 0; i < e; ++i) p = up::mul(p, lin);
    return p;
}

Scalar laurent_unit(const Field& F, const std::vector<std::pair<Num, Val>>& exps)
{
    Scalar u = Scalar::one(F);
    for (const auto& [a, e] : exps) u *= Scalar::fraction(F, {-a, Num(F.k, 1)}, {Num(F.k, 1)}).pow(e);
    return u;
}

LinearizationReport glue(const PlaneAut& psi, const LinearRep& rho, const GroupAction& nu, const PoleSet& ps, GlueShape sh)
{
    const Field& F = psi.field();
    LinearizationReport rep;
    rep.rho = rho;
    rep.method = "glued";
    struct Local {
        Num a;
        Scalar a1, b, a2;
    };
    std::vector<Local> loc;
    for (const auto& a : ps.centers) {
        DVRContext ctx(F, a);
        auto res = remove_pole(psi, nu, rho, ctx);
        PoleDigest dg{a, res.trace.initial_w, {}};
        for (const auto& st : res.trace.steps) dg.w.push_back(st.w_after);
        rep.digests.push_back(dg);
        // A_a = psi_a o psi^-1 commutes with rho
        PlaneEndo A = compose(res.psi, psi.inv()).forward;
        if (sh.swapped) A = swapped_endo(A);
        Local l{a, A.p1.coeff(1, 0), sh.v ? A.p1.coeff(0, sh.v) : Scalar::zero(F), A.p2.coeff(0, 1)};
        BiPoly e1 = BiPoly::z1(F) * l.a1;
        if (sh.v) e1 += BiPoly::monomial(l.b, 0, sh.v);
        if (A != PlaneEndo{e1, BiPoly::z2(F) * l.a2}) fail("GluingFailed", "local correction is outside the centralizer family");
        loc.push_back(l);
    }
    std::vector<std::pair<Num, Val>> e1, e2;
    for (const auto& l : loc) {
        DVRContext ctx(F, l.a);
        e1.push_back({l.a, valuation(l.a1, ctx)});
        e2.push_back({l.a, valuation(l.a2, ctx)});
    }
    Scalar al1 = laurent_unit(F, e1), al2 = laurent_unit(F, e2);
    Scalar beta = Scalar::zero(F);
    if (sh.v) {
        // beta = P / Q with v_a(beta - c_a) >= v * v_a(a2) at every pole a
        std::vector<Scalar> c;
        std::vector<Val> need, m;
        NPoly Q{Num(F.k, 1)};
        for (size_t i = 0; i < loc.size(); ++i) {
            DVRContext ctx(F, loc[i].a);
            c.push_back(al1 / loc[i].a1 * loc[i].b);
            need.push_back(sh.v * e2[i].second);
            Val vc = valuation(c[i], ctx);
            bool active = vc < need[i];
            if (!active) c[i] = Scalar::zero(F);
            m.push_back(active ? std::max<Val>(0, -vc) : 0);
            Q = up::mul(Q, power_of_linear(loc[i].a, static_cast<int>(m[i])));
        }
        NPoly P, M{Num(F.k, 1)};
        std::vector<NPoly> mods, res;
        for (size_t i = 0; i < loc.size(); ++i) {
            Val e = c[i].is_zero() ? std::max<Val>(0, need[i]) : need[i] + m[i];
            if (e <= 0) continue;
            NPoly mod = power_of_linear(loc[i].a, static_cast<int>(e));
            Scalar R = Scalar::fraction(F, Q, {Num(F.k, 1)}) * c[i];
            NPoly r = up::divmod(up::mul(R.numer(), up::inv_mod(R.denom(), mod).second), mod).second;
            mods.push_back(mod);
            res.push_back(r);
            M = up::mul(M, mod);
        }
        for (size_t i = 0; i < mods.size(); ++i) {
            NPoly Mi = up::divmod(M, mods[i]).first;
            NPoly s = up::inv_mod(Mi, mods[i]).second;
            P = up::add(P, up::mul(up::mul(res[i], s), Mi));
        }
        if (!mods.empty()) P = up::divmod(P, M).second;
        beta = P.empty() ? Scalar::zero(F) : Scalar::fraction(F, P, Q);
    }
    BiPoly f1 = BiPoly::z1(F) * al1, g1 = BiPoly::z1(F) * al1.inv();
    if (sh.v) {
        f1 += BiPoly::monomial(beta, 0, sh.v);
        g1 += BiPoly::monomial(-beta * al1.inv() * al2.inv().pow(sh.v), 0, sh.v);
    }
    PlaneAut A{{f1, BiPoly::z2(F) * al2}, {g1, BiPoly::z2(F) * al2.inv()}};
    if (sh.swapped) A = {swapped_endo(A.forward), swapped_endo(A.inverse)};
    rep.centralizer = A.forward;
    rep.psi = {compose(A.forward, psi.forward), compose(psi.inverse, A.inverse)};
    rep.alpha = compose(psi.inv(), compose(A, psi));
    rep.removed = ps.centers;
    return rep;
}

LinearizationReport sequential(const PlaneAut& psi, const LinearRep& rho, const GroupAction& nu)
{
    LinearizationReport rep;
    rep.rho = rho;
    rep.method = "sequential";
    rep.psi = psi;
    rep.alpha = identity_aut(psi.field());
    for (;;) {
        PoleSet ps = pole_set(rep.psi);
        if (ps.centers.empty()) break;
        const Num a = ps.centers[0];
        auto res = remove_pole(rep.psi, nu, rho, DVRContext(psi.field(), a));
        PoleSet after = pole_set(res.psi);
        bool shrank = after.nonrational.empty() && after.centers.size() < ps.centers.size();
        for (const auto& b : after.centers)
            shrank = shrank && b != a && std::any_of(ps.centers.begin(), ps.centers.end(), [&](const Num& c) { return c == b; });
        if (!shrank) fail("InternalError", "pole set did not shrink at " + a.str());
        PoleDigest dg{a, res.trace.initial_w, {}};
        for (const auto& st : res.trace.steps) dg.w.push_back(st.w_after);
        rep.digests.push_back(dg);
        rep.removed.push_back(a);
        rep.alpha = compose(rep.alpha, res.alpha);
        rep.psi = res.psi;
    }
    return rep;
}

}  // namespace

LinearizationReport remove_all_poles(const PlaneAut& psi, const LinearRep& rho, const GroupAction& nu)
{
    PoleSet ps = pole_set(psi);
    if (!ps.nonrational.empty()) {
        std::string msg;
        for (const auto& w : ps.warnings) msg += w + "; ";
        fail("ResidualNonRationalPoles", msg + "enlarge the coefficient field");
    }
    LinearizationReport rep;
    if (ps.centers.empty()) {
        rep.psi = psi;
        rep.rho = rho;
        rep.alpha = identity_aut(psi.field());
    } else if (auto sh = glue_shape(rho)) {
        rep = glue(psi, rho, nu, ps, *sh);
    } else {
        rep = sequential(psi, rho, nu);
    }
    PoleSet left = pole_set(rep.psi);
    rep.residual = left.centers;
    rep.warnings = left.warnings;
    rep.verified = verify_family(rep, nu);
    return rep;
}

LinearizationReport remove_all_poles(const LinearizationReport& report, const GroupAction& nu)
{
    if (verify_family(report, nu)) return report;
    auto rep = remove_all_poles(report.psi, report.rho, nu);
    rep.alpha = compose(report.alpha, rep.alpha);
    rep.removed.insert(rep.removed.begin(), report.removed.begin(), report.removed.end());
    return rep;
}

bool verify_family(const LinearizationReport& report, const GroupAction& nu)
{
    try {
        return report.residual.empty() && pole_set(report.psi).empty() && verify_linearization(report.psi, nu, report.rho);
    } catch (const MathError&) {
        return false;
    }
}

bool verify_specialization(const LinearizationReport& report, const GroupAction& nu, const Num& a)
{
    try {
        PlaneAut p = specialize(report.psi, a);
        if (nu.kind == GroupAction::Kind::torus) {
            if (!report.rho.torus_weights) return false;
            auto [w1, w2] = nu.weights;
            PlaneEndo chi = nu.torus_conj ? compose(p.forward, specialize(*nu.torus_conj, a).forward) : p.forward;
            if (*report.rho.torus_weights == std::pair{w1, w2}) return torus_equivariant(chi, w1, w2);
            if (*report.rho.torus_weights == std::pair{w2, w1})
                return torus_equivariant(compose(PlaneEndo::swap(chi.field()), chi), w1, w2);
            return false;
        }
        if (report.rho.images.size() != nu.generators.size()) return false;
        for (size_t i = 0; i < nu.generators.size(); ++i) {
            PlaneAut g = specialize(nu.generators[i], a);
            if (compose(compose(p, g), p.inv()).forward != constant_affine(report.rho.images[i]).to_endo()) return false;
        }
        return true;
    } catch (const MathError&) {
        return false;
    }
}

}  // namespace pa

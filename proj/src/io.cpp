#include "planeaut/io.hpp"

namespace pa::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw SchemaError(what); }

const Json& member(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) bad(std::string("missing \"") + key + "\"");
    return j.at(key);
}

int as_int(const Json& j, const char* what)
{
    if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
    return j.get<int>();
}

mpq_class rational_from_json(const Json& j)
{
    if (j.is_number_integer()) return mpq_class(j.get<long>());
    if (!j.is_string()) bad("rational must be a \"p/q\" string");
    const std::string s = j.get<std::string>();
    mpq_class q;
    if (s.empty() || q.set_str(s, 10) != 0) bad("bad rational \"" + s + "\"");
    if (q.get_den() == 0) bad("zero denominator in \"" + s + "\"");
    q.canonicalize();
    return q;
}

Field field_of(const Json& j, const std::optional<Field>& fallback)
{
    if (j.is_object() && j.contains("field")) {
        if (!j.at("field").is_string()) bad("\"field\" must be a string");
        Field f = Field::parse(j.at("field").get<std::string>());
        if (fallback && !(*fallback == f)) bad("field " + f.name() + " conflicts with " + fallback->name());
        return f;
    }
    if (!fallback) bad("missing \"field\"");
    return *fallback;
}

NPoly npoly_from_json(const Json& j, const Field& base)
{
    if (!j.is_array()) bad("coefficient list expected");
    NPoly p;
    for (const auto& c : j) p.push_back(num_from_json(c, base));
    up::trim(p);
    return p;
}

Json npoly_to_json(const NPoly& p, bool cyclotomic)
{
    Json a = Json::array();
    for (const auto& c : p) a.push_back(to_json(c, cyclotomic));
    return a;
}

Json nums_to_json(const std::vector<Num>& v, bool cyclotomic)
{
    Json a = Json::array();
    for (const auto& c : v) a.push_back(to_json(c, cyclotomic));
    return a;
}

}  // namespace

Json to_json(const Num& a, bool cyclotomic)
{
    if (!cyclotomic) return a.to_rational().get_str();
    Json c = Json::array();
    for (const auto& q : a.coeffs()) c.push_back(q.get_str());
    return Json{{"k", a.k()}, {"coeffs", c}};
}

Num num_from_json(const Json& j, const Field& base)
{
    if (j.is_object()) {
        int k = as_int(member(j, "k"), "k");
        if (k != base.k) bad("cyclotomic order " + std::to_string(k) + " outside " + base.name());
        const Json& c = member(j, "coeffs");
        if (!c.is_array() || static_cast<int>(c.size()) > euler_phi(k)) bad("coeffs must list at most phi(k) entries");
        up::Poly<mpq_class> v;
        for (const auto& x : c) v.push_back(rational_from_json(x));
        return Num::from_coeffs(k, v);
    }
    return Num(base.k, rational_from_json(j));
}

Json to_json(const Scalar& s)
{
    const Field& f = s.field();
    if (!f.ratfun) return to_json(s.num_value(), f.cyc);
    return Json{{"num", npoly_to_json(s.numer(), f.cyc)}, {"den", npoly_to_json(s.denom(), f.cyc)}};
}

Scalar scalar_from_json(const Json& j, const Field& f)
{
    if (f.ratfun && j.is_object() && j.contains("num")) {
        NPoly num = npoly_from_json(j.at("num"), f.base());
        NPoly den = j.contains("den") ? npoly_from_json(j.at("den"), f.base()) : NPoly{Num(f.k, 1)};
        if (den.empty()) bad("zero denominator");
        return Scalar::fraction(f, num, den);
    }
    return Scalar::from_num(f, num_from_json(j, f.base()));
}

Json to_json(const BiPoly& p)
{
    Json a = Json::array();
    for (const auto& [m, c] : p.terms()) a.push_back(Json::array({Json::array({m.first, m.second}), to_json(c)}));
    return a;
}

BiPoly poly_from_json(const Json& j, const Field& f)
{
    if (!j.is_array()) bad("polynomial must be a list of [[i, j], scalar] terms");
    BiPoly p(f);
    for (const auto& t : j) {
        if (!t.is_array() || t.size() != 2 || !t[0].is_array() || t[0].size() != 2) bad("term must be [[i, j], scalar]");
        int a = as_int(t[0][0], "exponent"), b = as_int(t[0][1], "exponent");
        if (a < 0 || b < 0) bad("negative exponent");
        p.add_term(a, b, scalar_from_json(t[1], f));
    }
    return p;
}

Json to_json(const PlaneEndo& f)
{
    return Json{{"field", f.field().name()}, {"components", Json::array({to_json(f.p1), to_json(f.p2)})}};
}

Json to_json(const PlaneAut& f) { return to_json(f.forward); }

PlaneEndo endo_from_json(const Json& j, const std::optional<Field>& fallback)
{
    Field f = field_of(j, fallback);
    const Json& c = member(j, "components");
    if (!c.is_array() || c.size() != 2) bad("\"components\" must hold two polynomials");
    return {poly_from_json(c[0], f), poly_from_json(c[1], f)};
}

PlaneAut aut_from_json(const Json& j, const std::optional<Field>& fallback)
{
    return invert(endo_from_json(j, fallback));
}

Json matrix_to_json(const Affine& a)
{
    return Json::array({Json::array({to_json(a.m11), to_json(a.m12)}), Json::array({to_json(a.m21), to_json(a.m22)})});
}

Affine matrix_from_json(const Json& j, const Field& f)
{
    if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2 || !j[1].is_array() || j[1].size() != 2)
        bad("matrix must be [[a, b], [c, d]]");
    Affine a = Affine::linear(scalar_from_json(j[0][0], f), scalar_from_json(j[0][1], f), scalar_from_json(j[1][0], f),
                              scalar_from_json(j[1][1], f));
    if (a.det().is_zero()) bad("singular matrix");
    return a;
}

Json affine_to_json(const Affine& a)
{
    Json r{{"matrix", matrix_to_json(a)}};
    if (!a.is_linear()) r["translation"] = Json::array({to_json(a.b1), to_json(a.b2)});
    return r;
}

Json to_json(const LinearRep& rho)
{
    if (rho.torus_weights) return Json{{"torus_weights", {rho.torus_weights->first, rho.torus_weights->second}}};
    Json a = Json::array();
    for (const auto& m : rho.images) a.push_back(matrix_to_json(m));
    return a;
}

LinearRep rep_from_json(const Json& j, const Field& f)
{
    LinearRep r;
    if (j.is_object()) {
        const Json& w = member(j, "torus_weights");
        if (!w.is_array() || w.size() != 2) bad("torus_weights must be [a, b]");
        r.torus_weights = std::pair{as_int(w[0], "weight"), as_int(w[1], "weight")};
        return r;
    }
    if (!j.is_array()) bad("rho must be a list of matrices");
    for (const auto& m : j) r.images.push_back(matrix_from_json(m, f));
    return r;
}

Json to_json(const GroupAction& G)
{
    static const char* kinds[] = {"cyclic", "finite-abelian", "diagonal-torus"};
    Json r{{"kind", kinds[static_cast<int>(G.kind)]}, {"field", G.field.name()}};
    if (G.kind == GroupAction::Kind::torus) {
        r["weights"] = {G.weights.first, G.weights.second};
        if (G.torus_conj) r["conjugator"] = to_json(*G.torus_conj);
        return r;
    }
    r["orders"] = G.orders;
    Json g = Json::array();
    for (const auto& x : G.generators) g.push_back(to_json(x));
    r["generators"] = g;
    return r;
}

GroupAction group_from_json(const Json& j, const std::optional<Field>& fallback)
{
    if (!j.is_object()) bad("group must be an object");
    std::string kind = member(j, "kind").is_string() ? j.at("kind").get<std::string>() : "";
    if (kind == "torus") kind = "diagonal-torus";
    if (kind == "finite_abelian") kind = "finite-abelian";
    std::optional<Field> f = fallback;
    if (j.contains("field")) f = field_of(j, fallback);
    if (kind == "diagonal-torus") {
        const Json& w = member(j, "weights");
        if (!w.is_array() || w.size() != 2) bad("weights must be [a, b]");
        std::optional<PlaneAut> conj;
        if (j.contains("conjugator")) conj = aut_from_json(j.at("conjugator"), f);
        Field tf = conj ? conj->field() : field_of(j, fallback);
        return GroupAction::torus(tf, as_int(w[0], "weight"), as_int(w[1], "weight"), conj);
    }
    if (kind != "cyclic" && kind != "finite-abelian") bad("unknown group kind \"" + kind + "\"");
    const Json& gens = member(j, "generators");
    const Json& ords = member(j, "orders");
    if (!gens.is_array() || !ords.is_array() || gens.size() != ords.size() || gens.empty())
        bad("generators and orders must be lists of equal, nonzero length");
    std::vector<PlaneAut> g;
    std::vector<int> o;
    for (size_t i = 0; i < gens.size(); ++i) {
        g.push_back(aut_from_json(gens[i], f));
        if (!f) f = g.back().field();
        o.push_back(as_int(ords[i], "order"));
        if (o.back() < 1) bad("orders must be positive");
    }
    if (kind == "cyclic") {
        if (g.size() != 1) bad("a cyclic group has one generator");
        return GroupAction::cyclic(g[0], o[0]);
    }
    return GroupAction::finite_abelian(g, o);
}

Json to_json(const TameDecomposition& d)
{
    Json aff = Json::array(), el = Json::array();
    for (const auto& a : d.a) aff.push_back(affine_to_json(a));
    for (const auto& e : d.e) {
        Json p = Json::array();
        for (const auto& c : e.p) p.push_back(to_json(c));
        el.push_back(Json{{"alpha", to_json(e.alpha)}, {"beta", to_json(e.beta)}, {"beta1", to_json(e.beta1)}, {"p", p}});
    }
    return Json{{"polydegree", d.polydegree()}, {"affine", aff}, {"elementary", el}};
}

Json to_json(const CentralizerDescription& c)
{
    Json r{{"case", to_string(c.kind)}, {"d", c.d}, {"empty", c.empty}};
    if (c.empty) {
        r["reason"] = c.reason;
        return r;
    }
    r["s_subgroup"] = to_string(c.s_tag);
    r["exponents"] = Json{{"k", c.k}, {"l", c.l}};
    r["group"] = Json{{"d1", c.group.d1}, {"k", c.group.k}, {"swapped", c.group.swapped}};
    if (c.v) r["v"] = c.v;
    r["units"] = c.units;
    r["affine_coords"] = c.affine_coords;
    return r;
}

Json to_json(const KRTrace& t)
{
    Json steps = Json::array();
    for (const auto& s : t.steps)
        steps.push_back(Json{{"w_before", s.w_before}, {"w_after", s.w_after}, {"r1", s.r1}, {"r2", s.r2},
                             {"curve", to_json(s.curve)}, {"tau", to_json(s.tau)}});
    return Json{{"initial_w", t.initial_w}, {"steps", steps}};
}

Json to_json(const PoleRemoval& r)
{
    return Json{{"alpha", to_json(r.alpha)}, {"psi", to_json(r.psi)}, {"trace", to_json(r.trace)}};
}

Json to_json(const LinearizationReport& r, const GroupAction& nu)
{
    bool cyc = r.psi.field().cyc;
    Json digests = Json::array();
    for (const auto& d : r.digests)
        digests.push_back(Json{{"center", to_json(d.center, cyc)}, {"initial_w", d.initial_w}, {"w", d.w}});
    Json out{{"group", to_json(nu)},
             {"psi", to_json(r.psi)},
             {"rho", to_json(r.rho)},
             {"method", r.method},
             {"removed", nums_to_json(r.removed, cyc)},
             {"residual", nums_to_json(r.residual, cyc)},
             {"warnings", r.warnings},
             {"traces", digests},
             {"alpha", to_json(r.alpha)}};
    if (r.centralizer) out["centralizer"] = to_json(*r.centralizer);
    out["verified"] = r.verified;
    return out;
}

std::pair<LinearizationReport, GroupAction> report_from_json(const Json& j)
{
    GroupAction nu = group_from_json(member(j, "group"));
    LinearizationReport r;
    r.psi = aut_from_json(member(j, "psi"));
    const Field& f = r.psi.field();
    r.rho = rep_from_json(member(j, "rho"), f);
    if (j.contains("method") && j.at("method").is_string()) r.method = j.at("method").get<std::string>();
    auto centers = [&](const char* key) {
        std::vector<Num> v;
        if (!j.contains(key)) return v;
        if (!j.at(key).is_array()) bad(std::string("\"") + key + "\" must be a list");
        for (const auto& c : j.at(key)) v.push_back(num_from_json(c, f.ratfun ? f.base() : f));
        return v;
    };
    r.removed = centers("removed");
    r.residual = centers("residual");
    if (j.contains("warnings")) {
        if (!j.at("warnings").is_array()) bad("\"warnings\" must be a list");
        for (const auto& w : j.at("warnings")) {
            if (!w.is_string()) bad("warnings must be strings");
            r.warnings.push_back(w.get<std::string>());
        }
    }
    if (j.contains("traces")) {
        if (!j.at("traces").is_array()) bad("\"traces\" must be a list");
        for (const auto& d : j.at("traces")) {
            PoleDigest pd{num_from_json(member(d, "center"), f.ratfun ? f.base() : f),
                          as_int(member(d, "initial_w"), "initial_w"), {}};
            const Json& w = member(d, "w");
            if (!w.is_array()) bad("\"w\" must be a list");
            for (const auto& x : w) pd.w.push_back(as_int(x, "w"));
            r.digests.push_back(std::move(pd));
        }
    }
    r.alpha = j.contains("alpha") ? aut_from_json(j.at("alpha"), f) : PlaneAut{PlaneEndo::identity(f), PlaneEndo::identity(f)};
    if (j.contains("centralizer")) r.centralizer = endo_from_json(j.at("centralizer"), f);
    if (j.contains("verified") && j.at("verified").is_boolean()) r.verified = j.at("verified").get<bool>();
    return {r, nu};
}

}  // namespace pa::io

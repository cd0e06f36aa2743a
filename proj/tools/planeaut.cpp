#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "acceptance/suites.hpp"
#include "planeaut/io.hpp"

using namespace pa;
using io::Json;

namespace {

// Exit codes.
constexpr int kOk = 0, kUnverified = 1, kSchema = 2, kMath = 3;

struct Options {
    std::string input;
    std::string field;
    std::string at;
    std::string polydegree;
    std::string weight;
    std::string suite = "all";
    std::string output;
    int k = -1;
};

Json read_input(const std::string& in)
{
    std::string text;
    if (in.empty() || in == "-") {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
    } else if (in.front() == '{' || in.front() == '[') {
        text = in;
    } else {
        std::ifstream f(in);
        if (!f) throw SchemaError("cannot read " + in);
        std::stringstream ss;
        ss << f.rdbuf();
        text = ss.str();
    }
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw SchemaError(std::string("invalid JSON: ") + e.what());
    }
}

std::optional<Field> field_flag(const Options& o)
{
    if (o.field.empty()) return std::nullopt;
    return Field::parse(o.field);
}

std::vector<int> int_list(const std::string& s, const char* what)
{
    std::vector<int> v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            size_t used = 0;
            v.push_back(std::stoi(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw SchemaError(std::string(what) + " must be a comma-separated list of integers");
        }
    }
    return v;
}

Num center_flag(const Options& o, const Field& f)
{
    if (o.at.empty()) throw SchemaError("--at is required");
    Json j = o.at.front() == '{' ? read_input(o.at) : Json(o.at);
    return io::num_from_json(j, f.base());
}

// A group object, or the family form {"group": kind, "generators": ..., ...}.
GroupAction group_of(const Json& j, const std::optional<Field>& f)
{
    if (j.contains("group") && j.at("group").is_object()) return io::group_from_json(j.at("group"), f);
    if (j.contains("group") && j.at("group").is_string()) {
        Json g = j;
        g["kind"] = j.at("group");
        g.erase("group");
        return io::group_from_json(g, f);
    }
    return io::group_from_json(j, f);
}

// psi and rho from the input when present, otherwise from linearize_over_field.
Linearization start_of(const Json& j, const GroupAction& G)
{
    if (!j.contains("psi")) return linearize_over_field(G);
    Linearization l;
    l.psi = io::aut_from_json(j.at("psi"), G.field);
    if (!j.contains("rho")) throw SchemaError("\"psi\" needs \"rho\"");
    l.rho = io::rep_from_json(j.at("rho"), G.field);
    return l;
}

int run(const std::string& cmd, const Options& o, Json& out)
{
    auto fld = field_flag(o);
    if (cmd == "selftest") {
        auto seed = acceptance::seed_from_env();
        bool all = true;
        Json rs = Json::array();
        for (int id : acceptance::suite_criteria(o.suite)) {
            auto r = acceptance::run_criterion(id, seed);
            all = all && r.pass;
            rs.push_back(Json{{"criterion", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
            std::cerr << "criterion " << r.id << (r.pass ? " PASS" : " FAIL") << " (" << r.seconds << "s)\n";
        }
        out = Json{{"suite", o.suite}, {"seed", seed}, {"criteria", rs}, {"passed", all}};
        return all ? kOk : kUnverified;
    }
    if (cmd == "centralizer") {
        std::vector<int> w = o.weight.empty() ? std::vector<int>{} : int_list(o.weight, "--weight");
        if (w.size() != 2) throw SchemaError("--weight a,b is required");
        DiagonalGroup G = o.k > 0 ? DiagonalGroup::cyclic(o.k, w[0], w[1]) : DiagonalGroup::torus_weights(w[0], w[1]);
        if (o.polydegree.empty()) {
            out = io::to_json(centralizer_structure_noncyclic(G));
        } else {
            out = io::to_json(classify_Ad_centralizer(int_list(o.polydegree, "--polydegree"), G));
        }
        return kOk;
    }

    Json in = read_input(o.input);
    if (cmd == "compose") {
        Json f, g;
        if (in.is_array() && in.size() == 2) {
            f = in[0];
            g = in[1];
        } else if (in.is_object() && in.contains("f") && in.contains("g")) {
            f = in.at("f");
            g = in.at("g");
        } else {
            throw SchemaError("compose expects [f, g] or {\"f\": ..., \"g\": ...}");
        }
        out = io::to_json(compose(io::aut_from_json(f, fld), io::aut_from_json(g, fld)));
        return kOk;
    }
    if (cmd == "invert") {
        out = io::to_json(invert(io::endo_from_json(in, fld)).inv());
        return kOk;
    }
    if (cmd == "decompose") {
        out = io::to_json(decompose(io::endo_from_json(in, fld)));
        return kOk;
    }
    if (cmd == "polydegree") {
        out = Json{{"polydegree", polydegree(io::endo_from_json(in, fld))}};
        return kOk;
    }
    if (cmd == "linearize") {
        GroupAction G = group_of(in, fld);
        auto lin = linearize_over_field(G);
        bool ok = verify_linearization(lin.psi, G, lin.rho);
        out = Json{{"psi", io::to_json(lin.psi)}, {"rho", io::to_json(lin.rho)}, {"verified", ok}};
        return ok ? kOk : kUnverified;
    }
    if (cmd == "remove-pole") {
        GroupAction G = group_of(in, fld);
        auto start = start_of(in, G);
        DVRContext ctx(G.field, center_flag(o, G.field));
        out = io::to_json(remove_pole(start.psi, G, start.rho, ctx));
        return kOk;
    }
    if (cmd == "family") {
        GroupAction G = group_of(in, fld);
        Linearization start = in.contains("psi") ? start_of(in, G) : linearize_family_generic(G);
        validate_family(G);
        auto rep = remove_all_poles(start.psi, start.rho, G);
        out = io::to_json(rep, G);
        return rep.verified ? kOk : kUnverified;
    }
    if (cmd == "verify") {
        auto [rep, G] = io::report_from_json(in);
        PoleSet ps = pole_set(rep.psi);
        rep.residual = ps.centers;
        bool ok = verify_family(rep, G) && ps.empty();
        out = Json{{"verified", ok}};
        if (!o.at.empty()) {
            bool sp = verify_specialization(rep, G, center_flag(o, G.field));
            out["specialization"] = sp;
            ok = ok && sp;
        }
        return ok ? kOk : kUnverified;
    }
    throw SchemaError("unknown subcommand " + cmd);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Polynomial automorphisms of the affine plane: decomposition, centralizers, linearization."};
    app.require_subcommand(1);
    Options o;
    app.add_option("--output", o.output, "write JSON here instead of standard output");
    app.add_option("--field", o.field, "field descriptor for inputs without one, e.g. Q(zeta3)(x)");

    auto with_input = [&](CLI::App* s) { s->add_option("input", o.input, "JSON file, inline JSON, or - for stdin"); };
    struct Sub {
        const char* name;
        const char* help;
    };
    const Sub subs[] = {
        {"compose", "f o g for input [f, g]"},
        {"invert", "inverse automorphism"},
        {"decompose", "tame decomposition"},
        {"polydegree", "polydegree of an automorphism"},
        {"centralizer", "centralizer description for --polydegree, --k, --weight"},
        {"linearize", "linearize a group action over its field"},
        {"remove-pole", "remove the pole of a linearizer at --at"},
        {"family", "linearize a family over kappa[x]"},
        {"verify", "re-check a family report"},
        {"selftest", "run acceptance suites"},
    };
    for (const auto& s : subs) {
        CLI::App* c = app.add_subcommand(s.name, s.help);
        c->fallthrough();
        std::string n = s.name;
        if (n == "centralizer") {
            c->add_option("--polydegree", o.polydegree, "comma-separated polydegree; omit for the non-cyclic structure");
            c->add_option("--k", o.k, "group order; 0 or omitted for a torus");
            c->add_option("--weight", o.weight, "exponents a,b of (zeta_k^a z1, zeta_k^b z2) or torus weights");
        } else if (n == "selftest") {
            c->add_option("--suite", o.suite, "decompose, fiber, centralizer, kr, family, negative or all");
        } else {
            with_input(c);
            if (n == "remove-pole" || n == "verify") c->add_option("--at", o.at, "center a in the base field");
        }
    }

    Json out;
    int code = kOk;
    try {
        app.parse(argc, argv);
        code = run(app.get_subcommands().front()->get_name(), o, out);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << e.what() << "\n";
        out = Json{{"error", "UsageError"}};
        code = kSchema;
    } catch (const SchemaError& e) {
        std::cerr << e.what() << "\n";
        out = Json{{"error", "SchemaError"}};
        code = kSchema;
    } catch (const MathError& e) {
        std::cerr << e.what() << "\n";
        out = Json{{"error", e.code()}};
        code = kMath;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        out = Json{{"error", "InternalError"}};
        code = kMath;
    }
    std::string text = out.dump(2) + "\n";
    if (o.output.empty() || code == kSchema || code == kMath) {
        std::cout << text;
    } else {
        std::ofstream f(o.output);
        if (!f) {
            std::cout << Json{{"error", "SchemaError"}}.dump(2) << "\n";
            return kSchema;
        }
        f << text;
    }
    return code;
}

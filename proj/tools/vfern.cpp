// vfern: batch frontend for the fern library.
//
// Exit codes: 0 success, 1 property failure, 2 malformed input.

#include "properties.hpp"

#include "vfern/census.hpp"
#include "vfern/generate.hpp"
#include "vfern/io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace vfern;

namespace {

struct Options {
    unsigned p = 2;
    unsigned e = 1;
    unsigned q = 0;
    unsigned m = 1;
    unsigned n = 2;
    std::string t;
    std::string basis;
    std::string flag;
    std::string lambda;
    std::vector<std::string> in;
    std::string out;
    double budget = 1e7;
    std::uint64_t seed = 0;
    bool exhaustive = false;
};

struct Failure {
    int code;
    std::string message;
};

ExtFieldPtr field_of(const Options& o)
{
    unsigned p = o.p, e = o.e;
    if (o.q) {
        try {
            std::tie(p, e) = split_prime_power(o.q);
        } catch (const std::exception& ex) {
            throw ParseError(ex.what());
        }
    }
    try {
        return field_make(p, e, o.m);
    } catch (const std::exception& ex) {
        throw ParseError(ex.what());
    }
}

unsigned q_of(const Options& o)
{
    if (o.q)
        return o.q;
    unsigned q = 1;
    for (unsigned i = 0; i < o.e; ++i)
        q *= o.p;
    return q;
}

std::vector<std::uint64_t> parse_list(const std::string& s, const char* what)
{
    std::vector<std::uint64_t> out;
    std::string tok;
    std::stringstream ss(s);
    while (std::getline(ss, tok, ',')) {
        if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
            throw ParseError(std::string("bad ") + what + " entry \"" + tok + "\"");
        out.push_back(std::stoull(tok));
    }
    return out;
}

std::vector<Elem> parse_elems(const Field& K, const std::string& s, const char* what)
{
    std::vector<Elem> out;
    for (auto x : parse_list(s, what)) {
        if (x >= K.order())
            throw ParseError(std::string(what) + " entry out of range");
        out.push_back(static_cast<Elem>(x));
    }
    return out;
}

std::vector<Vec> parse_vecs(const VectorSpace& V, const std::string& s)
{
    std::vector<Vec> out;
    for (auto x : parse_list(s, "basis")) {
        if (x >= V.size())
            throw ParseError("basis vector code out of range");
        out.push_back(static_cast<Vec>(x));
    }
    return out;
}

FernSpace space_of(const ExtFieldPtr& F, const Options& o)
{
    if (o.n == 0 || o.n > 8)
        throw ParseError("n must be between 1 and 8");
    VectorSpace amb(F->small, o.n);
    if (o.basis.empty())
        return standard_space(*F, o.n);
    const auto b = parse_vecs(amb, o.basis);
    if (b.size() != o.n)
        throw ParseError("basis must have n vectors");
    try {
        return make_space(amb, b);
    } catch (const std::invalid_argument& ex) {
        throw ParseError(ex.what());
    }
}

json read_json(const std::string& path)
{
    std::string text;
    if (path.empty() || path == "-") {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
    } else {
        std::ifstream f(path);
        if (!f)
            throw ParseError("cannot open " + path);
        std::stringstream ss;
        ss << f.rdbuf();
        text = ss.str();
    }
    try {
        return json::parse(text);
    } catch (const json::parse_error& ex) {
        throw ParseError(ex.what());
    }
}

Fern read_fern(const std::string& path)
{
    const json j = read_json(path);
    try {
        return fern_from_json(j);
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& ex) {
        throw ParseError(ex.what());
    }
}

class Output {
public:
    explicit Output(const std::string& path)
    {
        if (!path.empty() && path != "-") {
            file_.open(path);
            if (!file_)
                throw ParseError("cannot write " + path);
        }
    }
    std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

json fern_summary(const Fern& f)
{
    return {{"components", f.tree.size()}, {"nodes", f.tree.nodes.size()},
            {"flag", flag_key(f.space.amb, f.flag)}};
}

constexpr std::uint64_t kMaxCensusFlags = 2000000;

int cmd_census(const Options& o, const std::string& echo)
{
    field_of(o);
    if (o.n == 0)
        throw ParseError("n must be positive");
    const unsigned q = q_of(o);
    if (o.n > 8 || flag_count(o.n, q) > kMaxCensusFlags)
        throw ParseError("more than " + std::to_string(kMaxCensusFlags) + " flags to enumerate");
    CountReport r = bv_count_strata(o.n, q, o.m);
    try {
        r.oracle = bv_count_bruteforce(o.n, q, o.m, o.budget);
    } catch (const BudgetExceeded& ex) {
        if (o.exhaustive)
            throw Failure{2, ex.what()};
    }
    Output out(o.out);
    out.os() << "# " << echo << '\n';
    write_csv(out.os(), r);
    return r.agrees() ? 0 : 1;
}

int cmd_fiber(const Options& o, const std::string& echo)
{
    const auto F = field_of(o);
    const auto S = space_of(F, o);
    const auto t = parse_elems(*F->big, o.t, "t");
    if (t.size() + 1 != S.dim())
        throw ParseError("t needs n-1 entries");
    if (!o.flag.empty()) {
        Flag fl{Subspace::zero(S.amb)};
        for (auto d : parse_list(o.flag, "flag")) {
            if (d == 0 || d >= S.dim())
                throw ParseError("flag steps are interior dimensions");
            fl.push_back(Subspace::span(S.amb, std::vector<Vec>(S.basis.begin(), S.basis.begin() + d)));
        }
        fl.push_back(S.V);
        if (!chart_contains(*F, S, t, &fl))
            throw ParseError("t is not in the chart of the given flag");
    }
    if (!chart_contains(*F, S, t))
        throw ParseError("t is not a chart point");
    const auto X = fiber(F, S, t);
    json j = fern_to_json(X.fern);
    j["invocation"] = echo;
    Output out(o.out);
    out.os() << j.dump(1) << '\n';
    return 0;
}

int cmd_classify(const Options& o, const std::string& echo)
{
    const Fern f = read_fern(o.in.empty() ? "" : o.in.front());
    const auto& F = *f.tree.field;
    FernSpace S = adapted_space(f);
    if (!o.basis.empty()) {
        const auto b = parse_vecs(f.space.amb, o.basis);
        try {
            S = make_space(f.space.amb, b);
        } catch (const std::invalid_argument& ex) {
            throw ParseError(ex.what());
        }
        if (S.V != f.space.V)
            throw ParseError("basis does not span V");
    }
    const auto cp = classify(f);
    json j;
    j["invocation"] = echo;
    j["class_point"] = class_point_to_json(f.space.amb, *F.big, cp);
    json b = json::array();
    for (Vec v : S.basis)
        b.push_back(vec_to_json(S.amb, v));
    j["chart_basis"] = b;
    j["flag"] = flag_to_json(f.space.amb, f.flag);
    int code = 0;
    try {
        json t = json::array();
        for (Elem x : chart_coords(F, cp, S))
            t.push_back(elem_to_json(*F.big, x));
        j["t"] = t;
    } catch (const std::invalid_argument& ex) {
        j["t"] = nullptr;
        j["error"] = ex.what();
        code = 1;
    }
    j["bv_member"] = bv_member(F, cp);
    j["uf_member"] = uf_member(F, cp, f.flag);
    Output out(o.out);
    out.os() << j.dump(1) << '\n';
    return code;
}

int cmd_roundtrip(const Options& o, const std::string& echo)
{
    const auto F = field_of(o);
    if (o.n == 0 || o.n > 4)
        throw ParseError("n must be between 1 and 4");
    VectorSpace amb(F->small, o.n);
    std::vector<FernSpace> charts;
    if (o.exhaustive) {
        for (const auto& fl : complete_flags_of(amb, Subspace::whole(amb)))
            charts.push_back(make_space(amb, adapted_basis(amb, fl)));
    } else {
        charts.push_back(space_of(F, o));
    }
    Output out(o.out);
    out.os() << json{{"invocation", echo}}.dump() << '\n';
    std::size_t pass = 0, total = 0;
    for (const auto& S : charts)
        for (const auto& t : chart_points(*F, S)) {
            const auto X = fiber(F, S, t);
            bool ok = X.fern.flag == X.stratum.flag;
            std::vector<Elem> back;
            if (ok) {
                back = chart_coords(*F, classify(X.fern), S);
                ok = back == t && are_isomorphic(fiber(F, S, back).fern.tree, X.fern.tree).has_value();
            }
            json rec;
            json tj = json::array();
            for (Elem x : t)
                tj.push_back(elem_to_json(*F->big, x));
            json bj = json::array();
            for (Vec v : S.basis)
                bj.push_back(vec_to_json(amb, v));
            rec["t"] = tj;
            rec["basis"] = bj;
            rec["stratum"] = flag_key(amb, X.stratum.flag);
            rec["fiber"] = fern_summary(X.fern);
            rec["roundtrip_ok"] = ok;
            out.os() << rec.dump() << '\n';
            pass += ok;
            ++total;
        }
    out.os() << json{{"points", total}, {"passed", pass}}.dump() << '\n';
    return pass == total ? 0 : 1;
}

int cmd_contract(const Options& o, const std::string& echo)
{
    const Fern f = read_fern(o.in.empty() ? "" : o.in.front());
    if (o.basis.empty())
        throw ParseError("contract needs --basis generators of the target subspace");
    const auto W = Subspace::span(f.space.amb, parse_vecs(f.space.amb, o.basis));
    if (W.dim() == 0 || !W.subset_of(f.space.V))
        throw ParseError("target must be a nonzero subspace of V");
    json j = fern_to_json(contract_fern(f, W));
    j["invocation"] = echo;
    Output out(o.out);
    out.os() << j.dump(1) << '\n';
    return 0;
}

int cmd_graft(const Options& o, const std::string& echo)
{
    if (o.in.size() != 2)
        throw ParseError("graft needs --in SUB --in QUOT");
    const Fern sub = read_fern(o.in[0]);
    const Fern quot = read_fern(o.in[1]);
    if (sub.space.amb.n() != quot.space.amb.n() || sub.tree.field->q() != quot.tree.field->q() ||
        sub.tree.field->m != quot.tree.field->m)
        throw ParseError("ferns live in different spaces");
    const auto U = o.basis.empty() ? quot.space.V.basis() : parse_vecs(sub.space.amb, o.basis);
    Fern g;
    try {
        g = graft(sub, quot, U);
    } catch (const std::invalid_argument& ex) {
        throw ParseError(ex.what());
    }
    json j = fern_to_json(g);
    j["invocation"] = echo;
    Output out(o.out);
    out.os() << j.dump(1) << '\n';
    return 0;
}

int cmd_drinfeld(const Options& o, const std::string& echo)
{
    ExtFieldPtr F;
    FernSpace S;
    std::map<Vec, Elem> lambda;
    if (!o.in.empty()) {
        const Fern f = read_fern(o.in.front());
        if (!f.smooth())
            throw ParseError("drinfeld needs a smooth fern");
        F = f.tree.field;
        S = f.space;
        lambda = line_data(f).values;
    } else {
        F = field_of(o);
        S = space_of(F, o);
        const auto vals = parse_elems(*F->big, o.lambda, "lambda");
        if (vals.size() != S.dim())
            throw ParseError("lambda needs one value per basis vector");
        lambda = extend_linear(*F, S, vals);
    }
    AdditivePoly psi;
    try {
        psi = drinfeld_psi(*F, S, lambda);
    } catch (const std::invalid_argument& ex) {
        throw ParseError(ex.what());
    }
    const auto check = check_psi(*F, S, lambda, psi);
    Output out(o.out);
    out.os() << "# " << echo << '\n';
    out.os() << "exponent,coefficient\n";
    for (std::size_t k = 0; k < psi.coeffs.size(); ++k)
        if (psi.coeffs[k] != 0)
            out.os() << k << ",\"" << elem_to_json(*F->big, psi.coeffs[k]).dump() << "\"\n";
    out.os() << "check,q_powers=" << check.q_powers << " linear_is_t=" << check.linear_is_t
             << " degree=" << check.degree << " kills_lattice=" << check.kills_lattice
             << " kernel_exact=" << check.kernel_exact << '\n';
    return check.ok() ? 0 : 1;
}

int cmd_verify(const Options& o, const std::string& echo)
{
    Output out(o.out);
    out.os() << "# " << echo << '\n';
    out.os() << "module,property,status,detail\n";
    bool all = true;
    for (const auto& r : run_properties(o.seed)) {
        out.os() << r.module << ',' << r.name << ',' << (r.ok ? "PASS" : "FAIL") << ",\"" << r.detail << "\"\n";
        all = all && r.ok;
    }
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"vfern: stable curves, ferns and the universal family over finite fields"};
    app.require_subcommand(1);
    Options o;
    std::string echo = "vfern";
    for (int i = 1; i < argc; ++i)
        echo += std::string(" ") + argv[i];

    auto field_opts = [&](CLI::App* c) {
        c->add_option("--p", o.p, "characteristic");
        c->add_option("--e", o.e, "q = p^e");
        c->add_option("--q", o.q, "size of the scalar field (overrides --p/--e)");
        c->add_option("--m", o.m, "degree of the big field over F_q");
        c->add_option("--n", o.n, "dimension of V");
    };
    auto io_opts = [&](CLI::App* c) {
        c->add_option("--in", o.in, "input fern JSON (default stdin)");
        c->add_option("--out", o.out, "output path (default stdout)");
    };

    auto* census = app.add_subcommand("census", "strata and brute-force point counts of the compactified period domain");
    field_opts(census);
    census->add_option("--budget", o.budget, "largest oracle enumeration");
    census->add_flag("--exhaustive", o.exhaustive, "fail instead of skipping an oversized oracle");
    census->add_option("--out", o.out, "output path");

    auto* fib = app.add_subcommand("fiber", "fern over a chart point");
    field_opts(fib);
    fib->add_option("--t", o.t, "chart coordinates as comma-separated field element codes");
    fib->add_option("--basis", o.basis, "flag basis as comma-separated vector codes");
    fib->add_option("--flag", o.flag, "interior step dimensions of the chart flag");
    fib->add_option("--out", o.out, "output path");

    auto* cls = app.add_subcommand("classify", "class point and chart coordinates of a fern");
    io_opts(cls);
    cls->add_option("--basis", o.basis, "chart basis (default: adapted to the fern's flag)");

    auto* rt = app.add_subcommand("roundtrip", "fiber -> classify -> fiber over chart points");
    field_opts(rt);
    rt->add_option("--basis", o.basis, "chart basis when not exhaustive");
    rt->add_flag("--exhaustive", o.exhaustive, "sweep every complete-flag chart");
    rt->add_option("--out", o.out, "output path");

    auto* con = app.add_subcommand("contract", "contract a fern to a subspace");
    io_opts(con);
    con->add_option("--basis", o.basis, "generators of the subspace as vector codes");

    auto* gr = app.add_subcommand("graft", "graft a fern onto the marks of another");
    io_opts(gr);
    gr->add_option("--basis", o.basis, "basis of the complement U (default: the quotient's space)");

    auto* dr = app.add_subcommand("drinfeld", "additive polynomial psi_t of a lattice");
    field_opts(dr);
    io_opts(dr);
    dr->add_option("--basis", o.basis, "basis of V as vector codes");
    dr->add_option("--lambda", o.lambda, "values on the basis as field element codes");

    auto* ver = app.add_subcommand("verify", "property suite");
    ver->add_option("--seed", o.seed, "seed for randomized properties");
    ver->add_option("--out", o.out, "output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*census)
            return cmd_census(o, echo);
        if (*fib)
            return cmd_fiber(o, echo);
        if (*cls)
            return cmd_classify(o, echo);
        if (*rt)
            return cmd_roundtrip(o, echo);
        if (*con)
            return cmd_contract(o, echo);
        if (*gr)
            return cmd_graft(o, echo);
        if (*dr)
            return cmd_drinfeld(o, echo);
        if (*ver)
            return cmd_verify(o, echo);
    } catch (const Failure& f) {
        std::cerr << "vfern: " << f.message << '\n';
        return f.code;
    } catch (const ParseError& e) {
        std::cerr << "vfern: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "vfern: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "vfern: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

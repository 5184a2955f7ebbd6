#include "commands.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <set>
#include <sstream>

#include "twistfact/error.hpp"
#include "twistfact/json_io.hpp"
#include "twistfact/kernels.hpp"

namespace twistfact::cli {

namespace {

using io::Json;

struct Options {
    bool json = false;
    std::string spec, in, orientation = "row", solver = "brute", check, word, mode = "unitri", family, params, out_file;
    std::string exec = "parallel";
    int max_k = 64, n = 3, length = 0, count = 500, max_len = 20;
    std::uint64_t samples = 1000, seed = 1;
};

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

std::string yes(bool b) { return b ? "true" : "false"; }

RowSolver make_solver(const InvolutiveRing& r, const std::string& name) {
    if (name == "brute") return brute_row_solver(r);
    if (name == "semilocal") return semilocal_row_solver(r, maximal_ideals(r));
    throw InputError("unknown solver '" + name + "' (brute, semilocal)");
}

int cmd_ring_report(const Options& o, std::ostream& out) {
    auto r = InvolutiveRing::parse(o.spec);
    auto rep = io::ring_report(r);
    if (o.json) {
        emit(out, io::ring_report_json(rep));
    } else {
        out << "spec " << rep.spec << "\nsize " << rep.size << "\nsr1 " << yes(rep.sr1) << "\nssr1 " << yes(rep.ssr1)
            << "\ntheta_complete " << yes(rep.theta_complete) << "\nc_length "
            << (rep.c_length ? std::to_string(*rep.c_length) : "none") << "\nb1_size " << rep.b1_size
            << "\napair_size " << rep.apair_size << "\napair_star_size " << rep.apair_star_size << "\nmax_ideals "
            << rep.max_ideals << "\n";
        if (rep.apair_star_size == 0) out << "note A(R)* is empty\n";
    }
    return ok;
}

int cmd_ring_ideals(const Options& o, std::ostream& out) {
    auto r = InvolutiveRing::parse(o.spec);
    auto ideals = maximal_ideals(r);
    if (o.json) {
        emit(out, io::ideals_json(r, ideals));
        return ok;
    }
    for (std::size_t i = 0; i < ideals.ideals.size(); ++i) {
        out << "m" << i + 1 << " (" << ideals.ideals[i].size() << "):";
        for (Elem e : ideals.ideals[i].members) out << " " << r.format(e);
        out << "\n";
    }
    out << "jacobson (" << ideals.jacobson.size() << "):";
    for (Elem e : ideals.jacobson.members) out << " " << r.format(e);
    out << "\n";
    return ok;
}

int cmd_clength(const Options& o, std::ostream& out) {
    auto r = InvolutiveRing::parse(o.spec);
    auto cert = c_length(r, o.max_k);
    if (o.json) {
        emit(out, io::clength_json(r, cert));
        return ok;
    }
    out << "spec " << r.spec() << "\ntheta_complete " << yes(cert.theta_complete) << "\nc_length "
        << (cert.theta_complete && cert.k ? std::to_string(*cert.k) : "exhausted") << "\nb1_size " << cert.b1.size()
        << "\nc_even_size " << cert.c_even.size() << "\nc_odd_size " << cert.c_odd.size() << "\n";
    return ok;
}

void print_form(std::ostream& out, const InvolutiveRing& r, const su3::FactoredForm& f, bool verified) {
    out << "shape " << (f.shape().empty() ? "none" : f.shape()) << "\n";
    if (f.head) out << "head " << r.format(*f.head) << "\n";
    for (const auto& x : f.factors)
        out << su3::sign_char(x.sign) << " (" << r.format(x.pair.t) << ", " << r.format(x.pair.u) << ")\n";
    out << "verified " << yes(verified) << "\n";
}

int cmd_su3_gauss(const Options& o, std::ostream& out) {
    auto r = InvolutiveRing::parse(o.spec);
    Matrix a = io::matrix_from_json(r, io::read_json_file(o.in));
    auto f = su3::gauss_decompose(r, a, su3::parse_orientation(o.orientation), make_solver(r, o.solver));
    bool verified = su3::evaluate(r, f) == a;
    if (o.json) emit(out, io::factorization_json(r, a, f));
    else print_form(out, r, f, verified);
    return verified ? ok : property_failed;
}

int cmd_su3_unitri(const Options& o, std::ostream& out) {
    auto r = InvolutiveRing::parse(o.spec);
    Matrix a = io::matrix_from_json(r, io::read_json_file(o.in));
    auto cert = c_length(r);
    auto res = su3::unitri_decompose(r, a, cert, make_solver(r, o.solver));
    bool verified = su3::evaluate(r, res.form) == a;
    if (o.json) emit(out, io::factorization_json(r, a, res.form));
    else print_form(out, r, res.form, verified);
    return verified ? ok : property_failed;
}

int cmd_su3_relations(const Options& o, std::ostream& out) {
    auto r = InvolutiveRing::parse(o.spec);
    auto rep = su3::relation_suite(r, o.samples, o.seed);
    if (o.json) {
        Json passes = Json::object();
        for (const auto& [tag, n] : rep.passes) passes[tag] = n;
        emit(out, Json{{"ring", r.spec()},
                       {"samples", o.samples},
                       {"seed", o.seed},
                       {"passes", passes},
                       {"violations", rep.violations},
                       {"first_counterexample", rep.first_counterexample ? Json(*rep.first_counterexample) : Json(nullptr)}});
    } else {
        for (const auto& [tag, n] : rep.passes) out << tag << " " << n << "\n";
        out << "violations " << rep.violations << "\n";
        if (rep.first_counterexample) out << "first " << *rep.first_counterexample << "\n";
    }
    return rep.violations == 0 ? ok : property_failed;
}

std::vector<std::vector<Matrix>> alternating_steps(const InvolutiveRing& r, int length, su3::Sign first) {
    std::vector<std::vector<Matrix>> steps;
    auto plus = kernels::unipotents(r, su3::Sign::plus), minus = kernels::unipotents(r, su3::Sign::minus);
    for (int i = 0; i < length; ++i) {
        bool p = (i % 2 == 0) == (first == su3::Sign::plus);
        steps.push_back(p ? plus : minus);
    }
    return steps;
}

int cmd_su3_enumerate(const Options& o, std::ostream& out) {
    auto r = InvolutiveRing::parse(o.spec);
    const Caps caps = Caps::from_env();
    const auto exec = kernels::parse_exec(o.exec);
    auto group = su3::su3_enumerate(r, caps);
    Json j{{"ring", r.spec()}, {"order", group.size()}};
    bool good = true;
    if (o.check == "gauss") {
        auto solver = make_solver(r, o.solver);
        Json orient = Json::object();
        for (auto ori : {su3::Orientation::row, su3::Orientation::last_row, su3::Orientation::last_col,
                         su3::Orientation::first_col}) {
            auto bad = kernels::gauss_roundtrip(r, group, ori, solver, exec);
            orient[su3::orientation_name(ori)] = bad.size();
            good = good && bad.empty();
        }
        // T U- U+ U- as a set
        std::vector<Matrix> torus;
        for (Elem u : r.members(Subset::units)) torus.push_back(su3::h_elem(r, u));
        auto table = kernels::layered_products(r, torus, alternating_steps(r, 3, su3::Sign::minus), exec, caps.search);
        std::vector<Matrix> prod = table.last();
        std::sort(prod.begin(), prod.end());
        bool equal = prod == group;
        good = good && equal;
        j["check"] = Json{{"kind", "gauss"}, {"roundtrip_failures", orient}, {"product_set_size", prod.size()},
                          {"product_set_equals_group", equal}};
    } else if (o.check == "unitri") {
        int len = o.length;
        if (len <= 0) {
            auto cert = c_length(r);
            if (!cert.theta_complete || !cert.k) throw HypothesisError(r.spec() + " is not theta-complete");
            len = 2 * *cert.k + 3;
        }
        auto table = kernels::layered_products(r, {mat::identity(r, 3)}, alternating_steps(r, len, su3::Sign::plus),
                                               exec, caps.search);
        std::string shape;
        for (int i = 0; i < len; ++i) shape += i % 2 == 0 ? '+' : '-';
        bool covered = table.last().size() == group.size();
        good = covered;
        j["check"] = Json{{"kind", "unitri"}, {"length", len}, {"shape", shape}, {"covered", table.last().size()},
                          {"coverage", covered}};
    } else if (!o.check.empty()) {
        throw InputError("unknown check '" + o.check + "' (gauss, unitri)");
    }
    if (o.json) {
        emit(out, j);
    } else {
        out << "ring " << r.spec() << "\norder " << group.size() << "\n";
        if (j.contains("check")) {
            for (auto it = j["check"].begin(); it != j["check"].end(); ++it)
                out << it.key() << " " << (it->is_string() ? it->get<std::string>() : it->dump()) << "\n";
        }
    }
    return good ? ok : property_failed;
}

int cmd_sun_factor(const Options& o, std::ostream& out) {
    auto r = InvolutiveRing::parse(o.spec);
    rank::TavgenContext ctx(r, o.n, rank::parse_mode(o.mode));
    auto word = io::word_from_json(r, ctx.roots(), io::read_json_file(o.word));
    auto f = rank::tavgen_factor(ctx, word);
    Matrix input = rank::word_eval(r, ctx.roots(), word);
    bool verified = rank::evaluate(r, o.n, f) == input;
    bool shape_ok = f.shape() == ctx.target_shape();
    if (o.json) {
        Json j = io::rank_form_json(r, ctx.roots(), input, f);
        j["target_shape"] = ctx.target_shape();
        j["widened"] = ctx.widened();
        emit(out, j);
    } else {
        out << "shape " << f.shape() << "\ntarget " << ctx.target_shape() << "\nfactors " << f.factors.size()
            << "\nverified " << yes(verified) << "\n";
    }
    return verified && shape_ok ? ok : property_failed;
}

int cmd_sun_check(const Options& o, std::ostream& out) {
    auto r = InvolutiveRing::parse(o.spec);
    rank::TavgenContext ctx(r, o.n, rank::parse_mode(o.mode));
    std::mt19937_64 rng(o.seed);
    int verified = 0, shaped = 0;
    for (int i = 0; i < o.count; ++i) {
        auto w = rank::random_word(r, ctx.roots(), o.max_len, rng);
        auto f = rank::tavgen_factor(ctx, w);
        verified += rank::evaluate(r, o.n, f) == rank::word_eval(r, ctx.roots(), w);
        shaped += f.shape() == ctx.target_shape();
    }
    bool good = verified == o.count && shaped == o.count;
    if (o.json) {
        emit(out, Json{{"ring", r.spec()}, {"n", o.n}, {"mode", rank::mode_name(ctx.mode())}, {"seed", o.seed},
                       {"count", o.count}, {"target_shape", ctx.target_shape()}, {"widened", ctx.widened()},
                       {"verified", verified}, {"shape_ok", shaped}});
    } else {
        out << "target " << ctx.target_shape() << "\nverified " << verified << "/" << o.count << "\nshape_ok " << shaped
            << "/" << o.count << "\n";
    }
    return good ? ok : property_failed;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        if (!item.empty()) out.push_back(item);
    return out;
}

std::string field_spec(const std::string& q) {
    int v = 0;
    try {
        v = std::stoi(q);
    } catch (const std::exception&) {
        throw InputError("expected an integer parameter, got '" + q + "'");
    }
    return "gf(" + std::to_string(v * v) + ")";
}

// gf: q -> gf(q^2); zi: n -> zi(n); dual: q -> dual(gf(q^2)); prodc: a:b -> prodc(gf(a^2),gf(b^2))
std::string family_spec(const std::string& family, const std::string& p) {
    if (family == "gf") return field_spec(p);
    if (family == "zi") return "zi(" + p + ")";
    if (family == "dual") return "dual(" + field_spec(p) + ")";
    if (family == "prodc") {
        auto parts = split(p, ':');
        if (parts.size() != 2) throw InputError("prodc parameters look like a:b, got '" + p + "'");
        return "prodc(" + field_spec(parts[0]) + "," + field_spec(parts[1]) + ")";
    }
    throw InputError("unknown family '" + family + "' (gf, zi, dual, prodc)");
}

int cmd_tables(const Options& o, std::ostream& out) {
    std::ostringstream csv;
    csv << "spec,size,sr1,ssr1,theta_complete,c_length,apair_star_size\n";
    for (const auto& p : split(o.params, ',')) {
        auto r = InvolutiveRing::parse(family_spec(o.family, p));
        auto rep = io::ring_report(r);
        csv << '"' << rep.spec << "\"," << rep.size << "," << yes(rep.sr1) << "," << yes(rep.ssr1) << ","
            << yes(rep.theta_complete) << "," << (rep.c_length ? std::to_string(*rep.c_length) : "") << ","
            << rep.apair_star_size << "\n";
    }
    if (o.out_file.empty()) {
        out << csv.str();
    } else {
        std::ofstream f(o.out_file, std::ios::binary);
        if (!f) throw InputError("cannot write " + o.out_file);
        f << csv.str();
        if (o.json) emit(out, Json{{"family", o.family}, {"out", o.out_file}});
    }
    return ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Factorization toolkit for twisted special unitary groups over finite rings", "twistfact"};
    app.require_subcommand(1);
    std::function<int(const Options&, std::ostream&)> action;

    auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, auto fn) {
        auto* c = parent->add_subcommand(name, help);
        c->add_flag("--json", o.json, "Emit JSON");
        c->callback([&action, fn] { action = fn; });
        return c;
    };

    auto* ring = app.add_subcommand("ring", "Ring verdicts")->require_subcommand(1);
    leaf(ring, "report", "SR1, SSR1, theta-completeness and sizes", cmd_ring_report)
        ->add_option("spec", o.spec, "Ring spec")->required();
    leaf(ring, "ideals", "Maximal ideals and the Jacobson radical", cmd_ring_ideals)
        ->add_option("spec", o.spec, "Ring spec")->required();

    auto* cond = app.add_subcommand("cond", "Ring conditions")->require_subcommand(1);
    auto* cl = leaf(cond, "clength", "C-length certificate", cmd_clength);
    cl->add_option("spec", o.spec, "Ring spec")->required();
    cl->add_option("--max-k", o.max_k, "Largest k to grow B_2k to");

    auto* su3c = app.add_subcommand("su3", "SU(3,R) operations")->require_subcommand(1);
    auto* g = leaf(su3c, "gauss", "Triangular decomposition of a matrix", cmd_su3_gauss);
    g->add_option("--ring", o.spec)->required();
    g->add_option("--in", o.in, "Matrix JSON file")->required();
    g->add_option("--orientation", o.orientation, "row, lastrow, lastcol, firstcol");
    g->add_option("--solver", o.solver, "brute or semilocal");
    auto* u = leaf(su3c, "unitri", "Unitriangular factorization of a matrix", cmd_su3_unitri);
    u->add_option("--ring", o.spec)->required();
    u->add_option("--in", o.in, "Matrix JSON file")->required();
    u->add_option("--solver", o.solver, "brute or semilocal");
    auto* rel = leaf(su3c, "relations", "Check the generator identities", cmd_su3_relations);
    rel->add_option("--ring", o.spec)->required();
    rel->add_option("--samples", o.samples, "Sample count; 0 for exhaustive");
    rel->add_option("--seed", o.seed);
    auto* en = leaf(su3c, "enumerate", "Enumerate the group and optionally check a decomposition", cmd_su3_enumerate);
    en->add_option("--ring", o.spec)->required();
    en->add_option("--check", o.check, "gauss or unitri");
    en->add_option("--length", o.length, "Word length for the unitri check");
    en->add_option("--solver", o.solver, "brute or semilocal");
    en->add_option("--exec", o.exec, "serial or parallel");

    auto* sun = app.add_subcommand("sun", "SU(n,R) for n = 3, 4, 5")->require_subcommand(1);
    auto* sf = leaf(sun, "factor", "Factor a generator word", cmd_sun_factor);
    sf->add_option("--n", o.n)->required();
    sf->add_option("--ring", o.spec)->required();
    sf->add_option("--word", o.word, "Word JSON file")->required();
    sf->add_option("--mode", o.mode, "tri or unitri");
    auto* sc = leaf(sun, "check", "Factor seeded random words", cmd_sun_check);
    sc->add_option("--n", o.n)->required();
    sc->add_option("--ring", o.spec)->required();
    sc->add_option("--mode", o.mode, "tri or unitri");
    sc->add_option("--count", o.count);
    sc->add_option("--seed", o.seed);
    sc->add_option("--max-len", o.max_len);

    auto* t = leaf(&app, "tables", "Ring verdict table for a family", cmd_tables);
    t->add_option("--family", o.family, "gf, zi, dual, prodc")->required();
    t->add_option("--params", o.params, "Comma separated, e.g. 2,3,4 or 2:3")->required();
    t->add_option("--out", o.out_file, "CSV file; stdout when omitted");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? ok : input_error;
    }
    try {
        return action(o, out);
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        return input_error;
    } catch (const CapExceeded& e) {
        err << "cap exceeded: " << e.what() << "\n";
        return input_error;
    } catch (const HypothesisError& e) {
        err << "hypothesis failed: " << e.what() << "\n";
        return property_failed;
    } catch (const nlohmann::json::exception& e) {
        err << "input error: " << e.what() << "\n";
        return input_error;
    } catch (const InternalError& e) {
        err << "internal error: " << e.what() << "\n";
        return property_failed;
    }
}

}  // namespace twistfact::cli

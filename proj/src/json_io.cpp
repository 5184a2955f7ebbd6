#include "twistfact/json_io.hpp"

#include <fstream>

#include "twistfact/error.hpp"

namespace twistfact::io {

Json matrix_json(const InvolutiveRing& r, const Matrix& m) {
    return Json{{"ring", r.spec()}, {"rows", mat::to_literals(r, m)}};
}

Matrix matrix_from_json(const InvolutiveRing& r, const Json& j, int n) {
    if (!j.is_object() || !j.contains("rows")) throw InputError("matrix JSON needs a \"rows\" array");
    if (j.contains("ring") && j["ring"].get<std::string>() != r.spec())
        throw InputError("matrix is over " + j["ring"].get<std::string>() + ", expected " + r.spec());
    std::vector<std::vector<std::string>> rows;
    try {
        rows = j["rows"].get<std::vector<std::vector<std::string>>>();
    } catch (const nlohmann::json::exception&) {
        throw InputError("matrix rows must be arrays of element literals");
    }
    if (static_cast<int>(rows.size()) != n) throw InputError("expected " + std::to_string(n) + " rows");
    for (const auto& row : rows)
        if (static_cast<int>(row.size()) != n) throw InputError("expected " + std::to_string(n) + " entries per row");
    return mat::from_literals(r, rows);
}

Json factorization_json(const InvolutiveRing& r, const Matrix& input, const su3::FactoredForm& f) {
    Json factors = Json::array();
    for (const auto& x : f.factors)
        factors.push_back({{"sign", std::string(1, su3::sign_char(x.sign))}, {"t", r.format(x.pair.t)}, {"u", r.format(x.pair.u)}});
    return Json{{"input", matrix_json(r, input)},
                {"head", f.head ? Json(r.format(*f.head)) : Json(nullptr)},
                {"factors", factors},
                {"shape", f.shape()},
                {"verified", su3::evaluate(r, f) == input}};
}

Json rank_form_json(const InvolutiveRing& r, const rank::RootSystem& rs, const Matrix& input, const rank::RankForm& f) {
    Json factors = Json::array();
    for (const auto& x : f.factors)
        factors.push_back({{"sign", std::string(1, su3::sign_char(x.sign))}, {"rows", mat::to_literals(r, x.m)}});
    return Json{{"n", rs.n},
                {"input", matrix_json(r, input)},
                {"head", f.head ? Json(mat::to_literals(r, *f.head)) : Json(nullptr)},
                {"factors", factors},
                {"shape", f.shape()},
                {"verified", rank::evaluate(r, rs.n, f) == input}};
}

Json word_json(const InvolutiveRing& r, const rank::RootSystem& rs, const rank::GeneratorWord& w) {
    Json letters = Json::array();
    for (const auto& l : w.letters) {
        Json p;
        if (const auto* q = std::get_if<APair>(&l.param)) p = {{"t", r.format(q->t)}, {"u", r.format(q->u)}};
        else p = r.format(std::get<Elem>(l.param));
        letters.push_back({{"class", rs.classes[l.cls].name}, {"param", p}});
    }
    return Json{{"ring", r.spec()}, {"n", rs.n}, {"letters", letters}};
}

rank::GeneratorWord word_from_json(const InvolutiveRing& r, const rank::RootSystem& rs, const Json& j) {
    if (!j.is_object() || !j.contains("letters") || !j["letters"].is_array())
        throw InputError("word JSON needs a \"letters\" array");
    if (j.contains("ring") && j["ring"].get<std::string>() != r.spec())
        throw InputError("word is over " + j["ring"].get<std::string>() + ", expected " + r.spec());
    if (j.contains("n") && j["n"].get<int>() != rs.n)
        throw InputError("word is for n=" + std::to_string(j["n"].get<int>()) + ", expected " + std::to_string(rs.n));
    rank::GeneratorWord w;
    w.n = rs.n;
    for (const auto& l : j["letters"]) {
        if (!l.contains("class") || !l.contains("param")) throw InputError("each letter needs \"class\" and \"param\"");
        const int cls = rs.find(l["class"].get<std::string>());
        const auto& p = l["param"];
        rank::Param param;
        if (p.is_object()) {
            if (!p.contains("t") || !p.contains("u")) throw InputError("pair parameters need \"t\" and \"u\"");
            param = APair{r.parse_element(p["t"].get<std::string>()), r.parse_element(p["u"].get<std::string>())};
        } else if (p.is_string()) {
            param = r.parse_element(p.get<std::string>());
        } else {
            throw InputError("letter parameter must be a literal or {\"t\",\"u\"}");
        }
        rank::check_param(r, rs, cls, param);
        w.letters.push_back({cls, param});
    }
    return w;
}

RingReport ring_report(const InvolutiveRing& r, const Caps& caps) {
    RingReport rep;
    rep.spec = r.spec();
    rep.size = r.size();
    rep.sr1 = sr1_holds(r);
    rep.ssr1 = ssr1_holds(r, caps);
    auto cert = c_length(r);
    rep.theta_complete = cert.theta_complete;
    if (cert.theta_complete) rep.c_length = cert.k;
    rep.b1_size = cert.b1.size();
    rep.apair_size = apair_list(r).size();
    rep.apair_star_size = apair_list(r, true).size();
    rep.max_ideals = maximal_ideals(r).ideals.size();
    return rep;
}

Json ring_report_json(const RingReport& rep) {
    return Json{{"spec", rep.spec},
                {"size", rep.size},
                {"sr1", rep.sr1},
                {"ssr1", rep.ssr1},
                {"theta_complete", rep.theta_complete},
                {"c_length", rep.c_length ? Json(*rep.c_length) : Json(nullptr)},
                {"b1_size", rep.b1_size},
                {"apair_size", rep.apair_size},
                {"apair_star_size", rep.apair_star_size},
                {"max_ideals", rep.max_ideals}};
}

namespace {

Json literals(const InvolutiveRing& r, const std::vector<Elem>& xs) {
    Json a = Json::array();
    for (Elem e : xs) a.push_back(r.format(e));
    return a;
}

}  // namespace

Json ideals_json(const InvolutiveRing& r, const MaximalIdealList& ideals) {
    Json list = Json::array();
    for (const auto& m : ideals.ideals) list.push_back(literals(r, m.members));
    return Json{{"spec", r.spec()}, {"ideals", list}, {"jacobson", literals(r, ideals.jacobson.members)}};
}

Json clength_json(const InvolutiveRing& r, const ClengthCertificate& cert) {
    Json b1 = Json::array();
    for (Elem u : cert.b1) {
        const auto& w = *cert.witness[u.id];
        b1.push_back({{"u", r.format(u)}, {"t", r.format(w.t)}});
    }
    Json decomps = Json::array();
    if (cert.theta_complete)
        for (Elem u : r.members(Subset::units)) {
            Json fs = Json::array();
            for (const auto& f : decompose_unit(r, u, cert))
                fs.push_back({{"r", r.format(f.value)}, {"t", r.format(f.witness.t)}});
            decomps.push_back({{"unit", r.format(u)}, {"factors", fs}});
        }
    return Json{{"spec", r.spec()},
                {"theta_complete", cert.theta_complete},
                {"c_length", cert.theta_complete && cert.k ? Json(*cert.k) : Json("exhausted")},
                {"b1", b1},
                {"even_sizes", cert.even_sizes},
                {"odd_sizes", cert.odd_sizes},
                {"c_even_size", cert.c_even.size()},
                {"c_odd_size", cert.c_odd.size()},
                {"decompositions", decomps}};
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
}

}  // namespace twistfact::io

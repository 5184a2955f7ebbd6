#include "twistfact/twisted_rank.hpp"

#include <algorithm>

#include "twistfact/error.hpp"
#include "twistfact/kernels.hpp"

namespace twistfact::rank {

using su3::Sign;

namespace {

Matrix generator_with(const InvolutiveRing& r, const RootSystem& rs, int cls, const Param& p, ClassSigns s) {
    const auto& c = rs.classes[cls];
    Matrix m = mat::identity(r, rs.n);
    auto put = [&](Root a, Elem v, int eps) {
        Elem x = eps < 0 ? r.neg(v) : v;
        if (c.sign > 0) m(a.i, a.j) = x;
        else m(a.j, a.i) = x;
    };
    if (c.type == ClassType::A2) {
        const auto& q = std::get<APair>(p);
        // positive: t on alpha, eps1 bar(t) on bar(alpha); negative: the roles of t and bar(t) swap
        if (c.sign > 0) {
            put(c.orbit[0], q.t, 1);
            put(c.orbit[1], r.theta(q.t), s.eps1);
        } else {
            put(c.orbit[0], r.theta(q.t), s.eps1);
            put(c.orbit[1], q.t, 1);
        }
        put(c.orbit[2], q.u, s.eps2);
        return m;
    }
    Elem t = std::get<Elem>(p);
    put(c.orbit[0], t, 1);
    if (c.type == ClassType::A1x2) put(c.orbit[1], r.theta(t), s.eps1);
    return m;
}

Param compose(const InvolutiveRing& r, ClassType type, const Param& p, const Param& q) {
    // M(p) M(q) = M(q + p)
    if (type == ClassType::A2) return apair_compose(r, std::get<APair>(q), std::get<APair>(p));
    return r.add(std::get<Elem>(p), std::get<Elem>(q));
}

// Frozen output of solve_class_signs; the regression test re-solves over gf(9) and compares.
const std::vector<ClassSigns> kSigns3 = {{1, 1}, {1, 1}};
const std::vector<ClassSigns> kSigns4 = {{1, 1}, {1, 1}, {-1, 1}, {1, 1}, {1, 1}, {1, 1}, {-1, 1}, {1, 1}};
const std::vector<ClassSigns> kSigns5 = {{1, 1}, {1, 1}, {-1, -1}, {1, 1}, {1, 1}, {1, 1}, {-1, -1}, {1, 1}};

}  // namespace

const std::vector<ClassSigns>& frozen_signs(int n) {
    switch (n) {
        case 3: return kSigns3;
        case 4: return kSigns4;
        case 5: return kSigns5;
    }
    throw InputError("n must be 3, 4 or 5 (got " + std::to_string(n) + ")");
}

std::vector<Param> param_domain(const InvolutiveRing& r, const RootSystem& rs, int cls) {
    std::vector<Param> out;
    switch (rs.classes[cls].type) {
        case ClassType::A1:
            for (Elem e : r.members(Subset::fixed)) out.emplace_back(e);
            break;
        case ClassType::A1x2:
            for (Elem e : r.elements()) out.emplace_back(e);
            break;
        case ClassType::A2:
            for (const auto& p : apair_list(r)) out.emplace_back(p);
            break;
    }
    return out;
}

std::vector<ClassSigns> solve_class_signs(const InvolutiveRing& r, const RootSystem& rs) {
    const std::vector<ClassSigns> order = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
    std::vector<ClassSigns> out;
    for (int cls = 0; cls < static_cast<int>(rs.classes.size()); ++cls) {
        const auto type = rs.classes[cls].type;
        auto dom = param_domain(r, rs, cls);
        std::optional<ClassSigns> found;
        for (const auto& s : order) {
            if (type == ClassType::A1 && !(s == ClassSigns{1, 1})) continue;
            if (type == ClassType::A1x2 && s.eps2 != 1) continue;
            bool ok = true;
            std::vector<Matrix> ms;
            for (const auto& p : dom) {
                ms.push_back(generator_with(r, rs, cls, p, s));
                if (!mat::is_sigma_fixed(r, ms.back())) {
                    ok = false;
                    break;
                }
            }
            for (std::size_t a = 0; ok && a < dom.size(); ++a)
                for (std::size_t b = 0; ok && b < dom.size(); ++b)
                    ok = mat::mul(r, ms[a], ms[b]) == generator_with(r, rs, cls, compose(r, type, dom[a], dom[b]), s);
            if (ok) {
                found = s;
                break;
            }
        }
        if (!found)
            throw InternalError("no sign choice makes class " + rs.classes[cls].name + " form-preserving over " +
                                r.spec());
        out.push_back(*found);
    }
    return out;
}

void check_param(const InvolutiveRing& r, const RootSystem& rs, int cls, const Param& p) {
    if (cls < 0 || cls >= static_cast<int>(rs.classes.size())) throw InputError("class index out of range");
    const auto& c = rs.classes[cls];
    if (c.type == ClassType::A2) {
        if (!std::holds_alternative<APair>(p)) throw InputError("class " + c.name + " takes a pair {t,u}");
        const auto& q = std::get<APair>(p);
        if (!is_admissible(r, q.t, q.u))
            throw InputError("(" + r.format(q.t) + ", " + r.format(q.u) + ") is not an admissible pair for class " +
                             c.name);
        return;
    }
    if (!std::holds_alternative<Elem>(p)) throw InputError("class " + c.name + " takes a single ring element");
    if (c.type == ClassType::A1 && !r.is_fixed(std::get<Elem>(p)))
        throw InputError("class " + c.name + " needs a theta-fixed parameter, got " + r.format(std::get<Elem>(p)));
}

Matrix class_generator(const InvolutiveRing& r, const RootSystem& rs, int cls, const Param& p) {
    check_param(r, rs, cls, p);
    Matrix m = generator_with(r, rs, cls, p, frozen_signs(rs.n)[cls]);
    if (!mat::is_sigma_fixed(r, m))
        throw InternalError("generator of class " + rs.classes[cls].name + " does not preserve the form");
    return m;
}

Matrix word_eval(const InvolutiveRing& r, const RootSystem& rs, const GeneratorWord& w) {
    Matrix m = mat::identity(r, rs.n);
    for (const auto& l : w.letters) m = mat::mul(r, m, class_generator(r, rs, l.cls, l.param));
    return m;
}

Letter inverse_letter(const InvolutiveRing& r, const RootSystem& rs, const Letter& l) {
    if (rs.classes[l.cls].type == ClassType::A2) return {l.cls, apair_inverse(r, std::get<APair>(l.param))};
    return {l.cls, r.neg(std::get<Elem>(l.param))};
}

GeneratorWord random_word(const InvolutiveRing& r, const RootSystem& rs, int max_len, std::mt19937_64& rng) {
    std::vector<std::vector<Param>> doms;
    for (int c = 0; c < static_cast<int>(rs.classes.size()); ++c) doms.push_back(param_domain(r, rs, c));
    GeneratorWord w;
    w.n = rs.n;
    const auto len = rng() % static_cast<std::uint64_t>(max_len + 1);
    for (std::uint64_t i = 0; i < len; ++i) {
        const int c = static_cast<int>(rng() % doms.size());
        w.letters.push_back({c, doms[c][rng() % doms[c].size()]});
    }
    return w;
}

LeviParts levi_split_unipotent(const InvolutiveRing& r, const Matrix& u, const LeviSplit& split) {
    if (!mat::is_upper_unitriangular(r, u) && !mat::is_lower_unitriangular(r, u))
        throw InputError("Levi split needs a unitriangular matrix");
    LeviParts out;
    out.phi = mat::identity(r, u.n());
    for (const auto& b : split.blocks)
        for (int i : b)
            for (int j : b) out.phi(i, j) = u(i, j);
    out.sigma = mat::mul(r, mat::sigma_inverse(r, out.phi), u);
    return out;
}

Mode parse_mode(const std::string& s) {
    if (s == "tri" || s == "triangular") return Mode::triangular;
    if (s == "unitri" || s == "unitriangular") return Mode::unitriangular;
    throw InputError("unknown mode '" + s + "' (tri, unitri)");
}

std::string mode_name(Mode m) { return m == Mode::triangular ? "tri" : "unitri"; }

std::string RankForm::shape() const {
    std::string s = head ? "H" : "";
    for (const auto& f : factors) s += su3::sign_char(f.sign);
    return s;
}

Matrix evaluate(const InvolutiveRing& r, int n, const RankForm& f) {
    Matrix m = f.head ? *f.head : mat::identity(r, n);
    for (const auto& x : f.factors) m = mat::mul(r, m, x.m);
    return m;
}

Sl2Form sl2_factor(const InvolutiveRing& r, const std::array<Elem, 4>& block, Mode mode,
                   const std::vector<Elem>& domain) {
    Num a{r, block[0]}, b{r, block[1]}, c{r, block[2]}, d{r, block[3]};
    Num one{r, r.one()};
    if (!(a * d - b * c == one)) throw InputError("2x2 block does not have determinant 1");
    Sl2Form f;
    if (mode == Mode::unitriangular) {
        // B x-(t) has a unit in the lower-left corner, which gives x+ x- x+
        auto t = sr1_solve(r, c, d, domain);
        if (!t) throw HypothesisError("SR1 has no solution for (" + r.format(c) + ", " + r.format(d) + ")");
        Num tt{r, *t};
        Num q = c + d * tt, m00 = a + b * tt;
        f.factors = {{Sign::plus, (m00 - one) / q}, {Sign::minus, q}, {Sign::plus, (d - one) / q}, {Sign::minus, -tt}};
        return f;
    }
    // B x+(z) has a unit in the lower-right corner, which gives diag x+ x-
    auto z = sr1_solve(r, d, c, domain);
    if (!z) throw HypothesisError("SR1 has no solution for (" + r.format(d) + ", " + r.format(c) + ")");
    Num zz{r, *z};
    Num n22 = d + c * zz, n12 = a * zz + b;
    f.head = n22.inv().elem();
    f.factors = {{Sign::plus, n12 * n22}, {Sign::minus, c / n22}, {Sign::plus, -zz}};
    return f;
}

struct TavgenContext::Coverage {
    kernels::LayeredTable table;
    std::vector<APair> pairs;
};

TavgenContext::TavgenContext(InvolutiveRing r, int n, Mode mode, const Caps& caps)
    : r_(std::move(r)), rs_(build_root_system(n)), mode_(mode), caps_(caps) {
    if (r_.theta_trivial()) throw InputError("the involution of " + r_.spec() + " is the identity");
    fixed_ = r_.members(Subset::fixed);
    solver_ = brute_row_solver(r_);
    const bool has_a2 = std::any_of(rs_.classes.begin(), rs_.classes.end(),
                                    [](const RootClass& c) { return c.type == ClassType::A2; });
    if (mode_ == Mode::triangular) {
        target_ = 3;
    } else if (!has_a2) {
        target_ = 4;
    } else {
        cert_ = c_length(r_);
        if (!cert_->theta_complete || !cert_->k)
            throw HypothesisError(r_.spec() + " is not theta-complete, so SU(3) has no unitriangular bound");
        k_ = cert_->k;
        const std::size_t short_len = 2 * static_cast<std::size_t>(*k_) + 3;
        try {
            auto group = su3::su3_enumerate(r_, caps_);
            auto cov = std::make_unique<Coverage>();
            cov->pairs = apair_list(r_);
            std::vector<std::vector<Matrix>> steps;
            for (std::size_t i = 0; i < short_len; ++i)
                steps.push_back(kernels::unipotents(r_, i % 2 == 0 ? Sign::plus : Sign::minus));
            cov->table = kernels::layered_products(r_, {mat::identity(r_, 3)}, steps, kernels::Exec::parallel,
                                                   caps_.search);
            if (cov->table.last().size() == group.size()) coverage_ = std::move(cov);
        } catch (const CapExceeded&) {
        }
        if (coverage_) {
            target_ = short_len;
        } else {
            widened_ = true;
            target_ = short_len + 2;
        }
    }
}

TavgenContext::~TavgenContext() = default;

std::string TavgenContext::target_shape() const {
    std::string s = mode_ == Mode::triangular ? "H" : "";
    for (std::size_t i = 0; i < target_; ++i) s += i % 2 == 0 ? '+' : '-';
    return s;
}

Matrix TavgenContext::embed_torus(const std::vector<std::pair<int, Elem>>& diag) const {
    const int n = rs_.n;
    Matrix d = mat::identity(r_, n);
    std::vector<char> set(n, 0);
    for (auto [i, v] : diag) {
        d(i, i) = v;
        set[i] = 1;
    }
    for (auto [i, v] : diag)
        if (!set[n - 1 - i]) d(n - 1 - i, n - 1 - i) = r_.inv(r_.theta(v));
    if (!mat::is_sigma_fixed(r_, d)) throw InternalError("embedded torus element does not preserve the form");
    return d;
}

namespace {

// Insert identities so the signs follow the alternating target word starting with +.
std::vector<RankFactor> align(const InvolutiveRing& r, int n, const std::vector<RankFactor>& f, std::size_t target) {
    std::vector<RankFactor> out;
    auto want = [&](std::size_t pos) { return pos % 2 == 0 ? Sign::plus : Sign::minus; };
    for (const auto& x : f) {
        while (out.size() < target && want(out.size()) != x.sign) out.push_back({want(out.size()), mat::identity(r, n)});
        if (out.size() >= target) throw InternalError("base factorization does not fit the target shape");
        out.push_back(x);
    }
    while (out.size() < target) out.push_back({want(out.size()), mat::identity(r, n)});
    return out;
}

int simple_in_levi(const RootSystem& rs, int pivot) {
    if (pivot == 0) return rs.simple.front();
    for (int c : rs.simple)
        if (rs.classes[c].coords[pivot - 1] == 0) return c;
    throw InternalError("no simple class in the Levi subgroup");
}

}  // namespace

RankForm TavgenContext::base_factor(int pivot, const Matrix& levi_elem) {
    const int n = rs_.n;
    const int g = simple_in_levi(rs_, pivot);
    const int gneg = rs_.negative_of(g);
    const auto& cls = rs_.classes[g];
    auto gen = [&](Sign s, const Param& p) { return class_generator(r_, rs_, s == Sign::plus ? g : gneg, p); };

    RankForm out;
    std::vector<RankFactor> raw;
    if (cls.type != ClassType::A2) {
        const Root a = cls.orbit[0];
        std::array<Elem, 4> block = {levi_elem(a.i, a.i), levi_elem(a.i, a.j), levi_elem(a.j, a.i), levi_elem(a.j, a.j)};
        auto f = sl2_factor(r_, block, mode_, cls.type == ClassType::A1 ? fixed_ : std::vector<Elem>{});
        if (f.head) out.head = embed_torus({{a.i, *f.head}, {a.j, r_.inv(*f.head)}});
        for (const auto& [s, v] : f.factors) raw.push_back({s, gen(s, v)});
    } else {
        const int i = cls.orbit[0].i, m = cls.orbit[0].j, l = cls.orbit[1].j;
        const int idx[3] = {i, m, l};
        Matrix k(3);
        for (int x = 0; x < 3; ++x)
            for (int y = 0; y < 3; ++y) k(x, y) = levi_elem(idx[x], idx[y]);
        std::vector<su3::Factor> fs;
        if (mode_ == Mode::triangular) {
            auto f = su3::gauss_decompose(r_, k, su3::Orientation::last_row, solver_);
            Num c{r_, *f.head};
            out.head = embed_torus({{i, c}, {m, c.bar() / c}, {l, c.bar().inv()}});
            fs = f.factors;
        } else if (coverage_) {
            auto tr = coverage_->table.trace(k);
            if (!tr) throw InternalError("coverage table misses an SU(3) element");
            for (std::size_t s = 1; s < tr->size(); ++s)
                fs.push_back({s % 2 == 1 ? Sign::plus : Sign::minus, coverage_->pairs[(*tr)[s]]});
        } else {
            fs = su3::unitri_decompose(r_, k, *cert_, solver_).form.factors;
        }
        for (const auto& f : fs) raw.push_back({f.sign, gen(f.sign, f.pair)});
    }
    out.factors = align(r_, n, raw, target_);
    out.product = evaluate(r_, n, out);
    if (out.product != levi_elem) throw InternalError("base factorization does not reproduce the Levi element");
    return out;
}

namespace {

bool is_monomial(const Matrix& m) {
    for (int i = 0; i < m.n(); ++i) {
        int nz = 0;
        for (int j = 0; j < m.n(); ++j) nz += m(i, j).id != 0;
        if (nz != 1) return false;
    }
    return true;
}

// The parameter p with class_generator(cls, p) == m, if any.
std::optional<Param> read_param(const InvolutiveRing& r, const RootSystem& rs, int cls, const Matrix& m) {
    const auto& c = rs.classes[cls];
    auto at = [&](Root a) { return c.sign > 0 ? m(a.i, a.j) : m(a.j, a.i); };
    Param p;
    if (c.type == ClassType::A2) {
        Elem t = c.sign > 0 ? at(c.orbit[0]) : at(c.orbit[1]);
        Elem u = at(c.orbit[2]);
        if (frozen_signs(rs.n)[cls].eps2 < 0) u = r.neg(u);
        if (!is_admissible(r, t, u)) return std::nullopt;
        p = APair{t, u};
    } else {
        p = at(c.orbit[0]);
        if (c.type == ClassType::A1 && !r.is_fixed(std::get<Elem>(p))) return std::nullopt;
    }
    if (class_generator(r, rs, cls, p) != m) return std::nullopt;
    return p;
}

}  // namespace

const TavgenContext::Weyl& TavgenContext::weyl_for(int cls) {
    if (auto it = weyl_.find(cls); it != weyl_.end()) return it->second;

    std::vector<int> targets;
    for (int s : rs_.simple) targets.push_back(s);
    for (int s : rs_.simple) targets.push_back(rs_.negative_of(s));

    // w_d = x_d(p) x_-d(p') x_d(p'') for each signed simple class d
    std::vector<std::vector<Letter>> reflections;
    const auto stars = apair_list(r_, true);
    for (int d : targets) {
        const int dn = rs_.negative_of(d);
        if (rs_.classes[d].type == ClassType::A2) {
            if (stars.empty()) continue;
            Num t{r_, stars.front().t}, u{r_, stars.front().u};
            reflections.push_back({{d, stars.front()},
                                   {dn, APair{-(t / u), u.bar().inv()}},
                                   {d, APair{t / u * u.bar(), u}}});
        } else {
            reflections.push_back({{d, r_.one()}, {dn, r_.neg(r_.one())}, {d, r_.one()}});
        }
    }

    const auto dom = param_domain(r_, rs_, cls);
    const std::size_t nr = reflections.size();
    for (int len = 1; len <= 3; ++len) {
        std::size_t total = 1;
        for (int i = 0; i < len; ++i) total *= nr;
        for (std::size_t code = 0; code < total; ++code) {
            std::vector<Letter> w;
            std::size_t c = code;
            for (int i = 0; i < len; ++i) {
                const auto& refl = reflections[c % nr];
                c /= nr;
                w.insert(w.end(), refl.begin(), refl.end());
            }
            Matrix wm = word_eval(r_, rs_, {rs_.n, w});
            if (!is_monomial(wm)) continue;
            Matrix winv = mat::sigma_inverse(r_, wm);
            for (int tgt : targets) {
                if (rs_.classes[tgt].type != rs_.classes[cls].type) continue;
                bool ok = true;
                for (const auto& p : dom) {
                    Matrix m = mat::mul(r_, mat::mul(r_, winv, class_generator(r_, rs_, cls, p)), wm);
                    if (!read_param(r_, rs_, tgt, m)) {
                        ok = false;
                        break;
                    }
                }
                if (ok) return weyl_.emplace(cls, Weyl{w, tgt}).first->second;
            }
        }
    }
    throw InternalError("no Weyl conjugation carries class " + rs_.classes[cls].name + " to a simple class");
}

std::vector<Letter> TavgenContext::expand(const Letter& l) {
    check_param(r_, rs_, l.cls, l.param);
    if (rs_.classes[l.cls].simple) return {l};
    const Weyl& w = weyl_for(l.cls);
    Matrix wm = word_eval(r_, rs_, {rs_.n, w.w});
    Matrix m = mat::mul(r_, mat::mul(r_, mat::sigma_inverse(r_, wm), class_generator(r_, rs_, l.cls, l.param)), wm);
    auto p = read_param(r_, rs_, w.target, m);
    if (!p) throw InternalError("Weyl conjugate of class " + rs_.classes[l.cls].name + " left its root subgroup");
    std::vector<Letter> out = w.w;
    out.push_back({w.target, *p});
    for (auto it = w.w.rbegin(); it != w.w.rend(); ++it) out.push_back(inverse_letter(r_, rs_, *it));
    return out;
}

RankForm tavgen_factor(TavgenContext& ctx, const GeneratorWord& word) {
    const auto& r = ctx.ring();
    const auto& rs = ctx.roots();
    const int n = rs.n;
    if (word.n != n) throw InputError("word is for n=" + std::to_string(word.n) + ", context for n=" + std::to_string(n));

    std::vector<Letter> letters;
    for (const auto& l : word.letters) {
        auto e = ctx.expand(l);
        letters.insert(letters.end(), e.begin(), e.end());
    }

    const std::size_t L = ctx.target_length();
    const Matrix id = mat::identity(r, n);
    RankForm form;
    for (std::size_t j = 0; j < L; ++j) form.factors.push_back({j % 2 == 0 ? Sign::plus : Sign::minus, id});
    if (ctx.mode() == Mode::triangular) form.head = id;

    auto inv = [&](const Matrix& m) { return mat::sigma_inverse(r, m); };
    auto mul = [&](const Matrix& a, const Matrix& b) { return mat::mul(r, a, b); };

    for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
        Matrix x = class_generator(r, rs, it->cls, it->param);
        if (form.head) x = mul(mul(inv(*form.head), x), *form.head);
        const int pivot = rs.rank == 1 ? 0 : pivot_for(rs, it->cls);
        const LeviSplit split = rs.rank == 1 ? levi_split(rs, 0) : levi_split(rs, pivot);

        std::vector<Matrix> phi(L), sigma(L), suffix(L + 1);
        for (std::size_t j = 0; j < L; ++j) {
            auto parts = levi_split_unipotent(r, form.factors[j].m, split);
            phi[j] = parts.phi;
            sigma[j] = parts.sigma;
        }
        suffix[L] = id;
        for (std::size_t j = L; j-- > 0;) suffix[j] = mul(phi[j], suffix[j + 1]);

        RankForm base = ctx.base_factor(pivot, mul(x, suffix[0]));
        std::vector<Matrix> suffix2(L + 1);
        suffix2[L] = id;
        for (std::size_t j = L; j-- > 0;) suffix2[j] = mul(base.factors[j].m, suffix2[j + 1]);

        for (std::size_t j = 0; j < L; ++j) {
            // sigma moved to the far right, then brought back past the new Levi parts
            Matrix moved = mul(mul(inv(suffix[j + 1]), sigma[j]), suffix[j + 1]);
            Matrix back = mul(mul(suffix2[j + 1], moved), inv(suffix2[j + 1]));
            form.factors[j].m = mul(base.factors[j].m, back);
        }
        if (form.head) form.head = mul(*form.head, *base.head);

        if (ctx.check_steps) {
            for (const auto& f : form.factors) {
                bool tri = f.sign == Sign::plus ? mat::is_upper_unitriangular(r, f.m) : mat::is_lower_unitriangular(r, f.m);
                if (!tri || !mat::is_sigma_fixed(r, f.m))
                    throw InternalError("Tavgen step left a factor outside its unipotent subgroup");
            }
            if (form.head && (!mat::is_diagonal(*form.head) || !mat::is_sigma_fixed(r, *form.head)))
                throw InternalError("Tavgen step left the torus head outside the torus");
        }
    }
    form.product = evaluate(r, n, form);
    if (form.product != word_eval(r, rs, word)) throw InternalError("Tavgen factorization does not reproduce the word");
    return form;
}

}  // namespace twistfact::rank

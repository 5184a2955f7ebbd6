#include "ring_nodes.hpp"

#include <cctype>
#include <numeric>

#include "twistfact/error.hpp"

namespace twistfact::detail {
namespace {

bool is_integer(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

long long to_integer(std::string_view s) {
    if (s.size() > 17) throw InputError("integer literal too long: " + std::string(s));
    long long v = 0;
    for (char c : s) v = v * 10 + (c - '0');
    return v;
}

// True when the whole string is one parenthesised group.
bool wrapped(std::string_view s) {
    if (s.size() < 2 || s.front() != '(' || s.back() != ')') return false;
    int depth = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        if (s[i] == ')') --depth;
        if (depth == 0 && i + 1 < s.size()) return false;
    }
    return true;
}

std::vector<std::string_view> split_top(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        else if (s[i] == ')') --depth;
        else if (s[i] == sep && depth == 0) {
            out.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    out.push_back(s.substr(start));
    return out;
}

// "sym" or "sym^k"; returns -1 when f is not a power of sym.
long long generator_power(std::string_view f, std::string_view sym) {
    if (f == sym) return 1;
    if (f.size() > sym.size() + 1 && f.substr(0, sym.size()) == sym && f[sym.size()] == '^') {
        auto k = f.substr(sym.size() + 1);
        if (!is_integer(k)) throw InputError("bad exponent in literal: " + std::string(f));
        return to_integer(k);
    }
    return -1;
}

std::uint32_t power(const Node& n, std::uint32_t base, long long k) {
    std::uint32_t acc = n.one();
    while (k > 0) {
        if (k & 1) acc = n.mul(acc, base);
        base = n.mul(base, base);
        k >>= 1;
    }
    return acc;
}

// Integer and parenthesised factors, shared by every node. Returns false if f is neither.
bool common_factor(const Node& n, std::string_view f, std::uint32_t& out) {
    if (is_integer(f)) {
        out = n.from_int(to_integer(f));
        return true;
    }
    if (wrapped(f)) {
        out = parse_literal(n, f.substr(1, f.size() - 2));
        return true;
    }
    return false;
}

std::string with_parens_if_sum(const std::string& s) {
    int depth = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        if (s[i] == ')') --depth;
        if (depth == 0 && (s[i] == '+' || (s[i] == '-' && i > 0))) return "(" + s + ")";
    }
    return s;
}

class GaloisNode final : public Node {
public:
    GaloisNode(std::uint32_t p, int d) : p_(p), d_(d) {
        q_ = 1;
        for (int i = 0; i < d; ++i) q_ *= p;
        half_ = 1;
        for (int i = 0; i < d / 2; ++i) half_ *= p;
        find_modulus();
    }
    std::uint32_t size() const override { return q_; }
    std::uint64_t characteristic() const override { return p_; }
    std::string spec() const override { return "gf(" + std::to_string(q_) + ")"; }
    std::uint32_t one() const override { return 1; }
    std::uint32_t from_int(long long n) const override {
        long long r = n % static_cast<long long>(p_);
        return static_cast<std::uint32_t>(r < 0 ? r + p_ : r);
    }
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const override {
        std::uint32_t out = 0, scale = 1;
        for (int i = 0; i < d_; ++i) {
            out += ((a % p_ + b % p_) % p_) * scale;
            a /= p_;
            b /= p_;
            scale *= p_;
        }
        return out;
    }
    std::uint32_t neg(std::uint32_t a) const override {
        std::uint32_t out = 0, scale = 1;
        for (int i = 0; i < d_; ++i) {
            out += ((p_ - a % p_) % p_) * scale;
            a /= p_;
            scale *= p_;
        }
        return out;
    }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const override {
        if (a == 0 || b == 0) return 0;
        return exp_[(log_[a] + log_[b]) % (q_ - 1)];
    }
    std::uint32_t theta(std::uint32_t a) const override {
        if (a == 0) return 0;
        return exp_[static_cast<std::uint64_t>(log_[a]) * half_ % (q_ - 1)];
    }
    std::uint32_t inverse(std::uint32_t a) const override {
        if (a == 0) return kNoInverse;
        return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
    }
    std::string format(std::uint32_t a) const override {
        if (a == 0) return "0";
        std::vector<std::uint32_t> c(d_);
        for (int i = 0; i < d_; ++i) {
            c[i] = a % p_;
            a /= p_;
        }
        std::string out;
        for (int k = d_ - 1; k >= 0; --k) {
            if (c[k] == 0) continue;
            if (!out.empty()) out += "+";
            std::string mono = k == 0 ? "" : (k == 1 ? "g" : "g^" + std::to_string(k));
            if (mono.empty()) out += std::to_string(c[k]);
            else if (c[k] == 1) out += mono;
            else out += std::to_string(c[k]) + "*" + mono;
        }
        return out;
    }
    std::uint32_t parse_factor(std::string_view f) const override {
        std::uint32_t out;
        if (common_factor(*this, f, out)) return out;
        long long k = generator_power(f, "g");
        if (k < 0) throw InputError("unknown factor '" + std::string(f) + "' for " + spec());
        return exp_[k % (q_ - 1)];
    }

private:
    // First monic primitive polynomial in canonical coefficient order; x then generates F_q*.
    void find_modulus() {
        exp_.assign(q_ - 1, 0);
        log_.assign(q_, 0);
        for (std::uint32_t c = 1; c < q_; ++c) {
            if (c % p_ == 0) continue;
            std::vector<std::uint32_t> low(d_);
            std::uint32_t t = c;
            for (int i = 0; i < d_; ++i) {
                low[i] = t % p_;
                t /= p_;
            }
            if (try_modulus(low)) return;
        }
        throw InternalError("no primitive polynomial found for " + spec());
    }

    bool try_modulus(const std::vector<std::uint32_t>& low) {
        std::vector<std::uint32_t> cur(d_, 0);
        cur[0] = 1;
        std::vector<char> seen(q_, 0);
        for (std::uint32_t k = 0; k < q_ - 1; ++k) {
            std::uint32_t idx = encode(cur);
            if (seen[idx]) return false;
            seen[idx] = 1;
            exp_[k] = idx;
            log_[idx] = k;
            // multiply by x and reduce with x^d = -sum low_i x^i
            std::uint32_t top = cur[d_ - 1];
            for (int i = d_ - 1; i > 0; --i) cur[i] = cur[i - 1];
            cur[0] = 0;
            for (int i = 0; i < d_; ++i) cur[i] = (cur[i] + (p_ - low[i]) * top) % p_;
        }
        return encode(cur) == 1;
    }

    std::uint32_t encode(const std::vector<std::uint32_t>& c) const {
        std::uint32_t out = 0;
        for (int i = d_ - 1; i >= 0; --i) out = out * p_ + c[i];
        return out;
    }

    std::uint32_t p_, q_, half_;
    int d_;
    std::vector<std::uint32_t> exp_, log_;
};

class GaussianNode final : public Node {
public:
    explicit GaussianNode(std::uint32_t n) : n_(n) {}
    std::uint32_t size() const override { return n_ * n_; }
    std::uint64_t characteristic() const override { return n_; }
    std::string spec() const override { return "zi(" + std::to_string(n_) + ")"; }
    std::uint32_t one() const override { return n_; }
    std::uint32_t from_int(long long n) const override {
        long long r = n % static_cast<long long>(n_);
        return static_cast<std::uint32_t>(r < 0 ? r + n_ : r) * n_;
    }
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const override {
        return make(re(a) + re(b), im(a) + im(b));
    }
    std::uint32_t neg(std::uint32_t a) const override { return make(n_ - re(a), n_ - im(a)); }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const override {
        std::uint64_t ar = re(a), ai = im(a), br = re(b), bi = im(b);
        return make(static_cast<std::uint32_t>((ar * br + (n_ - ai) * bi) % n_),
                    static_cast<std::uint32_t>((ar * bi + ai * br) % n_));
    }
    std::uint32_t theta(std::uint32_t a) const override { return make(re(a), n_ - im(a)); }
    std::uint32_t inverse(std::uint32_t a) const override {
        std::uint64_t nrm = (static_cast<std::uint64_t>(re(a)) * re(a) + static_cast<std::uint64_t>(im(a)) * im(a)) % n_;
        if (std::gcd<std::uint64_t, std::uint64_t>(nrm, n_) != 1) return kNoInverse;
        std::uint32_t ninv = 1;
        while ((nrm * ninv) % n_ != 1) ++ninv;
        return mul(theta(a), from_int(ninv));
    }
    std::string format(std::uint32_t a) const override {
        std::uint32_t x = re(a), y = im(a);
        std::string ipart = y == 0 ? "" : (y == 1 ? "i" : std::to_string(y) + "*i");
        if (x == 0) return y == 0 ? "0" : ipart;
        return y == 0 ? std::to_string(x) : std::to_string(x) + "+" + ipart;
    }
    std::uint32_t parse_factor(std::string_view f) const override {
        std::uint32_t out;
        if (common_factor(*this, f, out)) return out;
        long long k = generator_power(f, "i");
        if (k < 0) throw InputError("unknown factor '" + std::string(f) + "' for " + spec());
        return power(*this, make(0, 1), k);
    }

private:
    std::uint32_t re(std::uint32_t a) const { return a / n_; }
    std::uint32_t im(std::uint32_t a) const { return a % n_; }
    std::uint32_t make(std::uint32_t x, std::uint32_t y) const { return (x % n_) * n_ + (y % n_); }
    std::uint32_t n_;
};

class DualNode final : public Node {
public:
    explicit DualNode(std::unique_ptr<Node> inner) : s_(std::move(inner)), m_(s_->size()) {
        int depth = s_->dual_depth();
        sym_ = depth == 0 ? "e" : "e" + std::to_string(depth + 1);
    }
    std::uint32_t size() const override { return m_ * m_; }
    std::uint64_t characteristic() const override { return s_->characteristic(); }
    std::string spec() const override { return "dual(" + s_->spec() + ")"; }
    int dual_depth() const override { return s_->dual_depth() + 1; }
    std::uint32_t one() const override { return make(s_->one(), 0); }
    std::uint32_t from_int(long long n) const override { return make(s_->from_int(n), 0); }
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const override {
        return make(s_->add(x(a), x(b)), s_->add(y(a), y(b)));
    }
    std::uint32_t neg(std::uint32_t a) const override { return make(s_->neg(x(a)), s_->neg(y(a))); }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const override {
        return make(s_->mul(x(a), x(b)), s_->add(s_->mul(x(a), y(b)), s_->mul(y(a), x(b))));
    }
    std::uint32_t theta(std::uint32_t a) const override { return make(s_->theta(x(a)), s_->theta(y(a))); }
    std::uint32_t inverse(std::uint32_t a) const override {
        std::uint32_t xi = s_->inverse(x(a));
        if (xi == kNoInverse) return kNoInverse;
        return make(xi, s_->neg(s_->mul(y(a), s_->mul(xi, xi))));
    }
    std::string format(std::uint32_t a) const override {
        std::string xs = s_->format(x(a));
        if (y(a) == 0) return xs;
        std::string ys = s_->format(y(a));
        std::string term = ys == "1" ? sym_ : with_parens_if_sum(ys) + "*" + sym_;
        return x(a) == 0 ? term : xs + "+" + term;
    }
    std::uint32_t parse_factor(std::string_view f) const override {
        long long k = generator_power(f, sym_);
        if (k == 0) return one();
        if (k == 1) return make(0, s_->one());
        if (k > 1) return 0;
        std::uint32_t out = 0;
        if (wrapped(f) || is_integer(f)) {
            common_factor(*this, f, out);
            return out;
        }
        return make(s_->parse_factor(f), 0);
    }

private:
    std::uint32_t x(std::uint32_t a) const { return a / m_; }
    std::uint32_t y(std::uint32_t a) const { return a % m_; }
    std::uint32_t make(std::uint32_t a, std::uint32_t b) const { return a * m_ + b; }
    std::unique_ptr<Node> s_;
    std::uint32_t m_;
    std::string sym_;
};

class ProductNode final : public Node {
public:
    ProductNode(std::unique_ptr<Node> a, std::unique_ptr<Node> b, bool exchange)
        : a_(std::move(a)), b_(std::move(b)), m_(b_->size()), exchange_(exchange) {}
    std::uint32_t size() const override { return a_->size() * m_; }
    std::uint64_t characteristic() const override {
        return std::lcm(a_->characteristic(), b_->characteristic());
    }
    std::string spec() const override {
        return exchange_ ? "swap(" + a_->spec() + ")" : "prodc(" + a_->spec() + "," + b_->spec() + ")";
    }
    std::uint32_t one() const override { return make(a_->one(), b_->one()); }
    std::uint32_t from_int(long long n) const override { return make(a_->from_int(n), b_->from_int(n)); }
    std::uint32_t add(std::uint32_t p, std::uint32_t q) const override {
        return make(a_->add(l(p), l(q)), b_->add(r(p), r(q)));
    }
    std::uint32_t neg(std::uint32_t p) const override { return make(a_->neg(l(p)), b_->neg(r(p))); }
    std::uint32_t mul(std::uint32_t p, std::uint32_t q) const override {
        return make(a_->mul(l(p), l(q)), b_->mul(r(p), r(q)));
    }
    std::uint32_t theta(std::uint32_t p) const override {
        if (exchange_) return make(r(p), l(p));
        return make(a_->theta(l(p)), b_->theta(r(p)));
    }
    std::uint32_t inverse(std::uint32_t p) const override {
        std::uint32_t x = a_->inverse(l(p)), y = b_->inverse(r(p));
        if (x == kNoInverse || y == kNoInverse) return kNoInverse;
        return make(x, y);
    }
    std::string format(std::uint32_t p) const override {
        return "(" + a_->format(l(p)) + "|" + b_->format(r(p)) + ")";
    }
    std::uint32_t parse_factor(std::string_view f) const override {
        if (wrapped(f)) {
            auto inside = f.substr(1, f.size() - 2);
            auto parts = split_top(inside, '|');
            if (parts.size() == 2) return make(parse_literal(*a_, parts[0]), parse_literal(*b_, parts[1]));
        }
        std::uint32_t out;
        if (common_factor(*this, f, out)) return out;
        throw InputError("unknown factor '" + std::string(f) + "' for " + spec());
    }

private:
    std::uint32_t l(std::uint32_t p) const { return p / m_; }
    std::uint32_t r(std::uint32_t p) const { return p % m_; }
    std::uint32_t make(std::uint32_t x, std::uint32_t y) const { return x * m_ + y; }
    std::unique_ptr<Node> a_, b_;
    std::uint32_t m_;
    bool exchange_;
};


struct SpecParser {
    std::string_view s;
    std::size_t pos = 0;
    std::uint64_t cap;

    [[noreturn]] void fail(const std::string& why) const {
        throw InputError("bad ring spec '" + std::string(s) + "' at offset " + std::to_string(pos) + ": " + why);
    }
    bool eat(std::string_view tok) {
        if (s.substr(pos, tok.size()) == tok) {
            pos += tok.size();
            return true;
        }
        return false;
    }
    void expect(std::string_view tok) {
        if (!eat(tok)) fail("expected '" + std::string(tok) + "'");
    }
    std::uint64_t integer() {
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos) fail("expected integer");
        auto digits = s.substr(start, pos - start);
        if (digits.size() > 12) fail("integer too large");
        return static_cast<std::uint64_t>(to_integer(digits));
    }
    void check_size(std::uint64_t n) const {
        if (n > cap)
            throw CapExceeded("ring carrier of size " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
    }

    std::unique_ptr<Node> parse() {
        if (eat("gf(")) {
            std::uint64_t q = integer();
            expect(")");
            if (q < 2) fail("gf order must be at least 2");
            std::uint64_t p = 2;
            while (q % p != 0) ++p;
            int d = 0;
            std::uint64_t t = q;
            while (t % p == 0) {
                t /= p;
                ++d;
            }
            if (t != 1) fail("gf order " + std::to_string(q) + " is not a prime power");
            if (d % 2 != 0)
                fail("gf(" + std::to_string(q) + ") has no involution of order 2 (order is not a square)");
            check_size(q);
            return std::make_unique<GaloisNode>(static_cast<std::uint32_t>(p), d);
        }
        if (eat("zi(")) {
            std::uint64_t n = integer();
            expect(")");
            if (n < 3) fail("zi(n) needs n >= 3 for a nontrivial conjugation");
            check_size(n * n);
            return std::make_unique<GaussianNode>(static_cast<std::uint32_t>(n));
        }
        if (eat("dual(")) {
            auto inner = parse();
            expect(")");
            check_size(static_cast<std::uint64_t>(inner->size()) * inner->size());
            return std::make_unique<DualNode>(std::move(inner));
        }
        if (eat("prodc(")) {
            auto a = parse();
            expect(",");
            auto b = parse();
            expect(")");
            check_size(static_cast<std::uint64_t>(a->size()) * b->size());
            return std::make_unique<ProductNode>(std::move(a), std::move(b), false);
        }
        if (eat("swap(")) {
            std::size_t start = pos;
            auto a = parse();
            std::size_t end = pos;
            expect(")");
            check_size(static_cast<std::uint64_t>(a->size()) * a->size());
            SpecParser again{s.substr(start, end - start), 0, cap};
            auto b = again.parse();
            return std::make_unique<ProductNode>(std::move(a), std::move(b), true);
        }
        fail("expected gf(, zi(, dual(, prodc( or swap(");
    }
};

}  // namespace

std::unique_ptr<Node> parse_spec(std::string_view spec, std::uint64_t carrier_cap) {
    std::string compact;
    for (char c : spec)
        if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
    SpecParser p{compact, 0, carrier_cap};
    auto node = p.parse();
    if (p.pos != compact.size()) p.fail("trailing characters");
    return node;
}

std::uint32_t parse_literal(const Node& node, std::string_view text) {
    std::string compact;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
    std::string_view s = compact;
    if (s.empty()) throw InputError("empty element literal");

    std::uint32_t total = 0;
    int depth = 0;
    std::size_t start = 0;
    bool negative = false;
    auto flush = [&](std::size_t end) {
        auto term = s.substr(start, end - start);
        if (term.empty()) throw InputError("malformed element literal '" + compact + "'");
        std::uint32_t prod = node.one();
        for (auto f : split_top(term, '*')) {
            if (f.empty()) throw InputError("malformed element literal '" + compact + "'");
            prod = node.mul(prod, node.parse_factor(f));
        }
        total = node.add(total, negative ? node.neg(prod) : prod);
    };
    if (s[0] == '-' || s[0] == '+') {
        negative = s[0] == '-';
        start = 1;
    }
    for (std::size_t i = start; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        else if (s[i] == ')') --depth;
        else if (depth == 0 && (s[i] == '+' || s[i] == '-') && s[i - 1] != '^') {
            flush(i);
            negative = s[i] == '-';
            start = i + 1;
        }
        if (depth < 0) throw InputError("unbalanced parentheses in '" + compact + "'");
    }
    if (depth != 0) throw InputError("unbalanced parentheses in '" + compact + "'");
    flush(s.size());
    return total;
}

}  // namespace twistfact::detail

#include "twistfact/ring.hpp"

#include <cstdlib>
#include <sstream>

#include "ring_nodes.hpp"
#include "twistfact/error.hpp"

namespace twistfact {

namespace detail {

constexpr std::uint32_t kTableLimit = 1024;

struct RingData {
    std::unique_ptr<Node> node;
    std::string spec;
    std::uint32_t n = 0;
    std::uint32_t one = 0;
    std::vector<std::uint32_t> neg, theta, inv;
    std::vector<std::uint16_t> add_tab, mul_tab;  // filled when n <= kTableLimit
    bool theta_trivial = true;
};

}  // namespace detail

Caps Caps::parse(const std::string& text) {
    Caps c;
    auto number = [&](const std::string& v) -> std::uint64_t {
        char* end = nullptr;
        auto x = std::strtoull(v.c_str(), &end, 10);
        if (v.empty() || *end != '\0') throw InputError("bad TWISTFACT_CAP value '" + v + "'");
        return x;
    };
    if (text.find('=') == std::string::npos) {
        c.carrier = number(text);
        return c;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw InputError("bad TWISTFACT_CAP entry '" + item + "'");
        auto key = item.substr(0, eq);
        auto val = number(item.substr(eq + 1));
        if (key == "carrier") c.carrier = val;
        else if (key == "closure") c.closure = val;
        else if (key == "search") c.search = val;
        else throw InputError("unknown TWISTFACT_CAP key '" + key + "'");
    }
    return c;
}

Caps Caps::from_env() {
    const char* v = std::getenv("TWISTFACT_CAP");
    if (v == nullptr || *v == '\0') return Caps{};
    return parse(v);
}

InvolutiveRing InvolutiveRing::parse(std::string_view spec, const Caps& caps) {
    auto d = std::make_shared<detail::RingData>();
    d->node = detail::parse_spec(spec, caps.carrier);
    const auto& node = *d->node;
    d->spec = node.spec();
    d->n = node.size();
    d->one = node.one();
    d->neg.resize(d->n);
    d->theta.resize(d->n);
    d->inv.resize(d->n);
    for (std::uint32_t a = 0; a < d->n; ++a) {
        d->neg[a] = node.neg(a);
        d->theta[a] = node.theta(a);
        d->inv[a] = node.inverse(a);
        if (d->theta[a] != a) d->theta_trivial = false;
    }
    for (std::uint32_t a = 0; a < d->n; ++a)
        if (d->theta[d->theta[a]] != a) throw InternalError("involution of order > 2 on " + d->spec);
    if (d->theta_trivial) throw InputError(d->spec + ": involution is the identity");
    if (d->n <= detail::kTableLimit) {
        d->add_tab.resize(static_cast<std::size_t>(d->n) * d->n);
        d->mul_tab.resize(static_cast<std::size_t>(d->n) * d->n);
        for (std::uint32_t a = 0; a < d->n; ++a)
            for (std::uint32_t b = 0; b < d->n; ++b) {
                d->add_tab[a * d->n + b] = static_cast<std::uint16_t>(node.add(a, b));
                d->mul_tab[a * d->n + b] = static_cast<std::uint16_t>(node.mul(a, b));
            }
    }
    return InvolutiveRing(std::move(d));
}

const std::string& InvolutiveRing::spec() const { return d_->spec; }
std::uint32_t InvolutiveRing::size() const { return d_->n; }
std::uint64_t InvolutiveRing::characteristic() const { return d_->node->characteristic(); }
Elem InvolutiveRing::one() const { return Elem{d_->one}; }
Elem InvolutiveRing::from_int(long long n) const { return Elem{d_->node->from_int(n)}; }

Elem InvolutiveRing::add(Elem a, Elem b) const {
    if (!d_->add_tab.empty()) return Elem{d_->add_tab[a.id * d_->n + b.id]};
    return Elem{d_->node->add(a.id, b.id)};
}
Elem InvolutiveRing::neg(Elem a) const { return Elem{d_->neg[a.id]}; }
Elem InvolutiveRing::mul(Elem a, Elem b) const {
    if (!d_->mul_tab.empty()) return Elem{d_->mul_tab[a.id * d_->n + b.id]};
    return Elem{d_->node->mul(a.id, b.id)};
}
Elem InvolutiveRing::theta(Elem a) const { return Elem{d_->theta[a.id]}; }

std::optional<Elem> InvolutiveRing::inverse(Elem a) const {
    auto v = d_->inv[a.id];
    if (v == detail::kNoInverse) return std::nullopt;
    return Elem{v};
}
bool InvolutiveRing::is_unit(Elem a) const { return d_->inv[a.id] != detail::kNoInverse; }
Elem InvolutiveRing::inv(Elem a) const {
    auto v = d_->inv[a.id];
    if (v == detail::kNoInverse) throw HypothesisError(format(a) + " is not a unit in " + spec());
    return Elem{v};
}
bool InvolutiveRing::theta_trivial() const { return d_->theta_trivial; }

std::string InvolutiveRing::format(Elem a) const { return d_->node->format(a.id); }

Elem InvolutiveRing::parse_element(std::string_view text) const {
    return Elem{detail::parse_literal(*d_->node, text)};
}

std::vector<Elem> InvolutiveRing::elements() const {
    std::vector<Elem> out(d_->n);
    for (std::uint32_t a = 0; a < d_->n; ++a) out[a] = Elem{a};
    return out;
}

std::vector<Elem> InvolutiveRing::members(Subset which) const {
    std::vector<Elem> out;
    for (std::uint32_t i = 0; i < d_->n; ++i) {
        Elem a{i};
        bool keep = false;
        switch (which) {
            case Subset::all: keep = true; break;
            case Subset::units: keep = is_unit(a); break;
            case Subset::fixed: keep = theta(a) == a; break;
            case Subset::fixed_units: keep = theta(a) == a && is_unit(a); break;
            case Subset::skew: keep = theta(a) == neg(a); break;
            case Subset::skew_units: keep = theta(a) == neg(a) && is_unit(a); break;
            case Subset::trace_zero: keep = trace(a) == zero(); break;
        }
        if (keep) out.push_back(a);
    }
    return out;
}

}  // namespace twistfact

#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "twistfact/caps.hpp"

namespace twistfact {

// An element is its index in the ring's canonical enumeration.
struct Elem {
    std::uint32_t id = 0;
    friend constexpr auto operator<=>(Elem, Elem) = default;
};

namespace detail {
struct RingData;
}

enum class Subset { all, units, fixed, fixed_units, skew, skew_units, trace_zero };

// Finite commutative ring with an involution theta. Cheap to copy.
class InvolutiveRing {
public:
    static InvolutiveRing parse(std::string_view spec, const Caps& caps = Caps::from_env());

    const std::string& spec() const;
    std::uint32_t size() const;
    std::uint64_t characteristic() const;

    Elem zero() const { return Elem{0}; }
    Elem one() const;
    Elem from_int(long long n) const;

    Elem add(Elem a, Elem b) const;
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
    Elem neg(Elem a) const;
    Elem mul(Elem a, Elem b) const;
    Elem theta(Elem a) const;
    std::optional<Elem> inverse(Elem a) const;
    bool is_unit(Elem a) const;
    // Throws HypothesisError when a is not a unit.
    Elem inv(Elem a) const;

    Elem norm(Elem a) const { return mul(a, theta(a)); }
    Elem trace(Elem a) const { return add(a, theta(a)); }
    bool is_fixed(Elem a) const { return theta(a) == a; }
    // theta acts as the identity on the whole ring
    bool theta_trivial() const;

    std::string format(Elem a) const;
    // Throws InputError on anything that is not an element literal of this ring.
    Elem parse_element(std::string_view text) const;

    std::vector<Elem> elements() const;
    std::vector<Elem> members(Subset which) const;

    friend bool operator==(const InvolutiveRing& a, const InvolutiveRing& b) { return a.d_ == b.d_; }

private:
    explicit InvolutiveRing(std::shared_ptr<const detail::RingData> d) : d_(std::move(d)) {}
    std::shared_ptr<const detail::RingData> d_;
};

// Value wrapper for writing formulas with operators. The ring must outlive it.
class Num {
public:
    Num(const InvolutiveRing& r, Elem e) : r_(&r), e_(e) {}
    Elem elem() const { return e_; }
    operator Elem() const { return e_; }
    const InvolutiveRing& ring() const { return *r_; }

    Num bar() const { return {*r_, r_->theta(e_)}; }
    Num inv() const { return {*r_, r_->inv(e_)}; }
    friend Num operator+(Num a, Num b) { return {*a.r_, a.r_->add(a.e_, b.e_)}; }
    friend Num operator-(Num a, Num b) { return {*a.r_, a.r_->sub(a.e_, b.e_)}; }
    friend Num operator*(Num a, Num b) { return {*a.r_, a.r_->mul(a.e_, b.e_)}; }
    friend Num operator/(Num a, Num b) { return a * b.inv(); }
    Num operator-() const { return {*r_, r_->neg(e_)}; }
    friend bool operator==(Num a, Num b) { return a.e_ == b.e_; }

private:
    const InvolutiveRing* r_;
    Elem e_;
};

}  // namespace twistfact

template <>
struct std::hash<twistfact::Elem> {
    std::size_t operator()(twistfact::Elem e) const noexcept { return e.id; }
};

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace twistfact::detail {

constexpr std::uint32_t kNoInverse = 0xffffffffu;

// Structural arithmetic on canonical indices. Index 0 is zero in every node.
struct Node {
    virtual ~Node() = default;
    virtual std::uint32_t size() const = 0;
    virtual std::uint64_t characteristic() const = 0;
    virtual std::string spec() const = 0;
    virtual std::uint32_t one() const = 0;
    virtual std::uint32_t from_int(long long n) const = 0;
    virtual std::uint32_t add(std::uint32_t a, std::uint32_t b) const = 0;
    virtual std::uint32_t neg(std::uint32_t a) const = 0;
    virtual std::uint32_t mul(std::uint32_t a, std::uint32_t b) const = 0;
    virtual std::uint32_t theta(std::uint32_t a) const = 0;
    virtual std::uint32_t inverse(std::uint32_t a) const = 0;
    virtual std::string format(std::uint32_t a) const = 0;
    // One multiplicative factor of a literal: integer, generator power, or parenthesised literal.
    virtual std::uint32_t parse_factor(std::string_view f) const = 0;
    // Number of dual-number layers inside, used to name the nilpotent generator.
    virtual int dual_depth() const { return 0; }
};

std::unique_ptr<Node> parse_spec(std::string_view spec, std::uint64_t carrier_cap);

// Sums of products of factors, resolved by node.parse_factor.
std::uint32_t parse_literal(const Node& node, std::string_view text);

}  // namespace twistfact::detail

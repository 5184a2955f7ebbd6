#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twistfact/apair.hpp"
#include "twistfact/caps.hpp"
#include "twistfact/conditions.hpp"
#include "twistfact/matrix.hpp"
#include "twistfact/ring.hpp"

namespace twistfact::su3 {

enum class Sign { plus, minus };
inline char sign_char(Sign s) { return s == Sign::plus ? '+' : '-'; }
inline Sign flip(Sign s) { return s == Sign::plus ? Sign::minus : Sign::plus; }

Matrix x_plus(const InvolutiveRing& r, const APair& p);
Matrix x_minus(const InvolutiveRing& r, const APair& p);
Matrix x_signed(const InvolutiveRing& r, Sign s, const APair& p);
Matrix h_elem(const InvolutiveRing& r, Elem x);
Matrix w_elem(const InvolutiveRing& r, Elem x);
// x_s(t,u) x_-s(-t u^-1, bar(u)^-1) x_s(t u^-1 bar(u), u)
Matrix w_pm(const InvolutiveRing& r, Sign s, const APair& p);
// w_s(p) w_s(q)
Matrix h_pm(const InvolutiveRing& r, Sign s, const APair& p, const APair& q);

struct Violation {
    std::string tag;  // "det", "U-A.2.3", "U-B.1.1", ...
    std::string lhs, rhs;
};

struct Su3Check {
    bool ok = false;
    std::optional<Violation> first;
    // Set when the U-A and U-B systems disagree, which cannot happen for det 1 matrices.
    std::optional<Violation> inconsistency;
};

Su3Check su3_check(const InvolutiveRing& r, const Matrix& m);
inline bool in_su3(const InvolutiveRing& r, const Matrix& m) { return su3_check(r, m).ok; }

struct Factor {
    Sign sign;
    APair pair;
    friend bool operator==(const Factor&, const Factor&) = default;
};

struct FactoredForm {
    std::optional<Elem> head;  // torus parameter h(head) in front
    std::vector<Factor> factors;
    Matrix product;

    std::string shape() const;
};

Matrix evaluate(const InvolutiveRing& r, const std::optional<Elem>& head, const std::vector<Factor>& factors);
inline Matrix evaluate(const InvolutiveRing& r, const FactoredForm& f) { return evaluate(r, f.head, f.factors); }

// Combine neighbours of equal sign; x_s(p) x_s(q) = x_s(q + p).
std::vector<Factor> merge_adjacent(const InvolutiveRing& r, std::vector<Factor> f);
// Drop identity factors, then merge.
std::vector<Factor> drop_identities(const InvolutiveRing& r, const std::vector<Factor>& f);

// h(x) x_s(t,u) h(x)^-1
APair conj_by_h(const InvolutiveRing& r, Sign s, Elem x, const APair& p);

// row: T U- U+ U-    last_row: T U+ U- U+    last_col / first_col: column variants
enum class Orientation { row, last_row, last_col, first_col };
Orientation parse_orientation(const std::string& name);
std::string orientation_name(Orientation o);

FactoredForm gauss_decompose(const InvolutiveRing& r, const Matrix& a, Orientation o, const RowSolver& solver);

struct TorusResult {
    FactoredForm form;
    bool c_k_lower = false;  // C^(k) landed in U- at the last step
    int steps = 0;
};

// h(x) as 2(k+1) alternating factors. leading = minus gives (-+)^{k+1}, plus gives (+-)^{k+1}.
TorusResult torus_unitri(const InvolutiveRing& r, Elem x, const std::vector<UnitFactor>& decomposition,
                         Sign leading = Sign::minus);

struct UnitriResult {
    FactoredForm form;  // headless
    std::size_t length = 0;
};

UnitriResult unitri_decompose(const InvolutiveRing& r, const Matrix& a, const ClengthCertificate& cert,
                              const RowSolver& solver);

// Generators used for closures: x+(p), x-(p) over A(R), h over units, w(1).
std::vector<Matrix> generators(const InvolutiveRing& r);
// Same group from fewer matrices: greedy generators of A(R) and of the units.
std::vector<Matrix> small_generators(const InvolutiveRing& r);
std::vector<Matrix> su3_enumerate(const InvolutiveRing& r, const Caps& caps = Caps::from_env());
// All det-1 form-preserving 3x3 matrices, by exhaustive scan. Only for |R| <= 4.
std::vector<Matrix> sigma_fixed_scan(const InvolutiveRing& r);

struct RelationReport {
    std::vector<std::pair<std::string, std::uint64_t>> passes;  // per identity tag
    std::uint64_t violations = 0;
    std::optional<std::string> first_counterexample;
};

// samples == 0 means exhaustive over units x units x A(R) x A(R)-star.
RelationReport relation_suite(const InvolutiveRing& r, std::uint64_t samples, std::uint64_t seed);

}  // namespace twistfact::su3

#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "twistfact/apair.hpp"
#include "twistfact/caps.hpp"
#include "twistfact/matrix.hpp"
#include "twistfact/ring.hpp"

namespace twistfact {

// Sorted member list plus a membership mask over the carrier.
struct ElementSet {
    std::vector<Elem> members;
    std::vector<char> mask;

    static ElementSet from_mask(std::vector<char> mask);
    bool contains(Elem e) const { return mask[e.id] != 0; }
    std::size_t size() const { return members.size(); }
    bool empty() const { return members.empty(); }
};

struct MaximalIdealList {
    std::vector<ElementSet> ideals;
    ElementSet jacobson;
};

MaximalIdealList maximal_ideals(const InvolutiveRing& r);
// (intersection of ideals not containing r) minus (union of ideals containing r)
ElementSet j_r_set(const InvolutiveRing& r, Elem x, const MaximalIdealList& ideals);
bool is_unimodular(const InvolutiveRing& r, Elem a, Elem b, const MaximalIdealList& ideals);

// Smallest z in domain (whole ring when empty) with a + b*z a unit.
std::optional<Elem> sr1_solve(const InvolutiveRing& r, Elem a, Elem b, const std::vector<Elem>& domain = {});
bool sr1_holds(const InvolutiveRing& r);
// SR1 for the fixed subring, with unimodularity and solutions taken inside it.
bool sr1_holds_fixed(const InvolutiveRing& r);

struct SSR1Witness {
    std::array<Elem, 3> vector;
    Matrix completion;
    APair solution;
    Elem unit;
};

// Smallest (z1,z2) in A(R), lexicographic, with a + b z1 + c z2 a unit.
std::optional<APair> ssr1_scan(const InvolutiveRing& r, Elem a, Elem b, Elem c);
std::optional<APair> ssr1_scan(const InvolutiveRing& r, Elem a, Elem b, Elem c, const std::vector<APair>& pairs);

// Pruned search over rows 2 and 3 for an SU(3) matrix with the given first row.
std::optional<Matrix> is_completable(const InvolutiveRing& r, Elem a, Elem b, Elem c,
                                     const Caps& caps = Caps::from_env());

// Brute force; throws HypothesisError when no pair works.
SSR1Witness ssr1_solve(const InvolutiveRing& r, const Matrix& completion);
// Construction through the J-set of the first-row entries. Requires every maximal ideal to be
// theta-stable and A(R)* to be nonempty; throws HypothesisError otherwise.
SSR1Witness ssr1_solve_semilocal(const InvolutiveRing& r, const Matrix& completion, const MaximalIdealList& ideals);
bool semilocal_applicable(const InvolutiveRing& r, const MaximalIdealList& ideals, std::string* why = nullptr);

// Every first row of SU(3,R), as the orbit of e1 under right multiplication by generators.
std::vector<std::array<Elem, 3>> su3_first_rows(const InvolutiveRing& r, const Caps& caps = Caps::from_env());
// Each orbit vector paired with a group element carrying it as first row.
std::vector<std::pair<std::array<Elem, 3>, Matrix>> su3_first_rows_with_witness(const InvolutiveRing& r,
                                                                                const Caps& caps = Caps::from_env());
bool ssr1_holds(const InvolutiveRing& r, const Caps& caps = Caps::from_env());

// Row solver signature used by the Gauss decomposition.
using RowSolver = std::function<std::optional<APair>(const Matrix& a)>;
RowSolver brute_row_solver(const InvolutiveRing& r);
RowSolver semilocal_row_solver(const InvolutiveRing& r, MaximalIdealList ideals);

enum class RingShape { field, local, other };

struct ClengthCertificate {
    bool theta_complete = false;
    std::optional<int> k;           // minimal k with B_2k = C_even; empty when A(R)* is empty
    std::vector<Elem> b1;
    std::vector<std::optional<APair>> witness;  // indexed by element id; set for members of B1
    std::vector<std::size_t> even_sizes;        // |B_2|, |B_4|, ... up to stabilisation
    std::vector<std::size_t> odd_sizes;         // |B_1|, |B_3|, ...
    std::vector<Elem> c_even, c_odd;
    // For u first reached in B_2j: level[u] = j and u = parent_prev[u] * parent_step[u],
    // with parent_prev in B_2(j-1) (empty for j = 1) and parent_step in B_2.
    std::vector<int> level;
    std::vector<Elem> parent_prev, parent_step;
    std::vector<std::pair<Elem, Elem>> b2_split;  // for u in B_2: u = first * second, both in B_1
    RingShape shape = RingShape::other;
};

// B_1 with the smallest witness t for each member; indexes witnesses by element id.
std::vector<std::pair<Elem, APair>> b1_set(const InvolutiveRing& r);
ClengthCertificate c_length(const InvolutiveRing& r, int max_k = 64);

struct UnitFactor {
    Elem value;
    APair witness;  // witness.u == value
};

// Exactly 2k factors whose product is x.
std::vector<UnitFactor> decompose_unit(const InvolutiveRing& r, Elem x, const ClengthCertificate& cert);

}  // namespace twistfact

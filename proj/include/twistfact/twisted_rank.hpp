#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "twistfact/apair.hpp"
#include "twistfact/conditions.hpp"
#include "twistfact/matrix.hpp"
#include "twistfact/ring.hpp"
#include "twistfact/root_system.hpp"
#include "twistfact/su3.hpp"

namespace twistfact::rank {

// Element of R_theta (A1), of R (A1^2), or an admissible pair (A2).
using Param = std::variant<Elem, APair>;

struct Letter {
    int cls;
    Param param;
};

struct GeneratorWord {
    int n = 3;
    std::vector<Letter> letters;
};

// eps1 multiplies bar(t) on the partner root; eps2 multiplies u on the summed root (A2 only).
struct ClassSigns {
    int eps1 = 1, eps2 = 1;
    friend bool operator==(const ClassSigns&, const ClassSigns&) = default;
};

// Frozen structure-constant signs, indexed like RootSystem::classes.
const std::vector<ClassSigns>& frozen_signs(int n);
// First sign choice, in the order (+,+), (+,-), (-,+), (-,-), for which every generator over r is
// form-preserving and the class law holds. Used to produce and regression-test the frozen table.
std::vector<ClassSigns> solve_class_signs(const InvolutiveRing& r, const RootSystem& rs);

// Throws InputError when the parameter is outside the class domain.
void check_param(const InvolutiveRing& r, const RootSystem& rs, int cls, const Param& p);
Matrix class_generator(const InvolutiveRing& r, const RootSystem& rs, int cls, const Param& p);
Matrix word_eval(const InvolutiveRing& r, const RootSystem& rs, const GeneratorWord& w);
// Parameters that are valid for the class, in canonical order.
std::vector<Param> param_domain(const InvolutiveRing& r, const RootSystem& rs, int cls);
Letter inverse_letter(const InvolutiveRing& r, const RootSystem& rs, const Letter& l);
GeneratorWord random_word(const InvolutiveRing& r, const RootSystem& rs, int max_len, std::mt19937_64& rng);

struct LeviParts {
    Matrix phi, sigma;  // phi * sigma = input
};

// Input must be upper or lower unitriangular and form-preserving.
LeviParts levi_split_unipotent(const InvolutiveRing& r, const Matrix& u, const LeviSplit& split);

enum class Mode { triangular, unitriangular };
Mode parse_mode(const std::string& s);
std::string mode_name(Mode m);

struct RankFactor {
    su3::Sign sign;
    Matrix m;
};

struct RankForm {
    std::optional<Matrix> head;  // diagonal torus element, triangular mode only
    std::vector<RankFactor> factors;
    Matrix product;

    std::string shape() const;
};

Matrix evaluate(const InvolutiveRing& r, int n, const RankForm& f);

// Rank-one factorization of a 2x2 block [[a,b],[c,d]] of determinant 1 with entries in domain
// (whole ring when empty). Unitriangular: + - + -. Triangular: diag(d', d'^-1) + - +.
struct Sl2Form {
    std::optional<Elem> head;  // d' in diag(d', d'^-1)
    std::vector<std::pair<su3::Sign, Elem>> factors;
};
Sl2Form sl2_factor(const InvolutiveRing& r, const std::array<Elem, 4>& block, Mode mode,
                   const std::vector<Elem>& domain = {});

// Shared state for factoring many words over one ring and rank.
class TavgenContext {
public:
    TavgenContext(InvolutiveRing r, int n, Mode mode, const Caps& caps = Caps::from_env());
    ~TavgenContext();

    const InvolutiveRing& ring() const { return r_; }
    const RootSystem& roots() const { return rs_; }
    Mode mode() const { return mode_; }
    // Number of unipotent factors every output carries.
    std::size_t target_length() const { return target_; }
    std::string target_shape() const;
    // The A2 base had to fall back to the constructive route, lengthening the target.
    bool widened() const { return widened_; }
    std::optional<int> k() const { return k_; }

    // Rewrites non-simple letters as Weyl conjugates of simple ones.
    std::vector<Letter> expand(const Letter& l);
    // Levi-block factorization of a block-diagonal element of the pivot's Levi subgroup.
    RankForm base_factor(int pivot, const Matrix& levi_elem);

    bool check_steps = true;

private:
    struct Weyl {
        std::vector<Letter> w;  // x_cls(p) = W x_target(p') W^-1
        int target;
    };
    struct Coverage;

    const Weyl& weyl_for(int cls);
    Matrix embed_torus(const std::vector<std::pair<int, Elem>>& diag) const;

    InvolutiveRing r_;
    RootSystem rs_;
    Mode mode_;
    Caps caps_;
    std::size_t target_ = 0;
    bool widened_ = false;
    std::optional<int> k_;
    std::optional<ClengthCertificate> cert_;
    std::vector<Elem> fixed_;
    RowSolver solver_;
    std::map<int, Weyl> weyl_;
    std::unique_ptr<Coverage> coverage_;
};

RankForm tavgen_factor(TavgenContext& ctx, const GeneratorWord& w);

}  // namespace twistfact::rank

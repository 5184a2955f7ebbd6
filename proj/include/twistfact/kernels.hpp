#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "twistfact/conditions.hpp"
#include "twistfact/matrix.hpp"
#include "twistfact/ring.hpp"
#include "twistfact/su3.hpp"

// Enumeration kernels. Each has a serial reference and an OpenMP version that must agree
// element for element; the parallel versions only split the multiplication work and merge
// in the serial order.
namespace twistfact::kernels {

enum class Exec { serial, parallel };
Exec parse_exec(const std::string& s);

// layer[0] = start, layer[i+1] = distinct products layer[i] * steps[i], kept in first-hit order
// over (previous index, step index).
struct LayeredTable {
    std::vector<std::vector<Matrix>> layers;
    // parent[i][j] = (index into layers[i], index into steps[i]) for layers[i+1][j]
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> parent;
    std::unordered_map<Matrix, std::uint32_t, MatrixHash> last_index;

    const std::vector<Matrix>& last() const { return layers.back(); }
    // Start index followed by the step index used at each layer, or empty when m is absent.
    std::optional<std::vector<std::uint32_t>> trace(const Matrix& m) const;
};

LayeredTable layered_products(const InvolutiveRing& r, const std::vector<Matrix>& start,
                              const std::vector<std::vector<Matrix>>& steps, Exec exec,
                              std::uint64_t cap);

// Every product s_1 s_2 ... s_L with s_i in steps[i], deduplicated and sorted. Visits all
// prod |steps[i]| words.
std::vector<Matrix> word_products(const InvolutiveRing& r, const std::vector<std::vector<Matrix>>& steps,
                                  Exec exec);

// Factor and re-multiply every matrix; returns the indices that failed, ascending.
std::vector<std::size_t> gauss_roundtrip(const InvolutiveRing& r, const std::vector<Matrix>& elems,
                                         su3::Orientation o, const RowSolver& solver, Exec exec);

// U_+ or U_- as matrices, one per admissible pair in canonical order.
std::vector<Matrix> unipotents(const InvolutiveRing& r, su3::Sign s);

}  // namespace twistfact::kernels

#pragma once

#include <string>
#include <vector>

namespace twistfact::rank {

enum class ClassType { A1, A1x2, A2 };
std::string type_name(ClassType t);

// Root e_i - e_j, 0-based.
struct Root {
    int i, j;
    friend bool operator==(const Root&, const Root&) = default;
};

struct RootClass {
    std::vector<Root> orbit;  // alpha first, then bar(alpha), then their sum for A2
    ClassType type;
    std::vector<int> coords;  // over the simple classes, all >= 0 or all <= 0
    int sign;                 // +1 or -1
    std::string name;         // "a1", "-(a1+a2)", ...
    bool simple = false;
};

struct RootSystem {
    int n = 0;
    int rank = 0;
    std::vector<RootClass> classes;  // positives in height order, then negatives in the same order
    std::vector<int> simple;         // indices of the positive simple classes, left to right

    int find(const std::string& name) const;  // throws InputError
    int negative_of(int cls) const;
};

// n in {3, 4, 5}
RootSystem build_root_system(int n);

struct LeviSplit {
    int pivot = 0;                        // 1-based simple class index; 0 means the whole group (rank 1)
    std::vector<int> phi;                 // classes with m_pivot == 0
    std::vector<int> sigma;               // positive classes with m_pivot > 0
    std::vector<std::vector<int>> blocks; // index blocks of the Levi subgroup, in order
};

LeviSplit levi_split(const RootSystem& rs, int pivot);
// Pivot whose Levi contains the class; ties resolve to 1. Zero for rank 1.
int pivot_for(const RootSystem& rs, int cls);

bool is_closed(const RootSystem& rs, const std::vector<int>& set);
// set is an ideal of the closed set super: sums with super members stay in set
bool is_ideal(const RootSystem& rs, const std::vector<int>& set, const std::vector<int>& super);

}  // namespace twistfact::rank

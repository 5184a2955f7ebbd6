#include "twistfact/root_system.hpp"

#include <algorithm>
#include <numeric>

#include "twistfact/error.hpp"

namespace twistfact::rank {

std::string type_name(ClassType t) {
    switch (t) {
        case ClassType::A1: return "A1";
        case ClassType::A1x2: return "A1^2";
        case ClassType::A2: return "A2";
    }
    return "?";
}

int RootSystem::find(const std::string& name) const {
    for (std::size_t c = 0; c < classes.size(); ++c)
        if (classes[c].name == name) return static_cast<int>(c);
    throw InputError("unknown root class '" + name + "' for n=" + std::to_string(n));
}

int RootSystem::negative_of(int cls) const {
    const auto half = static_cast<int>(classes.size() / 2);
    return cls < half ? cls + half : cls - half;
}

namespace {

std::string coord_name(const std::vector<int>& m) {
    std::string out;
    for (std::size_t k = 0; k < m.size(); ++k) {
        if (m[k] == 0) continue;
        if (!out.empty()) out += "+";
        if (m[k] != 1) out += std::to_string(m[k]);
        out += "a" + std::to_string(k + 1);
    }
    return out;
}

}  // namespace

RootSystem build_root_system(int n) {
    if (n < 3 || n > 5) throw InputError("n must be 3, 4 or 5 (got " + std::to_string(n) + ")");
    RootSystem rs;
    rs.n = n;
    auto rho = [n](Root a) { return Root{n - 1 - a.j, n - 1 - a.i}; };

    // simple A-roots alpha_k = (k-1, k); twisted simple classes pair k with n-k
    std::vector<int> simple_index(n, -1);  // 1-based k -> twisted index
    int rank = 0;
    for (int k = 1; k <= n - k; ++k) simple_index[k] = simple_index[n - k] = rank++;
    rs.rank = rank;

    std::vector<RootClass> positives;
    std::vector<char> used(n * n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (used[i * n + j]) continue;
            Root a{i, j}, b = rho(a);
            RootClass c;
            c.sign = 1;
            if (a == b) {
                // a rho-fixed root is the tip of an A2 class when it splits as a rho-pair
                int mid2 = (n - 1);
                if (mid2 % 2 == 0 && i < mid2 / 2 && mid2 / 2 < j) continue;
                c.type = ClassType::A1;
                c.orbit = {a};
            } else {
                Root first = a.i <= b.i ? a : b, second = a.i <= b.i ? b : a;
                if (first.j == second.i) {
                    c.type = ClassType::A2;
                    c.orbit = {first, second, Root{first.i, second.j}};
                    used[first.i * n + second.j] = 1;
                } else {
                    c.type = ClassType::A1x2;
                    c.orbit = {first, second};
                }
            }
            for (const auto& r : c.orbit) used[r.i * n + r.j] = 1;
            // coefficients of alpha over simple A-roots, folded by rho
            Root rep = c.orbit.front();
            c.coords.assign(rank, 0);
            std::vector<int> coeff(n, 0);
            for (int k = rep.i + 1; k <= rep.j; ++k) coeff[k] = 1;
            for (int k = 1; k < n; ++k) {
                if (k < n - k) c.coords[simple_index[k]] += coeff[k] + coeff[n - k];
                else if (k == n - k) c.coords[simple_index[k]] += coeff[k];
            }
            positives.push_back(c);
        }
    std::stable_sort(positives.begin(), positives.end(), [](const RootClass& a, const RootClass& b) {
        int ha = std::accumulate(a.coords.begin(), a.coords.end(), 0);
        int hb = std::accumulate(b.coords.begin(), b.coords.end(), 0);
        if (ha != hb) return ha < hb;
        return a.coords > b.coords;
    });
    for (auto& c : positives) {
        c.name = coord_name(c.coords);
        c.simple = std::accumulate(c.coords.begin(), c.coords.end(), 0) == 1;
    }
    for (std::size_t c = 0; c < positives.size(); ++c)
        if (positives[c].simple) rs.simple.push_back(static_cast<int>(c));
    std::sort(rs.simple.begin(), rs.simple.end(), [&](int a, int b) { return positives[a].coords > positives[b].coords; });

    rs.classes = positives;
    for (const auto& p : positives) {
        RootClass c = p;
        c.sign = -1;
        for (auto& x : c.coords) x = -x;
        c.name = p.name.find('+') == std::string::npos ? "-" + p.name : "-(" + p.name + ")";
        rs.classes.push_back(c);
    }
    return rs;
}

LeviSplit levi_split(const RootSystem& rs, int pivot) {
    LeviSplit s;
    s.pivot = pivot;
    const int n = rs.n;
    if (pivot == 0) {
        std::vector<int> all(n);
        std::iota(all.begin(), all.end(), 0);
        s.blocks.push_back(all);
        for (std::size_t c = 0; c < rs.classes.size(); ++c) s.phi.push_back(static_cast<int>(c));
        return s;
    }
    if (pivot < 1 || pivot > rs.rank) throw InputError("pivot out of range");
    // cut after A-positions k and n-k belonging to the pivot class
    std::vector<char> cut(n, 0);
    for (int k = 1; k < n; ++k)
        if (k == pivot || n - k == pivot) cut[k - 1] = 1;
    std::vector<int> cur;
    for (int i = 0; i < n; ++i) {
        cur.push_back(i);
        if (cut[i] || i == n - 1) {
            s.blocks.push_back(cur);
            cur.clear();
        }
    }
    for (std::size_t c = 0; c < rs.classes.size(); ++c) {
        int m = rs.classes[c].coords[pivot - 1];
        if (m == 0) s.phi.push_back(static_cast<int>(c));
        else if (m > 0) s.sigma.push_back(static_cast<int>(c));
    }
    return s;
}

int pivot_for(const RootSystem& rs, int cls) {
    if (rs.rank == 1) return 0;
    const auto& m = rs.classes[cls].coords;
    if (m[0] == 0) return 1;
    if (m[rs.rank - 1] == 0) return rs.rank;
    throw InputError("class " + rs.classes[cls].name + " lies in no rank-one Levi subgroup");
}

namespace {

// Classes forced into a closed set by containing a and b.
std::vector<int> forced_by(const RootSystem& rs, int a, int b) {
    std::vector<int> out;
    if (a == b) return out;
    const auto& ca = rs.classes[a].coords;
    const auto& cb = rs.classes[b].coords;
    std::vector<int> sum(ca.size());
    for (std::size_t k = 0; k < ca.size(); ++k) sum[k] = ca[k] + cb[k];
    bool even = std::all_of(sum.begin(), sum.end(), [](int x) { return x % 2 == 0; });
    for (std::size_t c = 0; c < rs.classes.size(); ++c) {
        const auto& cc = rs.classes[c].coords;
        if (cc == sum) out.push_back(static_cast<int>(c));
        if (even && rs.classes[c].type == ClassType::A2) {
            std::vector<int> half(sum.size());
            for (std::size_t k = 0; k < sum.size(); ++k) half[k] = sum[k] / 2;
            if (cc == half) out.push_back(static_cast<int>(c));
        }
    }
    return out;
}

}  // namespace

bool is_closed(const RootSystem& rs, const std::vector<int>& set) {
    auto in = [&](int c) { return std::find(set.begin(), set.end(), c) != set.end(); };
    for (int a : set)
        for (int b : set)
            for (int c : forced_by(rs, a, b))
                if (!in(c)) return false;
    return true;
}

bool is_ideal(const RootSystem& rs, const std::vector<int>& set, const std::vector<int>& super) {
    auto in = [&](const std::vector<int>& s, int c) { return std::find(s.begin(), s.end(), c) != s.end(); };
    for (int a : set) {
        if (!in(super, a)) return false;
        for (int b : super)
            for (int c : forced_by(rs, a, b))
                if (!in(set, c)) return false;
    }
    return true;
}

}  // namespace twistfact::rank

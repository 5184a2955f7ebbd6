#include "twistfact/kernels.hpp"

#include <algorithm>
#include <omp.h>

#include "twistfact/error.hpp"

namespace twistfact::kernels {

Exec parse_exec(const std::string& s) {
    if (s == "serial") return Exec::serial;
    if (s == "parallel" || s == "omp") return Exec::parallel;
    throw InputError("unknown execution mode '" + s + "' (serial, parallel)");
}

std::optional<std::vector<std::uint32_t>> LayeredTable::trace(const Matrix& m) const {
    auto it = last_index.find(m);
    if (it == last_index.end()) return std::nullopt;
    std::vector<std::uint32_t> out(layers.size());
    std::uint32_t idx = it->second;
    for (std::size_t l = layers.size() - 1; l > 0; --l) {
        out[l] = parent[l - 1][idx].second;
        idx = parent[l - 1][idx].first;
    }
    out[0] = idx;
    return out;
}

namespace {

std::vector<Matrix> products(const InvolutiveRing& r, const std::vector<Matrix>& prev, const std::vector<Matrix>& step,
                             Exec exec) {
    const std::size_t ns = step.size();
    const auto total = static_cast<std::int64_t>(prev.size() * ns);
    std::vector<Matrix> out(static_cast<std::size_t>(total));
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (std::int64_t k = 0; k < total; ++k)
            out[k] = mat::mul(r, prev[static_cast<std::size_t>(k) / ns], step[static_cast<std::size_t>(k) % ns]);
    } else {
        for (std::int64_t k = 0; k < total; ++k)
            out[k] = mat::mul(r, prev[static_cast<std::size_t>(k) / ns], step[static_cast<std::size_t>(k) % ns]);
    }
    return out;
}

}  // namespace

LayeredTable layered_products(const InvolutiveRing& r, const std::vector<Matrix>& start,
                              const std::vector<std::vector<Matrix>>& steps, Exec exec, std::uint64_t cap) {
    LayeredTable t;
    t.layers.push_back(start);
    for (const auto& step : steps) {
        const auto& prev = t.layers.back();
        if (static_cast<std::uint64_t>(prev.size()) * step.size() > cap)
            throw CapExceeded("layered product table would visit more than " + std::to_string(cap) + " products");
        auto prod = products(r, prev, step, exec);
        std::unordered_map<Matrix, std::uint32_t, MatrixHash> index;
        std::vector<Matrix> layer;
        std::vector<std::pair<std::uint32_t, std::uint32_t>> par;
        for (std::size_t k = 0; k < prod.size(); ++k) {
            auto [it, fresh] = index.emplace(prod[k], static_cast<std::uint32_t>(layer.size()));
            if (!fresh) continue;
            layer.push_back(prod[k]);
            par.emplace_back(static_cast<std::uint32_t>(k / step.size()), static_cast<std::uint32_t>(k % step.size()));
        }
        t.layers.push_back(std::move(layer));
        t.parent.push_back(std::move(par));
        t.last_index = std::move(index);
    }
    if (steps.empty())
        for (std::size_t j = 0; j < start.size(); ++j) t.last_index.emplace(start[j], static_cast<std::uint32_t>(j));
    return t;
}

std::vector<Matrix> word_products(const InvolutiveRing& r, const std::vector<std::vector<Matrix>>& steps, Exec exec) {
    if (steps.empty()) return {};
    const int n = steps.front().front().n();
    std::uint64_t total = 1;
    for (const auto& s : steps) total *= s.size();
    const auto L = steps.size();

    auto run = [&](std::uint64_t lo, std::uint64_t hi, std::vector<Matrix>& out) {
        std::vector<std::size_t> digit(L);
        for (std::uint64_t w = lo; w < hi; ++w) {
            std::uint64_t c = w;
            for (std::size_t i = L; i-- > 0;) {
                digit[i] = c % steps[i].size();
                c /= steps[i].size();
            }
            Matrix m = mat::identity(r, n);
            for (std::size_t i = 0; i < L; ++i) m = mat::mul(r, m, steps[i][digit[i]]);
            out.push_back(m);
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
    };

    std::vector<Matrix> all;
    if (exec == Exec::parallel) {
        std::vector<std::vector<Matrix>> parts(static_cast<std::size_t>(omp_get_max_threads()));
#pragma omp parallel
        {
            const auto tid = static_cast<std::uint64_t>(omp_get_thread_num());
            const auto nt = static_cast<std::uint64_t>(omp_get_num_threads());
            run(total * tid / nt, total * (tid + 1) / nt, parts[tid]);
        }
        for (auto& p : parts) all.insert(all.end(), p.begin(), p.end());
        std::sort(all.begin(), all.end());
        all.erase(std::unique(all.begin(), all.end()), all.end());
    } else {
        run(0, total, all);
    }
    return all;
}

std::vector<std::size_t> gauss_roundtrip(const InvolutiveRing& r, const std::vector<Matrix>& elems,
                                         su3::Orientation o, const RowSolver& solver, Exec exec) {
    std::vector<char> bad(elems.size(), 0);
    auto one = [&](std::size_t i) {
        try {
            auto f = su3::gauss_decompose(r, elems[i], o, solver);
            bad[i] = su3::evaluate(r, f) != elems[i];
        } catch (const std::exception&) {
            bad[i] = 1;
        }
    };
    const auto total = static_cast<std::int64_t>(elems.size());
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 16)
        for (std::int64_t i = 0; i < total; ++i) one(static_cast<std::size_t>(i));
    } else {
        for (std::int64_t i = 0; i < total; ++i) one(static_cast<std::size_t>(i));
    }
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < bad.size(); ++i)
        if (bad[i]) out.push_back(i);
    return out;
}

std::vector<Matrix> unipotents(const InvolutiveRing& r, su3::Sign s) {
    std::vector<Matrix> out;
    for (const auto& p : apair_list(r)) out.push_back(su3::x_signed(r, s, p));
    return out;
}

}  // namespace twistfact::kernels

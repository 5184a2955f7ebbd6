#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "twistfact/ring.hpp"

namespace twistfact {

// Square matrix of size n <= 5 over a ring; entries are element indices.
class Matrix {
public:
    static constexpr int kMax = 5;

    Matrix() = default;
    explicit Matrix(int n) : n_(n) {}

    int n() const { return n_; }
    Elem& operator()(int i, int j) { return e_[i * kMax + j]; }
    Elem operator()(int i, int j) const { return e_[i * kMax + j]; }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        if (a.n_ != b.n_) return false;
        for (int i = 0; i < a.n_; ++i)
            for (int j = 0; j < a.n_; ++j)
                if (a(i, j) != b(i, j)) return false;
        return true;
    }
    friend bool operator<(const Matrix& a, const Matrix& b) {
        if (a.n_ != b.n_) return a.n_ < b.n_;
        for (int i = 0; i < a.n_; ++i)
            for (int j = 0; j < a.n_; ++j)
                if (a(i, j) != b(i, j)) return a(i, j) < b(i, j);
        return false;
    }
    std::size_t hash() const;

private:
    int n_ = 0;
    std::array<Elem, kMax * kMax> e_{};
};

struct MatrixHash {
    std::size_t operator()(const Matrix& m) const { return m.hash(); }
};

namespace mat {

Matrix identity(const InvolutiveRing& r, int n);
Matrix mul(const InvolutiveRing& r, const Matrix& a, const Matrix& b);
Matrix conj(const InvolutiveRing& r, const Matrix& a);
Matrix transpose(const Matrix& a);
Elem det(const InvolutiveRing& r, const Matrix& a);
bool is_identity(const InvolutiveRing& r, const Matrix& a);

// Antidiagonal form with entry (-1)^i at (i, n+1-i), 1-based.
Matrix form_j(const InvolutiveRing& r, int n);
// A^T J bar(A) == J
bool preserves_form(const InvolutiveRing& r, const Matrix& a);
// J^{-1} bar(A)^T J; the group inverse for matrices that preserve the form.
Matrix sigma_inverse(const InvolutiveRing& r, const Matrix& a);
// Membership in the unitary group of J (no determinant condition).
bool is_sigma_fixed(const InvolutiveRing& r, const Matrix& a);

bool is_upper_unitriangular(const InvolutiveRing& r, const Matrix& a);
bool is_lower_unitriangular(const InvolutiveRing& r, const Matrix& a);
bool is_diagonal(const Matrix& a);

std::vector<std::vector<std::string>> to_literals(const InvolutiveRing& r, const Matrix& a);
Matrix from_literals(const InvolutiveRing& r, const std::vector<std::vector<std::string>>& rows);
std::string to_string(const InvolutiveRing& r, const Matrix& a);

}  // namespace mat
}  // namespace twistfact

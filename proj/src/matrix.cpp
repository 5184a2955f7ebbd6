#include "twistfact/matrix.hpp"

#include "twistfact/error.hpp"

namespace twistfact {

std::size_t Matrix::hash() const {
    std::size_t h = 1469598103934665603ull ^ static_cast<std::size_t>(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
            h ^= (*this)(i, j).id;
            h *= 1099511628211ull;
        }
    return h;
}

namespace mat {

Matrix identity(const InvolutiveRing& r, int n) {
    Matrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = r.one();
    return m;
}

Matrix mul(const InvolutiveRing& r, const Matrix& a, const Matrix& b) {
    const int n = a.n();
    Matrix c(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            Elem aik = a(i, k);
            if (aik.id == 0) continue;
            for (int j = 0; j < n; ++j)
                if (b(k, j).id != 0) c(i, j) = r.add(c(i, j), r.mul(aik, b(k, j)));
        }
    return c;
}

Matrix conj(const InvolutiveRing& r, const Matrix& a) {
    Matrix c(a.n());
    for (int i = 0; i < a.n(); ++i)
        for (int j = 0; j < a.n(); ++j) c(i, j) = r.theta(a(i, j));
    return c;
}

Matrix transpose(const Matrix& a) {
    Matrix c(a.n());
    for (int i = 0; i < a.n(); ++i)
        for (int j = 0; j < a.n(); ++j) c(i, j) = a(j, i);
    return c;
}

namespace {

Elem det_rec(const InvolutiveRing& r, const Matrix& a, int row, unsigned used) {
    const int n = a.n();
    if (row == n) return r.one();
    Elem acc = r.zero();
    int sign_pos = 0;
    for (int j = 0; j < n; ++j) {
        if (used & (1u << j)) continue;
        Elem x = a(row, j);
        if (x.id != 0) {
            Elem term = r.mul(x, det_rec(r, a, row + 1, used | (1u << j)));
            acc = (sign_pos % 2 == 0) ? r.add(acc, term) : r.sub(acc, term);
        }
        ++sign_pos;
    }
    return acc;
}

}  // namespace

Elem det(const InvolutiveRing& r, const Matrix& a) { return det_rec(r, a, 0, 0); }

bool is_identity(const InvolutiveRing& r, const Matrix& a) { return a == identity(r, a.n()); }

Matrix form_j(const InvolutiveRing& r, int n) {
    Matrix j(n);
    for (int i = 1; i <= n; ++i) j(i - 1, n - i) = (i % 2 == 0) ? r.one() : r.neg(r.one());
    return j;
}

bool preserves_form(const InvolutiveRing& r, const Matrix& a) {
    Matrix j = form_j(r, a.n());
    return mul(r, mul(r, transpose(a), j), conj(r, a)) == j;
}

Matrix sigma_inverse(const InvolutiveRing& r, const Matrix& a) {
    const int n = a.n();
    // J^2 = (-1)^(n+1) I, so J^{-1} = (-1)^(n+1) J
    Matrix j = form_j(r, n);
    Matrix jinv = j;
    if (n % 2 == 0)
        for (int i = 0; i < n; ++i) jinv(i, n - 1 - i) = r.neg(j(i, n - 1 - i));
    return mul(r, mul(r, jinv, transpose(conj(r, a))), j);
}

bool is_sigma_fixed(const InvolutiveRing& r, const Matrix& a) { return preserves_form(r, a); }

bool is_upper_unitriangular(const InvolutiveRing& r, const Matrix& a) {
    for (int i = 0; i < a.n(); ++i) {
        if (a(i, i) != r.one()) return false;
        for (int j = 0; j < i; ++j)
            if (a(i, j).id != 0) return false;
    }
    return true;
}

bool is_lower_unitriangular(const InvolutiveRing& r, const Matrix& a) {
    return is_upper_unitriangular(r, transpose(a));
}

bool is_diagonal(const Matrix& a) {
    for (int i = 0; i < a.n(); ++i)
        for (int j = 0; j < a.n(); ++j)
            if (i != j && a(i, j).id != 0) return false;
    return true;
}

std::vector<std::vector<std::string>> to_literals(const InvolutiveRing& r, const Matrix& a) {
    std::vector<std::vector<std::string>> rows(a.n());
    for (int i = 0; i < a.n(); ++i)
        for (int j = 0; j < a.n(); ++j) rows[i].push_back(r.format(a(i, j)));
    return rows;
}

Matrix from_literals(const InvolutiveRing& r, const std::vector<std::vector<std::string>>& rows) {
    const int n = static_cast<int>(rows.size());
    if (n < 1 || n > Matrix::kMax) throw InputError("matrix must have between 1 and 5 rows");
    Matrix m(n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[i].size()) != n) throw InputError("matrix rows must form a square");
        for (int j = 0; j < n; ++j) m(i, j) = r.parse_element(rows[i][j]);
    }
    return m;
}

std::string to_string(const InvolutiveRing& r, const Matrix& a) {
    std::string out = "[";
    for (int i = 0; i < a.n(); ++i) {
        out += i ? ", [" : "[";
        for (int j = 0; j < a.n(); ++j) out += (j ? ", " : "") + r.format(a(i, j));
        out += "]";
    }
    return out + "]";
}

}  // namespace mat
}  // namespace twistfact

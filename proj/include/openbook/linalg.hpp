#pragma once

#include <functional>
#include <vector>

#include "openbook/poly.hpp"

namespace openbook {

template <class T>
using Matrix = std::vector<std::vector<T>>;

/// Visit all size-k index subsets of {0..n-1} in lexicographic order.
inline void for_each_combination(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
    if (k < 0 || k > n) return;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        fn(idx);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) return;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

namespace detail {

template <class P>
P laplace_det(const Matrix<P>& a) {
    const int n = static_cast<int>(a.size());
    if (n == 1) return a[0][0];
    if (n == 2) return a[0][0] * a[1][1] - a[0][1] * a[1][0];
    // expand along the first row
    P det = a[0][0] - a[0][0];  // zero of the right arity
    for (int j = 0; j < n; ++j) {
        if (a[0][j].is_zero()) continue;
        Matrix<P> sub;
        sub.reserve(n - 1);
        for (int r = 1; r < n; ++r) {
            std::vector<P> row;
            row.reserve(n - 1);
            for (int c = 0; c < n; ++c)
                if (c != j) row.push_back(a[r][c]);
            sub.push_back(std::move(row));
        }
        P term = a[0][j] * laplace_det(sub);
        if (j % 2)
            det = det - term;
        else
            det = det + term;
    }
    return det;
}

// Fraction-free (Bareiss) elimination; exact division is guaranteed.
template <class P>
P bareiss_det(Matrix<P> a) {
    const int n = static_cast<int>(a.size());
    P prev_pivot;  // starts as 1
    bool have_prev = false;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a[k][k].is_zero()) {
            int swap_row = -1;
            for (int r = k + 1; r < n; ++r)
                if (!a[r][k].is_zero()) {
                    swap_row = r;
                    break;
                }
            if (swap_row < 0) return a[k][k];  // zero column => zero determinant
            std::swap(a[k], a[swap_row]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                P num = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                a[i][j] = have_prev ? num.divide_exact(prev_pivot) : num;
            }
            a[i][k] = a[i][k] - a[i][k];  // zero
        }
        prev_pivot = a[k][k];
        have_prev = true;
    }
    P det = a[n - 1][n - 1];
    if (sign < 0) det = -det;
    return det;
}

}  // namespace detail

/// Exact determinant of a square polynomial matrix.
template <class P>
P poly_det(const Matrix<P>& a) {
    if (a.empty()) throw std::invalid_argument("empty matrix");
    for (const auto& row : a)
        if (row.size() != a.size()) throw std::invalid_argument("non-square matrix");
    if (a.size() <= 4) return detail::laplace_det(a);
    return detail::bareiss_det(a);
}

/// All k x k minors of an r x m matrix (row and column subsets of size k),
/// in lexicographic subset order, rows outermost.
template <class P>
std::vector<P> all_minors(const Matrix<P>& a, int k) {
    const int r = static_cast<int>(a.size());
    const int m = r ? static_cast<int>(a[0].size()) : 0;
    std::vector<P> out;
    for_each_combination(r, k, [&](const std::vector<int>& rows) {
        for_each_combination(m, k, [&](const std::vector<int>& cols) {
            Matrix<P> sub(k, std::vector<P>());
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) sub[i].push_back(a[rows[i]][cols[j]]);
            out.push_back(poly_det(sub));
        });
    });
    return out;
}

/// Exact rank of a rational matrix.
int rational_rank(Matrix<Rational> a);

/// Basis of the rational nullspace {x : a x = 0}.
std::vector<std::vector<Rational>> rational_kernel(Matrix<Rational> a);

/// Lattice basis of the integer kernel {x in Z^m : a x = 0}.
std::vector<std::vector<Int>> integer_kernel(Matrix<Int> a);

/// Divide by the gcd and flip sign so the first nonzero entry is positive.
void make_primitive(std::vector<Int>& v);

}  // namespace openbook

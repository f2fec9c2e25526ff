#include "openbook/linalg.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace openbook {

namespace {

// Row-reduce in place; returns pivot columns.
std::vector<int> rref(Matrix<Rational>& a) {
    std::vector<int> pivots;
    if (a.empty()) return pivots;
    const int rows = static_cast<int>(a.size());
    const int cols = static_cast<int>(a[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pivot = -1;
        for (int i = r; i < rows; ++i)
            if (a[i][c] != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        std::swap(a[r], a[pivot]);
        Rational inv = a[r][c];
        for (int j = c; j < cols; ++j) a[r][j] /= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rational f = a[i][c];
            for (int j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

int rational_rank(Matrix<Rational> a) { return static_cast<int>(rref(a).size()); }

std::vector<std::vector<Rational>> rational_kernel(Matrix<Rational> a) {
    if (a.empty()) return {};
    const int cols = static_cast<int>(a[0].size());
    std::vector<int> pivots = rref(a);
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivots) is_pivot[c] = true;

    std::vector<std::vector<Rational>> basis;
    for (int free_c = 0; free_c < cols; ++free_c) {
        if (is_pivot[free_c]) continue;
        std::vector<Rational> v(cols, Rational(0));
        v[free_c] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a[i][free_c];
        basis.push_back(std::move(v));
    }
    return basis;
}

void make_primitive(std::vector<Int>& v) {
    Int g = 0;
    for (const auto& x : v) g = boost::multiprecision::gcd(g, boost::multiprecision::abs(x));
    if (g == 0) return;
    for (auto& x : v) x /= g;
    for (const auto& x : v) {
        if (x == 0) continue;
        if (x < 0)
            for (auto& y : v) y = -y;
        break;
    }
}

std::vector<std::vector<Int>> integer_kernel(Matrix<Int> a) {
    if (a.empty()) return {};
    const int rows = static_cast<int>(a.size());
    const int cols = static_cast<int>(a[0].size());

    // Column elimination with unimodular operations, tracking them in u.
    Matrix<Int> u(cols, std::vector<Int>(cols, 0));
    for (int j = 0; j < cols; ++j) u[j][j] = 1;

    auto col_is_zero_below = [&](int c, int from_row) {
        for (int i = from_row; i < rows; ++i)
            if (a[i][c] != 0) return false;
        return true;
    };

    int lead = 0;
    for (int row = 0; row < rows && lead < cols; ++row) {
        // eliminate row entries among columns lead..cols-1 down to one pivot
        while (true) {
            int best = -1;
            for (int c = lead; c < cols; ++c)
                if (a[row][c] != 0 &&
                    (best < 0 ||
                     boost::multiprecision::abs(a[row][c]) < boost::multiprecision::abs(a[row][best])))
                    best = c;
            if (best < 0) break;  // row already zero on the tail
            // swap pivot candidate into position `lead`
            if (best != lead) {
                for (int i = 0; i < rows; ++i) std::swap(a[i][best], a[i][lead]);
                for (int i = 0; i < cols; ++i) std::swap(u[i][best], u[i][lead]);
            }
            bool reduced_all = true;
            for (int c = lead + 1; c < cols; ++c) {
                if (a[row][c] == 0) continue;
                Int q = a[row][c] / a[row][lead];
                if (q != 0) {
                    for (int i = 0; i < rows; ++i) a[i][c] -= q * a[i][lead];
                    for (int i = 0; i < cols; ++i) u[i][c] -= q * u[i][lead];
                }
                if (a[row][c] != 0) reduced_all = false;
            }
            if (reduced_all) {
                ++lead;
                break;
            }
        }
    }

    std::vector<std::vector<Int>> basis;
    for (int c = 0; c < cols; ++c) {
        if (!col_is_zero_below(c, 0)) continue;
        std::vector<Int> v(cols);
        for (int i = 0; i < cols; ++i) v[i] = u[i][c];
        bool zero = true;
        for (const auto& x : v)
            if (x != 0) zero = false;
        if (!zero) basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace openbook

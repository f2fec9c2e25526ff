#include "openbook/newton.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <set>

namespace openbook {

namespace {

using PointQ = std::vector<Rational>;

Rational dotq(const PointQ& a, const PointQ& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

std::vector<Int> integerize(const PointQ& v) {
    Int l = 1;
    for (const auto& r : v) l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(r));
    std::vector<Int> out;
    out.reserve(v.size());
    for (const auto& r : v)
        out.push_back(boost::multiprecision::numerator(r) * (l / boost::multiprecision::denominator(r)));
    std::vector<Int> tmp = out;
    make_primitive(tmp);
    return tmp;
}

int affine_dim(const std::vector<std::vector<Int>>& pts, const std::vector<int>& idx) {
    if (idx.empty()) return -1;
    Matrix<Rational> rows;
    for (std::size_t i = 1; i < idx.size(); ++i) {
        std::vector<Rational> r;
        for (std::size_t j = 0; j < pts[idx[0]].size(); ++j)
            r.push_back(Rational(pts[idx[i]][j] - pts[idx[0]][j]));
        rows.push_back(std::move(r));
    }
    if (rows.empty()) return 0;
    return rational_rank(rows);
}

bool has_positive_entry(const std::vector<Int>& w) {
    for (const auto& x : w)
        if (x > 0) return true;
    return false;
}

bool is_zero_vec(const std::vector<Int>& w) {
    for (const auto& x : w)
        if (x != 0) return false;
    return true;
}

}  // namespace

NewtonPolyhedron newton_polyhedron(const MixedPolynomial& f) {
    const int n = f.nvars();
    if (n > 8) throw std::invalid_argument("newton_polyhedron: dimension bound n <= 8 exceeded");
    if (f.is_zero()) throw std::invalid_argument("newton_polyhedron of the zero polynomial");

    NewtonPolyhedron np;
    np.n = n;
    np.facets_only = n > 4;

    // distinct support points nu + mu, sorted for determinism
    std::set<std::vector<Int>> pts;
    for (const auto& [e, c] : f.poly().terms()) {
        std::vector<Int> s(n);
        for (int j = 0; j < n; ++j) s[j] = Int(e[j]) + Int(e[n + j]);
        pts.insert(std::move(s));
    }
    np.support.assign(pts.begin(), pts.end());
    const int cnt = static_cast<int>(np.support.size());
    const int cap = np.facets_only ? 24 : 40;
    if (cnt > cap) throw std::invalid_argument("newton_polyhedron: support too large for face enumeration");

    // direction space of the affine hull
    Matrix<Rational> diffs;
    for (int i = 1; i < cnt; ++i) {
        std::vector<Rational> r;
        for (int j = 0; j < n; ++j) r.push_back(Rational(np.support[i][j] - np.support[0][j]));
        diffs.push_back(std::move(r));
    }
    const int k = diffs.empty() ? 0 : rational_rank(diffs);
    np.hull_dim = k;

    // orthogonal-complement directions: functionals constant on the hull
    std::vector<std::vector<Int>> lineality;
    if (!diffs.empty()) {
        for (const auto& v : rational_kernel(diffs)) lineality.push_back(integerize(v));
    } else {
        for (int j = 0; j < n; ++j) {
            std::vector<Int> e(n, 0);
            e[j] = 1;
            lineality.push_back(std::move(e));
        }
    }

    auto lineality_weight = [&]() -> std::vector<Int> {
        std::vector<Int> w = lineality.at(0);
        if (!has_positive_entry(w))
            for (auto& x : w) x = -x;
        return w;
    };

    if (k == 0) {
        // single support point: the point is the whole hull
        np.vertices = {0};
        NewtonFace face{{0}, lineality_weight(), 0, true, true};
        np.faces.push_back(std::move(face));
        return np;
    }

    // pivot columns give exact coordinates on the affine hull
    std::vector<int> pivot_cols;
    {
        // recompute rref pivots
        Matrix<Rational> a = diffs;
        int r = 0;
        const int rows = static_cast<int>(a.size());
        for (int c = 0; c < n && r < rows; ++c) {
            int pivot = -1;
            for (int i = r; i < rows; ++i)
                if (a[i][c] != 0) {
                    pivot = i;
                    break;
                }
            if (pivot < 0) continue;
            std::swap(a[r], a[pivot]);
            Rational inv = a[r][c];
            for (int j = c; j < n; ++j) a[r][j] /= inv;
            for (int i = 0; i < rows; ++i) {
                if (i == r || a[i][c] == 0) continue;
                Rational fmul = a[i][c];
                for (int j = c; j < n; ++j) a[i][j] -= fmul * a[r][j];
            }
            pivot_cols.push_back(c);
            ++r;
        }
    }

    std::vector<PointQ> q(cnt, PointQ(k));
    for (int i = 0; i < cnt; ++i)
        for (int d = 0; d < k; ++d)
            q[i][d] = Rational(np.support[i][pivot_cols[d]] - np.support[0][pivot_cols[d]]);

    // facet enumeration: hyperplanes through k affinely independent points
    // with all other points on one side
    std::set<std::vector<int>> facet_sets;
    std::map<std::vector<int>, PointQ> facet_normals;  // in hull coordinates
    for_each_combination(cnt, k, [&](const std::vector<int>& sub) {
        // normal of the hyperplane through q[sub]: kernel of the difference rows
        Matrix<Rational> rows;
        for (int i = 1; i < k; ++i) {
            std::vector<Rational> r(k);
            for (int d = 0; d < k; ++d) r[d] = q[sub[i]][d] - q[sub[0]][d];
            rows.push_back(std::move(r));
        }
        std::vector<std::vector<Rational>> ker;
        if (rows.empty()) {
            // k == 1: hyperplane through one point of a line
            ker.push_back({Rational(1)});
        } else {
            ker = rational_kernel(rows);
        }
        if (ker.size() != 1) return;  // affinely dependent subset
        PointQ normal = ker[0];
        Rational c0 = dotq(normal, q[sub[0]]);
        int above = 0, below = 0;
        std::vector<int> on_plane;
        for (int i = 0; i < cnt; ++i) {
            Rational v = dotq(normal, q[i]);
            if (v == c0)
                on_plane.push_back(i);
            else if (v > c0)
                ++above;
            else
                ++below;
        }
        if (above && below) return;  // not a supporting hyperplane
        if (above) {
            for (auto& x : normal) x = -x;  // orient as maximizing
        }
        if (facet_sets.insert(on_plane).second) facet_normals[on_plane] = normal;
    });

    // vertices: points whose containing-facet normals span the hull space
    for (int i = 0; i < cnt; ++i) {
        Matrix<Rational> normals;
        for (const auto& [gset, gnormal] : facet_normals)
            if (std::binary_search(gset.begin(), gset.end(), i)) normals.push_back(gnormal);
        if (!normals.empty() && rational_rank(normals) == k) np.vertices.push_back(i);
    }

    // face lattice: close the facet supports under intersection (n <= 4);
    // otherwise keep facets only
    std::set<std::vector<int>> face_sets = facet_sets;
    if (!np.facets_only) {
        bool grew = true;
        while (grew) {
            grew = false;
            std::vector<std::vector<int>> current(face_sets.begin(), face_sets.end());
            for (std::size_t a = 0; a < current.size(); ++a)
                for (const auto& fs : facet_sets) {
                    std::vector<int> inter;
                    std::set_intersection(current[a].begin(), current[a].end(), fs.begin(),
                                          fs.end(), std::back_inserter(inter));
                    if (!inter.empty() && !face_sets.count(inter)) {
                        face_sets.insert(inter);
                        grew = true;
                    }
                }
        }
    }
    if (k < n) face_sets.insert([&] {
        std::vector<int> all(cnt);
        for (int i = 0; i < cnt; ++i) all[i] = i;
        return all;
    }());

    // weights: scatter hull-coordinate normals back to the original space
    auto lift = [&](const PointQ& normal) {
        PointQ w(n, Rational(0));
        for (int d = 0; d < k; ++d) w[pivot_cols[d]] = normal[d];
        return w;
    };

    for (const auto& fs : face_sets) {
        NewtonFace face;
        face.support = fs;
        face.dim = affine_dim(np.support, fs);
        if (face.dim == k && k == n) continue;  // improper in full-dimensional case
        face.facet = facet_sets.count(fs) > 0 || (face.dim == k && k < n);

        // sum of normals of the containing facets, in hull coordinates
        PointQ acc(k, Rational(0));
        std::vector<PointQ> containing;
        for (const auto& [gset, gnormal] : facet_normals) {
            if (std::includes(gset.begin(), gset.end(), fs.begin(), fs.end())) {
                containing.push_back(gnormal);
                for (int d = 0; d < k; ++d) acc[d] += gnormal[d];
            }
        }
        PointQ w = lift(acc);

        std::vector<Int> wz = integerize(w);
        bool at_inf = has_positive_entry(wz);
        if (!at_inf && !lineality.empty()) {
            // lineality directions do not change values on the hull: use one
            // to force a positive coordinate
            std::vector<Int> u = lineality[0];
            // scale w so adding u dominates one coordinate of u
            Int scale = 1;
            for (const auto& x : wz) scale = std::max(scale, boost::multiprecision::abs(x) + 1);
            std::vector<Int> cand(n);
            for (int rep = 0; rep < 2 && !at_inf; ++rep) {
                for (int j = 0; j < n; ++j) cand[j] = u[j] * scale + wz[j];
                if (has_positive_entry(cand)) {
                    wz = cand;
                    at_inf = true;
                }
                for (auto& x : u) x = -x;
            }
        }
        if (!at_inf && !containing.empty()) {
            // try overweighting a single containing facet whose normal has a
            // positive coordinate
            for (const auto& g : containing) {
                std::vector<Int> gz = integerize(lift(g));
                if (!has_positive_entry(gz)) continue;
                Int scale = 1;
                for (const auto& x : wz) scale = std::max(scale, boost::multiprecision::abs(x) + 1);
                for (int j = 0; j < n; ++j) wz[j] = wz[j] + gz[j] * scale;
                at_inf = true;
                break;
            }
        }
        if (is_zero_vec(wz)) continue;  // no supporting functional (should not happen)
        make_primitive(wz);
        face.weight = wz;
        face.at_infinity = at_inf;
        np.faces.push_back(std::move(face));
    }

    // deterministic order: facets first, then by dimension descending, then
    // by support subset
    std::sort(np.faces.begin(), np.faces.end(), [](const NewtonFace& a, const NewtonFace& b) {
        if (a.dim != b.dim) return a.dim > b.dim;
        return a.support < b.support;
    });

    return np;
}

MixedPolynomial face_polynomial(const MixedPolynomial& f, const NewtonPolyhedron& np,
                                const NewtonFace& face) {
    const int n = f.nvars();
    if (np.n != n) throw std::invalid_argument("face_polynomial: foreign face");
    std::set<std::vector<Int>> allow;
    for (int idx : face.support) {
        if (idx < 0 || idx >= static_cast<int>(np.support.size()))
            throw std::invalid_argument("face_polynomial: foreign face");
        allow.insert(np.support[idx]);
    }
    CPoly out(2 * n);
    for (const auto& [e, c] : f.poly().terms()) {
        std::vector<Int> s(n);
        for (int j = 0; j < n; ++j) s[j] = Int(e[j]) + Int(e[n + j]);
        if (allow.count(s)) out.add_term(e, c);
    }
    return {n, out};
}

std::vector<int> bad_face_candidates(const NewtonPolyhedron& np) {
    std::vector<int> out;
    for (std::size_t i = 0; i < np.faces.size(); ++i) {
        const auto& face = np.faces[i];
        if (!face.at_infinity || face.dim != 1) continue;
        bool pos = false, neg = false;
        for (const auto& x : face.weight) {
            pos = pos || x > 0;
            neg = neg || x < 0;
        }
        if (pos && neg) out.push_back(static_cast<int>(i));
    }
    return out;
}

}  // namespace openbook

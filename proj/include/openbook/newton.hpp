#pragma once

#include <vector>

#include "openbook/linalg.hpp"
#include "openbook/mixed.hpp"

namespace openbook {

/// A face of the Newton polyhedron: the subset of support points maximizing
/// an integer linear functional. `at_infinity` records whether some
/// supporting functional has a positive coefficient (the orientation that
/// matters for behaviour at infinity).
struct NewtonFace {
    std::vector<int> support;   // indices into NewtonPolyhedron::support
    std::vector<Int> weight;    // a supporting functional, primitive
    int dim = 0;
    bool at_infinity = false;
    bool facet = false;
};

/// Convex hull of the support {nu + mu} of a mixed polynomial, with its
/// face list. For n <= 4 the full proper-face lattice is computed; for
/// 4 < n <= 8 only facets (and the whole-hull face when the hull is not
/// full-dimensional).
struct NewtonPolyhedron {
    int n = 0;
    std::vector<std::vector<Int>> support;  // distinct points, sorted
    std::vector<int> vertices;              // indices of 0-dimensional faces
    std::vector<NewtonFace> faces;
    int hull_dim = 0;
    bool facets_only = false;
};

NewtonPolyhedron newton_polyhedron(const MixedPolynomial& f);

/// Sum of the terms of f whose nu + mu lies in the face's support subset.
MixedPolynomial face_polynomial(const MixedPolynomial& f, const NewtonPolyhedron& np,
                                const NewtonFace& face);

/// Heuristic candidates for "strictly bad" faces: 1-dimensional at-infinity
/// faces whose supporting functional has mixed signs. Advisory only; the
/// actual designation is user input.
std::vector<int> bad_face_candidates(const NewtonPolyhedron& np);

}  // namespace openbook

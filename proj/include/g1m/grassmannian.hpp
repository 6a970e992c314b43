#ifndef G1M_GRASSMANNIAN_HPP
#define G1M_GRASSMANNIAN_HPP

#include <array>
#include <string>
#include <vector>

#include "g1m/ideal.hpp"

namespace g1m {
namespace grass {

// Plucker coordinates [z12 : z13 : z14 : z15 : z23 : z24 : z25 : z34 : z35 : z45]
inline const std::array<std::pair<int, int>, 10>& coord_pairs() {
    static const std::array<std::pair<int, int>, 10> pairs = {
        {{1, 2}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}, {3, 4}, {3, 5}, {4, 5}}};
    return pairs;
}

inline Ring plucker_ring(const Field& field = Field::rationals()) {
    std::vector<VarSpec> vars;
    for (const auto& [i, j] : coord_pairs())
        vars.push_back({"z" + std::to_string(i) + std::to_string(j), 1});
    return make_ring(vars, field);
}

// the five quadrics cutting out Gr(2,5) in P^9
inline IdealPresentation plucker_ideal(const Field& field = Field::rationals()) {
    Ring R = plucker_ring(field);
    IdealPresentation I(R, "Plucker quadrics of Gr(2,5)");
    I.add("q1", parse_poly(R, "z12*z34 + z14*z23 - z13*z24"));
    I.add("q2", parse_poly(R, "z13*z45 + z15*z34 - z14*z35"));
    I.add("q3", parse_poly(R, "z12*z45 + z15*z24 - z14*z25"));
    I.add("q4", parse_poly(R, "z12*z35 + z15*z23 - z13*z25"));
    I.add("q5", parse_poly(R, "z23*z45 + z25*z34 - z24*z35"));
    return I;
}

using Point = std::vector<Scalar>;  // 10 homogeneous coordinates

inline Point make_point(const Field& f, std::initializer_list<long> coords) {
    Point p;
    for (long c : coords) p.push_back(Scalar::of_int(f, c));
    return p;
}

// the four spanning points of L = P^3 and the fifth intersection point
inline std::vector<Point> L_points(const Field& f = Field::rationals()) {
    return {
        make_point(f, {1, 0, -1, 0, 0, 1, 0, 0, 0, 0}),
        make_point(f, {0, 1, 0, -1, 0, 0, 0, 0, 1, 0}),
        make_point(f, {0, 0, 0, 0, 1, 0, 0, 0, 0, 0}),
        make_point(f, {0, 0, 0, 0, 0, 0, 0, 0, 0, 1}),
    };
}

inline Point p5(const Field& f = Field::rationals()) {
    return make_point(f, {1, -1, -1, 1, 1, 1, 0, 0, -1, -1});
}

// the six linear equations defining L
inline std::vector<Polynomial> L_forms(Ring R) {
    return {
        parse_poly(R, "z12 - z24"), parse_poly(R, "z13 - z35"), parse_poly(R, "z14 + z24"),
        parse_poly(R, "z15 + z35"), parse_poly(R, "z25"),       parse_poly(R, "z34"),
    };
}

inline bool on_grassmannian(const Point& p, const Field& f) {
    IdealPresentation I = plucker_ideal(f);
    return point_on_scheme(I, p);
}

// Plucker vector of a 2x5 matrix (the wedge of its rows)
inline Point wedge(const std::vector<std::vector<Scalar>>& M) {
    require(M.size() == 2 && M[0].size() == 5, "wedge expects a 2x5 matrix");
    Point out;
    for (const auto& [i, j] : coord_pairs())
        out.push_back(M[0][i - 1] * M[1][j - 1] - M[0][j - 1] * M[1][i - 1]);
    return out;
}

inline bool proportional(const Point& a, const Point& b) {
    // a x b = 0 componentwise for all 2x2 minors
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = i + 1; j < a.size(); ++j)
            if (a[i] * b[j] != a[j] * b[i]) return false;
    return true;
}

// ideal of Gr(2,5) cut by a list of linear forms
inline IdealPresentation section_ideal(const Field& f, const std::vector<Polynomial>& forms) {
    IdealPresentation I = plucker_ideal(f);
    int k = 0;
    for (const auto& fm : forms) I.add("L" + std::to_string(k++), fm);
    I.provenance = "Plucker quadrics + linear section";
    return I;
}

// rank of a list of linear forms
inline int forms_rank(Ring R, const std::vector<Polynomial>& forms) {
    SparseMatrix M(static_cast<int>(forms.size()), R->nvars(), R->field);
    Monomial one = mono_one(*R);
    for (size_t r = 0; r < forms.size(); ++r)
        for (int v = 0; v < R->nvars(); ++v) {
            Monomial xm = one;
            xm[v] = 1;
            Scalar c = forms[r].coeff(xm);
            if (!c.is_zero()) M.set(static_cast<int>(r), v, c);
        }
    return rank_of(M);
}

// a random 5-dimensional subspace of the span of the six L-forms, as five
// independent combinations
inline std::vector<Polynomial> random_section_forms(Ring R, Rng& rng) {
    auto base = L_forms(R);
    const Field& f = R->field;
    for (int attempt = 0; attempt < 100; ++attempt) {
        std::vector<Polynomial> combo;
        for (int r = 0; r < 5; ++r) {
            Polynomial s = Polynomial::zero(R);
            for (int c = 0; c < 6; ++c) s += base[c] * random_scalar(f, rng, -5, 5);
            combo.push_back(s);
        }
        bool ok = true;
        for (const auto& s : combo) ok = ok && !s.is_zero();
        if (ok && forms_rank(R, combo) == 5) return combo;
    }
    throw error("failed to sample independent section forms");
}

}  // namespace grass
}  // namespace g1m

#endif

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "g1m/moduli.hpp"

using namespace g1m;
using namespace g1m::moduli;

TEST_CASE("full coordinates: variable and relation counts") {
    auto M3 = u_n_full(3);
    CHECK(M3.ring->nvars() == 4);  // a, b, c, d
    CHECK(M3.ideal.gens.empty());

    auto M4 = u_n_full(4);
    // only the i = 4 relation families survive
    CHECK(M4.ideal.gens.size() == 4);
    for (const auto& [name, g] : M4.ideal.gens) CHECK(name.find("4") != std::string::npos);

    auto M6 = u_n_full(6);
    CHECK(M6.ring->nvars() == 4 + 5 * 3 + (10 - 1));
    CHECK(homogeneity_check(M6.ideal));
    CHECK(homogeneity_check(u_n_full(7).ideal));
}

TEST_CASE("reduced coordinates: counts, weights, homogeneity") {
    auto M5 = u_n_reduced(5);
    CHECK(M5.ideal.gens.size() == 2);  // the single pair (4,5), no triple
    auto M6 = u_n_reduced(6);
    CHECK(M6.ideal.gens.size() == 7);  // 2*3 pair generators + 1 triple
    for (const auto& [name, g] : M6.ideal.gens) {
        CHECK(g.is_homogeneous());
        CHECK(g.weighted_degree() == 2);
    }
    auto M4 = u_n_reduced(4);
    CHECK(M4.ideal.gens.empty());
    CHECK(M4.ring->nvars() == 5);  // A^5
}

TEST_CASE("elimination of c, cb: U_5 becomes free, generators stay quadratic") {
    auto E5 = u_n_eliminated(5);
    CHECK(E5.ring->nvars() == 6);  // A^6 with a, c4, cb4, c5, cb5, c45
    CHECK(E5.ideal.gens.empty());

    auto E6 = u_n_eliminated(6);
    CHECK(E6.ring->nvars() == 10);
    CHECK(E6.ideal.gens.size() == 5);  // 7 generators minus the (4,5) pair used up
    for (const auto& [name, g] : E6.ideal.gens) {
        CHECK(g.is_homogeneous());
        CHECK(g.weighted_degree() == 2);
    }
    auto mg = minimal_generator_degrees(E6.ideal, 4);
    CHECK(mg.degrees == std::map<int64_t, int>{{2, 5}});
}

TEST_CASE("full and reduced presentations define the same ideal") {
    for (int n : {5, 6}) {
        auto F = u_n_full(n);
        auto R = u_n_reduced(n);
        RingMap eps = full_to_reduced_map(n);
        // images of the full relations land in the reduced ideal
        GroebnerBasis gbR = buchberger(R.ideal, 3);
        for (const auto& [name, g] : F.ideal.gens) {
            Polynomial img = eps.apply(g);
            if (img.is_zero()) continue;
            auto m = ideal_member_gb(img, gbR, true);
            CHECK(m.status == MemberStatus::In);
        }
        // and conversely the reduced generators lie in the image ideal
        IdealPresentation image_ideal(R.ring, "image of full relations");
        int k = 0;
        for (const auto& [name, g] : F.ideal.gens) {
            Polynomial img = eps.apply(g);
            if (!img.is_zero()) image_ideal.add("img" + std::to_string(k++), img);
        }
        GroebnerBasis gbI = buchberger(image_ideal, 3);
        for (const auto& [name, g] : R.ideal.gens)
            CHECK(ideal_member_gb(g, gbI, true).status == MemberStatus::In);
    }
}

TEST_CASE("tangent dimension at the origin: (n-1)(n-2)/2") {
    CHECK(tangent_dimension_at_origin(u_n_full(6).ideal) == 10);
    CHECK(tangent_dimension_at_origin(u_n_full(7).ideal) == 15);
    CHECK(tangent_dimension_at_origin(u_n_reduced(6).ideal) == 10);
    CHECK(tangent_dimension_at_origin(u_n_reduced(7).ideal) == 15);
}

TEST_CASE("universal curve: printed shapes") {
    auto C3 = curve_over_un(3);
    REQUIRE(C3.relations.gens.size() == 1);
    CHECK(C3.relations.gens[0].second ==
          parse_poly(C3.ring, "x2*x3^2 - x2^2*x3 - a*x2*x3 - b*x2 - c*x3 - d"));
    CHECK(C3.homog_relations.gens[0].second ==
          parse_poly(C3.homog_ring, "X2*X3^2 - X2^2*X3 - a*T*X2*X3 - b*T^2*X2 - c*T^2*X3 - d*T^3"));

    // all parameters zero: the elliptic n-fold curve x_i x_j = x_2 x_3
    Field q = Field::rationals();
    Ring R5 = reduced_ring(5, q);
    std::vector<Scalar> origin(R5->nvars(), Scalar::of_int(q, 0));
    auto C5 = curve_over_un(5, q, origin);
    for (const auto& [name, g] : C5.relations.gens) {
        // every relation is x_i x_j - x_2 x_3 for some pair
        CHECK(g.terms().size() == 2);
        CHECK(g.coeff(parse_poly(C5.ring, "x2*x3").leading().m) == -Scalar::of_int(q, 1));
    }
    // relations are weighted-homogeneous over the symbolic base
    CHECK(homogeneity_check(curve_over_un(6).relations));
    // parameters off the moduli scheme are rejected
    Ring R6 = reduced_ring(6, q);
    std::vector<Scalar> bad(R6->nvars(), Scalar::of_int(q, 1));
    CHECK_THROWS_AS(curve_over_un(6, q, bad), error);
}

TEST_CASE("special curves: cusp and tacnode unfoldings") {
    Field q = Field::rationals();
    auto C1 = special_curve(1, q, std::vector<Scalar>{Scalar::of_int(q, 0), Scalar::of_int(q, 0)});
    CHECK(C1.relations.gens[0].second == parse_poly(C1.ring, "y^2 - x^3"));
    auto C2 = special_curve(2, q, std::vector<Scalar>{Scalar::of_int(q, 0), Scalar::of_int(q, 0), Scalar::of_int(q, 0)});
    CHECK(C2.relations.gens[0].second == parse_poly(C2.ring, "y^2 - y*x^2"));

    // the wheel of two lines sits at alpha = 1/4: f1^2 - f1 h^2 = (1/4)(f1 - h^2)
    Scalar half = Scalar::rational(1, 2), quarter = Scalar::rational(1, 4);
    UniPoly u = UniPoly::linear(q, Scalar::of_int(q, 0), Scalar::of_int(q, 1));
    UniPoly h1 = u - UniPoly::constant(q, half);          // u - 1/2 on C1
    UniPoly f1 = h1 * h1;                                 // (u - 1/2)^2 on C1
    UniPoly h2 = UniPoly::constant(q, half) - u;          // 1/2 - u on C2
    UniPoly f2 = UniPoly::constant(q, quarter);           // 1/4 on C2
    for (auto [f, h] : {std::pair{f1, h1}, std::pair{f2, h2}}) {
        UniPoly lhs = f * f - f * h * h;
        UniPoly rhs = (f - h * h) * quarter;
        CHECK((lhs - rhs).is_zero());
    }
}

TEST_CASE("substitution map onto the next moduli ring") {
    for (int n : {4, 6}) {
        RingMap phi = substitution_map(n);
        CHECK(phi.images[phi.source->var_index(x_name(2))] ==
              Polynomial::var(phi.target, ci_name(n + 1)));
        CHECK(phi.images[phi.source->var_index("a")] == Polynomial::var(phi.target, "a"));
    }
    // the first curve relation maps exactly onto the first reduced relation with j = n+1
    RingMap phi4 = substitution_map(4);
    CurveSpec C4 = curve_over_un(4);
    auto U5 = u_n_reduced(5);
    Polynomial img, expected;
    for (const auto& [name, g] : C4.relations.gens)
        if (name == "r2_4") img = phi4.apply(g);
    for (const auto& [name, g] : U5.ideal.gens)
        if (name == "pair_c_4_5") expected = g;
    CHECK(img == expected);

    // n = 3: the cubic maps to zero identically (U_4 is free)
    RingMap phi3 = substitution_map(3);
    CurveSpec C3 = curve_over_un(3);
    CHECK(phi3.apply(C3.relations.gens[0].second).is_zero());
}

TEST_CASE("S_n involutions are exact involutions preserving the ideal") {
    int n = 6;
    auto M = u_n_reduced(n);
    GroebnerBasis gb = buchberger(M.ideal, 4);
    for (std::string label : {"13", "23", "24", "25", "swap:4:5"}) {
        RingMap sigma = sn_involution(n, label);
        CHECK(sigma.compose(sigma).is_identity());
        for (const auto& [name, g] : M.ideal.gens)
            CHECK(ideal_member_gb(sigma.apply(g), gb, true).status == MemberStatus::In);
    }
    // (13) acts as printed
    RingMap s13 = sn_involution(n, "13");
    Ring R = M.ring;
    CHECK(s13.images[R->var_index("c")] == Polynomial::var(R, "cb"));
    CHECK(s13.images[R->var_index(cij_name(4, 5))] ==
          parse_poly(R, "a + c_4 + cb_4 + c_5 + cb_5 - c_4_5"));
    // conjugation: (45) = (24)(25)(24) as automorphisms of O(U_n); the
    // composed images agree with the direct subscript swap modulo the ideal
    RingMap m24 = sn_involution(n, "24"), m25 = sn_involution(n, "25");
    RingMap conj = m24.compose(m25).compose(m24);
    RingMap direct = sn_involution(n, "swap:4:5");
    for (int v = 0; v < R->nvars(); ++v) {
        Polynomial diff = conj.images[v] - direct.images[v];
        if (diff.is_zero()) continue;
        CHECK((R->vars[v].name == "c" || R->vars[v].name == "cb"));
        CHECK(ideal_member_gb(diff, gb, true).status == MemberStatus::In);
    }
    for (const auto& [name, g] : M.ideal.gens)
        CHECK(ideal_member_gb(conj.apply(g), gb, true).status == MemberStatus::In);
}

TEST_CASE("special points P_in lie on the moduli scheme") {
    for (int n : {6, 7}) {
        auto M = u_n_reduced(n);
        for (int i = 1; i < n; ++i) {
            auto pt = special_point_Pin(n, i);
            CHECK(point_on_scheme(M.ideal, pt));
        }
        // printed patterns
        auto p3 = special_point_Pin(n, 3);
        CHECK(p3[M.ring->var_index(cbi_name(n))].is_one());
        auto p1 = special_point_Pin(n, 1);
        CHECK(p1[M.ring->var_index(ci_name(n))].is_one());
        for (int k = 4; k < n; ++k) CHECK(p1[M.ring->var_index(cij_name(k, n))].is_one());
        CHECK(p1[M.ring->var_index(cbi_name(n))].is_zero());
    }
}

TEST_CASE("wheel point lies on the moduli scheme, images satisfy the wheel relations") {
    for (int n : {3, 6}) {
        auto WP = wheel_point(n);
        auto F = u_n_full(n);
        CHECK(point_on_scheme(F.ideal, WP.full));
        if (n >= 4) {
            auto R = u_n_reduced(n);
            CHECK(point_on_scheme(R.ideal, WP.reduced));
            // reduced values lift back to the full ones
            auto lifted = lift_reduced_point(n, R.ring, F.ring, WP.reduced);
            for (size_t v = 0; v < WP.full.size(); ++v) CHECK(lifted[v] == WP.full[v]);
        }
    }
    // n = 3 wheel parameters as printed
    auto W3 = wheel_point(3);
    auto F3 = u_n_full(3);
    CHECK(W3.full[F3.ring->var_index("a")] == -Scalar::of_int(Field::rationals(), 1));
    CHECK(W3.full[F3.ring->var_index("b")].is_zero());

    // substitute the component images into the wheel relations
    for (int n : {3, 5}) {
        WheelData W = wheel_data(n);
        auto I = wheel_relations(n);
        CHECK(W.images[0][1].coeffs ==
              std::vector<Scalar>{Scalar::of_int(W.field, 1), -Scalar::of_int(W.field, 1)});  // x2|C2 = 1-u2
        for (const auto& [name, rel] : I.gens) {
            for (int k = 1; k <= n; ++k) {
                UniPoly acc(W.field);
                for (const auto& t : rel.terms()) {
                    UniPoly prod = UniPoly::constant(W.field, t.c);
                    for (int v = 0; v < I.ring->nvars(); ++v)
                        for (int e = 0; e < t.m[v]; ++e) prod = prod * W.images[v][k - 1];
                    acc = acc + prod;
                }
                CHECK(acc.is_zero());
            }
        }
    }
}

TEST_CASE("functions on C_{1,n}: membership criterion") {
    Field q = Field::rationals();
    auto cst = [&](long v) { return UniPoly::constant(q, Scalar::of_int(q, v)); };
    UniPoly t = UniPoly::linear(q, Scalar::of_int(q, 0), Scalar::of_int(q, 1));
    // constants pass
    CHECK(c1n_membership({cst(5), cst(5), cst(5)}));
    // (x_1, 0, ..., 0) fails the derivative condition
    CHECK(!c1n_membership({t, cst(0), cst(0)}));
    // branch restrictions of x_j on C_{1,n}: t on C_1 and C_j, zero elsewhere
    int n = 5;
    for (int j = 2; j <= n; ++j) {
        std::vector<UniPoly> tuple(n, cst(0));
        tuple[0] = t;
        tuple[j - 1] = t;
        CHECK(c1n_membership(tuple));
    }
}

TEST_CASE("char-p vector field tables") {
    auto c2 = charp_vector_fields(CharPCase::Cusp2);
    REQUIRE(c2.size() == 4);
    CHECK(c2[1].down_y == parse_poly(c2[1].down_y.ring(), "y"));
    CHECK(c2[1].up[0] == LaurentPoly::term_int(Field::prime(2), 1, 1));  // y d_y <-> t d_t
    CHECK(c2[3].up[0] == LaurentPoly::term_int(Field::prime(2), -2, 1));
    auto t2 = charp_vector_fields(CharPCase::Tacnode2);
    REQUIRE(t2.size() == 4);
    CHECK(t2[3].up[0] == LaurentPoly::term_int(Field::prime(2), 0, 1));  // d_x <-> d_t + d_s
    CHECK(t2[3].up[1] == LaurentPoly::term_int(Field::prime(2), 0, 1));
}

TEST_CASE("fiber sampling produces points on the moduli scheme") {
    Rng rng(2024);
    for (uint64_t p : {101ULL, 211ULL})
        for (int n : {5, 6, 7}) {
            auto pt = sample_un_point(n, p, rng);
            auto M = u_n_reduced(n, Field::prime(p));
            CHECK(point_on_scheme(M.ideal, pt));
        }
}

TEST_CASE("curves are smooth at the marked points (corank-1 Jacobians)") {
    Field q = Field::rationals();
    // origin (the elliptic n-fold curve), the wheel, special points, a sample
    for (int n : {3, 4, 5}) {
        int nb = n == 3 ? 4 : reduced_ring(n, q)->nvars();
        std::vector<Scalar> origin(nb, Scalar::of_int(q, 0));
        CHECK(marked_points_smooth(curve_over_un(n, q, origin)));
    }
    auto WP = wheel_point(6, q);
    CHECK(marked_points_smooth(curve_over_un(6, q, WP.reduced)));
    for (int i : {1, 2, 3, 4}) {
        auto pt = special_point_Pin(6, i, q);
        CHECK(marked_points_smooth(curve_over_un(6, q, pt)));
    }
    // an S_n translate of the wheel point: apply an involution to the coordinates
    RingMap sigma = sn_involution(6, "24", q);
    Ring R6 = reduced_ring(6, q);
    std::vector<Scalar> translated;
    for (int v = 0; v < R6->nvars(); ++v) translated.push_back(sigma.images[v].evaluate(WP.reduced));
    auto M6 = u_n_reduced(6, q);
    REQUIRE(point_on_scheme(M6.ideal, translated));
    CHECK(marked_points_smooth(curve_over_un(6, q, translated)));
    // sampled F_101 points
    Field fp = Field::prime(101);
    Rng rng(31337);
    for (int s = 0; s < 3; ++s) {
        auto pt = sample_un_point(6, 101, rng);
        CHECK(marked_points_smooth(curve_over_un(6, fp, pt)));
    }
}

TEST_CASE("moduli relation bases certify their own S-polynomials") {
    auto M = u_n_reduced(5);
    auto gb = buchberger(M.ideal);  // full basis, no cap
    CHECK(!gb.truncated);
    for (size_t a = 0; a < gb.elems.size(); ++a)
        for (size_t b = a + 1; b < gb.elems.size(); ++b)
            CHECK(normal_form(s_polynomial(gb.elems[a], gb.elems[b]), gb.elems).is_zero());
}

TEST_CASE("rational staircases replay over random large primes") {
    CHECK(modular_crosscheck_counts(u_n_reduced(6).ideal, 4, 999));
    CHECK(modular_crosscheck_counts(u_n_eliminated(6).ideal, 4, 1000));
}

TEST_CASE("observed: monic Groebner bases of the moduli ideals are integral") {
    // recorded fact: over Q no denominators appear, all coefficients are +-1,
    // and the bases stabilize within degree 3
    for (int n : {5, 6, 7}) {
        for (int which : {0, 1}) {
            auto M = which == 0 ? u_n_reduced(n) : u_n_eliminated(n);
            if (M.ideal.gens.empty()) continue;
            auto gb = buchberger(M.ideal, 4);
            CHECK(!gb.truncated);
            for (const auto& g : gb.elems)
                for (const auto& t : g.terms()) {
                    CHECK(t.c.rat().get_den() == 1);
                    CHECK((t.c.rat() == 1 || t.c.rat() == -1));
                }
        }
    }
}

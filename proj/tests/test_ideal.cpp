#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "g1m/ideal.hpp"

using namespace g1m;

namespace {

Ring xy(OrderKind k = OrderKind::WDegLex) {
    // deg-lex with x > y: precedence lists low to high, so y first
    return make_ring({{"x", 1}, {"y", 1}}, Field::rationals(), k, {1, 0});
}

IdealPresentation two_circles(Ring R) {
    IdealPresentation I(R, "test");
    I.add("g1", parse_poly(R, "x^2 - y"));
    I.add("g2", parse_poly(R, "y^2 - x"));
    return I;
}

// brute-force membership: f = sum of monomial-multiplier combinations up to a
// degree bound, found by exact linear solve over the coefficients
bool brute_member(const Polynomial& f, const IdealPresentation& I, int64_t bound) {
    const Ring& R = I.ring;
    std::vector<Polynomial> rows;  // candidate products u*g
    for (const auto& [name, g] : I.gens)
        for (int64_t d = 0; d <= bound; ++d)
            for (const auto& u : monomials_of_degree(R, d))
                rows.push_back(g.mul_term(u, Scalar::of_int(R->field, 1)));
    // unknown coefficients lambda_i with sum lambda_i rows_i = f
    std::map<Monomial, int> col_of;
    auto col = [&](const Monomial& m) {
        auto [it, fresh] = col_of.try_emplace(m, static_cast<int>(col_of.size()));
        return it->second;
    };
    for (const auto& r : rows)
        for (const auto& t : r.terms()) col(t.m);
    for (const auto& t : f.terms()) col(t.m);
    SparseMatrix M(static_cast<int>(col_of.size()), static_cast<int>(rows.size()), R->field);
    for (size_t i = 0; i < rows.size(); ++i)
        for (const auto& t : rows[i].terms()) M.set(col_of.at(t.m), static_cast<int>(i), t.c);
    std::vector<Scalar> b(col_of.size(), Scalar::of_int(R->field, 0));
    for (const auto& t : f.terms()) b[col_of.at(t.m)] = t.c;
    return solve_linear(M, b).has_value();
}

}  // namespace

TEST_CASE("normal form: curve relation rewrite") {
    Ring R = make_ring({{"c4", 1}, {"cb4", 1}, {"c", 2}, {"x2", 1}, {"x3", 1}, {"x4", 1}},
                       Field::rationals(), OrderKind::WDegLex);
    Polynomial rel = parse_poly(R, "x2*x4 - x2*x3 - c4*x4 - cb4*x2 + c");
    Polynomial nf = normal_form(parse_poly(R, "x2*x4"), {rel});
    CHECK(nf == parse_poly(R, "x2*x3 + c4*x4 + cb4*x2 - c"));
}

TEST_CASE("normal form: trivial cases and idempotence") {
    Ring R = xy();
    Polynomial g = parse_poly(R, "x^2 - y");
    CHECK(normal_form(g, {g}).is_zero());
    Polynomial f = parse_poly(R, "x^3*y - 2*x + 5");
    CHECK(normal_form(f, {}) == f);
    Rng rng(23);
    auto I = two_circles(R);
    auto G = buchberger(I).elems;
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Term> ts;
        for (int k = 0; k < 5; ++k)
            ts.push_back({Monomial{(uint8_t)rng.below(5), (uint8_t)rng.below(5)}, random_scalar(R->field, rng)});
        Polynomial h = Polynomial::from_terms(R, ts);
        Polynomial n1 = normal_form(h, G);
        CHECK(normal_form(n1, G) == n1);
        // f - nf(f) is in the ideal, witnessed by the recorded quotients
        Division d = divide(h, G);
        Polynomial recon = d.remainder;
        for (size_t i = 0; i < G.size(); ++i) recon += d.quotients[i] * G[i];
        CHECK(recon == h);
    }
}

TEST_CASE("buchberger: quotient dimension 4 for <x^2-y, y^2-x>") {
    Ring R = xy();
    auto I = two_circles(R);
    auto gb = buchberger(I);
    CHECK(!gb.truncated);
    // every S-polynomial of the returned basis reduces to zero
    for (size_t i = 0; i < gb.elems.size(); ++i)
        for (size_t j = i + 1; j < gb.elems.size(); ++j)
            CHECK(normal_form(s_polynomial(gb.elems[i], gb.elems[j]), gb.elems).is_zero());

    auto sc = standard_monomial_counts(I, 6);
    long long total = 0;
    for (auto c : sc.counts) total += c;
    CHECK(total == 4);

    // independent window oracle: dim of degree-<=6 polynomials modulo the span
    // of generator multiples equals 4
    std::vector<Polynomial> rows;
    for (const auto& [name, g] : I.gens)
        for (int64_t d = 0; d <= 4; ++d)
            for (const auto& u : monomials_of_degree(R, d))
                rows.push_back(g.mul_term(u, Scalar::of_int(R->field, 1)));
    std::map<Monomial, int> col_of;
    for (int64_t d = 0; d <= 6; ++d)
        for (const auto& m : monomials_of_degree(R, d)) col_of.emplace(m, static_cast<int>(col_of.size()));
    SparseMatrix M(static_cast<int>(rows.size()), static_cast<int>(col_of.size()), R->field);
    for (size_t i = 0; i < rows.size(); ++i)
        for (const auto& t : rows[i].terms()) M.set(static_cast<int>(i), col_of.at(t.m), t.c);
    SparseMatrix Mt(M.cols, M.rows, M.field);
    for (const auto& [rc, v] : M.entries) Mt.set(rc.second, rc.first, v);
    int window_dim = static_cast<int>(col_of.size()) - rank_of(Mt);
    CHECK(window_dim == 4);
}

TEST_CASE("buchberger: principal ideal and truncation verdict") {
    Ring R = xy();
    IdealPresentation I(R, "test");
    Polynomial f = parse_poly(R, "2*x^2*y - 4*y");
    I.add("f", f);
    auto gb = buchberger(I);
    REQUIRE(gb.elems.size() == 1);
    CHECK(gb.elems[0] == f.monic());

    // homogeneous ideal truncated below the degree where new elements appear
    Ring H = make_ring({{"x", 1}, {"y", 1}, {"z", 1}}, Field::rationals(), OrderKind::WDegLex, {2, 1, 0});
    IdealPresentation J(H, "test");
    J.add("a", parse_poly(H, "x^2 - y*z"));
    J.add("b", parse_poly(H, "x*y - z^2"));
    auto full = buchberger(J);
    auto cut = buchberger(J, 2);
    CHECK(!full.truncated);
    CHECK(cut.truncated);
    CHECK(cut.elems.size() < full.elems.size());
}

TEST_CASE("ideal membership with certificate and brute-force agreement") {
    Ring R = xy();
    auto I = two_circles(R);
    Polynomial g1 = I.gens[0].second;
    auto m = ideal_member(g1, I);
    CHECK(m.status == MemberStatus::In);

    Polynomial f = parse_poly(R, "x^4 - x");  // x^4 = (x^2)^2 -> y^2 -> x, so member
    auto mf = ideal_member(f, I);
    CHECK(mf.status == MemberStatus::In);
    CHECK(brute_member(f, I, 3));

    Polynomial notin = parse_poly(R, "x + 1");
    CHECK(ideal_member(notin, I).status == MemberStatus::NotIn);
    CHECK(!brute_member(notin, I, 3));

    Rng rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        // random element of the ideal
        std::vector<Term> ts;
        for (int k = 0; k < 3; ++k)
            ts.push_back({Monomial{(uint8_t)rng.below(3), (uint8_t)rng.below(3)}, random_scalar(R->field, rng)});
        Polynomial u = Polynomial::from_terms(R, ts);
        Polynomial elt = u * I.gens[0].second + I.gens[1].second * Polynomial::from_int(R, (long)rng.int_in(-3, 3));
        if (elt.is_zero()) continue;
        CHECK(ideal_member(elt, I).status == MemberStatus::In);
        CHECK(brute_member(elt, I, 4));
    }
}

TEST_CASE("membership beyond a truncated basis returns unknown") {
    Ring H = make_ring({{"x", 1}, {"y", 1}, {"z", 1}}, Field::rationals(), OrderKind::WDegLex, {2, 1, 0});
    IdealPresentation J(H, "test");
    J.add("a", parse_poly(H, "x^2 - y*z"));
    J.add("b", parse_poly(H, "x*y - z^2"));
    REQUIRE(buchberger(J, 2).truncated);
    Polynomial f = parse_poly(H, "x^3");  // degree above the cap
    auto capped = ideal_member(f, J, 2);
    CHECK(capped.status == MemberStatus::Unknown);
    auto full = ideal_member(f, J);
    CHECK(full.status != MemberStatus::Unknown);
}

TEST_CASE("graded proper ideal contains no unit") {
    Ring R = make_ring({{"x", 1}, {"y", 2}}, Field::rationals());
    IdealPresentation I(R, "test");
    I.add("g", parse_poly(R, "x^2 - y"));
    CHECK(ideal_member(Polynomial::from_int(R, 1), I).status == MemberStatus::NotIn);
}

TEST_CASE("standard monomial counts: free ring binomials") {
    std::vector<VarSpec> vars;
    for (int i = 0; i < 6; ++i) vars.push_back({"t" + std::to_string(i), 1});
    Ring R = make_ring(vars, Field::rationals());
    IdealPresentation empty(R, "free");
    auto sc = standard_monomial_counts(empty, 2);
    CHECK(sc.counts == std::vector<long long>{1, 6, 21});
}

TEST_CASE("order independence of intrinsic counts") {
    for (auto kind : {OrderKind::WDegLex, OrderKind::WDegRevLex}) {
        Ring R = make_ring({{"x", 1}, {"y", 1}, {"z", 1}}, Field::rationals(), kind);
        IdealPresentation I(R, "test");
        I.add("a", parse_poly(R, "x*y - z^2"));
        I.add("b", parse_poly(R, "x^2*z - y^2*z"));
        auto sc = standard_monomial_counts(I, 6);
        static std::vector<long long> first;
        if (first.empty()) first = sc.counts;
        else CHECK(sc.counts == first);
    }
}

TEST_CASE("linear part and tangent dimension") {
    Ring R = make_ring({{"u", 1}, {"v", 1}, {"w", 2}}, Field::rationals());
    IdealPresentation I(R, "test");
    I.add("g1", parse_poly(R, "u^2 + w"));
    I.add("g2", parse_poly(R, "u*v"));
    CHECK(tangent_dimension_at_origin(I) == 2);  // w eliminated
    IdealPresentation freeI(R, "free");
    CHECK(tangent_dimension_at_origin(freeI) == 3);
    auto weights = algebra_min_generator_weights(I);
    CHECK(weights == std::map<int, int>{{1, 2}});

    IdealPresentation bad(R, "test");
    bad.add("g", parse_poly(R, "u + 1"));
    CHECK_THROWS_AS(linear_part(bad), error);

    // invariance under randomized invertible generator changes (degree-<=2 truncation)
    Rng rng(77);
    for (int trial = 0; trial < 5; ++trial) {
        Scalar a = random_scalar(R->field, rng), b = random_scalar(R->field, rng);
        while (a.is_zero()) a = random_scalar(R->field, rng);
        IdealPresentation J(R, "test");
        J.add("h1", I.gens[0].second * a + I.gens[1].second * b);
        J.add("h2", I.gens[1].second + I.gens[0].second * Polynomial::var(R, "u"));
        // h2 has the degree-3 term u^3 + ...; same ideal, tangent data unchanged
        CHECK(tangent_dimension_at_origin(J) == 2);
    }
}

TEST_CASE("minimal generator degrees") {
    Ring R = make_ring({{"x", 1}, {"y", 1}}, Field::rationals());
    IdealPresentation I(R, "test");
    I.add("f", parse_poly(R, "x^2*y - x*y^2"));
    auto mg = minimal_generator_degrees(I, 5);
    CHECK(mg.degrees == std::map<int64_t, int>{{3, 1}});

    // two quadrics and the redundant cubic they generate
    IdealPresentation J(R, "test");
    J.add("a", parse_poly(R, "x^2"));
    J.add("b", parse_poly(R, "x*y"));
    J.add("c", parse_poly(R, "x^2*y - x*y^2"));  // = y*a ... x*b combination
    auto mj = minimal_generator_degrees(J, 5);
    CHECK(mj.degrees == std::map<int64_t, int>{{2, 2}});
}

TEST_CASE("jacobian at a point") {
    Ring R = make_ring({{"x", 2}, {"y", 3}, {"d", 4}, {"e", 6}}, Field::prime(101));
    IdealPresentation W(R, "weierstrass");
    W.add("w", parse_poly(R, "y^2 - x^3 - d*x - e"));
    // pick delta=2, eps=3 and search a smooth point
    Scalar d = Scalar::residue(2, 101), e = Scalar::residue(3, 101);
    bool found = false;
    for (uint64_t x = 0; x < 101 && !found; ++x)
        for (uint64_t y = 0; y < 101 && !found; ++y) {
            std::vector<Scalar> pt = {Scalar::residue(x, 101), Scalar::residue(y, 101), d, e};
            if (!W.gens[0].second.evaluate(pt).is_zero()) continue;
            auto J = jacobian_at(W, pt);
            bool sing = J.get(0, 0).is_zero() && J.get(0, 1).is_zero();
            if (!sing) {
                CHECK(rank_of(J) == 1);
                found = true;
            }
        }
    CHECK(found);

    // all partials vanish identically: x^2 in characteristic 2
    Ring R2 = make_ring({{"x", 1}}, Field::prime(2));
    IdealPresentation I2(R2, "test");
    I2.add("g", parse_poly(R2, "x^2"));
    std::vector<Scalar> pt = {Scalar::residue(1, 2)};
    CHECK(rank_of(jacobian_at(I2, pt)) == 0);
}

TEST_CASE("homogeneity check") {
    Ring R = make_ring({{"x", 1}, {"y", 2}, {"al", 2}, {"be", 3}, {"ga", 4}}, Field::rationals());
    IdealPresentation I(R, "tacnode");
    I.add("t", parse_poly(R, "y^2 - y*x^2 - al*y + al*x^2 - be*x - ga"));
    CHECK(homogeneity_check(I));
    IdealPresentation J(R, "test");
    J.add("g", parse_poly(R, "x + y^2"));
    CHECK(!homogeneity_check(J));
}

#ifndef G1M_VERIFY_MISC_HPP
#define G1M_VERIFY_MISC_HPP

// continuation of verify.hpp (wheel, char-p fields, Grassmannian, E-algebra)

#include "g1m/verify.hpp"

namespace g1m {
namespace verify {

// ---------------------------------------------------------------------------
// wheel of projective lines
// ---------------------------------------------------------------------------

inline Verdict check_wheel(int n, const Field& field = Field::rationals(), bool mutate_image = false) {
    detail::Timer timer;
    Verdict v;
    v.check = "wheel";
    v.params = {{"n", n}, {"field", field.str()}, {"mutated", mutate_image}};
    moduli::WheelData W = moduli::wheel_data(n, field);
    if (mutate_image)  // x_2 on C_2 becomes u_2 instead of 1 - u_2
        W.images[0][1] = UniPoly::linear(field, Scalar::of_int(field, 0), Scalar::of_int(field, 1));
    // the images must glue at the nodes (1 on C_k meets 0 on C_{k+1})
    Scalar one = Scalar::of_int(field, 1), zero = Scalar::of_int(field, 0);
    auto eval = [&](const UniPoly& f, const Scalar& at) {
        Scalar acc = zero, pw = one;
        for (const auto& c : f.coeffs) {
            acc += c * pw;
            pw *= at;
        }
        return acc;
    };
    for (int j = 2; j <= n && v.status == Status::Pass; ++j)
        for (int k = 1; k <= n; ++k) {
            int next = k == n ? 1 : k + 1;
            if (eval(W.images[j - 2][k - 1], one) != eval(W.images[j - 2][next - 1], zero)) {
                v.fail({{"x", j}, {"node", k}, {"problem", "images do not glue"}});
                break;
            }
        }
    IdealPresentation I = moduli::wheel_relations(n, field);
    for (const auto& [name, rel] : I.gens) {
        for (int k = 1; k <= n; ++k) {
            UniPoly acc(field);
            for (const auto& t : rel.terms()) {
                UniPoly prod = UniPoly::constant(field, t.c);
                for (int var = 0; var < I.ring->nvars(); ++var)
                    for (int e = 0; e < t.m[var]; ++e) prod = prod * W.images[var][k - 1];
                acc = acc + prod;
            }
            if (!acc.is_zero()) {
                v.fail({{"relation", name}, {"component", k}});
                break;
            }
        }
        if (v.status != Status::Pass) break;
    }
    // the wheel's moduli point satisfies the full relations
    if (v.status == Status::Pass && !mutate_image) {
        auto WP = moduli::wheel_point(n, field);
        auto F = moduli::u_n_full(n, field);
        if (!point_on_scheme(F.ideal, WP.full)) v.fail({{"problem", "wheel point off the moduli scheme"}});
    }
    v.millis = timer.ms();
    return v;
}

// ---------------------------------------------------------------------------
// char 2/3 vector fields
// ---------------------------------------------------------------------------

inline Verdict check_charp_fields(const std::string& case_label, std::optional<uint64_t> p_override = {}) {
    detail::Timer timer;
    Verdict v;
    v.check = "charp-fields";
    v.params = {{"case", case_label}};
    if (p_override) v.params["p_override"] = *p_override;
    moduli::CharPCase cs = moduli::charp_case_parse(case_label);
    auto fields = moduli::charp_vector_fields(cs, p_override);
    uint64_t p = fields.front().p;
    Field k = Field::prime(p);
    // branch images of x and y under the normalization
    std::vector<std::array<LaurentPoly, 2>> nu;  // per branch: (nu* x, nu* y)
    if (cs == moduli::CharPCase::Tacnode2) {
        nu.push_back({LaurentPoly::term_int(k, 1, 1), LaurentPoly::term_int(k, 2, 1)});  // x -> t, y -> t^2
        nu.push_back({LaurentPoly::term_int(k, 1, 1), LaurentPoly(k)});                  // x -> s, y -> 0
    } else {
        nu.push_back({LaurentPoly::term_int(k, 2, 1), LaurentPoly::term_int(k, 3, 1)});  // x -> t^2, y -> t^3
    }
    auto pull = [&](const Polynomial& f, int branch) {
        LaurentPoly acc(k);
        for (const auto& t : f.terms()) {
            LaurentPoly prod = LaurentPoly::term(k, 0, t.c);
            const Ring& R = f.ring();
            for (int var = 0; var < R->nvars(); ++var) {
                const LaurentPoly& img = R->vars[var].name == "x" ? nu[branch][0] : nu[branch][1];
                for (int e = 0; e < t.m[var]; ++e) prod = prod * img;
            }
            acc = acc + prod;
        }
        return acc;
    };
    for (const auto& field : fields) {
        for (size_t branch = 0; branch < nu.size() && v.status == Status::Pass; ++branch) {
            // vtilde(nu* f) = nu*(v(f)) for f = x and f = y
            for (int which = 0; which < 2; ++which) {
                const LaurentPoly& nf = nu[branch][which];
                LaurentPoly lhs = field.up[branch] * nf.derivative();
                LaurentPoly rhs = pull(which == 0 ? field.down_x : field.down_y, static_cast<int>(branch));
                if (!(lhs == rhs)) {
                    v.fail({{"field", field.label},
                            {"branch", branch},
                            {"coordinate", which == 0 ? "x" : "y"},
                            {"lhs", lhs.str()},
                            {"rhs", rhs.str()}});
                    break;
                }
            }
        }
        if (v.status != Status::Pass) break;
    }
    v.millis = timer.ms();
    return v;
}

// ---------------------------------------------------------------------------
// functions on C_{1,n}
// ---------------------------------------------------------------------------

inline Verdict check_c1n_membership(int n, const Field& field = Field::rationals()) {
    detail::Timer timer;
    Verdict v;
    v.check = "c1n-membership";
    v.params = {{"n", n}, {"field", field.str()}};
    auto cst = [&](long c) { return UniPoly::constant(field, Scalar::of_int(field, c)); };
    UniPoly t = UniPoly::linear(field, Scalar::of_int(field, 0), Scalar::of_int(field, 1));
    if (!moduli::c1n_membership(std::vector<UniPoly>(n, cst(5))))
        v.fail({{"case", "constants"}});
    std::vector<UniPoly> bad(n, cst(0));
    bad[0] = t;
    if (moduli::c1n_membership(bad)) v.fail({{"case", "x1 alone should fail"}});
    for (int j = 2; j <= n && v.status == Status::Pass; ++j) {
        std::vector<UniPoly> tuple(n, cst(0));
        tuple[0] = t;
        tuple[j - 1] = t;
        if (!moduli::c1n_membership(tuple)) v.fail({{"case", "x_j restriction"}, {"j", j}});
    }
    v.millis = timer.ms();
    return v;
}

// ---------------------------------------------------------------------------
// Grassmannian
// ---------------------------------------------------------------------------

inline Verdict check_gr_intersection(const Field& field = Field::rationals(), bool mutate_p5 = false) {
    detail::Timer timer;
    Verdict v;
    v.check = "gr-intersection";
    v.params = {{"field", field.str()}, {"mutated", mutate_p5}};
    auto pts = grass::L_points(field);
    auto p = grass::p5(field);
    if (mutate_p5) p[0] += Scalar::of_int(field, 1);
    pts.push_back(p);
    Ring R = grass::plucker_ring(field);
    auto forms = grass::L_forms(R);
    IdealPresentation P = grass::plucker_ideal(field);
    for (size_t i = 0; i < pts.size() && v.status == Status::Pass; ++i) {
        if (!point_on_scheme(P, pts[i])) {
            v.fail({{"point", i + 1}, {"problem", "off the Grassmannian"}});
            break;
        }
        for (const auto& fm : forms)
            if (!fm.evaluate(pts[i]).is_zero()) {
                v.fail({{"point", i + 1}, {"problem", "off L"}});
                break;
            }
    }
    if (v.status == Status::Pass) {
        for (size_t i = 0; i < pts.size(); ++i)
            for (size_t j = i + 1; j < pts.size(); ++j)
                if (grass::proportional(pts[i], pts[j])) {
                    v.fail({{"problem", "points coincide"}, {"i", i + 1}, {"j", j + 1}});
                }
    }
    if (v.status == Status::Pass) {
        IdealPresentation I = grass::section_ideal(field, forms);
        auto sc = standard_monomial_counts(I, 4);
        // five distinct points spanning L = P^3: degree-one slice 4, then 5
        std::vector<long long> expected = {1, 4, 5, 5, 5};
        if (sc.counts != expected) {
            v.fail({{"problem", "intersection not zero-dimensional of degree 5"},
                    {"counts", sc.counts}});
        }
    }
    v.millis = timer.ms();
    return v;
}

inline Verdict check_gr_sections(const Field& field, int trials, uint64_t seed) {
    detail::Timer timer;
    Verdict v;
    v.check = "gr-sections";
    v.params = {{"field", field.str()}, {"trials", trials}, {"seed", seed}};
    Ring R = grass::plucker_ring(field);
    Rng rng(seed);
    // the printed section first: drop the form z25
    auto base = grass::L_forms(R);
    std::vector<std::vector<Polynomial>> sections;
    {
        std::vector<Polynomial> five(base.begin(), base.end());
        five.erase(five.begin() + 4);
        sections.push_back(five);
    }
    for (int t = 0; t < trials; ++t) sections.push_back(grass::random_section_forms(R, rng));
    for (size_t s = 0; s < sections.size() && v.status == Status::Pass; ++s) {
        if (grass::forms_rank(R, sections[s]) != 5) {
            v.fail({{"section", s}, {"problem", "dependent forms"}});
            break;
        }
        auto I = grass::section_ideal(field, sections[s]);
        auto sc = standard_monomial_counts(I, 5);
        for (int m = 1; m <= 5; ++m)
            if (sc.counts[m] != 5LL * m) {
                v.fail({{"section", s}, {"m", m}, {"computed", sc.counts[m]}, {"expected", 5 * m}});
                break;
            }
    }
    v.millis = timer.ms();
    return v;
}

// ---------------------------------------------------------------------------
// E-algebra side
// ---------------------------------------------------------------------------

inline Verdict check_ealgebra_dim(int n, const Field& field = Field::rationals(), bool mutate_rule = false) {
    detail::Timer timer;
    Verdict v;
    v.check = "ealgebra-dim";
    v.params = {{"n", n}, {"field", field.str()}, {"mutated", mutate_rule}};
    using namespace ncrewrite;
    RewriteSystem S = complete(einf::e_quiver_system(n, field));
    if (mutate_rule) S.rules.pop_back();  // forget one completed rule
    S.completed = true;
    auto basis = basis_by_degree(S, 6, 16);
    if (basis.truncated || basis.total != 4 * n + 2) {
        v.fail({{"total", basis.total}, {"expected", 4 * n + 2}, {"truncated", basis.truncated}});
        v.millis = timer.ms();
        return v;
    }
    // brute-force path enumeration: every path of length <= 6 stays in the span
    std::map<Word, bool> in_basis;
    for (const auto& [key, words] : basis.groups)
        for (const auto& w : words)
            if (!is_idempotent_word(w)) in_basis[w] = true;
    std::vector<Word> paths;
    for (size_t a = 0; a < S.quiver.arrows.size(); ++a) paths.push_back({static_cast<int>(a)});
    size_t head = 0;
    long long irreducible = 0;
    while (head < paths.size() && v.status == Status::Pass) {
        Word w = paths[head++];
        auto p = nf_word(w, S);
        for (const auto& [rw, rc] : p)
            if (!in_basis.count(rw)) {
                v.fail({{"path", word_str(S.quiver, w)}, {"problem", "normal form outside the basis"}});
                break;
            }
        bool red = false;
        for (const auto& r : S.rules)
            if (!ncrewrite::detail::occurrences(w, r.lhs).empty()) {
                red = true;
                break;
            }
        if (!red) ++irreducible;
        if (w.size() < 6) {
            int tail = S.quiver.arrows[w.back()].tgt;
            for (size_t a = 0; a < S.quiver.arrows.size(); ++a)
                if (S.quiver.arrows[a].src == tail) {
                    Word nw = w;
                    nw.push_back(static_cast<int>(a));
                    paths.push_back(std::move(nw));
                }
        }
    }
    if (v.status == Status::Pass && irreducible + S.quiver.nverts != basis.total)
        v.fail({{"irreducible", irreducible}, {"expected", basis.total - S.quiver.nverts}});
    // exhaustive associativity of the table
    if (v.status == Status::Pass && !mutate_rule) {
        auto E = einf::build_e(n, field);
        for (int x = 0; x < E.dim && v.status == Status::Pass; ++x)
            for (int y = 0; y < E.dim && v.status == Status::Pass; ++y)
                for (int z = 0; z < E.dim; ++z) {
                    int xy = E.prod(x, y), yz = E.prod(y, z);
                    int lhs = xy < 0 ? -1 : E.prod(xy, z);
                    int rhs = yz < 0 ? -1 : E.prod(x, yz);
                    if (lhs != rhs) {
                        v.fail({{"triple", E.names[x] + "," + E.names[y] + "," + E.names[z]}});
                        break;
                    }
                }
    }
    v.millis = timer.ms();
    return v;
}

inline Verdict check_hochschild_table(int n, const Field& field, bool mutate_grading = false) {
    detail::Timer timer;
    Verdict v;
    v.check = "hochschild-table";
    v.params = {{"n", n}, {"field", field.str()}, {"mutated", mutate_grading}};
    auto E = einf::build_e(n, field);
    if (mutate_grading) E.deg[E.B(1)] = 0;  // corrupt the internal grading
    std::map<int, int> expected;
    bool char2 = !field.is_q() && field.p == 2;
    if (n == 2 && char2) expected = {{1, 1}, {2, 1}, {3, 1}, {4, 1}};
    else expected = hh2_weight_table(n);
    int rmax = n >= 4 ? 3 : (n == 3 ? 4 : 5);
    for (int r = 1; r <= rmax; ++r) {
        int want = expected.count(r) ? expected.at(r) : 0;
        int got = einf::hochschild_dim(E, 2, r);
        if (got != want) {
            v.fail({{"j", 2}, {"r", r}, {"computed", got}, {"expected", want}});
            break;
        }
    }
    v.millis = timer.ms();
    return v;
}

inline Verdict check_hh1_vanishing(int n, const Field& field, int rmax = 6) {
    detail::Timer timer;
    Verdict v;
    v.check = "hh1-vanishing";
    v.params = {{"n", n}, {"field", field.str()}, {"rmax", rmax}};
    auto E = einf::build_e(n, field);
    for (int r = 1; r <= rmax; ++r) {
        int got = einf::hochschild_dim(E, 1, r);
        if (got != 0) {
            v.fail({{"j", 1}, {"r", r}, {"computed", got}});
            break;
        }
    }
    v.millis = timer.ms();
    return v;
}

inline Verdict check_ainf_trivial(int n, int d_max, const Field& field = Field::rationals()) {
    detail::Timer timer;
    Verdict v;
    v.check = "ainf-trivial";
    v.params = {{"n", n}, {"d_max", d_max}, {"field", field.str()}};
    einf::AInfStructure S;
    S.E = std::make_shared<einf::EAlgebra>(einf::build_e(n, field));
    S.d_max = d_max;
    auto verdict = einf::ainf_check(S);
    v.params["tuples"] = verdict.tuples_checked;
    if (!verdict.pass) v.fail({{"witness", verdict.witness}});
    v.millis = timer.ms();
    return v;
}

inline Verdict check_ainf_mutation(int n, uint64_t seed) {
    detail::Timer timer;
    Verdict v;
    v.check = "ainf-mutation";
    v.params = {{"n", n}, {"seed", seed}};
    auto E = std::make_shared<einf::EAlgebra>(einf::build_e(n, Field::rationals()));
    einf::CochainBasis c3 = einf::cochain_basis(*E, 3, -1);
    Rng rng(seed);
    bool violated = false;
    for (int attempt = 0; attempt < 60 && !violated; ++attempt) {
        einf::AInfStructure S;
        S.E = E;
        S.d_max = 3;
        std::map<std::vector<int>, einf::Elem> entries;
        for (int k = 0; k < 3; ++k) {
            int col = static_cast<int>(rng.below(c3.size()));
            einf::Elem val;
            einf::elem_add(val, c3.elems[col].second, Scalar::of_int(E->field, (long)rng.int_in(1, 7)));
            entries[c3.elems[col].first] = val;
        }
        for (const auto& [tuple, val] : entries) S.set(3, tuple, val);
        auto verdict = einf::ainf_check(S, 4);
        if (!verdict.pass) violated = true;
    }
    if (!violated) v.fail({{"problem", "no random mu3 violated the A_4 relation"}});
    v.millis = timer.ms();
    return v;
}

inline Verdict check_rescale_law(int n, uint64_t seed) {
    detail::Timer timer;
    Verdict v;
    v.check = "rescale-law";
    v.params = {{"n", n}, {"seed", seed}};
    auto E = std::make_shared<einf::EAlgebra>(einf::build_e(n, Field::rationals()));
    einf::CochainBasis c3 = einf::cochain_basis(*E, 3, -1);
    einf::CochainBasis c4 = einf::cochain_basis(*E, 4, -1);
    auto delta = einf::hochschild_delta(*E, c3, c4);
    auto kr = rank_and_kernel(delta);
    if (kr.kernel.empty()) {
        v.fail({{"problem", "no mu3 cocycle found"}});
        v.millis = timer.ms();
        return v;
    }
    einf::AInfStructure S;
    S.E = E;
    S.d_max = 3;
    const auto& vec = kr.kernel.front();
    std::map<std::vector<int>, einf::Elem> built;
    for (int col = 0; col < c3.size(); ++col)
        if (!vec[col].is_zero()) einf::elem_add(built[c3.elems[col].first], c3.elems[col].second, vec[col]);
    for (const auto& [tuple, val] : built) S.set(3, tuple, val);
    if (!einf::ainf_check(S, 4).pass) {
        v.fail({{"problem", "cocycle failed the A_4 relations"}});
        v.millis = timer.ms();
        return v;
    }
    Rng rng(seed);
    Scalar lam = Scalar::of_int(E->field, (long)rng.int_in(2, 9));
    Scalar mu = Scalar::of_int(E->field, (long)rng.int_in(2, 9));
    auto R1 = einf::rescale(S, lam);
    if (!einf::ainf_check(R1, 4).pass) v.fail({{"problem", "rescaled structure failed"}});
    if (v.status == Status::Pass && !einf::ainf_equal(R1, einf::conjugate_by_grading(S, lam)))
        v.fail({{"problem", "rescaling differs from grading conjugation"}});
    if (v.status == Status::Pass &&
        !einf::ainf_equal(einf::rescale(einf::rescale(S, lam), mu), einf::rescale(S, lam * mu)))
        v.fail({{"problem", "rescale is not a group action"}});
    v.millis = timer.ms();
    return v;
}

inline Verdict check_stabilization(int n) {
    detail::Timer timer;
    Verdict v;
    v.check = "stabilization";
    v.params = {{"n", n}};
    static const std::map<int, int> expected = {{1, 8}, {2, 6}, {3, 5}, {4, 4}};
    int want = n >= 5 ? 4 : expected.at(n);
    int got = einf::stabilization_bound(n);
    if (got != want) v.fail({{"computed", got}, {"expected", want}});
    v.millis = timer.ms();
    return v;
}

}  // namespace verify
}  // namespace g1m

#endif

#ifndef G1M_VERIFY_HPP
#define G1M_VERIFY_HPP

#include <chrono>
#include <functional>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "g1m/ealgebra.hpp"
#include "g1m/grassmannian.hpp"
#include "g1m/moduli.hpp"

namespace g1m {
namespace verify {

using json = nlohmann::json;

enum class Status { Pass, Fail, Truncated };

inline std::string status_str(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        default: return "truncated";
    }
}

// One verdict per named check. A fail always carries a concrete witness.
struct Verdict {
    std::string check;
    json params = json::object();
    Status status = Status::Pass;
    std::optional<json> witness;
    long long millis = 0;

    json to_json(bool with_millis = true) const {
        json out;
        out["check"] = check;
        out["params"] = params;
        out["status"] = status_str(status);
        if (witness) out["witness"] = *witness;
        if (with_millis) out["millis"] = millis;
        return out;
    }
    void fail(const json& w) {
        status = Status::Fail;
        if (!witness) witness = w;
    }

    static Verdict from_json(const json& j) {
        Verdict v;
        v.check = j.at("check").get<std::string>();
        v.params = j.at("params");
        std::string s = j.at("status").get<std::string>();
        v.status = s == "pass" ? Status::Pass : (s == "fail" ? Status::Fail : Status::Truncated);
        if (j.contains("witness")) v.witness = j.at("witness");
        if (j.contains("millis")) v.millis = j.at("millis").get<long long>();
        return v;
    }
};

namespace detail {
struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    long long ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
            .count();
    }
};
}  // namespace detail

// ---------------------------------------------------------------------------
// diamond lemma replication
// ---------------------------------------------------------------------------

namespace diamond {

// big ring: full moduli coordinates (lowest precedence) then x_2 < ... < x_n,
// deg-lex, so every curve relation leads with its x_i x_j term
struct BigRing {
    int n;
    Ring ring;
    std::vector<Polynomial> rels;        // ordered: (3,i), (2,i), (i,j >= 4), cubic
    std::vector<std::pair<int, int>> rel_pair;  // (i, j) per relation; (0,0) for the cubic
    int first_x = 0;                     // index of x_2
};

inline BigRing big_ring(int n, const Field& field) {
    BigRing B;
    B.n = n;
    Ring F = moduli::full_ring(n, field);
    std::vector<VarSpec> vars = F->vars;
    B.first_x = static_cast<int>(vars.size());
    for (int i = 2; i <= n; ++i) vars.push_back({moduli::x_name(i), 1});
    B.ring = make_ring(vars, field, OrderKind::WDegLex);
    const Ring& R = B.ring;
    auto x = [&](int i) { return Polynomial::var(R, moduli::x_name(i)); };
    auto C = [&](int i, int j) {
        if (!moduli::full_cij_exists(i, j)) return Polynomial::zero(R);
        return Polynomial::var(R, moduli::cij_name(i, j));
    };
    auto D = [&](int i, int j) {
        if (i > j) std::swap(i, j);
        return Polynomial::var(R, moduli::dij_name(i, j));
    };
    auto pair_rel = [&](int i, int j) {  // x_i x_j = x_2 x_3 + c_ij x_j + c_ji x_i + d_ij
        return x(i) * x(j) - x(2) * x(3) - C(i, j) * x(j) - C(j, i) * x(i) - D(i, j);
    };
    for (int i = 4; i <= n; ++i) {
        B.rels.push_back(pair_rel(3, i));
        B.rel_pair.emplace_back(3, i);
    }
    for (int i = 4; i <= n; ++i) {
        B.rels.push_back(pair_rel(2, i));
        B.rel_pair.emplace_back(2, i);
    }
    for (int i = 4; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            B.rels.push_back(pair_rel(i, j));
            B.rel_pair.emplace_back(i, j);
        }
    // cubic: x_2 x_3^2 = x_2^2 x_3 + a x_2 x_3 + b x_2 + c x_3 + d
    Polynomial cubic = x(2) * x(3) * x(3) - x(2) * x(2) * x(3) -
                       Polynomial::var(R, "a") * x(2) * x(3) - Polynomial::var(R, "b") * x(2) -
                       Polynomial::var(R, "c") * x(3) - Polynomial::var(R, "d");
    B.rels.push_back(cubic);
    B.rel_pair.emplace_back(0, 0);
    return B;
}

inline int rel_index(const BigRing& B, int i, int j) {
    for (size_t k = 0; k < B.rel_pair.size(); ++k)
        if (B.rel_pair[k] == std::make_pair(i, j)) return static_cast<int>(k);
    require(i == 0 && j == 0, "no such relation");
    return static_cast<int>(B.rels.size()) - 1;
}

// subtract the relation once against the given divisor position, then fully reduce
inline Polynomial one_step_then_nf(const BigRing& B, const Polynomial& t, int rel) {
    const Polynomial& r = B.rels[rel];
    const Term& lt = r.leading();
    const Term& tt = t.leading();
    require(mono_divides(lt.m, tt.m), "relation does not divide the monomial");
    Polynomial stepped = t - r.mul_term(mono_div(tt.m, lt.m), tt.c / lt.c);
    return normal_form(stepped, B.rels);
}

// split a big-ring polynomial into coefficient polynomials per x-monomial
inline std::map<Monomial, Polynomial> split_by_x(const BigRing& B, const Ring& coord_ring,
                                                 const Polynomial& f) {
    std::map<Monomial, Polynomial> out;
    int nc = coord_ring->nvars();
    for (const auto& t : f.terms()) {
        Monomial xm(t.m.begin() + B.first_x, t.m.end());
        Monomial cm(t.m.begin(), t.m.begin() + B.first_x);
        require(static_cast<int>(cm.size()) == nc, "coordinate block mismatch");
        auto [it, fresh] = out.try_emplace(xm, Polynomial::zero(coord_ring));
        it->second += Polynomial::monomial(coord_ring, cm, t.c);
    }
    return out;
}

}  // namespace diamond

// Both reduction orders of every x_i x_j x_k and x_2 x_3^2 x_m agree modulo
// the moduli ideal; the proof's displayed two-way expansions are replayed.
inline Verdict check_diamond_symbolic(int n, const Field& field = Field::rationals(),
                                      bool mutate_drop_triple = false) {
    detail::Timer timer;
    Verdict v;
    v.check = "diamond-symbolic";
    v.params = {{"n", n}, {"field", field.str()}, {"mutated", mutate_drop_triple}};
    require(n >= 4, "check_diamond_symbolic needs n >= 4");
    diamond::BigRing B = diamond::big_ring(n, field);
    moduli::ModuliSpec M = moduli::u_n_full(n, field);
    if (mutate_drop_triple) {
        require(n >= 6, "triple mutation needs n >= 6");
        IdealPresentation cut(M.ring, M.ideal.provenance + " (triple dropped)");
        for (const auto& [name, g] : M.ideal.gens)
            if (name != "tri_4_5_6") cut.add(name, g);
        M.ideal = cut;
    }
    // a degree-3 basis decides membership for the weight-<=3 residuals here
    GroebnerBasis gb = buchberger(M.ideal, 3);
    auto x = [&](int i) { return Polynomial::var(B.ring, moduli::x_name(i)); };
    auto in_ideal = [&](const Polynomial& coeff) {
        auto m = ideal_member_gb(coeff, gb, true);
        require(m.status != MemberStatus::Unknown, "diamond residual beyond the basis cap");
        return m.status == MemberStatus::In;
    };
    auto compare_paths = [&](const Polynomial& t, int rel_a, int rel_b, const std::string& label) {
        Polynomial diff = diamond::one_step_then_nf(B, t, rel_a) - diamond::one_step_then_nf(B, t, rel_b);
        for (auto& [xm, coeff] : diamond::split_by_x(B, M.ring, diff)) {
            if (coeff.is_zero()) continue;
            if (!in_ideal(coeff)) {
                std::string mono = Polynomial::monomial(B.ring, [&] {
                                       Monomial m = mono_one(*B.ring);
                                       std::copy(xm.begin(), xm.end(), m.begin() + B.first_x);
                                       return m;
                                   }(), Scalar::of_int(field, 1))
                                       .str();
                v.fail({{"ambiguity", label}, {"x_monomial", mono}, {"residual", coeff.str()}});
                return;
            }
        }
    };

    // all triples x_i x_j x_k (the pair (2,3) is not a relation)
    for (int i = 2; i <= n && v.status == Status::Pass; ++i)
        for (int j = i + 1; j <= n && v.status == Status::Pass; ++j)
            for (int k = j + 1; k <= n && v.status == Status::Pass; ++k) {
                Polynomial t = x(i) * x(j) * x(k);
                std::vector<int> steps;
                if (!(i == 2 && j == 3)) steps.push_back(diamond::rel_index(B, i, j));
                if (!(j == 2 && k == 3)) steps.push_back(diamond::rel_index(B, j, k));
                steps.push_back(diamond::rel_index(B, i, k));
                std::string label = "x" + std::to_string(i) + "*x" + std::to_string(j) + "*x" + std::to_string(k);
                for (size_t a = 0; a < steps.size() && v.status == Status::Pass; ++a)
                    for (size_t b = a + 1; b < steps.size() && v.status == Status::Pass; ++b)
                        compare_paths(t, steps[a], steps[b], label);
            }
    // x_2 x_3^2 x_m ambiguities
    for (int m = 4; m <= n && v.status == Status::Pass; ++m) {
        Polynomial t = x(2) * x(3) * x(3) * x(m);
        std::vector<int> steps = {diamond::rel_index(B, 0, 0), diamond::rel_index(B, 2, m),
                                  diamond::rel_index(B, 3, m)};
        std::string label = "x2*x3^2*x" + std::to_string(m);
        for (size_t a = 0; a < steps.size() && v.status == Status::Pass; ++a)
            for (size_t b = a + 1; b < steps.size() && v.status == Status::Pass; ++b)
                compare_paths(t, steps[a], steps[b], label);
    }

    // replay the proof's displayed two-way expansions (instantiated indices)
    if (v.status == Status::Pass && !mutate_drop_triple) {
        const Ring& R = B.ring;
        auto C = [&](int i, int j) {
            if (!moduli::full_cij_exists(i, j)) return Polynomial::zero(R);
            return Polynomial::var(R, moduli::cij_name(i, j));
        };
        auto D = [&](int i, int j) {
            if (i > j) std::swap(i, j);
            return Polynomial::var(R, moduli::dij_name(i, j));
        };
        Polynomial a = Polynomial::var(R, "a"), b = Polynomial::var(R, "b");
        Polynomial c = Polynomial::var(R, "c"), d = Polynomial::var(R, "d");
        auto expect = [&](const Polynomial& got, const Polynomial& want, const std::string& label) {
            if (got != want) v.fail({{"replay", label}, {"difference", (got - want).str()}});
        };
        int i = 4;
        // x_2 x_3 x_i, reducing x_3 x_i first / x_2 x_i first
        Polynomial t = x(2) * x(3) * x(i);
        expect(diamond::one_step_then_nf(B, t, diamond::rel_index(B, 3, i)),
               x(2) * x(2) * x(3) + C(3, i) * x(2) * x(3) + C(2, i) * C(3, i) * x(i) +
                   (C(3, i) * C(i, 2) + D(3, i)) * x(2) + C(3, i) * D(2, i),
               "x2*x3*xi, x3*xi first");
        expect(diamond::one_step_then_nf(B, t, diamond::rel_index(B, 2, i)),
               x(2) * x(2) * x(3) + (a + C(i, 2) + C(2, i)) * x(2) * x(3) + C(2, i) * C(3, i) * x(i) +
                   (c + D(2, i)) * x(3) + b * x(2) + d + C(2, i) * D(3, i),
               "x2*x3*xi, x2*xi first");
        if (n >= 5) {
            int j = 5;
            // x_2 x_i x_j, reducing x_2 x_j first / x_i x_j first
            Polynomial t2 = x(2) * x(i) * x(j);
            expect(diamond::one_step_then_nf(B, t2, diamond::rel_index(B, 2, j)),
                   x(2) * x(2) * x(3) + (C(3, i) + C(2, j) + C(j, 2)) * x(2) * x(3) +
                       (C(3, i) * C(2, i) + C(j, 2) * C(2, i) + C(j, i) * C(2, j) + D(2, j)) * x(i) +
                       C(2, j) * C(i, j) * x(j) + (C(i, 2) * C(j, 2) + C(3, i) * C(i, 2) + D(3, i)) * x(2) +
                       C(3, i) * D(2, i) + C(2, j) * D(j, i) + C(j, 2) * D(2, i),
                   "x2*xi*xj, x2*xj first");
            expect(diamond::one_step_then_nf(B, t2, diamond::rel_index(B, i, j)),
                   x(2) * x(2) * x(3) + (C(i, j) + C(j, i)) * x(2) * x(3) + C(j, i) * C(2, i) * x(i) +
                       C(i, j) * C(2, j) * x(j) + (C(i, j) * C(j, 2) + C(j, i) * C(i, 2) + D(i, j)) * x(2) +
                       C(i, j) * D(2, j) + C(j, i) * D(2, i),
                   "x2*xi*xj, xi*xj first");
            // x_3 x_i x_j, reducing x_3 x_j first / x_i x_j first
            Polynomial t3 = x(3) * x(i) * x(j);
            expect(diamond::one_step_then_nf(B, t3, diamond::rel_index(B, 3, j)),
                   x(2) * x(2) * x(3) + (C(3, i) + C(3, j)) * x(2) * x(3) +
                       (C(2, i) * C(3, i) + C(3, j) * C(j, i) + D(3, j)) * x(i) + C(3, j) * C(i, j) * x(j) +
                       (C(3, i) * C(i, 2) + D(3, i)) * x(2) + C(3, i) * D(2, i) + C(3, j) * D(i, j),
                   "x3*xi*xj, x3*xj first");
            expect(diamond::one_step_then_nf(B, t3, diamond::rel_index(B, i, j)),
                   x(2) * x(2) * x(3) + (a + C(i, j) + C(j, i)) * x(2) * x(3) + C(j, i) * C(3, i) * x(i) +
                       C(3, j) * C(i, j) * x(j) + (c + D(i, j)) * x(3) + b * x(2) + d + C(i, j) * D(3, j) +
                       C(j, i) * D(3, i),
                   "x3*xi*xj, xi*xj first");
        }
        if (n >= 6) {
            int j = 5, k = 6;
            Polynomial t4 = x(i) * x(j) * x(k);
            expect(diamond::one_step_then_nf(B, t4, diamond::rel_index(B, i, j)),
                   x(2) * x(2) * x(3) + (C(3, k) + C(i, j) + C(j, i)) * x(2) * x(3) +
                       (C(3, k) * C(2, k) + D(i, j) + C(i, j) * C(j, k) + C(j, i) * C(i, k)) * x(k) +
                       C(i, j) * C(k, j) * x(j) + C(j, i) * C(k, i) * x(i) +
                       (C(3, k) * C(k, 2) + D(3, k)) * x(2) + C(3, k) * D(2, k) + C(i, j) * D(j, k) +
                       C(j, i) * D(i, k),
                   "xi*xj*xk, xi*xj first");
            expect(diamond::one_step_then_nf(B, t4, diamond::rel_index(B, j, k)),
                   x(2) * x(2) * x(3) + (C(3, i) + C(j, k) + C(k, j)) * x(2) * x(3) +
                       C(j, k) * C(i, k) * x(k) + C(k, j) * C(i, j) * x(j) +
                       (C(3, i) * C(2, i) + C(k, j) * C(j, i) + C(j, k) * C(k, i) + D(j, k)) * x(i) +
                       (C(3, i) * C(i, 2) + D(3, i)) * x(2) + C(3, i) * D(2, i) + C(j, k) * D(i, k) +
                       C(k, j) * D(i, j),
                   "xi*xj*xk, xj*xk first");
        }
    }
    if (mutate_drop_triple && v.status == Status::Pass)
        v.fail({{"mutation", "dropping tri_4_5_6 should break an ambiguity"}});
    else if (mutate_drop_triple && v.status == Status::Fail) {
        // the mutated run is expected to fail; leave status as-is for the caller
    }
    v.millis = timer.ms();
    return v;
}

// Numeric side of the iff: a point resolves all ambiguities exactly when it
// satisfies the moduli relations.
inline Verdict check_diamond_numeric(int n, const std::vector<Scalar>& full_point, const Field& field,
                                     bool mutate_relation = false) {
    detail::Timer timer;
    Verdict v;
    v.check = "diamond-numeric";
    v.params = {{"n", n}, {"field", field.str()}, {"mutated", mutate_relation}};
    moduli::ModuliSpec M = moduli::u_n_full(n, field);
    bool on_ideal = point_on_scheme(M.ideal, full_point);
    v.params["on_ideal"] = on_ideal;

    diamond::BigRing B = diamond::big_ring(n, field);
    // specialize coordinates
    std::vector<VarSpec> xv;
    for (int i = 2; i <= n; ++i) xv.push_back({moduli::x_name(i), 1});
    Ring Rx = make_ring(xv, field, OrderKind::WDegLex);
    std::vector<Polynomial> images;
    for (int var = 0; var < B.ring->nvars(); ++var) {
        if (var < B.first_x) images.push_back(Polynomial::constant(Rx, full_point[var]));
        else images.push_back(Polynomial::var(Rx, B.ring->vars[var].name));
    }
    RingMap specialize(B.ring, Rx, images);
    std::vector<Polynomial> rels;
    for (const auto& r : B.rels) rels.push_back(specialize.apply(r));
    if (mutate_relation)  // perturb one specialized relation off the family
        rels[0] += Polynomial::from_int(Rx, 1);

    auto one_step_nf = [&](const Polynomial& t, int rel) {
        const Polynomial& r = rels[rel];
        Polynomial stepped = t - r.mul_term(mono_div(t.leading().m, r.leading().m), t.leading().c / r.leading().c);
        return normal_form(stepped, rels);
    };
    bool any_residual = false;
    std::string first_residual;
    auto x = [&](int i) { return Polynomial::var(Rx, moduli::x_name(i)); };
    for (int i = 2; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            for (int k = j + 1; k <= n; ++k) {
                Polynomial t = x(i) * x(j) * x(k);
                std::vector<int> steps;
                if (!(i == 2 && j == 3)) steps.push_back(diamond::rel_index(B, i, j));
                if (!(j == 2 && k == 3)) steps.push_back(diamond::rel_index(B, j, k));
                steps.push_back(diamond::rel_index(B, i, k));
                for (size_t a = 0; a < steps.size(); ++a)
                    for (size_t b = a + 1; b < steps.size(); ++b) {
                        Polynomial diff = one_step_nf(t, steps[a]) - one_step_nf(t, steps[b]);
                        if (!diff.is_zero() && !any_residual) {
                            any_residual = true;
                            first_residual = "x" + std::to_string(i) + "*x" + std::to_string(j) + "*x" +
                                             std::to_string(k) + " -> " + diff.str();
                        }
                    }
            }
    for (int m = 4; m <= n; ++m) {
        Polynomial t = x(2) * x(3) * x(3) * x(m);
        std::vector<int> steps = {diamond::rel_index(B, 0, 0), diamond::rel_index(B, 2, m),
                                  diamond::rel_index(B, 3, m)};
        for (size_t a = 0; a < steps.size(); ++a)
            for (size_t b = a + 1; b < steps.size(); ++b) {
                Polynomial diff = one_step_nf(t, steps[a]) - one_step_nf(t, steps[b]);
                if (!diff.is_zero() && !any_residual) {
                    any_residual = true;
                    first_residual = "x2*x3^2*x" + std::to_string(m) + " -> " + diff.str();
                }
            }
    }
    // pass iff (on ideal and no residual) or (off ideal and some residual)
    if (on_ideal == any_residual)
        v.fail({{"on_ideal", on_ideal}, {"residual", any_residual ? first_residual : "none"}});
    v.millis = timer.ms();
    return v;
}

// ---------------------------------------------------------------------------
// Hilbert series of O(U_n)
// ---------------------------------------------------------------------------

// coefficients of prod_{k=3}^{n-3} (1 + k t + t^2) / (1 - t)^{n+1} up to degree D
inline std::vector<long long> hilbert_series_expansion(int n, int D) {
    std::vector<long long> num = {1};
    for (int k = 3; k <= n - 3; ++k) {
        std::vector<long long> factor = {1, k, 1};
        std::vector<long long> out(std::min<size_t>(num.size() + 2, D + 1), 0);
        for (size_t i = 0; i < num.size(); ++i)
            for (size_t j = 0; j < factor.size() && i + j <= static_cast<size_t>(D); ++j)
                if (i + j < out.size()) out[i + j] += num[i] * factor[j];
        num = out;
    }
    // multiply by (1 - t)^{-(n+1)}: coefficients C(n + d, n)
    std::vector<long long> binom(D + 1);
    for (int d = 0; d <= D; ++d) {
        // C(n + d, n) fits comfortably in 64 bits for our ranges
        long long v = 1;
        for (int i = 1; i <= n; ++i) v = v * (d + i) / i;
        binom[d] = v;
    }
    std::vector<long long> out(D + 1, 0);
    for (size_t i = 0; i < num.size(); ++i)
        for (int d = 0; i + d <= static_cast<size_t>(D); ++d) out[i + d] += num[i] * binom[d];
    return out;
}

inline Verdict check_hilbert_series(int n, int D, const Field& field = Field::rationals(),
                                    bool mutate_drop_gen = false) {
    detail::Timer timer;
    Verdict v;
    v.check = "hilbert-series";
    v.params = {{"n", n}, {"D", D}, {"field", field.str()}, {"mutated", mutate_drop_gen}};
    require(n >= 5, "check_hilbert_series needs n >= 5");
    require(D <= 8, "check_hilbert_series caps D at 8");
    moduli::ModuliSpec M = moduli::u_n_reduced(n, field);
    if (mutate_drop_gen) {
        IdealPresentation cut(M.ring, M.ideal.provenance + " (one generator dropped)");
        for (size_t k = 1; k < M.ideal.gens.size(); ++k) cut.add(M.ideal.gens[k].first, M.ideal.gens[k].second);
        M.ideal = cut;
    }
    auto sc = standard_monomial_counts(M.ideal, D);
    if (sc.truncated) {
        v.status = Status::Truncated;
        v.millis = timer.ms();
        return v;
    }
    auto expected = hilbert_series_expansion(n, D);
    for (int d = 0; d <= D; ++d)
        if (sc.counts[d] != expected[d]) {
            v.fail({{"degree", d}, {"computed", sc.counts[d]}, {"expected", expected[d]}});
            break;
        }
    v.millis = timer.ms();
    return v;
}

// ---------------------------------------------------------------------------
// fiber Hilbert function h(m) = m n
// ---------------------------------------------------------------------------

inline Verdict check_fiber_hilbert(int n, const std::vector<Scalar>& params, int m_max, const Field& field,
                                   const std::string& point_label, bool mutate_drop_rel = false) {
    detail::Timer timer;
    Verdict v;
    v.check = "fiber-hilbert";
    v.params = {{"n", n}, {"m_max", m_max}, {"field", field.str()}, {"point", point_label},
                {"mutated", mutate_drop_rel}};
    moduli::CurveSpec C = n >= 3 ? moduli::curve_over_un(n, field, params)
                                 : moduli::special_curve(n, field, params);
    IdealPresentation I = C.relations;
    if (mutate_drop_rel && I.gens.size() > 1) {
        IdealPresentation cut(I.ring, I.provenance + " (one relation dropped)");
        for (size_t k = 1; k < I.gens.size(); ++k) cut.add(I.gens[k].first, I.gens[k].second);
        I = cut;
    }
    auto sc = standard_monomial_counts(I, m_max);
    if (sc.truncated) {
        v.status = Status::Truncated;
        v.millis = timer.ms();
        return v;
    }
    long long cumulative = 0;
    for (int m = 0; m <= m_max; ++m) {
        cumulative += sc.counts[m];
        long long expected = (m == 0) ? 1 : static_cast<long long>(m) * n;
        if (cumulative != expected) {
            v.fail({{"m", m}, {"computed", cumulative}, {"expected", expected}});
            break;
        }
    }
    v.millis = timer.ms();
    return v;
}

// ---------------------------------------------------------------------------
// substitution isomorphism U_{n+1} ~ C_n
// ---------------------------------------------------------------------------

inline Verdict check_substitution_iso(int n, const Field& field = Field::rationals(), bool mutate_map = false) {
    detail::Timer timer;
    Verdict v;
    v.check = "substitution-iso";
    v.params = {{"n", n}, {"field", field.str()}, {"mutated", mutate_map}};
    require(n >= 3, "check_substitution_iso needs n >= 3");
    RingMap phi = moduli::substitution_map(n, field);
    if (mutate_map) {
        // x_3 -> a + c_{n+1}, dropping cb_{n+1}
        phi.images[phi.source->var_index(moduli::x_name(3))] =
            Polynomial::var(phi.target, "a") + Polynomial::var(phi.target, moduli::ci_name(n + 1));
    }
    moduli::CurveSpec C = moduli::curve_over_un(n, field);
    moduli::ModuliSpec up = moduli::u_n_reduced(n + 1, field);
    bool up_free = up.ideal.gens.empty();  // n = 3: U_4 is an affine space
    std::optional<GroebnerBasis> gb_up;
    if (!up_free) gb_up = buchberger(up.ideal, 3);

    // direction 1: curve relations land in the U_{n+1} ideal
    for (const auto& [name, g] : C.relations.gens) {
        Polynomial img = phi.apply(g);
        bool in = up_free ? img.is_zero() : ideal_member_gb(img, *gb_up, true).status == MemberStatus::In;
        if (!in) {
            v.fail({{"direction", "curve -> moduli"}, {"relation", name}, {"residual", img.str()}});
            v.millis = timer.ms();
            return v;
        }
    }
    // direction 2: every U_{n+1} generator lies in the image ideal
    if (!up_free) {
        IdealPresentation image(up.ring, "substituted curve relations + base relations");
        int k = 0;
        for (const auto& [name, g] : C.relations.gens) {
            Polynomial img = phi.apply(g);
            if (!img.is_zero()) image.add("img" + std::to_string(k++), img);
        }
        if (n >= 4)
            for (const auto& [name, g] : moduli::u_n_reduced(n, field).ideal.gens)
                image.add("base_" + name, parse_poly(up.ring, g.str()));
        GroebnerBasis gb_img = buchberger(image, 3);
        for (const auto& [name, g] : up.ideal.gens) {
            auto m = ideal_member_gb(g, gb_img, true);
            if (m.status != MemberStatus::In) {
                v.fail({{"direction", "moduli -> image"}, {"generator", name}, {"residual", m.residual.str()}});
                break;
            }
        }
    }
    v.millis = timer.ms();
    return v;
}

// ---------------------------------------------------------------------------
// tangent dimensions and HH^2 weight table
// ---------------------------------------------------------------------------

inline std::map<int, int> hh2_weight_table(int n) {
    if (n >= 5) return {{1, (n - 1) * (n - 2) / 2}};
    switch (n) {
        case 4: return {{1, 3}, {2, 2}};
        case 3: return {{1, 1}, {2, 2}, {3, 1}};
        case 2: return {{2, 1}, {3, 1}, {4, 1}};
        default: return {{4, 1}, {6, 1}};
    }
}

inline Verdict check_tangent_and_weights(int n, const Field& field = Field::rationals(),
                                         bool mutate_drop_gen = false) {
    detail::Timer timer;
    Verdict v;
    v.check = "tangent-weights";
    v.params = {{"n", n}, {"field", field.str()}, {"mutated", mutate_drop_gen}};
    std::map<int, int> expected = hh2_weight_table(n);
    std::map<int, int> got;
    if (n >= 5) {
        moduli::ModuliSpec M = moduli::u_n_reduced(n, field);
        if (mutate_drop_gen)  // inject a linear generator: a weight-1 class dies
            M.ideal.add("bogus", Polynomial::var(M.ring, "a"));
        int tangent = tangent_dimension_at_origin(M.ideal);
        if (tangent != (n - 1) * (n - 2) / 2)
            v.fail({{"tangent", tangent}, {"expected", (n - 1) * (n - 2) / 2}});
        got = algebra_min_generator_weights(M.ideal);
    } else {
        moduli::ModuliSpec M = moduli::u_n_special(n, field);
        require(M.ideal.gens.empty(), "special presentations are free");
        for (const auto& vs : M.ring->vars) got[vs.weight] += 1;
        if (mutate_drop_gen) got[1] += 1;  // corrupt the multiset
    }
    if (v.status == Status::Pass && got != expected) {
        json jg = json::object(), je = json::object();
        for (auto& [w, c] : got) jg[std::to_string(w)] = c;
        for (auto& [w, c] : expected) je[std::to_string(w)] = c;
        v.fail({{"weights", jg}, {"expected", je}});
    }
    v.millis = timer.ms();
    return v;
}

// ---------------------------------------------------------------------------
// S_n action
// ---------------------------------------------------------------------------

inline Verdict check_sn_action(int n, const std::vector<std::string>& labels,
                               const Field& field = Field::rationals(), bool corrupt24 = false) {
    detail::Timer timer;
    Verdict v;
    v.check = "sn-action";
    v.params = {{"n", n}, {"field", field.str()}, {"labels", labels}, {"mutated", corrupt24}};
    moduli::ModuliSpec M = moduli::u_n_reduced(n, field);
    GroebnerBasis gb = buchberger(M.ideal, 3);
    for (const auto& label : labels) {
        RingMap sigma = moduli::sn_involution(n, label, field);
        if (corrupt24 && label == "24") {
            // drop the -2 cb_4 term from the image of a
            sigma.images[sigma.source->var_index("a")] =
                -Polynomial::var(sigma.target, "a") -
                Polynomial::from_int(sigma.target, 2) * Polynomial::var(sigma.target, moduli::ci_name(4));
        }
        RingMap square = sigma.compose(sigma);
        if (!corrupt24 && !square.is_identity()) {
            v.fail({{"label", label}, {"problem", "not an involution"}});
            break;
        }
        for (const auto& [name, g] : M.ideal.gens) {
            auto m = ideal_member_gb(sigma.apply(g), gb, true);
            if (m.status != MemberStatus::In) {
                v.fail({{"label", label}, {"generator", name}, {"residual", m.residual.str()}});
                break;
            }
        }
        if (v.status != Status::Pass) break;
    }
    v.millis = timer.ms();
    return v;
}

}  // namespace verify
}  // namespace g1m

#include "g1m/verify_blowup.hpp"
#include "g1m/verify_misc.hpp"
#include "g1m/verify_suite.hpp"

#endif

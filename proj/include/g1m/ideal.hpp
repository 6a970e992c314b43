#ifndef G1M_IDEAL_HPP
#define G1M_IDEAL_HPP

#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "g1m/linalg.hpp"
#include "g1m/poly.hpp"

namespace g1m {

// Named generator list with a provenance tag naming the equation family that
// produced it.
struct IdealPresentation {
    Ring ring;
    std::vector<std::pair<std::string, Polynomial>> gens;
    std::string provenance;

    IdealPresentation() = default;
    IdealPresentation(Ring r, std::string prov) : ring(std::move(r)), provenance(std::move(prov)) {}

    void add(const std::string& name, Polynomial p) {
        require(ring_equal(p.ring(), ring), "generator in wrong ring");
        require(!p.is_zero(), "zero generator " + name);
        gens.emplace_back(name, std::move(p));
    }
    std::vector<Polynomial> polys() const {
        std::vector<Polynomial> out;
        out.reserve(gens.size());
        for (const auto& [n, p] : gens) out.push_back(p);
        return out;
    }
    bool homogeneous() const {
        for (const auto& [n, p] : gens)
            if (!p.is_homogeneous()) return false;
        return true;
    }
};

inline bool homogeneity_check(const IdealPresentation& I) { return I.homogeneous(); }

// ---- division with recorded quotients ----

struct Division {
    Polynomial remainder;
    std::vector<Polynomial> quotients;  // one per divisor; f = sum q_i g_i + r
};

inline Division divide(const Polynomial& f, const std::vector<Polynomial>& G) {
    const Ring& R = f.ring();
    Division out;
    out.remainder = Polynomial::zero(R);
    out.quotients.assign(G.size(), Polynomial::zero(R));
    for (const auto& g : G) require(!g.is_zero(), "zero divisor polynomial");
    Polynomial p = f;
    while (!p.is_zero()) {
        const Term lt = p.leading();
        bool reduced = false;
        for (size_t i = 0; i < G.size(); ++i) {
            const Term& glt = G[i].leading();
            if (mono_divides(glt.m, lt.m)) {
                Monomial q = mono_div(lt.m, glt.m);
                Scalar c = lt.c / glt.c;
                p -= G[i].mul_term(q, c);
                out.quotients[i] += Polynomial::monomial(R, q, c);
                reduced = true;
                break;
            }
        }
        if (!reduced) {
            Polynomial m = Polynomial::monomial(R, lt.m, lt.c);
            out.remainder += m;
            p -= m;
        }
    }
    return out;
}

// Full normal form: no term of the result is divisible by any leading term of G.
inline Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& G) {
    if (G.empty()) return f;
    return divide(f, G).remainder;
}

// ---- Buchberger ----

struct GroebnerBasis {
    std::vector<Polynomial> elems;  // reduced, monic, sorted by leading monomial
    bool truncated = false;         // some S-pair above the cap was skipped
    std::optional<int64_t> cap;
};

inline Polynomial s_polynomial(const Polynomial& f, const Polynomial& g) {
    Monomial l = mono_lcm(f.leading().m, g.leading().m);
    return f.mul_term(mono_div(l, f.leading().m), f.leading().c.inv()) -
           g.mul_term(mono_div(l, g.leading().m), g.leading().c.inv());
}

inline GroebnerBasis buchberger(const IdealPresentation& I, std::optional<int64_t> degree_cap = std::nullopt) {
    const Ring& R = I.ring;
    GroebnerBasis out;
    out.cap = degree_cap;
    std::vector<Polynomial> basis;
    for (const auto& [name, g] : I.gens) {
        Polynomial m = g.monic();
        bool dup = false;
        for (const auto& b : basis) dup = dup || b == m;
        if (!dup) basis.push_back(std::move(m));
    }
    require(!basis.empty(), "buchberger needs a nonempty generator list");

    struct Pair {
        int64_t deg;
        int i, j;
        Monomial lcm;
    };
    auto cmp = [](const Pair& a, const Pair& b) {
        if (a.deg != b.deg) return a.deg > b.deg;
        if (a.i != b.i) return a.i > b.i;
        return a.j > b.j;
    };
    std::priority_queue<Pair, std::vector<Pair>, decltype(cmp)> queue(cmp);
    std::set<std::pair<int, int>> treated;
    auto push_pair = [&](int i, int j) {
        Monomial l = mono_lcm(basis[i].leading().m, basis[j].leading().m);
        queue.push(Pair{wdeg(*R, l), i, j, std::move(l)});
    };
    for (int i = 0; i < static_cast<int>(basis.size()); ++i)
        for (int j = i + 1; j < static_cast<int>(basis.size()); ++j) push_pair(i, j);

    while (!queue.empty()) {
        Pair pr = queue.top();
        queue.pop();
        const Polynomial &f = basis[pr.i], &g = basis[pr.j];
        // product criterion
        if (mono_mul(f.leading().m, g.leading().m) == pr.lcm) {
            treated.insert({pr.i, pr.j});
            continue;
        }
        // chain criterion
        bool chained = false;
        for (int k = 0; k < static_cast<int>(basis.size()) && !chained; ++k) {
            if (k == pr.i || k == pr.j) continue;
            if (!mono_divides(basis[k].leading().m, pr.lcm)) continue;
            auto key1 = std::minmax(pr.i, k), key2 = std::minmax(pr.j, k);
            if (treated.count({key1.first, key1.second}) && treated.count({key2.first, key2.second})) chained = true;
        }
        if (chained) {
            treated.insert({pr.i, pr.j});
            continue;
        }
        if (degree_cap && pr.deg > *degree_cap) {
            out.truncated = true;
            continue;
        }
        treated.insert({pr.i, pr.j});
        Polynomial h = normal_form(s_polynomial(f, g), basis);
        if (!h.is_zero()) {
            basis.push_back(h.monic());
            int idx = static_cast<int>(basis.size()) - 1;
            for (int i = 0; i < idx; ++i) push_pair(i, idx);
        }
    }

    // minimalize: drop elements whose leading monomial another divides
    std::vector<Polynomial> minimal;
    for (size_t i = 0; i < basis.size(); ++i) {
        bool keep = true;
        for (size_t j = 0; j < basis.size() && keep; ++j) {
            if (i == j) continue;
            const Monomial &mi = basis[i].leading().m, &mj = basis[j].leading().m;
            if (mono_divides(mj, mi) && (mi != mj || j < i)) keep = false;
        }
        if (keep) minimal.push_back(basis[i]);
    }
    // reduce tails
    std::vector<Polynomial> reduced;
    for (size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Polynomial> others;
        for (size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        Polynomial r = others.empty() ? minimal[i] : normal_form(minimal[i], others);
        require(!r.is_zero(), "reduced basis element vanished");
        reduced.push_back(r.monic());
    }
    std::sort(reduced.begin(), reduced.end(), [&](const Polynomial& a, const Polynomial& b) {
        return mono_cmp(*R, a.leading().m, b.leading().m) < 0;
    });
    out.elems = std::move(reduced);
    return out;
}

// ---- membership (tri-state, with certificate) ----

enum class MemberStatus { In, NotIn, Unknown };

struct Membership {
    MemberStatus status = MemberStatus::Unknown;
    std::vector<Polynomial> certificate;  // quotients against gb.elems when In
    Polynomial residual;                  // nonzero normal form when NotIn/Unknown
};

inline Membership ideal_member_gb(const Polynomial& f, const GroebnerBasis& gb, bool ideal_homogeneous) {
    Membership out;
    Division d = divide(f, gb.elems);
    if (d.remainder.is_zero()) {
        out.status = MemberStatus::In;
        out.certificate = d.quotients;
        return out;
    }
    out.residual = d.remainder;
    bool certain = !gb.truncated;
    if (!certain && ideal_homogeneous && f.is_homogeneous() && gb.cap && f.weighted_degree() <= *gb.cap)
        certain = true;
    out.status = certain ? MemberStatus::NotIn : MemberStatus::Unknown;
    return out;
}

inline Membership ideal_member(const Polynomial& f, const IdealPresentation& I,
                               std::optional<int64_t> degree_cap = std::nullopt) {
    require(ring_equal(f.ring(), I.ring), "ring mismatch");
    bool homog = I.homogeneous();
    std::optional<int64_t> cap = degree_cap;
    if (!cap && homog) cap = f.weighted_degree();
    GroebnerBasis gb = buchberger(I, cap);
    return ideal_member_gb(f, gb, homog);
}

// ---- staircase / Hilbert data ----

struct StaircaseCounts {
    std::vector<long long> counts;  // per weighted degree 0..D
    bool truncated = false;
};

namespace detail {

// cnt[v][d] = number of monomials in variables v.. using exactly weighted degree d
inline std::vector<std::vector<long long>> free_counts(const RingData& R, int64_t D) {
    int n = R.nvars();
    std::vector<std::vector<long long>> cnt(n + 1, std::vector<long long>(D + 1, 0));
    cnt[n][0] = 1;
    for (int v = n - 1; v >= 0; --v) {
        int w = R.vars[v].weight;
        for (int64_t d = 0; d <= D; ++d) {
            long long acc = 0;
            for (int64_t used = 0; used <= d; used += w) acc += cnt[v + 1][d - used];
            cnt[v][d] = acc;
        }
    }
    return cnt;
}

struct StaircaseDfs {
    const RingData& R;
    int64_t D;
    const std::vector<Monomial>& lts;
    std::vector<std::vector<long long>> free_cnt;
    std::vector<long long> counts;

    StaircaseDfs(const RingData& r, int64_t d, const std::vector<Monomial>& l)
        : R(r), D(d), lts(l), free_cnt(free_counts(r, d)), counts(d + 1, 0) {}

    // alive: lt indices consistent with chosen exponents so far
    void run(int v, int64_t used, std::vector<int> alive) {
        // a divisor already fully satisfied kills the whole subtree
        for (int idx : alive) {
            bool done = true;
            for (int j = v; j < R.nvars(); ++j)
                if (lts[idx][j]) { done = false; break; }
            if (done) return;
        }
        if (alive.empty()) {  // everything below is standard: count freely
            for (int64_t d = 0; used + d <= D; ++d) counts[used + d] += free_cnt[v][d];
            return;
        }
        if (v == R.nvars()) {
            counts[used] += 1;  // alive nonempty but none satisfied: standard
            return;
        }
        int w = R.vars[v].weight;
        for (int e = 0; used + static_cast<int64_t>(e) * w <= D; ++e) {
            std::vector<int> next;
            next.reserve(alive.size());
            for (int idx : alive)
                if (lts[idx][v] <= e) next.push_back(idx);
            run(v + 1, used + static_cast<int64_t>(e) * w, std::move(next));
            if (e >= 255) break;
        }
    }
};

}  // namespace detail

inline StaircaseCounts standard_monomial_counts_gb(const Ring& R, const GroebnerBasis& gb, int64_t D) {
    std::vector<Monomial> lts;
    for (const auto& g : gb.elems) lts.push_back(g.leading().m);
    detail::StaircaseDfs dfs(*R, D, lts);
    std::vector<int> all(lts.size());
    std::iota(all.begin(), all.end(), 0);
    dfs.run(0, 0, all);
    return StaircaseCounts{std::move(dfs.counts), gb.truncated};
}

// Graded dimensions of R/I in weighted degrees 0..D. For inhomogeneous ideals
// a full basis is computed; with a degree-compatible order the degree-<=m
// standard monomials then count the filtration dimension.
inline StaircaseCounts standard_monomial_counts(const IdealPresentation& I, int64_t D) {
    if (I.gens.empty()) {
        auto cnt = detail::free_counts(*I.ring, D);
        return StaircaseCounts{std::vector<long long>(cnt[0].begin(), cnt[0].end()), false};
    }
    std::optional<int64_t> cap;
    if (I.homogeneous()) cap = D;
    GroebnerBasis gb = buchberger(I, cap);
    auto out = standard_monomial_counts_gb(I.ring, gb, D);
    // a degree-D basis of a graded ideal has the exact staircase up to D, and
    // the inhomogeneous path computed a full basis
    out.truncated = false;
    return out;
}

inline std::vector<long long> free_ring_counts(const Ring& R, int64_t D) {
    auto cnt = detail::free_counts(*R, D);
    return std::vector<long long>(cnt[0].begin(), cnt[0].end());
}

// ---- linear part / tangent space ----

// Matrix of degree-1 coefficients: rows = generators, cols = variables.
// Errors when a generator has a nonzero constant term (origin off the scheme).
inline SparseMatrix linear_part(const IdealPresentation& I) {
    const Ring& R = I.ring;
    SparseMatrix M(static_cast<int>(I.gens.size()), R->nvars(), R->field);
    Monomial one = mono_one(*R);
    int r = 0;
    for (const auto& [name, g] : I.gens) {
        require(g.coeff(one).is_zero(), "generator " + name + " has a nonzero constant term");
        for (int v = 0; v < R->nvars(); ++v) {
            Monomial xm = one;
            xm[v] = 1;
            Scalar c = g.coeff(xm);
            if (!c.is_zero()) M.set(r, v, c);
        }
        ++r;
    }
    return M;
}

inline int tangent_dimension_at_origin(const IdealPresentation& I) {
    if (I.gens.empty()) return I.ring->nvars();
    return I.ring->nvars() - rank_of(linear_part(I));
}

// Weight multiset of a minimal homogeneous generating set of the coordinate
// algebra R/I at the origin (dimensions of m/m^2 per weight).
inline std::map<int, int> algebra_min_generator_weights(const IdealPresentation& I) {
    const Ring& R = I.ring;
    std::map<int, std::vector<int>> vars_by_weight;
    for (int v = 0; v < R->nvars(); ++v) vars_by_weight[R->vars[v].weight].push_back(v);
    std::map<int, int> out;
    Monomial one = mono_one(*R);
    for (const auto& [w, vars] : vars_by_weight) {
        SparseMatrix M(static_cast<int>(I.gens.size()), static_cast<int>(vars.size()), R->field);
        int r = 0;
        for (const auto& [name, g] : I.gens) {
            for (size_t c = 0; c < vars.size(); ++c) {
                Monomial xm = one;
                xm[vars[c]] = 1;
                Scalar v = g.coeff(xm);
                if (!v.is_zero()) M.set(r, static_cast<int>(c), v);
            }
            ++r;
        }
        int dim = static_cast<int>(vars.size()) - (I.gens.empty() ? 0 : rank_of(M));
        if (dim > 0) out[w] = dim;
    }
    return out;
}

// ---- minimal generators of the ideal itself ----

struct MinimalGenerators {
    std::map<int64_t, int> degrees;  // weighted degree -> count
    bool truncated = false;
};

namespace detail {
inline void enumerate_monomials(const RingData& R, int v, int64_t budget, Monomial& cur,
                                std::vector<Monomial>& out) {
    if (v == R.nvars()) {
        if (budget == 0) out.push_back(cur);
        return;
    }
    int w = R.vars[v].weight;
    for (int e = 0; static_cast<int64_t>(e) * w <= budget; ++e) {
        cur[v] = static_cast<uint8_t>(e);
        enumerate_monomials(R, v + 1, budget - static_cast<int64_t>(e) * w, cur, out);
        if (e >= 255) break;
    }
    cur[v] = 0;
}
}  // namespace detail

inline std::vector<Monomial> monomials_of_degree(const Ring& R, int64_t d) {
    std::vector<Monomial> out;
    Monomial cur = mono_one(*R);
    detail::enumerate_monomials(*R, 0, d, cur, out);
    return out;
}

// Degrees of a minimal homogeneous generating set of the ideal, computed per
// degree as dim I_d - dim (m I)_d by exact linear algebra on graded pieces.
inline MinimalGenerators minimal_generator_degrees(const IdealPresentation& I, int64_t D) {
    require(I.homogeneous(), "minimal_generator_degrees expects a graded ideal");
    const Ring& R = I.ring;
    MinimalGenerators out;
    if (I.gens.empty()) return out;
    GroebnerBasis gb = buchberger(I, D);
    out.truncated = gb.truncated;
    // the basis generates, so no minimal generator lives above its top degree
    int64_t top = D;
    if (!gb.truncated) {
        top = 0;
        for (const auto& g : gb.elems) top = std::max(top, g.weighted_degree());
        top = std::min(top, D);
    }
    StaircaseCounts sc = standard_monomial_counts_gb(R, gb, D);
    auto free_cnt = free_ring_counts(R, D);
    for (int64_t d = 1; d <= top; ++d) {
        long long dim_Id = free_cnt[d] - sc.counts[d];
        if (dim_Id == 0) continue;
        // (m I)_d is spanned by u*g with g in the basis and deg u >= 1
        auto cols = monomials_of_degree(R, d);
        std::map<Monomial, int> col_of;
        for (size_t i = 0; i < cols.size(); ++i) col_of[cols[i]] = static_cast<int>(i);
        std::vector<std::vector<std::pair<int, Scalar>>> rows;
        for (const auto& g : gb.elems) {
            int64_t gd = g.weighted_degree();
            if (gd >= d) continue;
            for (const auto& u : monomials_of_degree(R, d - gd)) {
                if (mono_is_one(u)) continue;
                std::vector<std::pair<int, Scalar>> row;
                for (const auto& t : g.terms()) row.emplace_back(col_of.at(mono_mul(t.m, u)), t.c);
                rows.push_back(std::move(row));
            }
        }
        SparseMatrix M(static_cast<int>(rows.size()), static_cast<int>(cols.size()), R->field);
        for (size_t r = 0; r < rows.size(); ++r)
            for (auto& [c, v] : rows[r]) M.set(static_cast<int>(r), c, v);
        long long dim_mId = rows.empty() ? 0 : rank_of(M);
        long long gens_d = dim_Id - dim_mId;
        if (gens_d > 0) out.degrees[d] = static_cast<int>(gens_d);
    }
    return out;
}

// Optional sanity net for rational computations: replay the staircase counts
// over two random primes above 10^4 and compare.
inline bool modular_crosscheck_counts(const IdealPresentation& I, int64_t D, uint64_t seed) {
    require(I.ring->field.is_q(), "crosscheck replays a rational computation");
    auto base = standard_monomial_counts(I, D);
    Rng rng(seed);
    for (int trial = 0; trial < 2; ++trial) {
        for (int attempt = 0;; ++attempt) {
            require(attempt < 50, "no good prime found");
            uint64_t p = random_prime(rng, 10001, 1u << 30);
            try {
                Ring Rp = make_ring(I.ring->vars, Field::prime(p), I.ring->order.kind, I.ring->order.prec);
                IdealPresentation Ip(Rp, I.provenance);
                for (const auto& [name, g] : I.gens) {
                    std::vector<Term> terms;
                    for (const auto& t : g.terms()) terms.push_back({t.m, t.c.mod_p(p)});
                    Ip.add(name, Polynomial::from_terms(Rp, terms));
                }
                if (standard_monomial_counts(Ip, D).counts != base.counts) return false;
                break;
            } catch (const error&) {
                continue;  // bad prime (vanishing denominator or leading coefficient)
            }
        }
    }
    return true;
}

// ---- Jacobian ----

// Formal partial derivatives evaluated at the point; rows = generators.
inline SparseMatrix jacobian_at(const IdealPresentation& I, const std::vector<Scalar>& point) {
    const Ring& R = I.ring;
    require(static_cast<int>(point.size()) == R->nvars(), "point length mismatch");
    SparseMatrix M(static_cast<int>(I.gens.size()), R->nvars(), R->field);
    int r = 0;
    for (const auto& [name, g] : I.gens) {
        for (int v = 0; v < R->nvars(); ++v) {
            Scalar d = g.partial(v).evaluate(point);
            if (!d.is_zero()) M.set(r, v, d);
        }
        ++r;
    }
    return M;
}

inline std::vector<Scalar> evaluate_all(const IdealPresentation& I, const std::vector<Scalar>& point) {
    std::vector<Scalar> out;
    out.reserve(I.gens.size());
    for (const auto& [name, g] : I.gens) out.push_back(g.evaluate(point));
    return out;
}

inline bool point_on_scheme(const IdealPresentation& I, const std::vector<Scalar>& point) {
    for (const auto& v : evaluate_all(I, point))
        if (!v.is_zero()) return false;
    return true;
}

}  // namespace g1m

#endif

#ifndef G1M_VERIFY_SUITE_HPP
#define G1M_VERIFY_SUITE_HPP

// continuation of verify.hpp (acceptance battery, mutation soundness, reports)

#include <condition_variable>
#include <mutex>
#include <thread>

#include "g1m/verify.hpp"

namespace g1m {
namespace verify {

inline Verdict check_ainf_structure(const einf::AInfStructure& S, std::optional<int> max_total = {}) {
    detail::Timer timer;
    Verdict v;
    v.check = "ainf-structure";
    v.params = {{"n", S.E->n}, {"d_max", S.d_max}};
    auto verdict = einf::ainf_check(S, max_total);
    v.params["tuples"] = verdict.tuples_checked;
    if (!verdict.pass) v.fail({{"witness", verdict.witness}});
    v.millis = timer.ms();
    return v;
}

// ---------------------------------------------------------------------------
// mutation soundness: every check's built-in mutated case must fail
// ---------------------------------------------------------------------------

struct MutationCase {
    std::string label;
    std::function<Verdict()> run;
};

inline std::vector<MutationCase> mutation_cases(uint64_t seed) {
    Field q = Field::rationals();
    std::vector<MutationCase> cases;
    cases.push_back({"diamond-symbolic: triple relation dropped",
                     [] { return check_diamond_symbolic(6, Field::rationals(), true); }});
    cases.push_back({"diamond-numeric: relation perturbed at the wheel point", [] {
                         Field q = Field::rationals();
                         auto WP = moduli::wheel_point(6, q);
                         return check_diamond_numeric(6, WP.full, q, true);
                     }});
    cases.push_back({"hilbert-series: one generator dropped",
                     [] { return check_hilbert_series(6, 4, Field::rationals(), true); }});
    cases.push_back({"fiber-hilbert: one curve relation dropped", [] {
                         Field q = Field::rationals();
                         Ring R5 = moduli::reduced_ring(5, q);
                         std::vector<Scalar> origin(R5->nvars(), Scalar::of_int(q, 0));
                         return check_fiber_hilbert(5, origin, 4, q, "origin", true);
                     }});
    cases.push_back({"substitution-iso: x3 image corrupted",
                     [] { return check_substitution_iso(5, Field::rationals(), true); }});
    cases.push_back({"tangent-weights: one generator dropped",
                     [] { return check_tangent_and_weights(6, Field::rationals(), true); }});
    cases.push_back({"sn-action: (24) without the -2 cb_4 term", [] {
                         return check_sn_action(6, {"24"}, Field::rationals(), true);
                     }});
    cases.push_back({"blowup-points: P_1n coordinate perturbed",
                     [] { return check_blowup_points(6, {101}, true); }});
    cases.push_back({"component-ideals: wrong conic coefficient",
                     [] { return check_component_ideals(6, 2, Field::rationals(), true); }});
    cases.push_back({"wheel: x2 restriction perturbed on C_2",
                     [] { return check_wheel(5, Field::rationals(), true); }});
    cases.push_back({"charp-fields: cusp@3 data at p = 5",
                     [] { return check_charp_fields("cusp@3", 5); }});
    cases.push_back({"charp-fields: cusp@2 data at p = 3",
                     [] { return check_charp_fields("cusp@2", 3); }});
    cases.push_back({"gr-intersection: p5 perturbed",
                     [] { return check_gr_intersection(Field::rationals(), true); }});
    cases.push_back({"ealgebra-dim: a completed rule dropped",
                     [] { return check_ealgebra_dim(3, Field::rationals(), true); }});
    cases.push_back({"hochschild-table: internal grading corrupted",
                     [] { return check_hochschild_table(3, Field::rationals(), true); }});
    cases.push_back({"ainf: rejection-sampled mu3 violating the A_4 relation", [seed] {
                         auto E = std::make_shared<einf::EAlgebra>(einf::build_e(3, Field::rationals()));
                         einf::CochainBasis c3 = einf::cochain_basis(*E, 3, -1);
                         Rng rng(seed);
                         for (int attempt = 0; attempt < 60; ++attempt) {
                             einf::AInfStructure S;
                             S.E = E;
                             S.d_max = 3;
                             int col = static_cast<int>(rng.below(c3.size()));
                             einf::Elem val;
                             einf::elem_add(val, c3.elems[col].second, Scalar::of_int(E->field, (long)rng.int_in(1, 7)));
                             S.set(3, c3.elems[col].first, val);
                             Verdict v = check_ainf_structure(S, 4);
                             if (v.status == Status::Fail) return v;
                         }
                         Verdict v;  // no violation found: report an (unexpected) pass
                         v.check = "ainf-structure";
                         return v;
                     }});
    (void)q;
    return cases;
}

inline Verdict check_mutation_soundness(uint64_t seed) {
    detail::Timer timer;
    Verdict v;
    v.check = "mutation-soundness";
    v.params = {{"seed", seed}};
    json results = json::array();
    for (auto& mc : mutation_cases(seed)) {
        Verdict inner = mc.run();
        results.push_back({{"case", mc.label}, {"status", status_str(inner.status)}});
        if (inner.status != Status::Fail)
            v.fail({{"case", mc.label}, {"problem", "mutated input did not fail"}});
    }
    v.params["cases"] = results;
    v.millis = timer.ms();
    return v;
}

// ---------------------------------------------------------------------------
// the acceptance battery behind `verify --suite paper`
// ---------------------------------------------------------------------------

struct Criterion {
    int id;
    std::string title;
    std::function<std::vector<Verdict>()> run;
};

inline std::vector<Verdict> run_parallel(std::vector<std::function<Verdict()>> jobs, int threads) {
    std::vector<Verdict> out(jobs.size());
    if (threads <= 1) {
        for (size_t i = 0; i < jobs.size(); ++i) out[i] = jobs[i]();
        return out;
    }
    std::mutex mu;
    size_t next = 0;
    auto worker = [&] {
        for (;;) {
            size_t mine;
            {
                std::lock_guard<std::mutex> lock(mu);
                if (next >= jobs.size()) return;
                mine = next++;
            }
            out[mine] = jobs[mine]();
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return out;
}

inline int env_threads() {
    const char* env = std::getenv("MODULI_THREADS");
    if (!env) return 1;
    int t = std::atoi(env);
    return t < 1 ? 1 : t;
}

inline std::vector<Criterion> acceptance_suite(uint64_t seed) {
    Field q = Field::rationals();
    std::vector<Criterion> out;

    out.push_back({1, "diamond lemma, symbolic (n = 4..8, mutated control)", [q] {
            std::vector<Verdict> vs;
            for (int n = 4; n <= 8; ++n) vs.push_back(check_diamond_symbolic(n, q));
            Verdict control = check_diamond_symbolic(6, q, true);
            // the control is expected to fail
            Verdict meta;
            meta.check = "diamond-symbolic-control";
            meta.params = {{"n", 6}};
            if (control.status != Status::Fail) meta.fail({{"problem", "mutated ideal did not fail"}});
            vs.push_back(meta);
            return vs;
        }});

    out.push_back({2, "Hilbert series of O(U_n) (n = 5..9, degrees 0..8)", [q] {
            std::vector<Verdict> vs;
            for (int n = 5; n <= 9; ++n) vs.push_back(check_hilbert_series(n, 8, q));
            return vs;
        }});

    out.push_back({3, "fiber Hilbert function h(m) = mn (m = 1..5)", [q, seed] {
            std::vector<Verdict> vs;
            for (int n = 3; n <= 7; ++n) {
                int nb = n == 3 ? 4 : moduli::reduced_ring(n, q)->nvars();
                std::vector<Scalar> origin(nb, Scalar::of_int(q, 0));
                vs.push_back(check_fiber_hilbert(n, origin, 5, q, "origin"));
                auto WP = moduli::wheel_point(n, q);
                vs.push_back(check_fiber_hilbert(n, n == 3 ? WP.full : WP.reduced, 5, q, "wheel"));
            }
            for (int n : {6, 7})
                for (int i = 1; i < n; ++i)
                    vs.push_back(check_fiber_hilbert(n, moduli::special_point_Pin(n, i, q), 5, q,
                                                     "P_" + std::to_string(i) + "n"));
            Field fp = Field::prime(101);
            Rng rng(seed);
            for (int n : {6, 7})
                for (int s = 0; s < 5; ++s) {
                    auto pt = moduli::sample_un_point(n, 101, rng);
                    vs.push_back(check_fiber_hilbert(n, pt, 5, fp, "sampled#" + std::to_string(s)));
                    vs.back().params["seed"] = seed;
                }
            return vs;
        }});

    out.push_back({4, "substitution isomorphism U_{n+1} ~ C_n (n = 4..8, mutated control)", [q] {
            std::vector<Verdict> vs;
            for (int n = 4; n <= 8; ++n) vs.push_back(check_substitution_iso(n, q));
            Verdict control = check_substitution_iso(5, q, true);
            Verdict meta;
            meta.check = "substitution-iso-control";
            meta.params = {{"n", 5}};
            if (control.status != Status::Fail) meta.fail({{"problem", "mutated map did not fail"}});
            vs.push_back(meta);
            return vs;
        }});

    out.push_back({5, "tangent dimensions and HH^2 weight tables (n = 1..7)", [q] {
            std::vector<Verdict> vs;
            for (int n = 1; n <= 7; ++n) vs.push_back(check_tangent_and_weights(n, q));
            return vs;
        }});

    out.push_back({6, "Hochschild cohomology of E_{1,n} (n = 2..5)", [q] {
            std::vector<Verdict> vs;
            for (int n = 2; n <= 5; ++n) {
                vs.push_back(check_hochschild_table(n, q));
                vs.push_back(check_hochschild_table(n, Field::prime(101)));
            }
            vs.push_back(check_hochschild_table(2, Field::prime(2)));
            for (int n = 2; n <= 5; ++n) vs.push_back(check_hh1_vanishing(n, q, 6));
            return vs;
        }});

    out.push_back({7, "S_n action on the moduli relations (n = 5..7)", [q] {
            std::vector<Verdict> vs;
            for (int n = 5; n <= 7; ++n)
                vs.push_back(check_sn_action(n, {"13", "23", "24", "25", "swap:4:5"}, q));
            Verdict control = check_sn_action(6, {"24"}, q, true);
            Verdict meta;
            meta.check = "sn-action-control";
            meta.params = {{"n", 6}};
            if (control.status != Status::Fail) meta.fail({{"problem", "corrupted involution did not fail"}});
            vs.push_back(meta);
            return vs;
        }});

    out.push_back({8, "blow-up points and component ideals (n = 6, 7)", [q] {
            std::vector<Verdict> vs;
            for (int n : {6, 7}) vs.push_back(check_blowup_points(n, {101, 211}));
            for (int n : {6, 7})
                for (int i : {1, 2, 4}) vs.push_back(check_component_ideals(n, i, q));
            return vs;
        }});

    out.push_back({9, "Gr(2,5): marked points and genus-1 sections", [q, seed] {
            std::vector<Verdict> vs;
            vs.push_back(check_gr_intersection(q));
            vs.push_back(check_gr_intersection(Field::prime(101)));
            vs.push_back(check_gr_sections(q, 10, seed));
            vs.push_back(check_gr_sections(Field::prime(211), 10, seed + 1));
            return vs;
        }});

    out.push_back({10, "wheel of lines relations (n = 3..8)", [q] {
            std::vector<Verdict> vs;
            for (int n = 3; n <= 8; ++n) vs.push_back(check_wheel(n, q));
            return vs;
        }});

    out.push_back({11, "char 2/3 vector fields (with wrong-p control)", [] {
            std::vector<Verdict> vs;
            for (std::string cs : {"cusp@2", "cusp@3", "tacnode@2"}) vs.push_back(check_charp_fields(cs));
            Verdict control = check_charp_fields("cusp@3", 5);
            Verdict meta;
            meta.check = "charp-fields-control";
            meta.params = {{"case", "cusp@3"}, {"p", 5}};
            if (control.status != Status::Fail) meta.fail({{"problem", "wrong-p control did not fail"}});
            vs.push_back(meta);
            return vs;
        }});

    out.push_back({12, "E-algebra: dimension, A_infty checker, stabilization", [q, seed] {
            std::vector<Verdict> vs;
            for (int n = 2; n <= 8; ++n) vs.push_back(check_ealgebra_dim(n, q));
            for (int n = 2; n <= 6; ++n) vs.push_back(check_ainf_trivial(n, 6, q));
            vs.push_back(check_rescale_law(3, seed));
            for (int n = 1; n <= 7; ++n) vs.push_back(check_stabilization(n));
            return vs;
        }});

    out.push_back({13, "mutation soundness of the harness", [seed] {
            return std::vector<Verdict>{check_mutation_soundness(seed)};
        }});

    return out;
}

// aggregate report: [{check, params, status, witness?, millis}, ...]
inline json report_json(const std::vector<Verdict>& verdicts, bool with_millis = true) {
    json out = json::array();
    for (const auto& v : verdicts) out.push_back(v.to_json(with_millis));
    return out;
}

inline int exit_code(const std::vector<Verdict>& verdicts) {
    bool any_fail = false, any_trunc = false;
    for (const auto& v : verdicts) {
        any_fail = any_fail || v.status == Status::Fail;
        any_trunc = any_trunc || v.status == Status::Truncated;
    }
    if (any_fail) return 1;
    if (any_trunc) return 3;
    return 0;
}

}  // namespace verify
}  // namespace g1m

#endif

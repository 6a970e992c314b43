// g1m: exact equation systems and machine checks for the genus-1 moduli family
//
// subcommands:
//   emit <target>     write an equation system (un-full, un-reduced, curve,
//                     curve-homog, plucker, e-algebra)
//   verify <check..>  run named checks or the full acceptance suite
//   hochschild        Hochschild cohomology dimensions of E_{1,n}
//   bench             timings of a few representative computations
//
// exit codes: 0 pass, 1 check failure, 2 usage, 3 truncation-only

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "g1m/io.hpp"
#include "g1m/verify.hpp"

using namespace g1m;

namespace {

struct Config {
    int n_lo = 5;
    int n_hi = 5;
    Field field = Field::rationals();
    uint64_t seed = 42;
    int D = 8;
    int m_max = 5;
    int comp_i = 2;
    std::string charp_case = "cusp@2";
    int trials = 5;
};

std::pair<int, int> parse_range(const std::string& s) {
    auto dots = s.find("..");
    if (dots == std::string::npos) {
        int v = std::stoi(s);
        return {v, v};
    }
    return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
}

std::vector<Scalar> origin_point(int n, const Field& f) {
    int nb = n == 3 ? 4 : moduli::reduced_ring(n, f)->nvars();
    return std::vector<Scalar>(nb, Scalar::of_int(f, 0));
}

// named, independently runnable checks
std::vector<verify::Verdict> run_check(const std::string& name, const Config& cfg) {
    using namespace verify;
    std::vector<Verdict> out;
    auto each_n = [&](int lo_min, auto fn) {
        for (int n = std::max(cfg.n_lo, lo_min); n <= cfg.n_hi; ++n) fn(n);
    };
    if (name == "diamond-symbolic") {
        each_n(4, [&](int n) { out.push_back(check_diamond_symbolic(n, cfg.field)); });
    } else if (name == "diamond-numeric") {
        each_n(4, [&](int n) {
            auto WP = moduli::wheel_point(n, cfg.field);
            out.push_back(check_diamond_numeric(n, WP.full, cfg.field));
            Ring F = moduli::full_ring(n, cfg.field);
            std::vector<Scalar> origin(F->nvars(), Scalar::of_int(cfg.field, 0));
            out.push_back(check_diamond_numeric(n, origin, cfg.field));
            // rejection-sampled off-ideal point over F_101
            Field fp = Field::prime(101);
            auto M = moduli::u_n_full(n, fp);
            Rng rng(cfg.seed);
            std::vector<Scalar> pt;
            do {
                pt.clear();
                for (int v = 0; v < M.ring->nvars(); ++v) pt.push_back(Scalar::residue(rng.below(101), 101));
            } while (point_on_scheme(M.ideal, pt));
            out.push_back(check_diamond_numeric(n, pt, fp));
        });
    } else if (name == "hilbert-series") {
        each_n(5, [&](int n) { out.push_back(check_hilbert_series(n, cfg.D, cfg.field)); });
    } else if (name == "fiber-hilbert") {
        each_n(3, [&](int n) {
            out.push_back(check_fiber_hilbert(n, origin_point(n, cfg.field), cfg.m_max, cfg.field, "origin"));
            auto WP = moduli::wheel_point(n, cfg.field);
            out.push_back(check_fiber_hilbert(n, n == 3 ? WP.full : WP.reduced, cfg.m_max, cfg.field, "wheel"));
            if (n >= 6)
                for (int i = 1; i < n; ++i)
                    out.push_back(check_fiber_hilbert(n, moduli::special_point_Pin(n, i, cfg.field), cfg.m_max,
                                                      cfg.field, "P_" + std::to_string(i) + "n"));
            if (n >= 5) {
                Rng rng(cfg.seed);
                Field fp = Field::prime(101);
                for (int s = 0; s < cfg.trials; ++s) {
                    auto pt = moduli::sample_un_point(n, 101, rng);
                    out.push_back(check_fiber_hilbert(n, pt, cfg.m_max, fp, "sampled#" + std::to_string(s)));
                    out.back().params["seed"] = cfg.seed;
                }
            }
        });
    } else if (name == "substitution-iso") {
        each_n(3, [&](int n) { out.push_back(check_substitution_iso(n, cfg.field)); });
    } else if (name == "tangent-weights") {
        each_n(1, [&](int n) { out.push_back(check_tangent_and_weights(n, cfg.field)); });
    } else if (name == "sn-action") {
        each_n(5, [&](int n) {
            out.push_back(check_sn_action(n, {"13", "23", "24", "25", "swap:4:5"}, cfg.field));
        });
    } else if (name == "blowup-points") {
        each_n(6, [&](int n) { out.push_back(check_blowup_points(n)); });
    } else if (name == "component-ideals") {
        each_n(6, [&](int n) { out.push_back(check_component_ideals(n, cfg.comp_i, cfg.field)); });
    } else if (name == "wheel") {
        each_n(3, [&](int n) { out.push_back(check_wheel(n, cfg.field)); });
    } else if (name == "charp-fields") {
        out.push_back(check_charp_fields(cfg.charp_case));
    } else if (name == "c1n-membership") {
        each_n(2, [&](int n) { out.push_back(check_c1n_membership(n, cfg.field)); });
    } else if (name == "gr-intersection") {
        out.push_back(check_gr_intersection(cfg.field));
    } else if (name == "gr-sections") {
        out.push_back(check_gr_sections(cfg.field, cfg.trials, cfg.seed));
    } else if (name == "ealgebra-dim") {
        each_n(2, [&](int n) { out.push_back(check_ealgebra_dim(n, cfg.field)); });
    } else if (name == "hochschild-table") {
        each_n(2, [&](int n) { out.push_back(check_hochschild_table(n, cfg.field)); });
    } else if (name == "hh1-vanishing") {
        each_n(2, [&](int n) { out.push_back(check_hh1_vanishing(n, cfg.field)); });
    } else if (name == "ainf-trivial") {
        each_n(2, [&](int n) { out.push_back(check_ainf_trivial(n, 6, cfg.field)); });
    } else if (name == "rescale-law") {
        each_n(2, [&](int n) { out.push_back(check_rescale_law(n, cfg.seed)); });
    } else if (name == "stabilization") {
        each_n(1, [&](int n) { out.push_back(check_stabilization(n)); });
    } else if (name == "mutation-soundness") {
        out.push_back(check_mutation_soundness(cfg.seed));
    } else {
        throw CLI::ValidationError("unknown check: " + name);
    }
    return out;
}

const std::vector<std::string> kAllChecks = {
    "diamond-symbolic", "diamond-numeric", "hilbert-series", "fiber-hilbert", "substitution-iso",
    "tangent-weights",  "sn-action",       "blowup-points",  "component-ideals", "wheel",
    "charp-fields",     "c1n-membership",  "gr-intersection", "gr-sections",    "ealgebra-dim",
    "hochschild-table", "hh1-vanishing",   "ainf-trivial",   "rescale-law",     "stabilization"};

IdealPresentation emit_target(const std::string& target, int n, const Field& field) {
    if (target == "un-full") return moduli::u_n_full(n, field).ideal;
    if (target == "un-reduced") return moduli::u_n_reduced(n, field).ideal;
    if (target == "curve")
        return n >= 3 ? moduli::curve_over_un(n, field).relations : moduli::special_curve(n, field).relations;
    if (target == "curve-homog") {
        require(n >= 3, "curve-homog needs n >= 3");
        return moduli::curve_over_un(n, field).homog_relations;
    }
    if (target == "plucker") return grass::plucker_ideal(field);
    throw error("unknown emit target " + target);
}

void write_out(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    require(static_cast<bool>(out), "cannot open " + path);
    out << content;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact equation systems and machine checks for the genus-1 moduli family"};
    app.require_subcommand(1);

    // ---- emit ----
    auto* emit = app.add_subcommand("emit", "write an equation system");
    std::string emit_target_name, emit_format = "ideal-text", emit_out, emit_field = "Q";
    int emit_n = 6;
    emit->add_option("target", emit_target_name,
                     "un-full | un-reduced | curve | curve-homog | plucker | e-algebra")
        ->required();
    emit->add_option("--n", emit_n, "number of marked points");
    emit->add_option("--field", emit_field, "Q or Fp:<p>");
    emit->add_option("--format", emit_format, "ideal-text | json | cas-text");
    emit->add_option("--out", emit_out, "output file (default stdout)");

    // ---- verify ----
    auto* ver = app.add_subcommand("verify", "run named checks or the full acceptance suite");
    std::vector<std::string> check_names;
    std::string ver_n = "5", ver_field = "Q", ver_out;
    uint64_t ver_seed = 42;
    int ver_D = 8, ver_mmax = 5, ver_i = 2, ver_trials = 5;
    std::string ver_case = "cusp@2", ver_suite;
    bool no_millis = false, quiet = false;
    ver->add_option("checks", check_names, "check names, or: all");
    ver->add_option("--suite", ver_suite, "paper: run the full acceptance battery");
    ver->add_option("--n", ver_n, "n or range a..b");
    ver->add_option("--field", ver_field, "Q or Fp:<p>");
    ver->add_option("--seed", ver_seed, "seed for randomized checks (embedded in the report)");
    ver->add_option("--D", ver_D, "degree bound for Hilbert checks");
    ver->add_option("--m-max", ver_mmax, "filtration bound for fiber checks");
    ver->add_option("--i", ver_i, "component index for component-ideals");
    ver->add_option("--case", ver_case, "cusp@2 | cusp@3 | tacnode@2");
    ver->add_option("--trials", ver_trials, "sample count for randomized checks");
    ver->add_option("--out", ver_out, "write the JSON report here (default stdout)");
    ver->add_flag("--no-millis", no_millis, "omit timing fields (byte-reproducible reports)");
    ver->add_flag("--quiet", quiet, "suppress per-check progress lines");

    // ---- hochschild ----
    auto* hh = app.add_subcommand("hochschild", "Hochschild cohomology dimensions of E_{1,n}");
    int hh_n = 3, hh_j = 2, hh_rmax = 4;
    std::string hh_field = "Q";
    hh->add_option("--n", hh_n, "number of marked points (>= 2)");
    hh->add_option("--j", hh_j, "cohomological degree (1 or 2)");
    hh->add_option("--r-max", hh_rmax, "weights 1..r-max");
    hh->add_option("--field", hh_field, "Q or Fp:<p>");

    // ---- bench ----
    auto* bench = app.add_subcommand("bench", "representative timings");
    int bench_n = 6;
    bench->add_option("--n", bench_n, "size parameter");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*emit) {
            Field field = Field::parse(emit_field);
            std::string content;
            if (emit_target_name == "e-algebra") {
                require(emit_n >= 2, "e-algebra needs n >= 2");
                auto S = ncrewrite::complete(einf::e_quiver_system(emit_n, field));
                if (emit_format == "json") {
                    nlohmann::json j;
                    j["vertices"] = S.quiver.nverts;
                    j["arrows"] = nlohmann::json::array();
                    for (const auto& a : S.quiver.arrows)
                        j["arrows"].push_back({{"name", a.name}, {"src", a.src}, {"tgt", a.tgt}, {"deg", a.deg}});
                    j["rules"] = nlohmann::json::array();
                    for (const auto& r : S.rules) {
                        std::string rhs;
                        for (const auto& [w, c] : r.rhs)
                            rhs += (rhs.empty() ? "" : " + ") + c.str() + "*" + word_str(S.quiver, w);
                        j["rules"].push_back({{"lhs", word_str(S.quiver, r.lhs)}, {"rhs", rhs.empty() ? "0" : rhs}});
                    }
                    content = j.dump(2) + "\n";
                } else {
                    content = ncrewrite::quiver_text(S);
                }
            } else {
                IdealPresentation I = emit_target(emit_target_name, emit_n, field);
                if (emit_format == "ideal-text") content = io::ideal_to_text(I);
                else if (emit_format == "json") content = io::ideal_to_json(I).dump(2) + "\n";
                else if (emit_format == "cas-text") content = io::ideal_to_cas_text(I);
                else throw error("unknown format " + emit_format);
            }
            write_out(emit_out, content);
            return 0;
        }

        if (*ver) {
            Config cfg;
            std::tie(cfg.n_lo, cfg.n_hi) = parse_range(ver_n);
            cfg.field = Field::parse(ver_field);
            cfg.seed = ver_seed;
            cfg.D = ver_D;
            cfg.m_max = ver_mmax;
            cfg.comp_i = ver_i;
            cfg.charp_case = ver_case;
            cfg.trials = ver_trials;
            std::vector<verify::Verdict> verdicts;
            if (ver_suite == "paper") {
                for (auto& crit : verify::acceptance_suite(cfg.seed)) {
                    auto vs = crit.run();
                    bool ok = true;
                    for (const auto& v : vs) ok = ok && v.status == verify::Status::Pass;
                    if (!quiet)
                        std::cerr << (ok ? "[PASS] " : "[FAIL] ") << "criterion " << crit.id << ": "
                                  << crit.title << "\n";
                    verdicts.insert(verdicts.end(), vs.begin(), vs.end());
                }
            } else {
                std::vector<std::string> names = check_names;
                if (names.size() == 1 && names[0] == "all") names = kAllChecks;
                if (names.empty()) throw CLI::ValidationError("no checks named (try: all)");
                for (const auto& nm : names) {
                    bool known = nm == "mutation-soundness";
                    for (const auto& k : kAllChecks) known = known || k == nm;
                    if (!known) throw CLI::ValidationError("unknown check: " + nm);
                }
                // checks are pure and independent: dispatch to the bounded pool
                int threads = std::min<int>(verify::env_threads(), static_cast<int>(names.size()));
                std::vector<std::vector<verify::Verdict>> grouped(names.size());
                std::mutex mu;
                size_t next = 0;
                auto worker = [&] {
                    for (;;) {
                        size_t mine;
                        {
                            std::lock_guard<std::mutex> lock(mu);
                            if (next >= names.size()) return;
                            mine = next++;
                        }
                        grouped[mine] = run_check(names[mine], cfg);
                    }
                };
                if (threads <= 1) {
                    worker();
                } else {
                    std::vector<std::thread> pool;
                    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
                    for (auto& th : pool) th.join();
                }
                for (auto& g : grouped) {
                    if (!quiet)
                        for (const auto& v : g)
                            std::cerr << "[" << verify::status_str(v.status) << "] " << v.check << " "
                                      << v.params.dump() << "\n";
                    verdicts.insert(verdicts.end(), g.begin(), g.end());
                }
            }
            nlohmann::json report = verify::report_json(verdicts, !no_millis);
            write_out(ver_out, report.dump(2) + "\n");
            return verify::exit_code(verdicts);
        }

        if (*hh) {
            Field field = Field::parse(hh_field);
            auto E = einf::build_e(hh_n, field);
            nlohmann::json j;
            j["n"] = hh_n;
            j["j"] = hh_j;
            j["field"] = field.str();
            nlohmann::json dims = nlohmann::json::object();
            for (int r = 1; r <= hh_rmax; ++r)
                dims[std::to_string(r)] = einf::hochschild_dim(E, hh_j, r);
            j["dims_by_weight"] = dims;
            std::cout << j.dump(2) << "\n";
            return 0;
        }

        if (*bench) {
            auto run = [&](const std::string& label, std::function<void()> f) {
                auto t0 = std::chrono::steady_clock::now();
                f();
                auto ms =
                    std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
                        .count();
                std::cout << label << ": " << ms << " ms\n";
            };
            Field q = Field::rationals();
            run("groebner basis of the U_" + std::to_string(bench_n) + " relations",
                [&] { buchberger(moduli::u_n_reduced(bench_n, q).ideal, 4); });
            run("diamond check at n = " + std::to_string(bench_n),
                [&] { verify::check_diamond_symbolic(bench_n, q); });
            run("Hochschild table at n = 4", [&] { verify::check_hochschild_table(4, q); });
            run("blow-up enumeration at n = " + std::to_string(bench_n),
                [&] { verify::check_blowup_points(std::max(bench_n, 6)); });
            return 0;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const g1m::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

#ifndef G1M_EALGEBRA_HPP
#define G1M_EALGEBRA_HPP

#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "g1m/linalg.hpp"
#include "g1m/moduli.hpp"
#include "g1m/quiver.hpp"

namespace g1m {
namespace einf {

// rewrite system presenting E_{1,n} = k[Q_n]/(B_iA_i = B_jA_j, A_iB_j = 0 for i != j)
inline ncrewrite::RewriteSystem e_quiver_system(int n, const Field& f) {
    using namespace ncrewrite;
    require(n >= 2, "E_{1,n} needs n >= 2");
    RewriteSystem S;
    S.field = f;
    S.quiver.nverts = n + 1;
    for (int i = 1; i <= n; ++i) S.quiver.arrows.push_back({"A" + std::to_string(i), 0, i, 0});
    for (int i = 1; i <= n; ++i) S.quiver.arrows.push_back({"B" + std::to_string(i), i, 0, 1});
    // precedence with A_1, B_1 smallest orients B_i A_i -> B_1 A_1
    S.arrow_rank.assign(2 * n, 0);
    S.arrow_rank[0] = 0;
    S.arrow_rank[n] = 1;
    int r = 2;
    for (int i = 2; i <= n; ++i) S.arrow_rank[i - 1] = r++;
    for (int i = 2; i <= n; ++i) S.arrow_rank[n + i - 1] = r++;
    auto A = [&](int i) { return i - 1; };
    auto B = [&](int i) { return n + i - 1; };
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (i != j) S.add_rule({B(j), A(i)}, {});
    Scalar one = Scalar::of_int(f, 1);
    for (int i = 2; i <= n; ++i) {
        PathPoly rhs;
        path_add(rhs, {A(1), B(1)}, one);
        S.add_rule({A(i), B(i)}, rhs);
    }
    return S;
}

// The graded algebra E_{1,n}. Basis (dim 4n + 2): idempotents e_0..e_n, the
// arrows A_i, B_i, the loop w = B_1A_1 at the central vertex and the loops
// l_i = A_iB_i at the outer vertices. |A_i| = 0, |B_i| = |w| = |l_i| = 1.
struct EAlgebra {
    int n = 0;
    Field field = Field::rationals();
    int dim = 0;
    std::vector<std::string> names;
    std::vector<int> src, tgt, deg;
    std::vector<std::vector<int>> table;  // product index, -1 for zero; coefficients are 1
    ncrewrite::RewriteSystem system;

    int e(int v) const { return v; }
    int A(int i) const { return n + 1 + (i - 1); }
    int B(int i) const { return 2 * n + 1 + (i - 1); }
    int w() const { return 3 * n + 1; }
    int l(int i) const { return 3 * n + 2 + (i - 1); }
    bool is_idem(int b) const { return b <= n; }
    int index_of(const std::string& name) const {
        for (int i = 0; i < dim; ++i)
            if (names[i] == name) return i;
        throw error("no basis element named " + name);
    }
    int prod(int x, int y) const { return table[x][y]; }  // x after y
};

inline EAlgebra build_e(int n, const Field& f = Field::rationals()) {
    using namespace ncrewrite;
    EAlgebra E;
    E.n = n;
    E.field = f;
    E.dim = 4 * n + 2;
    E.system = complete(e_quiver_system(n, f));
    require(E.system.completed, "completion of the E rules truncated");
    auto basis = basis_by_degree(E.system, 1, 16);
    require(basis.total == E.dim, "unexpected basis size for E_{1,n}");

    // canonical ordering backed by explicit words
    std::vector<Word> words(E.dim);
    auto arrowA = [&](int i) { return i - 1; };
    auto arrowB = [&](int i) { return n + i - 1; };
    for (int v = 0; v <= n; ++v) {
        E.names.push_back("e" + std::to_string(v));
        E.src.push_back(v);
        E.tgt.push_back(v);
        E.deg.push_back(0);
        words[v] = Word{-1 - v};
    }
    for (int i = 1; i <= n; ++i) {
        E.names.push_back("A" + std::to_string(i));
        E.src.push_back(0);
        E.tgt.push_back(i);
        E.deg.push_back(0);
        words[E.A(i)] = Word{arrowA(i)};
    }
    for (int i = 1; i <= n; ++i) {
        E.names.push_back("B" + std::to_string(i));
        E.src.push_back(i);
        E.tgt.push_back(0);
        E.deg.push_back(1);
        words[E.B(i)] = Word{arrowB(i)};
    }
    E.names.push_back("w");
    E.src.push_back(0);
    E.tgt.push_back(0);
    E.deg.push_back(1);
    words[E.w()] = Word{arrowA(1), arrowB(1)};  // B_1 A_1, A_1 applied first
    for (int i = 1; i <= n; ++i) {
        E.names.push_back("l" + std::to_string(i));
        E.src.push_back(i);
        E.tgt.push_back(i);
        E.deg.push_back(1);
        words[E.l(i)] = Word{arrowB(i), arrowA(i)};  // A_i B_i, B_i applied first
    }
    // cross-check against the rewriting basis
    {
        std::map<Word, int> claimed;
        for (int b = 0; b < E.dim; ++b) claimed[words[b]] = b;
        long long seen = 0;
        for (const auto& [key, ws] : basis.groups)
            for (const auto& bw : ws) {
                require(claimed.count(bw), "rewriting basis word missing from the canonical list");
                ++seen;
            }
        require(seen == E.dim, "basis mismatch");
    }
    // multiplication table from normal forms (paths compose from the right)
    E.table.assign(E.dim, std::vector<int>(E.dim, -1));
    std::map<Word, int> by_word;
    for (int b = 0; b < E.dim; ++b)
        if (!E.is_idem(b)) by_word[words[b]] = b;
    for (int x = 0; x < E.dim; ++x)
        for (int y = 0; y < E.dim; ++y) {
            if (E.src[x] != E.tgt[y]) continue;
            if (E.is_idem(x)) { E.table[x][y] = y; continue; }
            if (E.is_idem(y)) { E.table[x][y] = x; continue; }
            Word concat = words[y];
            concat.insert(concat.end(), words[x].begin(), words[x].end());
            PathPoly p = nf_word(concat, E.system);
            if (p.empty()) continue;
            require(p.size() == 1 && p.begin()->second.is_one(), "non-monomial product in E");
            E.table[x][y] = by_word.at(p.begin()->first);
        }
    return E;
}

// sparse element of E
using Elem = std::map<int, Scalar>;

inline void elem_add(Elem& e, int b, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = e.try_emplace(b, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) e.erase(it);
    }
}

inline std::string elem_str(const EAlgebra& E, const Elem& e) {
    if (e.empty()) return "0";
    std::string s;
    for (const auto& [b, c] : e) {
        if (!s.empty()) s += " + ";
        s += c.str() + "*" + E.names[b];
    }
    return s;
}

// ---- relative Hochschild cochains --------------------------------------------
//
// Cochains are vertex-compatible multilinear maps on tuples of non-idempotent
// basis elements (the reduced bar complex over the idempotent span), with
// values in E. A tuple is stored rightmost argument first: t[0] = a_1.
// Internal degree s: deg(value) = sum deg(t) + s.

struct CochainBasis {
    int d = 0;
    int s = 0;
    std::vector<std::pair<std::vector<int>, int>> elems;  // (tuple, value basis id)
    std::map<std::pair<std::vector<int>, int>, int> index;

    int size() const { return static_cast<int>(elems.size()); }
};

inline CochainBasis cochain_basis(const EAlgebra& E, int d, int s) {
    CochainBasis out;
    out.d = d;
    out.s = s;
    std::vector<int> tuple;
    std::vector<int> nonidem;
    for (int b = 0; b < E.dim; ++b)
        if (!E.is_idem(b)) nonidem.push_back(b);
    auto rec = [&](auto&& self, int degsum) -> void {
        if (degsum + s > 1) return;  // E lives in degrees 0 and 1
        if (static_cast<int>(tuple.size()) == d) {
            int vd = degsum + s;
            if (vd < 0) return;
            for (int b = 0; b < E.dim; ++b) {
                if (E.deg[b] != vd) continue;
                if (E.src[b] != E.src[tuple.front()] || E.tgt[b] != E.tgt[tuple.back()]) continue;
                out.index[{tuple, b}] = static_cast<int>(out.elems.size());
                out.elems.emplace_back(tuple, b);
            }
            return;
        }
        for (int b : nonidem) {
            if (!tuple.empty() && E.src[b] != E.tgt[tuple.back()]) continue;
            tuple.push_back(b);
            self(self, degsum + E.deg[b]);
            tuple.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

// Hochschild differential C^d_s -> C^{d+1}_s: the bracket with mu^2 in the
// shifted (bar) convention. A cochain of arity d and internal degree s is an
// operator of shifted degree s + d - 1; the insertion Koszul signs depend on
// that parity. For s = 2 - d (the mu^d deformation slots, shifted degree 1)
// this is exactly the linearization of the A_infty-associativity equations.
inline SparseMatrix hochschild_delta(const EAlgebra& E, const CochainBasis& dom, const CochainBasis& cod) {
    require(cod.d == dom.d + 1 && cod.s == dom.s, "mismatched cochain spaces");
    int gdeg = ((dom.s + dom.d - 1) % 2 + 2) % 2;  // shifted operator degree of the cochain
    std::vector<int> nonidem;
    for (int b = 0; b < E.dim; ++b)
        if (!E.is_idem(b)) nonidem.push_back(b);
    // factor lists: t -> (x, y) with x*y = t, both non-idempotent
    std::vector<std::vector<std::pair<int, int>>> factors(E.dim);
    for (int x : nonidem)
        for (int y : nonidem) {
            if (E.src[x] != E.tgt[y]) continue;
            int t = E.table[x][y];
            if (t >= 0) factors[t].emplace_back(x, y);
        }
    std::map<std::pair<int, int>, long> acc;  // (row, col) -> integer entry
    auto add_entry = [&](const std::vector<int>& tuple, int value, int col, int sign) {
        auto it = cod.index.find({tuple, value});
        if (it == cod.index.end()) return;
        acc[{it->second, col}] += sign;
    };
    for (int col = 0; col < dom.size(); ++col) {
        const auto& [T, b] = dom.elems[col];
        // mu^2(a_{d+1}, phi(...)) = (-1)^{deg b} a_{d+1} * b
        for (int x : nonidem) {
            if (E.src[x] != E.tgt[T.back()]) continue;
            int p = E.table[x][b];
            if (p < 0) continue;
            std::vector<int> U = T;
            U.push_back(x);
            add_entry(U, p, col, (E.deg[b] % 2 == 0) ? +1 : -1);
        }
        // (-1)^{gdeg (|a_1| - 1)} mu^2(phi(...), a_1)
        for (int y : nonidem) {
            if (E.tgt[y] != E.src[T.front()]) continue;
            int p = E.table[b][y];
            if (p < 0) continue;
            std::vector<int> U;
            U.push_back(y);
            U.insert(U.end(), T.begin(), T.end());
            int sign = (gdeg * (E.deg[y] + 1) + E.deg[y]) % 2 == 0 ? +1 : -1;
            add_entry(U, p, col, sign);
        }
        // inner mu^2: expand slot k into (x, y) with x*y = T[k]; the phi-side
        // term enters with -(-1)^{gdeg}
        int presum = 0;  // sum of degrees of T[0..k)
        for (size_t k = 0; k < T.size(); ++k) {
            for (const auto& [x, y] : factors[T[k]]) {
                std::vector<int> U(T.begin(), T.begin() + k);
                U.push_back(y);
                U.push_back(x);
                U.insert(U.end(), T.begin() + k + 1, T.end());
                int par = (presum + static_cast<int>(k) + E.deg[y] + gdeg + 1) % 2;
                add_entry(U, b, col, par == 0 ? +1 : -1);
            }
            presum += E.deg[T[k]];
        }
    }
    SparseMatrix M(cod.size(), dom.size(), E.field);
    for (const auto& [rc, v] : acc)
        if (v != 0) M.set(rc.first, rc.second, Scalar::of_int(E.field, v));
    return M;
}

// dim HH^j(E)_s at s = -r, computed from the reduced complex at arity d = j + r
inline int hochschild_dim(const EAlgebra& E, int j, int r) {
    require(j >= 1 && r >= 1 && r <= 6, "hochschild expects j >= 1, 1 <= r <= 6");
    int d = j + r, s = -r;
    CochainBasis below = cochain_basis(E, d - 1, s);
    CochainBasis mid = cochain_basis(E, d, s);
    CochainBasis above = cochain_basis(E, d + 1, s);
    int rank_in = below.size() == 0 ? 0 : rank_of(hochschild_delta(E, below, mid));
    int rank_out = mid.size() == 0 ? 0 : rank_of(hochschild_delta(E, mid, above));
    return mid.size() - rank_out - rank_in;
}

// ---- A_infty structures -------------------------------------------------------

struct AInfStructure {
    std::shared_ptr<const EAlgebra> E;
    int d_max = 6;
    // arity d (3 <= d <= d_max) -> tuple (rightmost argument first) -> value
    std::map<int, std::map<std::vector<int>, Elem>> mu;

    void set(int d, const std::vector<int>& tuple, const Elem& value) {
        require(d >= 3 && d <= d_max, "mu arity out of range");
        require(static_cast<int>(tuple.size()) == d, "tuple length mismatch");
        int degsum = 0;
        for (size_t k = 0; k < tuple.size(); ++k) {
            require(!E->is_idem(tuple[k]), "idempotent argument (unital structure)");
            if (k + 1 < tuple.size())
                require(E->src[tuple[k + 1]] == E->tgt[tuple[k]], "non-composable tuple");
            degsum += E->deg[tuple[k]];
        }
        for (const auto& [b, c] : value) {
            require(E->deg[b] == degsum + 2 - d, "value degree must be sum + (2 - d)");
            require(E->src[b] == E->src[tuple.front()] && E->tgt[b] == E->tgt[tuple.back()],
                    "value not vertex-compatible");
        }
        if (value.empty()) mu[d].erase(tuple);
        else mu[d][tuple] = value;
    }
};

struct AInfVerdict {
    bool pass = true;
    std::string witness;  // first violating tuple and residual
    long long tuples_checked = 0;
};

// Check the A_{d_max}-associativity equations on all composable tuples of
// total length <= 2 d_max - 2, dropping terms that would involve mu^d with
// d > d_max.
inline AInfVerdict ainf_check(const AInfStructure& S, std::optional<int> max_total = std::nullopt) {
    const EAlgebra& E = *S.E;
    AInfVerdict out;
    int top = max_total.value_or(2 * S.d_max - 2);
    Scalar one = Scalar::of_int(E.field, 1);
    std::vector<int> nonidem;
    for (int b = 0; b < E.dim; ++b)
        if (!E.is_idem(b)) nonidem.push_back(b);

    auto mu_lookup = [&](int arity, const std::vector<int>& args) -> const Elem* {
        auto itd = S.mu.find(arity);
        if (itd == S.mu.end()) return nullptr;
        auto it = itd->second.find(args);
        return it == itd->second.end() ? nullptr : &it->second;
    };
    auto evaluate = [&](const std::vector<int>& t) -> Elem {
        int D = static_cast<int>(t.size());
        Elem acc;
        for (int m = 2; m <= std::min(D, S.d_max); ++m) {
            int o = D - m + 1;
            if (o < 2 || o > S.d_max) continue;
            if (m >= 3 && !S.mu.count(m)) continue;
            if (o >= 3 && !S.mu.count(o)) continue;
            int presum = 0;
            for (int k = 0; k + m <= D; ++k) {
                // sign (-1)^{|a_1| + ... + |a_k| - k}
                int base_sign = (presum + k) % 2;
                Elem inner;
                if (m == 2) {
                    int p = E.table[t[k + 1]][t[k]];
                    if (p >= 0) elem_add(inner, p, (E.deg[t[k]] % 2 == 0) ? one : -one);
                } else {
                    std::vector<int> args(t.begin() + k, t.begin() + k + m);
                    if (const Elem* v = mu_lookup(m, args)) inner = *v;
                }
                if (!inner.empty()) {
                    for (const auto& [b, cb] : inner) {
                        Scalar coeff = (base_sign == 0) ? cb : -cb;
                        if (o == 2) {
                            // two outer slots: (a_D, b) when k == 0, (b, a_1) when k == 1
                            if (k == 0) {
                                int p = E.table[t[D - 1]][b];
                                if (p >= 0)
                                    elem_add(acc, p, (E.deg[b] % 2 == 0) ? coeff : -coeff);
                            } else {
                                int p = E.table[b][t[0]];
                                if (p >= 0)
                                    elem_add(acc, p, (E.deg[t[0]] % 2 == 0) ? coeff : -coeff);
                            }
                        } else {
                            if (E.is_idem(b)) continue;  // unital: vanishes on idempotents
                            std::vector<int> args(t.begin(), t.begin() + k);
                            args.push_back(b);
                            args.insert(args.end(), t.begin() + k + m, t.end());
                            if (const Elem* v = mu_lookup(o, args))
                                for (const auto& [b2, c2] : *v) elem_add(acc, b2, coeff * c2);
                        }
                    }
                }
                presum += E.deg[t[k]];
            }
        }
        return acc;
    };

    // depth-first over composable tuples
    std::vector<int> t;
    bool failed = false;
    auto rec = [&](auto&& self) -> void {
        if (failed) return;
        int len = static_cast<int>(t.size());
        if (len >= 3) {
            Elem res = evaluate(t);
            ++out.tuples_checked;
            if (!res.empty()) {
                failed = true;
                std::string names;
                for (auto it = t.rbegin(); it != t.rend(); ++it)
                    names += (names.empty() ? "" : ",") + E.names[*it];
                out.pass = false;
                out.witness = "tuple (" + names + ") -> " + elem_str(E, res);
                return;
            }
        }
        if (len == top) return;
        for (int b : nonidem) {
            if (!t.empty() && E.src[b] != E.tgt[t.back()]) continue;
            t.push_back(b);
            self(self);
            t.pop_back();
            if (failed) return;
        }
    };
    rec(rec);
    return out;
}

// gauge rescaling mu^d -> lambda^{d-2} mu^d
inline AInfStructure rescale(const AInfStructure& S, const Scalar& lambda) {
    require(!lambda.is_zero(), "rescale needs lambda != 0");
    AInfStructure out = S;
    for (auto& [d, entries] : out.mu) {
        Scalar factor = Scalar::of_int(S.E->field, 1);
        for (int k = 0; k < d - 2; ++k) factor *= lambda;
        for (auto& [tuple, val] : entries)
            for (auto& [b, c] : val) c *= factor;
    }
    return out;
}

// conjugation by the degree-grading automorphism lambda^{deg}
inline AInfStructure conjugate_by_grading(const AInfStructure& S, const Scalar& lambda) {
    require(!lambda.is_zero(), "conjugation needs lambda != 0");
    const EAlgebra& E = *S.E;
    AInfStructure out = S;
    for (auto& [d, entries] : out.mu)
        for (auto& [tuple, val] : entries) {
            int degsum = 0;
            for (int b : tuple) degsum += E.deg[b];
            for (auto& [b, c] : val) {
                int k = degsum - E.deg[b];
                Scalar factor = Scalar::of_int(E.field, 1);
                for (int i = 0; i < std::abs(k); ++i) factor *= lambda;
                if (k < 0) factor = factor.inv();
                c *= factor;
            }
        }
    return out;
}

inline bool ainf_equal(const AInfStructure& a, const AInfStructure& b) {
    return a.mu == b.mu;
}

// ---- stabilization ------------------------------------------------------------

// 2 + max(minimal-generator weight of O(U_n), max relation weight); for n >= 5
// the relation weight is the uniform quadratic bound of the family.
inline int stabilization_bound(int n, const Field& f = Field::rationals()) {
    require(n >= 1, "stabilization_bound needs n >= 1");
    int max_gen = 0, max_rel = 0;
    if (n >= 5) {
        auto gens = algebra_min_generator_weights(moduli::u_n_reduced(n, f).ideal);
        for (const auto& [wt, cnt] : gens) max_gen = std::max(max_gen, wt);
        auto rels = minimal_generator_degrees(moduli::u_n_eliminated(n, f).ideal, 4);
        require(!rels.truncated, "relation degrees truncated");
        for (const auto& [dg, cnt] : rels.degrees) max_rel = std::max(max_rel, static_cast<int>(dg));
        require(max_rel <= 2, "relations of U_n are quadratic for n >= 5");
        max_rel = 2;  // the family-wide bound (vacuous relations at n = 5)
    } else {
        auto M = moduli::u_n_special(n, f);
        for (const auto& v : M.ring->vars) max_gen = std::max(max_gen, v.weight);
    }
    return 2 + std::max(max_gen, max_rel);
}

// ---- file format ---------------------------------------------------------------
//
// one line per stored value:  mu d | b1,...,bd -> c1*name1 + c2*name2
// arguments are listed rightmost first (b1 = a_1); omitted tuples are zero

inline std::string ainf_to_text(const AInfStructure& S) {
    std::string out;
    for (const auto& [d, entries] : S.mu)
        for (const auto& [tuple, val] : entries) {
            if (val.empty()) continue;
            out += "mu " + std::to_string(d) + " | ";
            for (size_t k = 0; k < tuple.size(); ++k)
                out += (k ? "," : "") + S.E->names[tuple[k]];
            out += " -> " + elem_str(*S.E, val) + "\n";
        }
    return out;
}

inline AInfStructure ainf_from_text(std::shared_ptr<const EAlgebra> E, const std::string& text, int d_max = 6) {
    AInfStructure S;
    S.E = E;
    S.d_max = d_max;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        require(line.rfind("mu ", 0) == 0, "bad mu line: " + line);
        auto bar = line.find('|');
        auto arrow = line.find("->");
        require(bar != std::string::npos && arrow != std::string::npos, "bad mu line: " + line);
        int d = std::stoi(line.substr(3, bar - 3));
        std::vector<int> tuple;
        {
            std::istringstream ts(line.substr(bar + 1, arrow - bar - 1));
            std::string tok;
            while (std::getline(ts, tok, ',')) {
                while (!tok.empty() && tok.front() == ' ') tok.erase(tok.begin());
                while (!tok.empty() && tok.back() == ' ') tok.pop_back();
                if (!tok.empty()) tuple.push_back(E->index_of(tok));
            }
        }
        Elem val;
        {
            std::string rhs = line.substr(arrow + 2);
            std::istringstream vs(rhs);
            std::string term;
            while (std::getline(vs, term, '+')) {
                while (!term.empty() && term.front() == ' ') term.erase(term.begin());
                while (!term.empty() && term.back() == ' ') term.pop_back();
                if (term.empty() || term == "0") continue;
                auto star = term.rfind('*');
                require(star != std::string::npos, "bad value term: " + term);
                Scalar c = Scalar::parse_in(E->field, term.substr(0, star));
                elem_add(val, E->index_of(term.substr(star + 1)), c);
            }
        }
        S.set(d, tuple, val);
    }
    return S;
}

}  // namespace einf
}  // namespace g1m

#endif

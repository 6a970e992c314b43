#ifndef G1M_QUIVER_HPP
#define G1M_QUIVER_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "g1m/scalar.hpp"

namespace g1m {
namespace ncrewrite {

struct Arrow {
    std::string name;
    int src = 0;
    int tgt = 0;
    int deg = 0;  // internal degree
};

struct Quiver {
    int nverts = 0;
    std::vector<Arrow> arrows;

    int arrow_index(const std::string& name) const {
        for (size_t i = 0; i < arrows.size(); ++i)
            if (arrows[i].name == name) return static_cast<int>(i);
        throw error("no arrow named " + name);
    }
};

// Paths are composed from the right; a word stores arrow ids in application
// order (index 0 acts first). Printed right-to-left: w = [b, a] prints "a*b".
using Word = std::vector<int>;

inline bool word_composable(const Quiver& Q, const Word& w) {
    for (size_t k = 0; k + 1 < w.size(); ++k)
        if (Q.arrows[w[k]].tgt != Q.arrows[w[k + 1]].src) return false;
    return true;
}
inline int word_src(const Quiver& Q, const Word& w) { return Q.arrows[w.front()].src; }
inline int word_tgt(const Quiver& Q, const Word& w) { return Q.arrows[w.back()].tgt; }
inline int word_deg(const Quiver& Q, const Word& w) {
    int d = 0;
    for (int a : w) d += Q.arrows[a].deg;
    return d;
}
inline std::string word_str(const Quiver& Q, const Word& w) {
    std::string s;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        if (!s.empty()) s += "*";
        s += Q.arrows[*it].name;
    }
    return s;
}

// linear combination of composable path words
using PathPoly = std::map<Word, Scalar>;

inline void path_add(PathPoly& p, const Word& w, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = p.try_emplace(w, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) p.erase(it);
    }
}

struct RewriteRule {
    Word lhs;
    PathPoly rhs;  // every word shares (src, tgt, deg) with lhs and is smaller
};

enum class Strategy { Leftmost, Rightmost };

struct RewriteSystem {
    Quiver quiver;
    Field field = Field::rationals();
    std::vector<RewriteRule> rules;
    std::vector<int> arrow_rank;  // word order: length, then printed-left lex by rank
    bool completed = false;
    bool truncated = false;

    // -1, 0, 1 comparison in the word order
    int word_cmp(const Word& a, const Word& b) const {
        if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
        for (size_t k = a.size(); k-- > 0;) {  // printed-leftmost = last applied
            int ra = arrow_rank[a[k]], rb = arrow_rank[b[k]];
            if (ra != rb) return ra < rb ? -1 : 1;
        }
        return 0;
    }

    void add_rule(const Word& lhs, const PathPoly& rhs) {
        require(word_composable(quiver, lhs) && !lhs.empty(), "rule lhs must be a nonempty path");
        for (const auto& [w, c] : rhs) {
            require(word_composable(quiver, w), "rule rhs must be a path combination");
            require(word_src(quiver, w) == word_src(quiver, lhs) &&
                        word_tgt(quiver, w) == word_tgt(quiver, lhs) &&
                        word_deg(quiver, w) == word_deg(quiver, lhs),
                    "rule rhs must match lhs source, target and degree");
            require(word_cmp(w, lhs) < 0, "non-terminating rule orientation");
        }
        rules.push_back({lhs, rhs});
        completed = false;
    }
};

namespace detail {
// occurrences of lhs inside w as application-order slices [s, s+len)
inline std::vector<int> occurrences(const Word& w, const Word& lhs) {
    std::vector<int> out;
    if (lhs.size() > w.size()) return out;
    for (size_t s = 0; s + lhs.size() <= w.size(); ++s) {
        bool hit = true;
        for (size_t k = 0; k < lhs.size() && hit; ++k) hit = w[s + k] == lhs[k];
        if (hit) out.push_back(static_cast<int>(s));
    }
    return out;
}

inline PathPoly replace_at(const RewriteSystem& S, const Word& w, const Scalar& coeff, size_t rule_idx, int s) {
    const RewriteRule& r = S.rules[rule_idx];
    PathPoly out;
    for (const auto& [rw, rc] : r.rhs) {
        Word nw(w.begin(), w.begin() + s);
        nw.insert(nw.end(), rw.begin(), rw.end());
        nw.insert(nw.end(), w.begin() + s + r.lhs.size(), w.end());
        path_add(out, nw, coeff * rc);
    }
    return out;
}
}  // namespace detail

// one reduction step on the largest reducible word; false if already normal
inline bool reduce_step(const RewriteSystem& S, PathPoly& p, Strategy strat = Strategy::Leftmost) {
    const Word* best = nullptr;
    size_t best_rule = 0;
    int best_pos = -1;
    for (const auto& [w, c] : p) {
        int pos = -1;
        size_t rule = 0;
        for (size_t ri = 0; ri < S.rules.size(); ++ri) {
            for (int s : detail::occurrences(w, S.rules[ri].lhs)) {
                // printed-leftmost redex = largest application offset
                bool better;
                if (pos < 0) better = true;
                else if (strat == Strategy::Leftmost) better = s > pos;
                else better = s < pos;
                if (better) { pos = s; rule = ri; }
            }
        }
        if (pos < 0) continue;
        if (!best || S.word_cmp(w, *best) > 0) {
            best = &w;
            best_rule = rule;
            best_pos = pos;
        }
    }
    if (!best) return false;
    Word w = *best;
    Scalar c = p.at(w);
    p.erase(w);
    PathPoly repl = detail::replace_at(S, w, c, best_rule, best_pos);
    for (const auto& [rw, rc] : repl) path_add(p, rw, rc);
    return true;
}

inline PathPoly nf(PathPoly p, const RewriteSystem& S, Strategy strat = Strategy::Leftmost) {
    // the order strictly decreases on each step, so this always terminates;
    // the bound turns a broken order into a loud failure
    long steps = 0;
    while (reduce_step(S, p, strat))
        require(++steps < 200000, "reduction exceeded the step bound");
    return p;
}

inline PathPoly nf_word(const Word& w, const RewriteSystem& S, Strategy strat = Strategy::Leftmost) {
    PathPoly p;
    path_add(p, w, Scalar::of_int(S.field, 1));
    return nf(std::move(p), S, strat);
}

// Overlap (critical-pair) completion up to lhs length max_len.
inline RewriteSystem complete(RewriteSystem S, int max_len = 12) {
    S.truncated = false;
    bool changed = true;
    while (changed) {
        changed = false;
        size_t nrules = S.rules.size();
        for (size_t i = 0; i < nrules && !changed; ++i) {
            for (size_t j = 0; j < nrules && !changed; ++j) {
                const Word &l1 = S.rules[i].lhs, &l2 = S.rules[j].lhs;
                // superpositions: l2 starting at offset s inside/over the end of l1
                for (int s = (i == j ? 1 : 0); s < static_cast<int>(l1.size()) && !changed; ++s) {
                    size_t olap = std::min(l1.size() - s, l2.size());
                    if (olap == 0) continue;
                    bool match = true;
                    for (size_t k = 0; k < olap && match; ++k) match = l1[s + k] == l2[k];
                    if (!match) continue;
                    Word w(l1.begin(), l1.end());
                    for (size_t k = olap; k < l2.size(); ++k) w.push_back(l2[k]);
                    if (static_cast<int>(w.size()) > max_len) {
                        S.truncated = true;
                        continue;
                    }
                    Scalar one = Scalar::of_int(S.field, 1);
                    PathPoly v1 = detail::replace_at(S, w, one, i, 0);
                    PathPoly v2 = detail::replace_at(S, w, one, j, s);
                    PathPoly d = nf(std::move(v1), S);
                    PathPoly d2 = nf(std::move(v2), S);
                    for (const auto& [dw, dc] : d2) path_add(d, dw, -dc);
                    if (d.empty()) continue;
                    // orient on the largest word
                    auto lead = d.begin();
                    for (auto it = d.begin(); it != d.end(); ++it)
                        if (S.word_cmp(it->first, lead->first) > 0) lead = it;
                    Word nl = lead->first;
                    Scalar lc = lead->second;
                    PathPoly nr;
                    for (const auto& [dw, dc] : d)
                        if (dw != nl) path_add(nr, dw, -(dc / lc));
                    if (static_cast<int>(nl.size()) > max_len) {
                        S.truncated = true;
                        continue;
                    }
                    S.add_rule(nl, nr);
                    changed = true;
                }
            }
        }
    }
    S.completed = !S.truncated;
    return S;
}

// All normal-form words grouped by (source, target, internal degree), together
// with the trivial paths at each vertex (degree 0).
struct BasisByDegree {
    // entries: (src, tgt, deg) -> words; the empty word at vertex v is stored
    // as the one-element vector {-1 - v}
    std::map<std::tuple<int, int, int>, std::vector<Word>> groups;
    bool truncated = false;
    long long total = 0;
};

inline bool is_idempotent_word(const Word& w) { return w.size() == 1 && w[0] < 0; }

inline BasisByDegree basis_by_degree(const RewriteSystem& S, int max_deg, int max_len = 64) {
    require(S.completed, "basis_by_degree needs a completed system");
    BasisByDegree out;
    for (int v = 0; v < S.quiver.nverts; ++v) {
        out.groups[{v, v, 0}].push_back(Word{-1 - v});
        ++out.total;
    }
    // DFS over irreducible words
    std::vector<Word> stack;
    for (size_t a = 0; a < S.quiver.arrows.size(); ++a)
        if (S.quiver.arrows[a].deg <= max_deg) stack.push_back(Word{static_cast<int>(a)});
    while (!stack.empty()) {
        Word w = stack.back();
        stack.pop_back();
        int deg = word_deg(S.quiver, w);
        if (deg <= max_deg) {
            out.groups[{word_src(S.quiver, w), word_tgt(S.quiver, w), deg}].push_back(w);
            ++out.total;
        }
        if (static_cast<int>(w.size()) >= max_len) {
            out.truncated = true;
            continue;
        }
        int tail = S.quiver.arrows[w.back()].tgt;
        for (size_t a = 0; a < S.quiver.arrows.size(); ++a) {
            if (S.quiver.arrows[a].src != tail) continue;
            Word nw = w;
            nw.push_back(static_cast<int>(a));
            if (word_deg(S.quiver, nw) > max_deg) continue;
            // a new redex must end at the appended arrow
            bool reducible = false;
            for (const auto& r : S.rules) {
                if (r.lhs.size() > nw.size()) continue;
                bool hit = true;
                size_t off = nw.size() - r.lhs.size();
                for (size_t k = 0; k < r.lhs.size() && hit; ++k) hit = nw[off + k] == r.lhs[k];
                if (hit) { reducible = true; break; }
            }
            if (!reducible) stack.push_back(std::move(nw));
        }
    }
    for (auto& [key, words] : out.groups)
        std::sort(words.begin(), words.end(),
                  [&](const Word& a, const Word& b) { return S.word_cmp(a, b) < 0; });
    return out;
}

// ---- text format -------------------------------------------------------------

inline std::string quiver_text(const RewriteSystem& S) {
    std::string out = "vertex v0..v" + std::to_string(S.quiver.nverts - 1) + "\n";
    for (const auto& a : S.quiver.arrows)
        out += "arrow " + a.name + ": v" + std::to_string(a.src) + "->v" + std::to_string(a.tgt) +
               " deg " + std::to_string(a.deg) + "\n";
    for (const auto& r : S.rules) {
        std::string rhs;
        for (const auto& [w, c] : r.rhs) {
            if (!rhs.empty()) rhs += " + ";
            rhs += c.str() + "*" + word_str(S.quiver, w);
        }
        if (rhs.empty()) rhs = "0";
        out += "rel " + word_str(S.quiver, r.lhs) + " = " + rhs + "\n";
    }
    return out;
}

}  // namespace ncrewrite
}  // namespace g1m

#endif

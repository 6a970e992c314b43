#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "g1m/quiver.hpp"

using namespace g1m;
using namespace g1m::ncrewrite;

namespace {

// the quiver of E_{1,n}: central vertex 0, arrows A_i: 0 -> i (deg 0) and
// B_i: i -> 0 (deg 1); precedence makes A_1, B_1 smallest so that
// B_i A_i -> B_1 A_1 is order-decreasing
RewriteSystem e_system(int n, const Field& f = Field::rationals()) {
    RewriteSystem S;
    S.field = f;
    S.quiver.nverts = n + 1;
    for (int i = 1; i <= n; ++i) S.quiver.arrows.push_back({"A" + std::to_string(i), 0, i, 0});
    for (int i = 1; i <= n; ++i) S.quiver.arrows.push_back({"B" + std::to_string(i), i, 0, 1});
    S.arrow_rank.assign(2 * n, 0);
    S.arrow_rank[0] = 0;      // A1
    S.arrow_rank[n] = 1;      // B1
    int r = 2;
    for (int i = 2; i <= n; ++i) S.arrow_rank[i - 1] = r++;      // A2..An
    for (int i = 2; i <= n; ++i) S.arrow_rank[n + i - 1] = r++;  // B2..Bn
    auto A = [&](int i) { return i - 1; };
    auto B = [&](int i) { return n + i - 1; };
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (i != j) S.add_rule({B(j), A(i)}, {});  // A_i B_j = 0 (apply B_j first)
    Scalar one = Scalar::of_int(f, 1);
    for (int i = 2; i <= n; ++i) {
        PathPoly rhs;
        path_add(rhs, {A(1), B(1)}, one);
        S.add_rule({A(i), B(i)}, rhs);  // B_i A_i -> B_1 A_1
    }
    return S;
}

}  // namespace

TEST_CASE("nf under the E rules") {
    RewriteSystem S = complete(e_system(3));
    auto A = [&](int i) { return i - 1; };
    auto B = [&](int i) { return 3 + i - 1; };
    // A_2 B_3 -> 0
    CHECK(nf_word({B(3), A(2)}, S).empty());
    // B_2 A_2 -> B_1 A_1
    auto p = nf_word({A(2), B(2)}, S);
    REQUIRE(p.size() == 1);
    CHECK(p.begin()->first == Word{A(1), B(1)});
    // idempotence of nf
    PathPoly q;
    path_add(q, {A(2), B(2), A(3), B(3)}, Scalar::rational(2, 3));
    path_add(q, {A(1), B(1)}, Scalar::of_int(S.field, 1));
    auto n1 = nf(q, S);
    CHECK(nf(n1, S) == n1);
}

TEST_CASE("completion of the E_{1,2} rules adds exactly the two cubic rules") {
    RewriteSystem S0 = e_system(2);
    CHECK(S0.rules.size() == 3);  // A1B2, A2B1, B2A2
    RewriteSystem S = complete(S0);
    CHECK(!S.truncated);
    REQUIRE(S.rules.size() == 5);
    auto A = [&](int i) { return i - 1; };
    auto B = [&](int i) { return 2 + i - 1; };
    bool has_a1b1a1 = false, has_b1a1b1 = false;
    for (const auto& r : S.rules) {
        if (r.lhs == Word{A(1), B(1), A(1)}) has_a1b1a1 = r.rhs.empty();
        if (r.lhs == Word{B(1), A(1), B(1)}) has_b1a1b1 = r.rhs.empty();
    }
    CHECK(has_a1b1a1);
    CHECK(has_b1a1b1);

    // empty relation set stays unchanged
    RewriteSystem empty;
    empty.quiver.nverts = 1;
    empty.quiver.arrows.push_back({"x", 0, 0, 1});
    empty.arrow_rank = {0};
    CHECK(complete(empty).rules.empty());
}

TEST_CASE("basis by degree: dim E_{1,n} = 4n + 2") {
    for (int n : {2, 5}) {
        RewriteSystem S = complete(e_system(n));
        auto basis = basis_by_degree(S, 1, 16);
        CHECK(!basis.truncated);
        CHECK(basis.total == 4 * n + 2);
        // nothing above internal degree 1
        auto basis2 = basis_by_degree(S, 2, 16);
        CHECK(basis2.total == 4 * n + 2);
    }
    for (int n = 2; n <= 6; ++n) {
        RewriteSystem S = complete(e_system(n));
        auto b = basis_by_degree(S, 2, 16);
        long long deg2 = 0;
        for (const auto& [key, words] : b.groups)
            if (std::get<2>(key) == 2) deg2 += static_cast<long long>(words.size());
        CHECK(deg2 == 0);
    }
}

TEST_CASE("brute-force path enumeration matches the completed basis") {
    for (int n : {2, 3, 5}) {
        RewriteSystem S = complete(e_system(n));
        auto basis = basis_by_degree(S, 8, 16);
        // every path of length <= 6 reduces into the span of basis words
        std::vector<Word> paths;
        for (size_t a = 0; a < S.quiver.arrows.size(); ++a) paths.push_back({static_cast<int>(a)});
        std::map<Word, bool> is_basis;
        for (const auto& [key, words] : basis.groups)
            for (const auto& w : words)
                if (!is_idempotent_word(w)) is_basis[w] = true;
        size_t head = 0;
        long long checked = 0;
        while (head < paths.size()) {
            Word w = paths[head++];
            auto p = nf_word(w, S);
            for (const auto& [rw, rc] : p) CHECK(is_basis.count(rw));
            ++checked;
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
        CHECK(checked > 0);
        // irreducible words of length <= 6 are exactly the claimed basis
        long long irreducible = 0;
        for (const auto& w : paths) {
            bool red = false;
            for (const auto& r : S.rules)
                if (!detail::occurrences(w, r.lhs).empty()) { red = true; break; }
            if (!red) ++irreducible;
        }
        CHECK(irreducible + S.quiver.nverts == basis.total);
    }
}

TEST_CASE("confluence: leftmost and rightmost strategies agree after completion") {
    RewriteSystem S = complete(e_system(4));
    Rng rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        // random composable word of length <= 8
        Word w;
        int v = static_cast<int>(rng.below(S.quiver.nverts));
        for (int len = 0; len < 8; ++len) {
            std::vector<int> outs;
            for (size_t a = 0; a < S.quiver.arrows.size(); ++a)
                if (S.quiver.arrows[a].src == v) outs.push_back(static_cast<int>(a));
            if (outs.empty()) break;
            int a = outs[rng.below(outs.size())];
            w.push_back(a);
            v = S.quiver.arrows[a].tgt;
        }
        if (w.empty()) continue;
        CHECK(nf_word(w, S, Strategy::Leftmost) == nf_word(w, S, Strategy::Rightmost));
    }
}

TEST_CASE("multiplication via nf is associative on basis triples") {
    int n = 3;
    RewriteSystem S = complete(e_system(n));
    auto basis = basis_by_degree(S, 4, 16);
    std::vector<Word> words;
    for (const auto& [key, ws] : basis.groups)
        for (const auto& w : ws)
            if (!is_idempotent_word(w)) words.push_back(w);
    auto mul = [&](const PathPoly& x, const PathPoly& y) {
        PathPoly out;
        for (const auto& [wx, cx] : x)
            for (const auto& [wy, cy] : y) {
                if (word_tgt(S.quiver, wy) != word_src(S.quiver, wx)) continue;
                Word w = wy;
                w.insert(w.end(), wx.begin(), wx.end());
                path_add(out, w, cx * cy);
            }
        return nf(std::move(out), S);
    };
    for (const auto& a : words)
        for (const auto& b : words)
            for (const auto& c : words) {
                PathPoly pa = nf_word(a, S), pb = nf_word(b, S), pc = nf_word(c, S);
                CHECK(mul(mul(pa, pb), pc) == mul(pa, mul(pb, pc)));
            }
}

TEST_CASE("commutative shadow: completion on a one-vertex quiver matches the commutative count") {
    // relations x^2 = y, y^2 = x, yx = xy on one vertex: quotient dimension 4
    RewriteSystem S;
    S.quiver.nverts = 1;
    S.quiver.arrows.push_back({"x", 0, 0, 0});
    S.quiver.arrows.push_back({"y", 0, 0, 0});
    S.arrow_rank = {0, 1};
    Scalar one = Scalar::of_int(S.field, 1);
    PathPoly xy;
    path_add(xy, {1, 0}, one);  // apply y first, then x: printed "x*y"
    S.add_rule({0, 1}, xy);     // printed "y*x" rewrites to "x*y"
    PathPoly py;
    path_add(py, {1}, one);
    S.add_rule({0, 0}, py);  // x^2 -> y
    PathPoly px;
    path_add(px, {0}, one);
    S.add_rule({1, 1}, px);  // y^2 -> x
    RewriteSystem C = complete(S);
    CHECK(!C.truncated);
    auto basis = basis_by_degree(C, 0, 10);
    CHECK(basis.total == 4);  // 1, x, y, xy as in the commutative Groebner computation
}

TEST_CASE("quiver text serialization") {
    RewriteSystem S = complete(e_system(2));
    std::string txt = quiver_text(S);
    CHECK(txt.find("arrow A1: v0->v1 deg 0") != std::string::npos);
    CHECK(txt.find("arrow B2: v2->v0 deg 1") != std::string::npos);
    CHECK(txt.find("rel A1*B2 = 0") != std::string::npos);
}

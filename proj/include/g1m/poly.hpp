#ifndef G1M_POLY_HPP
#define G1M_POLY_HPP

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "g1m/scalar.hpp"

namespace g1m {

struct VarSpec {
    std::string name;
    int weight = 1;  // >= 1
};

enum class OrderKind { WDegLex, WDegRevLex };

inline std::string order_kind_str(OrderKind k) { return k == OrderKind::WDegLex ? "wdeglex" : "wdegrevlex"; }
inline OrderKind order_kind_parse(const std::string& s) {
    if (s == "wdeglex") return OrderKind::WDegLex;
    if (s == "wdegrevlex") return OrderKind::WDegRevLex;
    throw error("bad order kind: " + s);
}

// prec lists variable indices from lowest to highest precedence
struct MonomialOrder {
    OrderKind kind = OrderKind::WDegRevLex;
    std::vector<int> prec;
};

struct RingData {
    std::vector<VarSpec> vars;
    Field field;
    MonomialOrder order;

    int nvars() const { return static_cast<int>(vars.size()); }
    int var_index(const std::string& name) const {
        for (int i = 0; i < nvars(); ++i)
            if (vars[i].name == name) return i;
        throw error("no variable named " + name);
    }
};

using Ring = std::shared_ptr<const RingData>;

inline Ring make_ring(std::vector<VarSpec> vars, const Field& field,
                      OrderKind kind = OrderKind::WDegRevLex, std::vector<int> prec = {}) {
    auto rd = std::make_shared<RingData>();
    for (const auto& v : vars) {
        require(v.weight >= 1, "variable weight must be >= 1");
        for (const auto& w : rd->vars) require(w.name != v.name, "duplicate variable name " + v.name);
        rd->vars.push_back(v);
    }
    if (prec.empty()) {
        prec.resize(vars.size());
        std::iota(prec.begin(), prec.end(), 0);
    }
    require(prec.size() == vars.size(), "precedence permutation size mismatch");
    std::vector<char> seen(vars.size(), 0);
    for (int i : prec) {
        require(i >= 0 && i < static_cast<int>(vars.size()) && !seen[i], "bad precedence permutation");
        seen[i] = 1;
    }
    rd->field = field;
    rd->order = MonomialOrder{kind, std::move(prec)};
    return rd;
}

inline bool ring_equal(const Ring& a, const Ring& b) {
    if (a == b) return true;
    if (a->field != b->field || a->order.kind != b->order.kind) return false;
    if (a->order.prec != b->order.prec) return false;
    if (a->vars.size() != b->vars.size()) return false;
    for (size_t i = 0; i < a->vars.size(); ++i)
        if (a->vars[i].name != b->vars[i].name || a->vars[i].weight != b->vars[i].weight) return false;
    return true;
}

// Dense exponent vector; per-variable exponents capped at 255 (overflow is a
// hard error, all computations here live in tiny degrees).
using Monomial = std::vector<uint8_t>;

inline int64_t wdeg(const RingData& R, const Monomial& m) {
    int64_t d = 0;
    for (int i = 0; i < R.nvars(); ++i) d += static_cast<int64_t>(m[i]) * R.vars[i].weight;
    return d;
}

inline Monomial mono_one(const RingData& R) { return Monomial(R.nvars(), 0); }

inline bool mono_is_one(const Monomial& m) {
    for (auto e : m) if (e) return false;
    return true;
}

inline Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial out(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
        int v = a[i] + b[i];
        require(v <= 255, "exponent overflow");
        out[i] = static_cast<uint8_t>(v);
    }
    return out;
}

inline bool mono_divides(const Monomial& a, const Monomial& b) {  // a | b
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

inline Monomial mono_div(const Monomial& b, const Monomial& a) {  // b / a
    Monomial out(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
        require(a[i] <= b[i], "monomial not divisible");
        out[i] = static_cast<uint8_t>(b[i] - a[i]);
    }
    return out;
}

inline Monomial mono_lcm(const Monomial& a, const Monomial& b) {
    Monomial out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
    return out;
}

// total order; returns -1, 0, 1
inline int mono_cmp(const RingData& R, const Monomial& a, const Monomial& b) {
    int64_t da = wdeg(R, a), db = wdeg(R, b);
    if (da != db) return da < db ? -1 : 1;
    if (R.order.kind == OrderKind::WDegLex) {
        for (int i = R.nvars() - 1; i >= 0; --i) {
            int v = R.order.prec[i];
            if (a[v] != b[v]) return a[v] < b[v] ? -1 : 1;
        }
    } else {
        // graded revlex: at the first difference scanning from the lowest
        // precedence variable, fewer of that variable means larger
        for (int i = 0; i < R.nvars(); ++i) {
            int v = R.order.prec[i];
            if (a[v] != b[v]) return a[v] < b[v] ? 1 : -1;
        }
    }
    return 0;
}

struct Term {
    Monomial m;
    Scalar c;
};

class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(Ring r) : ring_(std::move(r)) {}

    static Polynomial zero(Ring r) { return Polynomial(std::move(r)); }
    static Polynomial constant(Ring r, const Scalar& c) {
        Polynomial p(r);
        if (!c.is_zero()) p.terms_.push_back({mono_one(*r), c});
        return p;
    }
    static Polynomial from_int(Ring r, long v) { return constant(r, Scalar::of_int(r->field, v)); }
    static Polynomial var(Ring r, int i, int power = 1) {
        Polynomial p(r);
        Monomial m = mono_one(*r);
        require(power >= 0 && power <= 255, "exponent overflow");
        m[i] = static_cast<uint8_t>(power);
        p.terms_.push_back({std::move(m), Scalar::of_int(r->field, 1)});
        return p;
    }
    static Polynomial var(Ring r, const std::string& name, int power = 1) {
        return var(r, r->var_index(name), power);
    }
    static Polynomial monomial(Ring r, Monomial m, Scalar c) {
        Polynomial p(r);
        if (!c.is_zero()) p.terms_.push_back({std::move(m), std::move(c)});
        return p;
    }

    const Ring& ring() const { return ring_; }
    const std::vector<Term>& terms() const { return terms_; }  // descending order
    bool is_zero() const { return terms_.empty(); }
    const Term& leading() const {
        require(!terms_.empty(), "leading term of zero polynomial");
        return terms_.front();
    }
    int64_t weighted_degree() const {  // max over terms; -1 for zero
        int64_t d = -1;
        for (const auto& t : terms_) d = std::max(d, wdeg(*ring_, t.m));
        return d;
    }
    bool is_homogeneous() const {
        if (terms_.empty()) return true;
        int64_t d = wdeg(*ring_, terms_.front().m);
        for (const auto& t : terms_)
            if (wdeg(*ring_, t.m) != d) return false;
        return true;
    }

    Polynomial operator+(const Polynomial& o) const {
        check_ring(o);
        Polynomial out(ring_);
        out.terms_.reserve(terms_.size() + o.terms_.size());
        size_t i = 0, j = 0;
        while (i < terms_.size() || j < o.terms_.size()) {
            if (j == o.terms_.size()) { out.terms_.push_back(terms_[i]); ++i; continue; }
            if (i == terms_.size()) { out.terms_.push_back(o.terms_[j]); ++j; continue; }
            int c = mono_cmp(*ring_, terms_[i].m, o.terms_[j].m);
            if (c > 0) { out.terms_.push_back(terms_[i]); ++i; }
            else if (c < 0) { out.terms_.push_back(o.terms_[j]); ++j; }
            else {
                Scalar s = terms_[i].c + o.terms_[j].c;
                if (!s.is_zero()) out.terms_.push_back({terms_[i].m, s});
                ++i; ++j;
            }
        }
        return out;
    }
    Polynomial operator-() const {
        Polynomial out(ring_);
        out.terms_ = terms_;
        for (auto& t : out.terms_) t.c = -t.c;
        return out;
    }
    Polynomial operator-(const Polynomial& o) const { return *this + (-o); }
    Polynomial operator*(const Polynomial& o) const {
        check_ring(o);
        struct Cmp {
            const RingData* R;
            bool operator()(const Monomial& a, const Monomial& b) const { return mono_cmp(*R, a, b) > 0; }
        };
        std::map<Monomial, Scalar, Cmp> acc{Cmp{ring_.get()}};
        for (const auto& t : terms_) {
            for (const auto& u : o.terms_) {
                Monomial m = mono_mul(t.m, u.m);
                Scalar c = t.c * u.c;
                auto [it, fresh] = acc.try_emplace(std::move(m), c);
                if (!fresh) it->second += c;
            }
        }
        Polynomial out(ring_);
        out.terms_.reserve(acc.size());
        for (auto& [m, c] : acc)
            if (!c.is_zero()) out.terms_.push_back({m, c});
        return out;
    }
    Polynomial operator*(const Scalar& s) const {
        Polynomial out(ring_);
        if (s.is_zero()) return out;
        out.terms_ = terms_;
        for (auto& t : out.terms_) t.c = t.c * s;
        return out;
    }
    Polynomial mul_term(const Monomial& m, const Scalar& s) const {
        Polynomial out(ring_);
        if (s.is_zero()) return out;
        out.terms_.reserve(terms_.size());
        for (const auto& t : terms_) out.terms_.push_back({mono_mul(t.m, m), t.c * s});
        return out;
    }
    Polynomial& operator+=(const Polynomial& o) { *this = *this + o; return *this; }
    Polynomial& operator-=(const Polynomial& o) { *this = *this - o; return *this; }

    bool operator==(const Polynomial& o) const {
        if (!ring_equal(ring_, o.ring_)) return false;
        if (terms_.size() != o.terms_.size()) return false;
        for (size_t i = 0; i < terms_.size(); ++i)
            if (terms_[i].m != o.terms_[i].m || terms_[i].c != o.terms_[i].c) return false;
        return true;
    }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    Polynomial monic() const {
        if (is_zero()) return *this;
        return *this * leading().c.inv();
    }

    Scalar evaluate(const std::vector<Scalar>& point) const {
        require(static_cast<int>(point.size()) == ring_->nvars(), "point length mismatch");
        Scalar acc = Scalar::of_int(ring_->field, 0);
        for (const auto& t : terms_) {
            Scalar v = t.c;
            for (int i = 0; i < ring_->nvars(); ++i)
                for (int e = 0; e < t.m[i]; ++e) v *= point[i];
            acc += v;
        }
        return acc;
    }

    // formal partial derivative, valid in any characteristic
    Polynomial partial(int i) const {
        Polynomial out(ring_);
        for (const auto& t : terms_) {
            if (t.m[i] == 0) continue;
            Term u;
            u.m = t.m;
            u.m[i] -= 1;
            u.c = t.c * Scalar::of_int(ring_->field, t.m[i]);
            if (!u.c.is_zero()) out.terms_.push_back(std::move(u));
        }
        // term order is preserved by lowering one exponent? not in general: resort
        out.normalize();
        return out;
    }

    // coefficient of the monomial m
    Scalar coeff(const Monomial& m) const {
        for (const auto& t : terms_)
            if (t.m == m) return t.c;
        return Scalar::of_int(ring_->field, 0);
    }

    std::string str() const;

    void normalize() {
        std::sort(terms_.begin(), terms_.end(), [&](const Term& a, const Term& b) {
            return mono_cmp(*ring_, a.m, b.m) > 0;
        });
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (auto& t : terms_) {
            if (!out.empty() && out.back().m == t.m) out.back().c += t.c;
            else out.push_back(std::move(t));
        }
        out.erase(std::remove_if(out.begin(), out.end(), [](const Term& t) { return t.c.is_zero(); }), out.end());
        terms_ = std::move(out);
    }

    static Polynomial from_terms(Ring r, std::vector<Term> ts) {
        Polynomial p(std::move(r));
        p.terms_ = std::move(ts);
        p.normalize();
        return p;
    }

private:
    Ring ring_;
    std::vector<Term> terms_;

    void check_ring(const Polynomial& o) const {
        require(ring_equal(ring_, o.ring_), "ring mismatch");
    }
};

inline Polynomial operator*(const Scalar& s, const Polynomial& p) { return p * s; }

inline std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    const Field& f = ring_->field;
    bool first = true;
    for (const auto& t : terms_) {
        Scalar c = t.c;
        std::string sign;
        if (f.is_q() && c.rat() < 0) {
            sign = first ? "-" : " - ";
            c = -c;
        } else {
            sign = first ? "" : " + ";
        }
        // inside polynomials, F_p coefficients print as plain residues; the
        // field is carried by the ring header
        std::string cs = f.is_q() ? c.str() : std::to_string(c.res());
        std::string body;
        bool unit = c.is_one();
        if (mono_is_one(t.m)) {
            body = cs;
        } else {
            if (!unit) body = cs + "*";
            bool fst = true;
            for (int i = 0; i < ring_->nvars(); ++i) {
                if (!t.m[i]) continue;
                if (!fst) body += "*";
                fst = false;
                body += ring_->vars[i].name;
                if (t.m[i] > 1) body += "^" + std::to_string(static_cast<int>(t.m[i]));
            }
        }
        out += sign + body;
        first = false;
    }
    return out;
}

// ---- parsing: sums of terms, '*' products, '^' powers, exact coefficients ----
namespace detail {
struct PolyParser {
    const RingData& R;
    Ring ring;
    const std::string& s;
    size_t i = 0;
    PolyParser(Ring r, const std::string& str) : R(*r), ring(r), s(str) {}

    void skip() { while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i; }
    bool eat(char c) {
        skip();
        if (i < s.size() && s[i] == c) { ++i; return true; }
        return false;
    }
    std::string number() {
        skip();
        size_t j = i;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        require(j > i, "expected number at offset " + std::to_string(i) + " in '" + s + "'");
        std::string out = s.substr(i, j - i);
        i = j;
        if (i < s.size() && s[i] == '/') {
            ++i;
            size_t k = i;
            while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
            require(k > i, "expected denominator in '" + s + "'");
            out += "/" + s.substr(i, k - i);
            i = k;
        }
        return out;
    }
    std::string name() {
        skip();
        size_t j = i;
        require(j < s.size() && (std::isalpha(static_cast<unsigned char>(s[j])) || s[j] == '_'), "expected name in '" + s + "'");
        while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
        std::string out = s.substr(i, j - i);
        i = j;
        return out;
    }
    Polynomial term() {
        Scalar c = Scalar::of_int(R.field, 1);
        Monomial m = mono_one(R);
        bool any = false;
        skip();
        if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            c = Scalar::parse_in(R.field, number());
            any = true;
            if (!eat('*')) return Polynomial::monomial(ring, m, c);
        }
        for (;;) {
            std::string v = name();
            int idx = R.var_index(v);
            int pw = 1;
            if (eat('^')) pw = static_cast<int>(std::stol(number()));
            require(pw >= 0 && m[idx] + pw <= 255, "exponent overflow");
            m[idx] = static_cast<uint8_t>(m[idx] + pw);
            any = true;
            if (!eat('*')) break;
        }
        require(any, "empty term in '" + s + "'");
        return Polynomial::monomial(ring, m, c);
    }
    Polynomial parse() {
        Polynomial acc(ring);
        skip();
        bool neg = false;
        if (eat('-')) neg = true;
        else eat('+');
        for (;;) {
            Polynomial t = term();
            acc += neg ? -t : t;
            skip();
            if (i >= s.size()) break;
            if (eat('-')) neg = true;
            else if (eat('+')) neg = false;
            else throw error("unexpected character at offset " + std::to_string(i) + " in '" + s + "'");
        }
        return acc;
    }
};
}  // namespace detail

inline Polynomial parse_poly(Ring r, const std::string& s) {
    detail::PolyParser p(std::move(r), s);
    return p.parse();
}

// Ring homomorphism given by one image polynomial per source variable.
struct RingMap {
    Ring source;
    Ring target;
    std::vector<Polynomial> images;

    RingMap(Ring s, Ring t, std::vector<Polynomial> imgs)
        : source(std::move(s)), target(std::move(t)), images(std::move(imgs)) {
        require(static_cast<int>(images.size()) == source->nvars(), "image list length mismatch");
        for (const auto& f : images) require(ring_equal(f.ring(), target), "image in wrong ring");
    }

    static RingMap identity(Ring r) {
        std::vector<Polynomial> imgs;
        for (int i = 0; i < r->nvars(); ++i) imgs.push_back(Polynomial::var(r, i));
        return RingMap(r, r, std::move(imgs));
    }

    Polynomial apply(const Polynomial& f) const {
        require(ring_equal(f.ring(), source), "ring mismatch in apply_ring_map");
        Polynomial acc(target);
        for (const auto& t : f.terms()) {
            Polynomial prod = Polynomial::constant(target, t.c);
            for (int i = 0; i < source->nvars(); ++i)
                for (int e = 0; e < t.m[i]; ++e) prod = prod * images[i];
            acc += prod;
        }
        return acc;
    }

    // this o other
    RingMap compose(const RingMap& other) const {
        require(ring_equal(other.target, source), "non-composable ring maps");
        std::vector<Polynomial> imgs;
        imgs.reserve(other.images.size());
        for (const auto& f : other.images) imgs.push_back(apply(f));
        return RingMap(other.source, target, std::move(imgs));
    }

    bool is_identity() const {
        if (!ring_equal(source, target)) return false;
        for (int i = 0; i < source->nvars(); ++i)
            if (images[i] != Polynomial::var(target, i)) return false;
        return true;
    }
};

inline Polynomial apply_ring_map(const RingMap& phi, const Polynomial& f) { return phi.apply(f); }

}  // namespace g1m

#endif

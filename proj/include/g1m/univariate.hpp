#ifndef G1M_UNIVARIATE_HPP
#define G1M_UNIVARIATE_HPP

#include <map>
#include <vector>

#include "g1m/scalar.hpp"

namespace g1m {

// Dense univariate polynomial, coefficients ascending.
struct UniPoly {
    Field field;
    std::vector<Scalar> coeffs;

    explicit UniPoly(const Field& f) : field(f) {}
    static UniPoly constant(const Field& f, const Scalar& c) {
        UniPoly p(f);
        if (!c.is_zero()) p.coeffs = {c};
        return p;
    }
    static UniPoly linear(const Field& f, const Scalar& c0, const Scalar& c1) {
        UniPoly p(f);
        p.coeffs = {c0, c1};
        p.trim();
        return p;
    }
    void trim() {
        while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
    }
    bool is_zero() const { return coeffs.empty(); }
    Scalar at0() const { return coeffs.empty() ? Scalar::of_int(field, 0) : coeffs[0]; }
    Scalar deriv0() const { return coeffs.size() < 2 ? Scalar::of_int(field, 0) : coeffs[1]; }

    UniPoly operator+(const UniPoly& o) const {
        UniPoly out(field);
        out.coeffs.resize(std::max(coeffs.size(), o.coeffs.size()), Scalar::of_int(field, 0));
        for (size_t i = 0; i < coeffs.size(); ++i) out.coeffs[i] += coeffs[i];
        for (size_t i = 0; i < o.coeffs.size(); ++i) out.coeffs[i] += o.coeffs[i];
        out.trim();
        return out;
    }
    UniPoly operator-() const {
        UniPoly out = *this;
        for (auto& c : out.coeffs) c = -c;
        return out;
    }
    UniPoly operator-(const UniPoly& o) const { return *this + (-o); }
    UniPoly operator*(const UniPoly& o) const {
        UniPoly out(field);
        if (is_zero() || o.is_zero()) return out;
        out.coeffs.assign(coeffs.size() + o.coeffs.size() - 1, Scalar::of_int(field, 0));
        for (size_t i = 0; i < coeffs.size(); ++i)
            for (size_t j = 0; j < o.coeffs.size(); ++j) out.coeffs[i + j] += coeffs[i] * o.coeffs[j];
        out.trim();
        return out;
    }
    UniPoly operator*(const Scalar& s) const {
        UniPoly out = *this;
        for (auto& c : out.coeffs) c *= s;
        out.trim();
        return out;
    }
};

// Laurent polynomial in one variable (negative exponents allowed).
struct LaurentPoly {
    Field field;
    std::map<int, Scalar> coeffs;  // exponent -> nonzero coefficient

    explicit LaurentPoly(const Field& f) : field(f) {}
    static LaurentPoly term(const Field& f, int exp, const Scalar& c) {
        LaurentPoly p(f);
        if (!c.is_zero()) p.coeffs[exp] = c;
        return p;
    }
    static LaurentPoly term_int(const Field& f, int exp, long c) { return term(f, exp, Scalar::of_int(f, c)); }
    bool is_zero() const { return coeffs.empty(); }

    LaurentPoly operator+(const LaurentPoly& o) const {
        LaurentPoly out = *this;
        for (const auto& [e, c] : o.coeffs) {
            auto [it, fresh] = out.coeffs.try_emplace(e, c);
            if (!fresh) {
                it->second += c;
                if (it->second.is_zero()) out.coeffs.erase(it);
            }
        }
        return out;
    }
    LaurentPoly operator-(const LaurentPoly& o) const {
        LaurentPoly neg = o;
        for (auto& [e, c] : neg.coeffs) c = -c;
        return *this + neg;
    }
    LaurentPoly operator*(const LaurentPoly& o) const {
        LaurentPoly out(field);
        for (const auto& [e1, c1] : coeffs)
            for (const auto& [e2, c2] : o.coeffs) {
                Scalar v = c1 * c2;
                auto [it, fresh] = out.coeffs.try_emplace(e1 + e2, v);
                if (!fresh) {
                    it->second += v;
                    if (it->second.is_zero()) out.coeffs.erase(it);
                }
            }
        return out;
    }
    LaurentPoly derivative() const {
        LaurentPoly out(field);
        for (const auto& [e, c] : coeffs) {
            Scalar v = c * Scalar::of_int(field, e);
            if (!v.is_zero()) out.coeffs[e - 1] = v;
        }
        return out;
    }
    // substitute t -> t^k (k >= 1)
    LaurentPoly stretch(int k) const {
        LaurentPoly out(field);
        for (const auto& [e, c] : coeffs) out.coeffs[e * k] = c;
        return out;
    }
    bool operator==(const LaurentPoly& o) const { return field == o.field && coeffs == o.coeffs; }
    std::string str() const {
        if (coeffs.empty()) return "0";
        std::string s;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
            if (!s.empty()) s += " + ";
            s += it->second.str() + "*t^" + std::to_string(it->first);
        }
        return s;
    }
};

}  // namespace g1m

#endif

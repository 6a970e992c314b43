#ifndef G1M_SCALAR_HPP
#define G1M_SCALAR_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "g1m/common.hpp"

namespace g1m {

// Coefficient field tag: the rationals, or a prime field F_p with p < 2^61 so
// residues fit a machine word. Mixed-field arithmetic is a hard error.
struct Field {
    enum class Kind { Q, Fp };
    Kind kind = Kind::Q;
    uint64_t p = 0;

    static Field rationals() { return Field{Kind::Q, 0}; }
    static Field prime(uint64_t p) {
        require(p >= 2 && p < (1ULL << 61), "prime field modulus out of range");
        require(is_prime_u64(p), "prime field modulus must be prime");
        return Field{Kind::Fp, p};
    }
    bool is_q() const { return kind == Kind::Q; }
    bool operator==(const Field& o) const { return kind == o.kind && p == o.p; }
    bool operator!=(const Field& o) const { return !(*this == o); }
    std::string str() const { return is_q() ? "Q" : "Fp:" + std::to_string(p); }
    static Field parse(const std::string& s) {
        if (s == "Q") return rationals();
        if (s.rfind("Fp:", 0) == 0) return prime(std::stoull(s.substr(3)));
        throw error("bad field tag: " + s);
    }
};

// Exact scalar: arbitrary-precision rational (always canonical: lowest terms,
// positive denominator) or a prime-field residue in [0, p).
class Scalar {
public:
    Scalar() : field_(Field::rationals()), q_(0) {}
    explicit Scalar(const Field& f) : field_(f), q_(0), r_(0) {}

    static Scalar of_int(const Field& f, long v) {
        Scalar s(f);
        if (f.is_q()) {
            s.q_ = v;
        } else {
            long m = v % static_cast<long>(f.p);
            if (m < 0) m += static_cast<long>(f.p);
            s.r_ = static_cast<uint64_t>(m);
        }
        return s;
    }
    static Scalar rational(long num, long den) {
        require(den != 0, "zero denominator");
        Scalar s(Field::rationals());
        s.q_ = mpq_class(num, den);
        s.q_.canonicalize();
        return s;
    }
    static Scalar rational(const mpq_class& q) {
        Scalar s(Field::rationals());
        s.q_ = q;
        s.q_.canonicalize();
        return s;
    }
    static Scalar residue(uint64_t r, uint64_t p) {
        Scalar s(Field::prime(p));
        s.r_ = r % p;
        return s;
    }

    const Field& field() const { return field_; }
    bool is_zero() const { return field_.is_q() ? q_ == 0 : r_ == 0; }
    bool is_one() const { return field_.is_q() ? q_ == 1 : r_ == 1 % field_.p; }
    const mpq_class& rat() const {
        require(field_.is_q(), "not a rational scalar");
        return q_;
    }
    uint64_t res() const {
        require(!field_.is_q(), "not a prime-field scalar");
        return r_;
    }

    Scalar operator+(const Scalar& o) const {
        match(o);
        Scalar s(field_);
        if (field_.is_q()) s.q_ = q_ + o.q_;
        else { s.r_ = r_ + o.r_; if (s.r_ >= field_.p) s.r_ -= field_.p; }
        return s;
    }
    Scalar operator-(const Scalar& o) const {
        match(o);
        Scalar s(field_);
        if (field_.is_q()) s.q_ = q_ - o.q_;
        else s.r_ = (r_ >= o.r_) ? r_ - o.r_ : r_ + field_.p - o.r_;
        return s;
    }
    Scalar operator*(const Scalar& o) const {
        match(o);
        Scalar s(field_);
        if (field_.is_q()) s.q_ = q_ * o.q_;
        else s.r_ = mulmod_u64(r_, o.r_, field_.p);
        return s;
    }
    Scalar operator/(const Scalar& o) const {
        match(o);
        require(!o.is_zero(), "division by zero");
        Scalar s(field_);
        if (field_.is_q()) s.q_ = q_ / o.q_;
        else s.r_ = mulmod_u64(r_, inv_mod(o.r_, field_.p), field_.p);
        return s;
    }
    Scalar operator-() const {
        Scalar s(field_);
        if (field_.is_q()) s.q_ = -q_;
        else s.r_ = r_ == 0 ? 0 : field_.p - r_;
        return s;
    }
    Scalar inv() const { return Scalar::of_int(field_, 1) / *this; }

    Scalar& operator+=(const Scalar& o) { *this = *this + o; return *this; }
    Scalar& operator-=(const Scalar& o) { *this = *this - o; return *this; }
    Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }

    bool operator==(const Scalar& o) const {
        if (field_ != o.field_) return false;
        return field_.is_q() ? q_ == o.q_ : r_ == o.r_;
    }
    bool operator!=(const Scalar& o) const { return !(*this == o); }
    // total order for canonical term maps; not a field order
    bool operator<(const Scalar& o) const {
        match(o);
        return field_.is_q() ? q_ < o.q_ : r_ < o.r_;
    }

    // "num/den" (den omitted when 1) or "r mod p"; locale-independent
    std::string str() const {
        if (field_.is_q()) {
            if (q_.get_den() == 1) return q_.get_num().get_str();
            return q_.get_num().get_str() + "/" + q_.get_den().get_str();
        }
        return std::to_string(r_) + " mod " + std::to_string(field_.p);
    }
    static Scalar parse(const std::string& s) {
        auto mp = s.find(" mod ");
        if (mp != std::string::npos) {
            uint64_t r = std::stoull(s.substr(0, mp));
            uint64_t p = std::stoull(s.substr(mp + 5));
            return residue(r, p);
        }
        Scalar out(Field::rationals());
        out.q_ = mpq_class(s);
        out.q_.canonicalize();
        return out;
    }
    // parse integer-or-fraction literal in the given field
    static Scalar parse_in(const Field& f, const std::string& s) {
        if (f.is_q()) {
            Scalar out(Field::rationals());
            out.q_ = mpq_class(s);
            out.q_.canonicalize();
            return out;
        }
        bool neg = !s.empty() && s[0] == '-';
        uint64_t v = std::stoull(neg ? s.substr(1) : s);
        Scalar out(f);
        out.r_ = v % f.p;
        if (neg) out = -out;
        return out;
    }

    // reduction Q -> F_p; error if a denominator vanishes mod p
    Scalar mod_p(uint64_t p) const {
        require(field_.is_q(), "mod_p expects a rational");
        mpz_class num = q_.get_num(), den = q_.get_den();
        mpz_class pz = mpz_class(static_cast<unsigned long>(p));
        mpz_class nr = num % pz, dr = den % pz;
        if (nr < 0) nr += pz;
        require(dr != 0, "bad prime: denominator vanishes");
        uint64_t n64 = mpz_get_ui(nr.get_mpz_t());
        uint64_t d64 = mpz_get_ui(mpz_class(dr).get_mpz_t());
        return residue(mulmod_u64(n64, inv_mod(d64, p), p), p);
    }

private:
    Field field_;
    mpq_class q_;
    uint64_t r_ = 0;

    void match(const Scalar& o) const {
        require(field_ == o.field_, "field mismatch: " + field_.str() + " vs " + o.field_.str());
    }
    static uint64_t inv_mod(uint64_t a, uint64_t p) {
        require(a % p != 0, "division by zero");
        int64_t t = 0, newt = 1;
        int64_t r = static_cast<int64_t>(p), newr = static_cast<int64_t>(a % p);
        while (newr != 0) {
            int64_t q = r / newr;
            t -= q * newt; std::swap(t, newt);
            r -= q * newr; std::swap(r, newr);
        }
        if (t < 0) t += static_cast<int64_t>(p);
        return static_cast<uint64_t>(t);
    }
};

inline Scalar random_scalar(const Field& f, Rng& rng, long lo = -20, long hi = 20) {
    if (f.is_q()) return Scalar::of_int(f, rng.int_in(lo, hi));
    return Scalar::residue(rng.below(f.p), f.p);
}

}  // namespace g1m

#endif

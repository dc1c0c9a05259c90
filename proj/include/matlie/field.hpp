#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>

#include "matlie/error.hpp"

namespace matlie {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

enum class FieldKind { Rationals, PrimeField };

/// Which exact field an algebra lives over. Fixed per algebra; every scalar
/// carries a copy so that arithmetic can check compatibility.
struct FieldDescriptor {
    FieldKind kind = FieldKind::Rationals;
    std::int64_t p = 0;  // prime modulus, meaningful iff kind == PrimeField

    static FieldDescriptor rationals() { return FieldDescriptor{FieldKind::Rationals, 0}; }

    static FieldDescriptor prime_field(std::int64_t p) {
        if (!is_prime(p)) raise(ErrorCode::NotPrime, "modulus " + std::to_string(p) + " is not prime");
        return FieldDescriptor{FieldKind::PrimeField, p};
    }

    std::int64_t characteristic() const { return kind == FieldKind::PrimeField ? p : 0; }

    bool operator==(const FieldDescriptor& o) const = default;

    std::string str() const {
        return kind == FieldKind::Rationals ? std::string("Q") : "GF(" + std::to_string(p) + ")";
    }

    static bool is_prime(std::int64_t n) {
        if (n < 2) return false;
        if (n % 2 == 0) return n == 2;
        for (std::int64_t d = 3; d * d <= n; d += 2)
            if (n % d == 0) return false;
        return true;
    }
};

inline void require_same_field(const FieldDescriptor& a, const FieldDescriptor& b) {
    if (!(a == b)) raise(ErrorCode::FieldMismatch, a.str() + " vs " + b.str());
}

/// Exact field element: a reduced fraction over Q, or a residue in [0, p).
/// All comparisons are structural; there are no tolerances anywhere.
class Scalar {
public:
    Scalar() = default;  // zero of Q
    explicit Scalar(FieldDescriptor f) : f_(f) {}

    static Scalar zero(FieldDescriptor f) { return Scalar(f); }

    static Scalar one(FieldDescriptor f) {
        Scalar s(f);
        if (f.kind == FieldKind::Rationals)
            s.q_ = 1;
        else
            s.r_ = (f.p == 1) ? 0 : 1;
        return s;
    }

    static Scalar from_int(FieldDescriptor f, std::int64_t v) {
        Scalar s(f);
        if (f.kind == FieldKind::Rationals)
            s.q_ = v;
        else
            s.r_ = mod(v, f.p);
        return s;
    }

    /// Interprets num/den in the target field (den inverted mod p for GF(p)).
    static Scalar from_fraction(FieldDescriptor f, const Integer& num, const Integer& den) {
        if (den == 0) raise(ErrorCode::DivisionByZero, "zero denominator");
        Scalar s(f);
        if (f.kind == FieldKind::Rationals) {
            s.q_ = Rational(num, den);
        } else {
            std::int64_t n = static_cast<std::int64_t>(num % f.p);
            std::int64_t d = static_cast<std::int64_t>(den % f.p);
            if (mod(d, f.p) == 0) raise(ErrorCode::DivisionByZero, "denominator divisible by p");
            s.r_ = mod_mul(mod(n, f.p), inv_mod(mod(d, f.p), f.p), f.p);
        }
        return s;
    }

    static Scalar from_rational(FieldDescriptor f, const Rational& q) {
        return from_fraction(f, numerator(q), denominator(q));
    }

    const FieldDescriptor& field() const { return f_; }
    bool is_zero() const { return f_.kind == FieldKind::Rationals ? q_.is_zero() : r_ == 0; }
    bool is_one() const { return *this == one(f_); }

    const Rational& rational() const { return q_; }
    std::int64_t residue() const { return r_; }

    Scalar operator-() const {
        Scalar s(f_);
        if (f_.kind == FieldKind::Rationals)
            s.q_ = -q_;
        else
            s.r_ = r_ == 0 ? 0 : f_.p - r_;
        return s;
    }

    Scalar& operator+=(const Scalar& o) {
        check(o);
        if (f_.kind == FieldKind::Rationals)
            q_ += o.q_;
        else
            r_ = mod(r_ + o.r_, f_.p);
        return *this;
    }

    Scalar& operator-=(const Scalar& o) {
        check(o);
        if (f_.kind == FieldKind::Rationals)
            q_ -= o.q_;
        else
            r_ = mod(r_ - o.r_, f_.p);
        return *this;
    }

    Scalar& operator*=(const Scalar& o) {
        check(o);
        if (f_.kind == FieldKind::Rationals)
            q_ *= o.q_;
        else
            r_ = mod_mul(r_, o.r_, f_.p);
        return *this;
    }

    Scalar& operator/=(const Scalar& o) {
        check(o);
        if (o.is_zero()) raise(ErrorCode::DivisionByZero, "division by zero scalar");
        if (f_.kind == FieldKind::Rationals)
            q_ /= o.q_;
        else
            r_ = mod_mul(r_, inv_mod(o.r_, f_.p), f_.p);
        return *this;
    }

    Scalar inverse() const {
        Scalar s = one(f_);
        s /= *this;
        return s;
    }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    bool operator==(const Scalar& o) const {
        return f_ == o.f_ && (f_.kind == FieldKind::Rationals ? q_ == o.q_ : r_ == o.r_);
    }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    /// Canonical text form: "a" or "a/b" with b > 0 and gcd(a,b)=1; residues
    /// print as their representative in [0, p).
    std::string str() const {
        if (f_.kind == FieldKind::PrimeField) return std::to_string(r_);
        if (denominator(q_) == 1) return numerator(q_).str();
        return numerator(q_).str() + "/" + denominator(q_).str();
    }

private:
    void check(const Scalar& o) const { require_same_field(f_, o.f_); }

    static std::int64_t mod(std::int64_t v, std::int64_t p) {
        std::int64_t r = v % p;
        return r < 0 ? r + p : r;
    }

    static std::int64_t mod_mul(std::int64_t a, std::int64_t b, std::int64_t p) {
        return static_cast<std::int64_t>((__int128)a * b % p);
    }

    static std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
        // extended Euclid; a in [1, p)
        std::int64_t t = 0, new_t = 1, r = p, new_r = a;
        while (new_r != 0) {
            std::int64_t q = r / new_r;
            std::int64_t tmp = t - q * new_t;
            t = new_t;
            new_t = tmp;
            tmp = r - q * new_r;
            r = new_r;
            new_r = tmp;
        }
        if (r != 1) raise(ErrorCode::DivisionByZero, "residue not invertible");
        return mod(t, p);
    }

    FieldDescriptor f_ = FieldDescriptor::rationals();
    Rational q_ = 0;        // Rationals payload
    std::int64_t r_ = 0;    // PrimeField payload, in [0, p)
};

}  // namespace matlie

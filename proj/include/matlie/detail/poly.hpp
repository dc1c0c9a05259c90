#pragma once

// Dense univariate polynomials over an exact field, coefficients lowest
// degree first. Only what the structure algorithms need: arithmetic,
// extended gcd, evaluation at algebra elements, and rational-root
// extraction restricted to roots in the base field.

#include <algorithm>
#include <utility>
#include <vector>

#include "matlie/algebra.hpp"

namespace matlie::detail {

using Poly = std::vector<Scalar>;

inline void poly_trim(Poly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

inline int poly_deg(const Poly& p) { return static_cast<int>(p.size()) - 1; }

inline Poly poly_zero() { return {}; }

inline Poly poly_const(const Scalar& c) {
    Poly p{c};
    poly_trim(p);
    return p;
}

inline Poly poly_add(const Poly& a, const Poly& b) {
    Poly out = a.size() >= b.size() ? a : b;
    const Poly& small = a.size() >= b.size() ? b : a;
    for (std::size_t i = 0; i < small.size(); ++i) out[i] += small[i];
    poly_trim(out);
    return out;
}

inline Poly poly_scale(Poly a, const Scalar& c) {
    for (Scalar& x : a) x *= c;
    poly_trim(a);
    return a;
}

inline Poly poly_sub(const Poly& a, const Poly& b) {
    if (b.empty()) return a;
    return poly_add(a, poly_scale(b, -Scalar::one(b.back().field())));
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    FieldDescriptor f = a.back().field();
    Poly out(a.size() + b.size() - 1, Scalar::zero(f));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (!b[j].is_zero()) out[i + j] += a[i] * b[j];
    }
    poly_trim(out);
    return out;
}

inline std::pair<Poly, Poly> poly_divmod(Poly num, const Poly& den) {
    if (den.empty()) raise(ErrorCode::DivisionByZero, "polynomial division by zero");
    FieldDescriptor f = den.back().field();
    Scalar lead_inv = den.back().inverse();
    if (num.size() < den.size()) return {poly_zero(), std::move(num)};
    Poly quot(num.size() - den.size() + 1, Scalar::zero(f));
    for (int k = static_cast<int>(quot.size()) - 1; k >= 0; --k) {
        Scalar c = num[k + den.size() - 1] * lead_inv;
        if (c.is_zero()) continue;
        quot[k] = c;
        for (std::size_t j = 0; j < den.size(); ++j) num[k + j] -= c * den[j];
    }
    poly_trim(num);
    poly_trim(quot);
    return {std::move(quot), std::move(num)};
}

inline Poly poly_monic(Poly p) {
    poly_trim(p);
    if (p.empty()) return p;
    return poly_scale(std::move(p), p.back().inverse());
}

/// Monic gcd plus Bezout coefficients: u a + v b = g.
struct ExtGcd {
    Poly g, u, v;
};

inline ExtGcd poly_ext_gcd(Poly a, Poly b) {
    if (a.empty() && b.empty()) raise(ErrorCode::InvalidArgument, "gcd of zero polynomials");
    FieldDescriptor f = a.empty() ? b.back().field() : a.back().field();
    Poly r0 = std::move(a), r1 = std::move(b);
    Poly s0 = poly_const(Scalar::one(f)), s1 = poly_zero();
    Poly t0 = poly_zero(), t1 = poly_const(Scalar::one(f));
    while (!r1.empty()) {
        auto [q, r] = poly_divmod(r0, r1);
        Poly s = poly_sub(s0, poly_mul(q, s1));
        Poly t = poly_sub(t0, poly_mul(q, t1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
        t0 = std::move(t1);
        t1 = std::move(t);
    }
    if (r0.empty()) return {r0, s0, t0};
    Scalar inv = r0.back().inverse();
    return {poly_scale(r0, inv), poly_scale(s0, inv), poly_scale(t0, inv)};
}

inline Scalar poly_eval(const Poly& p, const Scalar& x) {
    Scalar acc = Scalar::zero(x.field());
    for (int i = poly_deg(p); i >= 0; --i) acc = acc * x + p[i];
    return acc;
}

/// Horner evaluation at an algebra element. The unit is needed only when the
/// constant term is nonzero; passing nullptr with a nonzero constant throws.
inline std::vector<Scalar> poly_eval_element(const Poly& p, const StructureAlgebra& a,
                                             const std::vector<Scalar>& x,
                                             const std::vector<Scalar>* unit) {
    FieldDescriptor f = a.field();
    std::vector<Scalar> acc(a.dim(), Scalar::zero(f));
    if (p.empty()) return acc;
    for (int i = poly_deg(p); i >= 1; --i) {
        acc = multiply_coords(a, acc, x);
        if (!p[i].is_zero())
            for (int k = 0; k < a.dim(); ++k) acc[k] += p[i] * x[k];
    }
    // acc == p(x) - p[0]*1 at this point; only the constant term needs the unit.
    if (!p[0].is_zero()) {
        if (unit == nullptr)
            raise(ErrorCode::InternalInconsistency, "constant term needs a unit element");
        for (int k = 0; k < a.dim(); ++k) acc[k] += p[0] * (*unit)[k];
    }
    return acc;
}

/// Roots of p lying in the base field, with multiplicities; `rest` is the
/// rootless cofactor. Over Q the search uses the rational root bound with a
/// capped divisor enumeration, so it can miss roots with huge numerators;
/// callers treat a miss as a NotSplit signal, never as a wrong answer.
struct FieldRoots {
    std::vector<std::pair<Scalar, int>> roots;
    Poly rest;
};

inline std::vector<Integer> bounded_divisors(Integer n, std::size_t cap) {
    if (n < 0) n = -n;
    std::vector<Integer> primes;
    std::vector<int> mult;
    Integer d = 2;
    while (d * d <= n && d < 1000000) {
        if (n % d == 0) {
            primes.push_back(d);
            mult.push_back(0);
            while (n % d == 0) {
                n /= d;
                ++mult.back();
            }
        }
        ++d;
    }
    if (n > 1) {
        primes.push_back(n);
        mult.push_back(1);
    }
    std::vector<Integer> divs{1};
    for (std::size_t i = 0; i < primes.size(); ++i) {
        std::vector<Integer> next;
        Integer pw = 1;
        for (int e = 0; e <= mult[i]; ++e) {
            for (const Integer& v : divs) {
                next.push_back(v * pw);
                if (next.size() > cap) return next;
            }
            pw *= primes[i];
        }
        divs = std::move(next);
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

inline FieldRoots field_roots(Poly p) {
    poly_trim(p);
    FieldRoots out;
    if (p.empty() || poly_deg(p) == 0) {
        out.rest = std::move(p);
        return out;
    }
    FieldDescriptor f = p.back().field();
    auto extract = [&](const Scalar& r) {
        Poly lin{-r, Scalar::one(f)};
        int mult = 0;
        while (true) {
            auto [q, rem] = poly_divmod(p, lin);
            if (!rem.empty()) break;
            p = std::move(q);
            ++mult;
        }
        if (mult > 0) out.roots.emplace_back(r, mult);
    };

    if (f.kind == FieldKind::PrimeField) {
        for (std::int64_t v = 0; v < f.p && poly_deg(p) >= 1; ++v) extract(Scalar::from_int(f, v));
        out.rest = std::move(p);
        return out;
    }

    extract(Scalar::zero(f));
    if (poly_deg(p) >= 1) {
        Integer denlcm = 1;
        for (const Scalar& c : p) denlcm = lcm(denlcm, denominator(c.rational()));
        std::vector<Integer> ic;
        for (const Scalar& c : p)
            ic.push_back(numerator(c.rational()) * (denlcm / denominator(c.rational())));
        const std::size_t kCap = 4096;
        auto nums = bounded_divisors(ic.front(), kCap);
        auto dens = bounded_divisors(ic.back(), kCap);
        for (const Integer& nu : nums) {
            for (const Integer& de : dens) {
                if (poly_deg(p) < 1) break;
                for (int sign : {1, -1}) {
                    Scalar r = Scalar::from_fraction(f, sign * nu, de);
                    if (poly_eval(p, r).is_zero()) extract(r);
                }
            }
        }
    }
    out.rest = std::move(p);
    return out;
}

}  // namespace matlie::detail

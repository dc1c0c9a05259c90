#pragma once

// Hand-built reference algebras for tests. These are written from first
// principles (explicit matrix-unit products, polynomial multiplication)
// so they stay independent of the generator and the library pipelines.

#include <map>
#include <random>
#include <string>
#include <vector>

#include "matlie/algebra.hpp"

namespace testsupport {

using namespace matlie;

// Full matrix algebra M_n; basis e_st in row-major order, e_st e_uv = [t==u] e_sv.
inline StructureAlgebra matrix_algebra(FieldDescriptor f, int n) {
    StructureAlgebra a(f, n * n);
    auto id = [n](int s, int t) { return s * n + t; };
    for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t)
            for (int u = 0; u < n; ++u)
                for (int v = 0; v < n; ++v)
                    if (t == u) a.set_sc(id(s, t), id(u, v), id(s, v), Scalar::one(f));
    a.finalize();
    return a;
}

// Upper-triangular n x n matrices; basis e_st for s <= t.
inline StructureAlgebra triangular_algebra(FieldDescriptor f, int n) {
    std::vector<std::pair<int, int>> basis;
    for (int s = 0; s < n; ++s)
        for (int t = s; t < n; ++t) basis.emplace_back(s, t);
    std::map<std::pair<int, int>, int> index;
    for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = static_cast<int>(i);
    StructureAlgebra a(f, static_cast<int>(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j) {
            auto [s, t] = basis[i];
            auto [u, v] = basis[j];
            if (t == u) a.set_sc(static_cast<int>(i), static_cast<int>(j), index[{s, v}], Scalar::one(f));
        }
    a.finalize();
    return a;
}

// F[t]/(t^m), basis {1, t, ..., t^(m-1)}; truncated polynomial product.
inline StructureAlgebra truncated_poly_algebra(FieldDescriptor f, int m) {
    StructureAlgebra a(f, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (i + j < m) a.set_sc(i, j, i + j, Scalar::one(f));
    a.set_unit_index(0);
    a.finalize();
    return a;
}

// M_n tensor F[t]/(t^m); basis e_st (x) t^q, index ((s*n+t)*m + q).
inline StructureAlgebra matrix_over_local(FieldDescriptor f, int n, int m) {
    StructureAlgebra a(f, n * n * m);
    auto id = [n, m](int s, int t, int q) { return (s * n + t) * m + q; };
    for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t)
            for (int v = 0; v < n; ++v)
                for (int q = 0; q < m; ++q)
                    for (int r = 0; r < m; ++r)
                        if (q + r < m)
                            a.set_sc(id(s, t, q), id(t, v, r), id(s, v, q + r), Scalar::one(f));
    a.finalize();
    return a;
}

// Direct sum of two algebras, components multiplying to zero across.
inline StructureAlgebra direct_sum(const StructureAlgebra& a, const StructureAlgebra& b) {
    require_same_field(a.field(), b.field());
    StructureAlgebra s(a.field(), a.dim() + b.dim());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            for (int k = 0; k < a.dim(); ++k)
                if (!a.sc(i, j, k).is_zero()) s.set_sc(i, j, k, a.sc(i, j, k));
    for (int i = 0; i < b.dim(); ++i)
        for (int j = 0; j < b.dim(); ++j)
            for (int k = 0; k < b.dim(); ++k)
                if (!b.sc(i, j, k).is_zero())
                    s.set_sc(a.dim() + i, a.dim() + j, a.dim() + k, b.sc(i, j, k));
    s.finalize();
    return s;
}

inline Scalar random_scalar(FieldDescriptor f, std::mt19937_64& rng) {
    if (f.kind == FieldKind::PrimeField) {
        std::uniform_int_distribution<std::int64_t> d(0, f.p - 1);
        return Scalar::from_int(f, d(rng));
    }
    std::uniform_int_distribution<int> num(-6, 6);
    std::uniform_int_distribution<int> den(1, 4);
    return Scalar::from_fraction(f, num(rng), den(rng));
}

inline std::vector<Scalar> random_vector(FieldDescriptor f, int n, std::mt19937_64& rng) {
    std::vector<Scalar> v;
    v.reserve(n);
    for (int i = 0; i < n; ++i) v.push_back(random_scalar(f, rng));
    return v;
}

}  // namespace testsupport

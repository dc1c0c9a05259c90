#pragma once

// Radical, split block discovery with explicit matrix units, Levi lifting,
// k-perfectness, and corner subalgebras.
//
// Block discovery is deliberately incomplete over Q: idempotents are found
// by sweeping a deterministic sequence of candidate elements and factoring
// minimal polynomials by their rational roots only. Instances emitted by the
// generator keep enough of the matrix-unit basis visible for the sweep to
// succeed; anything else is refused as NotSplit rather than guessed at.

#include <algorithm>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "matlie/algebra.hpp"
#include "matlie/detail/poly.hpp"

namespace matlie {

inline std::vector<Scalar> unitv(FieldDescriptor f, int n, int i) {
    std::vector<Scalar> v(n, Scalar::zero(f));
    v[i] = Scalar::one(f);
    return v;
}

struct RadicalResult {
    Subspace radical;
    int nilpotency_index = 1;  // smallest t with radical^t = 0
};

struct BlockUnits {
    int n = 0;
    // row-major grid; units[s*n + t] holds the coordinates of e_st
    std::vector<std::vector<Scalar>> units;

    const std::vector<Scalar>& unit(int s, int t) const { return units[s * n + t]; }
};

struct WedderburnData {
    std::vector<BlockUnits> blocks;
    std::vector<std::vector<Scalar>> central_idempotents;  // 1_{S_i}, one per block
    bool exact = false;  // unit relations exact in A (vs only modulo the radical)

    std::vector<int> block_sizes() const {
        std::vector<int> out;
        for (const auto& b : blocks) out.push_back(b.n);
        return out;
    }

    int min_block_size() const {
        int m = 0;
        for (const auto& b : blocks) m = (m == 0) ? b.n : std::min(m, b.n);
        return m;
    }
};

struct LeviSubalgebra {
    Subspace levi;
    WedderburnData units;  // exact matrix units spanning the complement
};

// ---------------------------------------------------------------------------
// quotient by an ideal, with a coordinate section

struct QuotientAlgebra {
    StructureAlgebra alg;
    Subspace modulus;
    std::vector<int> section_cols;  // ambient coordinates carrying the quotient

    std::vector<Scalar> project(const std::vector<Scalar>& v) const {
        std::vector<Scalar> res = modulus.reduce(v);
        std::vector<Scalar> out;
        out.reserve(section_cols.size());
        for (int c : section_cols) out.push_back(res[c]);
        return out;
    }

    std::vector<Scalar> section(const std::vector<Scalar>& w) const {
        std::vector<Scalar> out(modulus.ambient_dim(), Scalar::zero(alg.field()));
        for (std::size_t i = 0; i < section_cols.size(); ++i) out[section_cols[i]] = w[i];
        return out;
    }
};

inline QuotientAlgebra quotient_algebra(const StructureAlgebra& a, const Subspace& ideal) {
    QuotientAlgebra q;
    q.modulus = ideal;
    std::vector<bool> is_pivot(a.dim(), false);
    for (int c : ideal.pivots()) is_pivot[c] = true;
    for (int c = 0; c < a.dim(); ++c)
        if (!is_pivot[c]) q.section_cols.push_back(c);
    const int qd = static_cast<int>(q.section_cols.size());
    q.alg = StructureAlgebra(a.field(), qd);
    for (int i = 0; i < qd; ++i)
        for (int j = 0; j < qd; ++j) {
            std::vector<Scalar> prod = multiply_coords(a, q.section(unitv(a.field(), qd, i)),
                                                       q.section(unitv(a.field(), qd, j)));
            std::vector<Scalar> w = q.project(prod);
            for (int k = 0; k < qd; ++k)
                if (!w[k].is_zero()) q.alg.set_sc(i, j, k, w[k]);
        }
    q.alg.finalize();
    return q;
}

inline std::vector<Scalar> unitv(FieldDescriptor f, int n, int i) {
    std::vector<Scalar> v(n, Scalar::zero(f));
    v[i] = Scalar::one(f);
    return v;
}

// ---------------------------------------------------------------------------
// minimal polynomials and idempotent discovery

/// Monic minimal polynomial of x. Without a unit the relation is sought among
/// the powers x, x^2, ..., so the result is always divisible by t.
inline detail::Poly minimal_polynomial(const StructureAlgebra& a, const std::vector<Scalar>& x,
                                       const std::vector<Scalar>* unit) {
    FieldDescriptor f = a.field();
    const int d0 = unit ? 0 : 1;
    std::vector<std::vector<Scalar>> powers;
    SpanBuilder sb(f, a.dim());
    std::vector<Scalar> cur = unit ? *unit : x;
    while (true) {
        if (!sb.insert(cur)) {
            MatrixExact m(f, a.dim(), static_cast<int>(powers.size()));
            for (std::size_t c = 0; c < powers.size(); ++c)
                for (int r = 0; r < a.dim(); ++r) m.at(r, static_cast<int>(c)) = powers[c][r];
            auto coeffs = solve_linear(m, cur);
            if (!coeffs)
                raise(ErrorCode::InternalInconsistency, "dependent power without a relation");
            detail::Poly mu(d0 + powers.size() + 1, Scalar::zero(f));
            mu.back() = Scalar::one(f);
            for (std::size_t m2 = 0; m2 < powers.size(); ++m2) mu[d0 + m2] = -(*coeffs)[m2];
            return mu;
        }
        powers.push_back(cur);
        if (static_cast<int>(powers.size()) > a.dim() + 1)
            raise(ErrorCode::InternalInconsistency, "power chain failed to close");
        cur = multiply_coords(a, cur, x);
    }
}

/// Deterministic candidate elements inside a subspace: basis rows, pairwise
/// sums, then seeded small-coefficient combinations. Bounded.
class ElementSweep {
public:
    explicit ElementSweep(const Subspace& w, std::uint64_t salt = 0)
        : w_(w), rng_(0x6d61746c6965ULL ^ salt) {}

    std::optional<std::vector<Scalar>> next() {
        const int k = w_.dim();
        const FieldDescriptor f = w_.field();
        while (true) {
            ++step_;
            if (step_ <= k) return w_.basis().row(step_ - 1);
            int pair_budget = std::min(k * (k - 1) / 2, 64);
            if (step_ <= k + pair_budget) {
                int idx = step_ - k - 1;
                for (int i = 0; i < k; ++i)
                    for (int j = i + 1; j < k; ++j)
                        if (idx-- == 0) {
                            std::vector<Scalar> v = w_.basis().row(i);
                            const auto rj = w_.basis().row(j);
                            for (int c = 0; c < w_.ambient_dim(); ++c) v[c] += rj[c];
                            return v;
                        }
            }
            if (step_ > k + pair_budget + 96) return std::nullopt;
            std::vector<Scalar> v(w_.ambient_dim(), Scalar::zero(f));
            bool nonzero = false;
            for (int i = 0; i < k; ++i) {
                std::int64_t c = static_cast<std::int64_t>(rng_() % 5);
                if (c == 0) continue;
                Scalar s = Scalar::from_int(f, c);
                if (s.is_zero()) continue;
                nonzero = true;
                const auto ri = w_.basis().row(i);
                for (int col = 0; col < w_.ambient_dim(); ++col) v[col] += s * ri[col];
            }
            if (nonzero) return v;
        }
    }

private:
    const Subspace& w_;
    std::mt19937_64 rng_;
    int step_ = 0;
};

namespace detail {

inline std::vector<Scalar> corner_span_row(const StructureAlgebra& a, const std::vector<Scalar>& e,
                                           const std::vector<Scalar>& w,
                                           const std::vector<Scalar>& g) {
    return multiply_coords(a, multiply_coords(a, e, w), g);
}

inline Subspace left_corner(const StructureAlgebra& a, const std::vector<Scalar>& e,
                            const Subspace& w) {
    SpanBuilder sb(a.field(), a.dim());
    for (int i = 0; i < w.dim(); ++i) sb.insert(multiply_coords(a, e, w.basis().row(i)));
    return sb.finalize();
}

inline Subspace two_sided_corner(const StructureAlgebra& a, const std::vector<Scalar>& e,
                                 const std::vector<Scalar>& g, const Subspace& w) {
    SpanBuilder sb(a.field(), a.dim());
    for (int i = 0; i < w.dim(); ++i) sb.insert(corner_span_row(a, e, w.basis().row(i), g));
    return sb.finalize();
}

/// Idempotent projecting onto the primary component of root r inside the
/// subalgebra generated by x; poly arithmetic mod the minimal polynomial.
inline std::optional<std::vector<Scalar>> primary_projector(const StructureAlgebra& a,
                                                            const std::vector<Scalar>& x,
                                                            const std::vector<Scalar>* unit,
                                                            const Poly& mu, const Scalar& root,
                                                            int mult) {
    FieldDescriptor f = a.field();
    Poly lin{-root, Scalar::one(f)};
    Poly fpart = poly_const(Scalar::one(f));
    for (int i = 0; i < mult; ++i) fpart = poly_mul(fpart, lin);
    auto [h, rem] = poly_divmod(mu, fpart);
    if (!rem.empty()) raise(ErrorCode::InternalInconsistency, "primary factor does not divide");
    if (poly_deg(h) == 0) return std::nullopt;  // whole spectrum is this root
    ExtGcd bez = poly_ext_gcd(fpart, h);
    if (poly_deg(bez.g) != 0) raise(ErrorCode::InternalInconsistency, "primary factors not coprime");
    // p = v*h satisfies p = 1 mod fpart, p = 0 mod h; reduce mod mu.
    Poly p = poly_divmod(poly_mul(bez.v, h), mu).second;
    if (!p.empty() && !p[0].is_zero() && unit == nullptr) return std::nullopt;
    return poly_eval_element(p, a, x, unit);
}

}  // namespace detail

/// Primitive idempotents of a commutative split algebra (no unit required up
/// front; units of the pieces appear as the splitting proceeds).
inline std::vector<std::vector<Scalar>> split_commutative_etale(const StructureAlgebra& a,
                                                                const Subspace& z) {
    using detail::Poly;
    std::vector<std::vector<Scalar>> prims;
    struct Piece {
        Subspace w;
        std::optional<std::vector<Scalar>> unit;
    };
    std::vector<Piece> work{{z, std::nullopt}};
    int guard = 0;
    while (!work.empty()) {
        if (++guard > 4 * z.dim() + 8)
            raise(ErrorCode::NotSplit, "central splitting failed to make progress");
        Piece piece = std::move(work.back());
        work.pop_back();
        if (piece.w.dim() == 0) continue;
        if (piece.w.dim() == 1) {
            std::vector<Scalar> x = piece.w.basis().row(0);
            std::vector<Scalar> x2 = multiply_coords(a, x, x);
            auto c = piece.w.coordinates_of(x2);
            if (!c || (*c)[0].is_zero())
                raise(ErrorCode::NotSplit, "one-dimensional central piece is nilpotent");
            Scalar inv = (*c)[0].inverse();
            for (Scalar& v : x) v *= inv;
            prims.push_back(std::move(x));
            continue;
        }
        ElementSweep sweep(piece.w, 0x5a);
        bool advanced = false;
        while (auto zel = sweep.next()) {
            Poly mu = minimal_polynomial(a, *zel, piece.unit ? &*piece.unit : nullptr);
            auto roots = detail::field_roots(mu);
            std::vector<std::vector<Scalar>> found;
            for (const auto& [r, mult] : roots.roots) {
                if (!piece.unit && r.is_zero()) continue;  // needs the unit to evaluate
                auto e = detail::primary_projector(a, *zel, piece.unit ? &*piece.unit : nullptr,
                                                   mu, r, mult);
                if (!e) continue;
                bool zero = true;
                for (const Scalar& c : *e) zero &= c.is_zero();
                if (!zero) found.push_back(std::move(*e));
            }
            if (found.empty()) continue;
            // Split off each projector's piece, then the leftover.
            std::vector<Scalar> total(a.dim(), Scalar::zero(a.field()));
            for (const auto& e : found) {
                for (int k = 0; k < a.dim(); ++k) total[k] += e[k];
                work.push_back({detail::left_corner(a, e, piece.w), e});
            }
            if (piece.unit) {
                std::vector<Scalar> rem = *piece.unit;
                for (int k = 0; k < a.dim(); ++k) rem[k] -= total[k];
                bool zero = true;
                for (const Scalar& c : rem) zero &= c.is_zero();
                if (!zero) work.push_back({detail::left_corner(a, rem, piece.w), rem});
            } else {
                // annihilator of the found idempotents inside the piece
                MatrixExact m(a.field(), a.dim(), piece.w.dim());
                for (int j = 0; j < piece.w.dim(); ++j) {
                    std::vector<Scalar> col = multiply_coords(a, total, piece.w.basis().row(j));
                    for (int i = 0; i < a.dim(); ++i) m.at(i, j) = col[i];
                }
                Subspace ker = kernel_basis(m);
                SpanBuilder ann(a.field(), a.dim());
                for (int t = 0; t < ker.dim(); ++t) {
                    std::vector<Scalar> v(a.dim(), Scalar::zero(a.field()));
                    for (int j = 0; j < piece.w.dim(); ++j) {
                        const Scalar& c = ker.basis().at(t, j);
                        if (c.is_zero()) continue;
                        const auto row = piece.w.basis().row(j);
                        for (int k = 0; k < a.dim(); ++k) v[k] += c * row[k];
                    }
                    ann.insert(std::move(v));
                }
                Subspace rest = ann.finalize();
                if (rest.dim() == piece.w.dim())
                    raise(ErrorCode::InternalInconsistency, "projector did not shrink the piece");
                if (rest.dim() > 0) work.push_back({rest, std::nullopt});
            }
            advanced = true;
            break;
        }
        if (!advanced) raise(ErrorCode::NotSplit, "no splitting element found in central piece");
    }
    return prims;
}

/// Orthogonal primitive idempotents summing to `unit` inside the corner
/// subalgebra w = unit * A * unit.
inline std::vector<std::vector<Scalar>> split_primitive_idempotents(const StructureAlgebra& a,
                                                                    const Subspace& w,
                                                                    const std::vector<Scalar>& unit) {
    using detail::Poly;
    std::vector<std::vector<Scalar>> prims;
    struct Piece {
        Subspace w;
        std::vector<Scalar> unit;
    };
    std::vector<Piece> work{{w, unit}};
    int guard = 0;
    while (!work.empty()) {
        if (++guard > 4 * w.dim() + 8)
            raise(ErrorCode::NotSplit, "idempotent peeling failed to make progress");
        Piece piece = std::move(work.back());
        work.pop_back();
        if (piece.w.dim() == 0) raise(ErrorCode::InternalInconsistency, "empty corner with a unit");
        if (piece.w.dim() == 1) {
            prims.push_back(piece.unit);
            continue;
        }
        ElementSweep sweep(piece.w, 0xb10c);
        bool advanced = false;
        while (auto xel = sweep.next()) {
            Poly mu = minimal_polynomial(a, *xel, &piece.unit);
            auto roots = detail::field_roots(mu);
            for (const auto& [r, mult] : roots.roots) {
                auto e = detail::primary_projector(a, *xel, &piece.unit, mu, r, mult);
                if (!e) continue;
                bool zero = true, whole = true;
                for (int k = 0; k < a.dim(); ++k) {
                    zero &= (*e)[k].is_zero();
                    whole &= ((*e)[k] == piece.unit[k]);
                }
                if (zero || whole) continue;
                std::vector<Scalar> comp = piece.unit;
                for (int k = 0; k < a.dim(); ++k) comp[k] -= (*e)[k];
                work.push_back({detail::two_sided_corner(a, *e, *e, piece.w), *e});
                work.push_back({detail::two_sided_corner(a, comp, comp, piece.w), comp});
                advanced = true;
                break;
            }
            if (advanced) break;
        }
        if (!advanced) raise(ErrorCode::NotSplit, "no splitting element found in corner");
    }
    return prims;
}

/// Matrix units of one split simple block from its primitive idempotents.
inline BlockUnits matrix_units_of_block(const StructureAlgebra& a, const Subspace& block,
                                        const std::vector<std::vector<Scalar>>& prims) {
    const int m = static_cast<int>(prims.size());
    if (m * m != block.dim())
        raise(ErrorCode::NotSplit, "block dimension is not the square of its idempotent count");
    BlockUnits bu;
    bu.n = m;
    bu.units.assign(static_cast<std::size_t>(m) * m, {});
    bu.units[0] = prims[0];
    auto corner_line = [&](const std::vector<Scalar>& l, const std::vector<Scalar>& r) {
        Subspace c = detail::two_sided_corner(a, l, r, block);
        if (c.dim() != 1) raise(ErrorCode::NotSplit, "idempotent corner is not one-dimensional");
        return c.basis().row(0);
    };
    for (int s = 1; s < m; ++s) {
        std::vector<Scalar> u = corner_line(prims[0], prims[s]);
        std::vector<Scalar> v = corner_line(prims[s], prims[0]);
        std::vector<Scalar> uv = multiply_coords(a, u, v);
        Subspace f1 = Subspace::span_of(a.field(), {prims[0]}, a.dim());
        auto kappa = f1.coordinates_of(uv);
        if (!kappa || (*kappa)[0].is_zero())
            raise(ErrorCode::NotSplit, "corner transfer elements do not invert");
        Scalar inv = (*kappa)[0].inverse();
        for (Scalar& c : v) c *= inv;
        bu.units[0 * m + s] = u;
        bu.units[s * m + 0] = v;
    }
    for (int s = 1; s < m; ++s) bu.units[s * m + s] = prims[s];
    for (int s = 1; s < m; ++s)
        for (int t = 1; t < m; ++t)
            if (s != t) bu.units[s * m + t] = multiply_coords(a, bu.unit(s, 0), bu.unit(0, t));
    return bu;
}

/// Exact matrix-unit relation check across all blocks.
inline bool unit_relations_hold(const StructureAlgebra& a, const WedderburnData& wd,
                                std::string* why = nullptr) {
    for (std::size_t bi = 0; bi < wd.blocks.size(); ++bi)
        for (std::size_t bj = 0; bj < wd.blocks.size(); ++bj) {
            const auto& B = wd.blocks[bi];
            const auto& C = wd.blocks[bj];
            for (int s = 0; s < B.n; ++s)
                for (int t = 0; t < B.n; ++t)
                    for (int u = 0; u < C.n; ++u)
                        for (int v = 0; v < C.n; ++v) {
                            std::vector<Scalar> prod =
                                multiply_coords(a, B.unit(s, t), C.unit(u, v));
                            std::vector<Scalar> expect(a.dim(), Scalar::zero(a.field()));
                            if (bi == bj && t == u) expect = B.unit(s, v);
                            if (prod != expect) {
                                if (why)
                                    *why = "e(" + std::to_string(bi) + ")_" + std::to_string(s + 1) +
                                           std::to_string(t + 1) + " * e(" + std::to_string(bj) +
                                           ")_" + std::to_string(u + 1) + std::to_string(v + 1);
                                return false;
                            }
                        }
        }
    return true;
}

/// Blocks of an algebra assumed semisimple and split, in its own coordinates.
inline WedderburnData discover_semisimple_blocks(const StructureAlgebra& a) {
    WedderburnData wd;
    wd.exact = true;
    if (a.dim() == 0) return wd;
    // center: x with x b_j = b_j x for every basis element
    MatrixExact m(a.field(), a.dim() * a.dim(), a.dim());
    for (int j = 0; j < a.dim(); ++j)
        for (int i = 0; i < a.dim(); ++i)
            for (int t = 0; t < a.dim(); ++t)
                m.at(j * a.dim() + t, i) = a.sc(i, j, t) - a.sc(j, i, t);
    Subspace center = kernel_basis(m);
    auto centrals = split_commutative_etale(a, center);
    // their sum must act as a two-sided identity
    std::vector<Scalar> one(a.dim(), Scalar::zero(a.field()));
    for (const auto& c : centrals)
        for (int k = 0; k < a.dim(); ++k) one[k] += c[k];
    for (int j = 0; j < a.dim(); ++j) {
        auto b = unitv(a.field(), a.dim(), j);
        if (multiply_coords(a, one, b) != b || multiply_coords(a, b, one) != b)
            raise(ErrorCode::NotSplit, "central idempotents do not sum to an identity");
    }
    int total = 0;
    for (const auto& c : centrals) {
        Subspace block = detail::left_corner(a, c, Subspace::full(a.field(), a.dim()));
        auto prims = split_primitive_idempotents(a, block, c);
        BlockUnits bu = matrix_units_of_block(a, block, prims);
        total += bu.n * bu.n;
        wd.blocks.push_back(std::move(bu));
        wd.central_idempotents.push_back(c);
    }
    if (total != a.dim()) raise(ErrorCode::NotSplit, "block dimensions do not fill the algebra");
    std::string why;
    if (!unit_relations_hold(a, wd, &why))
        raise(ErrorCode::InternalInconsistency, "discovered units violate relations at " + why);
    return wd;
}

// ---------------------------------------------------------------------------
// radical

namespace detail {

inline MatrixExact left_mult_matrix(const StructureAlgebra& a, int i) {
    MatrixExact m(a.field(), a.dim(), a.dim());
    for (int j = 0; j < a.dim(); ++j)
        for (const auto& [k, c] : a.product_of_basis(i, j)) m.at(k, j) = c;
    return m;
}

}  // namespace detail

/// Certifies that `r` is the radical: an ideal, nilpotent, and the quotient
/// splits into full matrix blocks. Returns the nilpotency index.
inline int certify_radical(const StructureAlgebra& a, const Subspace& r,
                           WedderburnData* quotient_blocks_out = nullptr) {
    if (ideal_closure(r, a) != r)
        raise(ErrorCode::RadicalUnsupported, "claimed radical is not an ideal");
    int index = 1;
    Subspace power = r;
    while (power.dim() > 0) {
        if (++index > a.dim() + 1)
            raise(ErrorCode::RadicalUnsupported, "claimed radical is not nilpotent");
        power = subspace_product(power, r, a);
    }
    QuotientAlgebra q = quotient_algebra(a, r);
    WedderburnData wd = discover_semisimple_blocks(q.alg);  // throws NotSplit on failure
    int total = 0;
    for (const auto& b : wd.blocks) total += b.n * b.n;
    if (total + r.dim() != a.dim())
        raise(ErrorCode::InternalInconsistency, "block sizes plus radical do not fill the algebra");
    if (quotient_blocks_out) *quotient_blocks_out = std::move(wd);
    return index;
}

/// Jacobson radical. Computed from the trace form of the regular
/// representation of the unital extension (valid over Q and over GF(p) with
/// p > dim A), then certified. A supplied planted radical is verified
/// instead of computed, which keeps small characteristic usable.
inline RadicalResult radical(const StructureAlgebra& a, const Subspace* planted = nullptr) {
    if (planted) {
        if (planted->ambient_dim() != a.dim())
            raise(ErrorCode::DimensionMismatch, "planted radical ambient");
        int index = certify_radical(a, *planted);
        return {*planted, index};
    }
    std::int64_t p = a.field().characteristic();
    if (p != 0 && p <= a.dim())
        raise(ErrorCode::RadicalUnsupported,
              "characteristic " + std::to_string(p) + " <= dim " + std::to_string(a.dim()) +
                  " needs a planted radical");
    UnitalExtension hat = unitalize(a);
    const StructureAlgebra& h = *hat.hat;
    const int n = h.dim();
    std::vector<MatrixExact> lm;
    lm.reserve(n);
    for (int i = 0; i < n; ++i) lm.push_back(detail::left_mult_matrix(h, i));

    // kernel of the trace form, iterated to stability
    Subspace current = Subspace::full(h.field(), n);
    while (true) {
        const int k = current.dim();
        std::vector<MatrixExact> ops;
        ops.reserve(k);
        for (int i = 0; i < k; ++i) {
            MatrixExact op(h.field(), n, n);
            for (int c = 0; c < n; ++c) {
                const Scalar& w = current.basis().at(i, c);
                if (w.is_zero()) continue;
                for (int r = 0; r < n; ++r)
                    for (int s = 0; s < n; ++s)
                        if (!lm[c].at(r, s).is_zero()) op.at(r, s) += w * lm[c].at(r, s);
            }
            ops.push_back(std::move(op));
        }
        MatrixExact gram(h.field(), k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) {
                Scalar tr = Scalar::zero(h.field());
                for (int r = 0; r < n; ++r)
                    for (int s = 0; s < n; ++s)
                        if (!ops[i].at(r, s).is_zero() && !ops[j].at(s, r).is_zero())
                            tr += ops[i].at(r, s) * ops[j].at(s, r);
                gram.at(i, j) = tr;
            }
        Subspace ker = kernel_basis(gram);
        SpanBuilder sb(h.field(), n);
        for (int t = 0; t < ker.dim(); ++t) {
            std::vector<Scalar> v(n, Scalar::zero(h.field()));
            for (int i = 0; i < k; ++i) {
                const Scalar& c = ker.basis().at(t, i);
                if (c.is_zero()) continue;
                for (int col = 0; col < n; ++col) v[col] += c * current.basis().at(i, col);
            }
            sb.insert(std::move(v));
        }
        Subspace next = sb.finalize();
        if (next == current) break;
        current = next;
        if (current.dim() == 0) break;
    }
    // restrict to A: the adjoined-unit coordinate must vanish on the radical
    std::vector<std::vector<Scalar>> rows;
    for (int i = 0; i < current.dim(); ++i) {
        std::vector<Scalar> r = current.basis().row(i);
        if (!r[n - 1].is_zero())
            raise(ErrorCode::InternalInconsistency, "trace radical leaks the adjoined unit");
        rows.push_back(std::vector<Scalar>(r.begin(), r.end() - 1));
    }
    Subspace rad = Subspace::span_of(a.field(), rows, a.dim());
    int index = certify_radical(a, rad);
    return {rad, index};
}

/// Matrix units of the blocks of A / rad, pulled back through the coordinate
/// section. Relations hold modulo the radical; exact once the radical is zero.
inline WedderburnData split_blocks(const StructureAlgebra& a, const RadicalResult& rad) {
    QuotientAlgebra q = quotient_algebra(a, rad.radical);
    WedderburnData qwd = discover_semisimple_blocks(q.alg);
    WedderburnData wd;
    wd.exact = rad.radical.dim() == 0;
    for (const auto& b : qwd.blocks) {
        BlockUnits lifted;
        lifted.n = b.n;
        for (const auto& u : b.units) lifted.units.push_back(q.section(u));
        wd.blocks.push_back(std::move(lifted));
    }
    for (const auto& c : qwd.central_idempotents) wd.central_idempotents.push_back(q.section(c));
    return wd;
}

// ---------------------------------------------------------------------------
// Levi lifting

namespace detail {

/// Newton step e <- 3e^2 - 2e^3 squares the defect e^2 - e into deeper powers
/// of the radical; exact idempotency is reached in O(log nilpotency) steps.
inline std::vector<Scalar> purify_idempotent(const StructureAlgebra& a, std::vector<Scalar> e) {
    for (int round = 0; round < 64; ++round) {
        std::vector<Scalar> e2 = multiply_coords(a, e, e);
        if (e2 == e) return e;
        std::vector<Scalar> e3 = multiply_coords(a, e2, e);
        Scalar three = Scalar::from_int(a.field(), 3), two = Scalar::from_int(a.field(), 2);
        for (int k = 0; k < a.dim(); ++k) e[k] = three * e2[k] - two * e3[k];
    }
    raise(ErrorCode::InternalInconsistency, "idempotent purification did not converge");
}

}  // namespace detail

/// Wedderburn-Malcev complement: lifts the quotient matrix units into A so
/// the unit relations hold exactly, giving a semisimple subalgebra with
/// levi + radical = A and levi of dimension sum of n_i^2.
inline LeviSubalgebra levi_lift(const StructureAlgebra& a, const RadicalResult& rad) {
    QuotientAlgebra q = quotient_algebra(a, rad.radical);
    WedderburnData qwd = discover_semisimple_blocks(q.alg);

    // 1. diagonal idempotents, lifted one by one, kept exactly orthogonal
    std::vector<Scalar> total(a.dim(), Scalar::zero(a.field()));
    bool have_total = false;
    std::vector<std::vector<std::vector<Scalar>>> diag(qwd.blocks.size());
    for (std::size_t bi = 0; bi < qwd.blocks.size(); ++bi) {
        const auto& b = qwd.blocks[bi];
        for (int s = 0; s < b.n; ++s) {
            std::vector<Scalar> g = q.section(b.unit(s, s));
            if (have_total) {
                std::vector<Scalar> tg = multiply_coords(a, total, g);
                std::vector<Scalar> gt = multiply_coords(a, g, total);
                std::vector<Scalar> tgt = multiply_coords(a, tg, total);
                for (int k = 0; k < a.dim(); ++k) g[k] = g[k] - tg[k] - gt[k] + tgt[k];
            }
            g = detail::purify_idempotent(a, g);
            for (int k = 0; k < a.dim(); ++k) total[k] += g[k];
            have_total = true;
            diag[bi].push_back(std::move(g));
        }
    }

    // 2. off-diagonal units per block through the first diagonal anchor
    LeviSubalgebra out;
    out.units.exact = true;
    for (std::size_t bi = 0; bi < qwd.blocks.size(); ++bi) {
        const auto& b = qwd.blocks[bi];
        BlockUnits bu;
        bu.n = b.n;
        bu.units.assign(static_cast<std::size_t>(b.n) * b.n, {});
        for (int s = 0; s < b.n; ++s) bu.units[s * b.n + s] = diag[bi][s];
        const auto& anchor = diag[bi][0];
        for (int s = 1; s < b.n; ++s) {
            std::vector<Scalar> u = multiply_coords(
                a, anchor, multiply_coords(a, q.section(b.unit(0, s)), diag[bi][s]));
            std::vector<Scalar> v = multiply_coords(
                a, diag[bi][s], multiply_coords(a, q.section(b.unit(s, 0)), anchor));
            std::vector<Scalar> w = multiply_coords(a, u, v);
            // w = anchor - z with z nilpotent in the corner; geometric series inverts it
            std::vector<Scalar> z = anchor;
            for (int k = 0; k < a.dim(); ++k) z[k] -= w[k];
            std::vector<Scalar> winv = anchor, zp = z;
            int guard = 0;
            while (true) {
                bool zero = true;
                for (const Scalar& c : zp) zero &= c.is_zero();
                if (zero) break;
                if (++guard > a.dim() + 2)
                    raise(ErrorCode::InternalInconsistency, "corner defect is not nilpotent");
                for (int k = 0; k < a.dim(); ++k) winv[k] += zp[k];
                zp = multiply_coords(a, zp, z);
            }
            std::vector<Scalar> vprime = multiply_coords(a, v, winv);
            bu.units[0 * b.n + s] = u;
            bu.units[s * b.n + 0] = vprime;
        }
        for (int s = 1; s < b.n; ++s)
            for (int t = 1; t < b.n; ++t)
                if (s != t)
                    bu.units[s * b.n + t] = multiply_coords(a, bu.unit(s, 0), bu.unit(0, t));
        out.units.blocks.push_back(std::move(bu));
    }
    for (const auto& b : out.units.blocks) {
        std::vector<Scalar> c(a.dim(), Scalar::zero(a.field()));
        for (int s = 0; s < b.n; ++s)
            for (int k = 0; k < a.dim(); ++k) c[k] += b.unit(s, s)[k];
        out.units.central_idempotents.push_back(std::move(c));
    }

    std::string why;
    if (!unit_relations_hold(a, out.units, &why))
        raise(ErrorCode::InternalInconsistency, "lifted units violate relations at " + why);
    SpanBuilder sb(a.field(), a.dim());
    int expected = 0;
    for (const auto& b : out.units.blocks) {
        expected += b.n * b.n;
        for (const auto& u : b.units) sb.insert(u);
    }
    out.levi = sb.finalize();
    if (out.levi.dim() != expected)
        raise(ErrorCode::InternalInconsistency, "lifted units are dependent");
    if (intersection(out.levi, rad.radical).dim() != 0)
        raise(ErrorCode::InternalInconsistency, "levi meets the radical");
    if (out.levi.dim() + rad.radical.dim() != a.dim())
        raise(ErrorCode::InternalInconsistency, "levi does not complement the radical");
    if (!out.levi.contains(subspace_product(out.levi, out.levi, a)))
        raise(ErrorCode::InternalInconsistency, "levi is not closed under products");
    return out;
}

// ---------------------------------------------------------------------------
// k-perfectness and corner subalgebras

struct KPerfectResult {
    bool is_k_perfect = false;
    std::optional<Subspace> witness;  // a proper ideal of codimension <= k when not k-perfect
};

/// A is k-perfect iff A^2 = A and every block size satisfies n_i^2 > k.
/// The negative branch emits an explicit witness ideal.
inline KPerfectResult k_perfect_check(const StructureAlgebra& a, int k,
                                      const Subspace* planted_radical = nullptr) {
    if (k < 1) raise(ErrorCode::InvalidArgument, "k must be at least 1");
    Subspace square = algebra_square(a);
    if (square.dim() < a.dim()) {
        // any hyperplane containing A^2 is a proper ideal of codimension 1
        std::vector<bool> pivot(a.dim(), false);
        for (int c : square.pivots()) pivot[c] = true;
        int skip = -1;
        for (int c = 0; c < a.dim(); ++c)
            if (!pivot[c]) {
                skip = c;
                break;
            }
        SpanBuilder sb(square);
        for (int c = 0; c < a.dim(); ++c)
            if (!pivot[c] && c != skip) sb.insert(unitv(a.field(), a.dim(), c));
        return {false, sb.finalize()};
    }
    RadicalResult rad = radical(a, planted_radical);
    WedderburnData wd = split_blocks(a, rad);
    for (std::size_t bi = 0; bi < wd.blocks.size(); ++bi) {
        int n = wd.blocks[bi].n;
        if (static_cast<std::int64_t>(n) * n > k) continue;
        // preimage of the sum of all other blocks: ideal of codimension n^2
        SpanBuilder sb(rad.radical);
        for (std::size_t bj = 0; bj < wd.blocks.size(); ++bj) {
            if (bj == bi) continue;
            for (const auto& u : wd.blocks[bj].units) sb.insert(u);
        }
        return {false, sb.finalize()};
    }
    return {true, std::nullopt};
}

struct CornerSubalgebra {
    Subspace p;                                // the diagonal copy of M_m inside S
    std::vector<std::vector<Scalar>> units;    // m x m grid p_st = sum_i e_st^(i)
    int m = 0;
};

/// P = span{ p_st = sum over blocks of e_st } with p_st the M_m matrix units;
/// certified to generate S as an ideal of S.
inline CornerSubalgebra corner_subalgebra(const StructureAlgebra& a, const WedderburnData& wd,
                                          int m) {
    if (wd.blocks.empty()) raise(ErrorCode::InvalidArgument, "no blocks");
    for (const auto& b : wd.blocks)
        if (b.n < m)
            raise(ErrorCode::BlockTooSmall,
                  "block of size " + std::to_string(b.n) + " < " + std::to_string(m));
    CornerSubalgebra out;
    out.m = m;
    for (int s = 0; s < m; ++s)
        for (int t = 0; t < m; ++t) {
            std::vector<Scalar> v(a.dim(), Scalar::zero(a.field()));
            for (const auto& b : wd.blocks)
                for (int k = 0; k < a.dim(); ++k) v[k] += b.unit(s, t)[k];
            out.units.push_back(std::move(v));
        }
    // p_st satisfy the M_m relations exactly when the block units are exact
    for (int s = 0; s < m; ++s)
        for (int t = 0; t < m; ++t)
            for (int u = 0; u < m; ++u)
                for (int v = 0; v < m; ++v) {
                    std::vector<Scalar> prod =
                        multiply_coords(a, out.units[s * m + t], out.units[u * m + v]);
                    std::vector<Scalar> expect(a.dim(), Scalar::zero(a.field()));
                    if (t == u) expect = out.units[s * m + v];
                    if (prod != expect)
                        raise(ErrorCode::InternalInconsistency, "corner units violate relations");
                }
    out.p = Subspace::span_of(a.field(), out.units, a.dim());
    SpanBuilder s_span_b(a.field(), a.dim());
    for (const auto& b : wd.blocks)
        for (const auto& u : b.units) s_span_b.insert(u);
    Subspace s_span = s_span_b.finalize();
    if (ideal_closure(out.p, a, &s_span) != s_span)
        raise(ErrorCode::InternalInconsistency, "corner copy does not generate S as an ideal");
    return out;
}

}  // namespace matlie

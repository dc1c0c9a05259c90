#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "matlie/subspace.hpp"

namespace matlie {

class StructureAlgebra;

/// Element of a structure-constant algebra: a coordinate vector tied to its
/// parent by address. The parent must outlive the element.
class AlgebraElement {
public:
    AlgebraElement() = default;
    AlgebraElement(const StructureAlgebra* parent, std::vector<Scalar> coords)
        : parent_(parent), coords_(std::move(coords)) {}

    const StructureAlgebra* parent() const { return parent_; }
    const std::vector<Scalar>& coords() const { return coords_; }
    std::vector<Scalar>& coords() { return coords_; }

    bool is_zero() const {
        for (const Scalar& c : coords_)
            if (!c.is_zero()) return false;
        return true;
    }

    bool operator==(const AlgebraElement& o) const {
        return parent_ == o.parent_ && coords_ == o.coords_;
    }
    bool operator!=(const AlgebraElement& o) const { return !(*this == o); }

private:
    const StructureAlgebra* parent_ = nullptr;
    std::vector<Scalar> coords_;
};

/// Finite-dimensional associative algebra given by a structure-constant
/// tensor c[i][j][k] with b_i b_j = sum_k c[i][j][k] b_k. The tensor is kept
/// dense; a nonzero list per (i,j) backs the hot product loops.
class StructureAlgebra {
public:
    StructureAlgebra() = default;

    StructureAlgebra(FieldDescriptor f, int dim)
        : f_(f),
          dim_(dim),
          sc_(static_cast<std::size_t>(dim) * dim * dim, Scalar::zero(f)),
          nz_(static_cast<std::size_t>(dim) * dim) {}

    const FieldDescriptor& field() const { return f_; }
    int dim() const { return dim_; }

    const Scalar& sc(int i, int j, int k) const { return sc_[idx(i, j, k)]; }

    /// Sets c[i][j][k]; call finalize() after the last entry.
    void set_sc(int i, int j, int k, const Scalar& v) {
        require_same_field(f_, v.field());
        sc_[idx(i, j, k)] = v;
        finalized_ = false;
    }

    void finalize() {
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j) {
                auto& list = nz_[static_cast<std::size_t>(i) * dim_ + j];
                list.clear();
                for (int k = 0; k < dim_; ++k)
                    if (!sc(i, j, k).is_zero()) list.emplace_back(k, sc(i, j, k));
            }
        finalized_ = true;
    }

    const std::vector<std::pair<int, Scalar>>& product_of_basis(int i, int j) const {
        return nz_[static_cast<std::size_t>(i) * dim_ + j];
    }

    std::optional<int> unit_index() const { return unit_index_; }
    void set_unit_index(std::optional<int> u) { unit_index_ = u; }

    const std::vector<std::string>& labels() const { return labels_; }
    void set_labels(std::vector<std::string> l) { labels_ = std::move(l); }

    AlgebraElement zero_element() const {
        return AlgebraElement(this, std::vector<Scalar>(dim_, Scalar::zero(f_)));
    }

    AlgebraElement basis_element(int i) const {
        if (i < 0 || i >= dim_) raise(ErrorCode::IndexOutOfRange, "basis index");
        auto v = std::vector<Scalar>(dim_, Scalar::zero(f_));
        v[i] = Scalar::one(f_);
        return AlgebraElement(this, std::move(v));
    }

    AlgebraElement element(std::vector<Scalar> coords) const {
        if (static_cast<int>(coords.size()) != dim_)
            raise(ErrorCode::DimensionMismatch, "coordinate length");
        return AlgebraElement(this, std::move(coords));
    }

    bool finalized() const { return finalized_; }

private:
    std::size_t idx(int i, int j, int k) const {
        return (static_cast<std::size_t>(i) * dim_ + j) * dim_ + k;
    }

    FieldDescriptor f_ = FieldDescriptor::rationals();
    int dim_ = 0;
    std::vector<Scalar> sc_;
    std::vector<std::vector<std::pair<int, Scalar>>> nz_;
    std::optional<int> unit_index_;
    std::vector<std::string> labels_;
    bool finalized_ = false;
};

inline void require_same_parent(const AlgebraElement& x, const AlgebraElement& y) {
    if (x.parent() == nullptr || x.parent() != y.parent())
        raise(ErrorCode::ParentMismatch, "elements of different algebras");
}

inline AlgebraElement operator+(const AlgebraElement& x, const AlgebraElement& y) {
    require_same_parent(x, y);
    std::vector<Scalar> v = x.coords();
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += y.coords()[i];
    return AlgebraElement(x.parent(), std::move(v));
}

inline AlgebraElement operator-(const AlgebraElement& x, const AlgebraElement& y) {
    require_same_parent(x, y);
    std::vector<Scalar> v = x.coords();
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= y.coords()[i];
    return AlgebraElement(x.parent(), std::move(v));
}

inline AlgebraElement operator*(const Scalar& c, const AlgebraElement& x) {
    std::vector<Scalar> v = x.coords();
    for (Scalar& e : v) e *= c;
    return AlgebraElement(x.parent(), std::move(v));
}

/// Product coordinates through the structure tensor; the workhorse.
inline std::vector<Scalar> multiply_coords(const StructureAlgebra& a,
                                           const std::vector<Scalar>& x,
                                           const std::vector<Scalar>& y) {
    std::vector<Scalar> out(a.dim(), Scalar::zero(a.field()));
    for (int i = 0; i < a.dim(); ++i) {
        if (x[i].is_zero()) continue;
        for (int j = 0; j < a.dim(); ++j) {
            if (y[j].is_zero()) continue;
            Scalar c = x[i] * y[j];
            for (const auto& [k, v] : a.product_of_basis(i, j)) out[k] += c * v;
        }
    }
    return out;
}

inline AlgebraElement multiply(const AlgebraElement& x, const AlgebraElement& y) {
    require_same_parent(x, y);
    const StructureAlgebra& a = *x.parent();
    return AlgebraElement(&a, multiply_coords(a, x.coords(), y.coords()));
}

/// [x, y] = xy - yx.
inline AlgebraElement commutator(const AlgebraElement& x, const AlgebraElement& y) {
    return multiply(x, y) - multiply(y, x);
}

struct AssociativityReport {
    bool ok = true;
    int i = -1, j = -1, k = -1;  // first violating basis triple when !ok
};

inline AssociativityReport verify_associativity(const StructureAlgebra& a) {
    const int n = a.dim();
    std::vector<Scalar> left(n, Scalar::zero(a.field())), right(n, Scalar::zero(a.field()));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const auto& ij = a.product_of_basis(i, j);
            for (int k = 0; k < n; ++k) {
                for (Scalar& s : left) s = Scalar::zero(a.field());
                for (Scalar& s : right) s = Scalar::zero(a.field());
                for (const auto& [m, c] : ij)
                    for (const auto& [t, v] : a.product_of_basis(m, k)) left[t] += c * v;
                for (const auto& [m, c] : a.product_of_basis(j, k))
                    for (const auto& [t, v] : a.product_of_basis(i, m)) right[t] += c * v;
                if (left != right) return {false, i, j, k};
            }
        }
    return {};
}

/// A with an identity adjoined: dim grows by one, the new last coordinate is
/// the adjoined unit, and A embeds as the ideal of the first dim coordinates.
struct UnitalExtension {
    std::shared_ptr<StructureAlgebra> hat;
    int one_index = 0;  // == dim(A)

    AlgebraElement one() const { return hat->basis_element(one_index); }

    AlgebraElement embed(const std::vector<Scalar>& coords) const {
        std::vector<Scalar> v = coords;
        v.push_back(Scalar::zero(hat->field()));
        return hat->element(std::move(v));
    }

    /// Projects a hat element known to lie in A back to A coordinates.
    std::vector<Scalar> restrict(const AlgebraElement& x) const {
        if (x.parent() != hat.get()) raise(ErrorCode::ParentMismatch, "not a hat element");
        if (!x.coords()[one_index].is_zero())
            raise(ErrorCode::InternalInconsistency, "element has a unit component");
        return std::vector<Scalar>(x.coords().begin(), x.coords().end() - 1);
    }
};

inline UnitalExtension unitalize(const StructureAlgebra& a) {
    const int n = a.dim();
    auto hat = std::make_shared<StructureAlgebra>(a.field(), n + 1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (!a.sc(i, j, k).is_zero()) hat->set_sc(i, j, k, a.sc(i, j, k));
    Scalar one = Scalar::one(a.field());
    for (int i = 0; i <= n; ++i) {
        hat->set_sc(n, i, i, one);
        hat->set_sc(i, n, i, one);
    }
    hat->set_unit_index(n);
    hat->finalize();
    return UnitalExtension{std::move(hat), n};
}

/// span{ x·y : x in basis(u), y in basis(v) } inside a.
inline Subspace subspace_product(const Subspace& u, const Subspace& v, const StructureAlgebra& a) {
    if (u.ambient_dim() != a.dim() || v.ambient_dim() != a.dim())
        raise(ErrorCode::DimensionMismatch, "subspace vs algebra dim");
    require_same_field(u.field(), a.field());
    u.check_compatible(v);
    SpanBuilder sb(a.field(), a.dim());
    for (int i = 0; i < u.dim() && !sb.is_full(); ++i)
        for (int j = 0; j < v.dim() && !sb.is_full(); ++j)
            sb.insert(multiply_coords(a, u.basis().row(i), v.basis().row(j)));
    return sb.finalize();
}

inline Subspace algebra_square(const StructureAlgebra& a) {
    Subspace full = Subspace::full(a.field(), a.dim());
    return subspace_product(full, full, a);
}

/// Least subspace containing gen and closed under products with mult (on both
/// sides). Fixed-point iteration; each round multiplies only the vectors new
/// in the previous round. Defaults to the whole algebra as multiplier.
inline Subspace ideal_closure(const Subspace& gen, const StructureAlgebra& a,
                              const Subspace* multipliers = nullptr) {
    Subspace mult = multipliers ? *multipliers : Subspace::full(a.field(), a.dim());
    SpanBuilder sb(a.field(), a.dim());
    std::vector<std::vector<Scalar>> fresh;
    for (int i = 0; i < gen.dim(); ++i)
        if (sb.insert(gen.basis().row(i))) fresh.push_back(gen.basis().row(i));
    int rounds = 0;
    while (!fresh.empty() && !sb.is_full()) {
        if (++rounds > a.dim() + 1)
            raise(ErrorCode::InternalInconsistency, "ideal closure failed to stabilize");
        std::vector<std::vector<Scalar>> next;
        for (const auto& v : fresh) {
            for (int m = 0; m < mult.dim(); ++m) {
                const std::vector<Scalar> row = mult.basis().row(m);
                std::vector<Scalar> left = multiply_coords(a, row, v);
                if (sb.insert(left)) next.push_back(std::move(left));
                if (sb.is_full()) break;
                std::vector<Scalar> right = multiply_coords(a, v, row);
                if (sb.insert(right)) next.push_back(std::move(right));
                if (sb.is_full()) break;
            }
            if (sb.is_full()) break;
        }
        fresh = std::move(next);
    }
    return sb.finalize();
}

}  // namespace matlie

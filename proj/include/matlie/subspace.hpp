#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "matlie/matrix.hpp"

namespace matlie {

/// Subspace of F^n held as the unique reduced row-echelon basis. Because the
/// basis is canonical, equality of subspaces is equality of the stored data.
class Subspace {
public:
    Subspace() = default;

    static Subspace zero(FieldDescriptor f, int ambient) {
        Subspace s;
        s.ambient_ = ambient;
        s.basis_ = MatrixExact(f, 0, ambient);
        return s;
    }

    static Subspace full(FieldDescriptor f, int ambient) {
        Subspace s;
        s.ambient_ = ambient;
        s.basis_ = MatrixExact::identity(f, ambient);
        for (int i = 0; i < ambient; ++i) s.pivots_.push_back(i);
        return s;
    }

    /// Span of arbitrary rows; canonicalizes.
    static Subspace span(const MatrixExact& rows) {
        RrefResult rr = rref(rows);
        Subspace s;
        s.ambient_ = rows.cols();
        s.basis_ = std::move(rr.mat);
        s.pivots_ = std::move(rr.pivots);
        return s;
    }

    static Subspace span_of(FieldDescriptor f, const std::vector<std::vector<Scalar>>& vecs, int ambient) {
        if (vecs.empty()) return zero(f, ambient);
        return span(MatrixExact::from_rows(f, vecs));
    }

    int ambient_dim() const { return ambient_; }
    int dim() const { return basis_.rows(); }
    const MatrixExact& basis() const { return basis_; }
    const std::vector<int>& pivots() const { return pivots_; }
    const FieldDescriptor& field() const { return basis_.field(); }

    bool operator==(const Subspace& o) const {
        return ambient_ == o.ambient_ && basis_ == o.basis_;
    }
    bool operator!=(const Subspace& o) const { return !(*this == o); }

    /// Residual of v after elimination against the basis; zero iff v is a member.
    std::vector<Scalar> reduce(std::vector<Scalar> v) const {
        for (int k = 0; k < basis_.rows(); ++k) {
            const Scalar& c = v[pivots_[k]];
            if (c.is_zero()) continue;
            Scalar factor = c;  // pivot entries are 1
            for (int j = pivots_[k]; j < ambient_; ++j) {
                const Scalar& b = basis_.at(k, j);
                if (!b.is_zero()) v[j] -= factor * b;
            }
        }
        return v;
    }

    bool contains(const std::vector<Scalar>& v) const {
        if (static_cast<int>(v.size()) != ambient_)
            raise(ErrorCode::DimensionMismatch, "vector vs ambient dim");
        for (const Scalar& c : reduce(v))
            if (!c.is_zero()) return false;
        return true;
    }

    bool contains(const Subspace& o) const {
        check_compatible(o);
        for (int i = 0; i < o.dim(); ++i)
            if (!contains(o.basis_.row(i))) return false;
        return true;
    }

    /// Coordinates of v in the echelon basis, or nullopt when v is outside.
    std::optional<std::vector<Scalar>> coordinates_of(const std::vector<Scalar>& v) const {
        std::vector<Scalar> coords;
        coords.reserve(pivots_.size());
        std::vector<Scalar> w = v;
        for (int k = 0; k < basis_.rows(); ++k) {
            Scalar c = w[pivots_[k]];
            coords.push_back(c);
            if (c.is_zero()) continue;
            for (int j = pivots_[k]; j < ambient_; ++j) {
                const Scalar& b = basis_.at(k, j);
                if (!b.is_zero()) w[j] -= c * b;
            }
        }
        for (const Scalar& c : w)
            if (!c.is_zero()) return std::nullopt;
        return coords;
    }

    void check_compatible(const Subspace& o) const {
        require_same_field(field(), o.field());
        if (ambient_ != o.ambient_) raise(ErrorCode::DimensionMismatch, "ambient dims differ");
    }

private:
    friend class SpanBuilder;
    int ambient_ = 0;
    MatrixExact basis_;
    std::vector<int> pivots_;
};

/// Incrementally echelonizes vectors. Rows are kept reduced against earlier
/// pivots only; finalize() produces the canonical subspace.
class SpanBuilder {
public:
    SpanBuilder(FieldDescriptor f, int ambient) : f_(f), ambient_(ambient) {}

    explicit SpanBuilder(const Subspace& s) : f_(s.field()), ambient_(s.ambient_dim()) {
        for (int i = 0; i < s.dim(); ++i) insert(s.basis().row(i));
    }

    /// Returns true when v enlarged the span.
    bool insert(std::vector<Scalar> v) {
        if (static_cast<int>(v.size()) != ambient_)
            raise(ErrorCode::DimensionMismatch, "vector vs ambient dim");
        for (int j = 0; j < ambient_; ++j) {
            if (v[j].is_zero()) continue;
            auto it = rows_.find(j);
            if (it == rows_.end()) {
                Scalar inv = v[j].inverse();
                for (int k = j; k < ambient_; ++k)
                    if (!v[k].is_zero()) v[k] *= inv;
                rows_.emplace(j, std::move(v));
                return true;
            }
            const std::vector<Scalar>& r = it->second;
            Scalar factor = v[j];
            for (int k = j; k < ambient_; ++k)
                if (!r[k].is_zero()) v[k] -= factor * r[k];
        }
        return false;
    }

    int rank() const { return static_cast<int>(rows_.size()); }
    bool is_full() const { return rank() == ambient_; }

    Subspace finalize() const {
        MatrixExact m(f_, rank(), ambient_);
        int i = 0;
        for (const auto& [piv, row] : rows_) {
            (void)piv;
            m.set_row(i++, row);
        }
        return Subspace::span(m);  // back-substitution to full RREF
    }

private:
    FieldDescriptor f_;
    int ambient_ = 0;
    std::map<int, std::vector<Scalar>> rows_;  // pivot column -> row
};

inline Subspace sum(const Subspace& a, const Subspace& b) {
    a.check_compatible(b);
    SpanBuilder sb(a);
    for (int i = 0; i < b.dim(); ++i) sb.insert(b.basis().row(i));
    return sb.finalize();
}

/// Kernel-of-stacked-system method: coefficient pairs (x, y) with
/// x·basis(a) + y·basis(b) = 0 give x·basis(a) spanning the intersection.
inline Subspace intersection(const Subspace& a, const Subspace& b) {
    a.check_compatible(b);
    const FieldDescriptor f = a.field();
    const int n = a.ambient_dim(), da = a.dim(), db = b.dim();
    if (da == 0 || db == 0) return Subspace::zero(f, n);
    MatrixExact stacked(f, n, da + db);
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < n; ++j) stacked.at(j, i) = a.basis().at(i, j);
    for (int i = 0; i < db; ++i)
        for (int j = 0; j < n; ++j) stacked.at(j, da + i) = b.basis().at(i, j);
    MatrixExact ker = kernel_rows(stacked);
    SpanBuilder sb(f, n);
    for (int k = 0; k < ker.rows(); ++k) {
        std::vector<Scalar> v(n, Scalar::zero(f));
        for (int i = 0; i < da; ++i) {
            const Scalar& c = ker.at(k, i);
            if (c.is_zero()) continue;
            for (int j = 0; j < n; ++j) {
                const Scalar& w = a.basis().at(i, j);
                if (!w.is_zero()) v[j] += c * w;
            }
        }
        sb.insert(std::move(v));
    }
    return sb.finalize();
}

inline Subspace kernel_basis(const MatrixExact& m) {
    return Subspace::span(kernel_rows(m));
}

}  // namespace matlie

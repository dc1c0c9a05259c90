#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "matlie/field.hpp"

namespace matlie {

/// Dense matrix of exact scalars. All entries share one field.
class MatrixExact {
public:
    MatrixExact() = default;

    MatrixExact(FieldDescriptor f, int rows, int cols)
        : f_(f), rows_(rows), cols_(cols), e_(static_cast<std::size_t>(rows) * cols, Scalar::zero(f)) {
        if (rows < 0 || cols < 0) raise(ErrorCode::InvalidArgument, "negative matrix shape");
    }

    static MatrixExact identity(FieldDescriptor f, int n) {
        MatrixExact m(f, n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
        return m;
    }

    static MatrixExact from_rows(FieldDescriptor f, const std::vector<std::vector<Scalar>>& rows) {
        int r = static_cast<int>(rows.size());
        int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
        MatrixExact m(f, r, c);
        for (int i = 0; i < r; ++i) {
            if (static_cast<int>(rows[i].size()) != c)
                raise(ErrorCode::DimensionMismatch, "ragged row list");
            for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
        }
        return m;
    }

    const FieldDescriptor& field() const { return f_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Scalar& at(int r, int c) { return e_[static_cast<std::size_t>(r) * cols_ + c]; }
    const Scalar& at(int r, int c) const { return e_[static_cast<std::size_t>(r) * cols_ + c]; }

    std::vector<Scalar> row(int r) const {
        std::vector<Scalar> out(e_.begin() + static_cast<std::size_t>(r) * cols_,
                                e_.begin() + static_cast<std::size_t>(r + 1) * cols_);
        return out;
    }

    void set_row(int r, const std::vector<Scalar>& v) {
        for (int j = 0; j < cols_; ++j) at(r, j) = v[j];
    }

    bool operator==(const MatrixExact& o) const {
        return f_ == o.f_ && rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }

    MatrixExact transposed() const {
        MatrixExact t(f_, cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    friend MatrixExact operator*(const MatrixExact& a, const MatrixExact& b) {
        require_same_field(a.f_, b.f_);
        if (a.cols_ != b.rows_) raise(ErrorCode::DimensionMismatch, "matrix product shapes");
        MatrixExact c(a.f_, a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                const Scalar& aik = a.at(i, k);
                if (aik.is_zero()) continue;
                for (int j = 0; j < b.cols_; ++j) {
                    const Scalar& bkj = b.at(k, j);
                    if (!bkj.is_zero()) c.at(i, j) += aik * bkj;
                }
            }
        return c;
    }

    std::string str() const {
        std::string s;
        for (int i = 0; i < rows_; ++i) {
            s += "[ ";
            for (int j = 0; j < cols_; ++j) {
                s += at(i, j).str();
                s += ' ';
            }
            s += "]\n";
        }
        return s;
    }

private:
    FieldDescriptor f_ = FieldDescriptor::rationals();
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Scalar> e_;
};

struct RrefResult {
    MatrixExact mat;          // zero rows dropped
    std::vector<int> pivots;  // strictly increasing pivot columns, one per row
};

/// Unique reduced row-echelon form; row space preserved. Pivot selection is
/// leftmost column, first nonzero row from the top.
inline RrefResult rref(MatrixExact m) {
    const int rows = m.rows(), cols = m.cols();
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int sel = -1;
        for (int i = r; i < rows; ++i)
            if (!m.at(i, c).is_zero()) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        if (sel != r)
            for (int j = c; j < cols; ++j) std::swap(m.at(sel, j), m.at(r, j));
        Scalar inv = m.at(r, c).inverse();
        for (int j = c; j < cols; ++j)
            if (!m.at(r, j).is_zero()) m.at(r, j) *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || m.at(i, c).is_zero()) continue;
            Scalar factor = m.at(i, c);
            for (int j = c; j < cols; ++j) {
                if (m.at(r, j).is_zero()) continue;
                m.at(i, j) -= factor * m.at(r, j);
            }
        }
        pivots.push_back(c);
        ++r;
    }
    MatrixExact out(m.field(), r, cols);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < cols; ++j) out.at(i, j) = m.at(i, j);
    return {std::move(out), std::move(pivots)};
}

/// One exact solution of m x = rhs, or nullopt when inconsistent.
inline std::optional<std::vector<Scalar>> solve_linear(const MatrixExact& m,
                                                       const std::vector<Scalar>& rhs) {
    if (static_cast<int>(rhs.size()) != m.rows())
        raise(ErrorCode::DimensionMismatch, "rhs length vs rows");
    MatrixExact aug(m.field(), m.rows(), m.cols() + 1);
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols()) = rhs[i];
    }
    RrefResult rr = rref(std::move(aug));
    std::vector<Scalar> x(m.cols(), Scalar::zero(m.field()));
    for (std::size_t k = 0; k < rr.pivots.size(); ++k) {
        if (rr.pivots[k] == m.cols()) return std::nullopt;  // pivot in the rhs column
        x[rr.pivots[k]] = rr.mat.at(static_cast<int>(k), m.cols());
    }
    return x;
}

/// Rows spanning the right kernel of m, in reduced row-echelon form.
inline MatrixExact kernel_rows(const MatrixExact& m) {
    RrefResult rr = rref(m);
    const int n = m.cols();
    std::vector<bool> is_pivot(n, false);
    for (int c : rr.pivots) is_pivot[c] = true;
    std::vector<std::vector<Scalar>> rows;
    for (int c = 0; c < n; ++c) {
        if (is_pivot[c]) continue;
        std::vector<Scalar> v(n, Scalar::zero(m.field()));
        v[c] = Scalar::one(m.field());
        for (std::size_t k = 0; k < rr.pivots.size(); ++k)
            v[rr.pivots[k]] = -rr.mat.at(static_cast<int>(k), c);
        rows.push_back(std::move(v));
    }
    return rref(MatrixExact::from_rows(m.field(), rows)).mat;
}

}  // namespace matlie

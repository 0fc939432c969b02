#include "ionpair/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ionpair {

CMatrix CMatrix::identity(int dim) {
    CMatrix m(dim);
    for (int j = 0; j < dim; ++j) m(j, j) = 1.0;
    return m;
}

CMatrix CMatrix::from_rows(std::initializer_list<std::initializer_list<cplx>> rows) {
    const int dim = static_cast<int>(rows.size());
    CMatrix m(dim);
    int r = 0;
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != dim)
            throw std::invalid_argument("CMatrix::from_rows: matrix must be square");
        int c = 0;
        for (cplx v : row) m(r, c++) = v;
        ++r;
    }
    return m;
}

CMatrix CMatrix::operator*(const CMatrix& rhs) const {
    if (dim_ != rhs.dim_) throw std::invalid_argument("CMatrix: dimension mismatch");
    CMatrix out(dim_);
    for (int i = 0; i < dim_; ++i) {
        for (int k = 0; k < dim_; ++k) {
            const cplx aik = (*this)(i, k);
            if (aik == cplx{}) continue;
            const cplx* brow = &rhs.a_[static_cast<std::size_t>(k) * dim_];
            cplx* orow = &out.a_[static_cast<std::size_t>(i) * dim_];
            for (int j = 0; j < dim_; ++j) orow[j] += aik * brow[j];
        }
    }
    return out;
}

CMatrix CMatrix::adjoint() const {
    CMatrix out(dim_);
    for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
}

std::vector<cplx> CMatrix::apply(std::span<const cplx> v) const {
    if (static_cast<int>(v.size()) != dim_)
        throw std::invalid_argument("CMatrix::apply: vector length mismatch");
    std::vector<cplx> out(dim_);
    for (int r = 0; r < dim_; ++r) {
        cplx acc{};
        const cplx* row = &a_[static_cast<std::size_t>(r) * dim_];
        for (int c = 0; c < dim_; ++c) acc += row[c] * v[c];
        out[r] = acc;
    }
    return out;
}

double CMatrix::max_abs_diff(const CMatrix& rhs) const {
    if (dim_ != rhs.dim_) throw std::invalid_argument("CMatrix: dimension mismatch");
    double mx = 0.0;
    for (std::size_t i = 0; i < a_.size(); ++i) mx = std::max(mx, std::abs(a_[i] - rhs.a_[i]));
    return mx;
}

double unitarity_defect(const CMatrix& m) {
    const int d = m.dim();
    double mx = 0.0;
    for (int r = 0; r < d; ++r) {
        for (int c = 0; c < d; ++c) {
            cplx acc{};
            for (int k = 0; k < d; ++k) acc += m(r, k) * std::conj(m(c, k));
            if (r == c) acc -= 1.0;
            mx = std::max(mx, std::abs(acc));
        }
    }
    return mx;
}

}  // namespace ionpair

#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

namespace ionpair {

using cplx = std::complex<double>;

inline constexpr cplx kI{0.0, 1.0};

/// Dense square complex matrix, row-major. Sized for gate construction and
/// the dense reference evolution (dimension <= 2^10 by design).
class CMatrix {
public:
    explicit CMatrix(int dim) : dim_(dim), a_(static_cast<std::size_t>(dim) * dim) {}

    static CMatrix identity(int dim);

    // Builds from rows; throws std::invalid_argument unless square.
    static CMatrix from_rows(std::initializer_list<std::initializer_list<cplx>> rows);

    int dim() const { return dim_; }

    cplx& operator()(int r, int c) { return a_[static_cast<std::size_t>(r) * dim_ + c]; }
    cplx operator()(int r, int c) const { return a_[static_cast<std::size_t>(r) * dim_ + c]; }

    std::span<const cplx> row(int r) const { return {&a_[static_cast<std::size_t>(r) * dim_], static_cast<std::size_t>(dim_)}; }
    std::span<const cplx> data() const { return a_; }

    CMatrix operator*(const CMatrix& rhs) const;
    CMatrix adjoint() const;
    std::vector<cplx> apply(std::span<const cplx> v) const;

    double max_abs_diff(const CMatrix& rhs) const;

private:
    int dim_;
    std::vector<cplx> a_;
};

/// max |(M M^dag - I)_jk|
double unitarity_defect(const CMatrix& m);

}  // namespace ionpair

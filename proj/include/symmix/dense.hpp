#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "symmix/term.hpp"

namespace symmix {

struct PolyConstraint;

// Plain row-major dense complex matrix used by the oracle tests. Sizes stay
// at or below 2^12, so nothing clever is needed.
struct Mat {
    int dim = 0;
    std::vector<std::complex<double>> a;

    Mat() = default;
    explicit Mat(int d) : dim(d), a(static_cast<size_t>(d) * d) {}

    std::complex<double>& at(int r, int c) { return a[static_cast<size_t>(r) * dim + c]; }
    const std::complex<double>& at(int r, int c) const { return a[static_cast<size_t>(r) * dim + c]; }

    static Mat identity(int d);
};

Mat mat_mul(const Mat& A, const Mat& B);
Mat mat_add(const Mat& A, const Mat& B);
Mat mat_sub(const Mat& A, const Mat& B);
Mat mat_scale(const Mat& A, std::complex<double> c);
Mat mat_dagger(const Mat& A);
Mat mat_commutator(const Mat& A, const Mat& B);
double mat_max_abs(const Mat& A);
double mat_max_abs_diff(const Mat& A, const Mat& B);
std::vector<std::complex<double>> mat_apply(const Mat& A, const std::vector<std::complex<double>>& x);

// exp(A) by scaling-and-squaring with a Taylor core; adequate for the small
// Hermitian generators exercised in tests.
Mat mat_exp(const Mat& A);

inline constexpr int kLowerCap = 12;

Mat lower_to_matrix(const Term& t, int n);
Mat lower_to_matrix(const HermitianPair& p, int n);
Mat lower_to_matrix(const TermSum& ts, int n);
Mat lower_to_matrix(const PolyConstraint& c, int n);

} // namespace symmix

#include "symmix/dense.hpp"

#include <cmath>
#include <stdexcept>

#include "symmix/constraint.hpp"

namespace symmix {

Mat Mat::identity(int d) {
    Mat m(d);
    for (int i = 0; i < d; i++) m.at(i, i) = 1.0;
    return m;
}

Mat mat_mul(const Mat& A, const Mat& B) {
    Mat C(A.dim);
    for (int i = 0; i < A.dim; i++)
        for (int k = 0; k < A.dim; k++) {
            auto aik = A.at(i, k);
            if (aik == std::complex<double>(0.0)) continue;
            for (int j = 0; j < A.dim; j++)
                C.at(i, j) += aik * B.at(k, j);
        }
    return C;
}

Mat mat_add(const Mat& A, const Mat& B) {
    Mat C(A.dim);
    for (size_t i = 0; i < C.a.size(); i++) C.a[i] = A.a[i] + B.a[i];
    return C;
}

Mat mat_sub(const Mat& A, const Mat& B) {
    Mat C(A.dim);
    for (size_t i = 0; i < C.a.size(); i++) C.a[i] = A.a[i] - B.a[i];
    return C;
}

Mat mat_scale(const Mat& A, std::complex<double> c) {
    Mat C(A.dim);
    for (size_t i = 0; i < C.a.size(); i++) C.a[i] = A.a[i] * c;
    return C;
}

Mat mat_dagger(const Mat& A) {
    Mat C(A.dim);
    for (int i = 0; i < A.dim; i++)
        for (int j = 0; j < A.dim; j++)
            C.at(i, j) = std::conj(A.at(j, i));
    return C;
}

Mat mat_commutator(const Mat& A, const Mat& B) {
    return mat_sub(mat_mul(A, B), mat_mul(B, A));
}

double mat_max_abs(const Mat& A) {
    double m = 0;
    for (const auto& z : A.a) m = std::max(m, std::abs(z));
    return m;
}

double mat_max_abs_diff(const Mat& A, const Mat& B) {
    double m = 0;
    for (size_t i = 0; i < A.a.size(); i++) m = std::max(m, std::abs(A.a[i] - B.a[i]));
    return m;
}

std::vector<std::complex<double>> mat_apply(const Mat& A, const std::vector<std::complex<double>>& x) {
    std::vector<std::complex<double>> y(A.dim);
    for (int i = 0; i < A.dim; i++) {
        std::complex<double> s = 0;
        for (int j = 0; j < A.dim; j++) s += A.at(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

Mat mat_exp(const Mat& A) {
    double norm = 0;
    for (int i = 0; i < A.dim; i++) {
        double row = 0;
        for (int j = 0; j < A.dim; j++) row += std::abs(A.at(i, j));
        norm = std::max(norm, row);
    }
    int squarings = 0;
    double scaled = norm;
    while (scaled > 0.5) { scaled /= 2; squarings++; }
    Mat X = mat_scale(A, std::pow(0.5, squarings));
    Mat result = Mat::identity(A.dim);
    Mat power = Mat::identity(A.dim);
    double factorial = 1;
    for (int k = 1; k <= 20; k++) {
        power = mat_mul(power, X);
        factorial *= k;
        result = mat_add(result, mat_scale(power, 1.0 / factorial));
    }
    for (int s = 0; s < squarings; s++) result = mat_mul(result, result);
    return result;
}

static void check_cap(int n) {
    if (n > kLowerCap) throw std::invalid_argument("lower_to_matrix: n exceeds cap");
}

Mat lower_to_matrix(const Term& t, int n) {
    check_cap(n);
    Mat m(1 << n);
    for (uint64_t s = 0; s < (1ull << n); s++)
        if (auto out = term_apply(t, s)) m.at(static_cast<int>(*out), static_cast<int>(s)) = 1.0;
    return m;
}

Mat lower_to_matrix(const HermitianPair& p, int n) {
    return lower_to_matrix(pair_to_sum(p), n);
}

Mat lower_to_matrix(const TermSum& ts, int n) {
    check_cap(n);
    Mat m(1 << n);
    for (const auto& e : ts.terms) {
        auto c = e.coeff.to_complex();
        for (uint64_t s = 0; s < (1ull << n); s++)
            if (auto out = term_apply(e.term, s))
                m.at(static_cast<int>(*out), static_cast<int>(s)) += c;
    }
    return m;
}

Mat lower_to_matrix(const PolyConstraint& c, int n) {
    check_cap(n);
    Mat m(1 << n);
    for (uint64_t s = 0; s < (1ull << n); s++)
        m.at(static_cast<int>(s), static_cast<int>(s)) = static_cast<double>(evaluate(c, s));
    return m;
}

} // namespace symmix

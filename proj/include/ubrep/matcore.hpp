#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "ubrep/errors.hpp"

namespace ubrep {

using cplx = std::complex<double>;

/// Numeric tolerances shared by every operation in the library.
/// Tests that need to tighten or relax do it here, in one place.
struct Tolerances {
    double unitarity_defect = 1e-10;   // ‖a*a − 1‖ for "a is unitary"
    double hermitian_defect = 1e-10;   // ‖h − h*‖ for "h is Hermitian"
    double singular_threshold = 1e-12; // sigma_min at or below this is singular
    double jacobi_off = 1e-13;         // off-diagonal mass target for the Jacobi sweep
    double group_closure = 1e-9;       // closure check in averaging
    double recurrence = 1e-11;         // cocycle partial-sum recurrence residual
};

inline constexpr Tolerances kDefaultTol{};

/// Dense square complex matrix, row-major storage.
/// Values are immutable in spirit: every operation returns a new matrix.
class CMat {
public:
    CMat() = default;
    explicit CMat(std::size_t dim) : dim_(dim), a_(dim * dim, cplx{0.0, 0.0}) {}
    CMat(std::size_t dim, std::vector<cplx> entries) : dim_(dim), a_(std::move(entries)) {
        if (a_.size() != dim_ * dim_) throw BadIndex("entry count does not match dimension");
    }
    CMat(std::initializer_list<std::initializer_list<cplx>> rows) {
        dim_ = rows.size();
        a_.reserve(dim_ * dim_);
        for (const auto& r : rows) {
            if (r.size() != dim_) throw BadIndex("ragged initializer");
            a_.insert(a_.end(), r.begin(), r.end());
        }
    }

    static CMat identity(std::size_t dim) {
        CMat m(dim);
        for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t dim() const { return dim_; }
    bool empty() const { return dim_ == 0; }

    cplx& operator()(std::size_t i, std::size_t j) { return a_[i * dim_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * dim_ + j]; }

    const std::vector<cplx>& entries() const { return a_; }

    CMat operator+(const CMat& o) const {
        check_dim(o);
        CMat r(dim_);
        for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] + o.a_[k];
        return r;
    }
    CMat operator-(const CMat& o) const {
        check_dim(o);
        CMat r(dim_);
        for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] - o.a_[k];
        return r;
    }
    CMat operator*(const CMat& o) const {
        check_dim(o);
        CMat r(dim_);
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t k = 0; k < dim_; ++k) {
                const cplx aik = a_[i * dim_ + k];
                if (aik == cplx{}) continue;
                for (std::size_t j = 0; j < dim_; ++j) r.a_[i * dim_ + j] += aik * o.a_[k * dim_ + j];
            }
        return r;
    }
    CMat operator*(cplx s) const {
        CMat r(dim_);
        for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = s * a_[k];
        return r;
    }
    friend CMat operator*(cplx s, const CMat& m) { return m * s; }
    CMat operator-() const { return *this * cplx{-1.0, 0.0}; }

    CMat adjoint() const {
        CMat r(dim_);
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j) r(j, i) = std::conj((*this)(i, j));
        return r;
    }

    cplx trace() const {
        cplx t = 0.0;
        for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
        return t;
    }

    /// Determinant by LU with partial pivoting; exact closed form for dim <= 2.
    cplx det() const;

    double frobenius() const {
        double s = 0.0;
        for (const cplx& z : a_) s += std::norm(z);
        return std::sqrt(s);
    }

    double max_abs_diff(const CMat& o) const {
        check_dim(o);
        double m = 0.0;
        for (std::size_t k = 0; k < a_.size(); ++k) m = std::max(m, std::abs(a_[k] - o.a_[k]));
        return m;
    }

private:
    void check_dim(const CMat& o) const {
        if (dim_ != o.dim_) throw BadIndex("dimension mismatch");
    }
    std::size_t dim_ = 0;
    std::vector<cplx> a_;
};

/// Spectral summary of a matrix: singular values always, eigen data
/// when the input was Hermitian.
struct SpectralData {
    std::vector<double> singular_values;  // descending, nonnegative
    std::vector<double> eigenvalues;      // descending (Hermitian input only)
    CMat eigenvectors;                    // orthonormal columns matching `eigenvalues`
    bool has_eigen = false;
};

namespace detail {

/// (sigma_max^2, sigma_min^2) of a 2x2 matrix given raw entries,
/// via trace/determinant of a*a. The hot path of the whole library.
inline std::pair<double, double> sigma2_2x2(cplx a00, cplx a01, cplx a10, cplx a11) {
    const double t = std::norm(a00) + std::norm(a01) + std::norm(a10) + std::norm(a11);
    const cplx d = a00 * a11 - a01 * a10;
    const double dd = std::norm(d);  // det(a*a) = |det a|^2
    double disc = t * t - 4.0 * dd;
    if (disc < 0.0) disc = 0.0;
    const double root = std::sqrt(disc);
    const double hi = 0.5 * (t + root);
    // sigma_min^2 computed as dd/hi when possible; avoids cancellation in (t-root)/2
    const double lo = hi > 0.0 ? dd / hi : 0.0;
    return {hi, lo};
}

inline double dist_to_unitary_2x2(cplx a00, cplx a01, cplx a10, cplx a11) {
    const auto [hi, lo] = sigma2_2x2(a00, a01, a10, a11);
    return std::max(std::sqrt(hi) - 1.0, 1.0 - std::sqrt(lo));
}

}  // namespace detail

/// Largest singular value (operator norm). Closed form for dim 2,
/// cyclic Jacobi on a*a otherwise.
double op_norm(const CMat& a, const Tolerances& tol = kDefaultTol);

/// All singular values, descending. Product equals |det a| up to tolerance.
SpectralData singular_values(const CMat& a, const Tolerances& tol = kDefaultTol);

/// Eigen decomposition of a Hermitian matrix (descending eigenvalues,
/// orthonormal eigenvector columns). Throws NotHermitian above tolerance.
SpectralData hermitian_eig(const CMat& h, const Tolerances& tol = kDefaultTol);

/// Polar decomposition a = u * p with u unitary and p positive definite.
/// Requires sigma_min above the singularity threshold.
std::pair<CMat, CMat> polar_positive(const CMat& a, const Tolerances& tol = kDefaultTol);

/// Spectral functional calculus h^e for Hermitian positive definite h.
CMat psd_power(const CMat& h, double e, const Tolerances& tol = kDefaultTol);

/// Operator-norm distance to the unitary group: max_i |sigma_i - 1|.
/// For invertible a this equals min over unitaries u of ‖a - u‖, attained
/// at the polar factor; validated against a brute-force oracle in tests.
double dist_to_unitary(const CMat& a, const Tolerances& tol = kDefaultTol);

/// Condition number sigma_max / sigma_min. Throws SingularInput.
double cond(const CMat& a, const Tolerances& tol = kDefaultTol);

/// ‖a*a − 1‖ in operator norm; zero iff a is unitary.
double unitarity_defect(const CMat& a, const Tolerances& tol = kDefaultTol);

/// ‖h − h*‖ in operator norm.
double hermitian_defect(const CMat& h, const Tolerances& tol = kDefaultTol);

/// Inverse (adjugate for dim 2, Gauss-Jordan otherwise); throws SingularInput.
CMat inverse(const CMat& a, const Tolerances& tol = kDefaultTol);

}  // namespace ubrep

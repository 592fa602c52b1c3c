#include "ubrep/matcore.hpp"

#include <cassert>

namespace ubrep {

cplx CMat::det() const {
    const std::size_t n = dim_;
    if (n == 0) return 1.0;
    if (n == 1) return a_[0];
    if (n == 2) return a_[0] * a_[3] - a_[1] * a_[2];
    // LU with partial pivoting
    std::vector<cplx> lu = a_;
    cplx d = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(lu[k * n + k]);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(lu[i * n + k]);
            if (v > best) { best = v; piv = i; }
        }
        if (best == 0.0) return 0.0;
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu[k * n + j], lu[piv * n + j]);
            d = -d;
        }
        d *= lu[k * n + k];
        for (std::size_t i = k + 1; i < n; ++i) {
            const cplx f = lu[i * n + k] / lu[k * n + k];
            for (std::size_t j = k; j < n; ++j) lu[i * n + j] -= f * lu[k * n + j];
        }
    }
    return d;
}

namespace {

// Closed-form eigen decomposition of a 2x2 Hermitian matrix.
void eig_herm_2x2(const CMat& h, std::vector<double>& vals, CMat& vecs) {
    const double p = h(0, 0).real();
    const double r = h(1, 1).real();
    const cplx q = 0.5 * (h(0, 1) + std::conj(h(1, 0)));
    const double mean = 0.5 * (p + r);
    const double disc = std::hypot(0.5 * (p - r), std::abs(q));
    const double lhi = mean + disc;
    const double llo = mean - disc;
    vals = {lhi, llo};
    vecs = CMat::identity(2);
    const double qa = std::abs(q);
    if (qa <= 1e-18 * (std::abs(p) + std::abs(r) + 1.0)) {
        if (p < r) {  // reorder identity frame so column 0 matches lhi
            vecs = CMat{{0.0, 1.0}, {1.0, 0.0}};
        }
        return;
    }
    // (q, lambda - p) is an eigenvector for lambda; the two are orthogonal.
    auto column = [&](double lambda, std::size_t col) {
        cplx v0 = q;
        cplx v1 = cplx{lambda - p, 0.0};
        // fall back to the row-2 form when the vector degenerates
        if (std::norm(v0) + std::norm(v1) < 1e-30 * (qa * qa + 1.0)) {
            v0 = cplx{lambda - r, 0.0};
            v1 = std::conj(q);
        }
        const double nrm = std::sqrt(std::norm(v0) + std::norm(v1));
        vecs(0, col) = v0 / nrm;
        vecs(1, col) = v1 / nrm;
    };
    column(lhi, 0);
    column(llo, 1);
}

// Cyclic complex Jacobi for Hermitian matrices of any small dimension.
void eig_herm_jacobi(const CMat& h, std::vector<double>& vals, CMat& vecs, const Tolerances& tol) {
    const std::size_t n = h.dim();
    CMat a = h;
    // enforce exact Hermitian symmetry of the working copy
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const cplx m = 0.5 * (a(i, j) + std::conj(a(j, i)));
            a(i, j) = m;
            a(j, i) = std::conj(m);
        }
    vecs = CMat::identity(n);
    const double scale = std::max(1.0, a.frobenius());
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += 2.0 * std::norm(a(i, j));
        if (std::sqrt(off) <= tol.jacobi_off * scale) break;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double r = std::abs(apq);
                if (r <= 1e-300) continue;
                const cplx phase = apq / r;  // apq = r * phase
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * r);
                double t;
                if (tau >= 0.0)
                    t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
                else
                    t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cplx ephi = phase;              // e^{i phi}
                const cplx emhi = std::conj(phase);   // e^{-i phi}
                // column update  A <- A J,  J(p,p)=c, J(q,p)=-s emhi, J(p,q)=s, J(q,q)=c emhi
                for (std::size_t i = 0; i < n; ++i) {
                    const cplx aip = a(i, p), aiq = a(i, q);
                    a(i, p) = c * aip - s * emhi * aiq;
                    a(i, q) = s * aip + c * emhi * aiq;
                }
                // row update  A <- J* A
                for (std::size_t j = 0; j < n; ++j) {
                    const cplx apj = a(p, j), aqj = a(q, j);
                    a(p, j) = c * apj - s * ephi * aqj;
                    a(q, j) = s * apj + c * ephi * aqj;
                }
                // accumulate eigenvectors V <- V J
                for (std::size_t i = 0; i < n; ++i) {
                    const cplx vip = vecs(i, p), viq = vecs(i, q);
                    vecs(i, p) = c * vip - s * emhi * viq;
                    vecs(i, q) = s * vip + c * emhi * viq;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
            }
    }
    vals.resize(n);
    for (std::size_t i = 0; i < n; ++i) vals[i] = a(i, i).real();
    // sort descending, permuting eigenvector columns along
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return vals[x] > vals[y]; });
    std::vector<double> sv(n);
    CMat svecs(n);
    for (std::size_t c = 0; c < n; ++c) {
        sv[c] = vals[order[c]];
        for (std::size_t i = 0; i < n; ++i) svecs(i, c) = vecs(i, order[c]);
    }
    vals = std::move(sv);
    vecs = std::move(svecs);
}

void eig_herm_impl(const CMat& h, std::vector<double>& vals, CMat& vecs, const Tolerances& tol) {
    if (h.dim() == 2)
        eig_herm_2x2(h, vals, vecs);
    else
        eig_herm_jacobi(h, vals, vecs, tol);
}

CMat from_spectrum(const CMat& vecs, const std::vector<double>& vals) {
    const std::size_t n = vecs.dim();
    CMat r(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            cplx s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += vecs(i, k) * vals[k] * std::conj(vecs(j, k));
            r(i, j) = s;
        }
    return r;
}

}  // namespace

double op_norm(const CMat& a, const Tolerances& tol) {
    if (a.dim() == 0) return 0.0;
    if (a.dim() == 2) {
        const auto [hi, lo] = detail::sigma2_2x2(a(0, 0), a(0, 1), a(1, 0), a(1, 1));
        (void)lo;
        return std::sqrt(hi);
    }
    return singular_values(a, tol).singular_values.front();
}

SpectralData singular_values(const CMat& a, const Tolerances& tol) {
    SpectralData out;
    const std::size_t n = a.dim();
    if (n == 2) {
        const auto [hi, lo] = detail::sigma2_2x2(a(0, 0), a(0, 1), a(1, 0), a(1, 1));
        out.singular_values = {std::sqrt(hi), std::sqrt(lo)};
        return out;
    }
    const CMat ata = a.adjoint() * a;
    std::vector<double> vals;
    CMat vecs;
    eig_herm_impl(ata, vals, vecs, tol);
    out.singular_values.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.singular_values[i] = std::sqrt(std::max(0.0, vals[i]));
    return out;
}

SpectralData hermitian_eig(const CMat& h, const Tolerances& tol) {
    const double defect = hermitian_defect(h, tol);
    if (defect > tol.hermitian_defect) throw NotHermitian(defect);
    SpectralData out;
    eig_herm_impl(h, out.eigenvalues, out.eigenvectors, tol);
    out.has_eigen = true;
    out.singular_values.resize(out.eigenvalues.size());
    for (std::size_t i = 0; i < out.eigenvalues.size(); ++i)
        out.singular_values[i] = std::abs(out.eigenvalues[i]);
    std::sort(out.singular_values.rbegin(), out.singular_values.rend());
    return out;
}

std::pair<CMat, CMat> polar_positive(const CMat& a, const Tolerances& tol) {
    const CMat ata = a.adjoint() * a;
    std::vector<double> vals;
    CMat vecs;
    eig_herm_impl(ata, vals, vecs, tol);
    const double smin2 = vals.back();
    if (!(smin2 > tol.singular_threshold * tol.singular_threshold)) throw SingularInput();
    std::vector<double> roots(vals.size()), invroots(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i) {
        roots[i] = std::sqrt(vals[i]);
        invroots[i] = 1.0 / roots[i];
    }
    CMat p = from_spectrum(vecs, roots);
    CMat u = a * from_spectrum(vecs, invroots);
    // one Newton-Schulz polish step keeps u unitary to ~1e-15 even for
    // badly conditioned inputs
    const CMat eye = CMat::identity(a.dim());
    u = 0.5 * (u * (3.0 * eye - u.adjoint() * u));
    return {u, p};
}

CMat psd_power(const CMat& h, double e, const Tolerances& tol) {
    const double defect = hermitian_defect(h, tol);
    if (defect > tol.hermitian_defect) throw NotHermitian(defect);
    std::vector<double> vals;
    CMat vecs;
    eig_herm_impl(h, vals, vecs, tol);
    for (double v : vals)
        if (!(v > tol.singular_threshold)) throw NotPositive(v);
    std::vector<double> powered(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i) powered[i] = std::pow(vals[i], e);
    return from_spectrum(vecs, powered);
}

double dist_to_unitary(const CMat& a, const Tolerances& tol) {
    if (a.dim() == 2) return detail::dist_to_unitary_2x2(a(0, 0), a(0, 1), a(1, 0), a(1, 1));
    const auto sv = singular_values(a, tol).singular_values;
    double d = 0.0;
    for (double s : sv) d = std::max(d, std::abs(s - 1.0));
    return d;
}

double cond(const CMat& a, const Tolerances& tol) {
    const auto sv = singular_values(a, tol).singular_values;
    const double smin = sv.back();
    if (!(smin > tol.singular_threshold)) throw SingularInput();
    return sv.front() / smin;
}

double unitarity_defect(const CMat& a, const Tolerances& tol) {
    return op_norm(a.adjoint() * a - CMat::identity(a.dim()), tol);
}

double hermitian_defect(const CMat& h, const Tolerances& tol) {
    return op_norm(h - h.adjoint(), tol);
}

CMat inverse(const CMat& a, const Tolerances& tol) {
    const std::size_t n = a.dim();
    if (n == 2) {
        const cplx d = a.det();
        if (std::abs(d) <= tol.singular_threshold * tol.singular_threshold) throw SingularInput();
        CMat r(2);
        r(0, 0) = a(1, 1) / d;
        r(0, 1) = -a(0, 1) / d;
        r(1, 0) = -a(1, 0) / d;
        r(1, 1) = a(0, 0) / d;
        return r;
    }
    // Gauss-Jordan with partial pivoting
    std::vector<cplx> m(n * 2 * n, cplx{});
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m[i * 2 * n + j] = a(i, j);
        m[i * 2 * n + n + i] = 1.0;
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(m[k * 2 * n + k]);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(m[i * 2 * n + k]);
            if (v > best) { best = v; piv = i; }
        }
        if (best <= tol.singular_threshold) throw SingularInput();
        if (piv != k)
            for (std::size_t j = 0; j < 2 * n; ++j) std::swap(m[k * 2 * n + j], m[piv * 2 * n + j]);
        const cplx pivval = m[k * 2 * n + k];
        for (std::size_t j = 0; j < 2 * n; ++j) m[k * 2 * n + j] /= pivval;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k) continue;
            const cplx f = m[i * 2 * n + k];
            if (f == cplx{}) continue;
            for (std::size_t j = 0; j < 2 * n; ++j) m[i * 2 * n + j] -= f * m[k * 2 * n + j];
        }
    }
    CMat r(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r(i, j) = m[i * 2 * n + n + j];
    return r;
}

}  // namespace ubrep

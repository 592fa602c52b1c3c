#include "ubrep/unitarize.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ubrep {

std::string SimilarityCertificate::to_report() const {
    std::ostringstream os;
    os.precision(17);
    os << "cond=" << cond << "\n";
    os << "defect=" << max_unitarity_defect << "\n";
    os << "norm_bound=" << norm_bound_pi << "\n";
    os << "flagged=";
    for (std::size_t i = 0; i < flagged.size(); ++i) {
        if (i) os << ',';
        os << flagged[i];
    }
    os << "\n";
    return os.str();
}

std::pair<CMat, SimilarityCertificate> average_finite_group(const std::vector<CMat>& images,
                                                            const Tolerances& tol) {
    if (images.empty()) throw BadParameter("image list must be nonempty");
    const std::size_t dim = images.front().dim();
    double norm_pi = 0.0;
    for (const CMat& g : images) {
        if (g.dim() != dim) throw BadIndex("mixed dimensions in image list");
        const auto sv = singular_values(g, tol).singular_values;
        if (!(sv.back() > tol.singular_threshold)) throw SingularInput();
        norm_pi = std::max(norm_pi, sv.front());
    }
    // closure check with witness
    for (std::size_t i = 0; i < images.size(); ++i)
        for (std::size_t j = 0; j < images.size(); ++j) {
            const CMat p = images[i] * images[j];
            double best = 1e300;
            for (const CMat& g : images) best = std::min(best, op_norm(p - g, tol));
            if (best > tol.group_closure) throw NotAGroup(i, j, best);
        }

    CMat h(dim);
    for (const CMat& g : images) h = h + g * g.adjoint();
    h = h * cplx{1.0 / static_cast<double>(images.size()), 0.0};

    const CMat v = psd_power(h, -0.5, tol);
    const CMat vinv = psd_power(h, 0.5, tol);

    SimilarityCertificate cert;
    cert.v = v;
    cert.cond = cond(v, tol);
    cert.norm_bound_pi = norm_pi;
    for (const CMat& g : images)
        cert.max_unitarity_defect =
            std::max(cert.max_unitarity_defect, unitarity_defect(v * g * vinv, tol));
    return {h, cert};
}

FolnerResult folner_average(const LatticeRep& rep, int box_radius,
                            const std::vector<std::vector<int>>& generators, const Tolerances& tol) {
    if (rep.rank < 1 || rep.rank > 2) throw BadParameter("lattice rank must be 1 or 2");
    if (box_radius < 1) throw BadParameter("box radius must be positive");
    const int d = rep.rank;

    auto add = [d](const std::vector<int>& a, const std::vector<int>& b) {
        std::vector<int> r(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) r[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i)] + b[static_cast<std::size_t>(i)];
        return r;
    };

    // multiplicativity spot check on a few deterministic word pairs
    {
        std::vector<std::vector<int>> probes;
        const int hi = std::max(1, box_radius / 2);
        if (d == 1)
            probes = {{0}, {1}, {2}, {hi}};
        else
            probes = {{0, 0}, {1, 0}, {0, 1}, {hi, 1}};
        for (const auto& a : probes)
            for (const auto& b : probes) {
                const CMat lhs = rep.eval(add(a, b));
                const CMat rhs = rep.eval(a) * rep.eval(b);
                if (op_norm(lhs - rhs, tol) > tol.group_closure * (1.0 + op_norm(lhs, tol)))
                    throw NotMultiplicative();
            }
    }

    std::vector<std::vector<int>> box;
    if (d == 1) {
        for (int x = 0; x < box_radius; ++x) box.push_back({x});
    } else {
        for (int x = 0; x < box_radius; ++x)
            for (int y = 0; y < box_radius; ++y) box.push_back({x, y});
    }

    FolnerResult out;
    std::vector<CMat> box_images;
    box_images.reserve(box.size());
    double norm_pi = 0.0;
    for (const auto& t : box) {
        box_images.push_back(rep.eval(t));
        norm_pi = std::max(norm_pi, op_norm(box_images.back(), tol));
    }
    const std::size_t dim = box_images.front().dim();
    CMat h(dim);
    for (const CMat& g : box_images) h = h + g * g.adjoint();
    h = h * cplx{1.0 / static_cast<double>(box.size()), 0.0};
    out.h = h;

    for (const auto& s : generators) {
        if (static_cast<int>(s.size()) != d) throw BadParameter("generator rank mismatch");
        // exact symmetric-difference ratio of the box against its translate
        double inter = 1.0;
        for (int i = 0; i < d; ++i)
            inter *= static_cast<double>(std::max(0, box_radius - std::abs(s[static_cast<std::size_t>(i)])));
        const double volume = std::pow(static_cast<double>(box_radius), d);
        const double ratio = 2.0 * (1.0 - inter / volume);

        const CMat pis = rep.eval(s);
        double norm_here = norm_pi;
        for (const auto& t : box) norm_here = std::max(norm_here, op_norm(rep.eval(add(s, t)), tol));
        const CMat diff = pis * h * pis.adjoint() - h;
        out.defects.push_back(op_norm(diff, tol));
        out.defect_bounds.push_back(ratio * norm_here * norm_here);
        out.norm_bound_pi = std::max(out.norm_bound_pi, norm_here);
        if (out.boundary_ratio == 0.0) out.boundary_ratio = ratio;
    }
    if (generators.empty()) out.norm_bound_pi = std::max(1.0, norm_pi);
    return out;
}

bool generates_bounded_group(const std::vector<CMat>& gens, std::vector<CMat>* closure_out,
                             const Tolerances& tol) {
    constexpr double kNormCap = 1e6;
    constexpr int kIterCap = 64;
    constexpr std::size_t kSizeCap = 256;
    if (gens.empty()) {
        if (closure_out) *closure_out = {};
        return true;
    }
    const std::size_t dim = gens.front().dim();

    // fast probe: repeated squaring of pair products detects polynomial or
    // exponential norm growth within a few doublings
    for (const CMat& a : gens)
        for (const CMat& b : gens) {
            CMat x = a * b;
            for (int r = 0; r < kIterCap; ++r) {
                const double n = op_norm(x, tol);
                if (n > kNormCap) return false;
                if (n < 1e3) {
                    // squaring stops being informative once the norm settles
                    if (r > 20) break;
                }
                x = x * x;
            }
        }

    // explicit closure growth
    std::vector<CMat> closure;
    auto member = [&](const CMat& m) {
        for (const CMat& g : closure)
            if (op_norm(m - g, tol) <= tol.group_closure * (1.0 + op_norm(m, tol))) return true;
        return false;
    };
    closure.push_back(CMat::identity(dim));
    for (const CMat& g : gens)
        if (!member(g)) closure.push_back(g);
    for (int round = 0; round < kIterCap; ++round) {
        std::vector<CMat> fresh;
        for (const CMat& a : closure)
            for (const CMat& b : closure) {
                const CMat p = a * b;
                if (op_norm(p, tol) > kNormCap) return false;
                if (!member(p)) {
                    bool dup = false;
                    for (const CMat& f : fresh)
                        if (op_norm(p - f, tol) <= tol.group_closure * (1.0 + op_norm(p, tol))) {
                            dup = true;
                            break;
                        }
                    if (!dup) fresh.push_back(p);
                }
            }
        if (fresh.empty()) {
            if (closure_out) *closure_out = closure;
            return true;
        }
        for (CMat& m : fresh) closure.push_back(std::move(m));
        if (closure.size() > kSizeCap) return false;
    }
    return false;
}

std::pair<std::vector<CMat>, SimilarityCertificate>
coordinatewise_unitarize(const RepresentationContext& ctx, const std::vector<GroupWord>& words,
                         const Tolerances& tol) {
    const int window = ctx.window;
    std::vector<char> has0(static_cast<std::size_t>(window), 0), has1(static_cast<std::size_t>(window), 0);
    for (const GroupWord& w : words)
        for (const auto& [i, k] : w.support)
            for (int n : ctx.coords_of(i, k)) (k == 0 ? has0 : has1)[static_cast<std::size_t>(n)] = 1;

    // one averaging run per kind; coordinates share it
    auto single = [&](const CMat& s) {
        auto [h, cert] = average_finite_group({CMat::identity(2), s}, tol);
        (void)h;
        return cert;
    };
    const SimilarityCertificate cert0 = single(ctx.s0);
    const SimilarityCertificate cert1 = single(ctx.s1);

    bool pair_bounded = false;
    std::vector<CMat> pair_closure;
    SimilarityCertificate pair_cert;
    bool pair_checked = false;

    std::vector<CMat> v(static_cast<std::size_t>(window), CMat::identity(2));
    SimilarityCertificate cert;
    cert.norm_bound_pi = std::max(op_norm(ctx.s0, tol), op_norm(ctx.s1, tol));
    for (int n = 0; n < window; ++n) {
        const bool b0 = has0[static_cast<std::size_t>(n)], b1 = has1[static_cast<std::size_t>(n)];
        if (!b0 && !b1) continue;
        if (b0 && b1) {
            if (!pair_checked) {
                pair_checked = true;
                pair_bounded = generates_bounded_group({ctx.s0, ctx.s1}, &pair_closure, tol);
                if (pair_bounded) {
                    auto [h, c] = average_finite_group(pair_closure, tol);
                    (void)h;
                    pair_cert = c;
                }
            }
            if (!pair_bounded) {
                cert.flagged.push_back(n);
                continue;
            }
            v[static_cast<std::size_t>(n)] = pair_cert.v;
            cert.cond = std::max(cert.cond, pair_cert.cond);
            cert.max_unitarity_defect = std::max(cert.max_unitarity_defect, pair_cert.max_unitarity_defect);
            continue;
        }
        const SimilarityCertificate& c = b0 ? cert0 : cert1;
        v[static_cast<std::size_t>(n)] = c.v;
        cert.cond = std::max(cert.cond, c.cond);
        cert.max_unitarity_defect = std::max(cert.max_unitarity_defect, c.max_unitarity_defect);
    }
    cert.v_coords = v;
    return {v, cert};
}

MatrixSequence positive_clamped_lift(const std::vector<CMat>& targets, double lower, double upper,
                                     const Tolerances& tol) {
    if (!(lower > 0.0) || !(lower <= upper)) throw BadBounds();
    MatrixSequence out;
    out.window = static_cast<int>(targets.size());
    out.coords.reserve(targets.size());
    for (const CMat& m : targets) {
        SpectralData eig = hermitian_eig(m, tol);
        std::vector<double> clamped = eig.eigenvalues;
        for (double& l : clamped) l = std::clamp(l, lower, upper);
        const std::size_t d = m.dim();
        CMat r(d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                cplx s = 0.0;
                for (std::size_t k = 0; k < d; ++k)
                    s += eig.eigenvectors(i, k) * clamped[k] * std::conj(eig.eigenvectors(j, k));
                r(i, j) = s;
            }
        out.coords.push_back(std::move(r));
    }
    return out;
}

double span_distance(const CMat& target, const std::vector<CMat>& basis) {
    const std::size_t k = basis.size();
    if (k == 0) return std::sqrt(std::max(0.0, target.frobenius() * target.frobenius()));
    auto fdot = [](const CMat& a, const CMat& b) {  // <a, b> = sum conj(a) b
        cplx s = 0.0;
        for (std::size_t i = 0; i < a.entries().size(); ++i) s += std::conj(a.entries()[i]) * b.entries()[i];
        return s;
    };
    CMat gram(k);
    std::vector<cplx> rhs(k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) gram(i, j) = fdot(basis[i], basis[j]);
        rhs[i] = fdot(basis[i], target);
    }
    // pseudo-inverse through the eigen decomposition of the Gram matrix
    SpectralData eig = hermitian_eig(gram);
    const double cutoff = 1e-12 * std::max(1.0, eig.eigenvalues.front());
    std::vector<cplx> coeff(k, cplx{});
    for (std::size_t mode = 0; mode < k; ++mode) {
        if (eig.eigenvalues[mode] <= cutoff) continue;
        cplx proj = 0.0;
        for (std::size_t i = 0; i < k; ++i) proj += std::conj(eig.eigenvectors(i, mode)) * rhs[i];
        proj /= eig.eigenvalues[mode];
        for (std::size_t i = 0; i < k; ++i) coeff[i] += eig.eigenvectors(i, mode) * proj;
    }
    cplx reduction = 0.0;
    for (std::size_t i = 0; i < k; ++i) reduction += std::conj(rhs[i]) * coeff[i];
    const double t2 = target.frobenius() * target.frobenius();
    return std::sqrt(std::max(0.0, t2 - reduction.real()));
}

double selfadjointness_defect(const std::vector<CMat>& v, const std::vector<MatrixSequence>& elements,
                              const Tolerances& tol) {
    if (elements.empty()) return 0.0;
    const int window = elements.front().window;
    for (const auto& e : elements)
        if (e.window != window) throw WindowMismatch();
    if (static_cast<int>(v.size()) != window) throw WindowMismatch("v array does not match window");

    std::vector<CMat> vinv;
    vinv.reserve(v.size());
    for (const CMat& m : v) vinv.push_back(inverse(m, tol));  // throws SingularInput

    double worst = 0.0;
    for (int n = 0; n < window; ++n) {
        std::vector<CMat> conj_basis;
        conj_basis.reserve(elements.size());
        for (const auto& e : elements)
            conj_basis.push_back(v[static_cast<std::size_t>(n)] * e.at(n) * vinv[static_cast<std::size_t>(n)]);
        for (const CMat& b : conj_basis)
            worst = std::max(worst, span_distance(b.adjoint(), conj_basis));
    }
    return worst;
}

}  // namespace ubrep

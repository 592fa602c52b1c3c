#include "ubrep/rep.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace ubrep {

RepresentationContext::RepresentationContext(FiniteSetFamily f0, FiniteSetFamily f1, CMat s0_in,
                                             CMat s1_in, int window_in, const Tolerances& tol)
    : family0(std::move(f0)), family1(std::move(f1)), s0(std::move(s0_in)), s1(std::move(s1_in)),
      window(window_in) {
    if (window < 1) throw BadParameter("window must be positive");
    for (const CMat* s : {&s0, &s1}) {
        if (s->dim() != 2) throw BadParameter("generator matrices must be 2x2");
        const CMat sq = (*s) * (*s);
        if (sq.max_abs_diff(CMat::identity(2)) > 1e-12)
            throw BadParameter("generator matrix must square to the identity");
    }
}

std::vector<int> RepresentationContext::coords_of(int i, int k) const {
    const FiniteSetFamily& fam = family(k);
    if (i < 0 || static_cast<std::size_t>(i) >= fam.sets.size()) throw BadIndex("no such set in family");
    std::vector<int> out;
    for (int e : fam.sets[static_cast<std::size_t>(i)].elements) {
        if (e >= window) break;
        out.push_back(e);
    }
    return out;
}

MatrixSequence generator(const RepresentationContext& ctx, int i, int k) {
    MatrixSequence ms = MatrixSequence::identity(ctx.window);
    for (int n : ctx.coords_of(i, k)) ms.at(n) = ctx.s_matrix(k);
    return ms;
}

Represented represent(const RepresentationContext& ctx, const GroupWord& w) {
    Represented out;
    out.seq = MatrixSequence::identity(ctx.window);
    std::vector<int> active_count(static_cast<std::size_t>(ctx.window), 0);
    // support iterates in lexicographic (i, k) order already
    for (const auto& [i, k] : w.support) {
        const CMat& s = ctx.s_matrix(k);
        for (int n : ctx.coords_of(i, k)) {
            out.seq.at(n) = out.seq.at(n) * s;
            ++active_count[static_cast<std::size_t>(n)];
        }
    }
    for (int n = 0; n < ctx.window; ++n)
        if (active_count[static_cast<std::size_t>(n)] >= 2) out.overlap.insert(n);
    return out;
}

double uniform_norm_mod_finite(const MatrixSequence& ms, const std::set<int>& ignore) {
    double best = 0.0;
    for (int n = 0; n < ms.window; ++n) {
        if (ignore.count(n)) continue;
        best = std::max(best, op_norm(ms.at(n)));
    }
    return best;
}

std::optional<int> mod_finite_equal(const MatrixSequence& a, const MatrixSequence& b, double tol) {
    if (a.window != b.window) throw WindowMismatch();
    for (int n = a.window - 1; n >= 0; --n) {
        if (!(op_norm(a.at(n) - b.at(n)) < tol)) {
            if (n == a.window - 1) return std::nullopt;  // deviation persists to the window edge
            return n + 1;
        }
    }
    return 0;
}

SpanElement span_element(const RepresentationContext& ctx,
                         const std::vector<std::pair<cplx, GroupWord>>& terms,
                         const std::map<int, CMat>& perturbation) {
    SpanElement out;
    out.seq.window = ctx.window;
    out.seq.coords.assign(static_cast<std::size_t>(ctx.window), CMat(2));
    for (const auto& [coeff, word] : terms) {
        Represented r = represent(ctx, word);
        for (int n = 0; n < ctx.window; ++n) out.seq.at(n) = out.seq.at(n) + coeff * r.seq.at(n);
        out.exceptional.insert(r.overlap.begin(), r.overlap.end());
    }
    for (const auto& [n, m] : perturbation) {
        if (n < 0 || n >= ctx.window) throw BadIndex("perturbation coordinate outside window");
        if (m.dim() != 2) throw BadParameter("perturbation coordinates must be 2x2");
        out.seq.at(n) = out.seq.at(n) + m;
        out.exceptional.insert(n);
    }
    return out;
}

// --- serialization ---------------------------------------------------------

void write_mseq(std::ostream& os, const MatrixSequence& ms) {
    os << "mseq v1 N=" << ms.window << "\n";
    os << std::setprecision(17);
    for (int n = 0; n < ms.window; ++n) {
        const CMat& m = ms.at(n);
        bool first = true;
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) {
                if (!first) os << ' ';
                os << m(i, j).real() << ' ' << m(i, j).imag();
                first = false;
            }
        os << "\n";
    }
}

MatrixSequence read_mseq(std::istream& is) {
    std::string header;
    if (!std::getline(is, header)) throw ParseError("missing mseq header");
    std::istringstream hs(header);
    std::string word, version, nfield;
    hs >> word >> version >> nfield;
    if (word != "mseq" || version != "v1" || nfield.rfind("N=", 0) != 0)
        throw ParseError("bad mseq header: " + header);
    const int window = std::stoi(nfield.substr(2));
    if (window < 0) throw ParseError("negative window");
    MatrixSequence ms;
    ms.window = window;
    ms.coords.reserve(static_cast<std::size_t>(window));
    for (int n = 0; n < window; ++n) {
        std::string line;
        if (!std::getline(is, line)) throw ParseError("truncated mseq file");
        std::istringstream ls(line);
        CMat m(2);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) {
                double re, im;
                if (!(ls >> re >> im)) throw ParseError("bad mseq coordinate line: " + line);
                m(i, j) = cplx{re, im};
            }
        double extra;
        if (ls >> extra) throw ParseError("trailing data on mseq line: " + line);
        ms.coords.push_back(std::move(m));
    }
    return ms;
}

std::string mseq_to_string(const MatrixSequence& ms) {
    std::ostringstream os;
    write_mseq(os, ms);
    return os.str();
}

MatrixSequence mseq_from_string(const std::string& text) {
    std::istringstream is(text);
    return read_mseq(is);
}

}  // namespace ubrep

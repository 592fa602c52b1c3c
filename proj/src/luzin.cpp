#include "ubrep/luzin.hpp"

#include <algorithm>
#include <iostream>
#include <random>
#include <sstream>
#include <unordered_map>

namespace ubrep {

std::vector<int> set_intersection_sorted(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::vector<int> set_difference_sorted(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

FiniteSetFamily seed_family(int count, int universe_bound) {
    if (count < 1) throw BadParameter("seed count must be positive");
    if (universe_bound < 1) throw BadParameter("universe bound must be positive");
    FiniteSetFamily fam;
    fam.universe_bound = universe_bound;
    for (int i = 0; i < count; ++i) {
        FiniteSetFamily::Set s;
        s.tag = FiniteSetFamily::Tag::seed;
        s.global_index = i;
        const long long step = 1LL << i;
        for (long long e = step; e < universe_bound; e += 2 * step) s.elements.push_back(static_cast<int>(e));
        if (s.elements.empty())
            throw UniverseTooSmall("seed set " + std::to_string(i) + " is empty below N=" +
                                   std::to_string(universe_bound));
        fam.sets.push_back(std::move(s));
    }
    return fam;
}

FiniteSetFamily diagonal_extend(const FiniteSetFamily& family, const std::vector<int>& order, int T) {
    if (family.sets.empty()) throw BadParameter("family must be nonempty");
    if (T < 1 || static_cast<std::size_t>(T) > order.size())
        throw BadParameter("T must satisfy 1 <= T <= |order|");
    for (int idx : order)
        if (idx < 0 || static_cast<std::size_t>(idx) >= family.sets.size())
            throw BadIndex("order refers to a missing set");

    const int n_univ = family.universe_bound;
    std::vector<char> in_union(n_univ, 0);

    FiniteSetFamily::Set fresh;
    fresh.tag = FiniteSetFamily::Tag::diagonal;
    int max_global = -1;
    for (const auto& s : family.sets) max_global = std::max(max_global, s.global_index);
    fresh.global_index = max_global + 1;

    int k_prev = 0;
    fresh.elements.push_back(0);
    fresh.k_sequence.push_back(0);
    fresh.enumeration.push_back(family.sets[static_cast<std::size_t>(order[0])].global_index);

    for (int n = 1; n < T; ++n) {
        const auto& prev = family.sets[static_cast<std::size_t>(order[n - 1])].elements;
        for (int e : prev) in_union[static_cast<std::size_t>(e)] = 1;
        const auto& fn = family.sets[static_cast<std::size_t>(order[n])];
        int chosen = -1;
        for (int e : fn.elements) {
            if (e <= k_prev) continue;
            if (!in_union[static_cast<std::size_t>(e)]) { chosen = e; break; }
        }
        if (chosen < 0)
            throw RecursionExhausted(n, "no admissible minimum in set at enumeration position " +
                                            std::to_string(n));
        fresh.elements.push_back(chosen);
        fresh.k_sequence.push_back(chosen);
        fresh.enumeration.push_back(fn.global_index);
        k_prev = chosen;
    }

    FiniteSetFamily out = family;
    out.sets.push_back(std::move(fresh));
    return out;
}

FiniteSetFamily build_luzin_family(int stages, int universe_bound, int seed_count, std::uint64_t rng_seed) {
    if (stages < 0) throw BadParameter("stages must be nonnegative");
    FiniteSetFamily fam = seed_family(seed_count, universe_bound);
    std::mt19937_64 gen(rng_seed);
    for (int s = 0; s < stages; ++s) {
        const int m = static_cast<int>(fam.sets.size());
        std::vector<int> order(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) order[static_cast<std::size_t>(i)] = i;
        for (int i = m - 1; i >= 1; --i) {
            const int j = static_cast<int>(gen() % static_cast<std::uint64_t>(i + 1));
            std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
        }
        // lead with a set containing 0 when one exists, so every earlier set
        // meets the new diagonal (position 0 is otherwise never revisited)
        for (std::size_t p = 0; p < order.size(); ++p) {
            const auto& el = fam.sets[static_cast<std::size_t>(order[p])].elements;
            if (!el.empty() && el.front() == 0) {
                std::rotate(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(p),
                            order.begin() + static_cast<std::ptrdiff_t>(p) + 1);
                break;
            }
        }
        try {
            fam = diagonal_extend(fam, order, m);
        } catch (const RecursionExhausted& e) {
            throw RecursionExhausted(e.position, "stage " + std::to_string(s) + ": " + e.what());
        }
    }
    return fam;
}

namespace {

bool subset_of_initial_segment(const std::vector<int>& v, int m) {
    return v.empty() || v.back() < m;
}

}  // namespace

GrowthReport growth_bound_check(const FiniteSetFamily& family, int m) {
    GrowthReport rep;
    rep.m = m;
    for (const auto& si : family.sets) {
        if (si.tag != FiniteSetFamily::Tag::diagonal) continue;
        int count = 0;
        std::vector<int> witnesses;
        for (const auto& sj : family.sets) {
            if (sj.global_index >= si.global_index) continue;
            const auto inter = set_intersection_sorted(sj.elements, si.elements);
            if (subset_of_initial_segment(inter, m)) {
                ++count;
                witnesses.push_back(sj.global_index);
            }
        }
        if (count > rep.max_count) {
            rep.max_count = count;
            rep.argmax_index = si.global_index;
        }
        bool ok;
        if (m >= 1) {
            ok = count <= m;
        } else {
            // at m = 0 only the stage's first-enumerated set can be disjoint
            // from the diagonal (k(0) = 0 need not lie in it); every later
            // F_n contains k(n)
            ok = count <= 1;
            if (ok && count == 1 && !si.enumeration.empty()) ok = witnesses.front() == si.enumeration.front();
        }
        if (!ok) {
            rep.bound_holds = false;
            rep.violations.push_back({si.global_index, count, witnesses});
        }
    }
    return rep;
}

SeparationReport separation_audit(const FiniteSetFamily& x_sets, const FiniteSetFamily& y_sets,
                                  const std::vector<int>& separator, int m) {
    std::vector<int> f = separator;
    std::sort(f.begin(), f.end());
    f.erase(std::unique(f.begin(), f.end()), f.end());

    std::unordered_map<int, const FiniteSetFamily::Set*> seen;
    for (const auto& s : x_sets.sets) {
        if (!seen.emplace(s.global_index, &s).second) throw IndexMismatch();
    }
    for (const auto& s : y_sets.sets) {
        if (!seen.emplace(s.global_index, &s).second) throw IndexMismatch();
    }

    SeparationReport rep;
    for (const auto& s : x_sets.sets)
        if (subset_of_initial_segment(set_difference_sorted(s.elements, f), m))
            rep.x_prime.push_back(s.global_index);
    for (const auto& s : y_sets.sets)
        if (subset_of_initial_segment(set_intersection_sorted(s.elements, f), m))
            rep.y_prime.push_back(s.global_index);
    std::sort(rep.x_prime.begin(), rep.x_prime.end());
    std::sort(rep.y_prime.begin(), rep.y_prime.end());

    auto find_set = [&](const FiniteSetFamily& fam, int g) -> const FiniteSetFamily::Set& {
        for (const auto& s : fam.sets)
            if (s.global_index == g) return s;
        throw IndexMismatch();
    };

    for (int i : rep.y_prime) {
        SeparationReport::Entry entry;
        entry.i = i;
        const auto& ei = find_set(y_sets, i);
        const auto ei_in_f = set_intersection_sorted(ei.elements, f);
        for (int j : rep.x_prime) {
            if (j >= i) continue;
            entry.predecessors.push_back(j);
            const auto& ej = find_set(x_sets, j);
            const auto inter = set_intersection_sorted(ej.elements, ei.elements);
            const auto ej_off_f = set_difference_sorted(ej.elements, f);
            std::vector<int> cover = ej_off_f;
            cover.insert(cover.end(), ei_in_f.begin(), ei_in_f.end());
            std::sort(cover.begin(), cover.end());
            const bool inside_cover = std::includes(cover.begin(), cover.end(), inter.begin(), inter.end());
            const bool below_m = subset_of_initial_segment(inter, m);
            if (!(inside_cover && below_m)) entry.containment_ok = false;
        }
        entry.exceeds_growth_bound = static_cast<int>(entry.predecessors.size()) > m;
        rep.max_predecessor_count =
            std::max(rep.max_predecessor_count, static_cast<int>(entry.predecessors.size()));
        if (entry.exceeds_growth_bound) rep.refutation_found = true;
        rep.entries.push_back(std::move(entry));
    }
    return rep;
}

std::pair<FiniteSetFamily, FiniteSetFamily> split_into_pair(const FiniteSetFamily& family) {
    if (family.sets.size() < 2) throw BadParameter("family must have at least 2 sets");
    FiniteSetFamily even, odd;
    even.universe_bound = family.universe_bound;
    odd.universe_bound = family.universe_bound;
    for (std::size_t p = 0; p < family.sets.size(); ++p) {
        if (p % 2 == 0)
            even.sets.push_back(family.sets[p]);
        else
            odd.sets.push_back(family.sets[p]);
    }
    return {even, odd};
}

int max_pairwise_intersection(const FiniteSetFamily& family) {
    int best = 0;
    for (std::size_t i = 0; i < family.sets.size(); ++i)
        for (std::size_t j = i + 1; j < family.sets.size(); ++j)
            best = std::max(best, static_cast<int>(set_intersection_sorted(family.sets[i].elements,
                                                                           family.sets[j].elements)
                                                       .size()));
    return best;
}

DiagonalAudit audit_diagonals(const FiniteSetFamily& family) {
    DiagonalAudit audit;
    std::unordered_map<int, const FiniteSetFamily::Set*> by_global;
    for (const auto& s : family.sets) by_global[s.global_index] = &s;
    for (const auto& s : family.sets) {
        if (s.tag != FiniteSetFamily::Tag::diagonal || s.k_sequence.empty()) continue;
        for (std::size_t n = 1; n < s.k_sequence.size(); ++n)
            if (s.k_sequence[n] <= s.k_sequence[n - 1]) audit.k_strictly_increasing = false;
        for (std::size_t n = 0; n < s.enumeration.size(); ++n) {
            const auto it = by_global.find(s.enumeration[n]);
            if (it == by_global.end()) continue;
            const int isz =
                static_cast<int>(set_intersection_sorted(s.elements, it->second->elements).size());
            audit.worst_intersection = std::max(audit.worst_intersection, isz);
            if (isz > static_cast<int>(n) + 1) audit.stage_intersection_bound = false;
        }
    }
    return audit;
}

// --- serialization ---------------------------------------------------------

void write_family(std::ostream& os, const FiniteSetFamily& family) {
    os << "luzin v1 N=" << family.universe_bound << " sets=" << family.sets.size() << "\n";
    for (const auto& s : family.sets) {
        os << (s.tag == FiniteSetFamily::Tag::seed ? "seed" : "diagonal") << ' ' << s.global_index << ':';
        for (int e : s.elements) os << ' ' << e;
        os << "\n";
    }
}

FiniteSetFamily read_family(std::istream& is) {
    std::string header;
    if (!std::getline(is, header)) throw ParseError("missing luzin header");
    int n_univ = 0;
    std::size_t count = 0;
    {
        std::istringstream hs(header);
        std::string word, nfield, sfield;
        hs >> word;
        std::string version;
        hs >> version >> nfield >> sfield;
        if (word != "luzin" || version != "v1" || nfield.rfind("N=", 0) != 0 || sfield.rfind("sets=", 0) != 0)
            throw ParseError("bad luzin header: " + header);
        n_univ = std::stoi(nfield.substr(2));
        count = static_cast<std::size_t>(std::stoul(sfield.substr(5)));
    }
    FiniteSetFamily fam;
    fam.universe_bound = n_univ;
    for (std::size_t line_no = 0; line_no < count; ++line_no) {
        std::string line;
        if (!std::getline(is, line)) throw ParseError("truncated luzin file");
        std::istringstream ls(line);
        std::string tag, idx;
        ls >> tag >> idx;
        if (idx.empty() || idx.back() != ':') throw ParseError("bad set line: " + line);
        FiniteSetFamily::Set s;
        if (tag == "seed")
            s.tag = FiniteSetFamily::Tag::seed;
        else if (tag == "diagonal")
            s.tag = FiniteSetFamily::Tag::diagonal;
        else
            throw ParseError("unknown set tag: " + tag);
        s.global_index = std::stoi(idx.substr(0, idx.size() - 1));
        int e;
        int prev = -1;
        while (ls >> e) {
            if (e <= prev || e < 0 || e >= n_univ) throw ParseError("set elements out of order or range");
            s.elements.push_back(e);
            prev = e;
        }
        if (s.elements.empty()) throw ParseError("empty set in luzin file");
        fam.sets.push_back(std::move(s));
    }
    return fam;
}

std::string family_to_string(const FiniteSetFamily& family) {
    std::ostringstream os;
    write_family(os, family);
    return os.str();
}

FiniteSetFamily family_from_string(const std::string& text) {
    std::istringstream is(text);
    return read_family(is);
}

}  // namespace ubrep

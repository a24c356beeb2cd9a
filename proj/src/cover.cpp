#include "thurston/cover.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace thurston {

Permutation Permutation::identity(int d) {
    Permutation p;
    p.img.resize(static_cast<size_t>(d));
    std::iota(p.img.begin(), p.img.end(), 1);
    return p;
}

bool Permutation::is_identity() const {
    for (int k = 1; k <= degree(); ++k)
        if ((*this)(k) != k) return false;
    return true;
}

Permutation Permutation::inverse() const {
    Permutation p;
    p.img.assign(img.size(), 0);
    for (int k = 1; k <= degree(); ++k) p.img[static_cast<size_t>((*this)(k) - 1)] = k;
    return p;
}

std::vector<std::vector<int>> Permutation::cycles() const {
    std::vector<std::vector<int>> out;
    std::vector<bool> seen(img.size(), false);
    for (int k = 1; k <= degree(); ++k) {
        if (seen[static_cast<size_t>(k - 1)]) continue;
        std::vector<int> c;
        int t = k;
        while (!seen[static_cast<size_t>(t - 1)]) {
            seen[static_cast<size_t>(t - 1)] = true;
            c.push_back(t);
            t = (*this)(t);
        }
        out.push_back(std::move(c));
    }
    return out;
}

Permutation compose(const Permutation& a, const Permutation& b) {
    if (a.degree() != b.degree()) throw error("permutation degree mismatch");
    Permutation p;
    p.img.resize(a.img.size());
    for (int k = 1; k <= a.degree(); ++k) p.img[static_cast<size_t>(k - 1)] = a(b(k));
    return p;
}

namespace {

bool is_permutation_of_degree(const Permutation& p, int d) {
    if (p.degree() != d) return false;
    std::vector<bool> hit(static_cast<size_t>(d), false);
    for (int v : p.img) {
        if (v < 1 || v > d || hit[static_cast<size_t>(v - 1)]) return false;
        hit[static_cast<size_t>(v - 1)] = true;
    }
    return true;
}

std::string cycle_str(const std::vector<int>& c) {
    std::ostringstream os;
    os << '(';
    for (size_t t = 0; t < c.size(); ++t) {
        if (t) os << ' ';
        os << c[t];
    }
    os << ')';
    return os.str();
}

int max_letter_index(const Word& w) {
    int m = 0;
    for (int l : w.letters) m = std::max(m, l > 0 ? l : -l);
    return m;
}

} // namespace

int CoverPresentation::marked_point_over(int i, int cycle_min) const {
    for (int j = 1; j <= n(); ++j) {
        if (delta(j) != i) continue;
        const auto& c = assigned_cycle(j);
        if (!c.empty() && *std::min_element(c.begin(), c.end()) == cycle_min) return j;
    }
    return 0;
}

CoverPresentation make_cover(int degree,
                             std::vector<std::string> labels,
                             std::vector<int> dynamics,
                             std::vector<Permutation> head_perms,
                             std::vector<std::vector<Word>> restrictions,
                             std::vector<std::vector<int>> assignments) {
    const int n = static_cast<int>(labels.size());
    if (degree < 2) throw error("degree must be at least 2");
    if (n < 2) throw error("need at least two marked points");
    if (static_cast<int>(dynamics.size()) != n) throw error("dynamics size mismatch");
    for (int v : dynamics)
        if (v < 1 || v > n) throw error("dynamics image out of range");
    if (static_cast<int>(head_perms.size()) != n - 1)
        throw error("expected one permutation per marked point except the last");
    for (const auto& p : head_perms)
        if (!is_permutation_of_degree(p, degree)) throw error("bad sheet permutation");
    if (static_cast<int>(restrictions.size()) != n - 1)
        throw error("restriction table must have one row per non-derived fiber");
    for (auto& row : restrictions) {
        if (static_cast<int>(row.size()) != degree)
            throw error("restriction row must have one word per sheet");
        for (const auto& w : row)
            if (max_letter_index(w) > n - 1)
                throw error("restriction word uses out-of-range generator");
    }
    if (static_cast<int>(assignments.size()) != n) throw error("assignments size mismatch");
    for (const auto& c : assignments) {
        if (c.empty()) throw error("empty assigned cycle");
        std::set<int> s(c.begin(), c.end());
        if (s.size() != c.size()) throw error("assigned cycle repeats a sheet");
        if (*s.begin() < 1 || *s.rbegin() > degree) throw error("assigned sheet out of range");
    }

    CoverPresentation P;
    P.degree = degree;
    P.marked = MarkedSet{std::move(labels)};
    P.dynamics = std::move(dynamics);
    P.perms = std::move(head_perms);
    Permutation comp = Permutation::identity(degree);
    for (const auto& p : P.perms) comp = compose(comp, p);
    P.perms.push_back(comp.inverse());
    P.restrictions = std::move(restrictions);
    P.assignments = std::move(assignments);
    return P;
}

bool ValidationReport::pass() const {
    for (const auto& it : items)
        if (!it.pass) return false;
    return true;
}

std::string ValidationReport::summary() const {
    std::ostringstream os;
    for (const auto& it : items) {
        os << it.name << ": " << (it.pass ? "ok" : "FAIL");
        if (!it.detail.empty()) os << " (" << it.detail << ")";
        os << '\n';
    }
    return os.str();
}

namespace {

ValidationItem check_shape(const CoverPresentation& P) {
    ValidationItem item{"shape", true, ""};
    std::vector<std::string> bad;
    const int n = P.n();
    const int d = P.degree;
    if (d < 2) bad.push_back("degree below 2");
    if (n < 2) bad.push_back("fewer than two marked points");
    std::set<std::string> labels(P.marked.labels.begin(), P.marked.labels.end());
    if (static_cast<int>(labels.size()) != n || labels.count(""))
        bad.push_back("marked labels not distinct and nonempty");
    if (static_cast<int>(P.dynamics.size()) != n) {
        bad.push_back("dynamics size mismatch");
    } else {
        for (int v : P.dynamics)
            if (v < 1 || v > n) bad.push_back("dynamics image out of range");
    }
    if (static_cast<int>(P.perms.size()) != n) {
        bad.push_back("permutation count mismatch");
    } else {
        for (const auto& p : P.perms)
            if (!is_permutation_of_degree(p, d)) bad.push_back("bad sheet permutation");
        if (bad.empty()) {
            Permutation comp = Permutation::identity(d);
            for (const auto& p : P.perms) comp = compose(comp, p);
            if (!comp.is_identity())
                bad.push_back("last permutation is not derived from the sphere relation");
        }
    }
    if (static_cast<int>(P.restrictions.size()) != n - 1) {
        bad.push_back("restriction table row count mismatch");
    } else {
        for (const auto& row : P.restrictions) {
            if (static_cast<int>(row.size()) != d) {
                bad.push_back("restriction row size mismatch");
                continue;
            }
            for (const auto& w : row)
                if (max_letter_index(w) > n - 1)
                    bad.push_back("restriction word uses out-of-range generator");
        }
    }
    if (static_cast<int>(P.assignments.size()) != n) {
        bad.push_back("assignments size mismatch");
    } else {
        for (const auto& c : P.assignments) {
            if (c.empty()) {
                bad.push_back("empty assigned cycle");
                continue;
            }
            std::set<int> s(c.begin(), c.end());
            if (s.size() != c.size() || *s.begin() < 1 || *s.rbegin() > d)
                bad.push_back("assigned cycle sheets out of range or repeated");
        }
    }
    if (!bad.empty()) {
        item.pass = false;
        std::ostringstream os;
        for (size_t i = 0; i < bad.size(); ++i) {
            if (i) os << "; ";
            os << bad[i];
        }
        item.detail = os.str();
    }
    return item;
}

} // namespace

ValidationReport validate_presentation(const CoverPresentation& P,
                                       const ValidationOptions& opts) {
    ValidationReport rep;
    rep.items.push_back(check_shape(P));
    if (!rep.items.front().pass) {
        for (const char* name : {"riemann-hurwitz", "transitivity", "postcritical", "assignments"})
            rep.items.push_back({name, false, "not checked (shape invalid)"});
        return rep;
    }

    const int n = P.n();
    const int d = P.degree;

    {
        long long branching = 0;
        for (int i = 1; i <= n; ++i)
            for (const auto& c : P.sigma(i).cycles())
                branching += static_cast<long long>(c.size()) - 1;
        ValidationItem item{"riemann-hurwitz", branching == 2LL * d - 2, ""};
        if (!item.pass) {
            std::ostringstream os;
            os << "total branching " << branching << ", expected " << 2 * d - 2;
            item.detail = os.str();
        }
        rep.items.push_back(item);
    }

    {
        std::vector<bool> reach(static_cast<size_t>(d), false);
        std::vector<int> stack{1};
        reach[0] = true;
        while (!stack.empty()) {
            int k = stack.back();
            stack.pop_back();
            for (int i = 1; i <= n; ++i) {
                int t = P.sigma(i)(k);
                if (!reach[static_cast<size_t>(t - 1)]) {
                    reach[static_cast<size_t>(t - 1)] = true;
                    stack.push_back(t);
                }
            }
        }
        bool all = std::all_of(reach.begin(), reach.end(), [](bool b) { return b; });
        rep.items.push_back({"transitivity", all,
                             all ? "" : "sheet monodromy group is not transitive"});
    }

    {
        std::vector<int> pc = postcritical_set(P);
        std::set<int> pcs(pc.begin(), pc.end());
        std::vector<std::string> bad;
        for (int j = 1; j <= n; ++j) {
            if (pcs.count(j)) continue;
            if (opts.allow_extra_fixed_marked && P.delta(j) == j) continue;
            std::ostringstream os;
            os << "marked point " << P.marked.labels[static_cast<size_t>(j - 1)]
               << " is not postcritical";
            if (opts.allow_extra_fixed_marked) os << " and not fixed";
            bad.push_back(os.str());
        }
        ValidationItem item{"postcritical", bad.empty(), ""};
        if (!bad.empty()) {
            std::ostringstream os;
            for (size_t i = 0; i < bad.size(); ++i) {
                if (i) os << "; ";
                os << bad[i];
            }
            item.detail = os.str();
        }
        rep.items.push_back(item);
    }

    {
        std::vector<std::string> bad;
        std::set<std::pair<int, int>> used;
        for (int j = 1; j <= n; ++j) {
            const auto& c = P.assigned_cycle(j);
            const Permutation& s = P.sigma(P.delta(j));
            bool cyc = true;
            for (size_t t = 0; t < c.size(); ++t)
                if (s(c[t]) != c[(t + 1) % c.size()]) cyc = false;
            if (!cyc) {
                std::ostringstream os;
                os << cycle_str(c) << " is not a cycle of the fiber permutation over "
                   << P.marked.labels[static_cast<size_t>(P.delta(j) - 1)];
                bad.push_back(os.str());
                continue;
            }
            auto key = std::make_pair(P.delta(j), *std::min_element(c.begin(), c.end()));
            if (!used.insert(key).second) {
                std::ostringstream os;
                os << "cycle " << cycle_str(c) << " over "
                   << P.marked.labels[static_cast<size_t>(P.delta(j) - 1)]
                   << " assigned to more than one marked point";
                bad.push_back(os.str());
            }
        }
        ValidationItem item{"assignments", bad.empty(), ""};
        if (!bad.empty()) {
            std::ostringstream os;
            for (size_t i = 0; i < bad.size(); ++i) {
                if (i) os << "; ";
                os << bad[i];
            }
            item.detail = os.str();
        }
        rep.items.push_back(item);
    }

    return rep;
}

std::vector<int> postcritical_set(const CoverPresentation& P) {
    std::set<int> out;
    std::vector<int> stack;
    for (int i = 1; i <= P.n(); ++i)
        if (!P.sigma(i).is_identity()) {
            if (out.insert(i).second) stack.push_back(i);
        }
    while (!stack.empty()) {
        int j = stack.back();
        stack.pop_back();
        int t = P.delta(j);
        if (out.insert(t).second) stack.push_back(t);
    }
    return std::vector<int>(out.begin(), out.end());
}

std::vector<int> critical_values(const CoverPresentation& P) {
    std::vector<int> out;
    for (int i = 1; i <= P.n(); ++i)
        if (!P.sigma(i).is_identity()) out.push_back(i);
    return out;
}

std::vector<int> free_critical_values(const CoverPresentation& P) {
    std::vector<int> out;
    for (int i = 1; i <= P.n(); ++i) {
        bool free = false;
        for (const auto& c : P.sigma(i).cycles()) {
            if (c.size() < 2) continue;
            bool fixed_crit_cycle = P.delta(i) == i &&
                P.marked_point_over(i, *std::min_element(c.begin(), c.end())) == i;
            if (!fixed_crit_cycle) free = true;
        }
        if (free) out.push_back(i);
    }
    return out;
}

std::vector<std::pair<int, int>> fixed_critical_points(const CoverPresentation& P) {
    std::vector<std::pair<int, int>> out;
    for (int j = 1; j <= P.n(); ++j)
        if (P.delta(j) == j && P.local_degree(j) >= 2)
            out.emplace_back(j, P.local_degree(j));
    return out;
}

namespace {

WreathElement wreath_identity(int d) {
    WreathElement e;
    e.perm = Permutation::identity(d);
    e.sheets.assign(static_cast<size_t>(d), Word{});
    return e;
}

WreathElement wreath_letter(const CoverPresentation& P, int letter) {
    int i = letter > 0 ? letter : -letter;
    if (i < 1 || i > P.n() - 1) throw error("word uses out-of-range generator");
    WreathElement e;
    if (letter > 0) {
        e.perm = P.sigma(i);
        e.sheets = P.restrictions[static_cast<size_t>(i - 1)];
    } else {
        e.perm = P.sigma(i).inverse();
        e.sheets.resize(static_cast<size_t>(P.degree));
        for (int k = 1; k <= P.degree; ++k)
            e.sheets[static_cast<size_t>(k - 1)] = P.restriction(i, e.perm(k)).inverse();
    }
    return e;
}

WreathElement wreath_mul(const WreathElement& a, const WreathElement& b) {
    WreathElement out;
    out.perm = compose(a.perm, b.perm);
    out.sheets.resize(b.sheets.size());
    for (int k = 1; k <= out.perm.degree(); ++k)
        out.sheets[static_cast<size_t>(k - 1)] = free_reduce(
            a.sheets[static_cast<size_t>(b.perm(k) - 1)] * b.sheets[static_cast<size_t>(k - 1)]);
    return out;
}

Word sheet_cycle_product(const std::vector<Word>& sheets, const std::vector<int>& cycle) {
    Word acc;
    for (int s : cycle) acc = free_reduce(sheets[static_cast<size_t>(s - 1)] * acc);
    return acc;
}

} // namespace

WreathElement wreath_apply(const CoverPresentation& P, const Word& w) {
    WreathElement acc = wreath_identity(P.degree);
    for (int letter : w.letters) acc = wreath_mul(acc, wreath_letter(P, letter));
    return acc;
}

std::vector<LiftComponent> lift_curve(const CoverPresentation& P, const CurveClass& c) {
    std::vector<LiftComponent> out;
    if (auto j = peripheral_class_of(c.word, P.marked)) {
        for (const auto& cyc : P.sigma(*j).cycles()) {
            LiftComponent comp;
            comp.degree = static_cast<int>(cyc.size());
            comp.cycle_sheets = cyc;
            int t = P.marked_point_over(*j, cyc.front());
            if (t != 0) {
                comp.kind = LiftKind::Peripheral;
                comp.peripheral_at = t;
                comp.word = peripheral_word(t, P.n());
            } else {
                comp.kind = LiftKind::Trivial;
            }
            out.push_back(std::move(comp));
        }
        return out;
    }

    WreathElement W = wreath_apply(P, c.word);
    for (const auto& cyc : W.perm.cycles()) {
        LiftComponent comp;
        comp.degree = static_cast<int>(cyc.size());
        comp.cycle_sheets = cyc;
        comp.word = sheet_cycle_product(W.sheets, cyc);
        Word red = cyclic_reduce(comp.word);
        if (red.empty()) {
            comp.kind = LiftKind::Trivial;
        } else if (auto pj = peripheral_class_of(red, P.marked)) {
            comp.kind = LiftKind::Peripheral;
            comp.peripheral_at = *pj;
        } else {
            comp.kind = LiftKind::Essential;
            comp.cls = canonical_curve_class(comp.word, P.marked);
        }
        out.push_back(std::move(comp));
    }
    return out;
}

PreimageTopology disk_preimage_topology(const CoverPresentation& P,
                                        const CurveClass& boundary,
                                        const std::vector<int>& inside) {
    std::vector<int> M(inside);
    std::sort(M.begin(), M.end());
    M.erase(std::unique(M.begin(), M.end()), M.end());
    if (M.size() != inside.size())
        throw error("interior marked set repeats a point");
    for (int j : M)
        if (j < 1 || j > P.n()) throw error("interior marked point out of range");
    if (M != boundary.sides.inside && M != boundary.sides.outside())
        throw error("interior marked set does not match the boundary curve");

    PreimageTopology top;
    top.boundary_lifts = lift_curve(P, boundary);
    long long chi = static_cast<long long>(P.degree) * (1 - static_cast<long long>(M.size()));
    for (int j : M) chi += static_cast<long long>(P.sigma(j).cycles().size());
    top.total_chi = chi;

    const int b = static_cast<int>(top.boundary_lifts.size());
    if ((chi + b) % 2 != 0 || chi + b < 2 || (chi + b) / 2 > b)
        throw error("inconsistent preimage Euler characteristic");
    top.component_count = static_cast<int>((chi + b) / 2);
    top.all_disks = (chi == b);

    const int extra = b - top.component_count;
    if (top.component_count == 1) {
        top.multiset_forced = true;
        top.component_boundary_multiset = {b};
    } else if (extra <= 1) {
        top.multiset_forced = true;
        top.component_boundary_multiset.assign(static_cast<size_t>(top.component_count), 1);
        if (extra == 1) top.component_boundary_multiset.front() = 2;
    }
    return top;
}

OrbifoldSignature orbifold_signature(const CoverPresentation& P) {
    const int n = P.n();
    std::vector<bool> inf(static_cast<size_t>(n), false);

    // Points lying on a marked cycle through a critical point get
    // infinite weight; the divisibility relation unrolls around the
    // cycle with a factor above 1.
    std::vector<bool> on_cycle(static_cast<size_t>(n), false);
    for (int j = 1; j <= n; ++j) {
        int t = j;
        for (int s = 0; s < 2 * n; ++s) t = P.delta(t);
        on_cycle[static_cast<size_t>(t - 1)] = true;
    }
    for (int j = 1; j <= n; ++j) {
        if (!on_cycle[static_cast<size_t>(j - 1)] || P.local_degree(j) < 2) continue;
        int t = j;
        do {
            inf[static_cast<size_t>(t - 1)] = true;
            t = P.delta(t);
        } while (t != j);
    }

    std::vector<long long> nu(static_cast<size_t>(n), 1);
    auto round_once = [&](bool& changed) {
        for (int i = 1; i <= n; ++i) {
            if (inf[static_cast<size_t>(i - 1)]) continue;
            long long v = 1;
            for (const auto& c : P.sigma(i).cycles()) {
                int t = P.marked_point_over(i, c.front());
                long long w = t == 0 ? 1 : nu[static_cast<size_t>(t - 1)];
                if (t != 0 && inf[static_cast<size_t>(t - 1)])
                    throw error("orbifold weight inconsistency");
                v = std::lcm(v, static_cast<long long>(c.size()) * w);
                if (v > (1LL << 50)) throw error("orbifold weight overflow");
            }
            if (v != nu[static_cast<size_t>(i - 1)]) changed = true;
            nu[static_cast<size_t>(i - 1)] = v;
        }
    };
    for (int round = 0; round < 2 * n + 4; ++round) {
        bool changed = false;
        round_once(changed);
        if (!changed) break;
    }
    bool changed = false;
    round_once(changed);
    if (changed) throw error("orbifold weights failed to stabilize");

    OrbifoldSignature sig;
    sig.chi_orb = 2;
    for (int j = 1; j <= n; ++j) {
        if (inf[static_cast<size_t>(j - 1)]) {
            sig.nu.push_back(std::nullopt);
            sig.chi_orb -= 1;
        } else {
            sig.nu.push_back(nu[static_cast<size_t>(j - 1)]);
            sig.chi_orb -= Rat(1) - Rat(1, static_cast<long>(nu[static_cast<size_t>(j - 1)]));
        }
    }
    return sig;
}

namespace detail {

Word cycle_product(const CoverPresentation& P, int i, const std::vector<int>& cycle) {
    std::vector<int> c(cycle);
    auto mn = std::min_element(c.begin(), c.end());
    std::rotate(c.begin(), mn, c.end());
    std::vector<Word> sheets;
    if (i < P.n()) {
        sheets = P.restrictions[static_cast<size_t>(i - 1)];
    } else {
        sheets = wreath_apply(P, derived_last_word(P.n())).sheets;
    }
    return sheet_cycle_product(sheets, c);
}

std::vector<std::string> peripheral_condition_failures(const CoverPresentation& P) {
    std::vector<std::string> out;
    for (int i = 1; i <= P.n(); ++i) {
        std::vector<Word> sheets;
        if (i < P.n()) {
            sheets = P.restrictions[static_cast<size_t>(i - 1)];
        } else {
            WreathElement derived = wreath_apply(P, derived_last_word(P.n()));
            if (derived.perm != P.sigma(P.n())) {
                out.push_back("derived permutation does not match the stored one");
                continue;
            }
            sheets = std::move(derived.sheets);
        }
        for (const auto& c : P.sigma(i).cycles()) {
            Word prod = sheet_cycle_product(sheets, c);
            int t = P.marked_point_over(i, c.front());
            std::ostringstream os;
            if (t != 0) {
                if (!free_conjugate(prod, peripheral_word(t, P.n()))) {
                    os << "fiber " << P.marked.labels[static_cast<size_t>(i - 1)] << " cycle "
                       << cycle_str(c) << ": restriction product `" << prod.str()
                       << "` is not conjugate to the peripheral word of "
                       << P.marked.labels[static_cast<size_t>(t - 1)];
                    out.push_back(os.str());
                }
            } else {
                if (!free_reduce(prod).empty()) {
                    os << "fiber " << P.marked.labels[static_cast<size_t>(i - 1)] << " cycle "
                       << cycle_str(c) << ": restriction product `" << prod.str()
                       << "` along an unmarked preimage is not trivial";
                    out.push_back(os.str());
                }
            }
        }
    }
    return out;
}

} // namespace detail

} // namespace thurston

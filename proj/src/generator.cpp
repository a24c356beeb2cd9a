#include "thurston/generator.hpp"

#include <algorithm>
#include <numeric>

namespace thurston {

namespace {

Permutation perm(std::vector<int> img) {
    Permutation p;
    p.img = std::move(img);
    return p;
}

std::vector<std::string> labels(int n) {
    std::vector<std::string> out;
    for (int i = 1; i <= n; ++i) out.push_back("p" + std::to_string(i));
    return out;
}

std::vector<std::vector<Word>> blank(int rows, int d) {
    return std::vector<std::vector<Word>>(static_cast<size_t>(rows),
                                          std::vector<Word>(static_cast<size_t>(d)));
}

Word W(const char* s) { return Word::parse(s); }

// Base tables found by tools/solve_shapes: for each orbit shape of the
// free branching, restriction rows making every fiber cycle product land
// in its required peripheral class. Degree 3 entries all have their two
// simple fixed critical points at p1 and p2.
std::vector<CoverPresentation> build_cubic_bases() {
    std::vector<CoverPresentation> out;
    {
        // triple critical point, value falling on p1
        auto rows = blank(2, 3);
        rows[0][0] = W("g1 g2");
        rows[0][1] = W("G2");
        rows[0][2] = W("G2 G1");
        rows[1][0] = W("g2");
        out.push_back(make_cover(3, labels(3), {1, 2, 1},
                                 {perm({2, 1, 3}), perm({3, 2, 1})},
                                 rows, {{1, 2}, {1, 3}, {3}}));
    }
    {
        // triple critical point, value falling on p2
        auto rows = blank(2, 3);
        rows[0][0] = W("g1");
        rows[1][0] = W("g2");
        rows[1][1] = W("G2 G1");
        out.push_back(make_cover(3, labels(3), {1, 2, 2},
                                 {perm({2, 1, 3}), perm({3, 2, 1})},
                                 rows, {{1, 2}, {1, 3}, {2}}));
    }
    {
        // triple critical point with a two-step tail through p3
        auto rows = blank(3, 3);
        rows[0][0] = W("g1");
        rows[0][2] = W("g3");
        rows[1][2] = W("g2");
        rows[2][0] = W("G3 G2 G1");
        out.push_back(make_cover(3, labels(4), {1, 2, 1, 3},
                                 {perm({2, 1, 3}), perm({3, 2, 1}), perm({1, 2, 3})},
                                 rows, {{1, 2}, {1, 3}, {3}, {1}}));
    }
    {
        // two extra simple branch values, both fixed
        auto rows = blank(3, 3);
        rows[0][0] = W("g1 g2");
        rows[0][1] = W("G2");
        rows[1][0] = W("g2");
        rows[2][1] = W("g3");
        out.push_back(make_cover(3, labels(4), {1, 2, 3, 4},
                                 {perm({2, 1, 3}), perm({2, 1, 3}), perm({3, 2, 1})},
                                 rows, {{1, 2}, {1, 2}, {2}, {2}}));
    }
    {
        // two extra simple branch values swapping with each other
        auto rows = blank(3, 3);
        rows[0][0] = W("g1 g2");
        rows[0][1] = W("G2");
        rows[1][0] = W("g2");
        rows[2][1] = W("G3 G2 G1");
        out.push_back(make_cover(3, labels(4), {1, 2, 4, 3},
                                 {perm({2, 1, 3}), perm({2, 1, 3}), perm({3, 2, 1})},
                                 rows, {{1, 2}, {1, 2}, {2}, {2}}));
    }
    {
        // extra values falling onto the fixed criticals under them
        auto rows = blank(3, 3);
        rows[0][1] = W("g1");
        rows[0][2] = W("g3");
        rows[1][0] = W("g2");
        rows[1][2] = W("G3 G2 G1");
        out.push_back(make_cover(3, labels(4), {1, 2, 1, 2},
                                 {perm({2, 1, 3}), perm({2, 1, 3}), perm({3, 2, 1})},
                                 rows, {{1, 2}, {1, 2}, {3}, {3}}));
    }
    {
        // extra values falling onto the opposite fixed criticals
        auto rows = blank(3, 3);
        rows[0][1] = W("g1");
        rows[0][2] = W("G3 G2 G1");
        rows[1][0] = W("g2");
        rows[1][2] = W("g3");
        rows[2][0] = W("G3");
        rows[2][2] = W("g3");
        out.push_back(make_cover(3, labels(4), {1, 2, 2, 1},
                                 {perm({2, 1, 3}), perm({2, 1, 3}), perm({3, 2, 1})},
                                 rows, {{1, 2}, {1, 2}, {3}, {3}}));
    }
    {
        // extra branch values on a period-three tail
        auto rows = blank(4, 3);
        rows[0][0] = W("g1");
        rows[1][0] = W("G3");
        rows[1][1] = W("g2 g3");
        rows[2][1] = W("G4 G3 G2 G1");
        rows[3][0] = W("g3");
        out.push_back(make_cover(3, labels(5), {1, 2, 4, 5, 3},
                                 {perm({2, 1, 3}), perm({2, 1, 3}), perm({3, 2, 1}),
                                  perm({1, 2, 3})},
                                 rows, {{1, 2}, {1, 2}, {1}, {2}, {2}}));
    }
    return out;
}

std::vector<CoverPresentation> build_quadratic_bases() {
    std::vector<CoverPresentation> out;
    {
        // squaring map, both critical points fixed
        auto rows = blank(1, 2);
        rows[0][0] = W("g1");
        out.push_back(make_cover(2, labels(2), {1, 2}, {perm({2, 1})},
                                 rows, {{1, 2}, {1, 2}}));
    }
    {
        // period-two critical orbit
        auto rows = blank(2, 2);
        rows[0][1] = W("g2");
        rows[1][1] = W("g1");
        out.push_back(make_cover(2, labels(3), {2, 1, 3}, {perm({2, 1}), perm({1, 2})},
                                 rows, {{2}, {1, 2}, {1, 2}}));
    }
    {
        // critical value landing on a fixed marked point
        auto rows = blank(2, 2);
        rows[1][0] = W("g1");
        rows[1][1] = W("g2");
        out.push_back(make_cover(2, labels(3), {2, 2, 3}, {perm({2, 1}), perm({1, 2})},
                                 rows, {{1}, {2}, {1, 2}}));
    }
    {
        // period-three critical orbit
        auto rows = blank(3, 2);
        rows[0][0] = W("g3");
        rows[1][0] = W("g1");
        rows[2][0] = W("g2");
        out.push_back(make_cover(2, labels(4), {2, 3, 1, 4},
                                 {perm({2, 1}), perm({1, 2}), perm({1, 2})},
                                 rows, {{1}, {1}, {1, 2}, {1, 2}}));
    }
    {
        // two period-two critical orbits glued back to back
        auto rows = blank(3, 2);
        rows[0][0] = W("g1 g2");
        rows[0][1] = W("G1");
        rows[1][1] = W("g1");
        rows[2][1] = W("G2 G1 G3");
        out.push_back(make_cover(2, labels(4), {2, 1, 4, 3},
                                 {perm({2, 1}), perm({1, 2}), perm({2, 1})},
                                 rows, {{2}, {1, 2}, {2}, {1, 2}}));
    }
    return out;
}

std::vector<int> transported_cycle(const std::vector<int>& c, const Permutation& tau) {
    std::vector<int> out;
    out.reserve(c.size());
    for (int k : c) out.push_back(tau(k));
    auto it = std::min_element(out.begin(), out.end());
    std::rotate(out.begin(), it, out.end());
    return out;
}

std::vector<Permutation> head_perms_of(const CoverPresentation& P) {
    return std::vector<Permutation>(P.perms.begin(), P.perms.end() - 1);
}

} // namespace

const std::vector<CoverPresentation>& cubic_two_fixed_bases() {
    static const std::vector<CoverPresentation> bases = build_cubic_bases();
    return bases;
}

const std::vector<CoverPresentation>& quadratic_bases() {
    static const std::vector<CoverPresentation> bases = build_quadratic_bases();
    return bases;
}

CoverPresentation apply_gauge(const CoverPresentation& P, const std::vector<Word>& h) {
    if (static_cast<int>(h.size()) != P.degree) throw error("gauge vector size mismatch");
    auto rows = P.restrictions;
    for (int i = 1; i < P.n(); ++i)
        for (int k = 1; k <= P.degree; ++k) {
            const Word& hk = h[static_cast<size_t>(k - 1)];
            const Word& hs = h[static_cast<size_t>(P.sigma(i)(k) - 1)];
            rows[static_cast<size_t>(i - 1)][static_cast<size_t>(k - 1)] =
                free_reduce(hs * P.restriction(i, k) * hk.inverse());
        }
    return make_cover(P.degree, P.marked.labels, P.dynamics, head_perms_of(P),
                      std::move(rows), P.assignments);
}

CoverPresentation apply_block_twist(const CoverPresentation& P, int a, int b, int dir) {
    if (a < 1 || b >= P.n() || a >= b) throw error("twist block out of range");
    Word c;
    for (int j = a; j <= b; ++j) c.letters.push_back(j);
    WreathElement V = wreath_apply(P, dir > 0 ? c : c.inverse());
    Permutation tinv = V.perm.inverse();

    auto heads = head_perms_of(P);
    auto rows = P.restrictions;
    for (int j = a; j <= b; ++j) {
        Permutation ns;
        ns.img.resize(static_cast<size_t>(P.degree));
        for (int k = 1; k <= P.degree; ++k) {
            int pk = tinv(k);
            ns.img[static_cast<size_t>(k - 1)] = V.perm(P.sigma(j)(pk));
            rows[static_cast<size_t>(j - 1)][static_cast<size_t>(k - 1)] = free_reduce(
                V.sheets[static_cast<size_t>(P.sigma(j)(pk) - 1)] * P.restriction(j, pk) *
                V.sheets[static_cast<size_t>(pk - 1)].inverse());
        }
        heads[static_cast<size_t>(j - 1)] = std::move(ns);
    }

    auto assigns = P.assignments;
    for (int t = 1; t <= P.n(); ++t)
        if (a <= P.delta(t) && P.delta(t) <= b)
            assigns[static_cast<size_t>(t - 1)] =
                transported_cycle(P.assigned_cycle(t), V.perm);
    return make_cover(P.degree, P.marked.labels, P.dynamics, std::move(heads),
                      std::move(rows), std::move(assigns));
}

CoverPresentation apply_sheet_relabel(const CoverPresentation& P, const Permutation& rho) {
    if (rho.degree() != P.degree) throw error("relabeling degree mismatch");
    Permutation rinv = rho.inverse();
    auto heads = head_perms_of(P);
    auto rows = P.restrictions;
    for (int i = 1; i < P.n(); ++i) {
        for (int k = 1; k <= P.degree; ++k) {
            heads[static_cast<size_t>(i - 1)].img[static_cast<size_t>(k - 1)] =
                rho(P.sigma(i)(rinv(k)));
            rows[static_cast<size_t>(i - 1)][static_cast<size_t>(k - 1)] =
                P.restriction(i, rinv(k));
        }
    }
    auto assigns = P.assignments;
    for (int t = 1; t <= P.n(); ++t)
        assigns[static_cast<size_t>(t - 1)] = transported_cycle(P.assigned_cycle(t), rho);
    return make_cover(P.degree, P.marked.labels, P.dynamics, std::move(heads),
                      std::move(rows), std::move(assigns));
}

namespace detail {

bool honest(const CoverPresentation& P) {
    if (!validate_presentation(P).pass()) return false;
    return peripheral_condition_failures(P).empty();
}

} // namespace detail

namespace {

int max_restriction_length(const CoverPresentation& P) {
    size_t best = 0;
    for (const auto& row : P.restrictions)
        for (const auto& w : row) best = std::max(best, w.letters.size());
    return static_cast<int>(best);
}

Word random_short_word(detail::SplitMix64& rng, int max_index, int len) {
    Word w;
    for (int i = 0; i < len; ++i) {
        int l = static_cast<int>(rng.below(static_cast<std::uint64_t>(max_index))) + 1;
        w.letters.push_back(rng.below(2) ? l : -l);
    }
    return free_reduce(w);
}

Permutation random_perm(detail::SplitMix64& rng, int d) {
    std::vector<int> img(static_cast<size_t>(d));
    std::iota(img.begin(), img.end(), 1);
    for (int i = d - 1; i > 0; --i)
        std::swap(img[static_cast<size_t>(i)],
                  img[static_cast<size_t>(rng.below(static_cast<std::uint64_t>(i + 1)))]);
    return perm(std::move(img));
}

std::vector<CoverPresentation> generate(const std::vector<CoverPresentation>& bases,
                                        const GeneratorConfig& cfg) {
    std::vector<CoverPresentation> out;
    out.reserve(static_cast<size_t>(std::max(cfg.count, 0)));
    for (int idx = 0; idx < cfg.count; ++idx) {
        detail::SplitMix64 rng{cfg.seed ^ (0xD1B54A32D192ED03ULL *
                                           (static_cast<std::uint64_t>(idx) + 1))};
        rng.next();
        const CoverPresentation& base =
            bases[static_cast<size_t>(rng.below(bases.size()))];
        // the bound caps the randomization, never below what the base needs
        int bound = std::max(cfg.word_length_bound, max_restriction_length(base));

        bool emitted = false;
        for (int attempt = 0; attempt < 8 && !emitted; ++attempt) {
            CoverPresentation P = base;
            int twists = static_cast<int>(rng.below(4));
            for (int t = 0; t < twists && P.n() >= 3; ++t) {
                int a = static_cast<int>(rng.below(static_cast<std::uint64_t>(P.n() - 2))) + 1;
                int b = a + 1 + static_cast<int>(rng.below(
                                    static_cast<std::uint64_t>(P.n() - 1 - a)));
                P = apply_block_twist(P, a, b, rng.below(2) ? 1 : -1);
            }
            if (rng.below(4) != 0) {
                std::vector<Word> h;
                for (int k = 0; k < P.degree; ++k)
                    h.push_back(random_short_word(rng, P.n() - 1,
                                                  static_cast<int>(rng.below(3))));
                P = apply_gauge(P, h);
            }
            P = apply_sheet_relabel(P, random_perm(rng, P.degree));
            if (max_restriction_length(P) <= bound && detail::honest(P)) {
                out.push_back(std::move(P));
                emitted = true;
            }
        }
        if (!emitted) out.push_back(base); // bases are honest by construction
    }
    return out;
}

} // namespace

std::vector<CoverPresentation> generate_random_cubic_two_fixed(const GeneratorConfig& cfg) {
    return generate(cubic_two_fixed_bases(), cfg);
}

std::vector<CoverPresentation> generate_random_quadratic(const GeneratorConfig& cfg) {
    return generate(quadratic_bases(), cfg);
}

} // namespace thurston

// Search tool that produced the frozen base tables in src/generator.cpp.
//
// A branch shape fixes everything about a presentation except the
// restriction rows: degree, marked dynamics, fiber permutations, and the
// assignment table. The rows then have to satisfy the restriction-product
// conditions along every fiber cycle, the derived fiber included. The
// free fibers are easy (put a conjugate of the required peripheral word
// in one carrier slot per assigned cycle); the derived fiber couples all
// choices, so this tool enumerates carrier positions, conjugators, and
// optional product-preserving insertions until the whole presentation
// checks out honest.
//
// Build: g++ -std=c++20 -Iinclude tools/solve_shapes.cpp src/words.cpp
//        src/cover.cpp src/curves.cpp -lgmpxx -lgmp -o solve_shapes

#include <algorithm>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "thurston/cover.hpp"

using namespace thurston;

namespace {

struct Shape {
    std::string name;
    int degree = 0;
    std::vector<std::string> labels;
    std::vector<int> dynamics;
    std::vector<Permutation> head_perms;
    std::vector<std::vector<int>> assigns;
};

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

// One assigned cycle of a free fiber: the carrier slot takes u w u^-1.
struct CarrierSlot {
    int fiber = 0;
    std::vector<int> cycle;
    Word required; // peripheral word of the assigned point
};

// Product-preserving insertion on a cycle of length >= 2: factor v, v^-1
// into adjacent slots (the wrap position conjugates the whole product).
struct InsertionPoint {
    int fiber = 0;
    std::vector<int> cycle;
    int gap = 0;
};

bool honest(const CoverPresentation& P) {
    if (!validate_presentation(P).pass()) return false;
    return detail::peripheral_condition_failures(P).empty();
}

std::optional<CoverPresentation> solve(const Shape& S, bool verbose) {
    const int n = static_cast<int>(S.labels.size());
    const int d = S.degree;

    std::vector<CarrierSlot> carriers;
    std::vector<InsertionPoint> insertions;
    for (int i = 1; i < n; ++i) {
        for (const auto& cyc : S.head_perms[static_cast<size_t>(i - 1)].cycles()) {
            int t = 0;
            for (int j = 1; j <= n; ++j)
                if (S.dynamics[static_cast<size_t>(j - 1)] == i &&
                    S.assigns[static_cast<size_t>(j - 1)].front() ==
                        *std::min_element(cyc.begin(), cyc.end()))
                    t = j;
            if (t != 0) carriers.push_back({i, cyc, peripheral_word(t, n)});
            if (cyc.size() >= 2)
                for (int gap = 0; gap < static_cast<int>(cyc.size()); ++gap)
                    insertions.push_back({i, cyc, gap});
        }
    }

    std::vector<Word> dict;
    dict.push_back(Word{});
    for (int j = 1; j < n; ++j) {
        dict.push_back(Word{{j}});
        dict.push_back(Word{{-j}});
    }
    const int D = static_cast<int>(dict.size());

    // odometer: per carrier a position within the cycle and a conjugator,
    // plus one optional insertion (or none).
    std::vector<int> pos(carriers.size(), 0), conj(carriers.size(), 0);
    long long tried = 0;
    for (;;) {
        for (int ins = -1; ins < static_cast<int>(insertions.size()) * D; ++ins) {
            auto rows = std::vector<std::vector<Word>>(
                static_cast<size_t>(n - 1), std::vector<Word>(static_cast<size_t>(d)));
            for (size_t c = 0; c < carriers.size(); ++c) {
                const auto& cs = carriers[c];
                const Word& u = dict[static_cast<size_t>(conj[c])];
                int sheet = cs.cycle[static_cast<size_t>(pos[c]) % cs.cycle.size()];
                rows[static_cast<size_t>(cs.fiber - 1)][static_cast<size_t>(sheet - 1)] =
                    free_reduce(u * cs.required * u.inverse());
            }
            if (ins >= 0) {
                const auto& ip = insertions[static_cast<size_t>(ins / D)];
                const Word& v = dict[static_cast<size_t>(ins % D)];
                if (v.empty()) continue;
                size_t m = ip.cycle.size();
                int lo = ip.cycle[static_cast<size_t>(ip.gap)];
                int hi = ip.cycle[(static_cast<size_t>(ip.gap) + 1) % m];
                auto& rlo = rows[static_cast<size_t>(ip.fiber - 1)][static_cast<size_t>(lo - 1)];
                auto& rhi = rows[static_cast<size_t>(ip.fiber - 1)][static_cast<size_t>(hi - 1)];
                rlo = free_reduce(v.inverse() * rlo);
                rhi = free_reduce(rhi * v);
            }
            ++tried;
            CoverPresentation P =
                make_cover(d, S.labels, S.dynamics, S.head_perms, rows, S.assigns);
            if (honest(P)) {
                if (verbose) std::cout << "  solved after " << tried << " candidates\n";
                return P;
            }
        }
        // step the odometer
        size_t c = 0;
        for (; c < carriers.size(); ++c) {
            if (++conj[c] < D) break;
            conj[c] = 0;
            if (++pos[c] < static_cast<int>(carriers[c].cycle.size())) break;
            pos[c] = 0;
        }
        if (c == carriers.size()) return std::nullopt;
    }
}

void report(const Shape& S) {
    std::cout << S.name << ":\n";
    auto P = solve(S, true);
    if (!P) {
        std::cout << "  NO SOLUTION in search space\n";
        return;
    }
    for (int i = 1; i < P->n(); ++i)
        for (int k = 1; k <= P->degree; ++k)
            if (!P->restriction(i, k).empty())
                std::cout << "    rows[" << i - 1 << "][" << k - 1 << "] = W(\""
                          << P->restriction(i, k).str() << "\");\n";
    std::cout << "    derived perm img:";
    for (int v : P->sigma(P->n()).img) std::cout << " " << v;
    std::cout << "\n";
}

} // namespace

int main() {
    std::vector<Shape> shapes;

    // cubic, two simple fixed critical points at p1 and p2 throughout
    shapes.push_back({"A1 free triple value falls on p1", 3, labels(3),
                      {1, 2, 1},
                      {perm({2, 1, 3}), perm({3, 2, 1})},
                      {{1, 2}, {1, 3}, {3}}});
    shapes.push_back({"A2 free triple value falls on p2", 3, labels(3),
                      {1, 2, 2},
                      {perm({2, 1, 3}), perm({3, 2, 1})},
                      {{1, 2}, {1, 3}, {2}}});
    shapes.push_back({"A3 triple value with a two-step tail", 3, labels(4),
                      {1, 2, 1, 3},
                      {perm({2, 1, 3}), perm({3, 2, 1}), perm({1, 2, 3})},
                      {{1, 2}, {1, 3}, {3}, {1}}});
    shapes.push_back({"B1 two extra fixed branch values", 3, labels(4),
                      {1, 2, 3, 4},
                      {perm({2, 1, 3}), perm({2, 1, 3}), perm({3, 2, 1})},
                      {{1, 2}, {1, 2}, {2}, {2}}});
    shapes.push_back({"B2 extra branch values swap", 3, labels(4),
                      {1, 2, 4, 3},
                      {perm({2, 1, 3}), perm({2, 1, 3}), perm({3, 2, 1})},
                      {{1, 2}, {1, 2}, {2}, {2}}});
    shapes.push_back({"B3 extra values fall on the fixed criticals", 3, labels(4),
                      {1, 2, 1, 2},
                      {perm({2, 1, 3}), perm({2, 1, 3}), perm({3, 2, 1})},
                      {{1, 2}, {1, 2}, {3}, {3}}});
    shapes.push_back({"B4 extra values fall on the opposite criticals", 3, labels(4),
                      {1, 2, 2, 1},
                      {perm({2, 1, 3}), perm({2, 1, 3}), perm({3, 2, 1})},
                      {{1, 2}, {1, 2}, {3}, {3}}});
    shapes.push_back({"B5 period-three tail through both extra values", 3, labels(5),
                      {1, 2, 4, 5, 3},
                      {perm({2, 1, 3}), perm({2, 1, 3}), perm({3, 2, 1}), perm({1, 2, 3})},
                      {{1, 2}, {1, 2}, {1}, {2}, {2}}});

    // quadratic bases that still need honest rows
    shapes.push_back({"Qz2 squaring map", 2, labels(2),
                      {1, 2},
                      {perm({2, 1})},
                      {{1, 2}, {1, 2}}});
    shapes.push_back({"Qcheb interval-like", 2, labels(3),
                      {2, 2, 3},
                      {perm({2, 1}), perm({1, 2})},
                      {{1}, {2}, {1, 2}}});
    shapes.push_back({"Qrab period-three critical orbit", 2, labels(4),
                      {2, 3, 1, 4},
                      {perm({2, 1}), perm({1, 2}), perm({1, 2})},
                      {{1}, {1}, {1, 2}, {1, 2}}});

    for (const auto& S : shapes) report(S);
    return 0;
}
